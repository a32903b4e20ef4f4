"""
Workbench
Text-in, Verdict-out front ends for every operation, shared by the CLI and the HTTP API
"""

from functools import wraps
from typing import Dict, List, Optional, Sequence

from pydantic import ValidationError

from derivation import (
    Codomain,
    DerivationTrace,
    RewriteProblem,
    derive,
    load_basis,
    meet_membership_bounded,
    parse_basis,
    replay,
    sc2_report,
)
from errors import ArgumentError, MonovaError
from families import (
    FamilyName,
    band_lattice,
    phi_family,
    phibar_family,
    rn,
    rn_bar,
    schema_instance,
    sn,
    sn_bar,
)
from local_monitoring import logger
from monoid_core import (
    find_counterexample,
    idempotent_submonoid,
    is_aperiodic,
    is_j_trivial,
    load_preset,
    table_dump,
)
from monova_config import get_letter_pool
from variety_oracles import (
    DistKind,
    Join,
    MonoidAtom,
    StableUpTo,
    VarietyExpr,
    VerdictStatus,
    class_alphabet,
    dist,
    isoterm_bounded,
    parse_class_spec,
    parse_variety,
    stability_bounded,
    sweep_agreement,
)
from verdicts import Verdict
from word_core import Identity, format_identity, format_word, parse_identity, parse_word

BAND_WORDS = {
    FamilyName.RN: rn,
    FamilyName.SN: sn,
    FamilyName.RN_BAR: rn_bar,
    FamilyName.SN_BAR: sn_bar,
}


def _verdict_or_error(func):
    """Turn library errors into an ERROR verdict"""

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (MonovaError, ValidationError) as e:
            logger.warning(f"{func.__name__} failed: {e}")
            return Verdict.from_error(e, subject=func.__name__)

    return wrapper


def _holds_status(flag: bool) -> VerdictStatus:
    return VerdictStatus.HOLDS if flag else VerdictStatus.FAILS


def resolve_letters(letters: Optional[str], default: Sequence[str] = ()) -> tuple:
    """A count takes that many letters from the pool; otherwise the letters are listed, as in a,b,t"""
    if letters is None or not letters.strip():
        return tuple(default) or get_letter_pool()
    text = letters.strip()
    if text.isdigit():
        pool = get_letter_pool()
        count = int(text)
        if not 1 <= count <= len(pool):
            raise ArgumentError(f"letter count must be between 1 and {len(pool)}")
        return pool[:count]
    return tuple(parse_word(text.replace(",", " ")))


def _failure_details(V: VarietyExpr, identity: Identity) -> Dict[str, object]:
    members = V.members if isinstance(V, Join) else (V,)
    failing = [m for m in members if not m.holds(identity)]
    details: Dict[str, object] = {}
    if isinstance(V, Join):
        details["fails_in"] = [str(m) for m in failing]
    for m in failing:
        if isinstance(m, MonoidAtom):
            witness = find_counterexample(m.monoid, identity)
            details["witness"] = f"{m}: {witness.describe(m.monoid)}"
            break
    return details


# =============================================================================
# Identities and monoids
# =============================================================================


@_verdict_or_error
def check(variety: str, identity: str) -> Verdict:
    V = parse_variety(variety)
    parsed = parse_identity(identity)
    ok = V.holds(parsed)
    payload = {"variety": str(V), "identity": format_identity(parsed)}
    if not ok:
        payload.update(_failure_details(V, parsed))
    return Verdict(status=_holds_status(ok), subject="check", payload=payload)


@_verdict_or_error
def monoid(action: str, preset: str, identity: Optional[str] = None) -> Verdict:
    M = load_preset(preset)
    payload: Dict[str, object] = {"monoid": M.display_name}
    if action == "build":
        payload.update(
            size=M.size,
            elements=list(M.elements),
            aperiodic=is_aperiodic(M),
            j_trivial=is_j_trivial(M),
        )
        return Verdict(status=VerdictStatus.HOLDS, subject="monoid build", payload=payload)
    if action == "table":
        payload["table"] = table_dump(M).splitlines()
        return Verdict(status=VerdictStatus.HOLDS, subject="monoid table", payload=payload)
    if action == "idempotents":
        E = idempotent_submonoid(M)
        payload.update(size=E.size, elements=list(E.elements))
        return Verdict(status=VerdictStatus.HOLDS, subject="monoid idempotents", payload=payload)
    if action == "check":
        if not identity:
            raise ArgumentError("monoid check needs an identity")
        parsed = parse_identity(identity)
        witness = find_counterexample(M, parsed)
        payload["identity"] = format_identity(parsed)
        if witness is not None:
            payload["witness"] = witness.describe(M)
        return Verdict(
            status=_holds_status(witness is None), subject="monoid check", payload=payload
        )
    raise ArgumentError(f"unknown monoid action {action!r}; use build, table, idempotents or check")


# =============================================================================
# Families and the band lattice
# =============================================================================


@_verdict_or_error
def family(
    name: str,
    n: Optional[int] = None,
    pi: Optional[Sequence[int]] = None,
    tau: Optional[Sequence[int]] = None,
    word: Optional[str] = None,
) -> Verdict:
    try:
        family_name = FamilyName(name)
    except ValueError:
        raise ArgumentError(
            f"unknown family {name!r}; known: {', '.join(f.value for f in FamilyName)}"
        ) from None
    payload: Dict[str, object] = {"family": family_name.value}

    if word is not None:
        if family_name not in (FamilyName.PHI, FamilyName.PHI_BAR):
            raise ArgumentError("a word parameter is only taken by phi and phi_bar")
        member = phi_family if family_name == FamilyName.PHI else phibar_family
        payload["identities"] = [format_identity(member(parse_word(word)))]
        return Verdict(status=VerdictStatus.HOLDS, subject="family", payload=payload)

    if family_name in BAND_WORDS:
        if n is None:
            raise ArgumentError("this family needs the parameter n")
        payload["word"] = format_word(BAND_WORDS[family_name](n))

    instance = schema_instance(family_name, n, pi, tau)
    payload["identities"] = [format_identity(i) for i in instance.identities]
    if instance.flags:
        payload["flags"] = list(instance.flags)
    return Verdict(status=VerdictStatus.HOLDS, subject="family", payload=payload)


@_verdict_or_error
def lattice(max_level: int = 4) -> Verdict:
    result = band_lattice(max_level)
    nodes = [
        f"{node.name}: " + "; ".join(format_identity(i) for i in node.identities)
        for node in result.nodes
    ]
    covers = [f"{low} < {high}" for low, high in result.covers]
    return Verdict(
        status=VerdictStatus.HOLDS,
        subject="band lattice",
        payload={"nodes": nodes, "covers": covers},
        bounds={"max_level": max_level},
    )


# =============================================================================
# Sweeps, stability and Dist
# =============================================================================


@_verdict_or_error
def sweep(first: str, second: str, max_len: int, letters: Optional[str] = None) -> Verdict:
    A, B = parse_variety(first), parse_variety(second)
    pool = resolve_letters(letters)
    result = sweep_agreement(A, B, max_len, pool)
    payload: Dict[str, object] = {
        "first": str(A),
        "second": str(B),
        "words": result.words,
        "pairs": result.pairs,
    }
    if result.agree:
        status = VerdictStatus.STABLE_UPTO
    else:
        status = VerdictStatus.COUNTEREXAMPLE
        payload["witness"] = format_identity(result.witness)
        payload["first_holds"], payload["second_holds"] = result.verdicts
    return Verdict(
        status=status,
        subject="sweep",
        payload=payload,
        bounds={"max_len": max_len, "letters": len(pool)},
    )


def _stability_verdict(subject: str, result, payload: Dict[str, object], max_len: int) -> Verdict:
    payload["checked"] = result.checked
    if isinstance(result, StableUpTo):
        return Verdict(
            status=VerdictStatus.STABLE_UPTO,
            subject=subject,
            payload=payload,
            bounds={"max_len": max_len},
        )
    payload["u"] = format_word(result.u)
    payload["v"] = format_word(result.v)
    return Verdict(
        status=VerdictStatus.COUNTEREXAMPLE,
        subject=subject,
        payload=payload,
        bounds={"max_len": max_len},
    )


@_verdict_or_error
def stability(variety: str, class_spec: str, max_len: int, letters: Optional[str] = None) -> Verdict:
    V = parse_variety(variety)
    cls = parse_class_spec(class_spec)
    alphabet = resolve_letters(letters, default=class_alphabet(cls))
    result = stability_bounded(V, cls, max_len, alphabet)
    payload = {"variety": str(V), "class": class_spec, "alphabet": format_word(alphabet)}
    return _stability_verdict("stability", result, payload, max_len)


@_verdict_or_error
def isoterm(variety: str, word: str, max_len: int, letters: Optional[str] = None) -> Verdict:
    V = parse_variety(variety)
    w = parse_word(word)
    alphabet = resolve_letters(letters, default=sorted(set(w))) if letters else None
    result = isoterm_bounded(V, w, max_len, alphabet)
    payload = {"variety": str(V), "word": format_word(w)}
    return _stability_verdict("isoterm", result, payload, max_len)


@_verdict_or_error
def dist_report(kind: str, identity: str) -> Verdict:
    try:
        dist_kind = DistKind(kind)
    except ValueError:
        raise ArgumentError(
            f"unknown dist kind {kind!r}; known: {', '.join(k.value for k in DistKind)}"
        ) from None
    parsed = parse_identity(identity)
    result = dist(dist_kind, parsed)
    entries = [
        f"block {entry.block}: "
        + " ".join(f"{o.letter}#{o.index}@{o.position}" for o in entry.occurrences)
        for entry in result.entries
    ]
    return Verdict(
        status=_holds_status(result.is_empty),
        subject="dist",
        payload={
            "kind": dist_kind.value,
            "identity": format_identity(parsed),
            "size": len(result),
            "entries": entries,
        },
    )


# =============================================================================
# Derivations and SC2
# =============================================================================


def _problem(
    basis: Sequence[Identity] = (),
    within: Sequence[VarietyExpr] = (),
    bounds: Optional[Dict[str, int]] = None,
    nonempty: bool = False,
) -> RewriteProblem:
    settings = {k: v for k, v in (bounds or {}).items() if v is not None}
    return RewriteProblem(
        basis=tuple(basis),
        ambient=tuple(within),
        codomain=Codomain.NONEMPTY if nonempty else Codomain.ANY,
        **settings,
    )


def _derivation_verdict(subject: str, result, prob: RewriteProblem) -> Verdict:
    bounds = {
        "max_word_len": prob.max_word_len,
        "max_sub_image_len": prob.max_sub_image_len,
        "max_steps": prob.max_steps,
        "ambient_len": prob.ambient_len,
    }
    payload: Dict[str, object] = {
        "identity": format_identity(result.identity),
        "expanded": result.expanded,
    }
    if isinstance(result, DerivationTrace):
        payload["start"] = format_word(result.identity.lhs)
        payload["steps"] = [step.describe() for step in result.steps]
        payload["replayed"] = replay(result, prob)
        return Verdict(
            status=VerdictStatus.DERIVABLE, subject=subject, payload=payload, bounds=bounds
        )
    payload["reason"] = result.reason
    return Verdict(status=VerdictStatus.INCONCLUSIVE, subject=subject, payload=payload, bounds=bounds)


@_verdict_or_error
def derivation(
    identity: str,
    basis_name: Optional[str] = None,
    basis_text: Optional[str] = None,
    within: Sequence[str] = (),
    bounds: Optional[Dict[str, int]] = None,
    nonempty: bool = False,
) -> Verdict:
    basis: List[Identity] = []
    if basis_name:
        basis += load_basis(basis_name)
    if basis_text:
        basis += parse_basis(basis_text)
    prob = _problem(basis, [parse_variety(v) for v in within], bounds, nonempty)
    result = derive(parse_identity(identity), prob)
    return _derivation_verdict("derive", result, prob)


@_verdict_or_error
def meet(
    first: str,
    second: str,
    identity: str,
    basis_name: Optional[str] = None,
    bounds: Optional[Dict[str, int]] = None,
) -> Verdict:
    X, Y = parse_variety(first), parse_variety(second)
    basis = load_basis(basis_name) if basis_name else []
    prob = _problem(basis, (X, Y), bounds)
    result = meet_membership_bounded(X, Y, parse_identity(identity), prob)
    return _derivation_verdict("meet", result, prob)


@_verdict_or_error
def sc2(variety: str, n_max: int, stab_len: int) -> Verdict:
    V = parse_variety(variety)
    report = sc2_report(V, n_max, stab_len)
    checks = [
        f"{c.name}: {'verified' if c.passed else 'failed'} ({c.detail})" for c in report.checks
    ]
    return Verdict(
        status=report.status,
        subject="sc2",
        payload={"variety": report.variety, "summary": report.summary(), "checks": checks},
        bounds={"n_max": n_max, "stab_len": stab_len},
    )
