"""
Cross Checks
Acceptance checks run in-process at full or reduced bounds, one Verdict per check
"""

from typing import Callable, Dict, List, NamedTuple

from derivation import (
    DerivationTrace,
    RewriteProblem,
    basis_sound,
    derive,
    meet_membership_bounded,
    replay,
    sc2_report,
)
from errors import MonovaError
from families import FamilyName, fixed_basis, same_pair, un_vn
from local_monitoring import logger
from monoid_core import is_aperiodic, is_j_trivial, load_preset
from variety_oracles import (
    E1,
    E1BAR,
    E3,
    E3BAR,
    Q1,
    Q1_JOIN_B1,
    DistKind,
    StableUpTo,
    VerdictStatus,
    class_member,
    dist,
    parse_variety,
    stability_bounded,
    sweep_agreement,
)
from verdicts import Verdict
from word_core import (
    FixedPattern,
    canonical_pairs,
    enumerate_words,
    format_identity,
    format_word,
    has_property_P,
    parse_identity,
    parse_word,
    pattern_member,
)

POOL = ("x", "y", "z", "t")


def _verdict(name: str, failures: List[str], bounds: Dict[str, int]) -> Verdict:
    status = VerdictStatus.FAILS if failures else VerdictStatus.HOLDS
    if failures:
        logger.warning(f"crosscheck {name}: {len(failures)} failures")
    return Verdict(status=status, subject=name, payload={"failures": failures}, bounds=bounds)


def check_monoid_sizes(quick: bool) -> Verdict:
    failures = []
    sizes = {"q1": 6, "a01": 5, "e1": 6, "a1": 7, "k1": 12, "m_one": 2, "m_xzxyty": 21, "m_jackson2": 35}
    for preset, size in sizes.items():
        actual = load_preset(preset).size
        if actual != size:
            failures.append(f"{preset} has {actual} elements, expected {size}")
    q1 = load_preset("q1")
    if not (is_aperiodic(q1) and is_j_trivial(q1)):
        failures.append("q1 is not aperiodic and J-trivial")
    return _verdict("monoid sizes", failures, {})


def _sweeps(name: str, pairs, max_len: int, letters: int) -> Verdict:
    failures = []
    for first, second in pairs:
        result = sweep_agreement(parse_variety(first), parse_variety(second), max_len, POOL[:letters])
        if not result.agree:
            failures.append(f"{first} / {second} disagree on {format_identity(result.witness)}")
    return _verdict(name, failures, {"max_len": max_len, "letters": letters})


def check_oracles_against_monoids(quick: bool) -> Verdict:
    pairs = [("q1", "monoid(q1)"), ("e1", "monoid(e1)"), ("l2", "monoid(l21)"), ("r2", "monoid(r21)")]
    return _sweeps("oracles against monoids", pairs, 4 if quick else 6, 3)


def check_r3_criteria(quick: bool) -> Verdict:
    return _sweeps("r3 criteria agree", [("r3", "r3stab"), ("l3", "l3stab")], 5 if quick else 7, 3 if quick else 4)


def check_q1_r3_join(quick: bool) -> Verdict:
    return _sweeps("q1 v r3 equals e1 v r3", [("q1 v r3", "e1 v r3")], 5 if quick else 7, 3 if quick else 4)


def check_q1_b1_join(quick: bool) -> Verdict:
    return _sweeps("q1vb1 atom", [("q1vb1", "q1 v b1")], 5 if quick else 7, 3 if quick else 4)


def check_dist_emptiness(quick: bool) -> Verdict:
    max_len = 5 if quick else 6
    failures = []
    for identity in canonical_pairs(max_len, POOL[:3]):
        if not Q1.holds(identity):
            continue
        for kind, oracle in ((DistKind.Q1_TO_E1, E1), (DistKind.Q1_TO_E1BAR, E1BAR)):
            if dist(kind, identity).is_empty != oracle.holds(identity):
                failures.append(f"{kind.value}: {format_identity(identity)}")
    return _verdict("dist emptiness", failures, {"max_len": max_len, "letters": 3})


PINNED = (
    ("xszx ~ xsxzx", ("l2", "r2", "monoid(a01)"), ("r3", "l3")),
    ("xytxy ~ xyxtxy", ("r3",), ("l3",)),
    ("xs^2z^2x ~ xs^2xz^2x", ("l2", "r2", "e1 v e1bar"), ("e3", "e3bar")),
)


def check_pinned_identities(quick: bool) -> Verdict:
    failures = []
    for text, holding, failing in PINNED:
        identity = parse_identity(text)
        failures += [f"{text} should hold in {v}" for v in holding if not parse_variety(v).holds(identity)]
        failures += [f"{text} should fail in {v}" for v in failing if parse_variety(v).holds(identity)]
    eer3 = parse_variety("e1 v e1bar v r3")
    if not basis_sound(eer3, fixed_basis(FamilyName.EER3_BASIS)):
        failures.append("eer3 basis does not hold in e1 v e1bar v r3")
    if not quick:
        prob = RewriteProblem(basis=(), ambient=(E3, E3BAR), max_word_len=10, ambient_len=10)
        result = meet_membership_bounded(E3, E3BAR, parse_identity("xs^2z^2x ~ xs^2xz^2x"), prob)
        if not isinstance(result, DerivationTrace):
            failures.append("xs^2z^2x ~ xs^2xz^2x not derived inside e3 and e3bar")
    return _verdict("pinned identities", failures, {})


def check_nfb_family(quick: bool) -> Verdict:
    n_max = 4 if quick else 6
    failures = []
    holders = [parse_variety(v) for v in ("e1", "e1bar", "monoid(a01)")]
    r3 = parse_variety("r3")
    for n in range(1, n_max + 1):
        identity = un_vn(n)
        failures += [f"U{n} ~ V{n} should hold in {V}" for V in holders if not V.holds(identity)]
        if n >= 2:
            last = f"y{n}"
            if not has_property_P(identity.lhs, "x", "y1", last):
                failures.append(f"U{n} lacks property P")
            if has_property_P(identity.rhs, "x", "y1", last):
                failures.append(f"V{n} has property P")
            if r3.holds(identity):
                failures.append(f"U{n} ~ V{n} should fail in r3")
    return _verdict("nfb family", failures, {"n_max": n_max})


def check_stability(quick: bool) -> Verdict:
    length = 6 if quick else 9
    failures = []
    atbba = parse_word("atbba")
    result = stability_bounded(parse_variety("q1 v r3"), (E1, atbba), length, ("a", "b", "t"))
    if not isinstance(result, StableUpTo):
        failures.append(f"[atb^2a] not stable in q1 v r3: {format_word(result.u)} ~ {format_word(result.v)}")
    aabb_len = 6 if quick else 8
    result = stability_bounded(parse_variety("monoid(a01)"), FixedPattern.AABB, aabb_len, ("a", "b"))
    if not isinstance(result, StableUpTo):
        failures.append(f"aa+bb+ not stable in monoid(a01): {format_word(result.u)} ~ {format_word(result.v)}")
    for v in enumerate_words(("a", "b", "t"), length):
        if pattern_member(FixedPattern.BETA_ATBBA, v) != class_member(E1, atbba, v):
            failures.append(f"pattern and e1 class disagree on {format_word(v)}")
            break
    return _verdict("stability", failures, {"max_len": length})


def check_derivations(quick: bool) -> Verdict:
    failures = []
    left, right = same_pair("ii")
    prob = RewriteProblem(basis=tuple(left), ambient=(Q1_JOIN_B1,), max_word_len=9, ambient_len=9)
    for target in right:
        result = derive(target, prob)
        if not isinstance(result, DerivationTrace):
            failures.append(f"{format_identity(target)} not derived from the left set")
        elif not replay(result, prob):
            failures.append(f"trace for {format_identity(target)} does not replay")
    for basis, variety in (
        (FamilyName.QR3_BASIS, "q1 v r3"),
        (FamilyName.EER3_BASIS, "e1 v e1bar v r3"),
        (FamilyName.QLR2_BASIS, "q1 v l2 v r2"),
        (FamilyName.QR2_BASIS, "q1 v r2"),
    ):
        if not basis_sound(parse_variety(variety), fixed_basis(basis)):
            failures.append(f"{basis.value} does not hold in {variety}")
    return _verdict("derivations", failures, {})


def check_sc2(quick: bool) -> Verdict:
    n_max, stab_len = (4, 6) if quick else (6, 8)
    failures = []
    report = sc2_report(parse_variety("monoid(a01) v e1 v e1bar"), n_max, stab_len)
    if not report.passed:
        failures.append(report.summary())
    report = sc2_report(parse_variety("q1 v r3"), n_max, stab_len)
    first = report.checks[0]
    if first.passed or "n = 2" not in first.detail:
        failures.append(f"q1 v r3 should fail U_n ~ V_n at n = 2, got: {first.detail}")
    return _verdict("sc2", failures, {"n_max": n_max, "stab_len": stab_len})


class CrossCheck(NamedTuple):
    name: str
    run: Callable[[bool], Verdict]


CHECKS = (
    CrossCheck("sizes", check_monoid_sizes),
    CrossCheck("oracles", check_oracles_against_monoids),
    CrossCheck("r3", check_r3_criteria),
    CrossCheck("qr3", check_q1_r3_join),
    CrossCheck("qb", check_q1_b1_join),
    CrossCheck("dist", check_dist_emptiness),
    CrossCheck("pinned", check_pinned_identities),
    CrossCheck("nfb", check_nfb_family),
    CrossCheck("stability", check_stability),
    CrossCheck("derivations", check_derivations),
    CrossCheck("sc2", check_sc2),
)


def run_crosscheck(quick: bool = False) -> List[Verdict]:
    verdicts = []
    for check in CHECKS:
        logger.info(f"crosscheck {check.name} ({'quick' if quick else 'full'})")
        try:
            verdicts.append(check.run(quick))
        except MonovaError as e:
            logger.error(f"crosscheck {check.name} raised: {e}")
            verdicts.append(Verdict.from_error(e, subject=check.name))
    return verdicts
