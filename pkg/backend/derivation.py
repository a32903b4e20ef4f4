"""
Derivation Search
Bounded equational derivations from a finite basis, optionally inside known varieties, and the SC2 evidence report
"""

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Hashable, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from errors import ArgumentError, WordParseError
from families import FamilyName, FIXED_BASES, fixed_basis, un_vn
from local_monitoring import log_operation, logger
from monova_config import (
    get_ambient_len,
    get_data_dir,
    get_max_steps,
    get_max_sub_image_len,
    get_max_word_len,
)
from variety_oracles import (
    E1,
    E1BAR,
    StableUpTo,
    VarietyExpr,
    VerdictStatus,
    stability_bounded,
)
from word_core import (
    FixedPattern,
    Identity,
    Letter,
    Word,
    content,
    enumerate_words,
    format_identity,
    format_word,
    parse_identity,
    parse_word,
)


class Codomain(str, Enum):
    ANY = "any"
    NONEMPTY = "nonempty"


FORWARD = "->"
BACKWARD = "<-"


class RewriteProblem(BaseModel):
    """Basis, optional ambient varieties and the bounds of one derivation search"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    basis: Tuple[Identity, ...] = ()
    ambient: Tuple[VarietyExpr, ...] = ()
    max_word_len: int = Field(default_factory=get_max_word_len, gt=0)
    max_sub_image_len: int = Field(default_factory=get_max_sub_image_len, gt=0)
    max_steps: int = Field(default_factory=get_max_steps, gt=0)
    ambient_len: int = Field(default_factory=get_ambient_len, gt=0)
    codomain: Codomain = Codomain.ANY

    @model_validator(mode="after")
    def _has_rules(self):
        if not self.basis and not self.ambient:
            raise ValueError("a derivation needs a nonempty basis or an ambient variety")
        for V in self.ambient:
            if not V.supports_key():
                raise ValueError(f"ambient variety {V} has no word key")
        return self


class DerivationStep(NamedTuple):
    """One rewrite: a basis identity applied at a position, or a jump inside an ambient variety"""

    rule: Optional[int]
    direction: str
    position: int
    substitution: Tuple[Tuple[Letter, Word], ...]
    ambient: Optional[str]
    result: Word

    def describe(self) -> str:
        if self.ambient is not None:
            return f"within {self.ambient} -> {format_word(self.result)}"
        images = ",".join(f"{x}->{format_word(w)}" for x, w in self.substitution)
        return (
            f"rule#{self.rule + 1} {self.direction} {self.position} {{{images}}}"
            f" => {format_word(self.result)}"
        )


@dataclass(frozen=True)
class DerivationTrace:
    identity: Identity
    steps: Tuple[DerivationStep, ...]
    expanded: int = 0

    @property
    def status(self) -> VerdictStatus:
        return VerdictStatus.DERIVABLE

    @property
    def counts(self) -> Dict[str, int]:
        return {"steps": len(self.steps), "expanded": self.expanded}


@dataclass(frozen=True)
class Inconclusive:
    """The search ended without a derivation; nothing is claimed about derivability"""

    identity: Identity
    reason: str
    expanded: int = 0
    bounds: Dict[str, int] = field(default_factory=dict)

    @property
    def status(self) -> VerdictStatus:
        return VerdictStatus.INCONCLUSIVE

    @property
    def counts(self) -> Dict[str, int]:
        return {"expanded": self.expanded}


# =============================================================================
# One-step rewriting
# =============================================================================


def _match(
    pattern: Word,
    w: Word,
    start: int,
    binding: Dict[Letter, Word],
    shortest: int,
    longest: int,
) -> Iterator[Tuple[int, Dict[Letter, Word]]]:
    """Ways to read pattern at w[start:], yielding (end, binding)"""
    if not pattern:
        yield start, binding
        return
    x, rest = pattern[0], pattern[1:]
    bound = binding.get(x)
    if bound is not None:
        if w[start : start + len(bound)] == bound:
            yield from _match(rest, w, start + len(bound), binding, shortest, longest)
        return
    for size in range(shortest, min(longest, len(w) - start) + 1):
        extended = dict(binding)
        extended[x] = w[start : start + size]
        yield from _match(rest, w, start + size, extended, shortest, longest)


def _rule_moves(w: Word, prob: RewriteProblem) -> Iterator[Tuple[Word, DerivationStep]]:
    shortest = 0 if prob.codomain == Codomain.ANY else 1
    for k, (lhs, rhs) in enumerate(prob.basis):
        for direction, pattern, template in ((FORWARD, lhs, rhs), (BACKWARD, rhs, lhs)):
            free = set(template) - set(pattern)
            if free and prob.codomain == Codomain.NONEMPTY:
                continue
            for start in range(len(w) + 1):
                for end, theta in _match(pattern, w, start, {}, shortest, prob.max_sub_image_len):
                    image: List[Letter] = []
                    for x in template:
                        image.extend(theta.get(x, ()))
                    result = w[:start] + tuple(image) + w[end:]
                    if result == w or len(result) > prob.max_word_len:
                        continue
                    substitution = tuple(sorted(theta.items())) + tuple((x, ()) for x in sorted(free))
                    yield result, DerivationStep(k, direction, start + 1, substitution, None, result)


class _AmbientIndex:
    """Buckets of words up to ambient_len under each ambient variety's key"""

    def __init__(self, prob: RewriteProblem, alphabet: Sequence[Letter]):
        self.prob = prob
        self.alphabet = tuple(sorted(alphabet))
        self.buckets: List[Dict[Hashable, List[Word]]] = []
        for V in prob.ambient:
            buckets: Dict[Hashable, List[Word]] = {}
            for v in enumerate_words(self.alphabet, prob.ambient_len):
                buckets.setdefault(V.key(v, self.alphabet), []).append(v)
            self.buckets.append(buckets)

    def moves(self, w: Word) -> Iterator[Tuple[Word, DerivationStep]]:
        if len(w) > self.prob.ambient_len:
            return
        for V, buckets in zip(self.prob.ambient, self.buckets):
            for v in buckets.get(V.key(w, self.alphabet), ()):
                if v != w and len(v) <= self.prob.max_word_len:
                    yield v, DerivationStep(None, FORWARD, 1, (), str(V), v)


def one_step(w: Word, prob: RewriteProblem) -> Set[Word]:
    """Words reachable from w by one application of a basis identity"""
    if len(w) > prob.max_word_len:
        return set()
    return {result for result, _ in _rule_moves(w, prob)}


def _invert(step: DerivationStep, source: Word) -> DerivationStep:
    """The step that undoes step, landing on source"""
    if step.ambient is not None:
        return step._replace(result=source)
    direction = BACKWARD if step.direction == FORWARD else FORWARD
    return step._replace(direction=direction, result=source)


# =============================================================================
# Search
# =============================================================================


@log_operation("derive")
def derive(identity: Identity, prob: RewriteProblem):
    """
    Bidirectional breadth-first search for a derivation of lhs ~ rhs.

    Returns a replayable DerivationTrace, or Inconclusive when the frontier
    empties or max_steps expansions are spent.
    """
    lhs, rhs = identity
    bounds = {
        "max_word_len": prob.max_word_len,
        "max_sub_image_len": prob.max_sub_image_len,
        "max_steps": prob.max_steps,
        "ambient_len": prob.ambient_len,
    }
    if len(lhs) > prob.max_word_len or len(rhs) > prob.max_word_len:
        return Inconclusive(identity, "an endpoint is longer than max_word_len", 0, bounds)
    if lhs == rhs:
        return DerivationTrace(identity, ())

    ambient = _AmbientIndex(prob, content(lhs) | content(rhs)) if prob.ambient else None

    def moves(w: Word) -> Iterator[Tuple[Word, DerivationStep]]:
        yield from _rule_moves(w, prob)
        if ambient is not None:
            yield from ambient.moves(w)

    # parents[side][w] = (word one step closer to that side's endpoint, step from it to w)
    parents: Tuple[Dict[Word, Tuple[Optional[Word], Optional[DerivationStep]]], ...] = (
        {lhs: (None, None)},
        {rhs: (None, None)},
    )
    frontiers: List[List[Word]] = [[lhs], [rhs]]
    expanded = 0

    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, other = parents[side], parents[1 - side]
        following: List[Word] = []
        for w in frontiers[side]:
            expanded += 1
            if expanded > prob.max_steps:
                logger.info(f"derive {format_identity(identity)}: step budget spent")
                return Inconclusive(identity, "max_steps expansions spent", expanded, bounds)
            for v, step in moves(w):
                if v in mine:
                    continue
                mine[v] = (w, step)
                if v in other:
                    steps = _assemble(parents, v)
                    logger.info(
                        f"derive {format_identity(identity)}: {len(steps)} steps, {expanded} expansions"
                    )
                    return DerivationTrace(identity, steps, expanded)
                following.append(v)
        frontiers[side] = following

    return Inconclusive(identity, "search space exhausted within bounds", expanded, bounds)


def _assemble(parents, meeting: Word) -> Tuple[DerivationStep, ...]:
    forward_parents, backward_parents = parents
    head: List[DerivationStep] = []
    w = meeting
    while forward_parents[w][0] is not None:
        previous, step = forward_parents[w]
        head.append(step)
        w = previous
    head.reverse()

    tail: List[DerivationStep] = []
    w = meeting
    while backward_parents[w][0] is not None:
        closer, step = backward_parents[w]
        # step turns closer into w; walking towards rhs needs the inverse
        tail.append(_invert(step, closer))
        w = closer
    return tuple(head + tail)


def replay(trace: DerivationTrace, prob: RewriteProblem) -> bool:
    """Check every step of a trace against the basis and ambient varieties"""
    current = trace.identity.lhs
    ambient = {str(V): V for V in prob.ambient}
    for step in trace.steps:
        if len(step.result) > prob.max_word_len:
            return False
        if step.ambient is not None:
            V = ambient.get(step.ambient)
            if V is None or not V.holds(Identity(current, step.result)):
                return False
        else:
            if step.rule is None or not 0 <= step.rule < len(prob.basis):
                return False
            lhs, rhs = prob.basis[step.rule]
            pattern, template = (lhs, rhs) if step.direction == FORWARD else (rhs, lhs)
            theta = dict(step.substitution)
            if any(x not in theta for x in pattern):
                return False
            if prob.codomain == Codomain.NONEMPTY and any(not theta.get(x) for x in template):
                return False
            found = tuple(y for x in pattern for y in theta[x])
            start = step.position - 1
            if current[start : start + len(found)] != found:
                return False
            image = tuple(y for x in template for y in theta.get(x, ()))
            if current[:start] + image + current[start + len(found) :] != step.result:
                return False
        current = step.result
    return current == trace.identity.rhs


def format_trace(trace: DerivationTrace) -> str:
    lines = [f"{format_word(trace.identity.lhs)}"]
    lines.extend(f"{i}. {step.describe()}" for i, step in enumerate(trace.steps, start=1))
    return "\n".join(lines)


# =============================================================================
# Bases
# =============================================================================


def basis_sound(V: VarietyExpr, basis: Sequence[Identity]) -> bool:
    """V satisfies every identity of the basis"""
    return all(V.holds(identity) for identity in basis)


def parse_basis(text: str) -> List[Identity]:
    identities = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            identities.append(parse_identity(line))
        except WordParseError as e:
            raise WordParseError(f"line {number}: {e}") from e
    return identities


def load_basis(name: str) -> List[Identity]:
    """A family basis name such as qr3_basis, a file under data/bases, or a path"""
    if name in {f.value for f in FIXED_BASES}:
        return fixed_basis(FamilyName(name))
    shipped = get_data_dir() / "bases" / f"{name}.txt"
    for path in (shipped, Path(name)):
        if path.is_file():
            return parse_basis(path.read_text(encoding="utf-8"))
    raise ArgumentError(f"unknown basis {name!r}")


@log_operation("meet")
def meet_membership_bounded(
    X: VarietyExpr,
    Y: VarietyExpr,
    identity: Identity,
    prob: Optional[RewriteProblem] = None,
):
    """
    Try to derive the identity using only identities of X and of Y.

    Basis rules in prob are allowed when each holds in X or in Y. A trace
    certifies that the identity holds in the meet of X and Y.
    """
    basis = prob.basis if prob else ()
    for rule in basis:
        if not (X.holds(rule) or Y.holds(rule)):
            raise ArgumentError(f"{format_identity(rule)} holds in neither {X} nor {Y}")
    settings = prob.model_dump(exclude={"basis", "ambient"}) if prob else {}
    meet_problem = RewriteProblem(basis=basis, ambient=(X, Y), **settings)
    return derive(identity, meet_problem)


# =============================================================================
# SC2 evidence
# =============================================================================

STABILITY_CLASSES = (
    ("[ab^2ta] under e1bar", (E1BAR, parse_word("abbta")), ("a", "b", "t")),
    ("[atb^2a] under e1", (E1, parse_word("atbba")), ("a", "b", "t")),
    ("aa+bb+", FixedPattern.AABB, ("a", "b")),
)


class HypothesisCheck(NamedTuple):
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class SC2Report:
    """Bounded evidence for the SC2 hypotheses; not a proof"""

    variety: str
    n_max: int
    stab_len: int
    checks: Tuple[HypothesisCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def status(self) -> VerdictStatus:
        return VerdictStatus.HOLDS if self.passed else VerdictStatus.FAILS

    @property
    def counts(self) -> Dict[str, int]:
        return {"checks": len(self.checks)}

    def summary(self) -> str:
        if self.passed:
            return (
                f"SC2 hypotheses verified at bounds (n_max={self.n_max}, "
                f"stab_len={self.stab_len}) for {self.variety}; bounded evidence, not a proof"
            )
        failing = next(check for check in self.checks if not check.passed)
        return f"SC2 hypothesis fails for {self.variety}: {failing.name}: {failing.detail}"


@log_operation("sc2")
def sc2_report(V: VarietyExpr, n_max: int, stab_len: int) -> SC2Report:
    if n_max < 1 or stab_len < 1:
        raise ArgumentError("n_max and stab_len must be positive")
    checks: List[HypothesisCheck] = []

    failing_n = next((n for n in range(1, n_max + 1) if not V.holds(un_vn(n))), None)
    if failing_n is None:
        checks.append(HypothesisCheck("U_n ~ V_n", True, f"holds for n <= {n_max}"))
    else:
        checks.append(
            HypothesisCheck(
                "U_n ~ V_n", False, f"fails at n = {failing_n}: {format_identity(un_vn(failing_n))}"
            )
        )

    for name, cls, alphabet in STABILITY_CLASSES:
        verdict = stability_bounded(V, cls, stab_len, alphabet)
        if isinstance(verdict, StableUpTo):
            checks.append(HypothesisCheck(name, True, f"stable up to length {stab_len}"))
        else:
            checks.append(
                HypothesisCheck(
                    name,
                    False,
                    f"{format_word(verdict.u)} ~ {format_word(verdict.v)} leaves the class",
                )
            )

    return SC2Report(str(V), n_max, stab_len, tuple(checks))
