"""
Variety Oracles
Syntactic identity checkers for the named monoid varieties, variety expressions, Dist sets and bounded stability
"""

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations, permutations
from typing import (
    Callable,
    Dict,
    Hashable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from errors import (
    ArgumentError,
    BlocksDoNotCorrespond,
    BudgetExceeded,
    UnsupportedVariety,
    WordParseError,
)
from local_monitoring import log_operation, logger
from monoid_core import FiniteMonoid, dual_monoid, load_preset, satisfies, word_values
from monova_config import get_eval_budget, get_sweep_pairs
from word_core import (
    FixedPattern,
    Identity,
    Letter,
    Occurrence,
    Word,
    block_decompose,
    block_spans,
    canonical_pairs,
    content,
    enumerate_words,
    fin,
    first_after,
    format_identity,
    format_word,
    ini,
    last_occ,
    occurrence_at,
    parse_word,
    pattern_member,
    reverse,
    r_suffix,
    ell,
)


class VerdictStatus(str, Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    STABLE_UPTO = "STABLE_UPTO"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"
    DERIVABLE = "DERIVABLE"
    INCONCLUSIVE = "INCONCLUSIVE"
    ERROR = "ERROR"


# =============================================================================
# Word keys: two words are identified by a variety iff their keys agree
# =============================================================================


def q1_key(w: Word) -> Hashable:
    d = block_decompose(w)
    return d.simple_letters, tuple(frozenset(block) for block in d.blocks)


def l2_key(w: Word) -> Hashable:
    return ini(w)


def r2_key(w: Word) -> Hashable:
    return fin(w)


@lru_cache(maxsize=1 << 18)
def b1_key(w: Word) -> Hashable:
    if not w:
        return ()
    return content(w), b1_key(ell(w)), b1_key(r_suffix(w))


@lru_cache(maxsize=1 << 18)
def r3_key(w: Word) -> Hashable:
    if not w:
        return ()
    return ini(w), r3_key(r_suffix(w))


def l3_key(w: Word) -> Hashable:
    return r3_key(reverse(w))


def _blockwise(block_key: Callable[[Word], Hashable]) -> Callable[[Word], Hashable]:
    def key(w: Word) -> Hashable:
        d = block_decompose(w)
        return d.simple_letters, tuple(block_key(block) for block in d.blocks)

    return key


e1_key = _blockwise(ini)
e1bar_key = _blockwise(fin)
e3_key = _blockwise(r3_key)
e3bar_key = _blockwise(l3_key)
q1vb1_key = _blockwise(b1_key)


# =============================================================================
# Oracles
# =============================================================================


def q1_holds(identity: Identity) -> bool:
    return q1_key(identity.lhs) == q1_key(identity.rhs)


def l2_holds(identity: Identity) -> bool:
    return ini(identity.lhs) == ini(identity.rhs)


def r2_holds(identity: Identity) -> bool:
    return fin(identity.lhs) == fin(identity.rhs)


def b1_holds(identity: Identity) -> bool:
    return b1_key(identity.lhs) == b1_key(identity.rhs)


def e1_holds(identity: Identity) -> bool:
    return e1_key(identity.lhs) == e1_key(identity.rhs)


def e1bar_holds(identity: Identity) -> bool:
    return e1bar_key(identity.lhs) == e1bar_key(identity.rhs)


def r3_rec_holds(identity: Identity) -> bool:
    """ini agrees, then recurse on the suffixes missing one letter"""
    return r3_key(identity.lhs) == r3_key(identity.rhs)


def l3_rec_holds(identity: Identity) -> bool:
    return r3_rec_holds(identity.reversed())


def e3_holds(identity: Identity) -> bool:
    return e3_key(identity.lhs) == e3_key(identity.rhs)


def e3bar_holds(identity: Identity) -> bool:
    return e3bar_key(identity.lhs) == e3bar_key(identity.rhs)


def q1_join_b1_holds(identity: Identity) -> bool:
    return q1vb1_key(identity.lhs) == q1vb1_key(identity.rhs)


def _triple_order(w: Word, x: Letter, y: Letter, z: Letter) -> bool:
    """After the last z, y occurs and its first occurrence there precedes that of x"""
    if z not in w:
        return False
    anchor = last_occ(w, z)
    fy = first_after(w, anchor, y)
    fx = first_after(w, anchor, x)
    return fy is not None and fx is not None and fy.position < fx.position


def triple_stable(identity: Identity, x: Letter, y: Letter, z: Letter) -> bool:
    if len({x, y, z}) != 3:
        raise ArgumentError(f"triple letters must be pairwise distinct: {x}, {y}, {z}")
    missing = {x, y, z} - set(identity.lhs)
    if missing:
        raise ArgumentError(
            f"letter {sorted(missing)[0]} does not occur in {format_word(identity.lhs)}"
        )
    u, v = identity
    return all(
        _triple_order(u, a, b, c) == _triple_order(v, a, b, c)
        for a, b, c in permutations((x, y, z))
    )


def r3_stab_holds(identity: Identity) -> bool:
    """ini and fin agree and every triple of letters is stable"""
    if not (l2_holds(identity) and r2_holds(identity)):
        return False
    u, v = identity
    return all(
        _triple_order(u, x, y, z) == _triple_order(v, x, y, z)
        for x, y, z in permutations(ini(u), 3)
    )


def l3_stab_holds(identity: Identity) -> bool:
    return r3_stab_holds(identity.reversed())


# =============================================================================
# Variety expressions
# =============================================================================


class VarietyName(str, Enum):
    Q1 = "q1"
    L2 = "l2"
    R2 = "r2"
    L3 = "l3"
    R3 = "r3"
    B1 = "b1"
    E1 = "e1"
    E1BAR = "e1bar"
    E3 = "e3"
    E3BAR = "e3bar"
    Q1_JOIN_B1 = "q1vb1"
    R3STAB = "r3stab"
    L3STAB = "l3stab"


_KEYS: Dict[VarietyName, Callable[[Word], Hashable]] = {
    VarietyName.Q1: q1_key,
    VarietyName.L2: l2_key,
    VarietyName.R2: r2_key,
    VarietyName.L3: l3_key,
    VarietyName.R3: r3_key,
    VarietyName.B1: b1_key,
    VarietyName.E1: e1_key,
    VarietyName.E1BAR: e1bar_key,
    VarietyName.E3: e3_key,
    VarietyName.E3BAR: e3bar_key,
    VarietyName.Q1_JOIN_B1: q1vb1_key,
}

_UNKEYED: Dict[VarietyName, Callable[[Identity], bool]] = {
    VarietyName.R3STAB: r3_stab_holds,
    VarietyName.L3STAB: l3_stab_holds,
}

_DUAL_NAMES = {
    VarietyName.L2: VarietyName.R2,
    VarietyName.L3: VarietyName.R3,
    VarietyName.E1: VarietyName.E1BAR,
    VarietyName.E3: VarietyName.E3BAR,
    VarietyName.R3STAB: VarietyName.L3STAB,
}
_DUAL_NAMES.update({b: a for a, b in list(_DUAL_NAMES.items())})


class VarietyExpr:
    """A variety given by a decision procedure for its identities"""

    def holds(self, identity: Identity) -> bool:
        raise NotImplementedError

    def key(self, w: Word, pool: Sequence[Letter] = ()) -> Optional[Hashable]:
        """Canonical invariant of w, or None when the variety has no key"""
        return None

    def supports_key(self) -> bool:
        return False

    def coarse_key(self, w: Word, pool: Sequence[Letter] = ()) -> Optional[Hashable]:
        """Invariant that agrees on both sides of every identity of the variety"""
        return self.key(w, pool)


@dataclass(frozen=True)
class Atom(VarietyExpr):
    name: VarietyName

    def holds(self, identity: Identity) -> bool:
        if self.name in _UNKEYED:
            return _UNKEYED[self.name](identity)
        key = _KEYS[self.name]
        return key(identity.lhs) == key(identity.rhs)

    def key(self, w: Word, pool: Sequence[Letter] = ()) -> Optional[Hashable]:
        key = _KEYS.get(self.name)
        return key(w) if key else None

    def supports_key(self) -> bool:
        return self.name in _KEYS

    def coarse_key(self, w: Word, pool: Sequence[Letter] = ()) -> Optional[Hashable]:
        if self.name in _UNKEYED:
            return ini(w), fin(w)
        return self.key(w, pool)

    def __str__(self) -> str:
        return self.name.value


@dataclass(frozen=True)
class Join(VarietyExpr):
    """Identities of a join are the common identities of its members"""

    members: Tuple[VarietyExpr, ...]

    def __post_init__(self):
        if not self.members:
            raise ArgumentError("a join needs at least one member")

    def holds(self, identity: Identity) -> bool:
        return all(m.holds(identity) for m in self.members)

    def key(self, w: Word, pool: Sequence[Letter] = ()) -> Optional[Hashable]:
        if not self.supports_key():
            return None
        return tuple(m.key(w, pool) for m in self.members)

    def supports_key(self) -> bool:
        return all(m.supports_key() for m in self.members)

    def coarse_key(self, w: Word, pool: Sequence[Letter] = ()) -> Optional[Hashable]:
        keys = tuple(m.coarse_key(w, pool) for m in self.members)
        return None if any(k is None for k in keys) else keys

    def __str__(self) -> str:
        return " v ".join(str(m) for m in self.members)


@dataclass(frozen=True)
class MonoidAtom(VarietyExpr):
    """The variety generated by one finite monoid"""

    monoid: FiniteMonoid

    def holds(self, identity: Identity) -> bool:
        return satisfies(self.monoid, identity)

    def key(self, w: Word, pool: Sequence[Letter] = ()) -> Optional[Hashable]:
        letters = tuple(sorted(set(pool) | set(w)))
        return word_values(self.monoid, w, letters).tobytes()

    def supports_key(self) -> bool:
        return True

    def __str__(self) -> str:
        name = self.monoid.display_name
        if name.startswith("dual(") and name.endswith(")"):
            return f"dual(monoid({name[len('dual(') : -1]}))"
        return f"monoid({name})"


Q1 = Atom(VarietyName.Q1)
L2 = Atom(VarietyName.L2)
R2 = Atom(VarietyName.R2)
L3 = Atom(VarietyName.L3)
R3 = Atom(VarietyName.R3)
B1 = Atom(VarietyName.B1)
E1 = Atom(VarietyName.E1)
E1BAR = Atom(VarietyName.E1BAR)
E3 = Atom(VarietyName.E3)
E3BAR = Atom(VarietyName.E3BAR)
Q1_JOIN_B1 = Atom(VarietyName.Q1_JOIN_B1)
R3STAB = Atom(VarietyName.R3STAB)
L3STAB = Atom(VarietyName.L3STAB)


def join(*members: VarietyExpr) -> VarietyExpr:
    """Flattened join; a single member is returned as is"""
    flat: List[VarietyExpr] = []
    for m in members:
        parts = m.members if isinstance(m, Join) else (m,)
        for part in parts:
            if part not in flat:
                flat.append(part)
    if len(flat) == 1:
        return flat[0]
    return Join(tuple(flat))


def dual(V: VarietyExpr) -> VarietyExpr:
    """The dual variety, normalized: atoms swap with their mirror atoms"""
    if isinstance(V, Atom):
        return Atom(_DUAL_NAMES.get(V.name, V.name))
    if isinstance(V, Join):
        return join(*(dual(m) for m in V.members))
    if isinstance(V, MonoidAtom):
        return MonoidAtom(dual_monoid(V.monoid))
    raise ArgumentError(f"cannot dualize {V!r}")


def format_variety(V: VarietyExpr) -> str:
    """Text that parse_variety reads back, except for monoids built outside the presets"""
    return str(V)


def holds(V: VarietyExpr, identity: Identity) -> bool:
    return V.holds(identity)


def variety_key(V: VarietyExpr, w: Word, pool: Sequence[Letter] = ()) -> Optional[Hashable]:
    return V.key(w, pool)


def class_member(V: VarietyExpr, w: Word, v: Word) -> bool:
    """v lies in the class of w under the fully invariant congruence of V"""
    return V.holds(Identity(w, v))


# =============================================================================
# Parsing variety expressions
# =============================================================================

_TOKEN = re.compile(r"\s*(?:(?P<name>[a-z0-9_]+)|(?P<punct>[()]))")
_HIGHER_LEVEL = re.compile(r"[lre](\d+)(bar)?")


def parse_variety(text: str) -> VarietyExpr:
    """
    Parse expressions such as "q1 v r3", "dual(e1) v l2" or "monoid(a01) v b1".

    The argument of monoid(...) is a preset name or a path to a monoid file.
    """
    parser = _VarietyParser(text)
    expr = parser.expression()
    parser.skip_space()
    if parser.pos != len(text):
        raise WordParseError("unexpected trailing text", column=parser.pos + 1)
    return expr


class _VarietyParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_space(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> Optional[str]:
        m = _TOKEN.match(self.text, self.pos)
        if m is None:
            return None
        return m.group("name") or m.group("punct")

    def take(self) -> str:
        m = _TOKEN.match(self.text, self.pos)
        if m is None:
            self.skip_space()
            if self.pos >= len(self.text):
                raise WordParseError("unexpected end of variety expression", column=self.pos + 1)
            raise WordParseError(
                f"unexpected character {self.text[self.pos]!r}", column=self.pos + 1
            )
        self.pos = m.end()
        return m.group("name") or m.group("punct")

    def expect(self, token: str):
        start = self.pos
        if self.take() != token:
            raise WordParseError(f"expected {token!r}", column=start + 1)

    def expression(self) -> VarietyExpr:
        members = [self.term()]
        while self.peek() == "v":
            self.take()
            members.append(self.term())
        return join(*members)

    def term(self) -> VarietyExpr:
        self.skip_space()
        start = self.pos
        token = self.take()
        if token == "(":
            inner = self.expression()
            self.expect(")")
            return inner
        if token == "dual":
            self.expect("(")
            inner = self.expression()
            self.expect(")")
            return dual(inner)
        if token == "monoid":
            self.expect("(")
            close = self.text.find(")", self.pos)
            if close < 0:
                raise WordParseError("unclosed monoid(...)", column=self.pos + 1)
            argument = self.text[self.pos : close].strip()
            self.pos = close + 1
            return MonoidAtom(load_preset(argument))
        try:
            return Atom(VarietyName(token))
        except ValueError:
            pass
        higher = _HIGHER_LEVEL.fullmatch(token)
        if higher and int(higher.group(1)) >= 4:
            raise UnsupportedVariety(
                f"{token}: no identity checker is available beyond level 3"
            )
        raise WordParseError(f"unknown variety {token!r}", column=start + 1)


# =============================================================================
# Dist sets
# =============================================================================


class DistKind(str, Enum):
    Q1_TO_E1 = "q1_to_e1"
    Q1_TO_E1BAR = "q1_to_e1bar"
    EE_TO_E3 = "ee_to_e3"


class DistEntry(NamedTuple):
    """Occurrences in the left side, tagged with the index of their block"""

    block: int
    occurrences: Tuple[Occurrence, ...]


class DistSet(NamedTuple):
    kind: DistKind
    entries: Tuple[DistEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def is_empty(self) -> bool:
        return not self.entries


def _first_positions(block: Word) -> Dict[Letter, int]:
    found: Dict[Letter, int] = {}
    for i, x in enumerate(block):
        found.setdefault(x, i)
    return found


def _last_positions(block: Word) -> Dict[Letter, int]:
    return {x: i for i, x in enumerate(block)}


def _triple_positions(block: Word, x: Letter, y: Letter, z: Letter) -> Optional[Tuple[int, int, int]]:
    """Local positions of the last z and the first y and x after it"""
    if z not in block:
        return None
    anchor = len(block) - 1 - block[::-1].index(z)
    tail = block[anchor + 1 :]
    if x not in tail or y not in tail:
        return None
    return anchor, anchor + 1 + tail.index(y), anchor + 1 + tail.index(x)


def dist(kind: DistKind, identity: Identity) -> DistSet:
    """Occurrence tuples whose relative order differs between corresponding blocks"""
    kind = DistKind(kind)
    if kind == DistKind.EE_TO_E3:
        if not (e1_holds(identity) and e1bar_holds(identity)):
            raise BlocksDoNotCorrespond(
                f"{format_identity(identity)} does not hold in e1 v e1bar"
            )
    elif not q1_holds(identity):
        raise BlocksDoNotCorrespond(f"{format_identity(identity)} does not hold in q1")

    u, v = identity
    u_spans = block_spans(u)
    v_blocks = block_decompose(v).blocks
    entries: List[DistEntry] = []

    for index, ((start, a), b) in enumerate(zip(u_spans, v_blocks)):
        if kind in (DistKind.Q1_TO_E1, DistKind.Q1_TO_E1BAR):
            locate = _first_positions if kind == DistKind.Q1_TO_E1 else _last_positions
            in_a, in_b = locate(a), locate(b)
            for x, y in combinations(sorted(in_a), 2):
                if (in_a[x] < in_a[y]) != (in_b[x] < in_b[y]):
                    pair = sorted((in_a[x], in_a[y]))
                    entries.append(
                        DistEntry(index, tuple(occurrence_at(u, start + p) for p in pair))
                    )
        else:
            letters = sorted(set(a))
            for z in letters:
                others = [x for x in letters if x != z]
                for x, y in combinations(others, 2):
                    pa = _triple_positions(a, x, y, z)
                    pb = _triple_positions(b, x, y, z)
                    if pa is None or pb is None:
                        continue
                    # (last z, first y after it, first x after it) in each block
                    if (pa[1] < pa[2]) != (pb[1] < pb[2]):
                        entries.append(
                            DistEntry(index, tuple(occurrence_at(u, start + p) for p in sorted(pa)))
                        )

    return DistSet(kind, tuple(entries))


# =============================================================================
# Bounded stability, isoterms and sweeps
# =============================================================================

ClassSpec = Union[FixedPattern, Tuple[VarietyExpr, Word]]


def class_predicate(cls: ClassSpec, alphabet: Sequence[Letter] = ()) -> Callable[[Word], bool]:
    if isinstance(cls, FixedPattern):
        return lambda w: pattern_member(cls, w)
    oracle, w = cls
    if oracle.supports_key():
        pool = tuple(sorted(set(alphabet) | content(w)))
        target = oracle.key(w, pool)
        return lambda v: oracle.key(v, pool) == target
    return lambda v: class_member(oracle, w, v)


def describe_class(cls: ClassSpec) -> str:
    if isinstance(cls, FixedPattern):
        return cls.value
    oracle, w = cls
    return f"{oracle}:{format_word(w)}"


def parse_class_spec(text: str) -> ClassSpec:
    """aabb, beta_atbba, or <variety>:<word> for the class of the word"""
    text = text.strip()
    try:
        return FixedPattern(text)
    except ValueError:
        pass
    if ":" not in text:
        raise WordParseError(
            f"class spec {text!r} is neither a fixed pattern nor <variety>:<word>", column=1
        )
    variety_text, word_text = text.rsplit(":", 1)
    return parse_variety(variety_text), parse_word(word_text, offset=len(variety_text) + 1)


def class_alphabet(cls: ClassSpec) -> Tuple[Letter, ...]:
    if cls == FixedPattern.AABB:
        return ("a", "b")
    if isinstance(cls, FixedPattern):
        return ("a", "b", "t")
    return tuple(sorted(content(cls[1])))


@dataclass(frozen=True)
class StableUpTo:
    max_len: int
    checked: int

    @property
    def status(self) -> VerdictStatus:
        return VerdictStatus.STABLE_UPTO

    @property
    def counts(self) -> Dict[str, int]:
        return {"checked": self.checked}


@dataclass(frozen=True)
class StabilityCounterexample:
    """u lies in the class, V identifies u with v, and v lies outside"""

    u: Word
    v: Word
    checked: int = 0

    @property
    def status(self) -> VerdictStatus:
        return VerdictStatus.COUNTEREXAMPLE

    @property
    def counts(self) -> Dict[str, int]:
        return {"checked": self.checked}


StabilityVerdict = Union[StableUpTo, StabilityCounterexample]


def _word_count(alphabet_size: int, max_len: int) -> int:
    return sum(alphabet_size**n for n in range(max_len + 1))


def _search_unstable(
    V: VarietyExpr,
    member: Callable[[Word], bool],
    label: str,
    max_len: int,
    alphabet: Tuple[Letter, ...],
    budget: int,
) -> StabilityVerdict:
    if max_len < 1:
        raise ArgumentError("max_len must be at least 1")
    total = _word_count(len(alphabet), max_len)
    if total > budget:
        raise BudgetExceeded(total, budget, f"{total} words over {len(alphabet)} letters")
    words = list(enumerate_words(alphabet, max_len))
    members = [w for w in words if member(w)]

    if V.supports_key():
        buckets: Dict[Hashable, List[Word]] = {}
        for w in words:
            buckets.setdefault(V.key(w, alphabet), []).append(w)
        checked = 0
        for u in members:
            bucket = buckets[V.key(u, alphabet)]
            checked += len(bucket)
            for v in bucket:
                if not member(v):
                    logger.info(f"{label} not stable in {V}: {format_word(u)} ~ {format_word(v)}")
                    return StabilityCounterexample(u, v, checked)
        return StableUpTo(max_len, checked)

    required = len(members) * len(words)
    if required > budget:
        raise BudgetExceeded(
            required, budget, f"{len(members)} class members against {len(words)} words"
        )
    checked = 0
    for u in members:
        for v in words:
            checked += 1
            if not member(v) and V.holds(Identity(u, v)):
                logger.info(f"{label} not stable in {V}: {format_word(u)} ~ {format_word(v)}")
                return StabilityCounterexample(u, v, checked)
    return StableUpTo(max_len, checked)


@log_operation("stability")
def stability_bounded(
    V: VarietyExpr,
    cls: ClassSpec,
    max_len: int,
    alphabet: Sequence[Letter],
    budget: Optional[int] = None,
) -> StabilityVerdict:
    """
    Look for u in the class and v outside it with V satisfying u ~ v.

    Both words range over the alphabet up to max_len, u and then v in
    shortlex order. Keyed varieties are checked by bucketing every word
    under its key; the rest fall back to pairwise checks.
    """
    alphabet = tuple(sorted(set(alphabet)))
    return _search_unstable(
        V,
        class_predicate(cls, alphabet),
        describe_class(cls),
        max_len,
        alphabet,
        budget or get_eval_budget(),
    )


@log_operation("isoterm")
def isoterm_bounded(
    V: VarietyExpr,
    w: Word,
    max_len: int,
    alphabet: Optional[Sequence[Letter]] = None,
    budget: Optional[int] = None,
) -> StabilityVerdict:
    """Stability of the singleton class {w}; the alphabet defaults to the letters of w"""
    alphabet = tuple(sorted(set(alphabet or content(w) or ("x",))))
    return _search_unstable(
        V,
        lambda v: v == w,
        format_word(w),
        max_len,
        alphabet,
        budget or get_eval_budget(),
    )


@dataclass(frozen=True)
class SweepResult:
    agree: bool
    words: int
    pairs: int
    witness: Optional[Identity] = None
    verdicts: Tuple[bool, bool] = (True, True)

    @property
    def status(self) -> VerdictStatus:
        return VerdictStatus.HOLDS if self.agree else VerdictStatus.FAILS

    @property
    def counts(self) -> Dict[str, int]:
        return {"words": self.words, "pairs": self.pairs}


@log_operation("sweep")
def sweep_agreement(
    A: VarietyExpr,
    B: VarietyExpr,
    max_len: int,
    pool: Sequence[Letter],
    max_pairs: Optional[int] = None,
) -> SweepResult:
    """
    Compare two checkers on every identity over the pool up to max_len.

    With keys on both sides the comparison is a partition check over all
    words. Otherwise pairs sharing a coarse bucket are checked one by one,
    and checkers with no invariant at all fall back to canonical pairs.
    """
    max_pairs = max_pairs or get_sweep_pairs()
    pool = tuple(pool)

    if A.supports_key() and B.supports_key():
        total = _word_count(len(pool), max_len)
        if total > max_pairs:
            raise BudgetExceeded(total, max_pairs, f"{total} words over {len(pool)} letters")
        by_a: Dict[Hashable, Tuple[Word, Hashable]] = {}
        by_b: Dict[Hashable, Tuple[Word, Hashable]] = {}
        sizes: Counter = Counter()
        words = 0
        for w in enumerate_words(pool, max_len):
            words += 1
            ka, kb = A.key(w, pool), B.key(w, pool)
            sizes[ka] += 1
            first, seen_b = by_a.setdefault(ka, (w, kb))
            if seen_b != kb:
                return SweepResult(False, words, _ordered_pairs(sizes), Identity(first, w), (True, False))
            first, seen_a = by_b.setdefault(kb, (w, ka))
            if seen_a != ka:
                return SweepResult(False, words, _ordered_pairs(sizes), Identity(first, w), (False, True))
        return SweepResult(True, words, _ordered_pairs(sizes))

    if A.coarse_key((), pool) is not None and B.coarse_key((), pool) is not None:
        return _bucketed_sweep(A, B, max_len, pool, max_pairs)

    pairs = 0
    for identity in canonical_pairs(max_len, pool):
        pairs += 1
        if pairs > max_pairs:
            raise BudgetExceeded(pairs, max_pairs, f"stopped after {max_pairs} pairs")
        a, b = A.holds(identity), B.holds(identity)
        if a != b:
            return SweepResult(False, 0, pairs, identity, (a, b))
    return SweepResult(True, 0, pairs)


def _ordered_pairs(sizes: Counter) -> int:
    """Ordered word pairs sharing a key of the first checker"""
    return sum(n * n for n in sizes.values())


def _bucketed_sweep(
    A: VarietyExpr, B: VarietyExpr, max_len: int, pool: Tuple[Letter, ...], max_pairs: int
) -> SweepResult:
    """
    Pairs whose coarse keys differ under both checkers fail in both, so only
    pairs sharing a coarse bucket of A or of B are compared.
    """
    words = list(enumerate_words(pool, max_len))
    groups: List[List[Word]] = []
    for V in (A, B):
        buckets: Dict[Hashable, List[Word]] = {}
        for w in words:
            buckets.setdefault(V.coarse_key(w, pool), []).append(w)
        groups.extend(bucket for bucket in buckets.values() if len(bucket) > 1)
    required = sum(len(g) * (len(g) - 1) // 2 for g in groups)
    if required > max_pairs:
        raise BudgetExceeded(required, max_pairs, f"{len(words)} words in {len(groups)} buckets")

    pairs = 0
    for group in groups:
        for u, v in combinations(group, 2):
            pairs += 1
            identity = Identity(u, v)
            a, b = A.holds(identity), B.holds(identity)
            if a != b:
                return SweepResult(False, len(words), pairs, identity, (a, b))
    return SweepResult(True, len(words), pairs)
