"""
Identity Families
Parametric words, identity families, finite bases and the band variety lattice
"""

from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from errors import ArgumentError
from local_monitoring import logger
from word_core import (
    Identity,
    Word,
    block_decompose,
    multiple_letters,
    parse_identity,
    parse_word,
    reverse,
)


def _letters(prefix: str, indices) -> Word:
    return tuple(f"{prefix}{i}" for i in indices)


def _chain(*texts: str) -> List[Identity]:
    """u1 ~ u2 ~ ... ~ uk as the pairs (u1, u2), (u2, u3), ..."""
    words = [parse_word(t) for t in texts]
    return [Identity(a, b) for a, b in zip(words, words[1:])]


def _identities(*texts: str) -> List[Identity]:
    return [parse_identity(t) for t in texts]


def _check_n(n: int, least: int):
    if not isinstance(n, int) or n < least:
        raise ArgumentError(f"n must be an integer >= {least}, got {n!r}")


def _check_permutation(perm: Optional[Sequence[int]], degree: int) -> Tuple[int, ...]:
    """1-based permutation of 1..degree; None means the identity"""
    if perm is None:
        return tuple(range(1, degree + 1))
    perm = tuple(perm)
    if sorted(perm) != list(range(1, degree + 1)):
        raise ArgumentError(f"{list(perm)} is not a permutation of 1..{degree}")
    return perm


# =============================================================================
# Band words
# =============================================================================


def rn(n: int) -> Word:
    _check_n(n, 2)
    if n == 2:
        return ("x2", "x1")
    if n == 3:
        return ("x1", "x2", "x3")
    xn = (f"x{n}",)
    return rn(n - 1) + xn if n % 2 == 0 else xn + rn(n - 1)


def sn(n: int) -> Word:
    _check_n(n, 2)
    if n == 2:
        return ("x1", "x2", "x1")
    if n == 3:
        return parse_word("x1 x2 x3 x1 x3 x2 x3")
    xn = (f"x{n}",)
    return sn(n - 1) + xn + rn(n) if n % 2 == 0 else rn(n) + xn + sn(n - 1)


def rn_bar(n: int) -> Word:
    return reverse(rn(n))


def sn_bar(n: int) -> Word:
    return reverse(sn(n))


# =============================================================================
# Identity families
# =============================================================================


def sigma_n(n: int) -> Identity:
    """e1 t1 ... en tn x^2 y^2 ~ e1 t1 ... en tn y^2 x^2 with e odd = x, e even = y"""
    _check_n(n, 1)
    prefix: List[str] = []
    for i in range(1, n + 1):
        prefix += ["x" if i % 2 else "y", f"t{i}"]
    prefix_word = tuple(prefix)
    return Identity(
        prefix_word + ("x", "x", "y", "y"),
        prefix_word + ("y", "y", "x", "x"),
    )


def un_vn(n: int) -> Identity:
    """x y1^2 ... yn^2 x ~ x y1^2 x y2^2 ... x yn^2 x"""
    _check_n(n, 1)
    squares = [(f"y{i}", f"y{i}") for i in range(1, n + 1)]
    u = ("x",) + sum(squares, ()) + ("x",)
    v = ("x",) + squares[0] + sum((("x",) + sq for sq in squares[1:]), ()) + ("x",)
    return Identity(u, v)


def is_z_word(c: Word) -> bool:
    """Multiple letters exactly x and y, every block a single x or y, no equal adjacent blocks"""
    if multiple_letters(c) != {"x", "y"}:
        return False
    blocks = block_decompose(c).blocks
    if any(block not in (("x",), ("y",)) for block in blocks):
        return False
    return all(a != b for a, b in zip(blocks, blocks[1:]))


def z_xy_enumerate(max_blocks: int) -> List[Word]:
    """Alternating x/y blocks separated by fresh simple letters s1, s2, ..."""
    _check_n(max_blocks, 1)
    found = []
    for m in range(4, max_blocks + 1):
        for first, second in (("x", "y"), ("y", "x")):
            word: List[str] = []
            for i in range(m):
                if i:
                    word.append(f"s{i}")
                word.append(first if i % 2 == 0 else second)
            found.append(tuple(word))
    return found


def _check_z_word(c: Word):
    if "t" in c:
        raise ArgumentError("the letter t is reserved for the separator of the family")
    if not is_z_word(c):
        raise ArgumentError(
            "expected a word whose blocks alternate between x and y with x and y multiple"
        )


def phi_family(c: Word) -> Identity:
    """c t x^2 y^2 ~ c t y x^2 y"""
    _check_z_word(c)
    return Identity(tuple(c) + parse_word("txxyy"), tuple(c) + parse_word("tyxxy"))


def phibar_family(d: Word) -> Identity:
    """x^2 y^2 t d ~ x y^2 x t d"""
    _check_z_word(d)
    return Identity(parse_word("xxyyt") + tuple(d), parse_word("xyyxt") + tuple(d))


def phi() -> Identity:
    return parse_identity("xytxy ~ xytyxy")


def phibar() -> Identity:
    return parse_identity("xytxy ~ xyxtxy")


def v_chain_identity(n: Optional[int]) -> Identity:
    """
    xy t1 x t2 y t3 x ... with n + 2 separators, against the same word with
    xyx in front; None gives the limit member xy t yx ~ xyx t yx.
    """
    if n is None:
        return parse_identity("xytyx ~ xyxtyx")
    _check_n(n, 0)
    tail: List[str] = []
    for i in range(1, n + 3):
        tail += [f"t{i}", "x" if i % 2 else "y"]
    return Identity(("x", "y") + tuple(tail), ("x", "y", "x") + tuple(tail))


# =============================================================================
# Finite bases
# =============================================================================

# xtx ~ xtx^2 ~ x^2tx
APERIODIC_CHAIN = ("xtx", "xtxx", "xxtx")


class FamilyName(str, Enum):
    RN = "rn"
    SN = "sn"
    RN_BAR = "rn_bar"
    SN_BAR = "sn_bar"
    SIGMA_N = "sigma_n"
    UN_VN = "un_vn"
    PHI = "phi"
    PHI_BAR = "phi_bar"
    PHI_SMALL = "phi_small"
    PHIBAR_SMALL = "phibar_small"
    J_SCHEMA = "j_schema"
    J1_SCHEMA = "j1_schema"
    J2_SCHEMA = "j2_schema"
    E1_BASIS = "e1_basis"
    E1BAR_BASIS = "e1bar_basis"
    E3_BASIS = "e3_basis"
    E3BAR_BASIS = "e3bar_basis"
    EE_BASIS = "ee_basis"
    QB_BASIS = "qb_basis"
    QR2_BASIS = "qr2_basis"
    EER3_BASIS = "eer3_basis"
    QR3_BASIS = "qr3_basis"
    QLR2_BASIS = "qlr2_basis"
    QLR3_CONJ_BASIS = "qlr3_conj_basis"
    VCHAIN = "vchain"


FIXED_BASES: Dict[FamilyName, Tuple[str, ...]] = {
    FamilyName.E1_BASIS: ("xyyx ~ xxyy",),
    FamilyName.E1BAR_BASIS: ("xxyy ~ xyxy", "yyxx ~ xyyx"),
    FamilyName.E3_BASIS: ("xxyy ~ xyxy", "xyttxy ~ xyxttxy"),
    FamilyName.E3BAR_BASIS: ("xxyy ~ xyxy", "xyttxy ~ xyttyxy"),
    FamilyName.EE_BASIS: ("xxyy ~ xyxy", "xsszzx ~ xssxzzx"),
    FamilyName.QB_BASIS: ("xyxy ~ xxyy",),
    FamilyName.QR2_BASIS: ("xyytx ~ yyxtx",),
    FamilyName.EER3_BASIS: ("xxyy ~ xyxy", "xyttxsy ~ xyxttxsy"),
    FamilyName.QR3_BASIS: ("xxyy ~ xyxy", "xytxsy ~ xyxtxsy"),
    FamilyName.QLR2_BASIS: ("xyxy ~ xxyy", "xxyytx ~ xyyxtx", "xtxxyy ~ xtyxxy"),
    FamilyName.QLR3_CONJ_BASIS: ("xxyy ~ xyxy", "xyzxytz ~ xyzyxytz", "ztxyzxy ~ ztxyxzxy"),
}


def fixed_basis(name: FamilyName) -> List[Identity]:
    """The aperiodic chain followed by the named basis identities"""
    name = FamilyName(name)
    if name not in FIXED_BASES:
        raise ArgumentError(f"{name.value} is not a fixed basis")
    return _chain(*APERIODIC_CHAIN) + _identities(*FIXED_BASES[name])


J_FIXED = ("xxyy ~ yyxx", "xyx ~ xyxx", "xyzxy ~ yxzxy", "xyxztx ~ xyxzxtx")


def j_schema(n: int, pi: Optional[Sequence[int]] = None) -> Identity:
    """x z_pi(1)..z_pi(n) x t1 z1 .. tn zn ~ x^2 z_pi(1)..z_pi(n) t1 z1 .. tn zn"""
    _check_n(n, 1)
    pi = _check_permutation(pi, n)
    permuted = _letters("z", pi)
    tail = sum(((f"t{i}", f"z{i}") for i in range(1, n + 1)), ())
    return Identity(
        ("x",) + permuted + ("x",) + tail,
        ("x", "x") + permuted + tail,
    )


def _interleaved(n: int, pi: Tuple[int, ...], tau: Tuple[int, ...]) -> Word:
    """x_pi(1) z_tau(1) ... x_pi(2n) z_tau(2n)"""
    return sum(((f"x{pi[i]}", f"z{tau[i]}") for i in range(2 * n)), ())


def j1_schema(
    n: int, pi: Optional[Sequence[int]] = None, tau: Optional[Sequence[int]] = None
) -> Identity:
    _check_n(n, 1)
    pi = _check_permutation(pi, 2 * n)
    tau = _check_permutation(tau, 2 * n)
    head = sum(((f"x{i}", f"t{i}") for i in range(1, n + 1)), ())
    middle = _letters("z", range(1, 2 * n + 1))
    tail = sum(((f"t{i}", f"x{i}") for i in range(n + 1, 2 * n + 1)), ())
    common = head + ("x",) + middle + ("y",) + tail
    shuffled = _interleaved(n, pi, tau)
    return Identity(
        common + ("t", "x", "y") + shuffled,
        common + ("t", "y", "x") + shuffled,
    )


def j2_schema(
    n: int, pi: Optional[Sequence[int]] = None, tau: Optional[Sequence[int]] = None
) -> Identity:
    _check_n(n, 1)
    pi = _check_permutation(pi, 2 * n)
    tau = _check_permutation(tau, 2 * n)
    head = sum(((f"x{i}", f"t{i}") for i in range(1, 2 * n + 1)), ())
    middle = sum(((f"z{i}", f"s{i}") for i in range(1, n + 1)), ())
    rest = _letters("z", range(n + 1, 2 * n + 1))
    common = head + ("x",) + middle + ("y",) + rest
    end = ("t",) + _letters("s", range(1, n + 1))
    shuffled = _interleaved(n, pi, tau)
    return Identity(
        common + ("x", "y") + shuffled + end,
        common + ("y", "x") + shuffled + end,
    )


# Printed with equal sides in the source display; kept as printed
J2_DEGENERATE = "x y1 y s x y x1 y1 t x1 ~ x y1 y s x y x1 y1 t x1"


class SchemaInstance(NamedTuple):
    name: FamilyName
    identities: Tuple[Identity, ...]
    flags: Tuple[str, ...] = ()


def schema_instance(
    name: FamilyName,
    n: Optional[int] = None,
    pi: Optional[Sequence[int]] = None,
    tau: Optional[Sequence[int]] = None,
) -> SchemaInstance:
    """Expand a named family into its list of identities"""
    name = FamilyName(name)
    flags: List[str] = []

    if name in FIXED_BASES:
        identities = fixed_basis(name)
    elif name == FamilyName.VCHAIN:
        identities = fixed_basis(FamilyName.EER3_BASIS) + [v_chain_identity(n)]
    elif name == FamilyName.J_SCHEMA:
        identities = _identities(*J_FIXED) + [j_schema(_required(n), pi)]
    elif name == FamilyName.J1_SCHEMA:
        identities = _identities("xyxz ~ xyxzx", "xyxty ~ xxyty") + [
            j1_schema(_required(n), pi, tau)
        ]
    elif name == FamilyName.J2_SCHEMA:
        degenerate = parse_identity(J2_DEGENERATE)
        identities = [parse_identity("xyxz ~ xyxzx"), degenerate, j2_schema(_required(n), pi, tau)]
        flags.append(f"degenerate identity with equal sides: {J2_DEGENERATE}")
        logger.warning(f"j2_schema includes an identity with equal sides: {J2_DEGENERATE}")
    elif name == FamilyName.SIGMA_N:
        identities = [sigma_n(_required(n))]
    elif name == FamilyName.UN_VN:
        identities = [un_vn(_required(n))]
    elif name == FamilyName.PHI:
        identities = [phi_family(c) for c in z_xy_enumerate(_required(n))]
    elif name == FamilyName.PHI_BAR:
        identities = [phibar_family(d) for d in z_xy_enumerate(_required(n))]
    elif name == FamilyName.PHI_SMALL:
        identities = [phi()]
    elif name == FamilyName.PHIBAR_SMALL:
        identities = [phibar()]
    elif name in (FamilyName.RN, FamilyName.SN):
        # the band words come as the pair R_n ~ S_n
        k = _required(n)
        identities = [Identity(rn(k), sn(k))]
    else:
        k = _required(n)
        identities = [Identity(rn_bar(k), sn_bar(k))]

    return SchemaInstance(name, tuple(identities), tuple(flags))


def _required(n: Optional[int]) -> int:
    if n is None:
        raise ArgumentError("this family needs the parameter n")
    return n


# =============================================================================
# Band varieties
# =============================================================================


def band_join_identity(k: int) -> Identity:
    """Defining identity (with x ~ x^2) of the join of the level-k left and right band varieties"""
    _check_n(k, 2)
    t = ("t",)
    if k % 2 == 0:
        return Identity(rn_bar(k) + t + rn(k), sn(k) + t + sn_bar(k))
    return Identity(rn(k) + t + rn_bar(k), sn(k) + t + sn_bar(k))


class BandNode(NamedTuple):
    name: str
    identities: Tuple[Identity, ...]


class BandLattice(NamedTuple):
    nodes: Tuple[BandNode, ...]
    covers: Tuple[Tuple[str, str], ...]


IDEMPOTENT = parse_identity("x ~ xx")


def band_lattice(max_level: int = 4) -> BandLattice:
    """Varieties of idempotent monoids up to the given level, with their cover relation"""
    _check_n(max_level, 2)
    nodes = [
        BandNode("T", (parse_identity("x ~ 1"),)),
        BandNode("M({1})", (IDEMPOTENT, parse_identity("xy ~ yx"))),
    ]
    covers = [("T", "M({1})")]
    below = ["M({1})"]
    for k in range(2, max_level + 1):
        right, left, both = f"R{k}", f"L{k}", f"L{k} v R{k}"
        nodes += [
            BandNode(right, (IDEMPOTENT, Identity(rn(k), sn(k)))),
            BandNode(left, (IDEMPOTENT, Identity(rn_bar(k), sn_bar(k)))),
            BandNode(both, (IDEMPOTENT, band_join_identity(k))),
        ]
        covers += [(b, v) for b in below for v in (right, left)]
        covers += [(right, both), (left, both)]
        below = [both]
    nodes.append(BandNode("B1", (IDEMPOTENT,)))
    covers.append((below[0], "B1"))
    return BandLattice(tuple(nodes), tuple(covers))


# =============================================================================
# Named words and identity pairs
# =============================================================================

JACKSON_WORD = parse_word("xzxyty")
JACKSON_PAIR = (parse_word("xyzxty"), parse_word("xzytxy"))

# Pairs of identity sets with the same consequences within q1 v b1
SAME_PAIRS: Dict[str, Tuple[Tuple[str, ...], Tuple[str, ...]]] = {
    "i": (("xytyx ~ xytxyx",), ("xytxy ~ xytyxy",)),
    "ii": (("xytyx ~ xyxtxyx",), ("xytyx ~ xytxyx", "xytyx ~ xyxtyx")),
    "iv": (("xyttysx ~ xyxttysx",), ("xyttxsy ~ xyxttxsy",)),
    "v": (("xxyyty ~ xyyxty",), ("xxyytx ~ xyyxtx",)),
}


def same_pair(label: str) -> Tuple[List[Identity], List[Identity]]:
    try:
        left, right = SAME_PAIRS[label]
    except KeyError:
        raise ArgumentError(f"unknown pair {label!r}; known: {', '.join(SAME_PAIRS)}") from None
    return _identities(*left), _identities(*right)
