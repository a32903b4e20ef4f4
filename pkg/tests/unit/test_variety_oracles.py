"""
Unit tests for variety_oracles: word keys, variety expressions, dist sets,
bounded stability, isoterms and checker sweeps
"""

import pytest

from errors import ArgumentError, BlocksDoNotCorrespond, BudgetExceeded, UnsupportedVariety, WordParseError
from monoid_core import load_preset
from variety_oracles import (
    B1,
    E1,
    E1BAR,
    E3,
    E3BAR,
    L2,
    L3,
    Q1,
    Q1_JOIN_B1,
    R2,
    R3,
    R3STAB,
    DistKind,
    Join,
    MonoidAtom,
    StabilityCounterexample,
    StableUpTo,
    VerdictStatus,
    class_alphabet,
    dist,
    dual,
    format_variety,
    isoterm_bounded,
    join,
    parse_class_spec,
    parse_variety,
    stability_bounded,
    sweep_agreement,
    triple_stable,
)
from word_core import (
    FixedPattern,
    Identity,
    Occurrence,
    canonical_pairs,
    format_identity,
    parse_identity,
    parse_word,
)


def holds(V, text):
    return V.holds(parse_identity(text))


# =============================================================================
# Oracles
# =============================================================================


def test_q1_compares_simple_letters_and_block_contents():
    assert holds(Q1, "xyxy ~ yxyx")
    assert holds(Q1, "xtx ~ xtxx")
    assert not holds(Q1, "xy ~ yx")
    assert not holds(Q1, "xtx ~ xxt")


def test_l2_and_r2():
    assert holds(L2, "xyx ~ xy")
    assert not holds(R2, "xyx ~ xy")
    assert holds(R2, "xyx ~ yx")
    assert not holds(L2, "xy ~ yx")


def test_b1():
    assert not holds(B1, "xyx ~ xy")
    assert holds(B1, "xyyx ~ xyyxyx")
    assert holds(B1, "x ~ xx")


def test_r3_against_l3():
    assert holds(R3, "xytxy ~ xyxtxy")
    assert not holds(L3, "xytxy ~ xyxtxy")


def test_identity_of_e1_v_e1bar_outside_e3():
    identity = "xs^2z^2x ~ xs^2xz^2x"
    assert holds(L2, identity)
    assert holds(R2, identity)
    assert holds(join(E1, E1BAR), identity)
    assert not holds(E3, identity)
    assert not holds(E3BAR, identity)


def test_identity_of_a01_outside_level_three():
    identity = "xszx ~ xsxzx"
    assert holds(L2, identity)
    assert holds(R2, identity)
    assert holds(MonoidAtom(load_preset("a01")), identity)
    assert not holds(R3, identity)
    assert not holds(L3, identity)


def test_e1_reads_first_occurrences_blockwise():
    assert holds(E1, "xyx ~ xyxx")
    assert holds(E1BAR, "xyx ~ xyxx")
    assert holds(E1, "xytxy ~ xytxyx")
    assert not holds(E1, "xytxy ~ xytyxy")
    assert holds(E1BAR, "xytxy ~ xytyxy")


def test_q1_v_b1_is_blockwise_b1():
    assert holds(Q1_JOIN_B1, "xtx ~ xtxx")
    assert not holds(Q1_JOIN_B1, "xtx ~ xxt")


def test_r3_stab_agrees_with_r3_on_examples():
    for text in ("xytxy ~ xyxtxy", "xszx ~ xsxzx", "xyzxy ~ xyzyxy", "xyx ~ xyxx"):
        assert R3STAB.holds(parse_identity(text)) == R3.holds(parse_identity(text)), text


def test_triple_stable_arguments():
    identity = parse_identity("xyzxy ~ xyzyxy")
    with pytest.raises(ArgumentError):
        triple_stable(identity, "x", "x", "y")
    with pytest.raises(ArgumentError):
        triple_stable(identity, "x", "y", "t")


def test_unkeyed_atoms_bucket_by_ini_and_fin():
    w = parse_word("xyx")
    assert R3STAB.key(w) is None
    assert not R3STAB.supports_key()
    assert R3STAB.coarse_key(w) == (("x", "y"), ("y", "x"))


# =============================================================================
# Expressions
# =============================================================================


def test_parse_join():
    V = parse_variety("q1 v r3")
    assert V == Join((Q1, R3))
    assert format_variety(V) == "q1 v r3"


def test_parse_dual_normalizes():
    assert parse_variety("dual(e1) v l2") == Join((E1BAR, L2))
    assert parse_variety("dual(q1)") == Q1
    assert parse_variety("(l2 v (r2))") == Join((L2, R2))


def test_parse_monoid_atoms():
    V = parse_variety("monoid(q1)")
    assert isinstance(V, MonoidAtom)
    assert str(V) == "monoid(q1)"
    assert str(parse_variety("dual(monoid(l21))")) == "dual(monoid(l21))"


def test_dual_monoid_atom_reverses_identities():
    V = parse_variety("dual(monoid(l21))")
    assert holds(V, "xyx ~ yx")
    assert not holds(V, "xyx ~ xy")


def test_parse_errors():
    with pytest.raises(UnsupportedVariety):
        parse_variety("l4")
    with pytest.raises(UnsupportedVariety):
        parse_variety("e5bar")
    with pytest.raises(WordParseError) as e:
        parse_variety("foo")
    assert e.value.column == 1
    with pytest.raises(WordParseError):
        parse_variety("q1 v")
    with pytest.raises(WordParseError):
        parse_variety("q1 r3")


def test_join_flattens_and_deduplicates():
    assert join(Q1, join(Q1, R3)) == Join((Q1, R3))
    assert join(Q1) == Q1


def test_dual_is_an_involution():
    V = parse_variety("q1 v e3 v l2")
    assert dual(dual(V)) == V
    assert dual(V) == Join((Q1, E3BAR, R2))


def test_join_key_needs_every_member_keyed():
    assert Join((Q1, R3STAB)).key(parse_word("xy")) is None
    assert Join((Q1, R3)).key(parse_word("xy")) is not None


# =============================================================================
# Dist sets
# =============================================================================


def test_dist_q1_to_e1():
    result = dist(DistKind.Q1_TO_E1, parse_identity("xyxy ~ yxyx"))
    assert len(result) == 1
    entry = result.entries[0]
    assert entry.block == 0
    assert entry.occurrences == (Occurrence("x", 1, 1), Occurrence("y", 1, 2))


def test_dist_empty_when_e1_holds():
    assert dist(DistKind.Q1_TO_E1, parse_identity("xyxy ~ xyxyxy")).is_empty


@pytest.mark.parametrize(
    "kind, oracle",
    [(DistKind.Q1_TO_E1, E1), (DistKind.Q1_TO_E1BAR, E1BAR)],
)
def test_dist_is_empty_exactly_when_the_identity_holds(kind, oracle):
    checked = 0
    for identity in canonical_pairs(5, ("x", "y", "z")):
        if not Q1.holds(identity):
            continue
        checked += 1
        assert dist(kind, identity).is_empty == oracle.holds(identity), format_identity(identity)
    assert checked > 0


def test_dist_ee_to_e3():
    result = dist(DistKind.EE_TO_E3, parse_identity("xs^2z^2x ~ xs^2xz^2x"))
    assert len(result) == 1
    assert result.entries[0].occurrences == (
        Occurrence("s", 2, 3),
        Occurrence("z", 1, 4),
        Occurrence("x", 2, 6),
    )


def test_dist_requires_corresponding_blocks():
    with pytest.raises(BlocksDoNotCorrespond):
        dist(DistKind.Q1_TO_E1, parse_identity("xy ~ yx"))
    with pytest.raises(BlocksDoNotCorrespond):
        dist(DistKind.EE_TO_E3, parse_identity("xyxy ~ yxyx"))


# =============================================================================
# Stability and isoterms
# =============================================================================


def test_aabb_not_stable_in_l2():
    result = stability_bounded(L2, FixedPattern.AABB, 4, ("a", "b"))
    assert isinstance(result, StabilityCounterexample)
    assert result.u == parse_word("aabb")
    assert result.v == parse_word("ab")
    assert result.status == VerdictStatus.COUNTEREXAMPLE


def test_beta_class_stable_in_q1_v_r3():
    result = stability_bounded(join(Q1, R3), (E1, parse_word("atbba")), 6, ("a", "b", "t"))
    assert isinstance(result, StableUpTo)
    assert result.status == VerdictStatus.STABLE_UPTO
    assert result.max_len == 6


def test_xtx_is_not_an_isoterm_for_q1():
    result = isoterm_bounded(Q1, parse_word("xtx"), 4)
    assert isinstance(result, StabilityCounterexample)
    assert result.u == parse_word("xtx")
    assert result.v == parse_word("xtxx")


def test_xy_is_an_isoterm_for_q1():
    assert isinstance(isoterm_bounded(Q1, parse_word("xy"), 5), StableUpTo)


def test_stability_budget_and_bounds():
    with pytest.raises(BudgetExceeded):
        stability_bounded(L2, FixedPattern.AABB, 6, ("a", "b"), budget=5)
    with pytest.raises(ArgumentError):
        stability_bounded(L2, FixedPattern.AABB, 0, ("a", "b"))


def test_class_specs():
    assert parse_class_spec("aabb") == FixedPattern.AABB
    V, w = parse_class_spec("q1 v r3:atbba")
    assert V == Join((Q1, R3))
    assert w == parse_word("atbba")
    assert class_alphabet((V, w)) == ("a", "b", "t")
    assert class_alphabet(FixedPattern.AABB) == ("a", "b")
    assert class_alphabet(FixedPattern.BETA_ATBBA) == ("a", "b", "t")
    with pytest.raises(WordParseError):
        parse_class_spec("zzz")


# =============================================================================
# Sweeps
# =============================================================================


def test_q1_oracle_agrees_with_its_monoid():
    result = sweep_agreement(Q1, parse_variety("monoid(q1)"), 4, ("x", "y", "z"))
    assert result.agree
    assert result.status == VerdictStatus.HOLDS


def test_r3_agrees_with_triple_criterion():
    result = sweep_agreement(R3, R3STAB, 4, ("x", "y", "z"))
    assert result.agree
    assert result.pairs > 0


def test_keyed_sweep_counts_pairs_within_classes():
    # over {x} up to length 2 the band classes are {1} and {x, xx}
    result = sweep_agreement(B1, B1, 2, ("x",))
    assert result.agree
    assert result.words == 3
    assert result.pairs == 1 + 2 * 2


def test_sweep_finds_a_disagreement():
    result = sweep_agreement(Q1, E1, 4, ("x", "y"))
    assert not result.agree
    assert result.status == VerdictStatus.FAILS
    assert Q1.holds(result.witness) != E1.holds(result.witness)


def test_sweep_budget():
    with pytest.raises(BudgetExceeded):
        sweep_agreement(Q1, E1, 4, ("x", "y"), max_pairs=10)


def test_monoid_sweep_matches_identity_checks():
    """Keys of monoid atoms are value vectors over the pool"""
    V = parse_variety("monoid(l21)")
    pool = ("x", "y")
    assert V.key(parse_word("xyx"), pool) == V.key(parse_word("xy"), pool)
    assert V.key(parse_word("xy"), pool) != V.key(parse_word("yx"), pool)
    assert V.holds(Identity(parse_word("xyx"), parse_word("xy")))
