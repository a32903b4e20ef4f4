"""
Unit tests for monoid_core: tables, presentations, presets and identity checking
"""

import pytest

from errors import (
    BudgetExceeded,
    IdempotentsNotClosed,
    LetterLookupError,
    PresentationError,
    TableError,
)
from monoid_core import (
    PRESET_NAMES,
    Presentation,
    build_from_presentation,
    direct_product,
    dual_monoid,
    eval_word,
    find_counterexample,
    idempotent_submonoid,
    idempotents,
    is_aperiodic,
    is_j_trivial,
    load_preset,
    monoid_from_table,
    parse_presentation,
    parse_table_dump,
    rees_quotient,
    satisfies,
    table_dump,
)
from word_core import parse_identity, parse_word

Z2 = [[0, 1], [1, 0]]


# =============================================================================
# Tables
# =============================================================================


def test_table_checks_identity():
    with pytest.raises(TableError):
        monoid_from_table([[0, 0], [0, 1]], one=0)


def test_table_checks_associativity():
    rows = [[0, 1, 2], [1, 2, 2], [2, 2, 1]]
    with pytest.raises(TableError) as e:
        monoid_from_table(rows, one=0)
    assert "associativity" in str(e.value)


def test_table_checks_shape_and_entries():
    with pytest.raises(TableError):
        monoid_from_table([[0, 1], [1]], one=0)
    with pytest.raises(TableError):
        monoid_from_table([[0, 1], [1, 5]], one=0)


def test_table_checks_zero():
    with pytest.raises(TableError):
        monoid_from_table(Z2, one=0, zero=1)


def test_cyclic_group_is_neither_aperiodic_nor_j_trivial():
    M = monoid_from_table(Z2, one=0)
    assert not is_aperiodic(M)
    assert not is_j_trivial(M)


# =============================================================================
# Presentations
# =============================================================================


def test_relations_are_oriented_shortlex_decreasing():
    p = parse_presentation("gens: e b\nzero\ne b = b\nb e = 0\ne e = e\n")
    rules = p.rules()
    assert rules[("e", "b")] == ("b",)
    assert rules[("b", "e")] == ("0",)
    assert rules[("e", "e")] == ("e",)


def test_chained_relations_share_the_last_side():
    p = parse_presentation("gens: a b c\nzero\na c = b a = 0\n")
    assert p.relations == ((("a", "c"), ("0",)), (("b", "a"), ("0",)))


def test_presentation_rejects_undeclared_generators():
    with pytest.raises(PresentationError):
        parse_presentation("gens: a\na b = a\n")
    with pytest.raises(PresentationError):
        parse_presentation("gens: a\na a = 0\n")
    with pytest.raises(PresentationError):
        parse_presentation("a a = a\n")


def test_q1_elements_in_shortlex_order():
    q1 = load_preset("q1")
    assert q1.elements == ("1", "b", "c", "e", "bc", "0")
    assert q1.one == 0
    assert q1.zero == 5
    assert is_aperiodic(q1)
    assert is_j_trivial(q1)


def test_preset_sizes():
    sizes = {
        "q1": 6, "a01": 5, "e1": 6, "a1": 7, "k1": 12, "l21": 3, "r21": 3,
        "m_one": 2, "m_xzxyty": 21, "m_jackson2": 35,
    }
    for name, size in sizes.items():
        assert load_preset(name).size == size, name


def test_every_preset_loads():
    for name in PRESET_NAMES:
        assert load_preset(name).size > 0


def test_unknown_preset():
    with pytest.raises(LetterLookupError):
        load_preset("no_such_monoid")


def test_closure_that_never_stabilizes():
    p = Presentation(generators=("a",), relations=())
    with pytest.raises(PresentationError):
        build_from_presentation(p, max_word_len=5)


def test_presentation_without_identity():
    p = parse_presentation("gens: a b\nzero\na a = a b = b a = b b = 0\n")
    with pytest.raises(PresentationError) as e:
        build_from_presentation(p)
    assert "adjoin1" in str(e.value)


def test_presentation_whose_generator_is_the_identity():
    M = build_from_presentation(parse_presentation("gens: a\na a = a\n"))
    assert M.size == 1


# =============================================================================
# Constructions
# =============================================================================


def test_rees_quotient_of_xy():
    M = rees_quotient([parse_word("xy")])
    assert M.elements == ("1", "x", "y", "xy", "0")
    assert not satisfies(M, parse_identity("xy ~ yx"))
    assert satisfies(M, parse_identity("xx ~ xxx"))


def test_rees_quotient_of_two_words():
    # 34 distinct factors of the two words, counting the empty word, plus 0
    M = rees_quotient([parse_word("xyzxty"), parse_word("xzytxy")])
    assert M.size == 35
    assert "xy" in M.elements
    assert "xyxy" not in M.elements
    assert M.zero is not None
    assert satisfies(M, parse_identity("xx ~ xxx"))
    assert not satisfies(M, parse_identity("xyzxty ~ xzytxy"))


def test_dual_monoid_reverses_identities():
    identity = parse_identity("xyx ~ xy")
    l21 = load_preset("l21")
    assert satisfies(l21, identity)
    assert not satisfies(dual_monoid(l21), identity)
    assert satisfies(dual_monoid(l21), identity.reversed())
    assert dual_monoid(l21).name == "dual(l21)"
    assert dual_monoid(dual_monoid(l21)).name == "l21"


def test_direct_product():
    M = direct_product(load_preset("q1"), load_preset("m_one"))
    assert M.size == 12
    assert satisfies(M, parse_identity("xyx ~ xyxx")) == satisfies(load_preset("q1"), parse_identity("xyx ~ xyxx"))


def test_idempotents_of_q1():
    q1 = load_preset("q1")
    assert [q1.elements[e] for e in idempotents(q1)] == ["1", "e", "0"]
    E = idempotent_submonoid(q1)
    assert E.elements == ("1", "e", "0")
    assert E.zero == 2


def test_idempotents_of_a1_are_not_closed():
    with pytest.raises(IdempotentsNotClosed) as e:
        idempotent_submonoid(load_preset("a1"))
    assert e.value.pair == ("b", "a")


def test_table_dump_round_trip():
    q1 = load_preset("q1")
    text = table_dump(q1)
    assert text.startswith("size 6\n")
    again = parse_table_dump(text)
    assert again.table == q1.table
    assert again.zero == q1.zero


# =============================================================================
# Identity checking
# =============================================================================


def test_q1_is_not_a_band():
    q1 = load_preset("q1")
    witness = find_counterexample(q1, parse_identity("x ~ xx"))
    assert witness is not None
    assert q1.elements[witness.assignment["x"]] == "b"
    assert witness.describe(q1) == "x->b: left side = b, right side = 0"


def test_l21_is_not_commutative():
    l21 = load_preset("l21")
    witness = find_counterexample(l21, parse_identity("xy ~ yx"))
    assert {x: l21.elements[i] for x, i in witness.assignment.items()} == {"x": "a", "y": "b"}


def test_trivial_identity_holds_everywhere():
    assert satisfies(load_preset("k1"), parse_identity("xyzx ~ xyzx"))


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded) as e:
        satisfies(load_preset("q1"), parse_identity("xyz ~ zyx"), budget=10)
    assert e.value.required == 216


def test_eval_word_needs_every_letter():
    q1 = load_preset("q1")
    assert eval_word(q1, {"x": q1.index_of("e")}, parse_word("xx")) == q1.index_of("e")
    with pytest.raises(LetterLookupError):
        eval_word(q1, {"x": 1}, parse_word("xy"))
