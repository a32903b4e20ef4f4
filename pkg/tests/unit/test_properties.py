"""
Property tests for words, oracles and rewriting
"""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derivation import RewriteProblem, one_step
from families import FamilyName, fixed_basis
from monoid_core import load_preset, satisfies
from variety_oracles import B1, E1, E3, L2, Q1, R3, dual, join, parse_variety
from word_core import Identity, fin, format_word, ini, parse_word, reverse

words = st.lists(st.sampled_from(["x", "y", "z"]), max_size=6).map(tuple)
indexed_words = st.lists(st.sampled_from(["x", "y1", "y2", "t"]), max_size=8).map(tuple)
identities = st.builds(Identity, words, words)

ATOMS = [parse_variety(name) for name in ("q1", "l2", "r2", "b1", "e1", "e1bar", "r3", "l3", "e3", "q1vb1", "r3stab")]


@given(indexed_words)
def test_format_then_parse(w):
    assert parse_word(format_word(w)) == w


@given(words)
def test_reverse_swaps_ini_and_fin(w):
    assert reverse(reverse(w)) == w
    assert ini(reverse(w)) == reverse(fin(w))


@given(identities)
def test_oracles_are_symmetric(identity):
    for V in ATOMS:
        assert V.holds(identity) == V.holds(identity.swapped()), str(V)


@given(words)
def test_oracles_are_reflexive(w):
    for V in ATOMS:
        assert V.holds(Identity(w, w)), str(V)


@given(identities)
def test_dual_variety_checks_reversed_identities(identity):
    for V in ATOMS:
        assert dual(V).holds(identity) == V.holds(identity.reversed()), str(V)


@given(identities)
def test_finer_keys_imply_coarser(identity):
    if E1.holds(identity):
        assert Q1.holds(identity)
    if E3.holds(identity):
        assert E1.holds(identity)
    if R3.holds(identity):
        assert L2.holds(identity)


@settings(deadline=None)
@given(identities)
def test_q1_oracle_matches_its_monoid(identity):
    assert Q1.holds(identity) == satisfies(load_preset("q1"), identity)


@st.composite
def substitutions(draw):
    images = st.lists(st.sampled_from(["a", "b", "c"]), max_size=3).map(tuple)
    return {x: draw(images) for x in ("x", "y", "z", "s", "t")}


def _apply(theta, w):
    return tuple(letter for x in w for letter in theta[x])


@given(substitutions(), words, words)
def test_basis_instances_stay_valid(theta, prefix, suffix):
    """Varieties are closed under substitution and multiplication on both sides"""
    V = parse_variety("q1 v r3")
    for lhs, rhs in fixed_basis(FamilyName.QR3_BASIS):
        instance = Identity(
            prefix + _apply(theta, lhs) + suffix,
            prefix + _apply(theta, rhs) + suffix,
        )
        assert V.holds(instance)


ATOM_NAMES = (
    "q1", "l2", "r2", "b1", "e1", "e1bar", "r3", "l3", "e3", "e3bar", "q1vb1", "r3stab", "l3stab",
)
X_IMAGES = (("x", "x"), ("x", "t", "x"), ("t",), ())
short_words = st.lists(st.sampled_from(["x", "y"]), min_size=1, max_size=4).map(tuple)


def _candidates(ws):
    found = set()
    for w in ws:
        found |= {w, w + w, w[:1] + w, w + w[-1:]}
    return sorted(found)


@pytest.mark.parametrize("name", ATOM_NAMES)
@settings(max_examples=40, deadline=None)
@given(st.lists(short_words, min_size=1, max_size=4))
def test_atoms_are_closed_under_multiplication_and_substitution(name, ws):
    V = parse_variety(name)
    for u, v in combinations(_candidates(ws), 2):
        if not V.holds(Identity(u, v)):
            continue
        for a in ("x", "y", "t"):
            assert V.holds(Identity((a,) + u, (a,) + v)), (name, u, v, a)
            assert V.holds(Identity(u + (a,), v + (a,))), (name, u, v, a)
        for image in X_IMAGES:
            theta = {"x": image, "y": ("y",)}
            assert V.holds(Identity(_apply(theta, u), _apply(theta, v))), (name, u, v, image)


@given(words)
def test_idempotent_rewriting_stays_in_the_band_class(w):
    prob = RewriteProblem(basis=(Identity(("x",), ("x", "x")),), max_word_len=8, max_sub_image_len=2)
    for v in one_step(w, prob):
        assert B1.holds(Identity(w, v))


@given(identities)
def test_join_holds_iff_every_member_holds(identity):
    V = join(Q1, R3)
    assert V.holds(identity) == (Q1.holds(identity) and R3.holds(identity))
