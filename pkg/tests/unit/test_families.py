"""
Unit tests for families: band words, identity families, fixed bases and the band lattice
"""

import pytest

from errors import ArgumentError
from families import (
    FamilyName,
    band_join_identity,
    band_lattice,
    fixed_basis,
    is_z_word,
    j_schema,
    phi,
    phi_family,
    phibar,
    rn,
    rn_bar,
    same_pair,
    schema_instance,
    sigma_n,
    sn,
    un_vn,
    v_chain_identity,
    z_xy_enumerate,
)
from variety_oracles import E1, E1BAR, L2, L3, R2, R3, parse_variety
from word_core import format_identity, format_word, parse_identity, parse_word


def test_band_words():
    assert rn(2) == ("x2", "x1")
    assert rn(4) == parse_word("x1 x2 x3 x4")
    assert rn(5) == parse_word("x5 x1 x2 x3 x4")
    assert sn(2) == parse_word("x1 x2 x1")
    assert format_word(sn(3)) == "x1 x2 x3 x1 x3 x2 x3"
    assert rn_bar(3) == parse_word("x3 x2 x1")


def test_band_words_need_n_at_least_two():
    with pytest.raises(ArgumentError):
        rn(1)
    with pytest.raises(ArgumentError):
        sn(0)


def test_level_two_band_identity_is_right_regular():
    identity = parse_identity("x2 x1 ~ x1 x2 x1")
    assert (rn(2), sn(2)) == identity
    assert R2.holds(identity)
    assert not L2.holds(identity)


def test_band_join_identities():
    assert L2.holds(band_join_identity(2))
    assert R2.holds(band_join_identity(2))
    assert R3.holds(band_join_identity(3))
    assert L3.holds(band_join_identity(3))


def test_un_vn():
    assert format_identity(un_vn(2)) == "x y1^2 y2^2 x ~ x y1^2 x y2^2 x"
    assert format_identity(un_vn(1)) == "x y1^2 x ~ x y1^2 x"
    with pytest.raises(ArgumentError):
        un_vn(0)


def test_un_vn_holds_in_e1_and_e1bar():
    for n in range(1, 5):
        assert E1.holds(un_vn(n))
        assert E1BAR.holds(un_vn(n))


def test_sigma_n():
    assert sigma_n(1) == parse_identity("x t1 x^2 y^2 ~ x t1 y^2 x^2")
    assert sigma_n(2) == parse_identity("x t1 y t2 x^2 y^2 ~ x t1 y t2 y^2 x^2")


def test_z_words():
    assert z_xy_enumerate(4) == [
        parse_word("x s1 y s2 x s3 y"),
        parse_word("y s1 x s2 y s3 x"),
    ]
    assert len(z_xy_enumerate(5)) == 4
    assert all(is_z_word(c) for c in z_xy_enumerate(6))
    assert not is_z_word(parse_word("x s1 y s2 x"))
    assert not is_z_word(parse_word("x s1 x s2 y s3 y"))


def test_phi_family_members_hold_in_e1bar_only():
    for c in z_xy_enumerate(5):
        identity = phi_family(c)
        assert E1BAR.holds(identity)
        assert not E1.holds(identity)


def test_phi_family_rejects_other_words():
    with pytest.raises(ArgumentError):
        phi_family(parse_word("x t y s x y"))
    with pytest.raises(ArgumentError):
        phi_family(parse_word("xyxy"))


def test_small_phi_identities():
    assert not E1.holds(phi())
    assert E1BAR.holds(phi())
    assert E1.holds(phibar())
    assert not E1BAR.holds(phibar())


def test_v_chain():
    assert v_chain_identity(None) == parse_identity("xytyx ~ xyxtyx")
    assert v_chain_identity(0) == parse_identity("xy t1 x t2 y ~ xyx t1 x t2 y")


def test_j_schema_permutes_the_z_letters():
    assert j_schema(2, [2, 1]) == parse_identity("x z2 z1 x t1 z1 t2 z2 ~ x^2 z2 z1 t1 z1 t2 z2")
    with pytest.raises(ArgumentError):
        j_schema(2, [1, 1])


def test_fixed_basis_starts_with_the_aperiodic_chain():
    basis = fixed_basis(FamilyName.EE_BASIS)
    assert basis[:2] == [parse_identity("xtx ~ xtxx"), parse_identity("xtxx ~ xxtx")]
    assert len(basis) == 4
    with pytest.raises(ArgumentError):
        fixed_basis(FamilyName.RN)


def test_fixed_bases_hold_in_their_varieties():
    for name, variety in (
        (FamilyName.QR3_BASIS, "q1 v r3"),
        (FamilyName.QLR2_BASIS, "q1 v l2 v r2"),
        (FamilyName.QR2_BASIS, "q1 v r2"),
        (FamilyName.EER3_BASIS, "e1 v e1bar v r3"),
    ):
        V = parse_variety(variety)
        for identity in fixed_basis(name):
            assert V.holds(identity), f"{name.value}: {format_identity(identity)}"


def test_schema_instances():
    assert schema_instance(FamilyName.UN_VN, 3).identities == (un_vn(3),)
    assert len(schema_instance(FamilyName.PHI, 5).identities) == 4
    assert schema_instance(FamilyName.RN, 2).identities == ((rn(2), sn(2)),)
    with pytest.raises(ArgumentError):
        schema_instance(FamilyName.SIGMA_N)


def test_j2_schema_flags_the_degenerate_identity():
    instance = schema_instance(FamilyName.J2_SCHEMA, 1)
    assert instance.flags
    assert instance.identities[1].is_trivial
    assert len(instance.identities) == 3


def test_band_lattice():
    lattice = band_lattice(2)
    names = [node.name for node in lattice.nodes]
    assert names == ["T", "M({1})", "R2", "L2", "L2 v R2", "B1"]
    assert ("L2 v R2", "B1") in lattice.covers
    assert len(lattice.covers) == 6
    with pytest.raises(ArgumentError):
        band_lattice(1)


def test_same_pairs():
    left, right = same_pair("ii")
    assert left == [parse_identity("xytyx ~ xyxtxyx")]
    assert len(right) == 2
    with pytest.raises(ArgumentError):
        same_pair("iii")
