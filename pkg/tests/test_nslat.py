"""Lattice toolkit: generic NS Gram, heights, admissibility, U^2 complements."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hgmk3.nslat import (
    LatticeError,
    SectionProfile,
    curve_graph_gram,
    delta_enumeration,
    delta_of,
    direct_sum,
    fiber_class_vector,
    height,
    ns_cm_gram,
    ns_gram_generic,
    p_T_relation,
    rescale,
    standard_lattice,
    table3_blocks,
    u2_complement,
    verify_table5,
)


def test_standard_lattices():
    assert standard_lattice("U").det() == -1
    e8 = standard_lattice("E8(-1)")
    assert e8.det() == 1
    assert e8.signature() == (0, 8)
    assert e8.is_even()
    assert standard_lattice("<-4>").entries == ((-4,),)
    assert standard_lattice("A1").entries == ((-2,),)
    with pytest.raises(LatticeError):
        standard_lattice("E7")


def test_direct_sum_and_rescale():
    lat = direct_sum(
        standard_lattice("E8(-1)"), standard_lattice("E8(-1)"),
        standard_lattice("U"), standard_lattice("<-4>"),
    )
    assert lat.det() == 4
    assert lat.signature() == (1, 18)
    assert rescale(standard_lattice("U"), 2).entries == ((0, 2), (2, 0))


def test_curve_graph_shape():
    m, idx = curve_graph_gram()
    assert len(m) == 22
    assert m[idx["O"]][idx["T"]] == 0  # characteristic-zero fact, encoded
    assert m[idx["O"]][idx["f7"]] == 1
    assert m[idx["T"]][idx["g3"]] == 1
    assert m[idx["g0"]][idx["g1"]] == m[idx["g1"]][idx["g3"]] == 1
    assert m[idx["g3"]][idx["g2"]] == m[idx["g2"]][idx["g0"]] == 1
    assert m[idx["g0"]][idx["g3"]] == 0  # opposite components of the 4-cycle


def test_fiber_class():
    m, idx = curve_graph_gram()
    F_vec = fiber_class_vector()
    sq = sum(F_vec[a] * m[a][b] * F_vec[b] for a in range(22) for b in range(22))
    assert sq == 0
    o = [0] * 22
    o[idx["O"]] = 1
    assert sum(F_vec[a] * m[a][b] * o[b] for a in range(22) for b in range(22)) == 1


def test_ns_gram_generic():
    lat = ns_gram_generic()
    assert lat.rank == 19
    assert abs(lat.det()) == 4
    assert lat.det() == 4
    assert lat.signature() == (1, 18)
    # L1 block: O, f1..f7 span an even negative-definite unimodular lattice
    l1 = lat.block(range(0, 8))
    assert l1.det() == 1 and l1.is_even() and l1.signature() == (0, 8)
    l2 = lat.block(range(8, 16))
    assert l2.det() == 1 and l2.is_even() and l2.signature() == (0, 8)
    u1 = lat.block(range(16, 18))
    assert u1.entries == ((0, 1), (1, -2))
    assert u1.det() == -1
    # unimodular change y -> y + x turns U1 into the standard U
    a, b = (0, 1), (1, -2)
    changed = ((0, 0 + 1), (1 + 0, -2 + 2 * 1))
    assert changed == ((0, 1), (1, 0))
    assert lat.entries[18][18] == -4


def test_height_examples():
    assert height(SectionProfile(p_O=0)) == 4  # meets gamma0, nothing else
    assert height(SectionProfile(p_O=0, p_g3=1)) == 3
    assert height(SectionProfile(p_O=0, p_e7=1, p_g2=1)) == F(7, 4)


def test_p_T_relation_examples():
    assert p_T_relation(SectionProfile()) == 2
    assert p_T_relation(SectionProfile(p_e7=1, p_g2=1)) == 0
    assert p_T_relation(SectionProfile(p_e7=1)) == F(1, 2)  # non-integer: inadmissible


def test_profile_invariants():
    with pytest.raises(LatticeError):
        SectionProfile(p_g2=1, p_g3=1)
    with pytest.raises(LatticeError):
        SectionProfile(p_f7=0)
    with pytest.raises(LatticeError):
        SectionProfile(p_O=-1)


def test_delta_enumeration():
    assert delta_enumeration() == {(0, 0, 0), (0, 0, 1), (1, 1, 0)}
    assert delta_of(SectionProfile(p_O=1)) == 3  # 2 + p_O
    assert delta_of(SectionProfile(p_O=0, p_g2=1)).denominator == 4  # 11/4
    assert delta_of(SectionProfile(p_e7=1, p_g2=1, p_O=0)) == 1


def test_ns_cm_gram_classes():
    lat = ns_cm_gram(SectionProfile(p_O=0))
    assert tuple(tuple(r) for r in lat.entries[18:]) == tuple(
        tuple([0] * 18 + list(r)) for r in ((-4, 0), (0, -4))
    )
    lat = ns_cm_gram(SectionProfile(p_O=0, p_g3=1))
    assert lat.entries[18][18:] == (-4, 2)
    assert lat.entries[19][18:] == (2, -4)
    lat = ns_cm_gram(SectionProfile(p_O=1, p_e7=1, p_g2=1))
    assert lat.entries[19][19] == -2 - 2 * 1
    assert lat.signature() == (1, 19)
    with pytest.raises(LatticeError):
        ns_cm_gram(SectionProfile(p_e7=1))  # inadmissible triple


@given(
    p_O=st.integers(min_value=0, max_value=8),
    triple=st.sampled_from([(0, 0, 0), (0, 0, 1), (1, 1, 0)]),
)
@settings(max_examples=30, deadline=None)
def test_det_equals_four_height_symbolically(p_O, triple):
    p_e7, p_g2, p_g3 = triple
    prof = SectionProfile(p_O=p_O, p_e7=p_e7, p_g2=p_g2, p_g3=p_g3)
    lat = ns_cm_gram(prof)
    assert lat.det() == -4 * height(prof)
    block = lat.block((18, 19))
    b = block.entries[0][1]
    assert block.det() == (-4) * (-2 * delta_of(prof)) - b * b == 4 * height(prof)


def test_u2_complement_examples():
    assert u2_complement(-2, 0, -2).entries == ((4, 0), (0, 4))
    assert u2_complement(0, 1, 0).entries == ((0, 1), (1, 0))
    assert u2_complement(-2, 1, -1).entries == ((4, 1), (1, 2))  # P.O = 0 row


@given(
    a=st.integers(min_value=-9, max_value=9),
    b=st.integers(min_value=-9, max_value=9),
    c=st.integers(min_value=-9, max_value=9),
)
@settings(max_examples=60, deadline=None)
def test_u2_complement_duality(a, b, c):
    first = u2_complement(a, b, c)
    assert first.entries == ((-2 * a, b), (b, -2 * c))
    second = u2_complement(-a, b, -c)
    assert second.entries == ((2 * a, b), (b, 2 * c))


def test_table3_blocks_against_complements():
    # transcendental mates of the table classes, via the U^2 complement
    for cls, (a, b, c) in {
        "L0": (-2, 0, -2), "L1": (-2, 1, -1), "L2": (-2, 2, -2),
    }.items():
        ns, tr = table3_blocks(cls, 0)
        assert u2_complement(a, b, c).entries == tr.entries
        assert ns.entries == ((2 * a, b), (b, 2 * c))


def test_table3_transcendental_with_section_offset():
    _, tr = table3_blocks("L0", 1)
    assert u2_complement(-2, 0, -3).entries == tr.entries


def test_verify_table5_all_rows():
    rows = verify_table5()
    assert len(rows) == 15
    for row in rows:
        assert row.passed, (row.t, row.reason)
    by_t = {row.t: row for row in rows}
    assert by_t[F(9)].class_name == "L0" and by_t[F(9)].p_O == 1
    assert by_t[F(1)].class_name == "L4"
    assert by_t[F(-777924)].class_name == "L2" and by_t[F(-777924)].p_O == 17


def test_signature_conventions():
    # NS lattices (1, rank-1); transcendental complements (2, rank-2)
    for cls in ("L0", "L1", "L2", "L4"):
        ns, tr = table3_blocks(cls, 0)
        full_ns = direct_sum(
            standard_lattice("E8(-1)"), standard_lattice("E8(-1)"),
            standard_lattice("U"), ns,
        )
        assert full_ns.signature() == (1, 19)
        assert tr.signature() == (2, 0)
    generic_tr = direct_sum(standard_lattice("U"), standard_lattice("<4>"))
    assert generic_tr.signature() == (2, 1)
