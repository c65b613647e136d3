"""Fiber presentations, localized Hilbert-Kunz rows, the colength identity,
rigidity, the equimultiplicity necessary condition, and the quartic-family
drivers."""

from fractions import Fraction

import pytest

from frobinv.coeff import ExtensionField, FieldElement, PrimeField
from frobinv.equimult import (
    WARRANTY,
    EquimultError,
    bm_gap_table,
    bm_maximal_ideal,
    brenner_monsky_ring,
    colength_identity_check,
    equimult_check,
    fiber_presentation,
    filtration_check,
    localized_hk,
    localized_hk_report,
    monsky_repro,
    quartic_ring,
    rigidity_check,
    specialization_consistency,
    wy_inequality_check,
)
from frobinv.frobenius import frobenius_power
from frobinv.polyring import Ideal, ring_make

F2 = PrimeField(2)
F4 = ExtensionField(2, (1, 1, 1))


def ideal(ring, *gens):
    return Ideal(ring, [ring.parse(g) for g in gens])


def quadric_cone():
    return ring_make(F2, ("x", "y", "z"), relations=["x^2 + z*y"])


# -- fiber presentations --------------------------------------------------------


def test_fiber_presentation_shape():
    R = quadric_cone()
    fp = fiber_presentation(ideal(R, "x", "y"))
    assert fp.t_name == "z"
    assert fp.fiber_ring.varnames == ("x", "y")
    assert fp.fiber_ring.dim == 1


def test_fiber_presentation_rejects_fat_lead():
    R = ring_make(F2, ("x", "y"))
    with pytest.raises(EquimultError):
        fiber_presentation(ideal(R, "x*y"))


def test_fiber_presentation_rejects_two_survivors():
    R = ring_make(F2, ("x", "y", "z"))
    with pytest.raises(EquimultError):
        fiber_presentation(ideal(R, "x"))


def test_fiber_presentation_checks_designated_name():
    R = quadric_cone()
    with pytest.raises(EquimultError):
        fiber_presentation(ideal(R, "x", "y"), t_name="y")


# -- localized rows --------------------------------------------------------------


def test_localized_hk_quadric_cone():
    # R_p is regular: the fiber colength is exactly q
    P = ideal(quadric_cone(), "x", "y")
    assert [localized_hk(P, e) for e in (1, 2, 3)] == [2, 4, 8]
    rep = localized_hk_report(P, 3)
    assert all(r[3] == 1 for r in rep.rows)
    assert rep.estimate == 1


def test_localized_hk_quartic_family():
    R = brenner_monsky_ring()
    P = ideal(R, "x", "y", "z")
    assert localized_hk(P, 2) == 44
    assert localized_hk(P, 3) == 188


# -- colength identity and rigidity ------------------------------------------------


def test_colength_identity_regular():
    R = ring_make(F2, ("x", "y"))
    rep = colength_identity_check(ideal(R, "x"), "y", 3)
    assert rep.hs_factor == 1
    assert rep.all_zero


def test_colength_identity_quadric_cone_residuals():
    # the surrogate identity fails with residual q: l = 2q against q
    P = ideal(quadric_cone(), "x", "y")
    rep = colength_identity_check(P, "z", 3)
    assert [(lhs, rhs, res) for _, _, lhs, rhs, res in rep.rows] == \
        [(4, 2, 2), (8, 4, 4), (16, 8, 8)]
    assert not rep.all_zero


def test_rigidity_regular_passes():
    R = ring_make(F2, ("x", "y"))
    rep = rigidity_check(ideal(R, "x"), 3)
    assert rep.all_pass
    assert all(lhs == rhs for _, _, lhs, rhs, _ in rep.rows)


def test_rigidity_quadric_cone_fails_every_row():
    rep = rigidity_check(ideal(quadric_cone(), "x", "y"), 3)
    assert [(lhs, rhs) for _, _, lhs, rhs, _ in rep.rows] == \
        [(6, 4), (24, 16), (96, 64)]
    assert not rep.all_pass


# -- the necessary condition --------------------------------------------------------


def test_equimult_regular_consistent():
    R = ring_make(F2, ("x", "y"))
    v = equimult_check(ideal(R, "x"), c="1", e_max=2)
    assert v.status == "consistent"
    assert v.witness is None
    assert v.residuals.all_zero
    assert v.warranty == WARRANTY


def test_equimult_quadric_cone_violates():
    P = ideal(quadric_cone(), "x", "y")
    v = equimult_check(P, c="y^2", e_max=2, tc_e_max=2)
    assert v.status == "violates-necessary-condition"
    e, z = v.witness
    assert e == 1
    assert str(z) == "y"
    assert not v.residuals.all_zero


def test_equimult_without_multiplier_is_inconclusive():
    P = ideal(quadric_cone(), "x", "y")
    v = equimult_check(P, c=None, e_max=2, tc_e_max=2)
    assert v.status == "inconclusive"
    assert v.witness is None


def test_equimult_rejects_wrong_dimension():
    R = ring_make(F2, ("x", "y", "z"))
    with pytest.raises(EquimultError):
        equimult_check(ideal(R, "x"))


# -- filtration hypotheses -----------------------------------------------------------


def test_filtration_bracket_chain_passes():
    R = ring_make(F2, ("x", "y"))
    m = R.origin_ideal()
    seq = [frobenius_power(m, 1), frobenius_power(m, 2)]
    rep = filtration_check(m, seq, c="1")
    assert rep.hypotheses_ok
    assert rep.trends_match
    assert all(gap == 0 for _, _, _, _, gap in rep.rows)
    assert all(v.status == "definitive-member" for _, _, v in rep.spot_checks)


def test_filtration_reports_containment_failure():
    R = ring_make(F2, ("x", "y"))
    m = R.origin_ideal()
    seq = [ideal(R, "x^4", "y^4"), ideal(R, "x^2", "y^2")]
    rep = filtration_check(m, seq)
    assert not rep.hypotheses_ok
    assert rep.failures == ["I^[p^1] is not inside L_1"]


# -- quartic family ------------------------------------------------------------------


def test_quartic_ring_specializations():
    one = FieldElement(F4, F4.from_int(1))
    R = quartic_ring(one)
    assert str(R.relations[0]) == "x^2*y^2+x^3*z+y^3*z+x*y*z^2+z^4"


def test_monsky_repro_zero_hits_target_exactly():
    # rows sit exactly on 7/2 - 3/q, so the affine fit nails the limit
    rep = monsky_repro("zero", 3)
    assert rep.report.estimate == Fraction(7, 2)
    assert rep.within == 0


def test_monsky_repro_algebraic_shallow_rows():
    rep = monsky_repro("algebraic", 3)
    assert rep.target == Fraction(49, 16)
    assert [r[2] for r in rep.report.rows] == [8, 44, 196]
    assert rep.report.estimate == Fraction(55, 16)
    assert rep.within == Fraction(3, 8)


def test_monsky_repro_degree_three_modulus_target():
    rep = monsky_repro("algebraic", 2, lam_modulus=(1, 1, 0, 1))
    assert rep.target == Fraction(193, 64)
    assert [r[2] for r in rep.report.rows] == [8, 44]


def test_monsky_repro_rejects_bad_modulus():
    from frobinv.coeff import FieldError
    with pytest.raises(FieldError):
        monsky_repro("algebraic", 2, lam_modulus=(1, 0, 1))  # (x+1)^2


def test_monsky_repro_rejects_unknown_spec():
    with pytest.raises(EquimultError):
        monsky_repro("imaginary", 2)


def test_brenner_monsky_ring_needs_char_two():
    with pytest.raises(EquimultError):
        brenner_monsky_ring(field=PrimeField(3))


def test_bm_maximal_ideal_gens():
    R = brenner_monsky_ring()
    m1 = bm_maximal_ideal(R, 1)
    assert [str(g) for g in m1.gens] == ["x", "y", "z", "t+1"]


def test_bm_gap_table_alpha_zero():
    rep = bm_gap_table([0], e_min=2, e_max=3)
    assert [(e, q, ell) for e, q, ell, _ in rep.fiber_rows] == \
        [(2, 4, 44), (3, 8, 188)]
    rows = rep.alpha_rows["t"]
    assert [(e, ell, gap) for e, _, ell, _, gap in rows] == \
        [(2, 176, 0), (3, 1528, Fraction(3, 64))]
    assert rep.min_gap == 0  # the e = 2 row never separates


def test_specialization_consistency_all_points():
    gen = FieldElement(F4, F4._fix((0, 1)))
    expected = {
        "0": [8, 44, 212],
        "1": [8, 44, 196],
        "a": [8, 44, 188],
    }
    for alpha, lengths in [(0, expected["0"]), (1, expected["1"]),
                           (gen, expected["a"])]:
        rep = specialization_consistency(alpha, 3)
        assert rep.relation_match
        assert rep.all_equal
        assert [a for _, _, a, _, _ in rep.rows] == lengths


# -- Kunz-type comparison --------------------------------------------------------------


def test_wy_inequality_monomial_rows():
    R = ring_make(F2, ("x", "y"))
    rep = wy_inequality_check(ideal(R, "x^2", "y^2"), 3)
    assert rep.all_pass
    assert [(lhs, rhs) for _, _, lhs, rhs, _ in rep.rows] == \
        [(16, 16), (64, 64), (256, 256)]
    assert rep.derived == (4, 4, True)


def test_wy_inequality_needs_bracket_containment():
    R = ring_make(F2, ("x", "y"))
    with pytest.raises(EquimultError):
        wy_inequality_check(ideal(R, "x^2", "x*y", "y^2"), 2)
