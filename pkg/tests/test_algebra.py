import itertools
from fractions import Fraction

import pytest

from svir.algebra import (BasisElt, CENTRAL, DegenerateFactorError,
                          HomogeneityError, Kind)
from svir.lattice import ParityError

HALF = Fraction(1, 2)


def test_bracket_of_two_even_generators(cfg, sv):
    d1, d2 = cfg.var("d1"), cfg.var("d2")
    out = sv.bracket_basis(sv.L((1, 0)), sv.L((0, 1)))
    assert out.terms == {sv.L((1, 1)): d2 - d1}


def test_bracket_even_central_term(cfg, sv):
    d1 = cfg.var("d1")
    out = sv.bracket_basis(sv.L((1, 0)), sv.L((-1, 0)))
    assert out.terms == {
        sv.L((0, 0)): -2 * d1,
        CENTRAL: -(d1 ** 3 - d1) * Fraction(1, 12),
    }


def test_bracket_odd_central_term(cfg, sv):
    d1 = cfg.var("d1")
    out = sv.bracket_basis(sv.G((HALF, 0)), sv.G((-HALF, 0)))
    assert out.terms == {
        sv.L((0, 0)): cfg.scalar(2),
        CENTRAL: -((d1 / 2) ** 2 - Fraction(1, 4)) * Fraction(1, 3),
    }


def test_bracket_odd_even_by_graded_antisymmetry(cfg, sv):
    # the (eta - mu/2) coefficient vanishes for eta = sigma, mu = d1
    assert sv.bracket(sv.G((HALF, 0)), sv.L((1, 0))).is_zero()
    lg = sv.bracket_basis(sv.L((1, 1)), sv.G((HALF, 0)))
    gl = sv.bracket_basis(sv.G((HALF, 0)), sv.L((1, 1)))
    assert gl == -lg and not lg.is_zero()


def test_even_self_bracket_vanishes_odd_does_not(cfg, sv):
    assert sv.bracket(sv.L((1, 0)), sv.L((1, 0))).is_zero()
    out = sv.bracket(sv.G((HALF, 1)), sv.G((HALF, 1)))
    assert out.terms == {sv.L((1, 2)): cfg.scalar(2)}


def test_central_element_is_central(sv, cfg):
    for other in [sv.L((1, -2)), sv.G((-HALF, 1)), CENTRAL]:
        assert sv.bracket(CENTRAL, other).is_zero()
        assert sv.bracket(other, CENTRAL).is_zero()


def test_jacobi_residual_zero_triples(cfg, sv):
    assert sv.super_jacobi_residual(
        sv.L((1, 0)), sv.L((0, 1)), sv.L((1, 1))).is_zero()
    # odd-odd central term activates but cancels against [L, c] = 0
    assert sv.super_jacobi_residual(
        sv.L((1, 0)), sv.G((HALF, 0)), sv.G((-HALF, 0))).is_zero()
    assert sv.super_jacobi_residual(CENTRAL, sv.L((2, -1)), sv.G((HALF, 1))).is_zero()


def test_jacobi_residual_detects_central_sign_mismatch(cfg, sv):
    """The two central coefficients in the defining table are mutually
    inconsistent: on (L_mu, G_eta, G_lam) with mu + eta + lam = 0 the
    graded Leibniz residual is exactly -(1/3)(mu^3 - mu) c.  Consistency
    would require the odd central coefficient to carry the opposite sign
    (a factor of -4 between the two cocycle normalizations); the engine
    implements the table as defined and reports the residual.
    """
    d1 = cfg.var("d1")
    res = sv.super_jacobi_residual(
        sv.L((1, 0)), sv.G((HALF, 0)), sv.G((Fraction(-3, 2), 0)))
    assert res.terms == {CENTRAL: -(d1 ** 3 - d1) * Fraction(1, 3)}
    # with mu = 0 the residual degenerates to zero
    assert sv.super_jacobi_residual(
        sv.L((0, 0)), sv.G((HALF, 0)), sv.G((-HALF, 0))).is_zero()


def test_jacobi_residual_zero_except_on_characterized_triples(cfg, sv):
    """Exhaustive radius-1 sweep: the residual vanishes exactly outside the
    one-L-two-G triples whose indices sum to zero with a nonzero L index."""
    elems = [BasisElt(Kind.L, v) for v in cfg.even_box(1)] + \
        [BasisElt(Kind.G, v) for v in cfg.odd_box(1)] + [CENTRAL]
    for x, y, z in itertools.product(elems, repeat=3):
        res = sv.super_jacobi_residual(x, y, z)
        kinds = sorted(e.kind.value for e in (x, y, z))
        indexed = [e.index for e in (x, y, z) if e.index is not None]
        if kinds == ["G", "G", "L"] and len(indexed) == 3:
            total = indexed[0] + indexed[1] + indexed[2]
            l_index = next(e.index for e in (x, y, z) if e.kind is Kind.L)
            expect_fail = total.is_zero() and not l_index.is_zero()
        else:
            expect_fail = False
        assert res.is_zero() == (not expect_fail), (x, y, z)


def test_jacobi_requires_homogeneous_inputs(cfg, sv):
    mixed = sv.element(sv.L((1, 0))) + sv.element(sv.G((HALF, 0)))
    with pytest.raises(HomogeneityError):
        sv.super_jacobi_residual(mixed, sv.L((0, 1)), sv.L((1, 1)))


def test_graded_antisymmetry_and_weight_additivity_box(cfg, sv):
    elems = [BasisElt(Kind.L, v) for v in cfg.even_box(1)] + \
        [BasisElt(Kind.G, v) for v in cfg.odd_box(1)] + [CENTRAL]
    for x, y in itertools.product(elems, repeat=2):
        lhs = sv.bracket_basis(x, y)
        rhs = sv.bracket_basis(y, x)
        if x.parity and y.parity:
            assert lhs == rhs
        else:
            assert lhs == -rhs
        if x.index is not None and y.index is not None:
            total = x.index + y.index
            for term in lhs.terms:
                idx = term.index if term.index is not None else cfg.zero_index
                assert idx.coords == total.coords


def test_ad_power_examples(cfg, sv):
    d1, d2 = cfg.var("d1"), cfg.var("d2")
    d = cfg.even((0, 1))
    mu = cfg.even((1, 0))
    l_mu = sv.element(sv.L((1, 0)))
    assert sv.ad_power(sv.L(d.coords), 0, l_mu) == l_mu
    once = sv.ad_power(sv.L(d.coords), 1, l_mu)
    assert once.terms == {sv.L((1, 1)): d1 - d2}
    twice = sv.ad_power(sv.L(d.coords), 2, l_mu)
    assert twice.terms == {sv.L((1, 2)): (d1 - d2) * d1}


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_ladder_identities(cfg, sv, m):
    assert sv.ladder_identity_check(cfg.even((0, 1)), cfg.even((1, 0)), m)


def test_ladder_identity_other_steps(cfg, sv):
    assert sv.ladder_identity_check(cfg.even((1, 1)), cfg.even((1, 0)), 2)
    assert sv.ladder_identity_check(cfg.even((0, 1)), cfg.even((2, -1)), 3)


def test_ladder_degenerate_factor(cfg, sv):
    # mu = 0 makes the i = 0 factor vanish once m >= 2
    with pytest.raises(DegenerateFactorError):
        sv.ladder_identity_check(cfg.even((0, 1)), cfg.even((0, 0)), 2)


def test_ladder_validates_parities(cfg, sv):
    with pytest.raises(ParityError):
        sv.ladder_identity_check(cfg.odd((HALF, 0)), cfg.even((1, 0)), 1)


def test_bracket_witness_single_step(cfg, sv):
    d1 = cfg.var("d1")
    report = sv.bracket_generation_witness(cfg.even((1, 2)))
    assert report.ok
    first = report.entries[0]
    assert first.copies == 1
    assert first.start.coords == (2, 2)
    assert first.product == d1
    # the one-step bracket itself: [L_mu, L_{mu+d1}] = d1 L_(3,4)
    step = sv.bracket(sv.L((1, 2)), sv.L((2, 2)))
    assert step.terms == {sv.L((3, 4)): d1}


def test_bracket_witness_empty_product(cfg, sv):
    report = sv.bracket_generation_witness(cfg.even((1, 1)))
    assert report.ok
    assert report.entries[0].copies == 0
    assert report.entries[0].product == cfg.ctx.one


def test_bracket_witness_some_zero_membership(cfg, sv):
    report = sv.bracket_generation_witness(cfg.even((0, 2)))
    assert report.ok
    assert report.adapted.case == "some_zero"
    assert report.entries[0].step.coords == (1, 0)
    assert all(e.step_in_neighborhood for e in report.entries)


def test_bracket_witness_box(cfg, sv):
    for coords in itertools.product(range(-2, 4), repeat=2):
        report = sv.bracket_generation_witness(cfg.even(coords))
        assert report.ok, coords


def test_bracket_witness_with_sign_flips(cfg, sv):
    d1 = cfg.var("d1")
    report = sv.bracket_generation_witness(cfg.even((-1, 2)))
    assert report.ok
    assert report.adapted.sign_flips == (-1, 1)
    first = report.entries[0]
    assert first.start.coords == (-2, 2)
    assert first.product == -d1


def test_bracket_witness_rank3():
    from svir.lattice import AlgebraConfig
    from svir.algebra import SuperVirasoro
    cfg3 = AlgebraConfig(3, ("d1", "d2", "d3"), (0, 0, 0))
    sv3 = SuperVirasoro(cfg3)
    report = sv3.bracket_generation_witness(cfg3.even((1, 2, 3)))
    assert report.ok
    third = report.entries[2]
    assert third.start.coords == (2, 2, 4)
    assert third.copies == 1
    assert third.product == cfg3.var("d1") + cfg3.var("d3")
    for coords in itertools.product(range(-2, 3), repeat=3):
        assert sv3.bracket_generation_witness(cfg3.even(coords)).ok, coords


def test_parity_weight(cfg, sv):
    d1 = cfg.var("d1")
    assert sv.parity_weight(sv.L((1, 0))) == ("even", d1)
    assert sv.parity_weight(sv.G((HALF, 0))) == ("odd", d1 / 2)
    assert sv.parity_weight(CENTRAL) == ("even", cfg.ctx.zero)
    mixed = sv.element(sv.L((1, 0))) + sv.element(sv.G((HALF, 0)))
    parity, weight = sv.parity_weight(mixed)
    assert parity == "mixed" and weight is None


def test_basis_elt_validation(cfg):
    with pytest.raises(ParityError):
        BasisElt(Kind.L, cfg.odd((HALF, 0)))
    with pytest.raises(ParityError):
        BasisElt(Kind.G, cfg.even((1, 0)))
    with pytest.raises(ValueError):
        BasisElt(Kind.C, cfg.even((0, 0)))
