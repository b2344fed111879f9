"""Det-power calculus: factorization identities, operator reconstruction,
sign bookkeeping, and the graded cross-check route."""

from fractions import Fraction

import pytest

from covjord import detpower as D
from covjord import jordan as J
from covjord.fischer import apply_diffop
from covjord.polynomials import MPoly, double_vars
from covjord.scalars import ParamPoly, S, T

from conftest import random_poly


def test_single_slot_rank_one():
    # V = R: d/dx applied to x^s gives s x^(s-1)
    s1 = J.sym_algebra(1)
    res = D.det_wave_apply(D.single_power(s1))
    assert res.shift_x == -1
    assert res.body == MPoly.constant(s1.vars, 1).scale(S)


@pytest.mark.parametrize("spec,expected", [
    ("sym:2", S * (S + Fraction(1, 2))),
    ("sym:3", S * (S + Fraction(1, 2)) * (S + 1)),
    ("mat:2", S * (S + 1)),
    ("hermc:2", S * (S + 1)),
])
def test_bernstein_reference(spec, expected):
    res = D.bernstein_poly(J.algebra_from_spec(spec))
    assert res.b == expected
    assert res.matches
    assert res.note is None


@pytest.mark.parametrize("pq", [(2, 1), (2, 2), (3, 2)])
def test_bernstein_rpq(pq):
    alg = J.rpq_algebra(*pq)
    res = D.bernstein_poly(alg)
    n = alg.n
    assert res.b == S * (S + Fraction(n - 2, 2)) * 4
    assert res.matches
    assert res.note  # quadratic-space chart convention differs by a factor 4


def test_eps_flip_on_split_algebras(rng):
    for spec in ("sym:2", "mat:2", "rpq:2,1"):
        alg = J.algebra_from_spec(spec)
        found = 0
        for _ in range(300):
            x = J.random_element(alg, rng)
            if J.det(x) < 0:
                found += 1
                for k in (1, 2, 3):
                    assert D.eps_flip_check(alg, x.coords, k), (spec, k)
                if found >= 5:
                    break
        assert found


def test_power_eps():
    assert D.power_eps(Fraction(4), 3, "+") == 64
    assert D.power_eps(Fraction(-4), 3, "+") == 64
    assert D.power_eps(Fraction(-4), 3, "-") == -64
    with pytest.raises(ZeroDivisionError):
        D.power_eps(Fraction(0), 1, "+")


@pytest.mark.parametrize("spec", ["sym:2", "mat:2", "rpq:2,1", "rpq:2,2"])
def test_extraction_divisibility_and_degree(spec, rng):
    alg = J.algebra_from_spec(spec)
    dvars = double_vars(alg.vars)
    for _ in range(10):
        f = random_poly(dvars, rng, 3)
        action = D.extract_Dst(alg, f)
        for coeff in action.terms.values():
            assert coeff.total_degree() <= alg.r


def test_extraction_sym3_few_samples(rng):
    alg = J.sym_algebra(3)
    dvars = double_vars(alg.vars)
    for _ in range(3):
        f = random_poly(dvars, rng, 2, terms=3)
        D.extract_Dst(alg, f)  # exact division must go through


def test_rpq_constant_term_display():
    for (p, q) in [(2, 1), (2, 2)]:
        alg = J.rpq_algebra(p, q)
        n = alg.n
        dvars = double_vars(alg.vars)
        got = D.extract_Dst(alg, MPoly.constant(dvars, 1))
        Px = alg.det_poly.extend_vars(dvars)
        Py = alg.det_poly.rename_vars(dvars[n:]).extend_vars(dvars)
        signs = [Fraction(1)] * p + [Fraction(-1)] * q
        Pxy = MPoly.zero(dvars)
        for i in range(n):
            m = [0] * (2 * n)
            m[i] = 1
            m[n + i] = 1
            Pxy = Pxy + MPoly.monomial(dvars, tuple(m), signs[i])
        expect = Px.scale(T * (2 * T - 2 + n) * 2) + Pxy.scale(S * T * (-8)) \
            + Py.scale(S * (2 * S - 2 + n) * 2)
        assert got == expect


def test_substitution_endpoints(rng):
    # at s = t = 1 the identity reads wave(det det f) = D f; at s = t = 0 it
    # reads det det wave(f) = D f (both after substitution into the family)
    alg = J.sym_algebra(2)
    dvars = double_vars(alg.vars)
    f = random_poly(dvars, rng, 3)
    action = D.extract_Dst(alg, f)
    detx = alg.det_poly.extend_vars(dvars)
    dety = alg.det_poly.rename_vars(dvars[alg.n:]).extend_vars(dvars)
    at11 = action.subs_params({"s": ParamPoly.of(1), "t": ParamPoly.of(1)})
    assert D.brute_force_wave(alg, 1, 1, f) == at11
    at00 = action.subs_params({"s": ParamPoly.of(0), "t": ParamPoly.of(0)})
    plain_wave = apply_diffop(
        alg.wave_poly.compose([
            MPoly.variable(dvars, dvars[i]) - MPoly.variable(dvars, dvars[alg.n + i])
            for i in range(alg.n)
        ]),
        f,
    )
    assert at00 == detx * dety * plain_wave
    assert D.brute_force_wave(alg, 0, 0, f) == plain_wave


@pytest.mark.parametrize("spec", ["sym:2", "mat:2", "rpq:2,1"])
def test_grid_agreement(spec, rng):
    alg = J.algebra_from_spec(spec)
    dvars = double_vars(alg.vars)
    f = random_poly(dvars, rng, 2)
    assert D.dst_grid_check(alg, f, [alg.r, alg.r + 2], [alg.r, alg.r + 1])


@pytest.mark.parametrize("spec", ["sym:2", "mat:2", "rpq:2,1", "rpq:2,2", "rpq:3,1"])
def test_operator_reconstruction(spec, rng):
    alg = J.algebra_from_spec(spec)
    op = D.dst_operator(alg)
    assert op.order() <= alg.r
    dvars = double_vars(alg.vars)
    for _ in range(3):
        f = random_poly(dvars, rng, 3)
        assert op.apply(f) == D.extract_Dst(alg, f)


def test_graded_route_sym2():
    alg = J.sym_algebra(2)
    assert D.dst_operator_graded(alg) == D.dst_operator(alg)


def test_graded_route_sym3_action(rng):
    alg = J.sym_algebra(3)
    op = D.dst_operator_graded(alg)
    dvars = double_vars(alg.vars)
    one = MPoly.constant(dvars, 1)
    assert op.apply(one) == D.extract_Dst(alg, one)
    f = random_poly(dvars, rng, 2, terms=2)
    assert op.apply(f) == D.extract_Dst(alg, f)


def test_deltafgh(rng):
    alg = J.sym_algebra(2)
    v = alg.vars
    one = MPoly.constant(v, 1)
    a = MPoly.variable(v, "x1")
    c = MPoly.variable(v, "x3")
    assert D.deltafgh_check(alg, one, one, one)
    assert apply_diffop(alg.det_poly, a * c) == one
    assert D.deltafgh_check(alg, a, c, one)
    for _ in range(5):
        f = random_poly(v, rng, 3)
        g = random_poly(v, rng, 3)
        h = random_poly(v, rng, 3)
        assert D.deltafgh_check(alg, f, g, h)


def test_deltafgh_domain():
    with pytest.raises(ValueError):
        D.deltafgh_check(J.mat_algebra(2), None, None, None)
