"""Gamma-factor algebra, functional-equation matrices, orbit bookkeeping,
and the numeric verification of the quadratic-space equation."""

import math
import random
from fractions import Fraction

import pytest

from covjord import zeta as Z
from covjord.scalars import ParamPoly, S


def test_gamma_factor_evaluation():
    g = Z.gamma_quad(3, S)
    s = 0.8
    expect = 2.0 ** (2 * s + 3) * math.pi ** 0.5 * math.gamma(s + 1) * math.gamma(s + 1.5)
    assert abs(g.evaluate(s) - expect) < 1e-12 * expect
    assert abs(Z.gamma_quad_value(3, s) - expect) < 1e-12 * expect


def test_gamma_factor_telescoping():
    g = Z.GammaFactor(g_num=(S + 3,), g_den=(S,)).simplify()
    assert not g.g_num and not g.g_den
    assert g.poly_num == S * (S + 1) * (S + 2)
    h = Z.GammaFactor(g_num=(S,), g_den=(S + 2,)).simplify()
    assert h.poly_den == S * (S + 1)
    assert (Z.gamma_quad(3, S) / Z.gamma_quad(3, S)).is_one()


def test_gamma_pole_locations():
    # gamma(s) diverges at s in {-1,-2,...} and {-n/2, -n/2-1, ...}
    g = Z.gamma_quad(3, S)
    args = [a for a in g.g_num]
    assert any(a == S + 1 for a in args)
    assert any(a == S + Fraction(3, 2) for a in args)


def test_kappa_rpq_exact_and_poles():
    for (p, q) in [(2, 1), (2, 2), (3, 2)]:
        disp = Z.kappa_const("rpq", p=p, q=q)
        tele = Z.kappa_rpq_from_gammas(p, q)
        assert disp.num * tele.den == tele.num * disp.den
    kc = Z.kappa_const("rpq", p=2, q=1)
    assert kc.den.evaluate({"s": Fraction(-1), "t": Fraction(2)}) == 0
    assert kc.den.evaluate({"s": Fraction(-3, 2), "t": Fraction(2)}) == 0
    assert kc.den.evaluate({"s": Fraction(2), "t": Fraction(-1)}) == 0


def test_kappa_split_quotient():
    rng = random.Random(5)
    for (r, d, n, r_plus) in [(2, 2, 4, 2), (3, 2, 9, 3), (2, 1, 3, 2)]:
        display = Z.kappa_as_gamma(Z.kappa_const("split", r=r, d=d, n=n))
        for eps in "+-":
            for eta in "+-":
                qv = Z.kappa_split_quotient(r, d, n, r_plus, eps, eta)
                assert qv.equals(display)
        for _ in range(20):
            s = rng.uniform(0.2, 1.5)
            t = rng.uniform(0.2, 1.5)
            va = display.evaluate(s, t)
            vb = Z.kappa_split_quotient(r, d, n, r_plus, "-", "+").evaluate(s, t)
            assert abs(va - vb) <= 1e-10 * max(abs(va), abs(vb))


def test_kappa_euclidean_b1_matches_split_shape():
    a = Z.kappa_const("euclidean-b1", r=2, d=5, n=12)
    b = Z.kappa_const("split", r=2, d=5, n=12)
    assert a.num == b.num and a.den == b.den and a.tau_power == b.tau_power


def test_kappa_non_split_transcription():
    kc = Z.kappa_const("non-split", r=2, d=4, n=6)
    assert kc.tau_power == 2
    assert kc.num == ParamPoly.of(16)
    assert kc.note
    with pytest.raises(ValueError):
        Z.kappa_const("mystery")


def test_quad_matrix_identities():
    rng = random.Random(77)
    for _ in range(100):
        s = rng.uniform(-3, 3)
        A = Z.A_matrix_pq(2, 2, s)
        assert abs(A[0][1]) < 1e-12 and abs(A[1][0]) < 1e-12  # sin((p-q)pi/4) = 0
        for (p, q) in [(2, 1), (3, 1), (2, 2), (3, 2)]:
            assert Z.flip_residual_quad(p, q, s) < 1e-12
            A0 = Z.A_matrix_pq(p, q, s)
            A2 = Z.A_matrix_pq(p, q, s + 2)
            assert max(abs(A0[i][j] - A2[i][j]) for i in range(2) for j in range(2)) < 1e-12
            B = Z.A_matrix_from_pm_parts(p, q, s)
            assert max(abs(A0[i][j] - B[i][j]) for i in range(2) for j in range(2)) < 1e-12


def test_euclidean_case_selection():
    assert Z.euclidean_case_name(3, 1) == "c1"
    assert Z.euclidean_case_name(2, 1) == "b1"
    assert Z.euclidean_case_name(2, 2) == "a'"
    assert Z.euclidean_case_name(3, 2) == "a"
    assert Z.euclidean_case_name(2, 4) == "a"
    assert Z.euclidean_case_name(2, 5) == "b1"
    assert Z.euclidean_case_name(2, 7) == "b2"
    assert Z.euclidean_case_name(4, 1) == "c3"
    assert Z.euclidean_case_name(5, 1) == "c2"
    assert Z.euclidean_case_name(6, 1) == "c4"
    Z.euclidean_matrices("c4", 2, 1, 3)  # rank-2, d = 1 admits the d = 1 family too
    with pytest.raises(Z.CaseConfigurationError):
        Z.euclidean_matrices("a", 2, 1, 3)
    with pytest.raises(Z.CaseConfigurationError):
        Z.euclidean_matrices("b1", 3, 1, 6)
    with pytest.raises(Z.CaseConfigurationError):
        Z.euclidean_matrices("zz", 2, 1, 3)


def test_euclidean_displays():
    s = 0.37
    fe = Z.euclidean_matrices("a", 3, 2, 9)
    M = fe.matrix(s)
    th = math.pi / 2 * (s + 3.0)
    assert abs(M[0][0] - math.cos(th) ** 3) < 1e-12
    assert abs(M[1][1] - (1j ** 3) * math.sin(th) ** 3) < 1e-12
    assert M[0][1] == 0 and M[1][0] == 0
    assert Z.euclidean_matrices("c3", 4, 1, 10).matrix(1.2) == [[-1j, 1.0], [1.0, -1j]]
    assert Z.euclidean_matrices("c4", 2, 1, 3).matrix(0.5) == [[1.0, -1j], [-1j, 1.0]]
    fe_b = Z.euclidean_matrices("b1", 2, 5, 12)
    pre = fe_b.prefactor(s)
    ge = Z.gamma_euclid(2, 5, 12, S + Fraction(6)).evaluate(s, 0)
    assert abs(pre - 4 * math.sqrt(2) * ge) < 1e-10 * abs(pre)
    assert fe_b.target == "pm"
    assert Z.euclidean_matrices("c1", 3, 1, 6).target == "eo"


def test_euclidean_flips():
    rng = random.Random(13)
    for _ in range(100):
        s = rng.uniform(-2.0, 2.0)
        assert Z.flip_residual_pm(Z.euclidean_matrices("b1", 2, 5, 12), s) < 1e-12
        assert Z.flip_residual_pm(Z.euclidean_matrices("b2", 2, 7, 16), s) < 1e-12
        assert Z.flip_residual_eo(Z.euclidean_matrices("c1", 3, 1, 6), s) < 1e-12
        assert Z.flip_residual_eo(Z.euclidean_matrices("c2", 5, 1, 15), s) < 1e-12


def test_orbit_functionals():
    for r in (1, 2, 3):
        assert Z.orbit_roundtrip(r)
    # signed combinations at rank 2
    pm = Z.orbit_to_pm(2)
    assert pm[0] == [1, 1, 1]
    assert pm[1] == [1, -1, 1]
    eo = Z.orbit_to_eo(2)
    assert eo[0] == [1, 0, -1]
    assert eo[1] == [0, 1, 0]


def test_orbit_coefficient_tables():
    for d in (1, 3, 5, 7):
        tab = Z.orbit_coefficient_polys(2, d)
        xi = Z._i_power(d * 3)
        assert tab[0][0] == {(0, 0): Z.G_ONE}
        assert tab[1][0] == {}
        assert tab[2][0] == {(2, 0): Z.G_ONE}
        assert tab[0][1] == {(1, 0): Z.G_ONE}
        assert tab[1][1] == {(0, 0): xi, (2, 0): -xi}
        assert tab[2][1] == {(1, 0): Z.G_ONE}
        assert tab[0][2] == {(2, 0): Z.G_ONE}
        assert tab[1][2] == {}
        assert tab[2][2] == {(0, 0): Z.G_ONE}


def test_orbit_generating_sums_even_d():
    for (r, d) in [(3, 2), (2, 4), (3, 4)]:
        tab = Z.orbit_coefficient_polys(r, d)
        onepx = Z.gp_pow({(0, 0): Z.G_ONE, (1, 0): Z.G_ONE}, r)
        onemx = Z.gp_pow({(0, 0): Z.G_ONE, (1, 0): -Z.G_ONE}, r)
        for j in range(r + 1):
            total, signed = {}, {}
            for i in range(r + 1):
                total = Z.gp_add(total, tab[i][j])
                signed = Z.gp_add(signed, Z.gp_scale(tab[i][j], Z.Gaussian(Fraction((-1) ** i))))
            assert total == onepx
            assert signed == Z.gp_scale(onemx, Z.Gaussian(Fraction((-1) ** j)))


def test_fourier_gaussian():
    g = Z.GaussianTest.make(3, 1)
    fg = Z.fourier_gaussian(g)
    assert fg.width == Fraction(1, 4)
    assert fg.poly == (((0, 0, 0), (Fraction(1), Fraction(0))),)
    assert abs(Z.fourier_gaussian_scale(g) - math.pi ** 1.5) < 1e-12
    g1 = Z.GaussianTest.make(3, 1, {(1, 0, 0): (1, 0)})
    fg1 = Z.fourier_gaussian(g1)
    assert dict(fg1.poly)[(1, 0, 0)] == (Fraction(0), Fraction(1, 2))
    with pytest.raises(ValueError):
        Z.GaussianTest.make(3, 0)


def test_sphere_moments():
    assert Z._sphere_moment((0,)) == 2.0
    assert abs(Z._sphere_moment((0, 0)) - 2 * math.pi) < 1e-12
    assert Z._sphere_moment((1, 0)) == 0.0
    # int over S^1 of cos^2 = pi
    assert abs(Z._sphere_moment((2, 0)) - math.pi) < 1e-12


@pytest.mark.parametrize("s", [-0.6, -0.7, -0.8])
def test_functional_equation(s):
    rep = Z.numeric_zeta_check(2, 1, s, Z.GaussianTest.make(3, 1))
    assert rep.max_rel_error < 1e-4
    assert max(rep.gs_residuals.values()) < 1e-4
    assert rep.pipeline_gap < 1e-6


def test_functional_equation_polynomial_testfn():
    g = Z.GaussianTest.make(3, 1, {(0, 0, 0): (1, 0), (2, 0, 0): (1, 0), (0, 0, 2): (-2, 0)})
    rep = Z.numeric_zeta_check(2, 1, -0.7, g)
    assert rep.max_rel_error < 1e-4


def test_odd_test_function_vanishes():
    rep = Z.numeric_zeta_check(2, 1, -0.7, Z.GaussianTest.make(3, 1, {(1, 0, 0): (1, 0)}))
    for eps in "+-":
        assert abs(rep.lhs[eps]) < 1e-8
        assert abs(rep.rhs[eps]) < 1e-8


def test_convergence_guard():
    with pytest.raises(ValueError):
        Z.numeric_zeta_check(2, 2, -0.7, Z.GaussianTest.make(4, 1))
    with pytest.raises(ValueError):
        Z.numeric_zeta_check(2, 1, -0.3, Z.GaussianTest.make(3, 1))


def test_convolution_kernel_pairing_at_origin():
    # the intertwining kernel paired against a gaussian at the origin is the
    # signed-power pairing; the two quadrature pipelines must agree on it
    from covjord import conformal as Cf
    from covjord import jordan as Jd

    alg = Jd.rpq_algebra(2, 1)
    lam = 2.3  # sigma = lam - 2n/r = -0.7, inside the strip
    sigma = lam - 2.0 * alg.n / alg.r
    g = Z.GaussianTest.make(3, 1)
    for eps in "+-":
        a = Z.pair_power_with(g, 2, 1, sigma, eps, pipeline="polar")
        b = Z.pair_power_with(g, 2, 1, sigma, eps, pipeline="grid")
        assert abs(a - b) <= 1e-6 * max(abs(a), abs(b))
    # sign convention agrees with the kernel function at sample points
    y = Jd.element(alg, [0, 0, 2])
    origin = Jd.element(alg, [0, 0, 0])
    val = Cf.knapp_stein_kernel(alg, lam, "-", origin, y)
    assert val < 0  # det(0 - y) = -4 on the negative side
