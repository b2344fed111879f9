"""Gamma factors, functional-equation matrices and numeric zeta checks.

Symbolic layer: GammaFactor descriptors (rational constant, e^(i*pi*..),
powers of 2 and pi, gamma-function factors with affine arguments, and a
rational-polynomial part).  Quotients telescope exactly whenever the gamma
arguments differ by integers, which is how the kappa constants are derived
and certified.  Floating point enters only in the numeric layer at the
bottom: trig matrices evaluated at sample points and the quadrature
verification of the quadratic-space functional equation, with the domain
split at the light cone in bipolar radii.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from scipy.integrate import quad

from .detpower import b_reference
from .scalars import ParamPoly, S, T

# ---------------------------------------------------------------------------
# symbolic gamma-factor descriptors


def _affine_eval(p: ParamPoly, s: complex, t: complex) -> complex:
    return p.evaluate_complex({"s": s, "t": t, "lam": 0.0, "mu": 0.0, "tau": 1.0})


@dataclass(frozen=True)
class GammaFactor:
    """coeff * e^(i pi * eipi) * 2^pow2 * pi^powpi
       * prod Gamma(g_num) / prod Gamma(g_den) * poly_num / poly_den,
    all exponents and arguments affine polynomials in s and t."""

    coeff: Fraction = Fraction(1)
    eipi: ParamPoly = field(default_factory=ParamPoly.zero)
    pow2: ParamPoly = field(default_factory=ParamPoly.zero)
    powpi: ParamPoly = field(default_factory=ParamPoly.zero)
    g_num: tuple = ()
    g_den: tuple = ()
    poly_num: ParamPoly = field(default_factory=lambda: ParamPoly.of(1))
    poly_den: ParamPoly = field(default_factory=lambda: ParamPoly.of(1))

    def __mul__(self, other: "GammaFactor") -> "GammaFactor":
        return GammaFactor(
            self.coeff * other.coeff,
            self.eipi + other.eipi,
            self.pow2 + other.pow2,
            self.powpi + other.powpi,
            self.g_num + other.g_num,
            self.g_den + other.g_den,
            self.poly_num * other.poly_num,
            self.poly_den * other.poly_den,
        )

    def inverse(self) -> "GammaFactor":
        if self.coeff == 0:
            raise ZeroDivisionError("inverting a zero factor")
        return GammaFactor(
            Fraction(1) / self.coeff,
            -self.eipi,
            -self.pow2,
            -self.powpi,
            self.g_den,
            self.g_num,
            self.poly_den,
            self.poly_num,
        )

    def __truediv__(self, other: "GammaFactor") -> "GammaFactor":
        return self * other.inverse()

    def simplify(self) -> "GammaFactor":
        """Cancel equal gamma factors and telescope integer-shift pairs into
        the polynomial part; fold integer parts of the phase into the sign."""
        num = list(self.g_num)
        den = list(self.g_den)
        poly_num = self.poly_num
        poly_den = self.poly_den
        out_num = []
        while num:
            a = num.pop()
            hit = None
            for i, b in enumerate(den):
                diff = a - b
                if diff.is_constant():
                    c = diff.constant_value()
                    if c.denominator == 1:
                        hit = (i, int(c))
                        break
            if hit is None:
                out_num.append(a)
                continue
            i, m = hit
            b = den.pop(i)
            if m >= 0:
                for j in range(m):
                    poly_num = poly_num * (b + j)
            else:
                for j in range(-m):
                    poly_den = poly_den * (a + j)
        coeff = self.coeff
        eipi = self.eipi
        const = eipi.terms.get((0, 0, 0, 0, 0))
        if const is not None:
            if const.denominator == 1:
                # e^(i pi k) = (-1)^k folds into the sign
                if int(const) % 2:
                    coeff = -coeff
                eipi = eipi - const
            else:
                even = const - (const % 2)
                if even:
                    eipi = eipi - even
        return GammaFactor(coeff, eipi, self.pow2, self.powpi,
                           tuple(out_num), tuple(den), poly_num, poly_den)

    def is_one(self) -> bool:
        g = self.simplify()
        if g.g_num or g.g_den:
            return False
        if not (g.eipi.is_zero() and g.powpi.is_zero()):
            return False
        coeff = g.coeff
        pow2 = g.pow2
        if pow2.is_constant():
            c = pow2.constant_value()
            if c.denominator != 1:
                return False
            coeff *= Fraction(2) ** int(c)
        elif not pow2.is_zero():
            return False
        return g.poly_num.scale_rat(coeff) == g.poly_den

    def equals(self, other: "GammaFactor") -> bool:
        return (self / other).is_one()

    def evaluate(self, s: complex, t: complex = 0.0) -> complex:
        val = complex(self.coeff)
        e = _affine_eval(self.eipi, s, t).real
        if e:
            val *= complex(math.cos(math.pi * e), math.sin(math.pi * e))
        val *= 2.0 ** _affine_eval(self.pow2, s, t).real
        val *= math.pi ** _affine_eval(self.powpi, s, t).real
        for arg in self.g_num:
            val *= math.gamma(_affine_eval(arg, s, t).real)
        for arg in self.g_den:
            val /= math.gamma(_affine_eval(arg, s, t).real)
        val *= _affine_eval(self.poly_num, s, t)
        val /= _affine_eval(self.poly_den, s, t)
        return val


def _const(c: Fraction | int) -> ParamPoly:
    return ParamPoly.of(c)


def gamma_V(r_plus: int, d: int, arg: ParamPoly) -> GammaFactor:
    """prod_{k=1..r_plus} Gamma(arg/2 - (k-1) d/4)."""
    args = tuple(arg / 2 - Fraction(k * d, 4) for k in range(r_plus))
    return GammaFactor(g_num=args)


def gamma_Omega(r: int, d: int, n: int, arg: ParamPoly) -> GammaFactor:
    """(2 pi)^((n-r)/2) prod_{j=1..r} Gamma(arg - (j-1) d/2)."""
    half = Fraction(n - r, 2)
    args = tuple(arg - Fraction(j * d, 2) for j in range(r))
    return GammaFactor(pow2=_const(half), powpi=_const(half), g_num=args)


def gamma_euclid(r: int, d: int, n: int, arg: ParamPoly) -> GammaFactor:
    """(2 pi)^(-r*arg) e(r*arg/4) Gamma_Omega(arg) (euclidean prefactor)."""
    return GammaFactor(
        eipi=arg * Fraction(r, 2),
        pow2=arg * (-r),
        powpi=arg * (-r),
    ) * gamma_Omega(r, d, n, arg)


def gamma_quad(n: int, arg: ParamPoly) -> GammaFactor:
    """2^(2 arg + n) pi^(n/2 - 1) Gamma(arg + 1) Gamma(arg + n/2)."""
    return GammaFactor(
        pow2=arg * 2 + n,
        powpi=_const(Fraction(n - 2, 2)),
        g_num=(arg + 1, arg + Fraction(n, 2)),
    )


def c_factor(r: int, d: int, n: int, r_plus: int, eps: str, split: bool,
             arg: ParamPoly) -> GammaFactor:
    """Fourier constant of the zeta distribution at the given sign."""
    base = GammaFactor(powpi=arg * (-r) - Fraction(n, 2))
    if not split:
        return base * gamma_V(r_plus, d, arg * 2 + Fraction(2 * n, r)) \
            / gamma_V(r_plus, d, arg * (-2))
    if eps == "+":
        return base * gamma_V(r_plus, d, arg + Fraction(n, r)) / gamma_V(r_plus, d, -arg)
    if eps == "-":
        phase = GammaFactor(eipi=_const(Fraction(r, 2)))
        return base * phase * gamma_V(r_plus, d, arg + 1 + Fraction(n, r)) \
            / gamma_V(r_plus, d, -arg + 1)
    raise ValueError("epsilon must be '+' or '-'")


# ---------------------------------------------------------------------------
# kappa constants


@dataclass(frozen=True)
class KappaConstant:
    kind: str
    tau_power: int  # power of the kernel constant 2*pi*sqrt(-1)
    num: ParamPoly
    den: ParamPoly
    note: str = ""

    def evaluate(self, s: complex, t: complex) -> complex:
        tau = 2j * math.pi
        val = tau ** self.tau_power
        val *= _affine_eval(self.num, s, t)
        val /= _affine_eval(self.den, s, t)
        return val


def _b_in(var: ParamPoly, k: int, d: int) -> ParamPoly:
    return b_reference(k, d).substitute({"s": var})


def kappa_const(kind: str, *, r: int = 0, d: int = 0, n: int = 0,
                p: int = 0, q: int = 0) -> KappaConstant:
    if kind == "rpq":
        n = p + q
        if n < 3:
            raise ValueError("quadratic-space kappa needs p + q >= 3")
        den = (S + 1) * (S + Fraction(n, 2)) * (T + 1) * (T + Fraction(n, 2)) * 16
        return KappaConstant("rpq", 0, ParamPoly.of(1), den,
                             note="unit-imaginary kernel convention")
    if kind in ("split", "euclidean-b1"):
        if kind == "euclidean-b1" and r != 2:
            raise ValueError("the rank-2 euclidean case needs r = 2")
        den = _b_in(S + 1, r, d) * _b_in(T + 1, r, d)
        return KappaConstant(kind, r, ParamPoly.of(1), den)
    if kind == "non-split":
        den = (
            _b_in((-2) * S - Fraction(2 * n, r), 2 * r, d)
            * _b_in(2 * S + 2, 2 * r, d)
            * _b_in((-2) * T - Fraction(2 * n, r), 2 * r, d)
            * _b_in(2 * T + 2, 2 * r, d)
        )
        return KappaConstant("non-split", r, ParamPoly.of(Fraction(-4) ** r), den,
                             note="transcribed formula; no desk-scale numeric check")
    raise ValueError(f"unknown kappa kind {kind!r}")


def kappa_split_quotient(r: int, d: int, n: int, r_plus: int,
                         eps: str, eta: str) -> GammaFactor:
    """c(s,eps) c(t,eta) / (tau^r c(s+1,-eps) c(t+1,-eta)), split case."""
    flip = {"+": "-", "-": "+"}
    cs = c_factor(r, d, n, r_plus, eps, True, S)
    ct = c_factor(r, d, n, r_plus, eta, True, T)
    cs1 = c_factor(r, d, n, r_plus, flip[eps], True, S + 1)
    ct1 = c_factor(r, d, n, r_plus, flip[eta], True, T + 1)
    tau_r = GammaFactor(pow2=_const(r), powpi=_const(r), eipi=_const(Fraction(r, 2)))
    return (cs * ct) / (tau_r * cs1 * ct1)


def kappa_as_gamma(kc: KappaConstant) -> GammaFactor:
    return GammaFactor(
        eipi=_const(Fraction(kc.tau_power, 2)),
        pow2=_const(kc.tau_power),
        powpi=_const(kc.tau_power),
        poly_num=kc.num,
        poly_den=kc.den,
    )


def kappa_rpq_from_gammas(p: int, q: int) -> KappaConstant:
    """gamma(s) gamma(t) / (gamma(s+1) gamma(t+1)) telescoped exactly."""
    n = p + q
    quot = (gamma_quad(n, S) * gamma_quad(n, T)) / (gamma_quad(n, S + 1) * gamma_quad(n, T + 1))
    g = quot.simplify()
    if g.g_num or g.g_den or not g.eipi.is_zero() or not g.powpi.is_zero():
        raise ArithmeticError("quadratic-space kappa did not telescope")
    pw = g.pow2.constant_value()
    if pw.denominator != 1:
        raise ArithmeticError("non-integer power of two after telescoping")
    coeff = g.coeff * Fraction(2) ** int(pw)
    num = g.poly_num.scale_rat(coeff.numerator)
    den = g.poly_den.scale_rat(coeff.denominator)
    return KappaConstant("rpq", 0, num, den)


# ---------------------------------------------------------------------------
# functional-equation matrices: quadratic space


def gamma_quad_value(n: int, s: float) -> float:
    return 2.0 ** (2 * s + n) * math.pi ** (n / 2 - 1) * math.gamma(s + 1) * math.gamma(s + n / 2)


def A_matrix_pq(p: int, q: int, s: float) -> list[list[float]]:
    """Transform matrix of the signed power pair, rows/cols ordered (+, -)."""
    n = p + q
    cpq = math.cos((p - q) * math.pi / 4)
    spq = math.sin((p - q) * math.pi / 4)
    sn = math.sin(n * math.pi / 4)
    cn = math.cos(n * math.pi / 4)
    ss = math.sin((s + n / 4) * math.pi)
    cs = math.cos((s + n / 4) * math.pi)
    return [
        [cpq * (-ss + sn), spq * (cs - cn)],
        [spq * (cs + cn), -cpq * (ss + sn)],
    ]


def A_matrix_from_pm_parts(p: int, q: int, s: float) -> list[list[float]]:
    """Same matrix rebuilt from the one-sided power transforms (independent
    route through the classical two-sided formulas)."""
    n = p + q
    alpha_p = -math.sin((q / 2 + s) * math.pi) + math.sin(q * math.pi / 2)
    beta_p = math.sin(p * math.pi / 2) - math.sin((s + p / 2) * math.pi)
    alpha_m = -math.sin((q / 2 + s) * math.pi) - math.sin(q * math.pi / 2)
    beta_m = math.sin(p * math.pi / 2) + math.sin((s + p / 2) * math.pi)
    return [
        [(alpha_p + beta_p) / 2, (alpha_p - beta_p) / 2],
        [(alpha_m + beta_m) / 2, (alpha_m - beta_m) / 2],
    ]


# ---------------------------------------------------------------------------
# functional-equation matrices: euclidean cases


class CaseConfigurationError(ValueError):
    """Case selector inconsistent with the (r, d) constraints."""


_CASE_CONSTRAINTS = {
    "a": lambda r, d: d % 4 == 0 or (d % 4 == 2 and r % 2 == 1),
    "a'": lambda r, d: d % 4 == 2 and r % 2 == 0,
    "b1": lambda r, d: r == 2 and d % 4 == 1,
    "b2": lambda r, d: r == 2 and d % 4 == 3,
    "c1": lambda r, d: d == 1 and r % 4 == 3,
    "c2": lambda r, d: d == 1 and r % 4 == 1,
    "c3": lambda r, d: d == 1 and r % 4 == 0,
    "c4": lambda r, d: d == 1 and r % 4 == 2,
}


def euclidean_case_name(r: int, d: int) -> str:
    """Canonical case for (r, d); rank 2 with d = 1 admits both the rank-2
    and the d = 1 families and defaults to the rank-2 one."""
    for name in ("a", "a'", "b1", "b2", "c1", "c2", "c3", "c4"):
        if _CASE_CONSTRAINTS[name](r, d):
            return name
    raise CaseConfigurationError(f"no euclidean case for r={r}, d={d}")


@dataclass(frozen=True)
class EuclideanFE:
    """One euclidean functional equation: target basis, scalar prefactor and
    2x2 matrix as callables of s."""

    case: str
    r: int
    d: int
    n: int
    target: str  # "pm" for (Z+, Z-), "eo" for (even, odd)
    prefactor: Callable[[float], complex]
    matrix: Callable[[float], list[list[complex]]]


def euclidean_matrices(case: str, r: int, d: int, n: int) -> EuclideanFE:
    constraint = _CASE_CONSTRAINTS.get(case)
    if constraint is None:
        raise CaseConfigurationError(f"unknown case {case!r}")
    if not constraint(r, d):
        raise CaseConfigurationError(
            f"case {case!r} inconsistent with r={r}, d={d} ({euclidean_case_name(r, d)})"
        )

    def geu(s: float) -> complex:
        # (2 pi)^(-r sigma) e(r sigma / 4) Gamma_Omega(sigma), sigma = s + n/r
        sigma = s + n / r
        val = (2 * math.pi) ** (-r * sigma)
        val *= complex(math.cos(math.pi * r * sigma / 2), math.sin(math.pi * r * sigma / 2))
        val *= (2 * math.pi) ** ((n - r) / 2)
        for j in range(r):
            val *= math.gamma(sigma - j * d / 2)
        return val

    half = math.pi / 2

    if case in ("a", "a'"):
        def matrix(s: float):
            c = math.cos(half * (s + n / r)) ** r
            si = (1j ** r) * math.sin(half * (s + n / r)) ** r
            if case == "a":
                return [[c, 0.0], [0.0, si]]
            return [[si, 0.0], [0.0, c]]

        return EuclideanFE(case, r, d, n, "pm",
                           lambda s: (2 ** r) * geu(s), matrix)

    if case in ("b1", "b2"):
        def matrix(s: float):
            s1 = math.sin(half * (s + (n + 1) / 2))
            c1 = math.cos(half * (s + (n + 1) / 2))
            s2 = math.sin(half * (s + n / 2))
            c2 = math.cos(half * (s + n / 2))
            rows = [[s1 * c2, -s1 * s2], [c1 * c2, c1 * s2]]
            if case == "b2":
                rows = [[c1 * c2, c1 * s2], [s1 * c2, -s1 * s2]]
            return rows

        return EuclideanFE(case, r, d, n, "pm",
                           lambda s: 4 * math.sqrt(2) * geu(s), matrix)

    if case in ("c1", "c2"):
        rho = r // 2

        def prefactor(s: float) -> complex:
            base = ((-2j) ** rho) * geu(s) * math.sin(math.pi * (s + n / r)) ** rho
            return -base if case == "c1" else base

        def matrix(s: float):
            si = 1j * math.sin(half * (s + n / r))
            co = math.cos(half * (s + n / r))
            if case == "c1":
                return [[si, -si], [co, co]]
            return [[co, co], [si, -si]]

        return EuclideanFE(case, r, d, n, "eo", prefactor, matrix)

    if case in ("c3", "c4"):
        def prefactor(s: float) -> complex:
            return (2 ** ((r - 1) / 2)) * complex(math.cos(math.pi / 4), math.sin(math.pi / 4)) \
                * geu(s) * math.cos(math.pi * (s + n / r)) ** (r // 2)

        def matrix(s: float):
            if case == "c3":
                return [[-1j, 1.0], [1.0, -1j]]
            return [[1.0, -1j], [-1j, 1.0]]

        return EuclideanFE(case, r, d, n, "pm", prefactor, matrix)

    raise CaseConfigurationError(f"unknown case {case!r}")


def flip_residual_pm(fe: EuclideanFE, s: float) -> float:
    """a_(eps,eta)(s) = -a_(-eps,-eta)(s+1) for the rank-2 matrix cases."""
    A0 = fe.matrix(s)
    A1 = fe.matrix(s + 1)
    res = 0.0
    for i in range(2):
        for j in range(2):
            res = max(res, abs(A0[i][j] + A1[1 - i][1 - j]))
    return res


def flip_residual_eo(fe: EuclideanFE, s: float) -> float:
    """a^e_eps(s) = -i a^e_(-eps)(s+1) and a^o_eps(s) = i a^o_(-eps)(s+1)."""
    A0 = fe.matrix(s)
    A1 = fe.matrix(s + 1)
    res = 0.0
    for i in range(2):
        res = max(res, abs(A0[i][0] - (-1j) * A1[1 - i][0]))
        res = max(res, abs(A0[i][1] - 1j * A1[1 - i][1]))
    return res


def flip_residual_quad(p: int, q: int, s: float) -> float:
    A1 = A_matrix_pq(p, q, s + 1)
    A0 = A_matrix_pq(p, q, s)
    res = 0.0
    for i in range(2):
        for j in range(2):
            res = max(res, abs(A1[i][j] + A0[1 - i][1 - j]))
    return res


# ---------------------------------------------------------------------------
# signature-orbit bookkeeping (exact linear maps)


def orbit_to_pm(r: int) -> list[list[Fraction]]:
    """Rows of (Z+, Z-) in the orbit basis Z_0..Z_r."""
    return [
        [Fraction(1)] * (r + 1),
        [Fraction(-1) ** i for i in range(r + 1)],
    ]


def orbit_to_eo(r: int) -> list[list[Fraction]]:
    """Rows of (Z_even, Z_odd) in the orbit basis."""
    even = [Fraction(0)] * (r + 1)
    odd = [Fraction(0)] * (r + 1)
    for k in range(0, r + 1, 2):
        even[k] = Fraction(-1) ** (k // 2)
    for k in range(1, r + 1, 2):
        odd[k] = Fraction(-1) ** ((k - 1) // 2)
    return [even, odd]


def orbit_roundtrip(r: int) -> bool:
    """The pm/eo functionals determine the orbit vector for r <= 3 and the
    reconstruction is consistent."""
    rows = orbit_to_pm(r) + orbit_to_eo(r)
    rows = rows[: r + 1]
    m = len(rows)
    # invert the square system over Q
    aug = [list(rows[i]) + [Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    for col in range(m):
        piv = next((rr for rr in range(col, m) if aug[rr][col] != 0), None)
        if piv is None:
            return False
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for rr in range(m):
            if rr != col and aug[rr][col]:
                f = aug[rr][col]
                aug[rr] = [a - f * b for a, b in zip(aug[rr], aug[col])]
    inv_rows = [row[m:] for row in aug]
    # round trip: functional values of a random exact orbit vector
    orbit = [Fraction(3 * i - 2, i + 1) for i in range(r + 1)]
    vals = [sum(rows[i][j] * orbit[j] for j in range(r + 1)) for i in range(m)]
    back = [sum(inv_rows[i][j] * vals[j] for j in range(m)) for i in range(m)]
    return back == orbit[:m]


# ---------------------------------------------------------------------------
# orbit-coefficient generating polynomials (Gaussian-rational, two formal vars)


@dataclass(frozen=True)
class Gaussian:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, o):
        return Gaussian(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return Gaussian(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        return Gaussian(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0


G_ONE = Gaussian(Fraction(1))
G_I = Gaussian(Fraction(0), Fraction(1))

GPoly = dict  # (ex, ey) -> Gaussian


def gp_add(a: GPoly, b: GPoly) -> GPoly:
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, Gaussian()) + v
        if nv.is_zero():
            out.pop(k, None)
        else:
            out[k] = nv
    return out


def gp_mul(a: GPoly, b: GPoly) -> GPoly:
    out: GPoly = {}
    for (e1, f1), v1 in a.items():
        for (e2, f2), v2 in b.items():
            k = (e1 + e2, f1 + f2)
            nv = out.get(k, Gaussian()) + v1 * v2
            if nv.is_zero():
                out.pop(k, None)
            else:
                out[k] = nv
    return out


def gp_pow(a: GPoly, k: int) -> GPoly:
    out = {(0, 0): G_ONE}
    for _ in range(k):
        out = gp_mul(out, a)
    return out


def gp_scale(a: GPoly, c: Gaussian) -> GPoly:
    return {k: v * c for k, v in a.items() if not (v * c).is_zero()}


def _i_power(k: int) -> Gaussian:
    k %= 4
    return [G_ONE, G_I, -G_ONE, -G_I][k]


def orbit_coefficient_polys(r: int, d: int) -> list[list[GPoly]]:
    """u_ij(x) extracted from the generating identity: returns u[i][j] as
    polynomials in x (Gaussian-rational coefficients)."""
    xi = _i_power(d * (r + 1))

    def P_factor(j: int, base: GPoly, other: GPoly) -> GPoly:
        # (base + other)^j for even d; split exponents for odd d
        if d % 2 == 0:
            return gp_pow(gp_add(base, other), j)
        lo = j // 2
        return gp_mul(gp_pow(gp_add(base, other), lo),
                      gp_pow(gp_add(other, gp_scale(base, -G_ONE)), j - lo))

    x = {(1, 0): G_ONE}
    y = {(0, 1): G_ONE}
    xy = {(1, 1): G_ONE}
    one = {(0, 0): G_ONE}
    out = []
    for j in range(r + 1):
        # xi^-(r-j) P_j(xi x, y) P_(r-j)(1, xi x y); xi is a 4th root of
        # unity, so its inverse power is the conjugate power
        acc = G_ONE
        for _ in range(r - j):
            acc = acc * xi
        inv = Gaussian(acc.re, -acc.im)
        poly = gp_mul(P_factor(j, gp_scale(x, xi), y),
                      P_factor(r - j, one, gp_scale(xy, xi)))
        out.append(gp_scale(poly, inv))
    # extract coefficient of y^i
    table = [[{} for _ in range(r + 1)] for _ in range(r + 1)]
    for j, poly in enumerate(out):
        for (ex, ey), v in poly.items():
            if ey <= r:
                table[ey][j][(ex, 0)] = table[ey][j].get((ex, 0), Gaussian()) + v
    return table


# ---------------------------------------------------------------------------
# numeric layer: Gaussian test functions and the quadratic-space pairing


@dataclass(frozen=True)
class GaussianTest:
    """Polynomial times a centered Gaussian exp(-width |x|^2), exact data."""

    n: int
    width: Fraction
    poly: tuple  # ((mono, (re, im)) ...)

    @classmethod
    def make(cls, n: int, width, poly: Mapping[tuple, tuple] | None = None) -> "GaussianTest":
        width = Fraction(width)
        if width <= 0:
            raise ValueError("gaussian width must be positive")
        if poly is None:
            poly = {(0,) * n: (Fraction(1), Fraction(0))}
        items = tuple(sorted(
            (tuple(m), (Fraction(c[0]), Fraction(c[1]))) for m, c in poly.items()
        ))
        return cls(n, width, items)

    def poly_dict(self) -> dict:
        return {m: c for m, c in self.poly}


def fourier_gaussian(g: GaussianTest) -> GaussianTest:
    """Exact transform under the kernel e^(i (xi, x)): polynomial x Gaussian
    maps to polynomial x Gaussian of width 1/(4 width), with the overall
    (pi/width)^(n/2) factor carried separately by the caller via
    fourier_gaussian_scale."""
    n = g.n
    a = Fraction(1, 4) / g.width  # image width
    # multiplication by x_j on the source side becomes -i d/dxi_j downstream
    # of the base transform of exp(-w|x|^2)

    def diff_gauss(poly: dict, j: int) -> dict:
        # d/dxi_j [p e^(-a|xi|^2)] = (dp/dxi_j - 2 a xi_j p) e^(-a |xi|^2)
        out: dict = {}
        for m, (re, im) in poly.items():
            if m[j]:
                dm = m[:j] + (m[j] - 1,) + m[j + 1 :]
                pr, pi = out.get(dm, (Fraction(0), Fraction(0)))
                out[dm] = (pr + re * m[j], pi + im * m[j])
            um = m[:j] + (m[j] + 1,) + m[j + 1 :]
            pr, pi = out.get(um, (Fraction(0), Fraction(0)))
            out[um] = (pr - 2 * a * re, pi - 2 * a * im)
        return {k: v for k, v in out.items() if v != (0, 0)}

    result: dict = {}
    for mono, (re, im) in g.poly_dict().items():
        cur = {(0,) * n: (Fraction(1), Fraction(0))}
        for j, e in enumerate(mono):
            for _ in range(e):
                cur = diff_gauss(cur, j)
                # multiply by -i: (re, im) -> (im, -re)
                cur = {k: (v[1], -v[0]) for k, v in cur.items()}
        for k, (vr, vi) in cur.items():
            ar, ai = result.get(k, (Fraction(0), Fraction(0)))
            result[k] = (ar + re * vr - im * vi, ai + re * vi + im * vr)
    return GaussianTest.make(n, a, result)


def fourier_gaussian_scale(g: GaussianTest) -> float:
    return (math.pi / float(g.width)) ** (g.n / 2)


def _sphere_moment(exponents: Sequence[int]) -> float:
    """Integral of prod omega_i^(e_i) over the unit sphere S^(m-1)."""
    if any(e % 2 for e in exponents):
        return 0.0
    m = len(exponents)
    if m == 1:
        return 2.0
    num = 1.0
    tot = 0.0
    for e in exponents:
        num *= math.gamma(e / 2 + 0.5)
        tot += e / 2
    return 2.0 * num / math.gamma(tot + m / 2)


_QUAD_TOL = 1e-8


def _angular_integral(A: int, B: int, sigma: float, region: str) -> float:
    """Integral over phi in (0, pi/2) of cos^A sin^B |cos 2phi|^sigma with the
    sign/region conventions; split at the cone phi = pi/4."""

    def f(phi: float) -> float:
        c2 = math.cos(2 * phi)
        return math.cos(phi) ** A * math.sin(phi) ** B * abs(c2) ** sigma

    quarter = math.pi / 4
    left = quad(f, 0.0, quarter, epsabs=_QUAD_TOL, epsrel=1e-10, limit=400)[0]
    right = quad(f, quarter, math.pi / 2, epsabs=_QUAD_TOL, epsrel=1e-10, limit=400)[0]
    if region == "plus":  # P > 0 side only
        return left
    if region == "minus":  # P < 0 side only
        return right
    if region == "both+":
        return left + right
    if region == "both-":
        return left - right
    raise ValueError(f"unknown region {region!r}")


def _radial_integral(K: int, sigma: float, a: float) -> float:
    """Integral over rho of rho^(K + 2 sigma + 1) e^(-a rho^2)."""
    e = (K + 2 * sigma + 2) / 2
    return math.gamma(e) / (2 * a**e)


def _bipolar_integral_grid(A: int, B: int, sigma: float, a: float, region: str) -> float:
    """Independent pipeline: nested adaptive quadrature in the bipolar radii
    (u, v), inner integral split at the cone u = v."""
    cut = 8.0 / math.sqrt(a)

    def inner(v: float) -> float:
        def fu(u: float) -> float:
            w = u * u - v * v
            if w == 0.0:
                return 0.0
            return u**A * abs(w) ** sigma * math.exp(-a * u * u)

        total = 0.0
        if region != "minus" and v < cut:
            mid = min(v + 1.0, cut)
            total += quad(fu, v, mid, epsabs=_QUAD_TOL, limit=300)[0]
            if mid < cut:
                total += quad(fu, mid, cut, epsabs=_QUAD_TOL, limit=300)[0]
        if region != "plus" and v > 0.0:
            piece = quad(fu, 0.0, v, epsabs=_QUAD_TOL, limit=300)[0]
            total += -piece if region == "both-" else piece
        return total * v**B * math.exp(-a * v * v)

    return quad(inner, 0.0, cut, epsabs=_QUAD_TOL, limit=300)[0]


def pair_power_with(g: GaussianTest, p: int, q: int, sigma: float, eps: str,
                    region_override: str | None = None,
                    pipeline: str = "polar") -> complex:
    """<P^(sigma, eps), g> over R^n: exact angular reduction per monomial,
    then the 2-D bipolar integral via the chosen pipeline."""
    n = p + q
    if g.n != n:
        raise ValueError("test function dimension mismatch")
    a = float(g.width)
    region = region_override or ("both+" if eps == "+" else "both-")
    total = 0.0 + 0.0j
    for mono, (re, im) in g.poly:
        mx = mono[:p]
        my = mono[p:]
        wx = _sphere_moment(mx)
        if wx == 0.0:
            continue
        wy = _sphere_moment(my)
        if wy == 0.0:
            continue
        A = p - 1 + sum(mx)
        B = q - 1 + sum(my)
        if pipeline == "polar":
            val = _radial_integral(A + B, sigma, a) * _angular_integral(A, B, sigma, region)
        elif pipeline == "grid":
            val = _bipolar_integral_grid(A, B, sigma, a, region)
        else:
            raise ValueError(f"unknown pipeline {pipeline!r}")
        total += complex(float(re), float(im)) * wx * wy * val
    return total


@dataclass
class ZetaCheckReport:
    p: int
    q: int
    s: float
    lhs: dict
    rhs: dict
    rel_errors: dict
    gs_residuals: dict
    pipeline_gap: float

    @property
    def max_rel_error(self) -> float:
        return max(self.rel_errors.values())


def numeric_zeta_check(p: int, q: int, s: float, g: GaussianTest,
                       tol_pipeline: float = 1e-6) -> ZetaCheckReport:
    """Verify the quadratic-space Fourier functional equation by pairing
    against the test function, in the absolutely convergent strip."""
    n = p + q
    if not (s > -1.0 and -s - n / 2 > -1.0):
        raise ValueError(
            "both pairings must be absolutely convergent: need s > -1 and "
            f"-s - n/2 > -1 (empty for n >= 4; for n = 3 the strip is (-1, -1/2)), got s={s}, n={n}"
        )
    fg = fourier_gaussian(g)
    fscale = fourier_gaussian_scale(g)
    gam = gamma_quad_value(n, s)
    A = A_matrix_pq(p, q, s)
    sig2 = -s - n / 2

    lhs = {}
    rhs = {}
    rel = {}
    pair_g = {
        "+": pair_power_with(g, p, q, sig2, "+"),
        "-": pair_power_with(g, p, q, sig2, "-"),
    }
    for i, eps in enumerate(("+", "-")):
        left = fscale * pair_power_with(fg, p, q, s, eps)
        right = gam * (A[i][0] * pair_g["+"] + A[i][1] * pair_g["-"])
        lhs[eps] = left
        rhs[eps] = right
        denom = max(abs(left), abs(right), 1e-30)
        rel[eps] = abs(left - right) / denom

    # one-sided forms (independent identity shape)
    gs = {}
    left_p = fscale * pair_power_with(fg, p, q, s, "+", region_override="plus")
    right_p = gam * (
        -math.sin((q / 2 + s) * math.pi) * pair_power_with(g, p, q, sig2, "+", region_override="plus")
        + math.sin(p * math.pi / 2) * pair_power_with(g, p, q, sig2, "+", region_override="minus")
    )
    gs["plus"] = abs(left_p - right_p) / max(abs(left_p), abs(right_p), 1e-30)
    left_m = fscale * pair_power_with(fg, p, q, s, "+", region_override="minus")
    right_m = gam * (
        math.sin(q * math.pi / 2) * pair_power_with(g, p, q, sig2, "+", region_override="plus")
        - math.sin((s + p / 2) * math.pi) * pair_power_with(g, p, q, sig2, "+", region_override="minus")
    )
    gs["minus"] = abs(left_m - right_m) / max(abs(left_m), abs(right_m), 1e-30)

    # the two quadrature pipelines must agree
    a_pol = pair_power_with(g, p, q, sig2, "+", pipeline="polar")
    a_grd = pair_power_with(g, p, q, sig2, "+", pipeline="grid")
    gap = abs(a_pol - a_grd) / max(abs(a_pol), abs(a_grd), 1e-30)
    if gap > tol_pipeline:
        raise ArithmeticError(f"quadrature pipelines disagree: {gap:.2e}")

    return ZetaCheckReport(p, q, s, lhs, rhs, rel, gs, gap)
