"""Conformal machinery for the quadratic-space algebras R^(p,q).

The ambient space is W = R x V x R with the quadratic form
Q(alpha, v, beta) = P(v) - alpha*beta of signature (p+1, q+1).  Points of V
embed as kappa(v) = [(1, v, P(v))]; the orthogonal group of Q acts
rationally on V through this embedding, with the cocycle
a(g, x) = alpha(g kappa(x)).  Everything here is exact: matrices are
Fraction-valued, the infinitesimal operators live in the Weyl algebra over
the scalar ring, and covariance residuals are certified as the zero
operator.

For the matrix families the full group is not built; the determinant
covariance and cocycle chain rule are checked directly on words of
generators (translations, dilations, inversion) using the Jordan
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import jordan as jd
from .polynomials import MPoly, Monomial, double_vars
from .scalars import LAM, MU, ParamPoly
from .weyl import DiffOp

Matrix = tuple[tuple[Fraction, ...], ...]


class PointAtInfinityError(ArithmeticError):
    """Rational action undefined at the point (cocycle vanishes)."""


class SingularityError(ArithmeticError):
    """Kernel evaluated on the light cone."""


def _freeze(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    m = len(A)
    k = len(B[0])
    return tuple(
        tuple(sum(A[i][l] * B[l][j] for l in range(len(B))) for j in range(k))
        for i in range(m)
    )


def mat_transpose(A: Matrix) -> Matrix:
    return tuple(tuple(A[j][i] for j in range(len(A))) for i in range(len(A[0])))


def mat_scale(A: Matrix, c: Fraction) -> Matrix:
    return tuple(tuple(v * c for v in row) for row in A)


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


@dataclass(eq=False)
class QuadricModel:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 2 or self.q < 1:
            raise ValueError("quadratic-space model needs p >= 2 and q >= 1")
        self.n = self.p + self.q
        self.algebra = jd.rpq_algebra(self.p, self.q)
        self.signs = tuple([Fraction(1)] * self.p + [Fraction(-1)] * self.q)
        m = self.n + 2
        J = [[Fraction(0)] * m for _ in range(m)]
        J[0][m - 1] = J[m - 1][0] = Fraction(-1, 2)
        for i in range(self.n):
            J[i + 1][i + 1] = self.signs[i]
        self.J = _freeze(J)
        self.Jinv = _freeze(self._invert(J))
        self.dim_g = (m - 1) * m // 2

    @staticmethod
    def _invert(J):
        m = len(J)
        inv = [[Fraction(0)] * m for _ in range(m)]
        inv[0][m - 1] = inv[m - 1][0] = Fraction(-2)
        for i in range(1, m - 1):
            inv[i][i] = Fraction(1) / J[i][i]
        return inv

    # -- membership checks ---------------------------------------------------

    def is_conformal(self, g: Matrix) -> bool:
        return mat_mul(mat_transpose(g), mat_mul(self.J, g)) == self.J

    def is_lie(self, X: Matrix) -> bool:
        JX = mat_mul(self.J, X)
        return mat_transpose(JX) == mat_scale(JX, Fraction(-1))

    # -- generators -----------------------------------------------------------

    def translation(self, a: Sequence[Fraction]) -> Matrix:
        n = self.n
        a = [Fraction(v) for v in a]
        rows = [[Fraction(0)] * (n + 2) for _ in range(n + 2)]
        rows[0][0] = Fraction(1)
        for i in range(n):
            rows[i + 1][0] = a[i]
            rows[i + 1][i + 1] = Fraction(1)
        rows[n + 1][0] = sum(self.signs[i] * a[i] * a[i] for i in range(n))
        for j in range(n):
            rows[n + 1][j + 1] = 2 * self.signs[j] * a[j]
        rows[n + 1][n + 1] = Fraction(1)
        return _freeze(rows)

    def dilation(self, t: Fraction) -> Matrix:
        t = Fraction(t)
        if t == 0:
            raise ValueError("dilation scale must be nonzero")
        n = self.n
        rows = [[Fraction(0)] * (n + 2) for _ in range(n + 2)]
        rows[0][0] = Fraction(1) / t
        for i in range(n):
            rows[i + 1][i + 1] = Fraction(1)
        rows[n + 1][n + 1] = t
        return _freeze(rows)

    def rotation(self, h: Sequence[Sequence[Fraction]]) -> Matrix:
        """Block embedding of h in the isometry group of the form P."""
        n = self.n
        h = _freeze(h)
        S = tuple(tuple(self.signs[i] if i == j else Fraction(0) for j in range(n)) for i in range(n))
        if mat_mul(mat_transpose(h), mat_mul(S, h)) != S:
            raise ValueError("block is not an isometry of the quadratic form")
        rows = [[Fraction(0)] * (n + 2) for _ in range(n + 2)]
        rows[0][0] = Fraction(1)
        rows[n + 1][n + 1] = Fraction(1)
        for i in range(n):
            for j in range(n):
                rows[i + 1][j + 1] = h[i][j]
        return _freeze(rows)

    def inversion(self) -> Matrix:
        n = self.n
        rows = [[Fraction(0)] * (n + 2) for _ in range(n + 2)]
        rows[0][n + 1] = Fraction(1)
        rows[n + 1][0] = Fraction(1)
        rows[1][1] = Fraction(-1)
        for i in range(1, n):
            rows[i + 1][i + 1] = Fraction(1)
        return _freeze(rows)

    # -- embedding, action, cocycle -------------------------------------------

    def P_value(self, x: Sequence[Fraction]) -> Fraction:
        return sum(s * Fraction(v) * Fraction(v) for s, v in zip(self.signs, x))

    def kappa(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        x = [Fraction(v) for v in x]
        return tuple([Fraction(1)] + x + [self.P_value(x)])

    def cocycle(self, g: Matrix, x: Sequence[Fraction]) -> Fraction:
        w = self.kappa(x)
        return sum(g[0][k] * w[k] for k in range(self.n + 2))

    def act(self, g: Matrix, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        w = self.kappa(x)
        img = tuple(sum(g[i][k] * w[k] for k in range(self.n + 2)) for i in range(self.n + 2))
        if img[0] == 0:
            raise PointAtInfinityError("group element undefined at the point")
        return tuple(img[i] / img[0] for i in range(1, self.n + 1))

    # -- Lie algebra ------------------------------------------------------------

    def lie_basis(self) -> list[Matrix]:
        m = self.n + 2
        out = []
        for a in range(m):
            for b in range(a + 1, m):
                E = [[Fraction(0)] * m for _ in range(m)]
                E[a][b] = Fraction(1)
                E[b][a] = Fraction(-1)
                X = mat_mul(self.Jinv, _freeze(E))
                out.append(X)
        return out

    def translation_generator(self, a: Sequence[Fraction]) -> Matrix:
        n = self.n
        a = [Fraction(v) for v in a]
        rows = [[Fraction(0)] * (n + 2) for _ in range(n + 2)]
        for i in range(n):
            rows[i + 1][0] = a[i]
            rows[n + 1][i + 1] = 2 * self.signs[i] * a[i]
        return _freeze(rows)

    def bracket(self, X: Matrix, Y: Matrix) -> Matrix:
        return mat_sub(mat_mul(X, Y), mat_mul(Y, X))


# ---------------------------------------------------------------------------
# infinitesimal principal-series operators


@dataclass(frozen=True)
class InducedOp:
    """First-order operator -sum v_j(x) d_j + weight * sigma(x); the vector
    field has coefficient degree <= 2 and sigma degree <= 1 (enforced)."""

    op: DiffOp
    sigma: MPoly
    field: tuple[MPoly, ...]

    def __post_init__(self):
        if self.op.order() > 1:
            raise ValueError("induced operator must be of order <= 1")
        if self.sigma.total_degree() > 1:
            raise ValueError("multiplier degree must be <= 1")
        for v in self.field:
            if v.total_degree() > 2:
                raise ValueError("vector-field coefficients must have degree <= 2")


def dpi(model: QuadricModel, X: Matrix, weight: ParamPoly | None = None,
        vars: Sequence[str] | None = None, offset: int = 0) -> InducedOp:
    """Infinitesimal representation operator for X at the given weight.

    The slot occupies vars[offset : offset+n]; kappa is expanded to first
    order, so sigma(x) is the alpha-row of X kappa(x) and the vector field
    is the V-part minus sigma(x) x."""
    n = model.n
    if weight is None:
        weight = LAM
    if vars is None:
        vars = model.algebra.vars
    vars = tuple(vars)
    slot = vars[offset : offset + n]
    xs = [MPoly.variable(vars, v) for v in slot]
    Pslot = MPoly.zero(vars)
    for i in range(n):
        Pslot = Pslot + (xs[i] * xs[i]).scale(model.signs[i])
    kappa_syms = [MPoly.constant(vars, 1)] + xs + [Pslot]

    def row(i: int) -> MPoly:
        acc = MPoly.zero(vars)
        for k in range(n + 2):
            c = X[i][k]
            if c:
                acc = acc + kappa_syms[k].scale(c)
        return acc

    sigma = row(0)
    field = []
    terms: dict[Monomial, MPoly] = {}
    for i in range(n):
        vi = row(i + 1) - sigma * xs[i]
        field.append(vi)
        if not vi.is_zero():
            b = [0] * len(vars)
            b[vars.index(slot[i])] = 1
            terms[tuple(b)] = -vi
    mult = sigma.scale(weight)
    if not mult.is_zero():
        terms[(0,) * len(vars)] = terms.get((0,) * len(vars), MPoly.zero(vars)) + mult
    return InducedOp(DiffOp(vars, terms), sigma, tuple(field))


def dpi_tensor(model: QuadricModel, X: Matrix, weight_x: ParamPoly,
               weight_y: ParamPoly) -> DiffOp:
    """d(pi_wx (x) pi_wy)(X) on the doubled chart."""
    dvars = double_vars(model.algebra.vars)
    ox = dpi(model, X, weight_x, dvars, 0).op
    oy = dpi(model, X, weight_y, dvars, model.n).op
    return ox + oy


def dpi_diagonal_lift(model: QuadricModel, X: Matrix, weight: ParamPoly) -> DiffOp:
    """Single-slot operator lifted through the restriction: each d_j becomes
    dx_j + dy_j and the coefficients stay functions of the x-slot."""
    dvars = double_vars(model.algebra.vars)
    n = model.n
    ind = dpi(model, X, weight, dvars, 0)
    terms: dict[Monomial, MPoly] = {}
    for i, vi in enumerate(ind.field):
        if vi.is_zero():
            continue
        for shift in (0, n):
            b = [0] * len(dvars)
            b[i + shift] = 1
            key = tuple(b)
            prev = terms.get(key)
            terms[key] = -vi if prev is None else prev - vi
    mult = ind.sigma.scale(weight)
    if not mult.is_zero():
        terms[(0,) * len(dvars)] = mult
    return DiffOp(dvars, terms)


# ---------------------------------------------------------------------------
# restriction to the diagonal


def diagonal_substitute(f: MPoly, n: int) -> MPoly:
    """Substitute y -> x on a doubled chart (y-exponents fold onto x)."""
    out: dict[Monomial, ParamPoly] = {}
    for m, c in f.terms.items():
        nm = list(m)
        for i in range(n):
            nm[i] += nm[n + i]
            nm[n + i] = 0
        key = tuple(nm)
        prev = out.get(key)
        out[key] = c if prev is None else prev + c
    return MPoly(f.vars, out)


@dataclass(frozen=True)
class RestrictedOp:
    """Operator from functions on V x V to functions on V: restriction of a
    doubled-chart operator, with diagonal-substituted coefficients and the
    dx/dy slots kept distinct.  This canonical form is faithful."""

    vars: tuple[str, ...]
    n: int
    terms: tuple  # sorted ((beta, coeff MPoly) ...)

    @classmethod
    def from_op(cls, op: DiffOp, n: int) -> "RestrictedOp":
        items = []
        for b, c in op.terms.items():
            cc = diagonal_substitute(c, n)
            if not cc.is_zero():
                items.append((b, cc))
        items.sort(key=lambda bc: bc[0])
        return cls(op.vars, n, tuple(items))

    def is_zero(self) -> bool:
        return not self.terms

    def apply(self, f: MPoly) -> MPoly:
        """Action: differentiate on the doubled chart, then set y = x (the
        result is returned on the doubled chart with empty y-slot)."""
        out = MPoly.zero(self.vars)
        for b, c in self.terms:
            d = f.diff_multi(b)
            if not d.is_zero():
                out = out + c * diagonal_substitute(d, self.n)
        return out

    def sub(self, other: "RestrictedOp") -> "RestrictedOp":
        a = dict(self.terms)
        for b, c in other.terms:
            prev = a.get(b)
            nc = -c if prev is None else prev - c
            if nc.is_zero():
                a.pop(b, None)
            else:
                a[b] = nc
        return RestrictedOp(self.vars, self.n, tuple(sorted(a.items(), key=lambda bc: bc[0])))

    def scale(self, c) -> "RestrictedOp":
        return RestrictedOp(self.vars, self.n,
                            tuple((b, co.scale(c)) for b, co in self.terms))


def restrict(op: DiffOp, n: int) -> RestrictedOp:
    return RestrictedOp.from_op(op, n)


# ---------------------------------------------------------------------------
# covariance residuals (exact zero-operator certificates)


def covariance_residual(model: QuadricModel, op: DiffOp, X: Matrix,
                        source: tuple[ParamPoly, ParamPoly],
                        target: tuple[ParamPoly, ParamPoly]) -> DiffOp:
    """op . d(pi_src)(X) - d(pi_tgt)(X) . op in the Weyl algebra."""
    src = dpi_tensor(model, X, source[0], source[1])
    tgt = dpi_tensor(model, X, target[0], target[1])
    return op.compose(src) - tgt.compose(op)


def covariance_residual_F(model: QuadricModel, F: DiffOp, X: Matrix) -> DiffOp:
    return covariance_residual(model, F, X, (LAM, MU), (LAM + 1, MU + 1))


def bracket_covariance_residual(model: QuadricModel, chain: DiffOp, X: Matrix,
                                total_shift: int) -> RestrictedOp:
    """res(chain . d(pi_lam (x) pi_mu)(X)) - res(d(pi_(lam+mu+shift))(X) . chain).

    The diagonal substitution is a ring homomorphism, so it is pushed into
    the compositions (coefficients restrict before the products form)."""
    n = model.n
    diag = lambda f: diagonal_substitute(f, n)
    src = dpi_tensor(model, X, LAM, MU)
    lhs = restrict(chain.compose(src, coeff_map=diag), n)
    lifted = dpi_diagonal_lift(model, X, LAM + MU + total_shift)
    rhs = restrict(lifted.compose(chain, coeff_map=diag), n)
    return lhs.sub(rhs)


def restriction_covariance_residual(model: QuadricModel, X: Matrix) -> RestrictedOp:
    """res . d(pi_lam (x) pi_mu)(X) - d(pi_(lam+mu))(X) . res, exactly."""
    src = dpi_tensor(model, X, LAM, MU)
    lhs = restrict(src, model.n)
    rhs = restrict(dpi_diagonal_lift(model, X, LAM + MU), model.n)
    return lhs.sub(rhs)


def covariance_apply_check(model: QuadricModel, op: DiffOp, X: Matrix,
                           source: tuple[ParamPoly, ParamPoly],
                           target: tuple[ParamPoly, ParamPoly], max_deg: int) -> bool:
    """Application form: both sides agree on all monomials up to max_deg."""
    residual = covariance_residual(model, op, X, source, target)
    dvars = double_vars(model.algebra.vars)
    nv = len(dvars)
    out: list[Monomial] = []

    def walk(prefix, pos, budget):
        if pos == nv:
            out.append(tuple(prefix))
            return
        for e in range(budget + 1):
            prefix.append(e)
            walk(prefix, pos + 1, budget - e)
            prefix.pop()

    walk([], 0, max_deg)
    for m in out:
        if not residual.apply(MPoly.monomial(dvars, m)).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# determinant covariance and cocycle chains on the matrix families


@dataclass(frozen=True)
class Translation:
    a: tuple


@dataclass(frozen=True)
class Dilation:
    t: Fraction
    cocycle_value: Fraction


@dataclass(frozen=True)
class Inversion:
    pass


def dilation_generator(algebra: jd.AlgebraDescriptor, t: Fraction) -> Dilation:
    """Dilation by t with the exact covering cocycle t^(-r/2); for odd rank
    t must be a perfect rational square."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("dilation scale must be positive for the covering group")
    r = algebra.r
    if r % 2 == 0:
        return Dilation(t, t ** (-(r // 2)))
    num = _exact_sqrt(t.numerator)
    den = _exact_sqrt(t.denominator)
    if num is None or den is None:
        raise ValueError("odd-rank dilation cocycle needs a perfect-square scale")
    root = Fraction(num, den)
    return Dilation(t, root ** (-r))


def _exact_sqrt(k: int) -> int | None:
    if k < 0:
        return None
    r = int(k**0.5)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c * c == k:
            return c
    return None


class ConformalWord:
    """Word of generators acting on a matrix-family algebra; the rightmost
    generator acts first.  The cocycle follows the chain rule."""

    def __init__(self, algebra: jd.AlgebraDescriptor, gens: Sequence):
        self.algebra = algebra
        self.gens = tuple(gens)

    def _step(self, gen, x: jd.JordanElement) -> tuple[jd.JordanElement, Fraction]:
        if isinstance(gen, Translation):
            a = jd.element(self.algebra, list(gen.a))
            return jd.add(x, a), Fraction(1)
        if isinstance(gen, Dilation):
            return jd.scale(x, gen.t), gen.cocycle_value
        if isinstance(gen, Inversion):
            y = jd.scale(jd.inverse(x), -1)
            return y, jd.det(x)
        raise TypeError(f"unknown generator {gen!r}")

    def apply(self, x: jd.JordanElement) -> jd.JordanElement:
        for gen in reversed(self.gens):
            x, _ = self._step(gen, x)
        return x

    def cocycle(self, x: jd.JordanElement) -> Fraction:
        total = Fraction(1)
        for gen in reversed(self.gens):
            x, a = self._step(gen, x)
            total *= a
        return total


def hua_check(algebra: jd.AlgebraDescriptor, x: jd.JordanElement,
              y: jd.JordanElement) -> bool:
    """det(iota(x) - iota(y)) det(x) det(y) = det(x - y), exactly."""
    ix = jd.scale(jd.inverse(x), -1)
    iy = jd.scale(jd.inverse(y), -1)
    lhs = jd.det(jd.sub(ix, iy)) * jd.det(x) * jd.det(y)
    return lhs == jd.det(jd.sub(x, y))


def covdet_check(algebra: jd.AlgebraDescriptor, word: ConformalWord,
                 x: jd.JordanElement, y: jd.JordanElement) -> bool:
    """det(g(x) - g(y)) = a(g,x)^-1 det(x-y) a(g,y)^-1 along a word."""
    gx, gy = word.apply(x), word.apply(y)
    ax, ay = word.cocycle(x), word.cocycle(y)
    return jd.det(jd.sub(gx, gy)) * ax * ay == jd.det(jd.sub(x, y))


# ---------------------------------------------------------------------------
# Knapp-Stein kernel (numeric)


def knapp_stein_kernel(algebra: jd.AlgebraDescriptor, lam: float, eps: str,
                       x: jd.JordanElement, y: jd.JordanElement) -> float:
    """Kernel det(x-y)^(-2n/r + lam, eps) at rational points."""
    dv = jd.det(jd.sub(x, y))
    if dv == 0:
        raise SingularityError("kernel evaluated on the light cone")
    sigma = -2.0 * algebra.n / algebra.r + float(lam)
    mag = abs(float(dv)) ** sigma
    if eps == "+":
        return mag
    if eps == "-":
        return mag if dv > 0 else -mag
    raise ValueError("epsilon must be '+' or '-'")
