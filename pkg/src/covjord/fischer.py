"""Fischer pairing, derivative spaces and the product-rule expansion.

The operator attached to a polynomial p is literal substitution of partial
derivatives for the coordinates (the chart carries the standard dot
product; trace-form conventions enter elsewhere through dual polynomials).
All scalar arithmetic is exact.

Bases of derivative spaces are orthogonalized but not normalized, so every
coefficient stays rational; the expansion formulas carry the inverse Gram
diagonal instead of assuming orthonormality.
"""

from __future__ import annotations

from fractions import Fraction
from .polynomials import MPoly, Monomial, VariableMismatchError
from .scalars import ParamPoly


class EmptySpaceError(ValueError):
    """Derivative space of the zero polynomial requested."""


def apply_diffop(p: MPoly, q: MPoly) -> MPoly:
    """Apply p(d/dx) to q, substituting d/dx_i for x_i in p literally."""
    if p.vars != q.vars:
        raise VariableMismatchError(f"variable lists differ: {p.vars} vs {q.vars}")
    out = MPoly.zero(q.vars)
    for mono, coeff in p.terms.items():
        d = q.diff_multi(mono)
        if not d.is_zero():
            out = out + d.scale(coeff)
    return out


def fischer_inner(p: MPoly, q: MPoly) -> ParamPoly:
    """(p, q)_F = (p(d/dx) q)(0)."""
    if p.vars != q.vars:
        raise VariableMismatchError(f"variable lists differ: {p.vars} vs {q.vars}")
    total = ParamPoly.zero()
    for mono, coeff in p.terms.items():
        other = q.terms.get(mono)
        if other is not None:
            fact = Fraction(1)
            for e in mono:
                for k in range(2, e + 1):
                    fact *= k
            total = total + coeff * other * fact
    return total


def _poly_vector(p: MPoly, index: dict[Monomial, int], size: int) -> list[Fraction]:
    v = [Fraction(0)] * size
    for m, c in p.terms.items():
        v[index[m]] = c.constant_value()
    return v


def _independent(vecs: list[list[Fraction]], cand: list[Fraction]) -> list[Fraction] | None:
    """Reduce cand against the row-echelon rows in vecs; return the reduced
    row if independent, else None.  vecs rows are kept pivot-normalized."""
    row = list(cand)
    for basis in vecs:
        pivot = next(i for i, x in enumerate(basis) if x != 0)
        if row[pivot] != 0:
            f = row[pivot]
            for i in range(len(row)):
                row[i] -= f * basis[i]
    for i, x in enumerate(row):
        if x != 0:
            inv = Fraction(1) / x
            return [y * inv for y in row]
    return None


def derivative_space(p: MPoly) -> list[MPoly]:
    """Basis of the smallest subspace containing p that is closed under all
    partial derivatives (order-0 included, so p itself is in the span).

    Input must be parameter-free.  The returned basis is ordered by
    decreasing homogeneous degree of the generating derivatives; for
    homogeneous p every basis element is homogeneous.
    """
    if p.is_zero():
        raise EmptySpaceError("derivative space of the zero polynomial")
    for c in p.terms.values():
        if not c.is_constant():
            raise ValueError("derivative_space needs a parameter-free polynomial")

    # Collect all iterated partial derivatives (finitely many are nonzero).
    queue = [p]
    collected: list[MPoly] = []
    seen_monos: dict[Monomial, int] = {}
    while queue:
        q = queue.pop()
        collected.append(q)
        for m in q.terms:
            seen_monos.setdefault(m, len(seen_monos))
        for i in range(len(p.vars)):
            d = q.diff(i)
            if not d.is_zero():
                queue.append(d)

    size = len(seen_monos)
    echelon: list[list[Fraction]] = []
    basis: list[MPoly] = []
    for q in collected:
        row = _independent(echelon, _poly_vector(q, seen_monos, size))
        if row is not None:
            echelon.append(row)
            basis.append(q)
    basis.sort(key=lambda q: (-q.total_degree(), sorted(q.terms)))
    return basis


def derivative_space_graded(p: MPoly) -> dict[int, list[MPoly]]:
    """Derivative-space basis split by homogeneous degree (p homogeneous)."""
    if not p.is_homogeneous():
        raise ValueError("graded derivative space needs a homogeneous polynomial")
    graded: dict[int, list[MPoly]] = {}
    for q in derivative_space(p):
        graded.setdefault(q.total_degree(), []).append(q)
    return graded


def flat(p: MPoly, generator: MPoly) -> MPoly:
    """p-flat with respect to the generator: p(d/dx) applied to it."""
    return apply_diffop(p, generator)


class LeibnitzExpansion:
    """Expansion machinery for one generator polynomial.

    Holds an orthogonal (not orthonormal) Fischer basis of the generator's
    derivative space, the inverse Gram diagonal, and the structure
    coefficients; expand/expand3 rebuild the generator's operator applied to
    a product of two or three factors.
    """

    def __init__(self, generator: MPoly):
        self.generator = generator
        raw = derivative_space(generator)
        # Gram-Schmidt over Q, keeping squared norms instead of normalizing.
        basis: list[MPoly] = []
        norms: list[Fraction] = []
        for q in raw:
            w = q
            for b, nb in zip(basis, norms):
                c = fischer_inner(w, b).constant_value()
                if c:
                    w = w - b.scale(c / nb)
            if not w.is_zero():
                n = fischer_inner(w, w).constant_value()
                if n:
                    basis.append(w)
                    norms.append(n)
        self.basis = basis
        self.norms = norms
        self._pair: dict[tuple[int, int], Fraction] = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pair_coeff(self, i: int, j: int) -> Fraction:
        """(generator, p_i p_j)_F, cached."""
        key = (min(i, j), max(i, j))
        c = self._pair.get(key)
        if c is None:
            c = fischer_inner(self.generator, self.basis[i] * self.basis[j]).constant_value()
            self._pair[key] = c
        return c

    def coeff2(self, i: int, j: int) -> Fraction:
        """Coefficient of (p_i(d)f)(p_j(d)g) in the two-factor expansion."""
        return self.pair_coeff(i, j) / (self.norms[i] * self.norms[j])

    def coeff3(self, i: int, j: int, k: int) -> Fraction:
        """Coefficient a_ijk of the three-factor expansion."""
        total = Fraction(0)
        for l in range(self.dim):
            c1 = self.pair_coeff(i, l)
            if not c1:
                continue
            c2 = fischer_inner(self.basis[l], self.basis[j] * self.basis[k]).constant_value()
            if c2:
                total += c1 * c2 / (self.norms[i] * self.norms[l] * self.norms[j] * self.norms[k])
        return total

    def expand(self, f: MPoly, g: MPoly) -> MPoly:
        out = MPoly.zero(f.vars)
        derivatives_f = [apply_diffop(b, f) for b in self.basis]
        derivatives_g = [apply_diffop(b, g) for b in self.basis]
        for i, df in enumerate(derivatives_f):
            if df.is_zero():
                continue
            for j, dg in enumerate(derivatives_g):
                if dg.is_zero():
                    continue
                c = self.coeff2(i, j)
                if c:
                    out = out + (df * dg).scale(c)
        return out

    def expand3(self, f: MPoly, g: MPoly, h: MPoly) -> MPoly:
        out = MPoly.zero(f.vars)
        dfs = [apply_diffop(b, f) for b in self.basis]
        dgs = [apply_diffop(b, g) for b in self.basis]
        dhs = [apply_diffop(b, h) for b in self.basis]
        for i, df in enumerate(dfs):
            if df.is_zero():
                continue
            for j, dg in enumerate(dgs):
                if dg.is_zero():
                    continue
                fg = df * dg
                for k, dh in enumerate(dhs):
                    if dh.is_zero():
                        continue
                    c = self.coeff3(i, j, k)
                    if c:
                        out = out + (fg * dh).scale(c)
        return out


def leibnitz_expand(generator: MPoly, f: MPoly, g: MPoly) -> MPoly:
    """Generator(d/dx)(f*g) rebuilt through the derivative-space expansion."""
    return LeibnitzExpansion(generator).expand(f, g)
