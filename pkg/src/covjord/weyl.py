"""Normal-ordered differential operators with polynomial coefficients.

A DiffOp maps derivative multi-exponents to MPoly coefficients and denotes
sum_beta  c_beta(x) d^beta  (multiplication left, differentiation right).
Composition rewrites into this normal form through the commutation rule
[d_i, x_i] = 1.  The formal Fourier constant tau lets conjugation by the
Fourier transform act as the ring automorphism d_j -> -tau x_j,
x_j -> tau^-1 d_j, exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .polynomials import MPoly, Monomial, VariableMismatchError
from .scalars import LAM, MU, ParamPoly


class ConventionError(ArithmeticError):
    """Residual formal-constant dependence where none is allowed."""


class DiffOp:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[Monomial, MPoly] | None = None):
        self.vars = tuple(vars)
        out: dict[Monomial, MPoly] = {}
        if terms:
            for b, c in terms.items():
                if c.vars != self.vars:
                    raise VariableMismatchError("coefficient chart differs from operator chart")
                if not c.is_zero():
                    out[tuple(b)] = c
        self.terms = out

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "DiffOp":
        return cls(vars)

    @classmethod
    def identity(cls, vars: Sequence[str]) -> "DiffOp":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): MPoly.constant(vars, 1)})

    @classmethod
    def multiplication(cls, f: MPoly) -> "DiffOp":
        return cls(f.vars, {(0,) * len(f.vars): f})

    @classmethod
    def derivative(cls, vars: Sequence[str], index: int, order: int = 1) -> "DiffOp":
        vars = tuple(vars)
        b = [0] * len(vars)
        b[index] = order
        return cls(vars, {tuple(b): MPoly.constant(vars, 1)})

    @classmethod
    def from_symbol(cls, symbol: MPoly) -> "DiffOp":
        """Constant-coefficient operator p(d) from the polynomial p."""
        vars = symbol.vars
        return cls(vars, {m: MPoly.constant(vars, c) for m, c in symbol.terms.items()})

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        return max((sum(b) for b in self.terms), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset((b, hash(c)) for b, c in self.terms.items())))

    # -- linear operations ----------------------------------------------------

    def __add__(self, other: "DiffOp") -> "DiffOp":
        if self.vars != other.vars:
            raise VariableMismatchError("operators over different charts")
        out = dict(self.terms)
        for b, c in other.terms.items():
            nc = out.get(b)
            nc = c if nc is None else nc + c
            if nc.is_zero():
                out.pop(b, None)
            else:
                out[b] = nc
        res = DiffOp.__new__(DiffOp)
        res.vars, res.terms = self.vars, out
        return res

    def __neg__(self) -> "DiffOp":
        res = DiffOp.__new__(DiffOp)
        res.vars = self.vars
        res.terms = {b: -c for b, c in self.terms.items()}
        return res

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def scale(self, c) -> "DiffOp":
        return DiffOp(self.vars, {b: coeff.scale(c) for b, coeff in self.terms.items()})

    # -- action and composition ---------------------------------------------

    def apply(self, f: MPoly) -> MPoly:
        if f.vars != self.vars:
            raise VariableMismatchError("operand chart differs from operator chart")
        out = MPoly.zero(self.vars)
        for b, c in self.terms.items():
            d = f.diff_multi(b)
            if not d.is_zero():
                out = out + c * d
        return out

    def compose(self, other: "DiffOp", coeff_map=None) -> "DiffOp":
        """self after other: apply(compose(A,B), f) = A(B(f)).

        Normal ordering through d^beta (b(x) d^gamma) =
        sum_{delta <= beta} C(beta,delta) (d^delta b) d^(beta-delta+gamma);
        the nonzero derivatives of each right-hand coefficient are tabled
        once, up to the order of the left factor.

        coeff_map, when given, is a ring homomorphism applied to every
        coefficient before the products are formed (used to compose under
        the diagonal restriction without building the full operator)."""
        if self.vars != other.vars:
            raise VariableMismatchError("operators over different charts")
        nvars = len(self.vars)
        rng = range(nvars)
        max_depth = max((sum(b) for b in self.terms), default=0)
        tables: list[tuple[Monomial, list[tuple[Monomial, MPoly]]]] = []
        for gamma, b in other.terms.items():
            tab: dict[Monomial, MPoly] = {(0,) * nvars: b}
            frontier = dict(tab)
            depth = 0
            while frontier and depth < max_depth:
                nxt: dict[Monomial, MPoly] = {}
                for delta, poly in frontier.items():
                    for i in rng:
                        nd = delta[:i] + (delta[i] + 1,) + delta[i + 1 :]
                        if nd in tab or nd in nxt:
                            continue
                        dp = poly.diff(i)
                        if not dp.is_zero():
                            nxt[nd] = dp
                tab.update(nxt)
                frontier = nxt
                depth += 1
            if coeff_map is not None:
                entries = [(d, coeff_map(p)) for d, p in tab.items()]
                entries = [(d, p) for d, p in entries if not p.is_zero()]
            else:
                entries = list(tab.items())
            tables.append((gamma, entries))
        acc: dict[Monomial, MPoly] = {}
        for beta, a in self.terms.items():
            if coeff_map is not None:
                a = coeff_map(a)
                if a.is_zero():
                    continue
            for gamma, tab in tables:
                for delta, db in tab:
                    mult = 1
                    ok = True
                    for bi, di in zip(beta, delta):
                        if di:
                            if di > bi:
                                ok = False
                                break
                            mult *= comb(bi, di)
                    if not ok:
                        continue
                    key = tuple(beta[k] - delta[k] + gamma[k] for k in rng)
                    coeff = a * db
                    if mult != 1:
                        coeff = coeff.scale(Fraction(mult))
                    prev = acc.get(key)
                    acc[key] = coeff if prev is None else prev + coeff
        return DiffOp(self.vars, {b: c for b, c in acc.items() if not c.is_zero()})

    # -- parameter plumbing ----------------------------------------------------

    def subs_params(self, images: Mapping[str, ParamPoly]) -> "DiffOp":
        return DiffOp(self.vars, {b: c.subs_params(images) for b, c in self.terms.items()})

    def fold_tau(self, tau_squared=Fraction(-1)) -> "DiffOp":
        return DiffOp(self.vars, {b: c.fold_tau(tau_squared) for b, c in self.terms.items()})

    def tau_degrees(self) -> set[int]:
        degs: set[int] = set()
        for c in self.terms.values():
            for coeff in c.terms.values():
                degs |= coeff.tau_degrees()
        return degs

    def shift_tau(self, k: int) -> "DiffOp":
        if k == 0:
            return self
        tau_k = ParamPoly({(0, 0, 0, 0, k): Fraction(1)})
        return self.scale(tau_k)

    # -- display ---------------------------------------------------------------

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for b in sorted(self.terms, key=lambda m: (sum(m), m), reverse=True):
            dstr = "".join(
                f"d{self.vars[i]}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(b) if e
            )
            cs = str(self.terms[b])
            if " " in cs:
                cs = f"({cs})"
            parts.append(f"{cs}*{dstr}" if dstr else cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffOp({self.pretty()})"


# ---------------------------------------------------------------------------
# Fourier conjugation


def _tau_power(k: int) -> ParamPoly:
    return ParamPoly({(0, 0, 0, 0, k): Fraction(1)})


def fourier_conjugate(op: DiffOp, inverse: bool = False) -> DiffOp:
    """Conjugation by the Fourier transform as a Weyl-algebra automorphism.

    Forward:  d_j -> -tau x_j,   x_j -> tau^-1 d_j.
    Inverse:  d_j ->  tau x_j,   x_j -> -tau^-1 d_j.
    """
    vars = op.vars
    n = len(vars)
    out = DiffOp.zero(vars)
    x_sign = Fraction(-1 if inverse else 1)
    d_sign = Fraction(1 if inverse else -1)
    for beta, coeff in op.terms.items():
        # image of the multiplication part: coeff evaluated on (+-tau^-1 d)
        co_terms: dict[Monomial, MPoly] = {}
        for mono, c in coeff.terms.items():
            deg = sum(mono)
            scalar = c * _tau_power(-deg) * (x_sign ** deg)
            prev = co_terms.get(mono)
            add = MPoly(vars, {(0,) * n: scalar})
            co_terms[mono] = add if prev is None else prev + add
        coeff_image = DiffOp(vars, co_terms)
        # image of the derivative part: product of (-+tau x_j)^(beta_j)
        deg = sum(beta)
        mult_poly = MPoly(vars, {beta: _tau_power(deg) * (d_sign ** deg)})
        term_image = coeff_image.compose(DiffOp.multiplication(mult_poly))
        out = out + term_image
    return out


def declared_tau_power(op: DiffOp) -> int:
    degs = op.tau_degrees()
    if len(degs) > 1:
        raise ConventionError(f"mixed formal-constant powers {sorted(degs)}")
    return degs.pop() if degs else 0


# ---------------------------------------------------------------------------
# derived operator families


@dataclass
class EstFamily:
    """E_{s,t} = inverse Fourier conjugate of the wave-identity operator.

    `raw` satisfies fourier_conjugate(raw) == dst exactly in the formal
    ring; `tau_power` is the uniform overall power of the formal constant;
    `normalized` has the power stripped (and, under the unit-imaginary
    kernel convention, folded into the rational coefficients)."""

    algebra: object
    dst: DiffOp
    raw: DiffOp
    tau_power: int
    normalized: DiffOp


def build_Est(algebra) -> EstFamily:
    from . import detpower  # local import: detpower builds on this module

    dst = detpower.dst_operator(algebra)
    raw = fourier_conjugate(dst, inverse=True)
    k = declared_tau_power(raw)
    stripped = raw.shift_tau(-k)
    residual = declared_tau_power(stripped)
    if residual != 0:
        raise ConventionError("stripping the overall power left formal-constant terms")
    if algebra.fourier_tau == "i":
        # tau = sqrt(-1): tau^k must be real for a rational-coefficient family
        if k % 2 != 0:
            raise ConventionError("odd overall power under the unit-imaginary kernel")
        sign = Fraction(-1) ** ((k // 2) % 2)
        normalized = stripped.scale(sign)
    else:
        normalized = stripped
    return EstFamily(algebra=algebra, dst=dst, raw=raw, tau_power=k, normalized=normalized)


def build_F(algebra, est: EstFamily | None = None) -> DiffOp:
    """Covariance family: the E family reparametrized by
    s -> n/r - lam, t -> n/r - mu."""
    if est is None:
        est = build_Est(algebra)
    shift = Fraction(algebra.n, algebra.r)
    images = {"s": ParamPoly.of(shift) - LAM, "t": ParamPoly.of(shift) - MU}
    return est.normalized.subs_params(images)
