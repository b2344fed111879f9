"""Exact scalar coefficient ring Q[s, t, lam, mu][tau, tau^-1].

A scalar is a sparse polynomial in the formal parameters s, t, lam, mu and
the formal constant tau (with its formal inverse; tau*tau^-1 = 1 reduces to
exponent addition).  Represented as a dict mapping exponent tuples to
Fraction coefficients:

  Exponent = (e_s, e_t, e_lam, e_mu, e_tau)

with e_tau allowed to be negative (Laurent in tau) and the others >= 0.
Zero coefficients are never stored, so equality is dict equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Union

PARAM_NAMES = ("s", "t", "lam", "mu", "tau")
_NPARAMS = len(PARAM_NAMES)
_TAU = PARAM_NAMES.index("tau")
_INDEX = {name: i for i, name in enumerate(PARAM_NAMES)}

Exponent = tuple[int, int, int, int, int]
RatLike = Union[int, Fraction]

_ZERO_EXP: Exponent = (0, 0, 0, 0, 0)
_F0 = Fraction(0)


def _as_fraction(value: RatLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class ParamPoly:
    """Element of Q[s, t, lam, mu][tau, tau^-1], canonical sparse form."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponent, Fraction] | None = None):
        if terms:
            self.terms = {e: c for e, c in terms.items() if c != 0}
        else:
            self.terms = {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "ParamPoly":
        return cls()

    @classmethod
    def of(cls, value: RatLike) -> "ParamPoly":
        c = _as_fraction(value)
        return cls({_ZERO_EXP: c}) if c else cls()

    @classmethod
    def var(cls, name: str, power: int = 1) -> "ParamPoly":
        if name not in _INDEX:
            raise KeyError(f"unknown parameter {name!r}")
        if power < 0 and name != "tau":
            raise ValueError(f"negative power only allowed for tau, got {name}^{power}")
        exp = [0] * _NPARAMS
        exp[_INDEX[name]] = power
        return cls({tuple(exp): Fraction(1)})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"not a constant scalar: {self}")
        return self.terms[_ZERO_EXP]

    def total_degree(self) -> int:
        """Total degree in s, t, lam, mu (tau ignored)."""
        if not self.terms:
            return 0
        return max(sum(e[:_TAU]) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = _INDEX[name]
        return max((e[i] for e in self.terms), default=0)

    def tau_degrees(self) -> set[int]:
        return {e[_TAU] for e in self.terms}

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            return other
        return ParamPoly.of(other)

    def __add__(self, other) -> "ParamPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = out.get(e, Fraction(0)) + c
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
        res = ParamPoly.__new__(ParamPoly)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        res = ParamPoly.__new__(ParamPoly)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other) -> "ParamPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ParamPoly":
        return self._coerce(other) + (-self)

    def scale_rat(self, c: Fraction) -> "ParamPoly":
        if not c:
            return ParamPoly()
        res = ParamPoly.__new__(ParamPoly)
        res.terms = {e: v * c for e, v in self.terms.items()}
        return res

    def __mul__(self, other) -> "ParamPoly":
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return ParamPoly()
        # single-term fast paths (constants and monomial scalars dominate)
        if len(other.terms) == 1:
            (e2, c2), = other.terms.items()
            if e2 == _ZERO_EXP:
                return self.scale_rat(c2)
            res = ParamPoly.__new__(ParamPoly)
            res.terms = {
                (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3], e1[4] + e2[4]): c1 * c2
                for e1, c1 in self.terms.items()
            }
            return res
        if len(self.terms) == 1:
            return other * self
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3], e1[4] + e2[4])
                nc = out.get(e, _F0) + c1 * c2
                if nc:
                    out[e] = nc
                else:
                    out.pop(e, None)
        res = ParamPoly.__new__(ParamPoly)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ParamPoly":
        if k < 0:
            raise ValueError("negative power of a scalar polynomial")
        out = ParamPoly.of(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __truediv__(self, other: RatLike) -> "ParamPoly":
        c = _as_fraction(other)
        if c == 0:
            raise ZeroDivisionError("division of scalar polynomial by zero")
        return ParamPoly({e: v / c for e, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.of(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- substitution and evaluation ----------------------------------------

    def substitute(self, images: Mapping[str, "ParamPoly"]) -> "ParamPoly":
        """Substitute parameters by scalar polynomials (tau not substitutable)."""
        if "tau" in images:
            raise ValueError("tau is a formal constant; use fold_tau/evaluate")
        out = ParamPoly()
        for e, c in self.terms.items():
            term = ParamPoly({(0, 0, 0, 0, e[_TAU]): c})
            for i, name in enumerate(PARAM_NAMES[:_TAU]):
                if e[i] == 0:
                    continue
                base = images.get(name, ParamPoly.var(name))
                term = term * base ** e[i]
            out = out + term
        return out

    def fold_tau(self, tau_squared: RatLike = Fraction(-1)) -> "ParamPoly":
        """Reduce tau^2 to the given rational value (tau^(2m+b) -> v^m tau^b)."""
        v = _as_fraction(tau_squared)
        out = ParamPoly()
        for e, c in self.terms.items():
            m, b = divmod(e[_TAU], 2)
            ne = e[:_TAU] + (b,)
            out = out + ParamPoly({ne: c * v**m})
        return out

    def evaluate(self, values: Mapping[str, RatLike]) -> Fraction:
        """Exact evaluation; every parameter occurring must be assigned."""
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for i, name in enumerate(PARAM_NAMES):
                if e[i] == 0:
                    continue
                if name not in values:
                    raise KeyError(f"parameter {name} unassigned")
                base = _as_fraction(values[name])
                term *= base ** e[i]
            total += term
        return total

    def evaluate_complex(self, values: Mapping[str, complex]) -> complex:
        total = 0j
        for e, c in self.terms.items():
            term = complex(c)
            for i, name in enumerate(PARAM_NAMES):
                if e[i]:
                    term *= complex(values[name]) ** e[i]
            total += term
        return total

    # -- display -----------------------------------------------------------

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self:
            factors = []
            for i, name in enumerate(PARAM_NAMES):
                if e[i] == 1:
                    factors.append(name)
                elif e[i]:
                    factors.append(f"{name}^{e[i]}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"ParamPoly({self})"


ZERO = ParamPoly.zero()
ONE = ParamPoly.of(1)
S = ParamPoly.var("s")
T = ParamPoly.var("t")
LAM = ParamPoly.var("lam")
MU = ParamPoly.var("mu")
TAU = ParamPoly.var("tau")
TAU_INV = ParamPoly.var("tau", -1)
