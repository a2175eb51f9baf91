"""Exact weight-space values for superalgebra root systems.

Conventions:
  * Every vector lives in the concatenated (eps | delta) basis; coefficients
    are exact rationals (denominator 2 occurs only in F(4) odd roots).
  * Bilinear pairings are degree-1 polynomials in one formal parameter
    (written ``a`` in serialized form); the parameter is only ever nonzero
    for the D(2,1;a) family.
  * Rationals serialize as canonical "p/q" strings with q > 0 and
    gcd(p, q) = 1, plain "p" when q = 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

EVEN = "even"
ODD = "odd"

PARITIES = (EVEN, ODD)


def parity_xor(a: str, b: str) -> str:
    """Parity of a sum: even iff the summands' parities agree."""
    return EVEN if a == b else ODD


def rat_to_str(x: Q) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Q:
    return Q(s)


@dataclass(frozen=True, order=True)
class Weight:
    """Exact vector over the (eps | delta) basis."""

    eps: tuple[Q, ...]
    delta: tuple[Q, ...]

    def __add__(self, other: Weight) -> Weight:
        return Weight(
            tuple(a + b for a, b in zip(self.eps, other.eps)),
            tuple(a + b for a, b in zip(self.delta, other.delta)),
        )

    def __sub__(self, other: Weight) -> Weight:
        return Weight(
            tuple(a - b for a, b in zip(self.eps, other.eps)),
            tuple(a - b for a, b in zip(self.delta, other.delta)),
        )

    def __neg__(self) -> Weight:
        return Weight(tuple(-a for a in self.eps), tuple(-a for a in self.delta))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.eps) and all(a == 0 for a in self.delta)

    @property
    def coeffs(self) -> tuple[Q, ...]:
        return self.eps + self.delta

    def to_json(self) -> dict:
        return {
            "eps": [rat_to_str(a) for a in self.eps],
            "delta": [rat_to_str(a) for a in self.delta],
        }

    @staticmethod
    def from_json(obj: dict) -> Weight:
        return Weight(
            tuple(rat_from_str(s) for s in obj["eps"]),
            tuple(rat_from_str(s) for s in obj["delta"]),
        )


def weight(eps, delta) -> Weight:
    """Build a Weight from any iterables of ints/rationals."""
    return Weight(tuple(Q(x) for x in eps), tuple(Q(x) for x in delta))


@dataclass(frozen=True, order=True)
class Root:
    """A root: nonzero weight plus parity flag."""

    parity: str
    weight: Weight

    def __post_init__(self):
        if self.parity not in PARITIES:
            raise ValueError(f"bad parity {self.parity!r}")

    def to_json(self) -> dict:
        d = self.weight.to_json()
        d["parity"] = self.parity
        return d

    @staticmethod
    def from_json(obj: dict) -> Root:
        return Root(obj["parity"], Weight.from_json(obj))


@dataclass(frozen=True, order=True)
class FormValue:
    """A pairing value ``const + alpha * a`` with formal parameter ``a``."""

    const: Q
    alpha: Q = Q(0)

    def __add__(self, other: FormValue) -> FormValue:
        return FormValue(self.const + other.const, self.alpha + other.alpha)

    def __sub__(self, other: FormValue) -> FormValue:
        return FormValue(self.const - other.const, self.alpha - other.alpha)

    def __neg__(self) -> FormValue:
        return FormValue(-self.const, -self.alpha)

    def scale(self, c: Q) -> FormValue:
        return FormValue(self.const * c, self.alpha * c)

    def is_zero(self) -> bool:
        return self.const == 0 and self.alpha == 0

    def ratio_over(self, other: FormValue) -> Q | None:
        """The rational c with self = c * other, if one exists (other != 0)."""
        if other.is_zero():
            return None
        # proportionality of degree-1 polynomials: cross products must agree
        if self.const * other.alpha != self.alpha * other.const:
            return None
        if other.const != 0:
            c = self.const / other.const
        else:
            c = self.alpha / other.alpha
        # confirm both coefficients (covers other.const == 0, self.const != 0)
        if self.const == c * other.const and self.alpha == c * other.alpha:
            return c
        return None

    def at(self, a: Q) -> Q:
        """Evaluate at a numeric parameter value."""
        return self.const + self.alpha * a

    def __str__(self) -> str:
        if self.alpha == 0:
            return rat_to_str(self.const)
        return f"{rat_to_str(self.const)}+({rat_to_str(self.alpha)})a"

    def to_json(self) -> dict:
        return {"c": rat_to_str(self.const), "a": rat_to_str(self.alpha)}

    @staticmethod
    def from_json(obj: dict) -> FormValue:
        return FormValue(rat_from_str(obj["c"]), rat_from_str(obj.get("a", "0")))


FV0 = FormValue(Q(0))


def fv(const, alpha=0) -> FormValue:
    return FormValue(Q(const), Q(alpha))


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric Gram matrix over the concatenated (eps | delta) basis.

    Block-diagonal between the eps and delta blocks for every family
    ((eps_i, delta_k) = 0 throughout).
    """

    gram: tuple[tuple[FormValue, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.gram)

    def pairing(self, a: Weight, b: Weight) -> FormValue:
        ca, cb = a.coeffs, b.coeffs
        if len(ca) != self.dim or len(cb) != self.dim:
            raise ValueError("weight dimension does not match the form")
        acc = FV0
        for i, xi in enumerate(ca):
            if xi == 0:
                continue
            row = self.gram[i]
            for j, yj in enumerate(cb):
                if yj == 0:
                    continue
                acc = acc + row[j].scale(xi * yj)
        return acc

    def to_json(self) -> list:
        return [[v.to_json() for v in row] for row in self.gram]

    @staticmethod
    def from_json(rows: list) -> BilinearForm:
        return BilinearForm(
            tuple(tuple(FormValue.from_json(v) for v in row) for row in rows)
        )


def diagonal_form(values: list[FormValue]) -> BilinearForm:
    n = len(values)
    return BilinearForm(
        tuple(
            tuple(values[i] if i == j else FV0 for j in range(n)) for i in range(n)
        )
    )
