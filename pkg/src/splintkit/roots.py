"""Positive root systems of the classical Lie superalgebra families.

Families and their display labels (parameters m, n are always the sizes of
the eps / delta blocks of the ambient basis):

  A      m eps, n delta   label A(m-1,n-1)
  B      m eps, n delta   label B(m,n)  (m = 0 allowed: B(0,n))
  C      1 eps, n delta   label C(n+1)
  D      m eps, n delta   label D(m,n), m >= 2
  G3     2 eps, 1 delta   label G(3)   (eps3 := -eps1-eps2 eliminated)
  F4     3 eps, 1 delta   label F(4)
  D21a   3 eps, 0 delta   label D(2,1;a), bilinear form linear in a

Even-only catalog families: An, Bn, Cn, Dn (parameter k = rank), G2.

Positive roots are stored sorted by (parity, eps coeffs, delta coeffs) so
every downstream output is deterministic.  Bilinear forms follow the source
normalizations verbatim, including the positive-definite delta block of the
A family; ``build_a(..., delta_sign=-1)`` switches to the negative
convention for experimentation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import cached_property

from .weights import (
    EVEN,
    FV0,
    ODD,
    BilinearForm,
    FormValue,
    Root,
    Weight,
    diagonal_form,
    fv,
    parity_xor,
    weight,
)


class ParameterError(ValueError):
    """Invalid family parameters; the message names the violated constraint."""


class SpecError(ValueError):
    """Unparseable system spec string."""


def _unit(size: int, i: int, c=1) -> list:
    v = [Q(0)] * size
    v[i] = Q(c)
    return v


def _eps(m, n, i, c=1) -> Weight:
    return weight(_unit(m, i, c), [0] * n)


def _delta(m, n, k, c=1) -> Weight:
    return weight([0] * m, _unit(n, k, c))


@dataclass(frozen=True)
class RootSystem:
    family: str
    label: str
    m: int                      # eps block size
    n: int                      # delta block size
    rank: int
    positive_roots: tuple[Root, ...]
    form: BilinearForm

    def __post_init__(self):
        if len(set(self.positive_roots)) != len(self.positive_roots):
            raise ValueError("positive roots are not pairwise distinct")

    # ---- derived lookups (cached, not part of identity) ----

    @cached_property
    def index_of(self) -> dict[Root, int]:
        return {r: i for i, r in enumerate(self.positive_roots)}

    @cached_property
    def by_weight(self) -> dict[Weight, Root]:
        return {r.weight: r for r in self.positive_roots}

    @cached_property
    def even_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.positive_roots if r.parity == EVEN)

    @cached_property
    def odd_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.positive_roots if r.parity == ODD)

    @cached_property
    def addition_triples(self) -> tuple[tuple[int, int, int], ...]:
        """All (i, j, k), i <= j, with root_i + root_j = root_k in Dplus."""
        out = []
        idx = self.index_of
        wmap = self.by_weight
        roots = self.positive_roots
        for i, a in enumerate(roots):
            for j in range(i, len(roots)):
                b = roots[j]
                c = wmap.get(a.weight + b.weight)
                if c is not None:
                    out.append((i, j, idx[c]))
        return tuple(out)

    def pairing(self, a: Weight, b: Weight) -> FormValue:
        return self.form.pairing(a, b)

    def count(self) -> int:
        return len(self.positive_roots)

    def subsystem(self, roots, label: str | None = None) -> RootSystem:
        """Carrier for a subset of this system's positive roots.

        Used for restrictions of embeddings; inherits the form and rank.
        """
        sub = tuple(sorted(set(roots)))
        for r in sub:
            if r not in self.index_of:
                raise ValueError(f"{r} is not a positive root of {self.label}")
        return RootSystem(
            family="sub",
            label=label or f"sub({self.label})",
            m=self.m,
            n=self.n,
            rank=self.rank,
            positive_roots=sub,
            form=self.form,
        )

    # ---- serialization ----

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "label": self.label,
            "m": self.m,
            "n": self.n,
            "rank": self.rank,
            "roots": [r.to_json() for r in self.positive_roots],
            "gram": self.form.to_json(),
        }

    @staticmethod
    def from_json(obj: dict) -> RootSystem:
        return RootSystem(
            family=obj["family"],
            label=obj["label"],
            m=obj["m"],
            n=obj["n"],
            rank=obj["rank"],
            positive_roots=tuple(sorted(Root.from_json(r) for r in obj["roots"])),
            form=BilinearForm.from_json(obj["gram"]),
        )


def find_sum(rs: RootSystem, a: Root, b: Root) -> Root | None:
    """The positive root a + b if it exists (a = b allowed), else None."""
    if a not in rs.index_of or b not in rs.index_of:
        raise ValueError("arguments must be positive roots of the system")
    return rs.by_weight.get(a.weight + b.weight)


def _finish(family, label, m, n, rank, even, odd, form) -> RootSystem:
    roots = tuple(
        sorted(
            [Root(EVEN, w) for w in even] + [Root(ODD, w) for w in odd]
        )
    )
    return RootSystem(family, label, m, n, rank, roots, form)


# ---------------------------------------------------------------- families

def build_a(m: int, n: int, delta_sign: int = 1) -> RootSystem:
    if m < 1 or n < 1:
        raise ParameterError("A(m-1,n-1) needs m >= 1 and n >= 1")
    even = [_eps(m, n, i) - _eps(m, n, j) for i in range(m) for j in range(i + 1, m)]
    even += [_delta(m, n, k) - _delta(m, n, l) for k in range(n) for l in range(k + 1, n)]
    odd = [_delta(m, n, k) - _eps(m, n, i) for k in range(n) for i in range(m)]
    form = diagonal_form([fv(1)] * m + [fv(delta_sign)] * n)
    return _finish("A", f"A({m - 1},{n - 1})", m, n, m + n - 1, even, odd, form)


def build_b(m: int, n: int) -> RootSystem:
    if m < 0 or n < 1:
        raise ParameterError("B(m,n) needs m >= 0 and n >= 1")
    even, odd = [], []
    for i in range(m):
        for j in range(i + 1, m):
            even.append(_eps(m, n, i) - _eps(m, n, j))
            even.append(_eps(m, n, i) + _eps(m, n, j))
    even += [_eps(m, n, i) for i in range(m)]
    for k in range(n):
        for l in range(k + 1, n):
            even.append(_delta(m, n, k) - _delta(m, n, l))
            even.append(_delta(m, n, k) + _delta(m, n, l))
    even += [_delta(m, n, k, 2) for k in range(n)]
    for k in range(n):
        for i in range(m):
            odd.append(_delta(m, n, k) - _eps(m, n, i))
            odd.append(_delta(m, n, k) + _eps(m, n, i))
    odd += [_delta(m, n, k) for k in range(n)]
    form = diagonal_form([fv(-1)] * m + [fv(1)] * n)
    return _finish("B", f"B({m},{n})", m, n, m + n, even, odd, form)


def build_c(n: int) -> RootSystem:
    if n < 1:
        raise ParameterError("C(n+1) needs n >= 1")
    m = 1
    even = []
    for k in range(n):
        for l in range(k + 1, n):
            even.append(_delta(m, n, k) - _delta(m, n, l))
            even.append(_delta(m, n, k) + _delta(m, n, l))
    even += [_delta(m, n, k, 2) for k in range(n)]
    odd = []
    for k in range(n):
        odd.append(_eps(m, n, 0) - _delta(m, n, k))
        odd.append(_eps(m, n, 0) + _delta(m, n, k))
    form = diagonal_form([fv(1)] + [fv(-1)] * n)
    return _finish("C", f"C({n + 1})", m, n, n + 1, even, odd, form)


def build_d(m: int, n: int) -> RootSystem:
    if m < 2 or n < 1:
        raise ParameterError("D(m,n) needs m >= 2 and n >= 1")
    even = []
    for i in range(m):
        for j in range(i + 1, m):
            even.append(_eps(m, n, i) - _eps(m, n, j))
            even.append(_eps(m, n, i) + _eps(m, n, j))
    for k in range(n):
        for l in range(k + 1, n):
            even.append(_delta(m, n, k) - _delta(m, n, l))
            even.append(_delta(m, n, k) + _delta(m, n, l))
    even += [_delta(m, n, k, 2) for k in range(n)]
    odd = []
    for k in range(n):
        for i in range(m):
            odd.append(_delta(m, n, k) - _eps(m, n, i))
            odd.append(_delta(m, n, k) + _eps(m, n, i))
    form = diagonal_form([fv(-1)] * m + [fv(1)] * n)
    return _finish("D", f"D({m},{n})", m, n, m + n, even, odd, form)


def build_g3() -> RootSystem:
    """G(3) in the reduced basis (eps1, eps2 | delta), eps3 = -eps1-eps2.

    Positive roots are the nonnegative-integer combinations of the
    distinguished simple roots delta+eps3, eps1, eps2-eps1.
    """
    m, n = 2, 1
    e1 = _eps(m, n, 0)
    e2 = _eps(m, n, 1)
    d = _delta(m, n, 0)
    even = [e1, e2, e1 + e2, e2 - e1, e1 + e1 + e2, e1 + e2 + e2, d + d]
    odd = [d, d - e1, d + e1, d - e2, d + e2, d - e1 - e2, d + e1 + e2]
    eps_gram = ((fv(-2), fv(1)), (fv(1), fv(-2)))
    gram = (
        eps_gram[0] + (FV0,),
        eps_gram[1] + (FV0,),
        (FV0, FV0, fv(2)),
    )
    return _finish("G3", "G(3)", m, n, 3, even, odd, BilinearForm(gram))


def build_f4() -> RootSystem:
    m, n = 3, 1
    even = [_delta(m, n, 0)]
    for i in range(m):
        for j in range(i + 1, m):
            even.append(_eps(m, n, i) - _eps(m, n, j))
            even.append(_eps(m, n, i) + _eps(m, n, j))
    even += [_eps(m, n, i) for i in range(m)]
    h = Q(1, 2)
    odd = [
        Weight((s1 * h, s2 * h, s3 * h), (h,))
        for s1 in (1, -1)
        for s2 in (1, -1)
        for s3 in (1, -1)
    ]
    form = diagonal_form([fv(-2)] * 3 + [fv(6)])
    return _finish("F4", "F(4)", m, n, 4, even, odd, form)


def build_d21a() -> RootSystem:
    m, n = 3, 0
    even = [_eps(m, n, i, 2) for i in range(3)]
    odd = [
        weight((1, s2, s3), ())
        for s2 in (1, -1)
        for s3 in (1, -1)
    ]
    form = diagonal_form(
        [FormValue(Q(-1, 2), Q(-1, 2)), FormValue(Q(-1, 2)), FormValue(Q(0), Q(-1, 2))]
    )
    return _finish("D21a", "D(2,1;a)", m, n, 3, even, odd, form)


# ------------------------------------------------- even-only catalog families

def build_even_a(k: int) -> RootSystem:
    if k < 1:
        raise ParameterError("A_k needs k >= 1")
    m = k + 1
    even = [_eps(m, 0, i) - _eps(m, 0, j) for i in range(m) for j in range(i + 1, m)]
    return _finish("An", f"A_{k}", m, 0, k, even, [], diagonal_form([fv(1)] * m))


def build_even_b(k: int) -> RootSystem:
    if k < 1:
        raise ParameterError("B_k needs k >= 1")
    even = []
    for i in range(k):
        for j in range(i + 1, k):
            even.append(_eps(k, 0, i) - _eps(k, 0, j))
            even.append(_eps(k, 0, i) + _eps(k, 0, j))
    even += [_eps(k, 0, i) for i in range(k)]
    return _finish("Bn", f"B_{k}", k, 0, k, even, [], diagonal_form([fv(1)] * k))


def build_even_c(k: int) -> RootSystem:
    if k < 1:
        raise ParameterError("C_k needs k >= 1")
    even = []
    for i in range(k):
        for j in range(i + 1, k):
            even.append(_eps(k, 0, i) - _eps(k, 0, j))
            even.append(_eps(k, 0, i) + _eps(k, 0, j))
    even += [_eps(k, 0, i, 2) for i in range(k)]
    return _finish("Cn", f"C_{k}", k, 0, k, even, [], diagonal_form([fv(1)] * k))


def build_even_d(k: int) -> RootSystem:
    if k < 2:
        raise ParameterError("D_k needs k >= 2")
    even = []
    for i in range(k):
        for j in range(i + 1, k):
            even.append(_eps(k, 0, i) - _eps(k, 0, j))
            even.append(_eps(k, 0, i) + _eps(k, 0, j))
    return _finish("Dn", f"D_{k}", k, 0, k, even, [], diagonal_form([fv(1)] * k))


def build_g2() -> RootSystem:
    # basis = (short simple, long simple); Gram [[2,-3],[-3,6]]
    coords = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
    even = [weight(c, []) for c in coords]
    gram = ((fv(2), fv(-3)), (fv(-3), fv(6)))
    return _finish("G2", "G_2", 2, 0, 2, even, [], BilinearForm(gram))


# ------------------------------------------------------------- entry points

def expected_count(family: str, m: int = 0, n: int = 0) -> int:
    """Closed-form |Dplus| (the brute-force enumeration oracle freezes these)."""
    if family == "A":
        return m * (m - 1) // 2 + n * (n - 1) // 2 + m * n
    if family == "B":
        return m * m + n * n + 2 * m * n + n
    if family == "C":
        return n * n + 2 * n
    if family == "D":
        return m * (m - 1) + n * n + 2 * m * n
    if family == "G3":
        return 14
    if family == "F4":
        return 18
    if family == "D21a":
        return 7
    raise ValueError(f"no count formula for family {family!r}")


_FIXED = {"G(3)": build_g3, "F(4)": build_f4, "D(2,1;a)": build_d21a,
          "G_2": build_g2}


def parse_spec(spec: str) -> RootSystem:
    """Parse a system spec string: A(r,s), B(m,n), C(k), D(m,n), G(3), F(4),
    D(2,1;a).  A-family parameters are the display label's (r,s)."""
    s = spec.strip()
    if s in _FIXED:
        return _FIXED[s]()
    if s.lower() in ("d(2,1;a)", "d(2,1;alpha)"):
        return build_d21a()
    m2 = re.fullmatch(r"([ABD])\((\d+),(\d+)\)", s)
    if m2:
        fam, p, q = m2.group(1), int(m2.group(2)), int(m2.group(3))
        try:
            if fam == "A":
                return build_a(p + 1, q + 1)
            if fam == "B":
                return build_b(p, q)
            return build_d(p, q)
        except ParameterError as exc:
            raise SpecError(str(exc)) from exc
    m1 = re.fullmatch(r"C\((\d+)\)", s)
    if m1:
        k = int(m1.group(1))
        if k < 2:
            raise SpecError("C(k) needs k >= 2")
        return build_c(k - 1)
    raise SpecError(f"cannot parse system spec {spec!r}")
