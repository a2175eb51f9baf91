"""Embeddings between positive root systems and their metric classification.

An embedding assigns to each positive root of the domain a positive root of
the codomain, injectively, preserving parity and commuting with root
addition.  The search assigns images to the domain's indecomposable roots by
backtracking; every root that is a sum of two earlier roots has its image
forced, so failures propagate immediately.  An empty result list from an
exhaustive search certifies non-embeddability.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction as Q

from .roots import RootSystem
from .weights import FormValue, Root


@dataclass(frozen=True)
class EmbeddingMap:
    domain: RootSystem
    codomain: RootSystem
    assignment: tuple[tuple[Root, Root], ...]   # (domain root, image), domain order

    @property
    def mapping(self) -> dict[Root, Root]:
        return dict(self.assignment)

    def image(self) -> tuple[Root, ...]:
        return tuple(img for _, img in self.assignment)

    def compose(self, outer: EmbeddingMap) -> EmbeddingMap:
        """The composite domain -> outer.codomain (outer follows self)."""
        om = outer.mapping
        return EmbeddingMap(
            self.domain,
            outer.codomain,
            tuple((src, om[img]) for src, img in self.assignment),
        )

    def restrict(self, roots) -> EmbeddingMap:
        """Restriction to a subset of the domain closed under domain addition."""
        sub = self.domain.subsystem(roots)
        m = self.mapping
        return EmbeddingMap(
            sub, self.codomain, tuple((r, m[r]) for r in sub.positive_roots)
        )

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
            "pairs": [[a.to_json(), b.to_json()] for a, b in self.assignment],
        }

    @staticmethod
    def from_json(obj: dict) -> EmbeddingMap:
        dom = RootSystem.from_json(obj["domain"])
        cod = RootSystem.from_json(obj["codomain"])
        pairs = tuple(
            (Root.from_json(a), Root.from_json(b)) for a, b in obj["pairs"]
        )
        return EmbeddingMap(dom, cod, pairs)


def identity_inclusion(dom: RootSystem, cod: RootSystem) -> EmbeddingMap:
    """Coordinate-wise inclusion: each domain root maps to the codomain root
    with the same basis expansion (domain basis embeds as a prefix)."""
    pairs = []
    for r in dom.positive_roots:
        eps = r.weight.eps + (Q(0),) * (cod.m - dom.m)
        delta = r.weight.delta + (Q(0),) * (cod.n - dom.n)
        from .weights import Weight

        img = cod.by_weight.get(Weight(eps, delta))
        if img is None or img.parity != r.parity:
            raise ValueError(f"{r} has no coordinate image in {cod.label}")
        pairs.append((r, img))
    return EmbeddingMap(dom, cod, tuple(pairs))


def is_embedding(emap: EmbeddingMap) -> bool:
    """All three conditions: injective, parity-preserving, additive."""
    dom, cod = emap.domain, emap.codomain
    m = emap.mapping
    if set(m) != set(dom.positive_roots):
        raise ValueError("assignment is not total on the domain's positive roots")
    for img in m.values():
        if img not in cod.index_of:
            raise ValueError("image root does not belong to the codomain")
    if len(set(m.values())) != len(m):
        return False
    if any(src.parity != img.parity for src, img in m.items()):
        return False
    roots = dom.positive_roots
    for i, j, k in dom.addition_triples:
        if m[roots[i]].weight + m[roots[j]].weight != m[roots[k]].weight:
            return False
    return True


def _search_plan(dom: RootSystem):
    """Domain processing order: forced roots right after their summands."""
    n = len(dom.positive_roots)
    sums_of: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, j, k in dom.addition_triples:
        sums_of[k].append((i, j))
    plan, placed, remaining = [], set(), set(range(n))
    while remaining:
        pick = None
        for c in sorted(remaining):
            for i, j in sums_of[c]:
                if i in placed and j in placed:
                    pick = ("forced", c, i, j)
                    break
            if pick:
                break
        if pick is None:
            c = min(remaining)
            pick = ("free", c, -1, -1)
        plan.append(pick)
        placed.add(pick[1])
        remaining.discard(pick[1])
    return plan


def find_embeddings(
    dom: RootSystem,
    cod: RootSystem,
    max_count: int | None = None,
    metric_only: bool = False,
) -> list[EmbeddingMap]:
    """All embeddings dom -> cod in deterministic order (prefix order of the
    image assignment); an empty list certifies non-embeddability."""
    plan = _search_plan(dom)
    droots = dom.positive_roots
    wmap = cod.by_weight
    out: list[EmbeddingMap] = []
    img: dict[int, Root] = {}
    used: set[Root] = set()

    def emit() -> bool:
        emap = EmbeddingMap(
            dom, cod, tuple((droots[c], img[c]) for c in range(len(droots)))
        )
        # forced construction guarantees designated triples; confirm the rest
        if not is_embedding(emap):
            return False
        if metric_only and metric_verdict(emap).kind != "metric":
            return False
        out.append(emap)
        return True

    def step(d: int) -> bool:
        """Returns True when max_count has been reached."""
        if d == len(plan):
            emit()
            return max_count is not None and len(out) >= max_count
        mode, c, i, j = plan[d]
        parity = droots[c].parity
        if mode == "forced":
            t = wmap.get(img[i].weight + img[j].weight)
            if t is None or t in used or t.parity != parity:
                return False
            img[c] = t
            used.add(t)
            stop = step(d + 1)
            used.discard(t)
            del img[c]
            return stop
        for t in cod.positive_roots:
            if t.parity != parity or t in used:
                continue
            img[c] = t
            used.add(t)
            stop = step(d + 1)
            used.discard(t)
            del img[c]
            if stop:
                return True
        return False

    step(0)
    return out


def brute_force_embeddings(dom: RootSystem, cod: RootSystem) -> list[EmbeddingMap]:
    """Independent oracle: try every injective parity-respecting assignment."""
    devens = [r for r in dom.positive_roots if r.parity == "even"]
    dodds = [r for r in dom.positive_roots if r.parity == "odd"]
    cevens = [r for r in cod.positive_roots if r.parity == "even"]
    codds = [r for r in cod.positive_roots if r.parity == "odd"]
    out = []
    for pe in itertools.permutations(cevens, len(devens)):
        for po in itertools.permutations(codds, len(dodds)):
            m = dict(zip(devens, pe)) | dict(zip(dodds, po))
            emap = EmbeddingMap(
                dom,
                cod,
                tuple((r, m[r]) for r in dom.positive_roots),
            )
            if is_embedding(emap):
                out.append(emap)
    return out


# ------------------------------------------------------ metric classification

@dataclass(frozen=True)
class MetricVerdict:
    kind: str                    # "metric" | "non_metric" | "parametric"
    scale: Q | None = None       # lambda for metric; best rational otherwise
    alpha_values: tuple = ()     # parameter values for the parametric case

    def __str__(self) -> str:
        if self.kind == "metric":
            return f"metric(lambda={self.scale})"
        if self.kind == "parametric":
            vals = ", ".join(f"lambda={l}, a={a}" for l, a in self.alpha_values)
            return f"parametric({vals})"
        extra = f", best rational lambda={self.scale}" if self.scale is not None else ""
        return f"non_metric{extra}"


def _pairings(emap: EmbeddingMap):
    dom, cod = emap.domain, emap.codomain
    pairs = []
    roots = emap.assignment
    for x in range(len(roots)):
        for y in range(x, len(roots)):
            (a, ia), (b, ib) = roots[x], roots[y]
            pairs.append(
                (dom.pairing(a.weight, b.weight), cod.pairing(ia.weight, ib.weight))
            )
    return pairs


def metric_verdict(emap: EmbeddingMap) -> MetricVerdict:
    """Classify an embedding: one nonzero integer scale equating all pairings
    exactly (as polynomials in the formal parameter), a parameter-specific
    solution, or neither."""
    if not is_embedding(emap):
        raise ValueError("metric_verdict requires a valid embedding")
    pairs = _pairings(emap)

    lam: Q | None = None
    for d, c in pairs:
        if c.is_zero():
            if not d.is_zero():
                lam = None
                break
            continue
        r = d.ratio_over(c)
        if r is None:
            lam = None
            break
        if lam is None:
            lam = r
        elif lam != r:
            lam = None
            break
    if lam is not None and lam != 0:
        if lam.denominator == 1:
            return MetricVerdict("metric", lam)
        best = lam
    else:
        best = None

    param = _parametric_solutions(pairs)
    if param:
        return MetricVerdict("parametric", None, tuple(param))
    return MetricVerdict("non_metric", best)


def _rational_roots(A: Q, B: Q, C: Q):
    """Rational roots of A x^2 + B x + C (None = identically zero)."""
    if A == 0:
        if B == 0:
            return None if C == 0 else []
        return [-C / B]
    disc = B * B - 4 * A * C
    if disc < 0:
        return []
    import math

    num, den = disc.numerator, disc.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return []
    s = Q(rn, rd)
    return sorted({(-B + s) / (2 * A), (-B - s) / (2 * A)})


def _check_at(pairs, a: Q):
    """Smallest-|lambda| nonzero integer equating all pairings at parameter a."""
    lam = None
    for d, c in pairs:
        cv, dv = c.at(a), d.at(a)
        if cv == 0:
            if dv != 0:
                return None
            continue
        r = dv / cv
        if lam is None:
            lam = r
        elif lam != r:
            return None
    if lam is None:
        lam = Q(1)  # every pairing vanishes at a; any scale works
    if lam == 0 or lam.denominator != 1:
        return None
    return lam


def _parametric_solutions(pairs):
    """Solutions (nonzero integer lambda, rational a) of d = lambda*c at a
    specific parameter value a.

    Cross-eliminating lambda between a reference pairing and each other
    yields quadratics d_0(x) c_j(x) = d_j(x) c_0(x) in x; their rational
    roots are the only candidates.  When every cross-equation is trivial the
    solution set is a one-parameter family; the representative with the
    smallest |lambda| is reported.
    """
    nontrivial = [(d, c) for d, c in pairs if not (d.is_zero() and c.is_zero())]
    if not nontrivial:
        return []
    d0, c0 = nontrivial[0]
    candidates: set[Q] = set()
    family = True
    for d, c in nontrivial[1:]:
        # (d0.const + d0.alpha x)(c.const + c.alpha x) = (d.const + d.alpha x)(c0...)
        A = d0.alpha * c.alpha - d.alpha * c0.alpha
        B = d0.const * c.alpha + d0.alpha * c.const - d.const * c0.alpha - d.alpha * c0.const
        Cc = d0.const * c.const - d.const * c0.const
        roots = _rational_roots(A, B, Cc)
        if roots is None:
            continue
        family = False
        candidates.update(roots)
    if family:
        # single effective constraint lambda*c0(x) = d0(x): pick smallest |lambda|
        for lam in (Q(1), Q(-1), Q(2), Q(-2), Q(3), Q(-3)):
            den = lam * c0.alpha - d0.alpha
            if den == 0:
                if lam * c0.const == d0.const and _check_at(pairs, Q(0)) == lam:
                    return [(lam, Q(0))]
                continue
            x = (d0.const - lam * c0.const) / den
            if _check_at(pairs, x) == lam:
                return [(lam, x)]
        return []
    out = []
    for x in sorted(candidates):
        lam = _check_at(pairs, x)
        if lam is not None:
            out.append((lam, x))
    return out
