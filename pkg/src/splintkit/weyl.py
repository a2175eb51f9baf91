"""Even Weyl group: reflections in even roots, group closure, and orbit
canonicalization of splint partitions.

Reflections are stored as exact matrices (images of the basis vectors);
group elements as signed permutations of the positive-root index space,
which every even reflection induces because it permutes the full root set
and preserves the grading.  The breadth-first closure starts from the
reflections in the indecomposable even positive roots (the simple system of
the even part).

Two splints are equivalent when some group element carries the negation
closures of one partition's even/odd restrictions onto the other's.  The
canonical signature is the lexicographically smallest quadruple of
root-index bitmasks (even1, even2, odd1, odd2) over the group orbit,
compared as integers; ``pair_mode="unordered"`` also minimizes over the
side swap, and ``parts="even"`` restricts the comparison to the even
restrictions (the comparison the source tables themselves use for the
B(m,n) item-8 identification).
"""
from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass

from . import kernels
from .roots import RootSystem
from .weights import EVEN, Root, Weight


class CapacityError(RuntimeError):
    pass


DEFAULT_WEYL_CAP = 10**6


def _caps_from_env() -> dict:
    out = {}
    raw = os.environ.get("SPLINTKIT_CAPS", "")
    for part in raw.split(","):
        if "=" in part:
            k, v = part.split("=", 1)
            try:
                out[k.strip()] = int(v)
            except ValueError:
                pass
    return out


def weyl_cap() -> int:
    return _caps_from_env().get("weyl", DEFAULT_WEYL_CAP)


def enumerate_cap() -> int:
    return _caps_from_env().get("enumerate", 24)


@dataclass(frozen=True)
class WeylElement:
    """Exact linear map on weights, stored as images of the basis vectors."""

    eps_images: tuple[Weight, ...]
    delta_images: tuple[Weight, ...]

    def apply(self, w: Weight) -> Weight:
        acc = None
        for c, img in zip(w.eps, self.eps_images):
            term = Weight(tuple(c * x for x in img.eps), tuple(c * x for x in img.delta))
            acc = term if acc is None else acc + term
        for c, img in zip(w.delta, self.delta_images):
            term = Weight(tuple(c * x for x in img.eps), tuple(c * x for x in img.delta))
            acc = term if acc is None else acc + term
        return acc

    def compose(self, other: WeylElement) -> WeylElement:
        """self applied after other."""
        return WeylElement(
            tuple(self.apply(w) for w in other.eps_images),
            tuple(self.apply(w) for w in other.delta_images),
        )


def identity_element(rs: RootSystem) -> WeylElement:
    from fractions import Fraction as Q

    def unit(i, block):
        eps = tuple(Q(1) if block == 0 and j == i else Q(0) for j in range(rs.m))
        delta = tuple(Q(1) if block == 1 and j == i else Q(0) for j in range(rs.n))
        return Weight(eps, delta)

    return WeylElement(
        tuple(unit(i, 0) for i in range(rs.m)),
        tuple(unit(i, 1) for i in range(rs.n)),
    )


def reflection(rs: RootSystem, beta: Root) -> WeylElement:
    """s_beta(x) = x - 2(x,beta)/(beta,beta) * beta, beta an even root with
    (beta,beta) != 0; the coefficient is always an exact rational free of
    the formal parameter."""
    if beta.parity != EVEN:
        raise ValueError("reflections are taken in even roots only")
    norm = rs.pairing(beta.weight, beta.weight)
    if norm.is_zero():
        raise ValueError("isotropic root cannot be reflected in")
    ident = identity_element(rs)

    def image(v: Weight) -> Weight:
        num = rs.pairing(v, beta.weight).scale(2)
        coeff = num.ratio_over(norm)
        if coeff is None:
            raise ValueError("reflection coefficient is not parameter-free")
        bw = beta.weight
        return v - Weight(tuple(coeff * x for x in bw.eps), tuple(coeff * x for x in bw.delta))

    return WeylElement(
        tuple(image(w) for w in ident.eps_images),
        tuple(image(w) for w in ident.delta_images),
    )


def root_signed_perm(rs: RootSystem, elem: WeylElement) -> tuple[int, ...]:
    """The signed permutation elem induces on positive-root indices:
    entry i is +-(j+1) when elem(root_i) = +-root_j."""
    out = []
    for r in rs.positive_roots:
        w = elem.apply(r.weight)
        t = rs.by_weight.get(w)
        if t is not None:
            if t.parity != r.parity:
                raise ValueError("element does not preserve the grading")
            out.append(rs.index_of[t] + 1)
            continue
        t = rs.by_weight.get(-w)
        if t is None:
            raise ValueError("element does not permute the root set")
        if t.parity != r.parity:
            raise ValueError("element does not preserve the grading")
        out.append(-(rs.index_of[t] + 1))
    return tuple(out)


def simple_even_roots(rs: RootSystem) -> tuple[Root, ...]:
    """Indecomposable even positive roots (no expression as a sum of two
    even positive roots): the simple system of the even part."""
    evens = rs.even_roots
    wset = {r.weight for r in evens}
    out = []
    for r in evens:
        decomposable = any(
            (r.weight - s.weight) in wset
            for s in evens
            if s.weight != r.weight
        )
        if not decomposable:
            out.append(r)
    return tuple(out)


def _compose_sperm(outer, inner):
    """(outer o inner) on signed indices."""
    out = []
    for v in inner:
        t = outer[abs(v) - 1]
        out.append(t if v > 0 else -t)
    return tuple(out)


class EvenWeylGroup:
    """Breadth-first closure of the simple even reflections.

    Elements are signed permutations of positive-root indices, identity
    first, in BFS discovery order; matrices are recoverable by composing
    generator matrices along the stored words.
    """

    def __init__(self, rs: RootSystem, cap: int | None = None):
        self.rs = rs
        cap = weyl_cap() if cap is None else cap
        n = len(rs.positive_roots)
        gens = []
        self.generator_elements: list[WeylElement] = []
        for beta in simple_even_roots(rs):
            elem = reflection(rs, beta)
            gens.append(root_signed_perm(rs, elem))
            self.generator_elements.append(elem)
        identity = tuple(range(1, n + 1))
        order: list[tuple[int, ...]] = [identity]
        words: dict[tuple[int, ...], tuple] = {identity: ()}
        frontier = [identity]
        while frontier:
            nxt = []
            for sp in frontier:
                for gi, g in enumerate(gens):
                    comp = _compose_sperm(sp, g)
                    if comp not in words:
                        words[comp] = (gi,) + words[sp]
                        order.append(comp)
                        nxt.append(comp)
                        if len(order) > cap:
                            raise CapacityError(
                                f"even Weyl group of {rs.label} exceeds cap {cap}"
                            )
            frontier = nxt
        self.elements: tuple[tuple[int, ...], ...] = tuple(order)
        self._words = words
        self.abs_perms = [tuple(abs(v) - 1 for v in sp) for sp in self.elements]
        self._tables = None

    def __len__(self) -> int:
        return len(self.elements)

    def element_matrix(self, sperm: tuple[int, ...]) -> WeylElement:
        """Reconstruct the weight-space matrix from the generator word."""
        elem = identity_element(self.rs)
        for gi in reversed(self._words[sperm]):
            elem = self.generator_elements[gi].compose(elem)
        return elem

    def apply_to_indices(self, sperm, indices):
        """Image of a set of positive-root indices, up to sign (abs)."""
        return frozenset(abs(sperm[i]) - 1 for i in indices)

    def tables(self):
        if self._tables is None:
            self._tables = kernels.prepare_perms(
                self.abs_perms, len(self.rs.positive_roots)
            )
        return self._tables


def group_for(rs: RootSystem, cap: int | None = None) -> EvenWeylGroup:
    """Cached even Weyl group of a system."""
    g = rs.__dict__.get("_weyl_group")
    if g is None:
        g = EvenWeylGroup(rs, cap)
        object.__setattr__(rs, "_weyl_group", g)
    return g


# ------------------------------------------------------------- signatures

@dataclass(frozen=True, order=True)
class SplintSignature:
    """Canonical representative of a splint partition's equivalence class.

    masks = (even1, even2, odd1, odd2) positive-root index bitmasks of the
    canonical representative; each stands for the negation-closed set it
    generates.  parts="even" signatures carry zeroed odd masks.
    """

    system: str
    parts: str
    masks: tuple[int, int, int, int]

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(self.system.encode())
        h.update(self.parts.encode())
        for m in self.masks:
            h.update(m.to_bytes((m.bit_length() + 7) // 8 or 1, "little"))
            h.update(b"|")
        return h.hexdigest()[:16]

    def root_sets(self, rs: RootSystem):
        """The four canonically sorted root tuples (positive representatives)."""
        def roots_of(mask):
            return tuple(
                rs.positive_roots[i]
                for i in range(len(rs.positive_roots))
                if mask >> i & 1
            )
        return tuple(roots_of(m) for m in self.masks)


def _masks_for(rs: RootSystem, part1, part2):
    idx = rs.index_of
    e1 = e2 = o1 = o2 = 0
    for r in part1:
        bit = 1 << idx[r]
        if r.parity == EVEN:
            e1 |= bit
        else:
            o1 |= bit
    for r in part2:
        bit = 1 << idx[r]
        if r.parity == EVEN:
            e2 |= bit
        else:
            o2 |= bit
    return e1, e2, o1, o2


def canonical_signature(
    rs: RootSystem,
    part1,
    part2,
    pair_mode: str = "unordered",
    parts: str = "both",
    group: EvenWeylGroup | None = None,
) -> SplintSignature:
    """Lexicographically minimal signature over the even Weyl orbit (and the
    side swap when pair_mode="unordered")."""
    if pair_mode not in ("unordered", "ordered"):
        raise ValueError(f"bad pair_mode {pair_mode!r}")
    if parts not in ("both", "even"):
        raise ValueError(f"bad parts mode {parts!r}")
    s1, s2 = set(part1), set(part2)
    if s1 & s2:
        raise ValueError("splint parts must be disjoint")
    group = group or group_for(rs)
    e1, e2, o1, o2 = _masks_for(rs, s1, s2)
    if parts == "even":
        o1 = o2 = 0
    best = kernels.canonical_quadruple(
        e1, e2, o1, o2, group.tables(), pair_mode == "unordered"
    )
    return SplintSignature(rs.label, parts, tuple(best))


def canonical_coloring(
    rs: RootSystem,
    mask: int,
    group: EvenWeylGroup,
    pair_mode: str = "unordered",
) -> tuple[int, int, int, int]:
    """Canonical quadruple for the 2-coloring (mask, complement)."""
    n = len(rs.positive_roots)
    even_mask = 0
    for i, r in enumerate(rs.positive_roots):
        if r.parity == EVEN:
            even_mask |= 1 << i
    full = (1 << n) - 1
    other = full & ~mask
    return kernels.canonical_quadruple(
        mask & even_mask,
        other & even_mask,
        mask & ~even_mask & full,
        other & ~even_mask & full,
        group.tables(),
        pair_mode == "unordered",
    )
