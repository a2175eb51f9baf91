"""Catalog of component root systems and addition-structure matching.

A table cell like "2A_1+4A(0,0)" names a multiset of component labels.  A
subset S of an ambient positive system realizes a label L when there is a
parity-preserving bijection from the abstract positive roots of L onto S
mirroring every abstract addition triple.  Image-side semantics are LAX:
extra additions inside S (or straddling parts) never disqualify a match;
``strict=True`` turns on the exact-structure variant for experimentation.

Fresh decomposition (used by splint enumeration) searches partitions of S
into catalog-matched parts, preferring fewest components, then least total
effective rank, then the lexicographically smallest label list.  Alias
labels that duplicate another label's addition structure at equal rank
(D_2, B(0,1), B_1, C_1, D_3) are reserved for fixture verification and are
not produced fresh.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .roots import (
    RootSystem,
    build_a,
    build_b,
    build_c,
    build_d,
    build_even_a,
    build_even_b,
    build_even_c,
    build_even_d,
    build_g2,
)
from .weights import EVEN, ODD, Root


class LabelError(ValueError):
    pass


class SizeMismatchError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ComponentLabel:
    """A component name from the tables: A_n, B_n, C_n, D_n, G_2 (even-only)
    or A(r,s), B(m,n), C(k), D(m,n) (superalgebra)."""

    kind: str                 # Asuper | Bsuper | Csuper | Dsuper | An | Bn | Cn | Dn | G2
    params: tuple[int, ...]

    def __str__(self) -> str:
        k, p = self.kind, self.params
        if k == "Asuper":
            return f"A({p[0]},{p[1]})"
        if k == "Bsuper":
            return f"B({p[0]},{p[1]})"
        if k == "Csuper":
            return f"C({p[0]})"
        if k == "Dsuper":
            return f"D({p[0]},{p[1]})"
        if k == "G2":
            return "G_2"
        return f"{k[0]}_{p[0]}"

    @property
    def size(self) -> int:
        return self.even_count + self.odd_count

    @property
    def even_count(self) -> int:
        k, p = self.kind, self.params
        if k == "Asuper":
            r, s = p
            return r * (r + 1) // 2 + s * (s + 1) // 2
        if k == "Bsuper":
            m, n = p
            return m * m + n * n
        if k == "Csuper":
            n = p[0] - 1
            return n * n
        if k == "Dsuper":
            m, n = p
            return m * (m - 1) + n * n
        if k == "An":
            return p[0] * (p[0] + 1) // 2
        if k in ("Bn", "Cn"):
            return p[0] * p[0]
        if k == "Dn":
            return p[0] * (p[0] - 1)
        return 6  # G2

    @property
    def odd_count(self) -> int:
        k, p = self.kind, self.params
        if k == "Asuper":
            return (p[0] + 1) * (p[1] + 1)
        if k == "Bsuper":
            return 2 * p[0] * p[1] + p[1]
        if k == "Csuper":
            return 2 * (p[0] - 1)
        if k == "Dsuper":
            return 2 * p[0] * p[1]
        return 0

    def effective_rank(self, mode: str = "zero-a00") -> int:
        k, p = self.kind, self.params
        if k == "Asuper":
            if p == (0, 0):
                return 0 if mode == "zero-a00" else 1
            return p[0] + p[1] + 1
        if k in ("Bsuper", "Dsuper"):
            return p[0] + p[1]
        if k == "Csuper":
            return p[0]
        if k == "G2":
            return 2
        return p[0]


A00 = ComponentLabel("Asuper", (0, 0))

_LABEL_RE = re.compile(
    r"A\((\d+),(\d+)\)|B\((\d+),(\d+)\)|C\((\d+)\)|D\((\d+),(\d+)\)|([ABCD])_(\d+)|G_2"
)


def parse_label(s: str) -> ComponentLabel:
    s = s.strip()
    m = _LABEL_RE.fullmatch(s)
    if not m:
        raise LabelError(f"cannot parse component label {s!r}")
    g = m.groups()
    if g[0] is not None:
        return ComponentLabel("Asuper", (int(g[0]), int(g[1])))
    if g[2] is not None:
        lab = ComponentLabel("Bsuper", (int(g[2]), int(g[3])))
    elif g[4] is not None:
        lab = ComponentLabel("Csuper", (int(g[4]),))
    elif g[5] is not None:
        lab = ComponentLabel("Dsuper", (int(g[5]), int(g[6])))
    elif g[7] is not None:
        lab = ComponentLabel(g[7] + "n", (int(g[8]),))
    else:
        return ComponentLabel("G2", ())
    _validate(lab)
    return lab


def _validate(lab: ComponentLabel) -> None:
    k, p = lab.kind, lab.params
    ok = True
    if k == "Bsuper":
        ok = p[0] >= 0 and p[1] >= 1
    elif k == "Csuper":
        ok = p[0] >= 2
    elif k == "Dsuper":
        ok = p[0] >= 2 and p[1] >= 1
    elif k in ("An", "Bn", "Cn"):
        ok = p[0] >= 1
    elif k == "Dn":
        ok = p[0] >= 2
    if not ok:
        raise LabelError(f"parameters out of range for {lab}")


@lru_cache(maxsize=None)
def abstract_system(label: ComponentLabel) -> RootSystem:
    """The reference positive system realizing a catalog label."""
    k, p = label.kind, label.params
    _validate(label)
    if k == "Asuper":
        return build_a(p[0] + 1, p[1] + 1)
    if k == "Bsuper":
        return build_b(p[0], p[1])
    if k == "Csuper":
        return build_c(p[0] - 1)
    if k == "Dsuper":
        return build_d(p[0], p[1])
    if k == "An":
        return build_even_a(p[0])
    if k == "Bn":
        return build_even_b(p[0])
    if k == "Cn":
        return build_even_c(p[0])
    if k == "Dn":
        return build_even_d(p[0])
    return build_g2()


# ------------------------------------------------------- addition structure

@dataclass(frozen=True)
class AdditionStructure:
    roots: tuple[Root, ...]
    triples: tuple[tuple[int, int, int], ...]   # i <= j, root_i + root_j = root_k
    parities: tuple[str, ...]


def addition_structure(roots) -> AdditionStructure:
    """Triples realized by weight addition inside the given set only."""
    rs = tuple(sorted(set(roots)))
    wmap = {r.weight: i for i, r in enumerate(rs)}
    triples = []
    for i, a in enumerate(rs):
        for j in range(i, len(rs)):
            k = wmap.get(a.weight + rs[j].weight)
            if k is not None:
                triples.append((i, j, k))
    return AdditionStructure(rs, tuple(triples), tuple(r.parity for r in rs))


# ----------------------------------------------------------- label matching

@lru_cache(maxsize=None)
def _match_plan(label: ComponentLabel):
    """Assignment schedule for the abstract roots of a label.

    Entries are ("free", c) or ("forced", c, a, b) with root_c = root_a +
    root_b; every forced root follows its summands, so its image is
    determined during search.
    """
    ab = abstract_system(label)
    n = len(ab.positive_roots)
    sums_of: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, j, k in ab.addition_triples:
        sums_of[k].append((i, j))
    plan = []
    placed: set[int] = set()
    remaining = set(range(n))
    while remaining:
        forced = None
        for c in sorted(remaining):
            for i, j in sums_of[c]:
                if i in placed and j in placed:
                    forced = (c, i, j)
                    break
            if forced:
                break
        if forced:
            c, i, j = forced
            plan.append(("forced", c, i, j))
        else:
            c = min(remaining)
            plan.append(("free", c, -1, -1))
        placed.add(c)
        remaining.discard(c)
    return ab, tuple(plan)


def match_component(roots, label: ComponentLabel, strict: bool = False):
    """Bijection from the abstract positive roots of ``label`` onto ``roots``.

    Returns {abstract_root: image_root} or None.  Raises SizeMismatchError
    when the sizes differ (precondition per the build contract).
    """
    s = tuple(sorted(set(roots)))
    ab, plan = _match_plan(label)
    abroots = ab.positive_roots
    if len(s) != len(abroots):
        raise SizeMismatchError(
            f"{label} has {len(abroots)} positive roots, got {len(s)}"
        )
    ne = sum(1 for r in s if r.parity == EVEN)
    if ne != len(ab.even_roots):
        return None
    wmap = {r.weight: r for r in s}
    img: dict[int, Root] = {}
    used: set[Root] = set()

    def step(d: int) -> bool:
        if d == len(plan):
            return True
        mode, c, i, j = plan[d]
        target_parity = abroots[c].parity
        if mode == "forced":
            w = img[i].weight + img[j].weight
            t = wmap.get(w)
            if t is None or t in used or t.parity != target_parity:
                return False
            img[c] = t
            used.add(t)
            if step(d + 1):
                return True
            used.discard(t)
            del img[c]
            return False
        for t in s:
            if t.parity != target_parity or t in used:
                continue
            img[c] = t
            used.add(t)
            if step(d + 1):
                return True
            used.discard(t)
            del img[c]
        return False

    if not step(0):
        return None
    assignment = {abroots[c]: img[c] for c in range(len(abroots))}
    # confirm every abstract triple is mirrored (non-designated ones included)
    for i, j, k in ab.addition_triples:
        if assignment[abroots[i]].weight + assignment[abroots[j]].weight != assignment[abroots[k]].weight:
            return None
    if strict:
        inv = {v: k for k, v in assignment.items()}
        abstract_triples = {
            (min(abroots[i], abroots[j]), max(abroots[i], abroots[j]), abroots[k])
            for i, j, k in ab.addition_triples
        }
        for x in s:
            for y in s:
                if x > y:
                    continue
                z = wmap.get(x.weight + y.weight)
                if z is None:
                    continue
                key = (min(inv[x], inv[y]), max(inv[x], inv[y]), inv[z])
                if key not in abstract_triples:
                    return None
    return assignment


# ----------------------------------------------- candidate labels for parts

_ALIASES_FRESH_EXCLUDED = {
    ComponentLabel("Dn", (2,)),        # D_2 = 2A_1
    ComponentLabel("Dn", (3,)),        # D_3 = A_3
    ComponentLabel("Bn", (1,)),        # B_1 = A_1
    ComponentLabel("Cn", (1,)),        # C_1 = A_1
    ComponentLabel("Bsuper", (0, 1)),  # B(0,1) = A_1 + A(0,0) at equal rank
}


@lru_cache(maxsize=None)
def _fresh_labels_by_profile(max_size: int):
    """Static candidate labels grouped by (size, even_count, odd_count)."""
    labels: list[ComponentLabel] = [A00]
    r = 0
    while (r + 1) * r // 2 + (r + 1) <= max_size:  # A(r,0) grows slowest
        s = 0
        while True:
            lab = ComponentLabel("Asuper", (r, s))
            if lab.size > max_size:
                break
            if (r, s) != (0, 0):
                labels.append(lab)
            s += 1
        r += 1
    for m in range(0, max_size + 1):
        for n in range(1, max_size + 1):
            lab = ComponentLabel("Bsuper", (m, n))
            if lab.size > max_size:
                break
            labels.append(lab)
    for k in range(2, max_size + 2):
        lab = ComponentLabel("Csuper", (k,))
        if lab.size <= max_size:
            labels.append(lab)
    for m in range(2, max_size + 1):
        for n in range(1, max_size + 1):
            lab = ComponentLabel("Dsuper", (m, n))
            if lab.size > max_size:
                break
            labels.append(lab)
    for kind in ("An", "Bn", "Cn", "Dn"):
        k = 1 if kind in ("An", "Bn", "Cn") else 2
        while ComponentLabel(kind, (k,)).size <= max_size:
            labels.append(ComponentLabel(kind, (k,)))
            k += 1
    labels.append(ComponentLabel("G2", ()))

    order = {"Asuper": 0, "An": 1, "Bn": 2, "Bsuper": 3, "Cn": 4,
             "Csuper": 5, "Dn": 6, "Dsuper": 7, "G2": 8}

    def static_key(lab: ComponentLabel):
        if lab.kind == "Asuper":
            return (0, -lab.params[0], -lab.params[1])
        return (order[lab.kind],) + lab.params

    by_profile: dict[tuple[int, int, int], list[ComponentLabel]] = {}
    for lab in labels:
        if lab in _ALIASES_FRESH_EXCLUDED or lab.size > max_size:
            continue
        key = (lab.size, lab.even_count, lab.odd_count)
        by_profile.setdefault(key, []).append(lab)
    for key in by_profile:
        by_profile[key].sort(key=static_key)
    return by_profile


def _support_counts(roots) -> tuple[int, int]:
    eps_used, delta_used = set(), set()
    for r in roots:
        for i, c in enumerate(r.weight.eps):
            if c != 0:
                eps_used.add(i)
        for i, c in enumerate(r.weight.delta):
            if c != 0:
                delta_used.add(i)
    return len(eps_used), len(delta_used)


def _single_coordinate(w) -> bool:
    nz = [c for c in w.coeffs if c != 0]
    return len(nz) == 1


def _halved(w):
    from .weights import Weight

    return Weight(tuple(c / 2 for c in w.eps), tuple(c / 2 for c in w.delta))


def candidate_labels(part) -> list[ComponentLabel]:
    """Ordered fresh-typing candidates for a concrete part.

    Dynamic preferences (coordinate support, the C(2) doubled-root pattern)
    come first so structurally identical labels get the name a reader of the
    tables would use; ties fall back to a fixed deterministic order.
    """
    part = tuple(sorted(part))
    size = len(part)
    ne = sum(1 for r in part if r.parity == EVEN)
    static = _fresh_labels_by_profile(32).get((size, ne, size - ne), [])
    if not static:
        return []
    preferred: list[ComponentLabel] = []
    if ne < size:  # mixed parity: guess A(r,s) from coordinate support
        a, b = _support_counts(part)
        if a >= 1 and b >= 1:
            guess = ComponentLabel("Asuper", (a - 1, b - 1))
            if guess in static:
                preferred.append(guess)
    if size == 3 and ne == 1:
        evens = [r for r in part if r.parity == EVEN]
        odds = [r for r in part if r.parity == ODD]
        e, (o1, o2) = evens[0], odds
        c2 = ComponentLabel("Csuper", (2,))
        if (
            c2 in static
            and _single_coordinate(e.weight)
            and _single_coordinate(_halved(o1.weight + o2.weight))
        ):
            preferred = [c2] + preferred
    seen = set()
    out = []
    for lab in preferred + static:
        if lab not in seen:
            seen.add(lab)
            out.append(lab)
    return out


# -------------------------------------------------------------- decompose

@dataclass(frozen=True)
class Decomposition:
    parts: tuple[tuple[ComponentLabel, tuple[Root, ...]], ...]
    rank: int
    min_rank: int
    min_rank_parts: tuple[tuple[ComponentLabel, tuple[Root, ...]], ...]

    @property
    def labels(self) -> tuple[ComponentLabel, ...]:
        return tuple(lab for lab, _ in self.parts)

    def multiset_string(self) -> str:
        return render_multiset(self.labels)


def _decompose_cache(rs: RootSystem) -> dict:
    cache = rs.__dict__.get("_decompose_memo")
    if cache is None:
        cache = {}
        object.__setattr__(rs, "_decompose_memo", cache)
    return cache


def decompose(
    rs: RootSystem,
    roots,
    rank_budget: int | None = None,
    rank_mode: str = "zero-a00",
):
    """Best typing of a subset of rs's positive roots, or None over budget.

    The reported partition minimizes (component count, total effective rank,
    label list); feasibility against ``rank_budget`` uses the true minimum
    achievable rank, which the same search tracks.
    """
    idx = rs.index_of
    key_roots = frozenset(idx[r] for r in roots)
    memo = _decompose_cache(rs)
    positive = rs.positive_roots

    def erank(lab: ComponentLabel) -> int:
        return lab.effective_rank(rank_mode)

    def search(fs: frozenset):
        """Returns (group_key, group_parts, rank_key, rank_parts).

        group_key = (ncomp, rank, label-strings) orders the reported typing;
        rank_key = (rank, ncomp, label-strings) orders the least-rank typing
        used for budget checks.
        """
        if not fs:
            return (0, 0, ()), (), (0, 0, ()), ()
        hit = memo.get(fs)
        if hit is not None:
            return hit
        pivot = min(fs)
        rest = sorted(fs - {pivot})
        best_gkey = best_gparts = None
        best_rkey = best_rparts = None
        for size in range(len(fs), 0, -1):
            for comb in itertools.combinations(rest, size - 1):
                t = (pivot,) + comb
                part_roots = tuple(positive[i] for i in t)
                # one candidate per achievable rank; preference order settles
                # equal-rank aliases (A(1,0) vs A(0,1) vs C(2), B_2 vs C_2)
                matched_ranks: set[int] = set()
                sub = None
                for lab in candidate_labels(part_roots):
                    r = erank(lab)
                    if r in matched_ranks:
                        continue
                    try:
                        if match_component(part_roots, lab) is None:
                            continue
                    except SizeMismatchError:
                        continue
                    matched_ranks.add(r)
                    if sub is None:
                        sub = search(fs - frozenset(t))
                    sub_gkey, sub_gparts, sub_rkey, sub_rparts = sub
                    gcand = (
                        1 + sub_gkey[0],
                        r + sub_gkey[1],
                        tuple(sorted((str(lab),) + sub_gkey[2])),
                    )
                    if best_gkey is None or gcand < best_gkey:
                        best_gkey = gcand
                        best_gparts = ((lab, part_roots),) + sub_gparts
                    rcand = (
                        r + sub_rkey[0],
                        1 + sub_rkey[1],
                        tuple(sorted((str(lab),) + sub_rkey[2])),
                    )
                    if best_rkey is None or rcand < best_rkey:
                        best_rkey = rcand
                        best_rparts = ((lab, part_roots),) + sub_rparts
        result = (best_gkey, best_gparts, best_rkey, best_rparts)
        memo[fs] = result
        return result

    gkey, gparts, rkey, rparts = search(key_roots)
    if gkey is None:
        return None
    dec = Decomposition(gparts, gkey[1], rkey[0], rparts)
    if rank_budget is not None and rkey[0] > rank_budget:
        return None
    return dec


def match_multiset(roots, labels):
    """Partition ``roots`` realizing the exact label multiset, or None.

    Used by splint verification against claimed table types; any catalog
    label (aliases included) is acceptable here.
    """
    pool = tuple(sorted(roots))
    labs = sorted(labels, key=lambda l: (-l.size, str(l)))
    total = sum(l.size for l in labs)
    if total != len(pool):
        return None
    n = len(pool)

    def rec(avail: tuple[int, ...], labs_left):
        if not labs_left:
            return ()
        lab = labs_left[0]
        pivot = avail[0]
        others = avail[1:]
        for comb in itertools.combinations(others, lab.size - 1):
            t = (pivot,) + comb
            part = tuple(pool[i] for i in t)
            try:
                assign = match_component(part, lab)
            except SizeMismatchError:
                assign = None
            if assign is None:
                continue
            taken = set(t)
            sub = rec(tuple(i for i in avail if i not in taken), labs_left[1:])
            if sub is not None:
                return ((lab, part, assign),) + sub
        return None

    return rec(tuple(range(n)), tuple(labs))


# ------------------------------------------------------- multiset strings

def render_multiset(labels) -> str:
    """Canonical table-style string, e.g. "2A_1+4A(0,0)" (A(0,0) last)."""
    counts: dict[ComponentLabel, int] = {}
    for lab in labels:
        counts[lab] = counts.get(lab, 0) + 1
    def key(lab):
        return (1 if lab == A00 else 0, str(lab))
    chunks = []
    for lab in sorted(counts, key=key):
        c = counts[lab]
        chunks.append(f"{c}{lab}" if c > 1 else str(lab))
    return "+".join(chunks)


_TERM_RE = re.compile(r"^(\d*)(.+)$")


def parse_multiset(s: str) -> tuple[ComponentLabel, ...]:
    out: list[ComponentLabel] = []
    for term in s.replace(" ", "").split("+"):
        if not term:
            raise LabelError(f"empty term in multiset {s!r}")
        m = _TERM_RE.match(term)
        mult = int(m.group(1)) if m.group(1) else 1
        lab = parse_label(m.group(2))
        out.extend([lab] * mult)
    return tuple(sorted(out, key=lambda l: (1 if l == A00 else 0, str(l))))
