"""Orbit-canonicalization kernel selection.

The hot loop of splint enumeration minimizes a 4-tuple of root-subset
bitmasks over every element of the even Weyl group.  A compiled Cython
kernel (``splintkit._speedups``) is used when available; the pure-Python
implementation below is the reference and the fallback.  Set
SPLINTKIT_PURE=1 to force the fallback.

Both implementations must agree bit-for-bit: the canonical representative
is the lexicographically smallest (even1, even2, odd1, odd2) tuple of
masks compared as integers.
"""
from __future__ import annotations

import os


def prepare_perms_python(abs_perms: list[tuple[int, ...]], nroots: int):
    """Per-element tables mapping source bit index to target bit value."""
    return [tuple(1 << p[i] for i in range(nroots)) for p in abs_perms]


def _transform(mask: int, bits) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= bits[low.bit_length() - 1]
        mask ^= low
    return out


def canonical_quadruple_python(e1, e2, o1, o2, tables, swap):
    best = None
    for bits in tables:
        a = _transform(e1, bits)
        b = _transform(e2, bits)
        c = _transform(o1, bits)
        d = _transform(o2, bits)
        cand = (a, b, c, d)
        if swap:
            other = (b, a, d, c)
            if other < cand:
                cand = other
        if best is None or cand < best:
            best = cand
    return best


_IMPL = "python"
prepare_perms = prepare_perms_python
canonical_quadruple = canonical_quadruple_python

if os.environ.get("SPLINTKIT_PURE") != "1":
    try:
        from . import _speedups as _ext

        prepare_perms = _ext.prepare_perms
        canonical_quadruple = _ext.canonical_quadruple
        _IMPL = "cython"
    except ImportError:
        pass


def implementation() -> str:
    """Which kernel is active: "cython" or "python"."""
    return _IMPL
