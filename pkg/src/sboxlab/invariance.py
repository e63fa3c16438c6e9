"""Subspace enumeration over F_2^m and the strong anti-invariance test."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .core import SBox


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of F_2^m with its canonical reduced row-echelon basis."""

    m: int
    dim: int
    basis: tuple[int, ...]
    elements: tuple[int, ...]


def gaussian_binomial(m: int, d: int) -> int:
    """Number of d-dimensional subspaces of F_2^m."""
    if not 0 <= d <= m:
        return 0
    num = den = 1
    for i in range(d):
        num *= (1 << m) - (1 << i)
        den *= (1 << d) - (1 << i)
    return num // den


def _span(m: int, basis: tuple[int, ...]) -> tuple[int, ...]:
    elements = [0]
    for row in basis:
        elements += [e ^ row for e in elements]
    return tuple(sorted(elements))


@lru_cache(maxsize=None)
def _subspaces(m: int, d: int) -> tuple[Subspace, ...]:
    if d == 0:
        return (Subspace(m, 0, (), (0,)),)
    out = []
    # Columns are bit positions read most-significant first; each subspace has
    # exactly one basis in reduced row-echelon form with pivot columns c_1<...<c_d,
    # free entries only at non-pivot columns to the right of each row's pivot.
    for pivots in combinations(range(m), d):
        pivot_set = set(pivots)
        free = [(i, col)
                for i, p in enumerate(pivots)
                for col in range(p + 1, m)
                if col not in pivot_set]
        for assign in range(1 << len(free)):
            rows = [1 << (m - 1 - p) for p in pivots]
            for k, (i, col) in enumerate(free):
                if (assign >> k) & 1:
                    rows[i] |= 1 << (m - 1 - col)
            basis = tuple(rows)
            out.append(Subspace(m, d, basis, _span(m, basis)))
    return tuple(out)


def enumerate_subspaces(m: int, d: int) -> list[Subspace]:
    """All d-dimensional subspaces of F_2^m, each exactly once."""
    if not 0 <= d <= m <= 8:
        raise ValueError(f"need 0 <= d <= m <= 8, got d={d}, m={m}")
    return list(_subspaces(m, d))


def is_subspace(values) -> bool:
    """True iff the given set of bitmasks is a linear subspace: contains 0,
    closed under XOR, and of power-of-two size."""
    s = set(values)
    if not s or 0 not in s:
        return False
    if len(s) & (len(s) - 1):
        return False
    return all(a ^ b in s for a in s for b in s)


def is_strongly_anti_invariant(f: SBox, l: int) -> bool:
    """True iff no proper subspace of dimension >= m - l maps onto a subspace.

    Since f is a bijection fixing 0, f(V) = W forces W = f(V) of the same
    size, so it suffices to test whether any image f(V) is itself a subspace
    for dim(V) in [m - l, m - 1]. The whole space (and the trivial subspace,
    which always maps to itself) are excluded.
    """
    if not 1 <= l <= f.m:
        raise ValueError(f"need 1 <= l <= m={f.m}, got l={l}")
    if not f.bijective:
        raise ValueError("anti-invariance is defined for bijective S-boxes")
    if not f.normalized:
        raise ValueError("anti-invariance requires f(0) = 0; normalize first "
                         "(the measure is not translation-invariant)")
    t = f.table
    for d in range(max(1, f.m - l), f.m):
        for sub in _subspaces(f.m, d):
            if is_subspace(t[e] for e in sub.elements):
                return False
    return True
