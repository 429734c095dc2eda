"""Horn's sets U, T, S, R of index triples and their m-fold versions.

Triples are plain tuples of 1-based index tuples; every list is sorted
lexicographically on (I, J, K) (or on the m-tuple of sets).
"""
from functools import lru_cache
from itertools import combinations, product
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .lr import lr_coefficient, point_class_multiple
from .partitions import partition_from_subset


class HornTriple(NamedTuple):
    I: tuple
    J: tuple
    K: tuple

    @property
    def r(self):
        return len(self.I)

    def to_json(self):
        return {"I": list(self.I), "J": list(self.J), "K": list(self.K)}


class HornTuple(NamedTuple):
    """An m-tuple of r-subsets; the last set plays the role of K where relevant."""

    sets: tuple

    @property
    def m(self):
        return len(self.sets)

    @property
    def r(self):
        return len(self.sets[0])

    def to_json(self):
        return {"sets": [list(s) for s in self.sets]}


def _check(r, n):
    if not (1 <= r < n):
        raise DomainError(f"need 1 <= r < n, got r={r}, n={n}")


def tri(r):
    return r * (r + 1) // 2


@lru_cache(maxsize=None)
def _subsets_by_sum(r, n):
    groups = {}
    for S in combinations(range(1, n + 1), r):
        groups.setdefault(sum(S), []).append(S)
    return groups


@lru_cache(maxsize=None)
def u_set(r, n):
    """Triples with sum(I) + sum(J) = sum(K) + r(r+1)/2."""
    _check(r, n)
    subsets = list(combinations(range(1, n + 1), r))
    groups = _subsets_by_sum(r, n)
    out = []
    for I in subsets:
        sI = sum(I)
        for J in subsets:
            for K in groups.get(sI + sum(J) - tri(r), ()):
                out.append(HornTriple(I, J, K))
    return tuple(out)


def _constraints(r):
    """Coefficient matrix and bounds for every (F, G, H) in T_p^r, p < r."""
    rows, bounds = [], []
    for p in range(1, r):
        for F, G, H in t_set(p, r):
            w = [0] * (3 * r)
            for f in F:
                w[f - 1] += 1
            for g in G:
                w[r + g - 1] += 1
            for h in H:
                w[2 * r + h - 1] -= 1
            rows.append(w)
            bounds.append(tri(p))
    return np.array(rows, dtype=np.int64).reshape(-1, 3 * r), np.array(bounds, dtype=np.int64)


@lru_cache(maxsize=None)
def t_set(r, n):
    """Horn's recursive set T_r^n (T_1^n = U_1^n)."""
    _check(r, n)
    cands = u_set(r, n)
    if r == 1 or not cands:
        return cands
    W, b = _constraints(r)
    X = np.array([I + J + K for I, J, K in cands], dtype=np.int64)
    ok = np.all(X @ W.T <= b, axis=1)
    return tuple(t for t, keep in zip(cands, ok) if keep)


def t_violations(triple):
    """All (F, G, H, lhs, rhs) in T_p^r, p < r, whose inequality the triple breaks.

    The triple itself is only required to have three r-subsets; the ambient n
    plays no role in the recursive conditions.  Violations come in canonical
    order (p ascending, then lexicographic).
    """
    I, J, K = triple
    r = len(I)
    out = []
    for p in range(1, r):
        for F, G, H in t_set(p, r):
            lhs = sum(I[f - 1] for f in F) + sum(J[g - 1] for g in G)
            rhs = sum(K[h - 1] for h in H) + tri(p)
            if lhs > rhs:
                out.append((HornTriple(F, G, H), lhs, rhs))
    return out


def in_u_set(triple, n):
    I, J, K = triple
    r = len(I)
    if not (len(J) == len(K) == r and 1 <= r < n):
        return False
    for S in (I, J, K):
        if list(S) != sorted(set(S)) or S[0] < 1 or S[-1] > n:
            return False
    return sum(I) + sum(J) == sum(K) + tri(r)


def in_t_set(triple, n):
    """Membership in T_r^n without enumerating the whole set."""
    return in_u_set(triple, n) and not t_violations(triple)


def lr_of_triple(triple):
    I, J, K = triple
    return lr_coefficient(partition_from_subset(I), partition_from_subset(J), partition_from_subset(K))


@lru_cache(maxsize=None)
def s_set(r, n):
    """Triples of U_r^n with c_{lambda(I) lambda(J)}^{lambda(K)} > 0."""
    return tuple(t for t in u_set(r, n) if lr_of_triple(t) > 0)


@lru_cache(maxsize=None)
def r_set(r, n):
    """Triples of U_r^n with c_{lambda(I) lambda(J)}^{lambda(K)} = 1."""
    return tuple(t for t in s_set(r, n) if lr_of_triple(t) == 1)


def h_set_small(r, n):
    """Closed-form sets H_1^n and H_2^n (all triples of r-subsets passing them)."""
    if r not in (1, 2):
        raise DomainError("closed forms are only available for r = 1, 2")
    _check(r, n)
    subsets = list(combinations(range(1, n + 1), r))
    out = []
    for I, J, K in product(subsets, repeat=3):
        if r == 1:
            ok = I[0] + J[0] <= K[0] + 1
        else:
            (i1, i2), (j1, j2), (k1, k2) = I, J, K
            ok = (i1 + j1 <= k1 + 1 and i1 + j2 <= k2 + 1 and i2 + j1 <= k2 + 1
                  and i1 + i2 + j1 + j2 <= k1 + k2 + 3)
        if ok:
            out.append(HornTriple(I, J, K))
    return out


def _check_m(r, n, m):
    if m < 2:
        raise DomainError(f"need m >= 2 factors, got {m}")
    _check(r, n)


def tuple_target(r, n, m):
    """Required total sum for an m-tuple: (m-1) r (n-r) + m r(r+1)/2."""
    return (m - 1) * r * (n - r) + m * tri(r)


@lru_cache(maxsize=None)
def u_set_m(r, n, m):
    _check_m(r, n, m)
    subsets = list(combinations(range(1, n + 1), r))
    groups = _subsets_by_sum(r, n)
    target = tuple_target(r, n, m)
    out = []
    for head in product(subsets, repeat=m - 1):
        for last in groups.get(target - sum(map(sum, head)), ()):
            out.append(HornTuple(head + (last,)))
    return tuple(out)


@lru_cache(maxsize=None)
def t_set_m(r, n, m):
    """Recursive set T_r^n(m); T_1^n(m) = U_1^n(m).

    A tuple survives when sum_s sum_{f in F(s)} (i_f(s) - f) >= (m-1) p (n-r)
    for every F in T_p^r(m), p < r.
    """
    cands = u_set_m(r, n, m)
    if r == 1 or not cands:
        return cands
    rows, bounds = [], []
    for p in range(1, r):
        for F in t_set_m(p, r, m):
            w = [0] * (m * r)
            for s, Fs in enumerate(F.sets):
                for f in Fs:
                    w[s * r + f - 1] += 1
            rows.append(w)
            # sum over s, f in F(s) of (i_f(s) - f) >= (m-1) p (n-r)
            bounds.append((m - 1) * p * (n - r) + sum(map(sum, F.sets)))
    W = np.array(rows, dtype=np.int64)
    b = np.array(bounds, dtype=np.int64)
    X = np.array([sum(t.sets, ()) for t in cands], dtype=np.int64)
    ok = np.all(X @ W.T >= b, axis=1)
    return tuple(t for t, keep in zip(cands, ok) if keep)


@lru_cache(maxsize=None)
def _multiples(r, n, m):
    return tuple((t, point_class_multiple(list(t.sets), r, n)) for t in u_set_m(r, n, m))


def s_set_m(r, n, m):
    """m-tuples whose omega classes multiply to a nonzero multiple of the point."""
    return tuple(t for t, d in _multiples(r, n, m) if d > 0)


def r_set_m(r, n, m):
    """m-tuples whose omega classes multiply to exactly the point class."""
    return tuple(t for t, d in _multiples(r, n, m) if d == 1)


def horn_set(kind, r, n, m=None):
    """Dispatch on kind in {U, T, S, R, H}; passing m selects the m-fold sets."""
    kind = kind.upper()
    if m is None:
        table = {"U": u_set, "T": t_set, "S": s_set, "R": r_set, "H": h_set_small}
        args = (r, n)
    else:
        table = {"U": u_set_m, "T": t_set_m, "S": s_set_m, "R": r_set_m}
        args = (r, n, m)
    if kind not in table:
        raise DomainError(f"unknown set kind {kind!r}")
    return table[kind](*args)
