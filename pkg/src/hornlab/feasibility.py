"""Exact decision procedures for eigenvalue, singular-value and LR feasibility.

Every check here is exact: spectra are converted to Fractions and then
scaled by a common denominator so the inequality scans run on integers.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import lcm, prod

import numpy as np

from .errors import DomainError, ResourceLimitError, ValidationError
from .horn import HornTriple, r_set, r_set_m, s_set_m, t_set, t_set_m
from .lr import _between, lr_coefficient
from .partitions import Partition


def as_spectrum(values, name="spectrum"):
    """Tuple of Fractions, checked to be weakly decreasing."""
    try:
        vals = tuple(Fraction(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name}: {exc}") from None
    for x, y in zip(vals, vals[1:]):
        if x < y:
            raise ValidationError(f"{name} must be weakly decreasing: {[str(v) for v in vals]}")
    return vals


def _to_integers(*groups):
    """Scale several Fraction sequences by one common denominator."""
    den = lcm(1, *(v.denominator for g in groups for v in g))
    return den, [tuple(int(v * den) for v in g) for g in groups]


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    return x


@dataclass
class FeasibilityVerdict:
    feasible: bool
    witness: object = None
    lhs: Fraction = None
    rhs: Fraction = None
    trace_gap: Fraction = Fraction(0)
    multiplicity: int = None
    extra: dict = field(default_factory=dict)

    def __bool__(self):
        return self.feasible

    def to_json(self):
        out = {"feasible": self.feasible, "trace_gap": _jsonable(self.trace_gap)}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
            out["lhs"] = _jsonable(self.lhs)
            out["rhs"] = _jsonable(self.rhs)
        else:
            out["witness"] = None
        if self.multiplicity is not None:
            out["multiplicity"] = self.multiplicity
        out.update(self.extra)
        return out


def _horn_triples(kind, r, n):
    kind = kind.upper()
    if kind in ("T", "S"):
        # T = S, and T is far cheaper to build
        return t_set(r, n)
    if kind == "R":
        return r_set(r, n)
    raise DomainError(f"unknown set kind {kind!r}; expected T or R")


@lru_cache(maxsize=None)
def hermitian_system(kind, n):
    """All (I,J,K) for r < n in canonical order, with a 0/+1/-1 coefficient matrix.

    Row t gives sum_I alpha + sum_J beta - sum_K gamma for triple t.
    """
    triples = [t for r in range(1, n) for t in _horn_triples(kind, r, n)]
    W = np.zeros((len(triples), 3 * n), dtype=np.int64)
    for row, (I, J, K) in enumerate(triples):
        for i in I:
            W[row, i - 1] += 1
        for j in J:
            W[row, n + j - 1] += 1
        for k in K:
            W[row, 2 * n + k - 1] -= 1
    return tuple(triples), W


def _first_negative(W, vec):
    """Index of the first row with W @ vec < 0, or None.  Exact for any int size."""
    if not len(W):
        return None
    if max((abs(v) for v in vec), default=0) < 2 ** 50 // max(1, W.shape[1]):
        slack = W @ np.array(vec, dtype=np.int64)
    else:
        slack = W.astype(object) @ np.array(vec, dtype=object)
    bad = np.flatnonzero(slack < 0)
    return int(bad[0]) if len(bad) else None


def _same_length(*seqs):
    n = len(seqs[0])
    if any(len(s) != n for s in seqs):
        raise DomainError(f"spectra must have equal lengths, got {[len(s) for s in seqs]}")
    return n


def check_hermitian_triple(alpha, beta, gamma, set_kind="T"):
    """Do Hermitian A, B with spectra alpha, beta have a sum with spectrum gamma?

    Checks the trace equation and every Horn inequality
    sum_K gamma <= sum_I alpha + sum_J beta over the chosen set for r < n.
    The witness is the first violated triple in canonical order.
    """
    alpha, beta, gamma = (as_spectrum(s, name) for s, name in
                          ((alpha, "alpha"), (beta, "beta"), (gamma, "gamma")))
    n = _same_length(alpha, beta, gamma)
    gap = sum(gamma) - sum(alpha) - sum(beta)
    den, (a, b, c) = _to_integers(alpha, beta, gamma)
    triples, W = hermitian_system(set_kind.upper(), n)
    hit = _first_negative(W, a + b + c)
    if hit is None:
        return FeasibilityVerdict(gap == 0, trace_gap=gap)
    I, J, K = triples[hit]
    lhs = sum(gamma[k - 1] for k in K)
    rhs = sum(alpha[i - 1] for i in I) + sum(beta[j - 1] for j in J)
    return FeasibilityVerdict(False, triples[hit], lhs, rhs, gap)


def check_scalar_sum_tuple(spectra, set_kind="T"):
    """Can Hermitian matrices with the given spectra add up to a scalar matrix?

    The test is (1/r) sum_s sum_{i in I(s)} alpha_i(s) <= (1/n) sum of everything,
    for every m-tuple in T_r^n(m) (or R_r^n(m)) and every r < n.
    """
    spectra = [as_spectrum(s, f"spectrum {k + 1}") for k, s in enumerate(spectra)]
    m = len(spectra)
    if m < 2:
        raise DomainError("need at least two spectra")
    n = _same_length(*spectra)
    total = sum(sum(s) for s in spectra)
    pick = {"T": t_set_m, "S": s_set_m, "R": r_set_m}.get(set_kind.upper())
    if pick is None:
        raise DomainError(f"unknown set kind {set_kind!r}")
    for r in range(1, n):
        for tup in pick(r, n, m):
            part = sum(spectra[s][i - 1] for s, I in enumerate(tup.sets) for i in I)
            if n * part > r * total:
                return FeasibilityVerdict(False, tup, part / r, total / n)
    return FeasibilityVerdict(True, extra={"scalar": _jsonable(total / n)})


def _integers(values, name):
    vals = as_spectrum(values, name)
    if any(v.denominator != 1 for v in vals):
        raise DomainError(f"{name} must be integral")
    return tuple(int(v) for v in vals)


def check_integral_via_lr(alpha, beta, gamma):
    """Feasibility of integral spectra through positivity of an LR coefficient.

    Negative entries are handled by adding a constant to alpha, another to
    beta, and their sum to gamma, which moves every spectrum into partitions.
    """
    a, b, c = _integers(alpha, "alpha"), _integers(beta, "beta"), _integers(gamma, "gamma")
    n = _same_length(a, b, c)
    gap = Fraction(sum(c) - sum(a) - sum(b))
    if n == 0:
        return FeasibilityVerdict(True, multiplicity=1)
    s = -min(0, a[-1])
    t = -min(0, b[-1])
    lam = Partition(x + s for x in a)
    mu = Partition(x + t for x in b)
    if c[-1] + s + t < 0:
        # gamma_n < alpha_n + beta_n (Weyl), so c is zero
        return FeasibilityVerdict(False, trace_gap=gap, multiplicity=0)
    nu = Partition(x + s + t for x in c)
    mult = lr_coefficient(lam, mu, nu)
    return FeasibilityVerdict(mult > 0, trace_gap=gap, multiplicity=mult)


def check_rational_via_lr(alpha, beta, gamma):
    """Rational spectra: multiply by a common denominator, then use the LR test."""
    alpha, beta, gamma = as_spectrum(alpha), as_spectrum(beta), as_spectrum(gamma)
    _, (a, b, c) = _to_integers(alpha, beta, gamma)
    verdict = check_integral_via_lr(a, b, c)
    verdict.trace_gap = sum(gamma) - sum(alpha) - sum(beta)
    return verdict


def feasible_gammas(alpha, beta, n=None):
    """Every gamma with c_{alpha beta}^{gamma} > 0.

    With ``n`` given, gamma is limited to n parts and returned padded to
    length n; otherwise the results are plain partitions.
    """
    a = Partition(_integers(alpha, "alpha"))
    b = Partition(_integers(beta, "beta"))
    rows = len(a) + len(b)
    if n is not None:
        if len(a) > n or len(b) > n:
            raise DomainError(f"alpha and beta must have at most {n} nonzero parts")
        rows = min(rows, n)
    lower = [max(x, y) for x, y in zip(a.padded(max(len(a), len(b))), b.padded(max(len(a), len(b))))]
    cap = (a[0] if a else 0) + (b[0] if b else 0)
    out = [g for g in _between(lower, rows, cap, a.weight + b.weight) if lr_coefficient(a, b, g) > 0]
    if n is not None:
        return [g.padded(n) for g in out]
    return out


def gamma_k_interval(alpha, beta, k):
    """Range of gamma_k: [max_{i+j=n+k} alpha_i+beta_j, min_{i+j=k+1} alpha_i+beta_j]."""
    alpha, beta = as_spectrum(alpha, "alpha"), as_spectrum(beta, "beta")
    n = _same_length(alpha, beta)
    if not 1 <= k <= n:
        raise DomainError(f"k must lie in 1..{n}, got {k}")
    low = max(alpha[i - 1] + beta[n + k - i - 1] for i in range(k, n + 1))
    high = min(alpha[i - 1] + beta[k - i] for i in range(1, k + 1))
    return low, high


def fiedler_bounds(alpha, beta):
    """(min, max) over permutations sigma of prod (alpha_i + beta_sigma(i))."""
    alpha, beta = as_spectrum(alpha, "alpha"), as_spectrum(beta, "beta")
    n = _same_length(alpha, beta)
    if n > 8:
        raise ResourceLimitError("fiedler_bounds enumerates n! permutations; n <= 8 supported")
    vals = [prod((alpha[i] + beta[s[i]] for i in range(n)), start=Fraction(1))
            for s in permutations(range(n))]
    return min(vals), max(vals)


@dataclass(frozen=True)
class SignedInequality:
    """sum(lhs) <= sum(rhs); terms are (symbol, index) with symbol in a, b, c."""

    lhs: tuple
    rhs: tuple

    def __str__(self):
        def side(terms):
            return " + ".join(f"{s}_{i}" for s, i in terms) or "0"
        return f"{side(self.lhs)} <= {side(self.rhs)}"

    def evaluate(self, a, b, c):
        vals = {"a": a, "b": b, "c": c}
        lhs = sum((vals[s][i - 1] for s, i in self.lhs), start=Fraction(0))
        rhs = sum((vals[s][i - 1] for s, i in self.rhs), start=Fraction(0))
        return lhs, rhs

    def coefficients(self, q):
        """Row vector over (a_1..a_q, b_1..b_q, c_1..c_q) of rhs - lhs."""
        w = [0] * (3 * q)
        offset = {"a": 0, "b": q, "c": 2 * q}
        for s, i in self.rhs:
            w[offset[s] + i - 1] += 1
        for s, i in self.lhs:
            w[offset[s] + i - 1] -= 1
        return w

    def to_json(self):
        return {"lhs": [f"{s}_{i}" for s, i in self.lhs],
                "rhs": [f"{s}_{i}" for s, i in self.rhs], "text": str(self)}


def singular_inequality(triple, m, n):
    """The singular-value inequality attached to a triple in ambient m + n.

    It reads sum_{K,<=q} c - sum_{K',<=q} c <= sum_{I,<=q} a - sum_{I',<=q} a
    + (same for b, J), with I' = {i : m+n+1-i in I} and q = min(m, n), after
    cancelling and moving negative terms across.
    """
    I, J, K = triple
    N, q = m + n, min(m, n)

    def signed(S):
        members = set(S)
        return {i: (i in members) - (N + 1 - i in members) for i in range(1, q + 1)}

    coeff = {}
    for i, v in signed(K).items():
        coeff[("c", i)] = v
    for sym, S in (("a", I), ("b", J)):
        for i, v in signed(S).items():
            coeff[(sym, i)] = -v
    lhs = tuple(sorted(k for k, v in coeff.items() if v > 0))
    rhs = tuple(sorted(k for k, v in coeff.items() if v < 0))
    return SignedInequality(lhs, rhs)


@lru_cache(maxsize=None)
def singular_system(kind, m, n):
    N, q = m + n, min(m, n)
    triples = [t for r in range(1, N) for t in _horn_triples(kind, r, N)]
    ineqs = [singular_inequality(t, m, n) for t in triples]
    W = np.array([iq.coefficients(q) for iq in ineqs], dtype=np.int64).reshape(-1, 3 * q)
    return tuple(triples), tuple(ineqs), W


def _nonnegative(values, name):
    vals = as_spectrum(values, name)
    if vals and vals[-1] < 0:
        raise ValidationError(f"{name} must be nonnegative")
    return vals


def check_singular_additive(a, b, c, m, n, set_kind="T"):
    """Are a, b, c the singular values of m x n complex matrices A, B, A + B?"""
    a, b, c = _nonnegative(a, "a"), _nonnegative(b, "b"), _nonnegative(c, "c")
    q = min(m, n)
    if not (len(a) == len(b) == len(c) == q):
        raise DomainError(f"singular value lists must have length min(m, n) = {q}")
    triples, ineqs, W = singular_system(set_kind.upper(), m, n)
    _, (ia, ib, ic) = _to_integers(a, b, c)
    hit = _first_negative(W, ia + ib + ic)
    if hit is None:
        return FeasibilityVerdict(True)
    lhs, rhs = ineqs[hit].evaluate(a, b, c)
    return FeasibilityVerdict(False, triples[hit], lhs, rhs,
                              extra={"inequality": str(ineqs[hit])})


def check_singular_multiplicative(a, b, c, n=None):
    """Are a, b, c the singular values of n x n matrices A, B, AB?

    Needs prod c = prod a * prod b (reported as trace_gap = prod c - prod a prod b)
    and prod_K c <= prod_I a * prod_J b over T_r^n, r < n, compared exactly.
    """
    a, b, c = as_spectrum(a, "a"), as_spectrum(b, "b"), as_spectrum(c, "c")
    if n is None:
        n = len(a)
    if not (len(a) == len(b) == len(c) == n):
        raise DomainError(f"singular value lists must have length {n}")
    for name, vals in (("a", a), ("b", b), ("c", c)):
        if vals and vals[-1] <= 0:
            raise DomainError(f"{name} must be strictly positive (take limits externally)")
    gap = prod(c, start=Fraction(1)) - prod(a, start=Fraction(1)) * prod(b, start=Fraction(1))
    for r in range(1, n):
        for I, J, K in t_set(r, n):
            lhs = prod((c[k - 1] for k in K), start=Fraction(1))
            rhs = prod((a[i - 1] for i in I), start=Fraction(1)) * prod((b[j - 1] for j in J), start=Fraction(1))
            if lhs > rhs:
                return FeasibilityVerdict(False, HornTriple(I, J, K), lhs, rhs, gap)
    return FeasibilityVerdict(gap == 0, trace_gap=gap)


def _buch_conditions(triple, n):
    N = 2 * n
    for S in triple:
        members = set(S)
        if any(N + 1 - t in members for t in S):
            return False

    def missing(S):
        members = set(S)
        bar = sorted({i if i <= n else N + 1 - i for i in S})
        return {p for p, i in enumerate(bar, 1) if i not in members}

    I, J, K = triple
    mi, mj = missing(I), missing(J)
    return not (mi & mj) and missing(K) == mi | mj


def buch_facet_candidates(n):
    """Triples of R_r^{2n}, r <= n, passing both of Buch's conditions, with inequalities."""
    if n < 2:
        raise DomainError("need n >= 2")
    out = []
    for r in range(1, n + 1):
        for t in r_set(r, 2 * n):
            if _buch_conditions(t, n):
                out.append((t, singular_inequality(t, n, n)))
    return out
