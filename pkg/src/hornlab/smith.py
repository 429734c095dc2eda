"""Smith normal forms, invariant-factor feasibility, Carlson's problem, and a subgroup oracle.

Integer matrices are lists of lists of ints.  Polynomial matrices hold
sympy ``Poly`` objects over QQ; :func:`poly` builds one from a coefficient
list written constant term first.
"""
from dataclasses import dataclass
from itertools import combinations, product as cartesian
from math import gcd

import sympy
from sympy import QQ, Poly

from .errors import DomainError, ResourceLimitError, ValidationError
from .feasibility import check_hermitian_triple
from .lr import _between, lr_coefficient
from .partitions import Partition, conjugate, partitions_of, subpartitions

T = sympy.Symbol("T")


def poly(coeffs):
    """Polynomial in T from coefficients [c0, c1, ...] (constant first)."""
    return Poly(list(reversed([sympy.Rational(str(c)) for c in coeffs])) or [0], T, domain=QQ)


def poly_coeffs(p):
    """Inverse of :func:`poly`; rationals that are integers come back as ints."""
    out = []
    for c in reversed(p.all_coeffs()):
        c = sympy.Rational(c)
        out.append(int(c) if c.q == 1 else str(c))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


class _Integers:
    name = "Z"
    zero, one = 0, 1

    @staticmethod
    def size(x):
        return abs(x)

    @staticmethod
    def divmod(a, b):
        return divmod(a, b)

    @staticmethod
    def exquo(a, b):
        q, r = divmod(a, b)
        assert r == 0
        return q

    @staticmethod
    def unit(x):
        """(u, u^-1) with u * x in canonical form."""
        return (-1, -1) if x < 0 else (1, 1)

    @staticmethod
    def is_unit(x):
        return x in (1, -1)


class _Polynomials:
    name = "Q[T]"
    zero = Poly(0, T, domain=QQ)
    one = Poly(1, T, domain=QQ)

    @staticmethod
    def size(x):
        return x.degree()

    @staticmethod
    def divmod(a, b):
        return a.div(b)

    @staticmethod
    def exquo(a, b):
        return a.exquo(b)

    @staticmethod
    def unit(x):
        lc = x.LC()
        return Poly(1 / lc, T, domain=QQ), Poly(lc, T, domain=QQ)

    @staticmethod
    def is_unit(x):
        return not x.is_zero and x.degree() == 0


def _ring_of(M):
    if any(isinstance(x, Poly) for row in M for x in row):
        return _Polynomials
    return _Integers


def _normalize(M):
    M = [list(row) for row in M]
    n = len(M)
    if any(len(row) != n for row in M) or n == 0:
        raise DomainError("Smith form needs a nonempty square matrix")
    ring = _ring_of(M)
    if ring is _Polynomials:
        M = [[x if isinstance(x, Poly) else Poly(x, T, domain=QQ) for x in row] for row in M]
    else:
        M = [[int(x) for x in row] for row in M]
    return M, ring


def _is_zero(x):
    return x == 0 if isinstance(x, int) else x.is_zero


def determinant(M, ring=None):
    """Fraction-free (Bareiss) determinant over Z or Q[T]."""
    if ring is None:
        M, ring = _normalize(M)
    A = [list(row) for row in M]
    n = len(A)
    sign, prev = 1, ring.one
    for k in range(n - 1):
        if _is_zero(A[k][k]):
            swap = next((i for i in range(k + 1, n) if not _is_zero(A[i][k])), None)
            if swap is None:
                return ring.zero
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = ring.exquo(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev)
        prev = A[k][k]
    return A[-1][-1] * sign if n else ring.one


def matmul(A, B, ring):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), ring.zero)
             for j in range(len(B[0]))] for i in range(len(A))]


@dataclass
class SmithResult:
    """M = P * diag(diagonal) * Q with P and Q invertible over the ring."""

    diagonal: list
    P: list
    Q: list
    ring: str

    def diagonal_matrix(self):
        zero = 0 if self.ring == "Z" else _Polynomials.zero
        n = len(self.diagonal)
        return [[self.diagonal[i] if i == j else zero for j in range(n)] for i in range(n)]

    def to_json(self):
        conv = (lambda x: x) if self.ring == "Z" else poly_coeffs
        return {
            "ring": self.ring,
            "diagonal": [conv(d) for d in self.diagonal],
            "P": [[conv(x) for x in row] for row in self.P],
            "Q": [[conv(x) for x in row] for row in self.Q],
        }


def smith_form(M):
    """Smith normal form of a nonsingular square matrix over Z or Q[T].

    Pivots are chosen by smallest absolute value (Z) or lowest degree (Q[T]),
    ties going to the first position in row-major order.  Diagonal entries are
    positive (Z) or monic (Q[T]) and each divides the next.
    """
    D, ring = _normalize(M)
    n = len(D)
    P = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    Q = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]

    # Invariant: M = P * D * Q.  A row operation D <- E D is paired with
    # P <- P E^-1, a column operation D <- D F with Q <- F^-1 Q.
    def add_row(i, j, c):  # row_i += c row_j
        D[i] = [x + c * y for x, y in zip(D[i], D[j])]
        for row in P:
            row[j] = row[j] - c * row[i]

    def add_col(i, j, c):  # col_i += c col_j
        for row in D:
            row[i] = row[i] + c * row[j]
        Q[j] = [x - c * y for x, y in zip(Q[j], Q[i])]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        for row in P:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        Q[i], Q[j] = Q[j], Q[i]

    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    x = D[i][j]
                    if not _is_zero(x) and (best is None or ring.size(x) < best[0]):
                        best = (ring.size(x), i, j)
            if best is None:
                raise DomainError("matrix is singular")
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            pivot = D[t][t]
            clean = True
            for i in range(t + 1, n):
                if not _is_zero(D[i][t]):
                    q, r = ring.divmod(D[i][t], pivot)
                    add_row(i, t, -q)
                    clean = clean and _is_zero(r)
            for j in range(t + 1, n):
                if not _is_zero(D[t][j]):
                    q, r = ring.divmod(D[t][j], pivot)
                    add_col(j, t, -q)
                    clean = clean and _is_zero(r)
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n)
                        if not _is_zero(ring.divmod(D[i][j], pivot)[1])), None)
            if bad is None:
                break
            add_row(t, bad[0], ring.one)
        u, u_inv = ring.unit(D[t][t])
        D[t] = [x * u for x in D[t]]
        for row in P:
            row[t] = row[t] * u_inv
    return SmithResult([D[i][i] for i in range(n)], P, Q, ring.name)


def verify_certificate(M, result):
    """Exact check that M = P D Q, P and Q are invertible, and d_i | d_{i+1}."""
    M, ring = _normalize(M)
    PDQ = matmul(matmul(result.P, result.diagonal_matrix(), ring), result.Q, ring)
    same = all(_is_zero(x - y) for rx, ry in zip(PDQ, M) for x, y in zip(rx, ry))
    units = ring.is_unit(determinant(result.P, ring)) and ring.is_unit(determinant(result.Q, ring))
    d = result.diagonal
    divides = all(_is_zero(ring.divmod(d[i + 1], d[i])[1]) for i in range(len(d) - 1))
    return same and units and divides


def _check_prime(p):
    if not isinstance(p, int) or not sympy.isprime(p):
        raise ValidationError(f"{p!r} is not a prime")


def valuation(x, p):
    if x == 0:
        raise DomainError("valuation of zero")
    x, v = abs(x), 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def invariant_factors_at(M, p):
    """p-adic valuations of the Smith diagonal of an integer matrix, decreasing."""
    _check_prime(p)
    res = smith_form(M)
    if res.ring != "Z":
        raise DomainError("invariant_factors_at expects an integer matrix")
    return tuple(sorted((valuation(d, p) for d in res.diagonal), reverse=True))


def invariant_factors_by_minors(M, p):
    """Same chain from gcds of k x k minors (determinantal divisors)."""
    _check_prime(p)
    M, ring = _normalize(M)
    if ring is not _Integers:
        raise DomainError("expects an integer matrix")
    n = len(M)
    vals = [0]
    for k in range(1, n + 1):
        g = 0
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                g = gcd(g, determinant([[M[i][j] for j in cols] for i in rows], _Integers))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            raise DomainError("matrix is singular")
        vals.append(valuation(g, p))
    return tuple(sorted((vals[k] - vals[k - 1] for k in range(1, n + 1)), reverse=True))


def as_chain(values, name="chain"):
    vals = tuple(int(v) for v in values)
    if any(v < 0 for v in vals):
        raise ValidationError(f"{name} must be nonnegative")
    if any(a < b for a, b in zip(vals, vals[1:])):
        raise ValidationError(f"{name} must be weakly decreasing")
    return vals


def feasible_factor_triple(alpha, beta, gamma):
    """Can A, B, C = AB over a DVR have invariant-factor exponents alpha, beta, gamma?"""
    alpha, beta, gamma = as_chain(alpha, "alpha"), as_chain(beta, "beta"), as_chain(gamma, "gamma")
    if not len(alpha) == len(beta) == len(gamma):
        raise DomainError("chains must have equal lengths")
    return lr_coefficient(alpha, beta, gamma) > 0


@dataclass(frozen=True)
class FactoredChain:
    """Invariant factors of an n x n matrix as exponent chains per prime label."""

    n: int
    factors: tuple  # sorted ((label, exponents), ...)

    @classmethod
    def make(cls, n, mapping):
        items = []
        for label, exps in mapping.items():
            exps = as_chain(exps, f"chain at {label}")
            if len(exps) > n:
                raise DomainError(f"chain at {label} is longer than {n}")
            exps = exps + (0,) * (n - len(exps))
            if any(exps):
                items.append((str(label), exps))
        return cls(n, tuple(sorted(items)))

    def at(self, label):
        return dict(self.factors).get(label, (0,) * self.n)

    def labels(self):
        return {label for label, _ in self.factors}

    def to_json(self):
        return [{"prime": label, "exponents": list(exps)} for label, exps in self.factors]

    def __str__(self):
        return ";".join(f"{label}:{','.join(map(str, exps))}" for label, exps in self.factors) or "1"


def parse_chain(text, n=None):
    """Parse "T:2,1;T+1:1" into a FactoredChain ("1" or "" is the empty product)."""
    mapping = {}
    text = text.strip()
    if text not in ("", "1"):
        for part in text.split(";"):
            label, sep, exps = part.partition(":")
            if not sep or not label.strip():
                raise ValidationError(f"cannot parse chain component {part!r}")
            try:
                mapping[label.strip()] = tuple(int(e) for e in exps.split(","))
            except ValueError:
                raise ValidationError(f"cannot parse exponents in {part!r}") from None
    if n is None:
        n = max((len(v) for v in mapping.values()), default=0)
    return FactoredChain.make(n, mapping)


def _reachable(parts, n):
    """Partitions delta with at most n rows such that s_delta occurs in prod s_part."""
    current = {Partition()}
    for lam in parts:
        lam = Partition(lam)
        nxt = set()
        for g in current:
            width = (g[0] if g else 0) + (lam[0] if lam else 0)
            lower = [max(x, y) for x, y in zip(g.padded(n), lam.padded(n))]
            for d in _between(lower, n, width, g.weight + lam.weight):
                if d not in nxt and lr_coefficient(g, lam, d) > 0:
                    nxt.add(d)
        current = nxt
    return current


def feasible_chain_tuple(chains, product_chain):
    """Invariant factors of A(1) ... A(m) given those of each factor, prime by prime."""
    n = product_chain.n
    if any(c.n != n for c in chains):
        raise DomainError("all chains must have the same length")
    labels = set(product_chain.labels()).union(*(c.labels() for c in chains))
    for label in sorted(labels):
        parts = [c.at(label) for c in chains]
        gamma = product_chain.at(label)
        if sum(map(sum, parts)) != sum(gamma):
            return False
    for label in sorted(labels):
        parts = [c.at(label) for c in chains]
        if Partition(product_chain.at(label)) not in _reachable(parts, n):
            return False
    return True


def carlson_feasible(a, b, c):
    """Invariant factors c of [[A, *], [0, B]] given a (size p) and b (size q).

    Per prime, pad a and b with zeros to length n = p + q and require the
    determinant balance plus every Horn inequality over T_r^n.
    """
    p, q = a.n, b.n
    n = p + q
    if c.n != n:
        raise DomainError(f"c must have length p + q = {n}, got {c.n}")
    for label in sorted(a.labels() | b.labels() | c.labels()):
        alpha = a.at(label) + (0,) * q
        beta = b.at(label) + (0,) * p
        if not check_hermitian_triple(alpha, beta, c.at(label)).feasible:
            return False
    return True


def carlson_candidates(a, b, max_degree=None):
    """All chains c (within max_degree per exponent) that carlson_feasible accepts."""
    n = a.n + b.n
    labels = sorted(a.labels() | b.labels())
    options = []
    for label in labels:
        total = sum(a.at(label)) + sum(b.at(label))
        cands = [g.padded(n) for g in partitions_of(total, n, max_degree)]
        options.append([g for g in cands if carlson_feasible(
            FactoredChain.make(a.n, {label: a.at(label)}),
            FactoredChain.make(b.n, {label: b.at(label)}),
            FactoredChain.make(n, {label: g}))])
    return [FactoredChain.make(n, dict(zip(labels, combo))) for combo in cartesian(*options)]


def _group_type(counts, p):
    """Type of a p-group from the orders of its p^k-torsion subgroups, k = 0, 1, ..."""
    cols = []
    for k in range(1, len(counts)):
        ratio, e = counts[k] // counts[k - 1], 0
        while ratio > 1:
            ratio //= p
            e += 1
        cols.append(e)
    return conjugate(Partition(c for c in cols if c))


def klein_subgroup_oracle(p, gamma, limit=3 ** 6):
    """All (type(B), type(G/B)) for subgroups B of G = sum Z/p^{gamma_i}.

    Subgroups are generated from the trivial one by adjoining one element at
    a time, using one element per coset, and deduplicated as frozensets.
    """
    _check_prime(p)
    gamma = Partition(as_chain(gamma, "gamma"))
    order = p ** gamma.weight
    if order > limit:
        raise ResourceLimitError(f"group of order {order} exceeds the limit {limit}")
    mods = tuple(p ** g for g in gamma)
    elements = list(cartesian(*(range(m) for m in mods)))
    zero = tuple(0 for _ in mods)

    def add(x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, mods))

    def times(k, x):
        return tuple((k * a) % m for a, m in zip(x, mods))

    top = gamma[0] if gamma else 0
    seen = {frozenset([zero])}
    frontier = [frozenset([zero])]
    while frontier:
        nxt = []
        for H in frontier:
            covered = set(H)
            for g in elements:
                if g in covered:
                    continue
                coset = {add(h, g) for h in H}
                covered |= coset
                multiples = [zero]
                x = g
                while x not in H:
                    multiples.append(x)
                    x = add(x, g)
                bigger = frozenset(add(h, m) for h in H for m in multiples)
                if bigger not in seen:
                    seen.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    pairs = set()
    for H in seen:
        sub = [sum(1 for h in H if times(p ** k, h) == zero) for k in range(top + 1)]
        quo = [sum(1 for x in elements if times(p ** k, x) in H) // len(H) for k in range(top + 1)]
        pairs.add((_group_type(sub, p), _group_type(quo, p)))
    return pairs


def lr_positive_pairs(gamma):
    """{(beta, alpha) : c_{alpha beta}^gamma > 0}, the comparison set for the oracle."""
    gamma = Partition(gamma)
    out = set()
    for beta in subpartitions(gamma):
        for alpha in subpartitions(gamma):
            if alpha.weight + beta.weight == gamma.weight and lr_coefficient(alpha, beta, gamma) > 0:
                out.add((beta, alpha))
    return out
