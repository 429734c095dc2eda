"""Littlewood-Richardson coefficients and Schubert products on Grassmannians.

A filling of the skew shape nu/lam with content mu is counted when rows
weakly increase, columns strictly increase, and the reading word (rows
right to left, top to bottom) is a lattice word.
"""
from functools import lru_cache

from .errors import DomainError
from .partitions import IndexSet, Partition, partition_from_subset, reverse_subset


def _shape(outer, inner):
    outer = tuple(outer)
    inner = tuple(inner) + (0,) * (len(outer) - len(inner))
    return outer, inner


@lru_cache(maxsize=None)
def _count(outer, inner, content):
    """Number of LR fillings of outer/inner with the given content.

    Rows are filled right to left by depth-first search; completed rows are
    memoized on (row, letter counts, the part of the row that constrains the
    next one).
    """
    outer, inner = _shape(outer, inner)
    nrows = len(outer)
    mu = content
    nletters = len(mu)

    @lru_cache(maxsize=None)
    def rows_from(i, counts, prev):
        if i == nrows:
            return 1
        lo, hi = inner[i], outer[i]
        start = max(inner[i - 1], lo) if i else hi
        if i + 1 < nrows:
            nstart, nhi = max(lo, inner[i + 1]), outer[i + 1]
        else:
            nstart = nhi = hi
        cnt = list(counts)
        cur = [0] * (hi - lo)
        total = 0

        def dfs(c, cap):
            nonlocal total
            if c < lo:
                key = tuple(cur[k - lo] for k in range(nstart, nhi))
                total += rows_from(i + 1, tuple(cnt), key)
                return
            floor = prev[c - start] + 1 if c >= start else 1
            for v in range(floor, cap + 1):
                if cnt[v - 1] < mu[v - 1] and (v == 1 or cnt[v - 1] < cnt[v - 2]):
                    cnt[v - 1] += 1
                    cur[c - lo] = v
                    dfs(c - 1, v)
                    cnt[v - 1] -= 1

        dfs(hi - 1, min(nletters, i + 1))
        return total

    return rows_from(0, (0,) * nletters, ())


def _canonical(lam, mu, nu):
    """(inner, content, outer) with the lighter partition as content, or None if c = 0."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if lam.weight + mu.weight != nu.weight:
        return None
    if mu.weight > lam.weight or (mu.weight == lam.weight and mu > lam):
        lam, mu = mu, lam
    if not nu.contains(lam) or not nu.contains(mu):
        return None
    return tuple(lam), tuple(mu), tuple(nu)


def lr_coefficient(lam, mu, nu):
    """c_{lam,mu}^{nu}; zero when the weights disagree or lam is not inside nu."""
    key = _canonical(lam, mu, nu)
    if key is None:
        return 0
    inner, content, outer = key
    if not content:
        return 1
    return _count(outer, inner, content)


def lr_fillings(lam, mu, nu):
    """Every LR filling of nu/lam with content mu.

    Each filling is a tuple of rows; row i lists the entries in columns
    lam_i .. nu_i - 1 from left to right.  Unlike :func:`lr_coefficient`
    this never swaps lam and mu, so the fillings are for the shape given.
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if lam.weight + mu.weight != nu.weight or not nu.contains(lam):
        return []
    outer, inner = _shape(nu, lam)
    nrows, nletters = len(outer), len(mu)
    cnt = [0] * nletters
    rows = [[0] * (outer[i] - inner[i]) for i in range(nrows)]
    found = []

    def dfs(i, c, cap):
        if i == nrows:
            found.append(tuple(tuple(row) for row in rows))
            return
        if c < inner[i]:
            if i + 1 < nrows:
                dfs(i + 1, outer[i + 1] - 1, min(nletters, i + 2))
            else:
                dfs(i + 1, 0, 0)
            return
        floor = 1
        if i and c >= inner[i - 1]:
            floor = rows[i - 1][c - inner[i - 1]] + 1
        for v in range(floor, cap + 1):
            if cnt[v - 1] < mu[v - 1] and (v == 1 or cnt[v - 1] < cnt[v - 2]):
                cnt[v - 1] += 1
                rows[i][c - inner[i]] = v
                dfs(i, c - 1, v)
                cnt[v - 1] -= 1

    if nrows == 0:
        return [()]
    dfs(0, outer[0] - 1, min(nletters, 1))
    return found


def pieri_row_expand(alpha, p, max_rows=None):
    """All gamma with gamma_1 >= alpha_1 >= gamma_2 >= ... and |gamma| = |alpha| + p."""
    alpha = Partition(alpha)
    if p < 0:
        raise DomainError("p must be nonnegative")
    a = tuple(alpha) + (0,)
    out = set()

    def gen(i, rest, acc):
        if i == len(a):
            if rest == 0:
                gamma = Partition(acc)
                if max_rows is None or len(gamma) <= max_rows:
                    out.add(gamma)
            return
        top = a[i] + rest if i == 0 else min(a[i - 1], a[i] + rest)
        for g in range(a[i], top + 1):
            gen(i + 1, rest - (g - a[i]), acc + (g,))

    gen(0, p, ())
    return out


def pieri_column_expand(alpha, p, max_rows=None):
    """All gamma with alpha_i <= gamma_i <= alpha_i + 1 and |gamma| = |alpha| + p."""
    alpha = Partition(alpha)
    if p < 0:
        raise DomainError("p must be nonnegative")
    a = tuple(alpha) + (0,) * p
    out = set()

    def gen(i, rest, acc):
        if rest == 0:
            gamma = Partition(acc + a[i:])
            if max_rows is None or len(gamma) <= max_rows:
                out.add(gamma)
            return
        if i == len(a):
            return
        for g in (a[i] + 1, a[i]):
            if i and g > acc[-1]:
                continue
            gen(i + 1, rest - (g - a[i]), acc + (g,))

    gen(0, p, ())
    return out


def _between(lower, rows, cols, weight):
    """Partitions gamma >= lower (componentwise) in a rows x cols box with |gamma| = weight."""
    low = tuple(lower) + (0,) * (rows - len(lower))

    def gen(i, cap, rest):
        if i == rows:
            if rest == 0:
                yield ()
            return
        # the remaining rows can hold at most cap * (rows - i) boxes
        for g in range(min(cap, rest), low[i] - 1, -1):
            if rest - g > g * (rows - i - 1):
                break
            if rest - g < sum(low[i + 1:]):
                continue
            for tail in gen(i + 1, g, rest - g):
                yield (g,) + tail

    for parts in gen(0, cols, weight):
        yield Partition(parts)


def _check_box(parts, r, cols):
    for lam in parts:
        if not lam.fits(r, cols):
            raise DomainError(f"{tuple(lam)} does not fit in a {r} x {cols} rectangle")


def schubert_coefficient(alpha, beta, gamma, r, cols):
    """Coefficient of sigma_gamma in sigma_alpha * sigma_beta on Gr(r, r + cols)."""
    alpha, beta, gamma = Partition(alpha), Partition(beta), Partition(gamma)
    _check_box((alpha, beta, gamma), r, cols)
    return lr_coefficient(alpha, beta, gamma)


def multiply_classes(a, b, r, cols):
    """sigma_a * sigma_b truncated to the r x cols rectangle, as {gamma: coefficient}."""
    a, b = Partition(a), Partition(b)
    _check_box((a, b), r, cols)
    lower = [max(x, y) for x, y in zip(a.padded(r), b.padded(r))]
    out = {}
    for gamma in _between(lower, r, cols, a.weight + b.weight):
        c = lr_coefficient(a, b, gamma)
        if c:
            out[gamma] = c
    return out


def expand_partitions(parts, r, cols):
    """Full expansion of prod sigma_{lam} for a list of partitions."""
    result = {Partition(): 1}
    for lam in parts:
        nxt = {}
        for gamma, coeff in result.items():
            for delta, c in multiply_classes(gamma, lam, r, cols).items():
                nxt[delta] = nxt.get(delta, 0) + coeff * c
        result = nxt
    return result


def _sets(sets, r, n):
    out = []
    for I in sets:
        I = I if isinstance(I, IndexSet) else IndexSet(tuple(I), n)
        if I.n != n or I.r != r:
            raise DomainError(f"index set {I.elements} is not an {r}-subset of 1..{n}")
        out.append(I)
    return out


def expand_product(sets, r, n):
    """prod_s sigma_{lambda(I(s))} in H*(Gr(r, n)), as {partition: coefficient}."""
    sets = _sets(sets, r, n)
    return expand_partitions([partition_from_subset(I) for I in sets], r, n - r)


def dual_partition(lam, r, cols):
    """The partition whose class pairs with sigma_lam to the point class."""
    lam = Partition(lam)
    _check_box((lam,), r, cols)
    return Partition(cols - part for part in reversed(lam.padded(r)))


def point_class_multiple(sets, r, n):
    """The integer d with prod_s omega_{I(s)} = d * omega_{1..r}.

    Here omega_I = sigma_{lambda(I^rev)} with I^rev = {n+1-i}, so omega_I
    has codimension r(n-r) - |lambda(I)| and omega_{1..r} is the point.
    """
    sets = _sets(sets, r, n)
    cols = n - r
    parts = [partition_from_subset(reverse_subset(I)) for I in sets]
    if sum(p.weight for p in parts) != r * cols:
        raise DomainError("codimensions do not add up to the dimension of the Grassmannian")
    if not parts:
        return 1 if r * cols == 0 else 0
    head = expand_partitions(parts[:-1], r, cols)
    return head.get(dual_partition(parts[-1], r, cols), 0)
