"""Floating-point checks: a Jacobi eigensolver, random sampling, and the worked matrix examples.

Matrices are numpy complex arrays.  Randomness comes from numpy's PCG64
generator so every battery is reproducible from its seed.
"""
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, ValidationError
from .feasibility import hermitian_system, singular_inequality, singular_system

HERMITIAN_TOL = 1e-12
SLACK = 1e-8


def as_matrix(A):
    A = np.array(A, dtype=complex)
    if A.ndim != 2:
        raise ValidationError("expected a 2-d matrix")
    return A


def as_hermitian(A):
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ValidationError(f"Hermitian matrix must be square, got {A.shape}")
    scale = max(1.0, float(np.abs(A).max(initial=0.0)))
    if np.abs(A - A.conj().T).max(initial=0.0) > HERMITIAN_TOL * scale:
        raise ValidationError("matrix is not Hermitian")
    return (A + A.conj().T) / 2


def jacobi_eigh(A, tol=1e-13, max_sweeps=100):
    """Cyclic complex Jacobi: eigenvalues (decreasing) and orthonormal eigenvectors (columns)."""
    A = as_hermitian(A).copy()
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    threshold = tol * max(np.linalg.norm(A), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        off = np.abs(A - np.diag(np.diag(A)))
        if off.max(initial=0.0) < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                b = abs(apq)
                if b < threshold:
                    continue
                phase = apq / b
                app, aqq = A[p, p].real, A[q, q].real
                theta = (aqq - app) / (2 * b)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1))
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                G = np.array([[c, s], [-np.conj(phase) * s, np.conj(phase) * c]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ G
                A[idx, :] = G.conj().T @ A[idx, :]
                A[p, q] = A[q, p] = 0
                V[:, idx] = V[:, idx] @ G
    w = np.diag(A).real
    order = np.argsort(-w, kind="stable")
    return w[order], V[:, order]


def hermitian_eigenvalues(A):
    """All eigenvalues of a Hermitian matrix, decreasing."""
    return jacobi_eigh(A)[0]


def singular_values(A):
    """min(m, n) singular values, decreasing, from the eigenvalues of [[0, A], [A*, 0]]."""
    A = as_matrix(A)
    m, n = A.shape
    H = np.zeros((m + n, m + n), dtype=complex)
    H[:m, m:] = A
    H[m:, :m] = A.conj().T
    w = hermitian_eigenvalues(H)
    return np.maximum(w[:min(m, n)], 0.0)


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def random_unitary(n, seed, real=False):
    """Gaussian matrix orthonormalized by QR, with R's diagonal made positive.

    The phase fix makes the result equal to Gram-Schmidt on the columns, so
    it is deterministic for a given seed.  ``real=True`` gives an orthogonal matrix.
    """
    if n < 1:
        raise DomainError("n must be positive")
    rng = seed if isinstance(seed, np.random.Generator) else _rng(seed)
    Z = rng.standard_normal((n, n))
    if not real:
        Z = (Z + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


@dataclass
class SampledTriple:
    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray
    seed: object
    kind: str


KINDS = ("hermitian-sum", "real-symmetric-sum", "singular-sum", "singular-product")


def _general(values, rng, real):
    n = len(values)
    U = random_unitary(n, rng, real)
    V = random_unitary(n, rng, real)
    return U @ np.diag(values) @ V.conj().T


def sample_sum_spectrum(alpha, beta, seed, kind="hermitian-sum", unitary=None):
    """Spectrum of D(alpha) + U D(beta) U*, or singular values of A + B / AB.

    For the singular kinds, alpha and beta are singular values and A, B get
    independent random unitary factors on both sides.  Passing ``unitary``
    overrides the random U in the Hermitian kinds.
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if alpha.shape != beta.shape:
        raise DomainError("alpha and beta must have equal lengths")
    if kind not in KINDS:
        raise DomainError(f"unknown kind {kind!r}")
    rng = _rng(seed)
    real = kind == "real-symmetric-sum"
    if kind in ("hermitian-sum", "real-symmetric-sum"):
        U = random_unitary(len(beta), rng, real) if unitary is None else as_matrix(unitary)
        C = np.diag(alpha) + U @ np.diag(beta) @ U.conj().T
        gamma = hermitian_eigenvalues(C)
    else:
        A = _general(alpha, rng, False)
        B = _general(beta, rng, False)
        gamma = singular_values(A + B if kind == "singular-sum" else A @ B)
    return SampledTriple(alpha, beta, gamma, seed, kind)


def _orthonormal(basis):
    U = np.column_stack([np.asarray(v, dtype=complex) for v in basis])
    G = U.conj().T @ U
    if np.abs(G - np.eye(G.shape[0])).max(initial=0.0) > 1e-10:
        raise ValidationError("basis is not orthonormal")
    return U


def compression(A, basis):
    """Matrix ((A u_j, u_i)) of A restricted to span(basis)."""
    U = _orthonormal(basis)
    return U.conj().T @ as_matrix(A) @ U


def rayleigh_trace(A, basis):
    """sum_i (A u_i, u_i) for an orthonormal basis u_i."""
    return float(np.trace(compression(A, basis)).real)


def d_rayleigh(A, basis):
    """Determinant of the compression of A to span(basis)."""
    return float(np.linalg.det(compression(A, basis)).real)


# exact linear algebra over Q for subspace positions

def exact_rank(vectors):
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col] / rows[rank][col]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def intersection_dims(subspace, flag):
    """dim(L cap F_i) for i = 0..n, where F_i is spanned by the first i flag vectors."""
    dim_l = exact_rank(subspace)
    out = [0]
    for i in range(1, len(flag) + 1):
        out.append(dim_l + i - exact_rank(list(subspace) + list(flag[:i])))
    return out


def schubert_position(subspace, flag):
    """The set {i : dim(L cap F_i) > dim(L cap F_{i-1})}."""
    dims = intersection_dims(subspace, flag)
    return tuple(i for i in range(1, len(dims)) if dims[i] > dims[i - 1])


def weighted_dimension_sum(alpha, subspace, flag):
    """sum_i (alpha_i - alpha_{i+1}) dim(L cap F_i), with alpha_{n+1} = 0."""
    alpha = [Fraction(a) for a in alpha] + [Fraction(0)]
    dims = intersection_dims(subspace, flag)
    return sum((alpha[i - 1] - alpha[i]) * dims[i] for i in range(1, len(alpha)))


# worked examples

EXAMPLE1_B = np.array([
    [15, 0, -32, -3, 35, -3],
    [0, 15, 3, -32, 3, 35],
    [-32, 3, -17, 0, 51, 19],
    [-3, -32, 0, -17, -19, 51],
    [35, 3, 51, -19, 2, 0],
    [-3, 35, 19, 51, 0, 2],
], dtype=float)


def _invariance_residual(M, basis):
    U = np.column_stack(basis)
    Q, _ = np.linalg.qr(U)
    MU = M @ Q
    return float(np.abs(MU - Q @ (Q.conj().T @ MU)).max())


def _span(pairs, sign):
    vecs = []
    for p, q in pairs:
        v = np.zeros(6, dtype=complex)
        v[p - 1] = 1
        v[q - 1] = sign * 1j
        vecs.append(v / np.sqrt(2))
    return vecs


def verify_example1(x=1.0, y=0.0, z=-1.0, tol=1e-9):
    """The real 6 x 6 example whose equality case splits only over C.

    The invariant subspaces are spanned by e1 +- i e2, e3 +- i e4, e5 +- i e6.
    The residual for the span with e3 + i e5 in place of e3 + i e4 is also
    reported; it is far from invariant.
    """
    if len({x, y, z}) != 3 or abs(x + y + z) > 1e-12:
        raise DomainError("x, y, z must be distinct and sum to zero")
    A = np.diag([x, x, y, y, z, z]).astype(complex)
    B = EXAMPLE1_B.astype(complex)
    alpha = hermitian_eigenvalues(A)
    beta = hermitian_eigenvalues(B)
    gamma = hermitian_eigenvalues(A + B)
    expected_beta = np.array([56, 56, 28, 28, -84, -84], dtype=float)
    beta_err = float(np.abs(beta - expected_beta).max())
    lhs = gamma[1] + gamma[3] + gamma[5]
    rhs = alpha[0] + alpha[2] + alpha[4] + beta[0] + beta[2] + beta[4]
    pairs = [(1, 2), (3, 4), (5, 6)]
    residuals = {}
    for label, sign in (("L", 1), ("L_perp", -1)):
        span = _span(pairs, sign)
        residuals[label] = max(_invariance_residual(A, span), _invariance_residual(B, span))
    literal = _span([(1, 2), (3, 5), (5, 6)], 1)
    literal_res = max(_invariance_residual(A, literal), _invariance_residual(B, literal))
    pair_gaps = [float(abs(gamma[2 * k] - gamma[2 * k + 1])) for k in range(3)]
    checks = {
        "beta_spectrum": beta_err <= tol,
        "equality_case": bool(abs(lhs - rhs) <= tol),
        "invariant_subspaces": max(residuals.values()) <= tol,
        "gamma_in_pairs": max(pair_gaps) <= tol,
    }
    return {
        "example": 1,
        "passed": all(checks.values()),
        "checks": checks,
        "beta": beta.tolist(),
        "gamma": gamma.tolist(),
        "beta_error": beta_err,
        "equality_gap": float(abs(lhs - rhs)),
        "subspace_residual": residuals,
        "literal_e3_ie5_residual": literal_res,
    }


def example3_matrices():
    s = np.sqrt(3) / 2
    A = np.diag([2, 0, 1, 2, 0, 1, 0, 0, 0]).astype(complex)
    B = np.zeros((9, 9), dtype=complex)
    B[:2, :2] = [[0.5, s], [s, 1.5]]
    B[2:, 2:] = np.diag([2, 1, 1, 0, 0, 0, 0])
    return A, B


def verify_example3(tol=1e-9):
    """The 9 x 9 matrices breaking the inequality of a triple outside T_4^9."""
    A, B = example3_matrices()
    alpha, beta, gamma = (hermitian_eigenvalues(M) for M in (A, B, A + B))
    want_ab = np.array([2, 2, 1, 1, 0, 0, 0, 0, 0], dtype=float)
    want_c = np.array([3, 3, 3, 1, 1, 1, 0, 0, 0], dtype=float)
    I = J = (1, 3, 5, 6)
    K = (2, 3, 6, 9)
    lhs = sum(gamma[k - 1] for k in K)
    rhs = sum(alpha[i - 1] for i in I) + sum(beta[j - 1] for j in J)
    checks = {
        "alpha": float(np.abs(alpha - want_ab).max()) <= tol,
        "beta": float(np.abs(beta - want_ab).max()) <= tol,
        "gamma": float(np.abs(gamma - want_c).max()) <= tol,
        "violates_triple": bool(lhs > rhs + 0.5),
        "trace": bool(abs(gamma.sum() - alpha.sum() - beta.sum()) <= tol),
    }
    return {"example": 3, "passed": all(checks.values()), "checks": checks,
            "alpha": alpha.tolist(), "beta": beta.tolist(), "gamma": gamma.tolist(),
            "triple": {"I": list(I), "J": list(J), "K": list(K)},
            "lhs": float(lhs), "rhs": float(rhs)}


def verify_example4(tol=1e-9):
    """Complex diagonal matrices with singular values (1,1,0), (1,1,0), (1,1,1)."""
    zeta = np.exp(1j * np.pi / 3)
    A = np.diag([1, zeta, 0])
    B = np.diag([0, 1 / zeta, 1])
    a, b, c = singular_values(A), singular_values(B), singular_values(A + B)
    checks = {
        "a": float(np.abs(a - [1, 1, 0]).max()) <= tol,
        "b": float(np.abs(b - [1, 1, 0]).max()) <= tol,
        "c": float(np.abs(c - [1, 1, 1]).max()) <= tol,
    }
    return {"example": 4, "passed": all(checks.values()), "checks": checks,
            "a": a.tolist(), "b": b.tolist(), "c": c.tolist()}


# necessity batteries

MODES = ("hermitian", "real-symmetric", "singular-add", "singular-prod")
SINGULAR_4X4_TRIPLE = ((3, 7), (2, 3), (4, 8))


def worker_count():
    """Worker processes allowed by HORNLAB_THREADS (default 1)."""
    raw = os.environ.get("HORNLAB_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise ValidationError(f"HORNLAB_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValidationError(f"HORNLAB_THREADS must be a positive integer, got {raw!r}")
    return value


def _trial_values(mode, n, seed):
    """One sample as a flat vector matching the mode's inequality matrix."""
    rng = _rng([seed, n])
    if mode in ("hermitian", "real-symmetric"):
        alpha = np.sort(rng.standard_normal(n))[::-1]
        beta = np.sort(rng.standard_normal(n))[::-1]
        U = random_unitary(n, rng, real=mode == "real-symmetric")
        gamma = hermitian_eigenvalues(np.diag(alpha) + U @ np.diag(beta) @ U.conj().T)
        return np.concatenate([alpha, beta, gamma])
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    B = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    C = A + B if mode == "singular-add" else A @ B
    vals = np.concatenate([singular_values(A), singular_values(B), singular_values(C)])
    return vals if mode == "singular-add" else np.log(vals)


def _battery_chunk(args):
    mode, n, seeds = args
    return np.array([_trial_values(mode, n, s) for s in seeds])


def necessity_battery(mode, n, trials, seed=0, slack=SLACK):
    """Sample random matrices and count inequality violations below -slack.

    hermitian / real-symmetric: spectra of D(alpha) + U D(beta) U* against
    every T_r^n inequality and the trace.  singular-add: singular values of
    n x n complex A, B, A + B against every inequality from T_r^{2n}.
    singular-prod: logs of singular values of A, B, AB against the T_r^n
    product inequalities and the determinant.
    """
    if mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}")
    if n < 1 or trials < 0:
        raise DomainError("n must be positive and trials nonnegative")
    seeds = [seed + t for t in range(trials)]
    workers = min(worker_count(), max(1, trials))
    chunks = [(mode, n, seeds[k::workers]) for k in range(workers)]
    if workers == 1:
        samples = _battery_chunk(chunks[0])
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            samples = np.vstack([c for c in pool.map(_battery_chunk, chunks) if len(c)])
    samples = samples.reshape(trials, -1)
    extra = {}
    if mode == "singular-add":
        _, ineqs, W = singular_system("T", n, n)
        balance = np.zeros(trials)
        if n == 4:
            w_extra = np.array(singular_inequality(SINGULAR_4X4_TRIPLE, 4, 4).coefficients(4), dtype=float)
            extra["singular_triple_min_slack"] = float((samples @ w_extra).min()) if trials else None
    else:
        _, W = hermitian_system("T", n)
        # trace (or log-determinant) balance: sum gamma - sum alpha - sum beta
        balance = samples[:, 2 * n:].sum(axis=1) - samples[:, :2 * n].sum(axis=1)
    slacks = samples @ W.T.astype(float) if len(W) else np.zeros((trials, 0))
    violations = int((slacks < -slack).sum()) + int((np.abs(balance) > slack).sum())
    return {
        "mode": mode,
        "n": n,
        "trials": trials,
        "seed": seed,
        "inequalities": int(W.shape[0]),
        "violations": violations,
        "min_slack": float(slacks.min()) if slacks.size else None,
        "max_balance_error": float(np.abs(balance).max()) if trials else None,
        **extra,
    }


def matrix_from_json(obj):
    """Matrix from nested lists whose entries are [re, im] pairs or plain numbers."""
    rows = []
    for row in obj:
        out = []
        for x in row:
            if isinstance(x, (list, tuple)):
                if len(x) != 2:
                    raise ValidationError(f"complex entries must be [re, im] pairs, got {x!r}")
                out.append(complex(x[0], x[1]))
            else:
                out.append(complex(x))
        rows.append(out)
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValidationError("matrix rows must be nonempty and of equal length")
    return np.array(rows, dtype=complex)


def matrix_to_json(A):
    return [[[float(x.real), float(x.imag)] for x in row] for row in as_matrix(A)]
