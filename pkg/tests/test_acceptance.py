"""One test per acceptance criterion; each prints a PASS/FAIL line with timing."""
import random
import time
from itertools import combinations_with_replacement

from hornlab import lr as lr_module
from hornlab.feasibility import (
    check_hermitian_triple,
    check_singular_additive,
    feasible_gammas,
    gamma_k_interval,
)
from hornlab.horn import (
    HornTriple,
    in_t_set,
    lr_of_triple,
    r_set,
    s_set,
    s_set_m,
    t_set,
    t_set_m,
    t_violations,
    u_set,
)
from hornlab.lr import lr_coefficient
from hornlab.matrix_lab import necessity_battery, verify_example1, verify_example4
from hornlab.partitions import Partition, partitions_of
from hornlab.smith import (
    FactoredChain,
    carlson_candidates,
    determinant,
    klein_subgroup_oracle,
    lr_positive_pairs,
    poly,
    smith_form,
    verify_certificate,
)


def spectra(n, top):
    return [tuple(reversed(c)) for c in combinations_with_replacement(range(top + 1), n)]


PINNED = [
    ((3, 2, 1), (3, 2, 2), (5, 4, 3, 1), 3),
    ((2, 1), (2, 1), (3, 2, 1), 2),
    ((5, 4, 3, 2, 1), (2, 2, 2), (6, 5, 4, 3, 2, 1), 5),
    ((10, 8, 6, 4, 2), (4, 4, 4), (12, 10, 8, 6, 4, 2), 16),
    ((4, 3, 2, 1), (2, 2, 1), (5, 4, 3, 2, 1), 5),
    ((8, 6, 4, 2), (4, 4, 2), (10, 8, 6, 4, 2), 16),
]


def test_criterion_01_pinned_lr(acceptance):
    ok, slowest = True, 0.0
    for lam, mu, nu, c in PINNED:
        lr_module._count.cache_clear()
        t = time.perf_counter()
        got = lr_coefficient(lam, mu, nu)
        slowest = max(slowest, time.perf_counter() - t)
        ok = ok and got == c
    ok = ok and slowest < 1.0
    assert acceptance(1, ok, f"{len(PINNED)} pinned values exact, slowest {slowest:.3f}s (limit 1s)")


def test_criterion_02_horn_equals_lr_positive(acceptance):
    t = time.perf_counter()
    bad = [(r, n) for n in range(2, 8) for r in range(1, n) if sorted(s_set(r, n)) != sorted(t_set(r, n))]
    dt = time.perf_counter() - t
    assert acceptance(2, not bad and dt < 300, f"S = T for all r < n <= 7, mismatches {bad}, {dt:.1f}s (limit 300s)")


def test_criterion_03_tuple_version(acceptance):
    t = time.perf_counter()
    bad = [(r, n) for n in range(2, 6) for r in range(1, n) if sorted(s_set_m(r, n, 3)) != sorted(t_set_m(r, n, 3))]
    dt = time.perf_counter() - t
    assert acceptance(3, not bad and dt < 300, f"m=3, r < n <= 5, mismatches {bad}, {dt:.1f}s (limit 300s)")


def test_criterion_04_horn_examples(acceptance):
    big = ((1, 3, 4, 16, 21), (1, 3, 4, 16, 21), (5, 10, 15, 20, 25))
    witness = [(HornTriple((1, 2, 4, 5), (1, 2, 4, 5), (2, 3, 4, 5)), 82, 80)]
    checks = {
        "n=25 triple rejected, witness 82 > 80": not in_t_set(big, 25) and t_violations(big) == witness,
        "n=9 triple in U minus T": (lambda x: x in u_set(4, 9) and x not in t_set(4, 9))(
            ((1, 3, 5, 6), (1, 3, 5, 6), (2, 3, 6, 9))),
        "({1,3,5},{1,3,5},{2,4,6}) in T with c = 2": ((1, 3, 5), (1, 3, 5), (2, 4, 6)) in t_set(3, 6)
        and lr_of_triple(((1, 3, 5), (1, 3, 5), (2, 4, 6))) == 2,
    }
    extra = set()
    for r in range(1, 6):
        extra |= set(s_set(r, 6)) - set(r_set(r, 6))
    checks["S minus R over all r at n=6 is that one triple"] = extra == {((1, 3, 5), (1, 3, 5), (2, 4, 6))}
    failed = [k for k, v in checks.items() if not v]
    assert acceptance(4, not failed, f"{len(checks)} exact checks, failed {failed}")


def test_criterion_05_hermitian_iff_lr(acceptance):
    t = time.perf_counter()
    total, bad = 0, []
    for n in range(1, 5):
        sp = spectra(n, 4)
        for a in sp:
            for b in sp:
                for c in sp:
                    total += 1
                    if check_hermitian_triple(a, b, c).feasible != (lr_coefficient(a, b, c) > 0):
                        bad.append((a, b, c))
    dt = time.perf_counter() - t
    assert acceptance(5, not bad and dt < 600,
                      f"{total} triples (n <= 4, entries 0..4), {len(bad)} disagreements, {dt:.1f}s (limit 600s)")


def test_criterion_06_necessity_batteries(acceptance):
    t = time.perf_counter()
    runs = [("hermitian", n) for n in (3, 4, 5)] + [("real-symmetric", n) for n in (3, 4, 5)]
    runs += [("singular-add", 4), ("singular-prod", 4)]
    violations, extra = {}, None
    for mode, n in runs:
        rep = necessity_battery(mode, n, 1000, seed=0, slack=1e-8)
        violations[f"{mode}:{n}"] = rep["violations"]
        if mode == "singular-add":
            extra = rep["singular_triple_min_slack"]
    dt = time.perf_counter() - t
    ok = not any(violations.values()) and extra is not None and extra >= -1e-8 and dt < 600
    assert acceptance(6, ok, f"1000 seeds x {len(runs)} batteries, violations {sum(violations.values())}, "
                             f"extra 4x4 inequality min slack {extra:.3g}, {dt:.1f}s (limit 600s)")


def test_criterion_07_worked_examples(acceptance):
    ex1 = verify_example1(tol=1e-9)
    ex4 = verify_example4()
    add = check_singular_additive((1, 1, 0), (1, 1, 0), (1, 1, 1), 3, 3).feasible
    ok = ex1["passed"] and ex4["passed"] and add
    assert acceptance(7, ok, f"6x6 example checks {ex1['checks']}, spectrum error {ex1['beta_error']:.1e}; "
                             f"3x3 singular example realized {ex4['passed']} and feasible {add}")


def _saturation(max_weight, factors):
    counter, checked = [], 0
    for w in range(1, max_weight + 1):
        for nu in partitions_of(w):
            for wl in range(w + 1):
                for lam in partitions_of(wl):
                    if not Partition(nu).contains(lam):
                        continue
                    for mu in partitions_of(w - wl):
                        if not Partition(nu).contains(mu):
                            continue
                        if lr_coefficient(lam, mu, nu) > 0:
                            continue
                        checked += 1
                        for N in factors:
                            scaled = [tuple(N * x for x in p) for p in (lam, mu, nu)]
                            if lr_coefficient(*scaled) > 0:
                                counter.append((N, lam, mu, nu))
    return counter, checked


def _multiplicity_one(max_weight, N):
    counter, checked = [], 0
    for w in range(1, max_weight + 1):
        for nu in partitions_of(w):
            for wl in range(w + 1):
                for lam in partitions_of(wl):
                    for mu in partitions_of(w - wl):
                        if lr_coefficient(lam, mu, nu) == 1:
                            checked += 1
                            scaled = [tuple(N * x for x in p) for p in (lam, mu, nu)]
                            if lr_coefficient(*scaled) != 1:
                                counter.append((lam, mu, nu))
    return counter, checked


def test_criterion_08_saturation_and_multiplicity_one(acceptance):
    t = time.perf_counter()
    sat, n_sat = _saturation(10, (2, 3))
    one, n_one = _multiplicity_one(8, 2)
    dt = time.perf_counter() - t
    ok = not sat and not one and dt < 600
    assert acceptance(8, ok, f"saturation |nu| <= 10 (N=2,3): {len(sat)} counterexamples in {n_sat} zero triples; "
                             f"multiplicity one |nu| <= 8 (N=2): {len(one)} in {n_one}; {dt:.1f}s (limit 600s)")


def test_criterion_09_smith_and_carlson(acceptance):
    t = time.perf_counter()
    a = FactoredChain.make(2, {"T": (2, 0)})
    chains = {str(c) for c in carlson_candidates(a, a)}
    carlson_ok = chains == {"T:2,2,0,0", "T:3,1,0,0", "T:4,0,0,0"}

    rng = random.Random(2024)
    int_done = poly_done = 0
    cert_ok = True
    while int_done < 500:
        n = rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        if determinant(M) == 0:
            continue
        cert_ok = cert_ok and verify_certificate(M, smith_form(M))
        int_done += 1
    while poly_done < 500:
        n = rng.randint(1, 3)
        M = [[poly([rng.randint(-2, 2) for _ in range(rng.randint(1, 3))]) for _ in range(n)] for _ in range(n)]
        if determinant(M).is_zero:
            continue
        cert_ok = cert_ok and verify_certificate(M, smith_form(M))
        poly_done += 1

    klein_bad = [(p, g) for p in (2, 3) for w in range(1, 6) for g in partitions_of(w)
                 if klein_subgroup_oracle(p, g) != lr_positive_pairs(g)]
    dt = time.perf_counter() - t
    ok = carlson_ok and cert_ok and not klein_bad
    assert acceptance(9, ok, f"block example chains {sorted(chains)}; certificates on {int_done} integer + "
                             f"{poly_done} polynomial matrices {'ok' if cert_ok else 'FAILED'}; "
                             f"subgroup oracle mismatches {klein_bad}; {dt:.1f}s")


def test_criterion_10_interval_sharpness(acceptance):
    bad, cases = [], 0
    for n in range(1, 5):
        sp = spectra(n, 3)
        for a in sp:
            for b in sp:
                gammas = feasible_gammas(a, b, n)
                for k in range(1, n + 1):
                    cases += 1
                    vals = [g[k - 1] for g in gammas]
                    if (min(vals), max(vals)) != gamma_k_interval(a, b, k):
                        bad.append((a, b, k))
    assert acceptance(10, not bad, f"{cases} (alpha, beta, k) cases with n <= 4, entries 0..3, {len(bad)} not sharp")
