"""Command-line entry point: ``hornlab <command> ...``.

Exit codes: 0 success or feasible, 3 infeasible (or a failed check),
2 usage error, 4 resource limit.
"""
import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import feasibility as fz
from . import horn, lr, matrix_lab, smith
from .errors import DomainError, ResourceLimitError, ValidationError

OK, USAGE, INFEASIBLE, RESOURCE = 0, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text):
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _rationals(text):
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(Fraction(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from None


def _set(S):
    return "{" + ",".join(map(str, S)) + "}"


def _dump(obj, out):
    out.write(json.dumps(obj, sort_keys=False) + "\n")


def _load_json(arg):
    if arg.lstrip().startswith(("[", "{")):
        return json.loads(arg)
    if arg == "-":
        return json.load(sys.stdin)
    return json.loads(Path(arg).read_text())


def cmd_lr(args, out):
    c = lr.lr_coefficient(args.lam, args.mu, args.nu)
    fillings = lr.lr_fillings(args.lam, args.mu, args.nu) if args.witness else None
    if args.json:
        obj = {"lambda": list(args.lam), "mu": list(args.mu), "nu": list(args.nu), "coefficient": c}
        if fillings is not None:
            obj["fillings"] = [[list(row) for row in f] for f in fillings]
        _dump(obj, out)
        return OK
    out.write(f"{c}\n")
    if fillings is not None:
        inner = tuple(args.lam) + (0,) * len(args.nu)
        for f in fillings:
            out.write("\n")
            for i, row in enumerate(f):
                out.write(" ".join(["."] * inner[i] + [str(v) for v in row]) + "\n")
    return OK


def cmd_horn_set(args, out):
    items = horn.horn_set(args.kind, args.r, args.n, args.m)
    if args.count:
        _dump(len(items), out) if args.json else out.write(f"{len(items)}\n")
        return OK
    if args.json:
        _dump([t.to_json() for t in items], out)
    elif args.jsonl:
        for t in items:
            _dump(t.to_json(), out)
    else:
        for t in items:
            sets = t.sets if isinstance(t, horn.HornTuple) else t
            out.write(" ".join(_set(S) for S in sets) + "\n")
    return OK


def _verdict_text(v):
    if v.feasible:
        mult = f" (multiplicity {v.multiplicity})" if v.multiplicity is not None else ""
        return f"feasible{mult}"
    parts = ["infeasible"]
    if v.witness is not None:
        sets = v.witness if isinstance(v.witness, horn.HornTriple) else v.witness.sets
        parts.append(f"witness {' '.join(_set(S) for S in sets)}: {str(v.lhs)} > {str(v.rhs)}")
    if v.trace_gap:
        parts.append(f"trace gap {str(v.trace_gap)}")
    if v.multiplicity == 0:
        parts.append("LR coefficient 0")
    if "inequality" in v.extra:
        parts.append(f"[{v.extra['inequality']}]")
    return "; ".join(parts)


def cmd_check(args, out):
    mode = args.mode
    if mode == "scalar-sum":
        if not args.spectra:
            raise UsageError("--mode scalar-sum needs --spectra 'a,b;c,d;...'")
        spectra = [_rationals(s) for s in args.spectra.split(";")]
        verdict = fz.check_scalar_sum_tuple(spectra, args.set)
    else:
        if args.alpha is None or args.beta is None or args.gamma is None:
            raise UsageError(f"--mode {mode} needs --alpha, --beta and --gamma")
        a, b, c = args.alpha, args.beta, args.gamma
        if mode == "hermitian":
            verdict = fz.check_hermitian_triple(a, b, c, args.set)
        elif mode == "integral":
            verdict = fz.check_rational_via_lr(a, b, c)
        elif mode == "singular-add":
            m = args.m if args.m is not None else len(a)
            n = args.n if args.n is not None else len(a)
            verdict = fz.check_singular_additive(a, b, c, m, n, args.set)
        else:
            verdict = fz.check_singular_multiplicative(a, b, c, args.n)
    if args.json:
        _dump(verdict.to_json(), out)
    else:
        out.write(_verdict_text(verdict) + "\n")
    return OK if verdict.feasible else INFEASIBLE


def cmd_interval(args, out):
    n = len(args.alpha)
    ks = [args.k] if args.k is not None else range(1, n + 1)
    rows = []
    for k in ks:
        low, high = fz.gamma_k_interval(args.alpha, args.beta, k)
        rows.append({"k": k, "low": fz._jsonable(low), "high": fz._jsonable(high)})
    fied = fz.fiedler_bounds(args.alpha, args.beta) if args.fiedler else None
    if args.json:
        obj = {"intervals": rows}
        if fied is not None:
            obj["fiedler"] = [fz._jsonable(fied[0]), fz._jsonable(fied[1])]
        _dump(obj, out)
    else:
        for row in rows:
            out.write(f"gamma_{row['k']} in [{row['low']}, {row['high']}]\n")
        if fied is not None:
            out.write(f"prod gamma in [{str(fied[0])}, {str(fied[1])}]\n")
    return OK


def cmd_verify_random(args, out):
    report = matrix_lab.necessity_battery(args.mode, args.n, args.trials, args.seed)
    if args.json:
        _dump(report, out)
    else:
        out.write(f"{report['mode']} n={report['n']} trials={report['trials']} seed={report['seed']}: "
                  f"{report['violations']} violations over {report['inequalities']} inequalities, "
                  f"min slack {report['min_slack']:.3g}\n")
    return OK if report["violations"] == 0 else INFEASIBLE


def cmd_verify_example(args, out):
    if args.which == 1:
        report = matrix_lab.verify_example1(args.x, args.y, args.z)
    elif args.which == 3:
        report = matrix_lab.verify_example3()
    else:
        report = matrix_lab.verify_example4()
    if args.json:
        _dump(report, out)
    else:
        for name, passed in report["checks"].items():
            out.write(f"{'pass' if passed else 'FAIL'} {name}\n")
    return OK if report["passed"] else INFEASIBLE


def cmd_eigen(args, out):
    A = matrix_lab.matrix_from_json(_load_json(args.matrix))
    vals = matrix_lab.singular_values(A) if args.singular else matrix_lab.hermitian_eigenvalues(A)
    if args.json:
        _dump([float(v) for v in vals], out)
    else:
        out.write(" ".join(f"{v:.12g}" for v in vals) + "\n")
    return OK


def cmd_smith(args, out):
    data = _load_json(args.matrix)
    if args.poly:
        M = [[smith.poly(x if isinstance(x, list) else [x]) for x in row] for row in data]
    else:
        M = data
    if args.prime is not None:
        chain = smith.invariant_factors_at(M, args.prime)
        if args.json:
            _dump({"prime": args.prime, "exponents": list(chain)}, out)
        else:
            out.write(",".join(map(str, chain)) + "\n")
        return OK
    res = smith.smith_form(M)
    if args.json:
        _dump(res.to_json(), out)
    else:
        conv = (lambda d: str(d)) if res.ring == "Z" else (lambda d: str(d.as_expr()))
        out.write(" ".join(conv(d) for d in res.diagonal) + "\n")
    return OK


def cmd_carlson(args, out):
    a = smith.parse_chain(args.a)
    b = smith.parse_chain(args.b)
    if args.c is not None:
        c = smith.parse_chain(args.c, a.n + b.n)
        ok = smith.carlson_feasible(a, b, c)
        if args.json:
            _dump({"feasible": ok}, out)
        else:
            out.write(("feasible" if ok else "infeasible") + "\n")
        return OK if ok else INFEASIBLE
    chains = smith.carlson_candidates(a, b, args.max_degree)
    if args.json:
        _dump([c.to_json() for c in chains], out)
    else:
        for c in chains:
            out.write(str(c) + "\n")
    return OK


def cmd_facets(args, out):
    cands = fz.buch_facet_candidates(args.n)
    if args.json:
        _dump([{**t.to_json(), "inequality": q.to_json()} for t, q in cands], out)
    else:
        for t, q in cands:
            out.write(f"{_set(t.I)} {_set(t.J)} {_set(t.K)}  {q}\n")
    return OK


def build_parser():
    p = _Parser(prog="hornlab", description="Horn inequalities, LR coefficients and invariant factors.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.set_defaults(func=func)
        return sp

    sp = add("lr", cmd_lr, "Littlewood-Richardson coefficient c_{lam,mu}^{nu}")
    sp.add_argument("--lam", type=_ints, required=True)
    sp.add_argument("--mu", type=_ints, required=True)
    sp.add_argument("--nu", type=_ints, required=True)
    sp.add_argument("--witness", action="store_true", help="print every LR filling")

    sp = add("horn-set", cmd_horn_set, "enumerate U, T, S, R (or H for r <= 2)")
    sp.add_argument("--kind", choices=["U", "T", "S", "R", "H"], required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, help="number of factors for the m-tuple sets")
    sp.add_argument("--jsonl", action="store_true", help="stream one JSON object per line")
    sp.add_argument("--count", action="store_true", help="print only the number of members")

    sp = add("check-spectra", cmd_check, "decide feasibility of a triple of spectra")
    sp.add_argument("--alpha", type=_rationals)
    sp.add_argument("--beta", type=_rationals)
    sp.add_argument("--gamma", type=_rationals)
    sp.add_argument("--spectra", help="';'-separated spectra for --mode scalar-sum")
    sp.add_argument("--set", choices=["T", "R"], default="T")
    sp.add_argument("--mode", default="hermitian",
                    choices=["hermitian", "integral", "singular-add", "singular-mul", "scalar-sum"])
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)

    sp = add("interval", cmd_interval, "range of each gamma_k given alpha and beta")
    sp.add_argument("--alpha", type=_rationals, required=True)
    sp.add_argument("--beta", type=_rationals, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--fiedler", action="store_true", help="also print bounds on prod gamma_i")

    sp = add("verify-random", cmd_verify_random, "random necessity battery")
    sp.add_argument("--mode", choices=list(matrix_lab.MODES), required=True)
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("verify-example", cmd_verify_example, "reproduce a worked matrix example")
    sp.add_argument("--which", type=int, choices=[1, 3, 4], required=True)
    sp.add_argument("--x", type=float, default=1.0)
    sp.add_argument("--y", type=float, default=0.0)
    sp.add_argument("--z", type=float, default=-1.0)

    sp = add("eigen", cmd_eigen, "eigenvalues (or singular values) of a JSON matrix of [re, im] pairs")
    sp.add_argument("--matrix", required=True, help="path, '-' for stdin, or inline JSON")
    sp.add_argument("--singular", action="store_true")

    sp = add("smith", cmd_smith, "Smith normal form over Z or Q[T]")
    sp.add_argument("--matrix", required=True, help="path, '-' for stdin, or inline JSON")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--prime", type=int, help="print exponents of the invariant factors at this prime")
    g.add_argument("--poly", action="store_true", help="entries are coefficient lists, constant first")

    sp = add("carlson", cmd_carlson, "invariant factors of [[A, *], [0, B]]")
    sp.add_argument("--a", required=True, help='chain such as "T:2" or "T:2,1;T+1:1"')
    sp.add_argument("--b", required=True)
    sp.add_argument("--c", help="decide this chain instead of listing all")
    sp.add_argument("--max-degree", type=int)

    sp = add("facets", cmd_facets, "singular-value inequalities passing Buch's conditions")
    sp.add_argument("--n", type=int, required=True)
    return p


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except (UsageError, argparse.ArgumentTypeError) as exc:
        err.write(f"hornlab: usage error: {exc}\n")
        return USAGE
    except (ValidationError, DomainError) as exc:
        err.write(f"hornlab: {exc}\n")
        return USAGE
    except ResourceLimitError as exc:
        err.write(f"hornlab: resource limit: {exc}\n")
        return RESOURCE
    except (OSError, json.JSONDecodeError) as exc:
        err.write(f"hornlab: cannot read input: {exc}\n")
        return USAGE


def main(argv=None):
    sys.exit(run(argv))
