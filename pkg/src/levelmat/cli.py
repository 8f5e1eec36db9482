"""Command-line interface: ``levelmat <command> ...``.

Exit codes: 0 success, 1 domain error (non-level input under
``--require-level``, exhausted search budget, violated preconditions),
2 usage or parse error.
"""

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from . import __version__
from .bounds import bound_report, ell_budget
from .constructions import a_of_h, identity, lambert_extremals, prime_block, universal_matrix
from .errors import LevelMatError, ParseError, SearchBudgetExceeded
from .irreducibility import decompose_into_irreducibles, ell_search, hilbert_basis, is_reducible
from .level_core import KMatrix, column_sums, format_matrix, is_level, parse_matrix
from .polytope import caratheodory_decompose, enumerate_bfs, polytope_dimension
from .vsp import (
    enumerate_lambda_partitions,
    format_partition,
    is_irreducible_partition,
    is_lambda_partition,
    line_count,
    one_dim_subspaces,
    parse_partition,
    partition_bound,
    partition_bound_closed_form,
)

log = logging.getLogger("levelmat")

DEFAULT_MAX_NODES = 20_000_000


class UsageError(Exception):
    pass


class DomainFailure(Exception):
    """A well-formed request whose answer is a failure (exit 1), with data to report."""

    def __init__(self, message, data=None):
        super().__init__(message)
        self.data = data or {}


def thread_count():
    """Value of ``LEVELMAT_THREADS`` (0 means one per CPU). Computation is sequential."""
    raw = os.environ.get("LEVELMAT_THREADS", "0").strip() or "0"
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"LEVELMAT_THREADS must be an integer, got {raw!r}") from None
    if value < 0:
        raise UsageError("LEVELMAT_THREADS must be >= 0")
    return value or (os.cpu_count() or 1)


# -- helpers -----------------------------------------------------------------

def read_text(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_matrix(path):
    return parse_matrix(read_text(path))


def frac_str(v):
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def vec_str(v, sep=" "):
    return sep.join(frac_str(c) for c in v)


def parse_point(text):
    try:
        return tuple(Fraction(tok) for tok in text.replace(",", " ").split())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad point {text!r}") from None


def rows_1based(subset):
    return "{" + ",".join(str(i + 1) for i in sorted(subset)) + "}"


def matrix_data(M):
    return {"k": M.k, "m": M.m, "n": M.n, "rows": [list(r) for r in M.rows]}


def int_args(values, names, kind):
    if len(values) != len(names):
        raise UsageError(f"construct {kind} expects {len(names)} argument(s): {' '.join(names)}")
    try:
        return [int(v) for v in values]
    except ValueError:
        raise UsageError(f"construct {kind}: arguments must be integers") from None


# -- commands ----------------------------------------------------------------
# Each returns (data, text) on success and raises on failure.

def cmd_check(args):
    M = load_matrix(args.file)
    level, t = is_level(M)
    data = {"level": level, "t": t, "m": M.m, "n": M.n, "k": M.k}
    if not level:
        sums = column_sums(M)
        data["column_sums"] = list(sums)
        text = "not level; column sums " + " ".join(map(str, sums))
        if args.require_level:
            raise DomainFailure(text, data)
        return data, text
    w = is_reducible(M)
    data["reducible"] = w is not None
    if w is None:
        text = f"level t={t}; irreducible"
    else:
        data["witness"] = {"rows": [i + 1 for i in sorted(w.subset)], "s": w.s}
        text = f"level t={t}; reducible; witness rows {rows_1based(w.subset)} (sum {w.s})"
    if args.decompose:
        blocks = decompose_into_irreducibles(M)
        data["blocks"] = [matrix_data(B) for B in blocks]
        lines = [text, f"irreducible blocks: {len(blocks)}"]
        for i, B in enumerate(blocks, 1):
            lines.append(f"# block {i}: rows={B.m} t={is_level(B)[1]}")
            lines.append(format_matrix(B, header=False).rstrip("\n"))
        text = "\n".join(lines)
    return data, text


def cmd_hilbert(args):
    if args.universal:
        n, k = args.universal
        A = universal_matrix(n, k)
        source = f"U({n},{k})"
    elif args.file:
        A = load_matrix(args.file)
        source = args.file
    else:
        raise UsageError("hilbert needs a FILE or --universal N K")
    budget = args.budget
    if budget is None:
        budget = ell_budget(A.n, A.k) if A.n >= 2 else 1
    try:
        hb = hilbert_basis(A, budget, max_nodes=args.max_nodes)
    except SearchBudgetExceeded as exc:
        raise DomainFailure(str(exc), {
            "source": source, "budget": budget, "partial": True, "lower_bound": exc.lower_bound,
        }) from None
    gens = sorted(hb.generators, key=lambda g: g.x)
    data = {
        "source": source, "budget": budget, "partial": False,
        "count": len(gens), "max_row_count": hb.max_row_count,
        "generators": [{"x": list(g.x), "alpha": g.alpha, "row_count": g.row_count} for g in gens],
    }
    lines = [f"# source {source}; budget {budget}; generators {len(gens)}; max rowcount {hb.max_row_count}"]
    lines += [f"{vec_str(g.x)} : {g.alpha} : {g.row_count}" for g in gens]
    return data, "\n".join(lines)


def cmd_ell(args):
    budget = args.budget if args.budget is not None else ell_budget(args.n, args.k)
    try:
        res = ell_search(args.n, args.k, budget=budget, max_nodes=args.max_nodes)
    except SearchBudgetExceeded as exc:
        raise DomainFailure(str(exc), {
            "n": args.n, "k": args.k, "budget": budget, "partial": True, "lower_bound": exc.lower_bound,
        }) from None
    classes = [matrix_data(c.matrix) for c in res.extremal_classes]
    data = {
        "n": res.n, "k": res.k, "value": res.value, "budget": res.budget,
        "generator_count": res.generator_count, "extremal_classes": classes, "partial": False,
    }
    lines = [
        f"ell({res.n},{res.k}) = {res.value}; extremal classes: {len(classes)}",
        f"# budget {res.budget}; irreducible levelers searched {res.generator_count}",
    ]
    for i, c in enumerate(res.extremal_classes, 1):
        lines.append(f"# class {i}")
        lines.append(format_matrix(c.matrix, header=False).rstrip("\n"))
    return data, "\n".join(lines)


def cmd_bounds(args):
    rep = bound_report(args.n, args.k, eps=args.eps)
    data = rep.as_dict()
    data["eps"] = args.eps
    lines = [f"{key} = {'omitted (too large)' if data[key] is None else data[key]}" for key in
             ("n", "k", "ub_main", "ub_ub2", "ub_lg", "ub_polytope", "hadamard", "ah_rows")]
    lines.append(f"lb_value = {rep.lb_value:.6f}  (eps={args.eps})")
    lines += [f"# {f}" for f in rep.formulas_used]
    return data, "\n".join(lines)


def cmd_construct(args):
    kind, params = args.kind, args.params
    extra = {}
    comments = []
    if kind == "identity":
        (n,) = int_args(params, ["N"], kind)
        matrices = [identity(n)]
    elif kind == "universal":
        n, k = int_args(params, ["N", "K"], kind)
        matrices = [universal_matrix(n, k)]
    elif kind == "prime-block":
        (x,) = int_args(params, ["X"], kind)
        spec, A = prime_block(x)
        matrices = [A]
        extra = {"primes": list(spec.primes), "P": spec.P, "n": spec.n, "m": spec.m}
        comments.append(f"# primes {','.join(map(str, spec.primes))}; P={spec.P}; n={spec.n}; m={spec.m}")
    elif kind == "a-of-h":
        if len(params) != 1:
            raise UsageError("construct a-of-h expects 1 argument: FILE")
        spec = a_of_h(load_matrix(params[0]))
        r_h, h = spec.feasible_point()
        matrices = [spec.result]
        extra = {"expected_m": spec.expected_m, "r_h": r_h, "h": [frac_str(v) for v in h]}
        comments.append(f"# m={spec.result.m} (expected {spec.expected_m}); r_h={r_h}; h={vec_str(h, ',')}")
    elif kind == "lambert":
        (k,) = int_args(params, ["K"], kind)
        matrices = [c.matrix for c in lambert_extremals(k)]
    else:  # argparse restricts choices; kept for direct callers
        raise UsageError(f"unknown construction {kind!r}")

    data = {"kind": kind, "matrices": [matrix_data(M) for M in matrices]}
    data.update(extra)
    lines = list(comments)
    for i, M in enumerate(matrices, 1):
        if len(matrices) > 1:
            lines.append(f"# matrix {i}")
        lines.append(format_matrix(M).rstrip("\n"))
    return data, "\n".join(lines)


def cmd_bfs(args):
    A = load_matrix(args.file)
    if args.point is not None:
        h = parse_point(args.point)
        dec = caratheodory_decompose(A, h)
        data = {
            "point": [frac_str(v) for v in h],
            "terms": [{"lambda": frac_str(lam), "index_set": [i + 1 for i in b.index_set],
                       "vertex": [frac_str(v) for v in b.point]} for lam, b in dec.terms],
        }
        lines = [f"# {len(dec.terms)} term(s); lambda : vertex"]
        lines += [f"{frac_str(lam)} : {vec_str(b.point)}" for lam, b in dec.terms]
        return data, "\n".join(lines)
    bfs = enumerate_bfs(A)
    dim = polytope_dimension(bfs)
    data = {
        "dimension": dim,
        "vertices": [{"index_set": [i + 1 for i in b.index_set], "point": [frac_str(v) for v in b.point],
                      "r": b.r} for b in bfs],
    }
    lines = [f"# vertices {len(bfs)}; dimension {dim}; rows : point : r"]
    lines += [f"{rows_1based(b.index_set)} : {vec_str(b.point)} : {b.r}" for b in bfs]
    return data, "\n".join(lines)


def cmd_vsp(args):
    if args.vsp_command == "check":
        P = parse_partition(read_text(args.file), args.q)
        lam = is_lambda_partition(P)
        bound = partition_bound(P.n, P.q) if P.n >= 2 else None
        data = {"q": P.q, "n": P.n, "terms": len(P.terms), "lambda": lam, "bound": bound}
        if lam is None:
            return data, f"not a lambda-partition; terms {len(P.terms)}"
        ok, split = is_irreducible_partition(P)
        data["irreducible"] = ok
        text = f"lambda={lam}; {'irreducible' if ok else 'reducible'}; terms {len(P.terms)}; bound {bound}"
        if not ok:
            q1, q2 = split
            data["split"] = [format_partition(q1).splitlines(), format_partition(q2).splitlines()]
            text += (f"\n# part 1: lambda={is_lambda_partition(q1)}\n" + format_partition(q1)
                     + f"# part 2: lambda={is_lambda_partition(q2)}\n" + format_partition(q2)).rstrip("\n")
        return data, text
    if args.vsp_command == "lines":
        lines = one_dim_subspaces(args.n, args.q)
        data = {"n": args.n, "q": args.q, "lines": [list(s.basis[0]) for s in lines]}
        return data, "\n".join(",".join(map(str, s.basis[0])) for s in lines)
    if args.vsp_command == "enumerate":
        parts = enumerate_lambda_partitions(args.n, args.q, args.lam)
        data = {"n": args.n, "q": args.q, "lambda": args.lam, "count": len(parts), "partitions": []}
        lines = [f"# {len(parts)} partition(s) of V({args.n},{args.q}) with lambda={args.lam}"]
        for i, P in enumerate(parts, 1):
            ok, _ = is_irreducible_partition(P)
            data["partitions"].append({"terms": format_partition(P).splitlines(), "irreducible": ok})
            lines.append(f"# partition {i}: terms {len(P.terms)}; {'irreducible' if ok else 'reducible'}")
            lines.append(format_partition(P).rstrip("\n"))
        return data, "\n".join(lines)
    # bound
    t = line_count(args.n, args.q)
    data = {
        "n": args.n, "q": args.q, "lines": t,
        "bound": partition_bound(args.n, args.q),
        "closed_form": partition_bound_closed_form(args.n, args.q),
    }
    text = "\n".join([
        f"lines = {t}",
        f"bound = {data['bound']}",
        f"closed_form = {data['closed_form']}  (reported only)",
    ])
    return data, text


# -- parser ------------------------------------------------------------------

def positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit {status, command, data} as JSON")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--budget", type=positive_int, help="row-count budget (default: proven bound)")
    search.add_argument("--max-nodes", type=positive_int, default=DEFAULT_MAX_NODES,
                        help="search node limit before giving up")

    parser = argparse.ArgumentParser(prog="levelmat", description="Exact tools for level k-matrices.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("check", parents=[common], help="levelness and reducibility of a matrix file")
    p.add_argument("file", help="matrix file, or - for stdin")
    p.add_argument("--decompose", action="store_true", help="split into irreducible level blocks")
    p.add_argument("--require-level", action="store_true", help="exit 1 if the matrix is not level")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("hilbert", parents=[common, search], help="irreducible levelers of a matrix")
    p.add_argument("file", nargs="?", help="matrix file, or - for stdin")
    p.add_argument("--universal", nargs=2, type=positive_int, metavar=("N", "K"),
                   help="use the matrix of all nonzero rows in {0..K}^N")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("ell", parents=[common, search], help="largest irreducible k-matrix with n columns")
    p.add_argument("n", type=positive_int)
    p.add_argument("k", type=positive_int)
    p.set_defaults(func=cmd_ell)

    p = sub.add_parser("bounds", parents=[common], help="evaluate every row-count bound")
    p.add_argument("n", type=positive_int)
    p.add_argument("k", type=positive_int)
    p.add_argument("--eps", type=float, default=0.5, help="epsilon for the lower-bound exponent")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construct", parents=[common], help="build a named matrix")
    p.add_argument("kind", choices=["identity", "universal", "prime-block", "a-of-h", "lambert"])
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bfs", parents=[common], help="vertices of {x >= 0 : A^T x = 1}")
    p.add_argument("file")
    p.add_argument("--point", help="decompose this feasible point, e.g. '1/2 1/2 1/2'")
    p.set_defaults(func=cmd_bfs)

    p = sub.add_parser("vsp", parents=[common], help="multipartitions of finite vector spaces")
    vsub = p.add_subparsers(dest="vsp_command", metavar="VSP_COMMAND")
    vsub.required = True
    v = vsub.add_parser("check", parents=[common], help="classify a partition file")
    v.add_argument("file")
    v.add_argument("--q", type=positive_int, required=True, help="prime field size")
    for name, helptext in (("lines", "list the one-dimensional subspaces"),
                           ("bound", "term bound for irreducible partitions"),
                           ("enumerate", "all lambda-partitions")):
        v = vsub.add_parser(name, parents=[common], help=helptext)
        v.add_argument("n", type=positive_int)
        v.add_argument("q", type=positive_int)
        if name == "enumerate":
            v.add_argument("--lam", type=positive_int, default=1)
    p.set_defaults(func=cmd_vsp)
    return parser


def command_name(args):
    name = args.command
    if name == "vsp":
        name += " " + args.vsp_command
    return name


def emit(args, status, data, text, stream):
    if args.json:
        payload = {"status": status, "command": command_name(args), "data": data}
        stream.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    elif text:
        stream.write(text + "\n")


def main(argv=None):
    # exact bounds can run to many thousands of digits
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        log.debug("threads available: %d (computation is sequential)", thread_count())
        data, text = args.func(args)
    except DomainFailure as exc:
        emit(args, "error", dict(exc.data, error=str(exc)), f"error: {exc}", sys.stdout)
        return 1
    except (UsageError, ParseError) as exc:
        emit(args, "error", {"error": str(exc)}, None, sys.stdout)
        print(f"levelmat: error: {exc}", file=sys.stderr)
        return 2
    except LevelMatError as exc:
        emit(args, "error", {"error": str(exc)}, f"error: {exc}", sys.stdout)
        return 1
    emit(args, "ok", data, text, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
