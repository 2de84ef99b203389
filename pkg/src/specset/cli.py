"""Command-line front end: ``specset <command> [options]``.

Exit codes: 0 success, 2 bad input, 3 numeric or gate failure, 4 calibration
failure (the domain does not enclose the spectrum well enough).
"""
from __future__ import annotations

import argparse
import contextlib
import json
import math
import os
import sys
import tempfile

import numpy as np

from .calculus import CalculusContext, cauchy_transform_taylor
from .errors import InvalidFunctionError, NodeOnSpectrumError, SpecsetError
from .funcspace import function_from_json, require_valid
from .geometry import boundary_quadrature, domain_from_json
from .lemma import constant_ledger, sharpness_demo, verify_conditions, CROUZEIX_PALENCIA
from .numrange import numerical_range_boundary
from .optimize import FamilyConfig, SearchConfig, estimate_constant, random_ensemble_sweep

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_CALIBRATION = 0, 2, 3, 4


class InputError(Exception):
    pass


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _entry(x) -> complex:
    if isinstance(x, (int, float)):
        return complex(x)
    return complex(x[0], x[1])


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows = [[_entry(x) for x in row] for row in obj["rows"]]
        M = np.array(rows, dtype=np.complex128)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"malformed matrix JSON: {exc}") from exc
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.size == 0 or not np.isfinite(M).all():
        raise InputError("matrix must be square, non-empty and finite")
    return M


def matrix_to_json(M) -> dict:
    return {"rows": [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M)]}


def _load(path, parser, what):
    try:
        return parser(_load_json(path))
    except InputError:
        raise
    except (KeyError, TypeError, ValueError, SpecsetError) as exc:
        raise InputError(f"malformed {what} in {path}: {exc}") from exc


def write_atomic(path, text: str) -> None:
    """Write ``text`` to ``path`` via a temp file and rename; '-' or None means stdout."""
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".specset-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(OSError):
            os.unlink(tmp)
        raise


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_numrange(args) -> int:
    T = _load(args.matrix, matrix_from_json, "matrix")
    bd = numerical_range_boundary(T, args.angles)
    write_atomic(args.out, bd.to_csv())
    return EXIT_OK


def cmd_sharpness(args) -> int:
    report = sharpness_demo(args.nodes)
    write_atomic(args.out, _dump(report.to_dict()))
    ok = abs(report.ratio - CROUZEIX_PALENCIA) <= 1e-9
    return EXIT_OK if ok else EXIT_NUMERIC


def _context(T, domain, nodes):
    ctx = CalculusContext(T, domain, nodes)
    if not ctx.trusted:
        print(f"calibration failed: residuals {ctx.res_identity:.3e}, {ctx.res_T:.3e}",
              file=sys.stderr)
        return None
    return ctx


def cmd_verify(args) -> int:
    T = _load(args.matrix, matrix_from_json, "matrix")
    domain = _load(args.domain, domain_from_json, "domain")
    f = _load(args.f, function_from_json, "function")
    try:
        require_valid(f, domain)
    except InvalidFunctionError as exc:
        raise InputError(str(exc)) from exc
    try:
        ctx = _context(T, domain, args.nodes)
    except NodeOnSpectrumError as exc:
        print(exc, file=sys.stderr)
        return EXIT_CALIBRATION
    if ctx is None:
        return EXIT_CALIBRATION
    if args.g == "auto-cauchy":
        if len(domain) != 1:
            raise InputError("--g auto-cauchy needs a one-component convex domain")
        g = cauchy_transform_taylor(f, domain, boundary_quadrature(domain, args.nodes))
    else:
        g = _load(args.g, function_from_json, "function")
    report = verify_conditions(ctx, f, g)
    out = report.to_dict()
    out["g"] = g.to_json()
    write_atomic(args.out, _dump(out))
    return EXIT_OK if report.cond1_ok and report.cond2_ok else EXIT_NUMERIC


def cmd_bounds(args) -> int:
    domain = _load(args.domain, domain_from_json, "domain")
    write_atomic(args.out, _dump(constant_ledger(domain).to_dict()))
    return EXIT_OK


def cmd_optimize(args) -> int:
    T = _load(args.matrix, matrix_from_json, "matrix")
    domain = _load(args.domain, domain_from_json, "domain")
    try:
        ctx = _context(T, domain, args.nodes)
    except NodeOnSpectrumError as exc:
        print(exc, file=sys.stderr)
        return EXIT_CALIBRATION
    if ctx is None:
        return EXIT_CALIBRATION
    res = estimate_constant(ctx, FamilyConfig(args.degree),
                            SearchConfig(args.restarts, args.max_evals, args.seed))
    write_atomic(args.out, _dump(res.to_dict()))
    return EXIT_OK if math.isfinite(res.k_lower) else EXIT_NUMERIC


def cmd_sweep(args) -> int:
    summary = random_ensemble_sweep(args.n, args.trials, args.seed, FamilyConfig(args.degree),
                                    SearchConfig(args.restarts, args.max_evals, args.seed),
                                    margin=args.margin)
    write_atomic(args.out, _dump(summary))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="specset", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, nodes=True):
        sp.add_argument("--out", default="-", help="output path ('-' for stdout)")
        if nodes:
            sp.add_argument("--nodes", type=int, default=256,
                            help="quadrature nodes per component (default 256)")

    sp = sub.add_parser("numrange", help="boundary of the numerical range as CSV")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--angles", type=int, default=720)
    common(sp, nodes=False)
    sp.set_defaults(func=cmd_numrange)

    sp = sub.add_parser("sharpness", help="two-disk example attaining 1 + sqrt 2")
    common(sp)
    sp.set_defaults(func=cmd_sharpness)

    sp = sub.add_parser("verify", help="check both hypotheses of the lemma for (f, g)")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--domain", required=True)
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True, help="function JSON path or 'auto-cauchy'")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bounds", help="ledger of classical spectral-set constants")
    sp.add_argument("--domain", required=True)
    common(sp, nodes=False)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("optimize", help="lower bound on K(T, domain)")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--domain", required=True)
    sp.add_argument("--degree", type=int, default=4)
    sp.add_argument("--restarts", type=int, default=32)
    sp.add_argument("--max-evals", type=int, default=2000)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_optimize)

    sp = sub.add_parser("sweep", help="optimizer over seeded random matrices")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--degree", type=int, default=4)
    sp.add_argument("--restarts", type=int, default=6)
    sp.add_argument("--max-evals", type=int, default=600)
    sp.add_argument("--margin", type=float, default=None,
                    help="clearance around W(T) (default 1e-3 * (1 + ||T||))")
    common(sp, nodes=False)
    sp.set_defaults(func=cmd_sweep)
    return p


def _thread_limit():
    n = os.environ.get("SPECSET_THREADS")
    if not n:
        return contextlib.nullcontext()
    from threadpoolctl import threadpool_limits

    return threadpool_limits(limits=max(1, int(n)))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with _thread_limit():
            return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SpecsetError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
