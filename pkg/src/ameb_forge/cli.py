"""Command-line front end: ``ameb-forge {lsq,build,verify,reproduce}``.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
malformed input or bad usage. The default tolerance comes from the
``AMEB_FORGE_TOL`` environment variable when it is set.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import catalog
from .basis import (
    TOL,
    CoefficientVector,
    build_ameb_equal_dims,
    build_ameb_mixed_dims,
    build_product_basis,
    flat_fourier_coeffs,
    read_basis,
    write_basis,
)
from .errors import AmebError, BudgetExhausted, NonexistentResolution
from .latin import (
    DEFAULT_BUDGET,
    LatinSquare,
    are_mols,
    are_mwols,
    cyclic_square,
    direct_product_family,
    find_resolution,
    generic_square,
    gf_mwols_family,
    is_latin,
    parse_grids,
    read_squares,
    transversal_companion,
    format_squares,
    write_squares,
)
from .verify import verify_mub_family

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad input detected after argument parsing; maps to exit status 2."""


@dataclass(frozen=True)
class CliConfig:
    tolerance: float = TOL
    budget: int = DEFAULT_BUDGET
    out_dir: Optional[str] = None
    report: str = "text"
    workers: Optional[int] = None

    def __post_init__(self):
        if not self.tolerance > 0:
            raise UsageError(f"tolerance must be positive, got {self.tolerance}")
        if self.budget < 0:
            raise UsageError(f"budget must be non-negative, got {self.budget}")


def default_tolerance() -> float:
    raw = os.environ.get("AMEB_FORGE_TOL")
    if raw is None:
        return TOL
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"AMEB_FORGE_TOL={raw!r} is not a number") from None


def _config(args) -> CliConfig:
    tol = args.tol if getattr(args, "tol", None) is not None else default_tolerance()
    return CliConfig(tol, getattr(args, "budget", DEFAULT_BUDGET) or 0,
                     getattr(args, "out_dir", None), getattr(args, "report", "text"),
                     getattr(args, "workers", None))


def _emit(lines, out=None):
    out = out or sys.stdout
    for ln in lines:
        print(ln, file=out)


# -- lsq -------------------------------------------------------------------

def _read_grids(path) -> list[np.ndarray]:
    try:
        return parse_grids(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _squares_of(path) -> list[LatinSquare]:
    try:
        return [s for s in read_squares(path) if isinstance(s, LatinSquare)]
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_lsq(args) -> int:
    if args.lsq_cmd == "gen":
        return _lsq_gen(args)
    return _lsq_check(args)


def _lsq_gen(args) -> int:
    n, method = args.order, args.method
    if n < 1:
        raise UsageError("--order must be positive")
    if method == "cyclic":
        squares = [cyclic_square(n)]
    elif method == "gf":
        squares = list(gf_mwols_family(n))
    elif method == "product":
        if not args.factors or len(args.factors) < 2:
            raise UsageError("--method product needs --factors with at least two files")
        fams = [_squares_of(p) for p in args.factors]
        squares = list(direct_product_family(*fams))
        if squares and squares[0].order != n:
            raise UsageError(f"factors multiply to order {squares[0].order}, not {n}")
    else:
        base = _squares_of(args.square)[0] if args.square else (
            cyclic_square(n) if n % 2 else generic_square(n))
        if base.order != n:
            raise UsageError(f"square has order {base.order}, not {n}")
        try:
            comp = transversal_companion(base, find_resolution(base, args.budget))
        except (BudgetExhausted, NonexistentResolution) as exc:
            print(f"FAIL companion: {exc}", file=sys.stderr)
            return EXIT_FAIL
        squares = [comp.base, comp.square]
    if args.out:
        write_squares(args.out, squares)
        print(f"wrote {len(squares)} square(s) of order {n} to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(format_squares(squares))
    return EXIT_OK


def _lsq_check(args) -> int:
    ok = True
    first = _read_grids(args.file)
    for k, g in enumerate(first):
        good = is_latin(g)
        ok &= good
        print(f"{'PASS' if good else 'FAIL'} latin {args.file}[{k}]")
    for mode, other in (("mols", args.mols), ("mwols", args.mwols)):
        if other is None:
            continue
        second = _read_grids(other)
        pred = are_mols if mode == "mols" else are_mwols
        for i, a in enumerate(first):
            for j, b in enumerate(second):
                if a.shape != b.shape:
                    raise UsageError(f"order mismatch: {a.shape[0]} vs {b.shape[0]}")
                good = is_latin(a) and is_latin(b) and pred(LatinSquare(a), LatinSquare(b))
                ok &= good
                print(f"{'PASS' if good else 'FAIL'} {mode} {args.file}[{i}] {other}[{j}]")
    return EXIT_OK if ok else EXIT_FAIL


# -- build -----------------------------------------------------------------

def _read_coeffs(spec: str, d: int) -> CoefficientVector:
    if spec == "auto":
        return flat_fourier_coeffs(d)
    vals = []
    try:
        for ln in Path(spec).read_text().split("\n"):
            parts = ln.split()
            if not parts:
                continue
            vals.append(complex(float(parts[0]), float(parts[1])) if len(parts) == 2
                        else complex(parts[0].replace("i", "j")))
    except OSError as exc:
        raise UsageError(f"cannot read {spec}: {exc}") from None
    except ValueError:
        raise UsageError(f"{spec}: expected one complex number per line") from None
    return CoefficientVector(vals)


def cmd_build(args) -> int:
    cfg = _config(args)
    dims = args.dims
    out_dir = Path(cfg.out_dir or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.kind == "product":
        if len(dims) != 2:
            raise UsageError("--kind product takes --dims d1 d2")
        jobs = [(build_product_basis(*dims), f"product_{dims[0]}x{dims[1]}")]
    else:
        if not args.square:
            raise UsageError(f"--kind {args.kind} needs --square")
        squares = _squares_of(args.square)
        if not squares:
            raise UsageError(f"{args.square} holds no Latin square")
        stem = Path(args.square).stem
        jobs = []
        for k, L in enumerate(squares):
            if args.kind in ("equal", "weighted"):
                if len(set(dims)) != 1 or len(dims) not in (2, 3) or dims[0] != L.order:
                    raise UsageError(f"--kind {args.kind} needs --dims d d d with d = {L.order}")
                coeffs = None
                if args.kind == "weighted":
                    if not args.coeffs:
                        raise UsageError("--kind weighted needs --coeffs path|auto")
                    coeffs = _read_coeffs(args.coeffs, L.order)
                B = build_ameb_equal_dims(L, coeffs, s=k + 1)
            else:
                if len(dims) == 3 and dims[2] != dims[0] * dims[1]:
                    raise UsageError("third dimension must equal d1*d2")
                B = build_ameb_mixed_dims(L, dims[0], dims[1], s=k + 1)
            jobs.append((B, f"{stem}_{args.kind}_{k + 1}"))
    status = EXIT_OK
    for B, name in jobs:
        rep = verify_mub_family([B], cfg.tolerance)
        if not rep.passed:
            print(f"FAIL gram {name}: deviation {rep.max_deviation['gram']:.3e}", file=sys.stderr)
            status = EXIT_FAIL
            continue
        path = out_dir / f"{name}.json"
        write_basis(path, B)
        print(f"wrote {len(B)} vectors to {path}")
    return status


# -- verify ----------------------------------------------------------------

def cmd_verify(args) -> int:
    cfg = _config(args)
    try:
        bases = [read_basis(p) for p in args.files]
    except OSError as exc:
        raise UsageError(str(exc)) from None
    if len({B.dims for B in bases}) > 1:
        raise UsageError("basis files have different dimensions")
    if args.ame_only:
        unknown = set(args.ame_only) - set(args.files)
        if unknown:
            raise UsageError(f"--ame-only files not among the inputs: {sorted(unknown)}")
        ame = [k for k, p in enumerate(args.files) if p in args.ame_only]
    else:
        ame = list(range(len(bases))) if args.ame else []
    rep = verify_mub_family(bases, cfg.tolerance, ame=ame, workers=cfg.workers)
    if cfg.report == "json":
        print(json.dumps(rep.to_dict(), indent=2))
    else:
        names = {B.provenance: p for B, p in zip(bases, args.files)}
        for r in rep.reports:
            subj = " | ".join(names.get(s, s) for s in r.subject.split(" | "))
            print(f"{'PASS' if r.passed else 'FAIL'} {r.kind:8s} dev={r.max_deviation:.3e} "
                  f"target={r.target:.10g} {subj}")
        print("PASS" if rep.passed else "FAIL")
    return EXIT_OK if rep.passed else EXIT_FAIL


# -- reproduce -------------------------------------------------------------

def cmd_reproduce(args) -> int:
    cfg = _config(args)
    if args.example is not None:
        bases, rep = catalog.reproduce_example(args.example, cfg.tolerance, workers=cfg.workers)
        if cfg.report == "json":
            print(json.dumps(rep.to_dict(), indent=2))
        else:
            n_vec = sum(len(B) for B in bases)
            print(f"example {args.example}: {len(bases)} bases, {n_vec} vectors")
            for kind, dev in rep.max_deviation.items():
                print(f"  {kind:8s} max deviation {dev:.3e}")
            print("PASS" if rep.passed else "FAIL")
        return EXIT_OK if rep.passed else EXIT_FAIL
    try:
        results = catalog.reproduce_table(args.rows, cfg.budget, tol=cfg.tolerance,
                                          out_dir=cfg.out_dir, workers=cfg.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.report == "json":
        print(catalog.table_summary_json(results))
    else:
        for r in results:
            dev = max(r.worst_deviation.values(), default=float("nan"))
            print(f"{r.d1d2:3d} ({r.d1}x{r.d2}) {r.route:14s} M={r.constructed_M}/{r.M_claimed} "
                  f"N={r.constructed_N}/{r.N_claimed} {r.status:10s} dev={dev:.2e} {r.runtime:7.2f}s")
    for r in results:
        if r.status == "unresolved":
            print(f"warning: row {r.d1d2} unresolved ({r.note})", file=sys.stderr)
    return EXIT_FAIL if any(r.status == "failed" for r in results) else EXIT_OK


# -- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ameb-forge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, budget=False):
        sp.add_argument("--tol", type=float, default=None,
                        help="absolute tolerance (default: $AMEB_FORGE_TOL or 1e-9)")
        sp.add_argument("--workers", type=int, default=None, help="verification threads")
        if budget:
            sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                            help="node cap for resolution searches")

    lsq = sub.add_parser("lsq", help="generate or check Latin squares")
    lsub = lsq.add_subparsers(dest="lsq_cmd", required=True)
    gen = lsub.add_parser("gen", help="generate squares")
    gen.add_argument("--order", type=int, required=True)
    gen.add_argument("--method", choices=("cyclic", "gf", "product", "companion"), required=True)
    gen.add_argument("--factors", nargs="+", help="square files for --method product")
    gen.add_argument("--square", help="base square for --method companion")
    gen.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    gen.add_argument("--out", help="output file (default: stdout)")
    chk = lsub.add_parser("check", help="check Latin property and orthogonality")
    chk.add_argument("file")
    chk.add_argument("--mols", metavar="B")
    chk.add_argument("--mwols", metavar="B")

    b = sub.add_parser("build", help="build basis files")
    b.add_argument("--kind", choices=("equal", "weighted", "mixed", "product"), required=True,
                   help="equal: C^d x C^d x C^d with unit weights; weighted: same with flat "
                        "coefficients; mixed: C^d1 x C^d2 x C^(d1 d2); product: Fourier product basis")
    b.add_argument("--dims", type=int, nargs="+", required=True)
    b.add_argument("--square")
    b.add_argument("--coeffs", help="coefficient file or 'auto'")
    b.add_argument("--out-dir", dest="out_dir")
    common(b)

    v = sub.add_parser("verify", help="verify basis files")
    v.add_argument("files", nargs="+")
    v.add_argument("--ame", action="store_true", help="also certify every file as AME")
    v.add_argument("--ame-only", nargs="+", metavar="FILE", help="certify only these files as AME")
    v.add_argument("--report", choices=("text", "json"), default="text")
    common(v)

    r = sub.add_parser("reproduce", help="rebuild and verify worked examples or table rows")
    g = r.add_mutually_exclusive_group(required=True)
    g.add_argument("--example", type=int, choices=(1, 2, 3, 4))
    g.add_argument("--table", action="store_true")
    r.add_argument("--rows", type=int, nargs="+")
    r.add_argument("--out-dir", dest="out_dir")
    r.add_argument("--report", choices=("text", "json"), default="text")
    common(r, budget=True)
    return p


COMMANDS = {"lsq": cmd_lsq, "build": cmd_build, "verify": cmd_verify, "reproduce": cmd_reproduce}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.cmd](args)
    except (UsageError, AmebError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
