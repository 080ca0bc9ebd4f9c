"""Command-line entry point: ``cyclic-split {split,verify,bch,rabi}``.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
Numbers are written with 17 significant digits so doubles round-trip.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from cyclic_split import bch, dynamics
from cyclic_split.algebra import Axis, CoefficientVector
from cyclic_split.factor import (
    VARIANTS,
    ExpFactor,
    FactorSequence,
    literal_outer_comparison,
    residual,
    split_three,
    split_two,
)
from cyclic_split.representations import (
    Representation,
    rescale_basis,
    so3_generators,
    spin_generators,
)

OUTPUT_DIR_ENV = "CYCLIC_SPLIT_OUTPUT_DIR"
SPLIT_TOL = 1e-8
VERIFY_TOL = 1e-8

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return format(float(x) + 0.0, ".17g")


@dataclass
class RunConfig:
    subcommand: str
    fmt: str = "csv"
    output: str | None = None
    so3: bool = False
    two_j: int | None = None
    kappa: complex | None = None
    coefficients: tuple = ()
    variant: str | None = None
    inner: str = "X"
    max_degree: int = 8
    inputs: str = "spin"
    scale: float = 0.1
    draws: int = 20
    seed: int = 0
    corrupt_variant: str | None = None
    compare_literal: bool = False
    rabi: dict = field(default_factory=dict)
    grid: tuple = (0.0, 1.0, 11)
    m_from: str | None = None
    m_to: str | None = None


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclic-split",
        description="Split exponentials of cyclic Lie algebra elements into products.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
        p.add_argument("-o", "--output", help="output file (default: standard output)")

    def algebra(p, default_spin=None):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--so3", action="store_true", help="real 3x3 rotation generators (kappa=1)")
        g.add_argument("--spin", type=int, dest="two_j", metavar="TWO_J", default=default_spin,
                       help="spin matrices of dimension TWO_J+1 (kappa=i)")
        p.add_argument("--kappa", type=_complex, help="rescale the basis to this structure constant")

    p = sub.add_parser("split", help="factor one exponential and report the residual")
    common(p)
    algebra(p)
    p.add_argument("-a", type=_complex, required=True)
    p.add_argument("-b", type=_complex, required=True)
    p.add_argument("-c", type=_complex, help="third coefficient; selects the five-factor form")
    p.add_argument("--variant", default=None, help=f"one of {', '.join(VARIANTS)} (default t2r1)")
    p.add_argument("--inner", choices=("X", "Y"), default="X",
                   help="surviving axis of the three-factor form")

    p = sub.add_parser("verify", help="randomized residual sweep over all twelve orderings")
    common(p)
    algebra(p)
    p.add_argument("--draws", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corrupt-variant", default=None,
                   help="debug: flip the sign of the outer scalar of this variant")
    p.add_argument("--compare-literal", action="store_true",
                   help="also report the printed closing factor of t3r1/t3r2")

    p = sub.add_parser("bch", help="truncation error of the Dynkin series")
    common(p)
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--inputs", choices=("spin", "commuting"), default="spin")
    p.add_argument("--scale", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("rabi", help="transition probability sweep")
    common(p)
    p.add_argument("--omega", type=float, required=True, help="drive frequency")
    p.add_argument("--Omega", type=float, required=True, help="Larmor frequency")
    p.add_argument("--lambda", dest="lam", type=float, required=True, help="coupling")
    p.add_argument("--spin", dest="two_j", type=int, default=1, metavar="TWO_J")
    p.add_argument("--t-start", type=float, default=0.0)
    p.add_argument("--t-stop", type=float, default=1.0)
    p.add_argument("--t-count", type=int, default=11)
    p.add_argument("--m-from", default=None, help="initial level (default -J)")
    p.add_argument("--m-to", default=None, help="final level (default +J)")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(subcommand=ns.subcommand, fmt=ns.fmt, output=ns.output)
    if ns.subcommand in ("split", "verify"):
        cfg.so3 = ns.so3
        cfg.two_j = ns.two_j
        cfg.kappa = ns.kappa
    if ns.subcommand == "split":
        coeffs = (ns.a, ns.b) if ns.c is None else (ns.a, ns.b, ns.c)
        cfg.coefficients = coeffs
        cfg.variant = ns.variant
        cfg.inner = ns.inner
        if ns.variant is not None and ns.c is None:
            raise UsageError("--variant needs -c (five-factor form)")
        if not cfg.so3 and cfg.two_j is None:
            raise UsageError("choose a representation with --so3 or --spin TWO_J")
    elif ns.subcommand == "verify":
        cfg.draws = ns.draws
        cfg.seed = ns.seed
        cfg.corrupt_variant = ns.corrupt_variant
        cfg.compare_literal = ns.compare_literal
        if ns.draws < 0:
            raise UsageError("--draws must be >= 0")
        if ns.corrupt_variant is not None and ns.corrupt_variant not in VARIANTS:
            raise UsageError(f"unknown variant {ns.corrupt_variant!r}")
    elif ns.subcommand == "bch":
        cfg.max_degree = ns.max_degree
        cfg.inputs = ns.inputs
        cfg.scale = ns.scale
        cfg.seed = ns.seed
        if not 1 <= ns.max_degree <= bch.MAX_DEGREE:
            raise UsageError(f"budget: --max-degree must lie in 1..{bch.MAX_DEGREE}")
    elif ns.subcommand == "rabi":
        cfg.rabi = {"omega": ns.omega, "Omega": ns.Omega, "lam": ns.lam, "two_j": ns.two_j}
        cfg.two_j = ns.two_j
        if ns.t_count < 0:
            raise UsageError("--t-count must be >= 0")
        cfg.grid = (ns.t_start, ns.t_stop, ns.t_count)
        cfg.m_from = ns.m_from
        cfg.m_to = ns.m_to
    return cfg


def _representation(cfg: RunConfig) -> Representation:
    try:
        rep = so3_generators() if cfg.so3 else spin_generators(cfg.two_j)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.kappa is not None:
        if cfg.kappa == 0:
            raise UsageError("--kappa must be nonzero")
        rep = rescale_basis(rep, cfg.kappa / rep.kappa)
    return rep


# -- output -----------------------------------------------------------------


def _table_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(x) if isinstance(x, (float, np.floating)) else x for x in row])
    return buf.getvalue()


def _json_text(payload) -> str:
    def default(obj):
        if isinstance(obj, (np.floating, np.integer)):
            return obj.item()
        raise TypeError(type(obj).__name__)

    return json.dumps(payload, indent=2, sort_keys=False, default=default) + "\n"


def _emit(cfg: RunConfig, text: str, stdout) -> None:
    if cfg.output is None:
        stdout.write(text)
        return
    path = cfg.output
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _cplx(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


# -- subcommands ------------------------------------------------------------


def cmd_split(cfg: RunConfig, stdout=sys.stdout, stderr=sys.stderr) -> int:
    rep = _representation(cfg)
    spec = rep.spec
    if len(cfg.coefficients) == 2:
        a, b = cfg.coefficients
        v = CoefficientVector(a, b, 0)
        p, q, seq = split_two(spec, a, b, Axis.Z, Axis.parse(cfg.inner))
        scalars = {"p": p, "q": q}
        label = "two" if cfg.inner == "X" else "two_inner_y"
    else:
        v = CoefficientVector(*cfg.coefficients)
        label = cfg.variant or "t2r1"
        try:
            p, q, r, seq = split_three(spec, v, label)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        scalars = {"p": p, "q": q, "r": r}
    res = residual(rep, v, seq)
    ok = res <= SPLIT_TOL

    if cfg.fmt == "json":
        payload = {
            "representation": rep.label,
            "kappa": _cplx(rep.kappa),
            "form": label,
            "factors": [{"axis": ax, "coefficient": _cplx(c)} for ax, c in seq.pairs()],
            "scalars": {k: _cplx(z) for k, z in scalars.items()},
            "residual": res,
            "pass": ok,
        }
        _emit(cfg, _json_text(payload), stdout)
    else:
        rows = [("factor", ax, c.real, c.imag) for ax, c in seq.pairs()]
        rows += [("scalar", k, z.real, z.imag) for k, z in scalars.items()]
        rows.append(("residual", "frobenius", res, 0.0))
        _emit(cfg, _table_text(("kind", "name", "real", "imag"), rows), stdout)
    if not ok:
        stderr.write(f"residual {fmt(res)} exceeds {SPLIT_TOL:g}\n")
    return EXIT_OK if ok else EXIT_FAIL


def _verify_reps(cfg: RunConfig) -> list[Representation]:
    if cfg.so3 or cfg.two_j is not None:
        return [_representation(cfg)]
    return [so3_generators()] + [spin_generators(t) for t in (1, 2, 3)]


def _corrupt(seq: FactorSequence) -> FactorSequence:
    first = seq.factors[0]
    return FactorSequence((ExpFactor(first.axis, -first.coefficient),) + seq.factors[1:], seq.kappa)


def cmd_verify(cfg: RunConfig, stdout=sys.stdout, stderr=sys.stderr) -> int:
    reps = _verify_reps(cfg)
    if cfg.draws == 0:
        stderr.write("warning: --draws 0, nothing was checked (vacuous pass)\n")
    rng = np.random.default_rng(cfg.seed)
    draws = rng.uniform(-5.0, 5.0, size=(cfg.draws, 3))
    rows, failures = [], []
    for rep in reps:
        for name, vid in VARIANTS.items():
            worst = 0.0
            for a, b, c in draws:
                v = CoefficientVector(a, b, c)
                seq = split_three(rep.spec, v, vid)[3]
                if name == cfg.corrupt_variant:
                    seq = _corrupt(seq)
                res = residual(rep, v, seq)
                worst = max(worst, res)
                if res > VERIFY_TOL:
                    failures.append((name, rep.label, (a, b, c), res))
            rows.append((name, rep.label, worst, "pass" if worst <= VERIFY_TOL else "FAIL"))

    literal = []
    if cfg.compare_literal:
        for rep in reps:
            for a, b, c in draws:
                for entry in literal_outer_comparison(rep, CoefficientVector(a, b, c)):
                    literal.append((entry["variant"], rep.label, entry["symmetric_residual"],
                                    entry["literal_residual"]))

    if cfg.fmt == "json":
        payload = {
            "seed": cfg.seed,
            "draws": cfg.draws,
            "tolerance": VERIFY_TOL,
            "variants": [
                {"variant": n, "representation": r, "max_residual": w, "status": s}
                for n, r, w, s in rows
            ],
            "failures": [
                {"variant": n, "representation": r, "coefficients": list(map(float, abc)),
                 "residual": res, "seed": cfg.seed}
                for n, r, abc, res in failures
            ],
        }
        if cfg.compare_literal:
            payload["literal_comparison"] = [
                {"variant": n, "representation": r, "symmetric_residual": s, "literal_residual": lr}
                for n, r, s, lr in literal
            ]
        _emit(cfg, _json_text(payload), stdout)
    else:
        text = _table_text(("variant", "representation", "max_residual", "status"), rows)
        if cfg.compare_literal:
            text += "\n" + _table_text(
                ("variant", "representation", "symmetric_residual", "literal_residual"), literal
            )
        _emit(cfg, text, stdout)
    for name, label, abc, res in failures:
        stderr.write(
            f"FAIL variant={name} representation={label} "
            f"coefficients=({', '.join(fmt(x) for x in abc)}) seed={cfg.seed} residual={fmt(res)}\n"
        )
    return EXIT_FAIL if failures else EXIT_OK


def _bch_inputs(cfg: RunConfig):
    if cfg.inputs == "commuting":
        rng = np.random.default_rng(cfg.seed)
        d1, d2 = rng.uniform(-1.0, 1.0, size=(2, 3))
        X = np.diag(d1).astype(complex)
        Y = np.diag(d2).astype(complex)
    else:
        rep = spin_generators(1)
        rng = np.random.default_rng(cfg.seed)
        u, w = rng.uniform(-1.0, 1.0, size=(2, 3))
        X = 1j * rep.element(u / np.linalg.norm(u))
        Y = 1j * rep.element(w / np.linalg.norm(w))
    # Scale each input to Frobenius norm ``scale``.
    X = cfg.scale * X / np.linalg.norm(X)
    Y = cfg.scale * Y / np.linalg.norm(Y)
    return X, Y


def cmd_bch(cfg: RunConfig, stdout=sys.stdout, stderr=sys.stderr) -> int:
    X, Y = _bch_inputs(cfg)
    try:
        curve = bch.truncation_error_curve(X, Y, range(1, cfg.max_degree + 1))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.fmt == "json":
        payload = {"inputs": cfg.inputs, "scale": cfg.scale, "seed": cfg.seed,
                   "rows": [{"degree": n, "error": e} for n, e in curve]}
        _emit(cfg, _json_text(payload), stdout)
    else:
        _emit(cfg, _table_text(("degree", "error"), curve), stdout)
    return EXIT_OK


def cmd_rabi(cfg: RunConfig, stdout=sys.stdout, stderr=sys.stderr) -> int:
    try:
        params = dynamics.RabiParams(**cfg.rabi)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    j = params.two_j / 2
    m_from = cfg.m_from if cfg.m_from is not None else -j
    m_to = cfg.m_to if cfg.m_to is not None else j
    try:
        dynamics.basis_index(params.two_j, m_from)
        dynamics.basis_index(params.two_j, m_to)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    start, stop, count = cfg.grid
    grid = np.linspace(start, stop, count) if count != 1 else np.array([start])
    rows = dynamics.sweep(params, grid, m_from, m_to)
    worst = 0.0
    for t in grid:
        U = dynamics.propagator(params, t)
        worst = max(worst, float(np.linalg.norm(U.conj().T @ U - np.eye(params.dim))))
    if cfg.fmt == "json":
        payload = {"params": cfg.rabi, "m_from": str(m_from), "m_to": str(m_to),
                   "rows": [{"t": t, "probability": prob} for t, prob in rows],
                   "unitarity_residual": worst}
        _emit(cfg, _json_text(payload), stdout)
    else:
        text = _table_text(("t", "probability"), rows)
        text += f"unitarity_residual,{fmt(worst)}\n"
        _emit(cfg, text, stdout)
    return EXIT_OK


COMMANDS = {"split": cmd_split, "verify": cmd_verify, "bch": cmd_bch, "rabi": cmd_rabi}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.subcommand](cfg, stdout=stdout, stderr=stderr)
    except UsageError as exc:
        stderr.write(f"cyclic-split: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        stderr.write(f"cyclic-split: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
