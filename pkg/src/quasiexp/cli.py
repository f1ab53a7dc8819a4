"""Command-line front end: worked examples and convergence sweeps as CSV/JSON.

Exit status is 0 on success, 2 on bad input and 3 when a solver fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import dice, quantum
from .linalg import ConvergenceError, load_matrix
from .lp import LpNumericalError
from .simplex import PolynomialParseError, parse_polynomial

DEFAULT_G = "th1^2 - th1*th2 + th2^2 + 0.05"

EXIT_PARSE = 2
EXIT_SOLVER = 3


class InputError(ValueError):
    pass


def fmt(v: float) -> str:
    v = float(v)
    return f"{0.0 if v == 0 else v:.12g}"


def num(v: float) -> float:
    return float(fmt(v))


def _key(n) -> str:
    return ",".join(str(c) for c in n)


def _load_witness(path: str | None) -> quantum.Witness:
    if path is None:
        return quantum.example_witness()
    try:
        mat, doc = load_matrix(path)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read witness {path}: {exc}") from exc
    if "dims" in doc:
        dims = tuple(int(d) for d in doc["dims"])
    else:
        side = int(round(np.sqrt(mat.shape[0])))
        if side * side != mat.shape[0]:
            raise InputError(f"witness of size {mat.shape[0]} needs an explicit \"dims\" entry")
        dims = (side, side)
    try:
        return quantum.Witness(dims, mat)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _check_range(args, lo: int) -> None:
    if args.rmin < lo or args.rmax < args.rmin:
        raise InputError(f"need {lo} <= rmin <= rmax, got rmin={args.rmin}, rmax={args.rmax}")


def cmd_dice_example(args) -> str:
    g = parse_polynomial(args.g, args.k)
    r = args.rmin
    res = dice.lower_prevision(g, r, args.k)
    dual = res.dual
    summary = {
        "command": "dice-example",
        "polynomial": args.g,
        "k": args.k,
        "r": r,
        "value": num(res.value),
        "dual": {_key(n): num(v) for n, v in sorted(dual.values.items())},
        "dual_normalization": num(dual.normalization()),
        "dual_value": num(dual.apply(g)),
        "dual_feasible": dual.is_feasible(),
        "classical_minimum_grid": num(dice.classical_minimum(g, args.k, resolution=12)),
    }
    return json.dumps(summary, indent=2) + "\n"


def cmd_dice_sweep(args) -> str:
    g = parse_polynomial(args.g, args.k)
    _check_range(args, 0)
    rows = dice.convergence_sweep(g, args.rmin, args.rmax, args.k)
    return _csv(["r", "value"], [(r, fmt(v)) for r, v in rows])


def cmd_signed_measure(args) -> str:
    if args.table:
        try:
            table = dice.table_from_json(json.loads(Path(args.table).read_text()))
            p = dice.check_exchangeable(table, tol=1e-9)
        except (OSError, ValueError) as exc:
            raise InputError(f"cannot use table {args.table}: {exc}") from exc
    else:
        p = dice.check_exchangeable(dice.pair_exclusion_table(args.k))
    nu = dice.represent_signed(p, args.grid)
    back = dice.signed_mixture_probability(nu, p.k, p.r)
    try:
        dice.represent_signed(p, args.grid, nonnegative=True)
        nonneg = True
    except dice.InfeasibleAtResolution:
        nonneg = False
    summary = {
        "command": "signed-measure",
        "k": p.k,
        "r": p.r,
        "grid": args.grid,
        "atoms": [{"weight": num(w), "point": [num(x) for x in pt]}
                  for w, pt in zip(nu.weights, nu.points)],
        "total_weight": num(nu.weights.sum()),
        "min_weight": num(nu.weights.min()),
        "total_variation": num(nu.total_variation),
        "roundtrip_error": num(np.max(np.abs(back.table - p.table))),
        "nonnegative_feasible": nonneg,
    }
    return json.dumps(summary, indent=2) + "\n"


def cmd_quantum_witness(args) -> str:
    w = _load_witness(args.witness)
    vals = quantum.spectrum(w)
    summary = {
        "command": "quantum-witness",
        "dims": list(w.dims),
        "eigenvalues": [num(v) for v in vals],
        "hierarchy_r0": num(quantum.hierarchy_value(w, 0)),
        "product_state_minimum_estimate": num(
            quantum.product_state_minimum(w, args.samples, args.seed)),
    }
    if w.dims == (2, 2):
        summary["tr_w_rho_e"] = num(quantum.expectation(w.matrix, quantum.maximally_entangled_state()))
    return json.dumps(summary, indent=2) + "\n"


def cmd_quantum_sweep(args) -> str:
    w = _load_witness(args.witness)
    _check_range(args, 0)
    rows = quantum.hierarchy_sweep(w, args.rmax, args.rmin)
    return _csv(["r", "value", "compressed_dim"], [(r, fmt(v), d) for r, v, d in rows])


def cmd_gleason(args) -> str:
    rho = quantum.DensityMatrix(quantum.maximally_entangled_state())
    rng = np.random.default_rng(args.seed)
    u = quantum.random_unitary(rng, 4)
    computational = [quantum.basis_vector(4, i) for i in range(4)]
    random_basis = [u[:, i] for i in range(4)]
    probs = {
        "computational": quantum.gleason_probabilities(rho, computational),
        "bell": quantum.gleason_probabilities(rho, quantum.bell_basis()),
        "random": quantum.gleason_probabilities(rho, random_basis),
    }
    summary = {"command": "gleason", "seed": args.seed}
    for name, p in probs.items():
        summary[name] = [num(v) for v in p]
        summary[name + "_sum"] = num(p.sum())
    return json.dumps(summary, indent=2) + "\n"


COMMANDS = {
    "dice-example": (cmd_dice_example, "lower prevision and extremal dual of a dice polynomial", 2, 2),
    "dice-sweep": (cmd_dice_sweep, "lower prevision for each level r (CSV r,value)", 2, 12),
    "signed-measure": (cmd_signed_measure, "signed de Finetti representation of a table", 2, 2),
    "quantum-witness": (cmd_quantum_witness, "spectrum and level-0 bound of a witness", 0, 0),
    "quantum-sweep": (cmd_quantum_sweep, "bosonic extension hierarchy (CSV r,value,compressed_dim)", 0, 5),
    "gleason": (cmd_gleason, "outcome probabilities of the entangled state", 0, 0),
}


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quasiexp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text, rmin, rmax) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--g", default=DEFAULT_G, help="polynomial in th1..thK")
        p.add_argument("--k", type=int, default=6, help="number of die faces")
        p.add_argument("--witness", help="witness matrix JSON (default: built-in two-qubit witness)")
        p.add_argument("--table", help="probability table JSON with keys like \"1,2\"")
        p.add_argument("--rmin", type=int, default=rmin)
        p.add_argument("--rmax", type=int, default=rmax)
        p.add_argument("--grid", type=int, default=6, help="signed-measure grid resolution")
        p.add_argument("--samples", type=int, default=10_000)
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--seed", type=int, default=0)
    return parser


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        text = handler(args)
    except (PolynomialParseError, InputError) as exc:
        print(f"quasiexp: input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"quasiexp: invalid input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (LpNumericalError, ConvergenceError, dice.InfeasibleAtResolution) as exc:
        print(f"quasiexp: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
