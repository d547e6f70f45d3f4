"""Deterministic command-line front end.

Every command is a pure function of its flags (seeds included): reruns emit
byte-identical output.  Exit codes: 0 success, 1 a numerical check failed,
2 usage or I/O error.  Derived randomness uses the SplitMix64 scheme from
:mod:`qx.rng`, keyed by the base seed and grid coordinates or trial index.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import exact_codes, qec_core, quasi_universality, su_algebra, vbs_code
from .quantum_ops import trace_distance
from .rng import make_generator, stable_seed

STRICT_TOL = 1e-12
CLOSED_FORM_TOL = 1e-10

SWEEP_HEADER = (
    "d,N,chi,eta,max_detect_closedform_residual,max_corr_closedform_residual,"
    "edge_fixedpoint_distance,epsilon,erasure_bound"
)


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def read_isometry(path: str) -> np.ndarray:
    """Read a dense complex matrix: a 'rows cols' line, then row-major
    're im' pairs, one per line."""
    with open(path, "r", encoding="ascii") as fh:
        tokens = fh.read().split()
    if len(tokens) < 2:
        raise ValueError(f"{path}: missing dimension header")
    rows, cols = int(tokens[0]), int(tokens[1])
    values = tokens[2:]
    if len(values) != 2 * rows * cols:
        raise ValueError(
            f"{path}: expected {2 * rows * cols} numbers, found {len(values)}"
        )
    data = np.array([float(v) for v in values]).reshape(rows * cols, 2)
    return (data[:, 0] + 1j * data[:, 1]).reshape(rows, cols)


def write_isometry(path: str, matrix: np.ndarray) -> None:
    matrix = np.asarray(matrix, dtype=complex)
    lines = [f"{matrix.shape[0]} {matrix.shape[1]}"]
    for value in matrix.reshape(-1):
        lines.append(f"{value.real:.17g} {value.imag:.17g}")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="ascii") as fh:
            fh.write(text)


def cmd_algebra(args) -> int:
    basis = su_algebra.gell_mann_basis(args.d)
    residuals = su_algebra.invariant_residuals(basis)
    rng = make_generator(args.seed)
    hom = 0.0
    for _ in range(8):
        g1 = su_algebra.random_special_unitary(basis, rng)
        g2 = su_algebra.random_special_unitary(basis, rng)
        lhs = su_algebra.adjoint_group_element(basis, g1 @ g2)
        rhs = su_algebra.adjoint_group_element(
            basis, g1
        ) @ su_algebra.adjoint_group_element(basis, g2)
        hom = max(hom, float(np.abs(lhs - rhs).max()))
    lines = [f"{name}: {_fmt(value)}" for name, value in residuals.items()]
    lines.append(f"adjoint_homomorphism: {_fmt(hom)}")
    _emit("\n".join(lines) + "\n", args.output)
    ok = all(v < args.tol for v in residuals.values()) and hom < 100.0 * args.tol
    return 0 if ok else 1


def _closed_form_residuals(code) -> tuple[float, float]:
    """Max deviations of transfer contraction from the detection and
    correlation closed forms, over all generators and bond pairs."""
    g = code.basis.generators
    n_sites = code.n_sites
    det = 0.0
    for a in range(code.site_dim):
        for bond in range(n_sites + 1):
            got = vbs_code.edge_overlap(code, ket_insertions=[(bond, g[a])])
            want = vbs_code.detection_closed_form(code, a, bond)
            det = max(det, float(np.abs(got - want).max()))
    corr = 0.0
    for a in range(code.site_dim):
        for b in range(code.site_dim):
            for m in range(n_sites):
                for n in range(m + 1, n_sites + 1):
                    got = vbs_code.edge_overlap(
                        code, ket_insertions=[(n, g[b]), (m, g[a])]
                    )
                    want = vbs_code.correlation_closed_form(code, a, b, m, n)
                    corr = max(corr, float(np.abs(got - want).max()))
    return det, corr


def _sweep_point(d: int, n: int, strength: float) -> str:
    code = vbs_code.build(d, n)
    det, corr = _closed_form_residuals(code)
    iterated, _ = vbs_code.edge_state(code, 0, n)
    edge_fp = trace_distance(iterated, np.eye(d) / d)
    report = qec_core.kl_report_from_compressions(
        vbs_code.bond_error_compressions(code, strength=strength)
    )
    eps = qec_core.epsilon_from_report(report)
    row = [
        str(d),
        str(n),
        _fmt(code.chi),
        _fmt(vbs_code.eta(d, n)),
        _fmt(det),
        _fmt(corr),
        _fmt(edge_fp),
        _fmt(eps),
        _fmt(vbs_code.erasure_bound(code)),
    ]
    return ",".join(row)


def cmd_sweep(args) -> int:
    points = [
        (d, n)
        for d in range(args.d_min, args.d_max + 1)
        for n in range(args.n_min, args.n_max + 1)
    ]
    jobs = args.jobs or int(os.environ.get("QX_JOBS", "1"))
    if jobs > 1 and points:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(
                pool.map(lambda p: _sweep_point(p[0], p[1], args.strength), points)
            )
    else:
        rows = [_sweep_point(d, n, args.strength) for d, n in points]
    if args.format == "csv":
        text = "\n".join([SWEEP_HEADER] + rows) + "\n"
    else:
        names = SWEEP_HEADER.split(",")
        blocks = []
        for row in rows:
            values = row.split(",")
            blocks.append("\n".join(f"{k}: {v}" for k, v in zip(names, values)))
        text = ("\n\n".join(blocks) + "\n") if blocks else ""
    _emit(text, args.output)
    return 0


def cmd_vbs(args) -> int:
    code = vbs_code.build(args.d, args.n)
    det, corr = _closed_form_residuals(code)
    iterated, _ = vbs_code.edge_state(code, 0, args.n)
    report = qec_core.kl_report_from_compressions(
        vbs_code.bond_error_compressions(code, strength=args.strength)
    )
    lines = [
        f"d: {args.d}",
        f"N: {args.n}",
        f"chi: {_fmt(code.chi)}",
        f"eta: {_fmt(vbs_code.eta(args.d, args.n))}",
        f"max_detect_closedform_residual: {_fmt(det)}",
        f"max_corr_closedform_residual: {_fmt(corr)}",
        f"edge_fixedpoint_distance: {_fmt(trace_distance(iterated, np.eye(args.d) / args.d))}",
        f"epsilon: {_fmt(qec_core.epsilon_from_report(report))}",
        f"erasure_bound: {_fmt(vbs_code.erasure_bound(code))}",
    ]
    _emit("\n".join(lines) + "\n", args.output)
    return 0 if max(det, corr) < args.tol else 1


def _parse_bonds(spec: str, code) -> list[int]:
    if spec == "bond":
        return [code.n_sites]
    if spec == "bond:all":
        return list(range(1, code.n_sites + 1))
    tail = spec.split(":", 1)[1]
    return [int(tail)]


def cmd_kl(args) -> int:
    selector = args.code
    if selector.startswith("vbs:"):
        parts = selector.split(":")
        if len(parts) != 3:
            raise UsageError(f"bad code selector {selector!r}")
        code = vbs_code.build(int(parts[1]), int(parts[2]))
        if not args.errors.startswith("bond"):
            raise UsageError("valence-bond codes take a bond error model")
        bonds = _parse_bonds(args.errors, code)
        if code.dense_size <= vbs_code.DENSE_CAP:
            iso = vbs_code.dense_isometry(code)
            stacks = vbs_code.bond_error_stacks(code, bonds, args.strength)
            report = qec_core.kl_decompose(iso, stacks, cutoff_rel=args.cutoff)
            report.epsilon = qec_core.epsilon_from_report(report)
            q_ch = qec_core.logical_recovery_channel(iso, report, stacks)
            dist, bracket, _, _ = qec_core.recovery_error(q_ch)
            report.exact_distance = dist
            report.diamond_bracket = bracket
        else:
            report = qec_core.kl_report_from_compressions(
                vbs_code.bond_error_compressions(code, bonds, args.strength),
                cutoff_rel=args.cutoff,
            )
            report.epsilon = qec_core.epsilon_from_report(report)
    else:
        if selector == "five_one_three":
            iso = exact_codes.five_qubit_code()
        elif selector == "four_two_two":
            iso = exact_codes.four_two_two_code()
        elif selector.startswith("file:"):
            iso = qec_core.CodeIsometry(isometry=read_isometry(selector[5:]))
        else:
            raise UsageError(f"unknown code selector {selector!r}")
        if args.errors != "pauli1":
            raise UsageError(f"code {selector!r} takes the pauli1 error model")
        n_qubits = int(iso.d_q).bit_length() - 1
        if 2**n_qubits != iso.d_q:
            raise UsageError("pauli1 errors need a qubit-factorable physical space")
        errors = exact_codes.weight_one_paulis(n_qubits)
        report = qec_core.kl_decompose(iso, errors, cutoff_rel=args.cutoff)
        report.epsilon = qec_core.epsilon_from_report(report)
        noise = exact_codes.single_qubit_depolarizing(n_qubits, args.strength)
        noise_stacks = [k @ iso.isometry for k in noise.kraus]
        q_ch = qec_core.logical_recovery_channel(iso, report, noise_stacks)
        dist, bracket, _, _ = qec_core.recovery_error(q_ch)
        report.exact_distance = dist
        report.diamond_bracket = bracket
    _emit(qec_core.format_kl_report(report), args.output)
    return 0


def cmd_simulate(args) -> int:
    finals = []
    for trial in range(args.trials):
        trajectory = quasi_universality.simulate_computation(
            args.d,
            args.n,
            args.length,
            seed=stable_seed(args.seed, trial),
            error_dist=args.error_dist,
        )
        finals.append(trajectory.final_distance)
    lines = ["trial,final_distance"]
    lines.extend(f"{t},{_fmt(x)}" for t, x in enumerate(finals))
    lines.append(f"mean,{_fmt(float(np.mean(finals)))}")
    lines.append(f"max,{_fmt(float(np.max(finals)))}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_gates(args) -> int:
    if args.eta is not None:
        accuracy = args.eta
    elif args.d is not None and args.n is not None:
        accuracy = abs(vbs_code.eta(args.d, args.n))
    else:
        raise UsageError("give either --eta or both --d and --n")
    if accuracy <= 0.0:
        raise UsageError("accuracy must be positive")
    if args.target < args.synthesis_error:
        raise UsageError("target budget is below the synthesis error")
    count = quasi_universality.max_gate_count(
        args.target, accuracy, args.synthesis_error
    )
    _emit(f"{count}\n", args.output)
    return 0


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qx",
        description="Valence-bond quasi-code workbench: algebra checks, "
        "correctability sweeps, recovery reports, and noisy-gate budgets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra", help="su(d) basis invariant residuals")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=STRICT_TOL,
                   help="residual tolerance deciding the exit code")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("vbs", help="single-code diagnostics")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--strength", type=float, default=0.1)
    p.add_argument("--tol", type=float, default=CLOSED_FORM_TOL,
                   help="closed-form residual tolerance deciding the exit code")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_vbs)

    p = sub.add_parser("sweep", help="closed-form and correctability sweep")
    p.add_argument("--d-min", type=int, default=2)
    p.add_argument("--d-max", type=int, default=3)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--strength", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--format", choices=["csv", "text"], default="csv")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("kl", help="correctability report for one code")
    p.add_argument("--code", required=True,
                   help="five_one_three | four_two_two | vbs:d:N | file:PATH")
    p.add_argument("--errors", default="pauli1",
                   help="pauli1 | bond | bond:all | bond:N")
    p.add_argument("--strength", type=float, default=0.1)
    p.add_argument("--cutoff", type=float, default=1e-12,
                   help="relative noise-eigenvalue cutoff for retained modes")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_kl)

    p = sub.add_parser("simulate", help="noisy logical computation trials")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--error-dist", choices=["uniform", "gaussian"],
                   default="uniform")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("gates", help="gate-count budget floor(target/accuracy)")
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--target", type=float, required=True)
    p.add_argument("--synthesis-error", type=float, default=0.0)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_gates)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"qx: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"qx: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
