"""Command-line front end.

Subcommands: ``generate`` (sequence tables), ``second-order`` (energy and
potential deficit series), ``constants`` (limit constants at a given
exponent), ``g-curve`` (the subsequence-limit factor G over an exponent
grid, data behind the limit-curve figure), and ``verify`` (named invariant
suites with a pass/fail table).

Every data file is accompanied by a ``<name>.manifest.json`` sidecar
recording the command, its parameters, the library version, and a sha256
checksum of the output, so identical invocations are byte-checkable.
Exit status: 0 on success, 1 when a verification suite fails, 2 on usage
or domain errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .asymptotics import g_bar, g_function, s_lambda, subsequence_limit_lambda1, theta_from_odd
from .binary import decompose, square_identity_check
from .circle_exact import (
    canonical_sequence,
    chord,
    extremal_potential_gap,
    greedy_energy_exact,
    greedy_extremal_potential,
    kappa,
    midpoint_potential,
    r_lambda,
    roots_energy,
    section_energy_gap,
)
from .greedy_numeric import GreedyConfig, divergent_lambda2_example, generate, potential
from .specfun import continuous_energy, maximal_energy, second_order_constant, zeta_neg

USAGE_ERROR = 2
VERIFY_ERROR = 1


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_with_manifest(path: Path, text: str, command: str, params: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    data = text.encode()
    path.write_bytes(data)
    manifest = {
        "command": command,
        "parameters": params,
        "version": __version__,
        "output": path.name,
        "sha256": hashlib.sha256(data).hexdigest(),
    }
    manifest_path = path.with_name(path.name + ".manifest.json")
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


# ----------------------------------------------------------------------
# generate
# ----------------------------------------------------------------------


def _generate_rows_exact(lam: float, n: int) -> list[dict]:
    seq = canonical_sequence(n)
    rows = []
    for i, ang in enumerate(seq):
        x, y = ang.coords()
        pot = greedy_extremal_potential(lam, i) if i >= 1 else 0.0
        h = greedy_energy_exact(lam, i + 1) if i >= 1 else 0.0
        rows.append(
            {
                "index": i,
                "turn_numerator": ang.numerator,
                "turn_denominator": 1 << ang.level,
                "x": x,
                "y": y,
                "potential": pot,
                "energy_cum": h,
            }
        )
    return rows


def _generate_rows_numeric(config: GreedyConfig) -> list[dict]:
    pts = generate(config)
    rows = []
    h = 0.0
    for i, p in enumerate(pts):
        pot = potential(pts[:i], config.lam, p) if i >= 1 else 0.0
        h += 2.0 * pot
        row = {"index": i}
        for j, c in enumerate(p):
            row[f"x{j}"] = float(c)
        row["potential"] = pot
        row["energy_cum"] = h
        rows.append(row)
    return rows


def _rows_to_csv(rows: list[dict]) -> str:
    header = list(rows[0].keys())
    lines = [",".join(header)]
    for row in rows:
        lines.append(
            ",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row.values())
        )
    return "\n".join(lines) + "\n"


def _rows_to_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=1) + "\n"


def cmd_generate(args: argparse.Namespace) -> int:
    if args.method == "exact":
        if args.d != 1:
            raise ValueError("--method exact is only available for --d 1")
        if not 0.0 < args.lam < 2.0:
            raise ValueError("--method exact requires 0 < lambda < 2")
        rows = _generate_rows_exact(args.lam, args.n)
    else:
        config = GreedyConfig(d=args.d, lam=args.lam, n_points=args.n,
                              coarse_grid_size=args.grid_size)
        rows = _generate_rows_numeric(config)
    text = _rows_to_csv(rows) if args.format == "csv" else _rows_to_json(rows)
    params = {
        "d": args.d,
        "lambda": args.lam,
        "n": args.n,
        "method": args.method,
        "format": args.format,
    }
    _write_with_manifest(Path(args.out), text, "generate", params)
    return 0


# ----------------------------------------------------------------------
# second-order
# ----------------------------------------------------------------------


def cmd_second_order(args: argparse.Namespace) -> int:
    lam, n_max = args.lam, args.nmax
    if not 0.0 < lam < 2.0:
        raise ValueError(f"--lambda must lie in (0, 2), got {lam}")
    if n_max < 2:
        raise ValueError(f"--nmax must be >= 2, got {n_max}")
    lines = ["N,H_minus,H_normalized,U_minus"]
    for n in range(2, n_max + 1):
        e_gap = section_energy_gap(lam, n)
        lines.append(
            f"{n},{_fmt(e_gap)},{_fmt(e_gap / kappa(lam, n))},"
            f"{_fmt(extremal_potential_gap(lam, n))}"
        )
    text = "\n".join(lines) + "\n"
    params = {"lambda": lam, "nmax": n_max}
    _write_with_manifest(Path(args.out), text, "second-order", params)
    return 0


# ----------------------------------------------------------------------
# constants
# ----------------------------------------------------------------------


def cmd_constants(args: argparse.Namespace) -> int:
    lam = args.lam
    if not lam > 0.0:
        raise ValueError(f"--lambda must be positive, got {lam}")
    rows: list[tuple[str, float]] = []
    if lam >= 2.0:
        rows.append(("maximal_energy", maximal_energy(lam)))
        rows.append(("energy_deficit_odd", -maximal_energy(lam)))
        rows.append(("potential_excess_odd", maximal_energy(lam)))
    else:
        rows.append(("continuous_energy", continuous_energy(lam, args.d)))
        if args.d != 1:
            rows.append(("continuous_energy_circle", continuous_energy(lam, 1)))
        rows.append(("zeta_neg", zeta_neg(lam)))
        rows.append(("second_order_constant", second_order_constant(lam)))
        if lam < 1.0:
            enum = g_bar(lam, args.gbar_bound)
            rows.append(("g_bar", enum.value))
            rows.append(("g_bar_witness", float(enum.witness)))
            rows.append(("liminf_constant", enum.value * second_order_constant(lam)))
        if lam == 1.0:
            rows.append(("lambda1_liminf_bound", subsequence_limit_lambda1(2)))
        if 1.0 < lam < 2.0:
            rows.append(("s_lambda", s_lambda(lam, args.s_tolerance)))
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value:.12g}")
    return 0


# ----------------------------------------------------------------------
# g-curve
# ----------------------------------------------------------------------


def cmd_g_curve(args: argparse.Namespace) -> int:
    ms = args.m if args.m else [3, 7, 11]
    for m in ms:
        if m < 1 or m % 2 == 0:
            raise ValueError(f"--m must be odd and positive, got {m}")
    if not 0.0 < args.lambda_max < 1.0:
        raise ValueError("--lambda-max must lie in (0, 1)")
    if args.steps < 2:
        raise ValueError("--steps must be >= 2")
    thetas = {m: theta_from_odd(m, decompose(m).tau) for m in ms}
    header = "lambda," + ",".join(f"G_M{m}" for m in ms)
    lines = [header]
    for i in range(args.steps + 1):
        lam = args.lambda_max * i / args.steps
        vals = [g_function(thetas[m], lam) for m in ms]
        lines.append(",".join([_fmt(lam)] + [_fmt(v) for v in vals]))
    text = "\n".join(lines) + "\n"
    params = {"m": ms, "lambda_max": args.lambda_max, "steps": args.steps}
    _write_with_manifest(Path(args.out), text, "g-curve", params)
    return 0


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------


@dataclass
class Check:
    name: str
    measured: float
    expected: float
    tolerance: float
    passed: bool


def _check_le(name: str, measured: float, bound: float) -> Check:
    return Check(name, measured, bound, 0.0, measured <= bound)


def _check_close(name: str, measured: float, expected: float, tol: float) -> Check:
    return Check(name, measured, expected, tol, abs(measured - expected) <= tol)


def _brute_energy_and_potentials(lam: float, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """O(N^2) reference: potentials U_n(a_n) and energies H(alpha_n) of the
    canonical sequence by direct pairwise summation."""
    turns = np.array([float(a.turn) for a in canonical_sequence(n_max + 1)])
    pot = np.zeros(n_max + 1)
    energy = np.zeros(n_max + 1)
    acc = 0.0
    for n in range(1, n_max + 1):
        u = float(np.sum((2.0 * np.abs(np.sin(np.pi * (turns[n] - turns[:n])))) ** lam))
        pot[n] = u
        acc += 2.0 * u
        energy[n] = acc  # H(alpha_{n+1})
    return pot, energy


def _suite_formulas(profile: str) -> list[Check]:
    n_max = 256 if profile == "quick" else 512
    lams = (0.5, 1.5) if profile == "quick" else (0.3, 0.5, 1.0, 1.5, 1.9)
    checks = []
    for lam in lams:
        pot, energy = _brute_energy_and_potentials(lam, n_max)
        worst_h = 0.0
        worst_u = 0.0
        for n in range(2, n_max + 1):
            h = greedy_energy_exact(lam, n)
            worst_h = max(worst_h, abs(h - energy[n - 1]) / energy[n - 1])
            u = greedy_extremal_potential(lam, n)
            worst_u = max(worst_u, abs(u - pot[n]) / pot[n])
        checks.append(_check_le(f"energy formula vs pairwise sum, lam={lam}", worst_h, 1e-10))
        checks.append(_check_le(f"potential formula vs direct sum, lam={lam}", worst_u, 1e-10))
    n_sq = 10_000 if profile == "quick" else 100_000
    ok = all(square_identity_check(n) for n in range(2, n_sq + 1))
    checks.append(Check(f"square identity up to {n_sq}", float(ok), 1.0, 0.0, ok))
    return checks


def _suite_bounds(profile: str) -> list[Check]:
    n_energy = 1024 if profile == "quick" else 4096
    n_pot = 1000 if profile == "quick" else 2000
    lams = (0.5, 1.5) if profile == "quick" else (0.01, 0.1, 0.3, 0.7, 1.0, 1.3, 1.5, 1.9)
    checks = []
    for lam in lams:
        i_circle = continuous_energy(lam, 1)
        worst_hi = -math.inf  # H - N^2 I must stay below 0
        worst_lo = math.inf   # and above -N I
        for n in range(2, n_energy + 1):
            gap = section_energy_gap(lam, n)
            worst_hi = max(worst_hi, gap)
            worst_lo = min(worst_lo, gap + n * i_circle)
        checks.append(_check_le(f"energy below N^2 I, lam={lam}", worst_hi, -1e-15))
        checks.append(_check_le(f"energy above N(N-1) I, lam={lam}", -worst_lo, -1e-12))
        p_lo = min(extremal_potential_gap(lam, n) for n in range(1, n_pot + 1))
        p_hi = max(extremal_potential_gap(lam, n) for n in range(1, n_pot + 1))
        checks.append(_check_le(f"potential gap positive, lam={lam}", -p_lo, 0.0))
        checks.append(_check_le(f"potential gap below I, lam={lam}", p_hi - i_circle, 0.0))
    n_mono = 256 if profile == "quick" else 512
    for lam in (0.5, 1.5):
        seq = canonical_sequence(n_mono + 2)
        worst_step = -math.inf
        worst_jump = 0.0
        prev_u = greedy_extremal_potential(lam, 1)
        for n in range(1, n_mono + 1):
            u_next = greedy_extremal_potential(lam, n + 1)
            step_hi = u_next - prev_u - chord(seq[n + 1], seq[n]) ** lam
            worst_step = max(worst_step, step_hi, prev_u - u_next)
            if n % 2 == 0:
                worst_jump = max(worst_jump, abs(u_next - prev_u - 2.0**lam))
            prev_u = u_next
        checks.append(_check_le(f"potential monotone increments, lam={lam}", worst_step, 1e-10))
        checks.append(_check_le(f"odd-step jump is 2^lam, lam={lam}", worst_jump, 1e-12))
    return checks


def _suite_symmetry(profile: str) -> list[Check]:
    n_pts = 24 if profile == "quick" else 48
    checks = []
    for lam in (0.5, 1.5):
        config = GreedyConfig(d=1, lam=lam, n_points=n_pts)
        pts = generate(config)
        anti = max(
            float(np.max(np.abs(pts[2 * k + 1] + pts[2 * k]))) for k in range(n_pts // 2)
        )
        checks.append(_check_le(f"numeric antipodal pairing, lam={lam}", anti, 0.0))
        exact = canonical_sequence(n_pts)
        worst = max(
            float(np.linalg.norm(pts[i] - np.array(exact[i].coords()))) for i in range(n_pts)
        )
        checks.append(_check_le(f"numeric matches exact on circle, lam={lam}", worst, 1e-8))
    config = GreedyConfig(d=2, lam=0.5, n_points=12)
    pts = generate(config)
    anti = max(float(np.max(np.abs(pts[2 * k + 1] + pts[2 * k]))) for k in range(6))
    checks.append(_check_le("numeric antipodal pairing on S^2", anti, 0.0))
    return checks


def _suite_limits(profile: str) -> list[Check]:
    n_exp = 14 if profile == "quick" else 16
    checks = []
    checks.append(
        _check_close(
            f"R(2^{n_exp}) at lam=1 vs -pi/3", r_lambda(1.0, 1 << n_exp), -math.pi / 3.0, 1e-4
        )
    )
    for lam in (0.5, 1.5):
        checks.append(
            _check_close(
                f"R(2^{n_exp}) vs limit constant, lam={lam}",
                r_lambda(lam, 1 << n_exp),
                second_order_constant(lam),
                1e-4,
            )
        )
    n_wit = 12 if profile == "quick" else 14
    for lam in (1.0, 1.5) if profile == "quick" else (1.0, 1.3, 1.5, 1.9):
        i_circle = continuous_energy(lam, 1)
        checks.append(
            _check_le(
                f"potential witness at 2^{n_wit} near 0, lam={lam}",
                abs(extremal_potential_gap(lam, 1 << n_wit)),
                1e-3,
            )
        )
        checks.append(
            _check_le(
                f"potential witness at 2^{n_wit}-1 near I, lam={lam}",
                abs(extremal_potential_gap(lam, (1 << n_wit) - 1) - i_circle),
                1e-3,
            )
        )
    for lam in (0.1, 0.5, 0.9):
        closed = (2.0 ** (1.0 - 2.0 * lam) + 1.0) / 3.0 ** (1.0 - lam)
        enum = g_bar(lam, 1 << 12 if profile == "quick" else 1 << 20)
        checks.append(Check(f"g_bar exceeds 1, lam={lam}", enum.value, 1.0, 0.0, enum.value > 1.0))
        checks.append(
            _check_close(
                f"G at the 3-witness matches closed form, lam={lam}",
                g_function(theta_from_odd(3, 2), lam),
                closed,
                1e-13,
            )
        )
    # series constant and monotone approach along N(p) = (4^p - 1)/3
    lam = 1.5
    s_val = s_lambda(lam, 1e-8)
    p_max = 6 if profile == "quick" else 8
    vals = [section_energy_gap(lam, (4**p - 1) // 3) for p in range(2, p_max + 1)]
    mono = all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))
    above = min(vals) >= s_val
    checks.append(Check("N(p) values decrease toward s_lambda", float(mono), 1.0, 0.0, mono))
    checks.append(Check("N(p) values stay above s_lambda", float(above), 1.0, 0.0, above))
    r_vals = [subsequence_limit_lambda1(r) for r in range(1, 65)]
    best_r = int(np.argmin(r_vals)) + 1
    checks.append(Check("lam=1 subsequence limit minimized at r=2", float(best_r), 2.0, 0.0, best_r == 2))
    return checks


def _suite_special(profile: str) -> list[Check]:
    checks = []
    worst_h = 0.0
    for n in range(1, 101):
        worst_h = max(worst_h, abs(greedy_energy_exact(2.0, 2 * n) - 8.0 * n * n))
        worst_h = max(worst_h, abs(greedy_energy_exact(2.0, 2 * n + 1) - 8.0 * (n * n + n)))
    checks.append(_check_le("lam=2 energy closed forms, n<=100", worst_h, 1e-9))
    pts2 = generate(GreedyConfig(d=1, lam=2.0, n_points=13))
    worst_u = 0.0
    for i in range(1, len(pts2)):
        u = potential(pts2[:i], 2.0, pts2[i])
        expected = 2.0 * (i + 1) if i % 2 == 1 else 2.0 * i
        worst_u = max(worst_u, abs(u - expected))
    checks.append(_check_le("lam=2 extremal potential 4n", worst_u, 1e-10))
    rng = np.random.default_rng(7)
    probes = rng.standard_normal((100, 2))
    probes /= np.linalg.norm(probes, axis=1, keepdims=True)
    center = np.sum(pts2[:12], axis=0)
    worst_id = 0.0
    for x in probes:
        lhs = potential(pts2[:12], 2.0, x)
        rhs = 2.0 * 12 - 2.0 * float(np.dot(x, center))
        worst_id = max(worst_id, abs(lhs - rhs))
    checks.append(_check_le("lam=2 potential linear identity", worst_id, 1e-10))
    config = GreedyConfig(d=2, lam=3.0, n_points=20, refine_tolerance=1e-9)
    pts = generate(config)
    a0 = pts[0]
    collapse = max(
        min(float(np.linalg.norm(p - a0)), float(np.linalg.norm(p + a0))) for p in pts
    )
    checks.append(_check_le("lam=3 two-point collapse on S^2", collapse, 1e-6))
    h = 0.0
    for i in range(1, len(pts)):
        h += 2.0 * potential(pts[:i], 3.0, pts[i])
    n_half = len(pts) // 2
    checks.append(_check_close("lam=3 energy closed form", h, 2.0**4 * n_half * n_half, 1e-8))
    m_max = 6 if profile == "quick" else 10
    from fractions import Fraction

    quarter = (Fraction(1, 4),) * 4
    third = (Fraction(1, 3), Fraction(1, 3), Fraction(1, 6), Fraction(1, 6))
    ok = True
    for rec in divergent_lambda2_example(m_max):
        want = quarter if (rec.n & (rec.n - 1)) == 0 else third
        ok = ok and rec.weights == want
    checks.append(Check(f"divergent measure weights, m<={m_max}", float(ok), 1.0, 0.0, ok))
    return checks


_SUITES = {
    "symmetry": _suite_symmetry,
    "formulas": _suite_formulas,
    "bounds": _suite_bounds,
    "limits": _suite_limits,
    "special": _suite_special,
}


def cmd_verify(args: argparse.Namespace) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    all_ok = True
    for name in names:
        checks = _SUITES[name](args.profile)
        print(f"suite: {name}")
        for c in checks:
            status = "pass" if c.passed else "FAIL"
            all_ok = all_ok and c.passed
            print(
                f"  [{status}] {c.name}: measured={c.measured:.6g} "
                f"expected={c.expected:.6g} tol={c.tolerance:.1g}"
            )
    print("result:", "pass" if all_ok else "FAIL")
    return 0 if all_ok else VERIFY_ERROR


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greedysphere",
        description="Greedy chord-power energy sequences on spheres",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a sequence table")
    p.add_argument("--d", type=int, required=True, help="sphere dimension")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--method", choices=("exact", "numeric"), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--grid-size", type=int, default=None,
                   help="fixed coarse grid size (default: per-step scaling)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("second-order", help="second-order energy/potential series")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_second_order)

    p = sub.add_parser("constants", help="print limit constants")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--gbar-bound", type=int, default=1 << 20)
    p.add_argument("--s-tolerance", type=float, default=1e-8)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("g-curve", help="subsequence-limit factor over an exponent grid")
    p.add_argument("--m", type=int, action="append",
                   help="odd generator; repeat for several curves")
    p.add_argument("--lambda-max", type=float, default=0.99)
    p.add_argument("--steps", type=int, default=99)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_g_curve)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", choices=(*_SUITES, "all"), required=True)
    p.add_argument("--profile", choices=("quick", "full"), default="quick")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "generate" and args.n < 1:
        parser.error("--n must be >= 1")
    if args.command == "second-order" and args.nmax < 2:
        parser.error("--nmax must be >= 2")
    try:
        return args.func(args)
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
