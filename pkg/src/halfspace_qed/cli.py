"""Command-line front end.

Subcommands: ``fresnel``, ``modes eval``, ``greens eval``, ``kernel verify``,
``energy shift``, ``energy sweep``, ``verify``.  Tables are emitted as CSV
(UTF-8, LF), verification results as JSON/CSV check reports; all files are
written atomically.  ``verify`` exits 0 iff every check passes.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from .config import ConfigError, load_config
from .fresnel import fresnel_coefficients
from .greens import GreenVariant, PointPair, grad_grad_green_tensor
from .kernels import (
    KernelKind,
    _image_grad_grad,
    assemble_kernel_result,
    gauge_difference_closed_form,
)
from .medium import Medium, Polarization, Side, SpectralPoint, refracted_kz
from .modes import carniglia_mandel_mode
from .energy import second_order_shift
from .report import (
    CheckReport,
    all_passed,
    make_check,
    to_csv,
    to_json,
    write_atomic,
)
from .verification import SUITE_NAMES, run_suite, settings_from_config

__all__ = ["main"]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _parse_grid(text: str) -> np.ndarray:
    """'start:stop:count' inclusive grid, or a comma list of values."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"grid must be start:stop:count, got {text!r}")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise argparse.ArgumentTypeError("grid count must be >= 1")
        return np.linspace(start, stop, count)
    return np.array([float(v) for v in text.split(",")])


def _parse_vec3(text: str) -> np.ndarray:
    vals = [float(v) for v in text.split(",")]
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    return np.array(vals)


def _settings(args: argparse.Namespace):
    cfg = load_config(args.config) if getattr(args, "config", None) else {}
    return settings_from_config(cfg, seed=getattr(args, "seed", None))


def cmd_fresnel(args: argparse.Namespace) -> int:
    med = Medium(args.n)
    pols = [Polarization.TE, Polarization.TM] if args.pol == "both" else [Polarization(args.pol)]
    lines = ["pol,kpar,kz_re,kz_im,kzd_re,kzd_im,rR_re,rR_im,tR_re,tR_im,rL_re,rL_im,tL_re,tL_im"]
    for pol in pols:
        for kpar in _parse_grid(args.kpar):
            for kz_val in _parse_grid(args.kz):
                kz = complex(kz_val)
                kzd = refracted_kz(med, float(kpar), kz)
                c = fresnel_coefficients(med, pol, float(kpar), kz)
                row = [pol.value, _fmt(kpar), _fmt(kz.real), _fmt(kz.imag),
                       _fmt(kzd.real), _fmt(kzd.imag)]
                for val in (c.rR, c.tR, c.rL, c.tL):
                    row += [_fmt(val.real), _fmt(val.imag)]
                lines.append(",".join(row))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_modes_eval(args: argparse.Namespace) -> int:
    med = Medium(args.n)
    point = SpectralPoint(
        kpar=(args.kpar, 0.0),
        kz=complex(args.klong),
        side=Side.LEFT if args.side == "L" else Side.RIGHT,
        pol=Polarization(args.pol),
    )
    lines = ["z,fx_re,fx_im,fy_re,fy_im,fz_re,fz_im"]
    for z in np.linspace(args.zmin, args.zmax, args.steps):
        f = carniglia_mandel_mode(med, point, np.array([args.x, args.y, z]))
        row = [_fmt(z)]
        for comp in f:
            row += [_fmt(comp.real), _fmt(comp.imag)]
        lines.append(",".join(row))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_greens_eval(args: argparse.Namespace) -> int:
    from .greens import electrostatic_green

    med = Medium(args.n)
    variant = GreenVariant(args.variant)
    source = args.source
    comps = ["xx", "xy", "xz", "yx", "yy", "yz", "zx", "zy", "zz"]
    lines = ["x,y,z,G," + ",".join(f"T_{c}" for c in comps)]
    for lam in np.linspace(0.0, 1.0, args.steps):
        r = args.start + lam * (args.stop - args.start)
        pair = PointPair(r, source)
        g = electrostatic_green(med, variant, pair)
        t = grad_grad_green_tensor(med, variant, pair)
        row = [_fmt(r[0]), _fmt(r[1]), _fmt(r[2]), _fmt(g)]
        row += [_fmt(t[i, j]) for i in range(3) for j in range(3)]
        lines.append(",".join(row))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _kernel_target(med: Medium, kind: KernelKind, pair: PointPair) -> np.ndarray:
    if kind is KernelKind.GENERALIZED_DELTA:
        return -grad_grad_green_tensor(med, GreenVariant.FULL, pair)
    if kind is KernelKind.GAUGE_DIFFERENCE:
        return gauge_difference_closed_form(med, pair)
    if kind is KernelKind.TRUE_COULOMB:
        return -grad_grad_green_tensor(med, GreenVariant.FREE, pair)
    raise ValueError(f"no closed-form target for {kind}")


def cmd_kernel_verify(args: argparse.Namespace) -> int:
    st = _settings(args)
    med = Medium(args.n)
    kind = KernelKind(args.kind.replace("-", "_"))
    pairs = []
    with open(args.points, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        expected = ["x", "y", "z", "xp", "yp", "zp"]
        if [h.strip() for h in header] != expected:
            raise SystemExit(f"points file must have header {','.join(expected)}")
        for line in fh:
            if not line.strip():
                continue
            vals = [float(v) for v in line.split(",")]
            pairs.append(PointPair(np.array(vals[:3]), np.array(vals[3:])))
    reports: list[CheckReport] = []
    tol = st.tol("tol.kernels.assembly")
    for idx, pair in enumerate(pairs):
        t0 = time.perf_counter()
        assembled = assemble_kernel_result(med, kind, pair, st.quad).tensor
        if kind is KernelKind.PERFECT_REFLECTOR:
            # finite-n generalized kernel against the image form; the expected
            # deviation is the (1 - alpha)-scaled unit image term, checked exactly
            gen = assemble_kernel_result(med, KernelKind.GENERALIZED_DELTA, pair, st.quad).tensor
            expected_diff = (1.0 - med.image_strength) * _image_grad_grad(pair, 1.0)
            resid = float(np.max(np.abs(gen - assembled - expected_diff)))
            scale = float(np.max(np.abs(assembled)))
        else:
            target = _kernel_target(med, kind, pair)
            resid = float(np.max(np.abs(assembled - target)))
            scale = float(np.max(np.abs(target)))
        ms = int(round((time.perf_counter() - t0) * 1000.0))
        params = {
            "kind": kind.value, "n": med.n, "pair": idx, "seed": st.seed,
            "r": list(map(float, pair.r)), "rprime": list(map(float, pair.rprime)),
        }
        reports.append(
            make_check("kernel_vs_closed_form", params, resid / scale, 0.0, tol, "abs", ms)
        )
    text = to_csv(reports) if args.format == "csv" else to_json(reports)
    _emit(text, args.out)
    return 0 if all_passed(reports) else 1


def cmd_energy_shift(args: argparse.Namespace) -> int:
    st = _settings(args)
    shift = second_order_shift(args.q, Medium(args.n), args.z0, st.quad)
    fields = [
        ("delta_e", shift.delta_e), ("v_es", shift.v_es), ("ratio", shift.ratio),
        ("expected_ratio", shift.expected_ratio), ("left_part", shift.left_part),
        ("right_part", shift.right_part), ("n", shift.n), ("z0", shift.z0), ("q", shift.q),
    ]
    body = ",\n  ".join(f'"{k}": {_fmt(v)}' for k, v in fields)
    _emit("{\n  " + body + "\n}\n", args.out)
    return 0


def cmd_energy_sweep(args: argparse.Namespace) -> int:
    st = _settings(args)
    lines = ["n,z0,q,delta_e,v_es,ratio,expected_ratio,left_part,right_part"]
    for n in _parse_grid(args.n_grid):
        for z0 in _parse_grid(args.z0_grid):
            s = second_order_shift(args.q, Medium(float(n)), float(z0), st.quad)
            lines.append(",".join(_fmt(v) for v in (
                s.n, s.z0, s.q, s.delta_e, s.v_es, s.ratio, s.expected_ratio,
                s.left_part, s.right_part,
            )))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    st = _settings(args)
    reports = run_suite(args.suite, st)
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        err = r.abs_err if r.params.get("mode") == "abs" else r.rel_err
        print(f"{status} {r.check_name}: err={err:.3e} tol={r.tol:.1e} ({r.runtime_ms} ms)")
    text = to_csv(reports) if args.format == "csv" else to_json(reports)
    if args.out:
        write_atomic(args.out, text)
    ok = all_passed(reports)
    print(f"{sum(r.passed for r in reports)}/{len(reports)} checks passed")
    return 0 if ok else 1


def _add_common(parser: argparse.ArgumentParser, seed: bool = False) -> None:
    parser.add_argument("--config", help="flat key-value config file")
    parser.add_argument("--out", help="output path (default: stdout)")
    if seed:
        parser.add_argument("--seed", type=int, default=None, help="RNG seed (default 42)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="halfspace-qed",
        description="Field modes, commutator kernels and electrostatic energy "
        "identities near a dielectric half-space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fresnel", help="Fresnel coefficient table over a (kpar, kz) grid")
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--pol", choices=["TE", "TM", "both"], default="both")
    p.add_argument("--kpar", default="0.2:2:5", help="grid start:stop:count or comma list")
    p.add_argument("--kz", default="0.2:2:5")
    _add_common(p)
    p.set_defaults(func=cmd_fresnel)

    p_modes = sub.add_parser("modes", help="mode-function utilities")
    sub_modes = p_modes.add_subparsers(dest="modes_command", required=True)
    p = sub_modes.add_parser("eval", help="mode components on a z-grid as CSV")
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--side", choices=["L", "R"], default="R")
    p.add_argument("--pol", choices=["TE", "TM"], default="TM")
    p.add_argument("--kpar", type=float, required=True)
    p.add_argument("--klong", required=True,
                   help="kz for side R (complex like 0.5j for evanescent), kzd for side L")
    p.add_argument("--zmin", type=float, default=-2.0)
    p.add_argument("--zmax", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=81)
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--y", type=float, default=0.0)
    _add_common(p)
    p.set_defaults(func=cmd_modes_eval)

    p_greens = sub.add_parser("greens", help="electrostatic Green's function utilities")
    sub_greens = p_greens.add_subparsers(dest="greens_command", required=True)
    p = sub_greens.add_parser("eval", help="G and grad grad' G along a line segment as CSV")
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--variant", choices=[v.value for v in GreenVariant], default="full")
    p.add_argument("--source", type=_parse_vec3, required=True, help="source point x,y,z (z>0)")
    p.add_argument("--start", type=_parse_vec3, required=True)
    p.add_argument("--stop", type=_parse_vec3, required=True)
    p.add_argument("--steps", type=int, default=21)
    _add_common(p)
    p.set_defaults(func=cmd_greens_eval)

    p_kernel = sub.add_parser("kernel", help="commutator kernel utilities")
    sub_kernel = p_kernel.add_subparsers(dest="kernel_command", required=True)
    p = sub_kernel.add_parser("verify", help="verify assembled kernels against closed forms")
    p.add_argument("--kind", required=True,
                   choices=[k.value for k in KernelKind] + [k.value.replace("_", "-") for k in KernelKind])
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--points", required=True, help="CSV of point pairs with header x,y,z,xp,yp,zp")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    _add_common(p, seed=True)
    p.set_defaults(func=cmd_kernel_verify)

    p_energy = sub.add_parser("energy", help="electrostatic energy identities")
    sub_energy = p_energy.add_subparsers(dest="energy_command", required=True)
    p = sub_energy.add_parser("shift", help="second-order shift and ratio as JSON")
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--z0", type=float, required=True)
    p.add_argument("--q", type=float, default=1.0)
    _add_common(p)
    p.set_defaults(func=cmd_energy_shift)
    p = sub_energy.add_parser("sweep", help="shift results over (n, z0) grids as CSV")
    p.add_argument("--n-grid", default="1.5:4:3")
    p.add_argument("--z0-grid", default="0.5:2:3")
    p.add_argument("--q", type=float, default=1.0)
    _add_common(p)
    p.set_defaults(func=cmd_energy_sweep)

    p = sub.add_parser("verify", help="run a verification suite and export check reports")
    p.add_argument("--suite", choices=list(SUITE_NAMES), default="all")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    _add_common(p, seed=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
