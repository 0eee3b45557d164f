"""Command-line front door: spectra, transforms, kernels, chaos verdicts.

One binary with subcommands; CSV for plottable series, JSON for structured
data.  Outputs are deterministic for fixed flags, so reruns are byte-identical.
Exit codes: 0 success, 2 validation error, 3 numeric non-convergence.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dynamics import (
    classify_affine,
    classify_analytic,
    find_periodic_witness,
    orbit_norm_trajectory,
)
from .errors import ConvergenceError, ValidationError
from .fourier import hf_transform
from .operators import AffineGenerator, SeriesGenerator, heat_kernel, semigroup_apply
from .spectral import delta_p, ellipse_boundary_points, gamma, phi, spectrum_membership
from .tree import (
    TreeParams,
    cone_function_to_json,
    tree_function_from_json,
    tree_function_to_json,
)
from .selfcheck import run_all


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _params(args) -> TreeParams:
    return TreeParams(args.q)


def _generator(args):
    if getattr(args, "series", None):
        coeffs = tuple(complex(float(c), 0.0) for c in args.series.split(","))
        return SeriesGenerator(coeffs)
    return AffineGenerator(
        complex(args.a_re, args.a_im), complex(args.b_re, args.b_im)
    )


def _add_generator_flags(sub) -> None:
    sub.add_argument("--a-re", type=float, default=-1.0)
    sub.add_argument("--a-im", type=float, default=0.0)
    sub.add_argument("--b-re", type=float, default=0.0)
    sub.add_argument("--b-im", type=float, default=0.0)
    sub.add_argument(
        "--series",
        help="comma-separated real coefficients c0,c1,... overriding the affine flags",
    )


def cmd_spectrum(args) -> None:
    params = _params(args)
    points = ellipse_boundary_points(args.p, params, args.samples)
    tau = params.tau
    lines = ["s,re_gamma,im_gamma,residual"]
    for k, w in enumerate(points):
        s = -tau / 2.0 + k * tau / args.samples
        residual = spectrum_membership(w, args.p, params).residual
        lines.append(
            f"{_fmt(s)},{_fmt(w.real)},{_fmt(w.imag)},{_fmt(residual)}"
        )
    _write("\n".join(lines) + "\n", args.out)


def cmd_phi(args) -> None:
    params = _params(args)
    z = complex(args.z_re, args.z_im)
    lines = ["n,re,im"]
    for n in range(args.n_max + 1):
        v = phi(z, n, params)
        lines.append(f"{n},{_fmt(v.real)},{_fmt(v.imag)}")
    _write("\n".join(lines) + "\n", args.out)


def cmd_transform(args) -> None:
    f = tree_function_from_json(Path(args.input).read_text())
    slice_ = hf_transform(f, complex(args.z_re, args.z_im))
    _write(cone_function_to_json(slice_.F) + "\n", args.out)


def cmd_plancherel_check(args) -> None:
    from .fourier import plancherel_norm

    f = tree_function_from_json(Path(args.input).read_text())
    lhs = plancherel_norm(f, quad_points=args.quad_points)
    rhs = sum(abs(c) ** 2 for c in f.values.values())
    rel = abs(lhs - rhs) / rhs if rhs else abs(lhs)
    _write(
        json.dumps(
            {
                "lhs": lhs,
                "rhs": rhs,
                "rel_error": rel,
                "quad_points": args.quad_points,
            }
        )
        + "\n",
        args.out,
    )


def cmd_heat_kernel(args) -> None:
    params = _params(args)
    hk = heat_kernel(
        complex(args.xi_re, args.xi_im), args.max_radius, params, tol=args.tol
    )
    lines = ["d,re,im,tail_bound"]
    for d in range(len(hk.kernel)):
        v = hk.kernel.entries[d]
        lines.append(f"{d},{_fmt(v.real)},{_fmt(v.imag)},{_fmt(hk.tail_bound)}")
    _write("\n".join(lines) + "\n", args.out)


def cmd_evolve(args) -> None:
    f = tree_function_from_json(Path(args.input).read_text())
    res = semigroup_apply(_generator(args), args.t, f, tol=args.tol)
    _write(tree_function_to_json(res) + "\n", args.out)


def cmd_classify(args) -> None:
    params = _params(args)
    gen = _generator(args)
    if isinstance(gen, AffineGenerator):
        verdict = classify_affine(args.p, gen.a, gen.b, params)
    else:
        verdict = classify_analytic(args.p, gen, params)
    _write(
        json.dumps(
            {
                "verdict": verdict.classification,
                "interval": list(verdict.interval) if verdict.interval else None,
                "evidence": verdict.evidence,
                "notes": verdict.notes,
            }
        )
        + "\n",
        args.out,
    )


def cmd_periodic(args) -> None:
    params = _params(args)
    w = find_periodic_witness(args.p, _generator(args), params, tol=args.tol)
    _write(
        json.dumps(
            {
                "z0_re": w.z0.z.real,
                "z0_im": w.z0.z.imag,
                "t0": w.t0,
                "gamma_re": w.gamma_value.real,
                "gamma_im": w.gamma_value.imag,
                "residual": w.residual,
            }
        )
        + "\n",
        args.out,
    )


def cmd_orbit(args) -> None:
    params = _params(args)
    times = [float(t) for t in args.times.split(",")]
    rows = orbit_norm_trajectory(
        _generator(args), complex(args.z_re, args.z_im), times, args.p, params
    )
    lines = ["t,predicted,measured,abs_err"]
    for t, predicted, measured in rows:
        lines.append(
            f"{_fmt(t)},{_fmt(predicted)},{_fmt(measured)},"
            f"{_fmt(abs(predicted - measured))}"
        )
    _write("\n".join(lines) + "\n", args.out)


def cmd_selftest(args) -> int:
    results = run_all()
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    failures = sum(1 for _, ok, _ in results if not ok)
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 1 if failures else 0


def cmd_figures(args) -> None:
    params = _params(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    points = ellipse_boundary_points(args.p, params, args.samples)
    tau = params.tau

    def rows(shift: complex) -> str:
        lines = ["s,re,im"]
        for k, w in enumerate(points):
            s = -tau / 2.0 + k * tau / args.samples
            v = w - shift
            lines.append(f"{_fmt(s)},{_fmt(v.real)},{_fmt(v.imag)}")
        return "\n".join(lines) + "\n"

    (out_dir / "ellipse.csv").write_text(rows(0.0))
    (out_dir / "ellipse_shifted.csv").write_text(rows(complex(args.b)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treechaos",
        description="Spectral analysis and chaos classification on homogeneous trees",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    def sub(name, func, **kwargs):
        s = subs.add_parser(name, **kwargs)
        s.set_defaults(func=func)
        s.add_argument("--q", type=int, default=2, help="branching parameter, >= 2")
        s.add_argument("--out", help="output path; stdout when omitted")
        return s

    s = sub("spectrum", cmd_spectrum, help="sample the L^p spectral boundary")
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--samples", type=int, default=64)

    s = sub("phi", cmd_phi, help="spherical function profile")
    s.add_argument("--z-re", type=float, default=0.0)
    s.add_argument("--z-im", type=float, default=0.0)
    s.add_argument("--n-max", type=int, default=20)

    s = sub("transform", cmd_transform, help="boundary Fourier transform of a function")
    s.add_argument("--input", required=True)
    s.add_argument("--z-re", type=float, default=0.0)
    s.add_argument("--z-im", type=float, default=0.0)

    s = sub("plancherel-check", cmd_plancherel_check, help="Fourier-side norm check")
    s.add_argument("--input", required=True)
    s.add_argument("--quad-points", type=int, default=16)

    s = sub("heat-kernel", cmd_heat_kernel, help="radial heat kernel values")
    s.add_argument("--xi-re", type=float, default=1.0)
    s.add_argument("--xi-im", type=float, default=0.0)
    s.add_argument("--max-radius", type=int, default=10)
    s.add_argument("--tol", type=float, default=1e-12)

    s = sub("evolve", cmd_evolve, help="apply the semigroup to a function")
    s.add_argument("--input", required=True)
    s.add_argument("--t", type=float, default=1.0)
    s.add_argument("--tol", type=float, default=1e-10)
    _add_generator_flags(s)

    s = sub("classify", cmd_classify, help="chaoticity verdict for a generator")
    s.add_argument("--p", type=float, required=True)
    _add_generator_flags(s)

    s = sub("periodic", cmd_periodic, help="periodic-point witness for a generator")
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--tol", type=float, default=1e-10)
    _add_generator_flags(s)

    s = sub("orbit", cmd_orbit, help="semigroup orbit of a spherical eigenfunction")
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--z-re", type=float, default=0.0)
    s.add_argument("--z-im", type=float, default=0.0)
    s.add_argument("--times", default="0.5,1,2")
    _add_generator_flags(s)

    sub("selftest", cmd_selftest, help="run the acceptance checks")

    s = sub("figures", cmd_figures, help="CSV traces of the spectral ellipse")
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--b", type=float, default=1.0)
    s.add_argument("--samples", type=int, default=256)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "figures" and args.out is None:
        print("figures requires --out DIRECTORY", file=sys.stderr)
        return 2
    try:
        result = args.func(args)
    except (ValidationError, ValueError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return 3
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    raise SystemExit(main())
