"""Command line interface emitting human-readable summaries and CSV curves.

All widths are accepted in angular frequency (rad/ps) under their
conventional symbols (--gamma, --gamma-prime, --sigma-g, --sigma-f,
--sigma-fcap, --gamma-f); only the spdc subcommand takes lab units (fs, nm)
and prints its conversions. CSV output is deterministic: fixed column
order, 9 significant digits, parameters recorded in # comment lines.

Exit codes: 0 success, 2 usage error, 3 numeric nonconvergence.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .filtering import FilterKind, FilterSpec, apply_gaussian_filter, k_filtered_numeric
from .hom import default_tau_grid, hom_curve, visibility
from .indistinguishability import Method, k_analytic, k_numeric
from .lineshapes import LineshapeKind, MixedPhotonState, gaussian_state, lorentzian_state
from .quadrature import NonConvergenceError, QuadratureConfig
from .spdc import SpdcSetup, heralded_indistinguishability

FIG3B_R_GRID = np.geomspace(0.02, 1000.0, 17)
FIG3B_ETAS = (3.0, 10.0)


def _fmt(x: float) -> str:
    if isinstance(x, float) and np.isnan(x):
        return ""
    return format(float(x), ".9g")


def _write_csv(path: str | None, header_lines: list[str], names: list[str], cols) -> None:
    lines = [f"# {h}" for h in header_lines]
    lines.append(",".join(names))
    arrays = [np.asarray(c, dtype=float) for c in cols]
    for row in zip(*arrays):
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _common_header(params: dict) -> list[str]:
    kv = " ".join(f"{k}={v}" for k, v in params.items())
    return [
        f"homsim {__version__}",
        "units: angular frequencies rad/ps, times ps",
        f"params: {kv}",
    ]


def _quad_cfg(args) -> QuadratureConfig:
    return QuadratureConfig(rel_tol=args.rel_tol)


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", choices=["lorentzian", "gaussian"], required=True)
    p.add_argument("--gamma", type=float, help="Lorentzian decay rate (rad/ps)")
    p.add_argument("--gamma-prime", type=float, help="Lorentzian extrinsic HWHM (rad/ps)")
    p.add_argument("--sigma-g", type=float, help="Gaussian intrinsic width (rad/ps)")
    p.add_argument("--sigma-f", type=float, help="Gaussian extrinsic width (rad/ps)")


def _state_from_args(parser: argparse.ArgumentParser, args) -> MixedPhotonState:
    try:
        if args.model == "lorentzian":
            if args.gamma is None or args.gamma_prime is None:
                parser.error("--model lorentzian requires --gamma and --gamma-prime")
            return lorentzian_state(args.gamma, args.gamma_prime)
        if args.sigma_g is None or args.sigma_f is None:
            parser.error("--model gaussian requires --sigma-g and --sigma-f")
        return gaussian_state(args.sigma_g, args.sigma_f)
    except ValueError as exc:
        parser.error(str(exc))


def _model_params(state: MixedPhotonState) -> dict:
    if state.family is LineshapeKind.LORENTZIAN:
        return {
            "model": "lorentzian",
            "gamma": _fmt(state.lineshape.intrinsic_width),
            "gamma_prime": _fmt(state.distribution.extrinsic_width),
        }
    return {
        "model": "gaussian",
        "sigma_g": _fmt(state.lineshape.intrinsic_width),
        "sigma_f": _fmt(state.distribution.extrinsic_width),
    }


def cmd_purity(parser, args) -> int:
    state = _state_from_args(parser, args)
    print(f"model: {state.describe()}")
    print(f"eta = {_fmt(state.eta)}")
    print(f"total width = {_fmt(state.total_width)} rad/ps")
    if args.method in ("analytic", "both"):
        print(f"K(0) analytic = {_fmt(k_analytic(state).value)}")
    if args.method in ("numeric", "both"):
        res = k_numeric(state, 0.0, _quad_cfg(args))
        print(f"K(0) numeric  = {_fmt(res.value)} +- {res.error:.3e}")
    return 0


def _curve_columns(state: MixedPhotonState, taus, method: Method, cfg: QuadratureConfig):
    curve = hom_curve(state, taus, method, cfg)
    for i in curve.metadata["failed_indices"]:
        print(f"warning: no convergence at tau={curve.taus[i]:g}", file=sys.stderr)
    return curve


def cmd_hom_curve(parser, args) -> int:
    state = _state_from_args(parser, args)
    if args.sigma_fcap is not None:
        if state.family is not LineshapeKind.GAUSSIAN:
            parser.error("--sigma-fcap filtering of a curve needs --model gaussian")
        from .filtering import filtered_gaussian_state

        state = filtered_gaussian_state(state, FilterSpec(FilterKind.GAUSSIAN, args.sigma_fcap))
    if args.tau_min is not None or args.tau_max is not None:
        if args.tau_min is None or args.tau_max is None:
            parser.error("--tau-min and --tau-max must be given together")
        taus = np.linspace(args.tau_min, args.tau_max, args.tau_steps)
    else:
        taus = default_tau_grid(state, n=args.tau_steps if args.tau_steps % 2 else args.tau_steps + 1)
    method = Method.NUMERIC if args.method == "numeric" else Method.ANALYTIC
    curve = _curve_columns(state, taus, method, _quad_cfg(args))
    if curve.metadata["failed_indices"] and len(curve.metadata["failed_indices"]) == len(taus):
        print("error: every grid point failed to converge", file=sys.stderr)
        return 3
    params = _model_params(state)
    params["method"] = method.value
    _write_csv(
        args.out,
        _common_header(params) + ["columns: tau (ps), K, C_AA, C_AB"],
        ["tau", "K", "C_AA", "C_AB"],
        [curve.taus, curve.k, curve.c_aa, curve.c_ab],
    )
    return 0


def cmd_filter_sweep(parser, args) -> int:
    state = _state_from_args(parser, args)
    cfg = _quad_cfg(args)
    gaussian = state.family is LineshapeKind.GAUSSIAN
    wi = state.lineshape.intrinsic_width

    if args.sigma_fcap is not None or args.gamma_f is not None:
        if args.sigma_fcap is not None and args.gamma_f is not None:
            parser.error("give only one of --sigma-fcap and --gamma-f")
        if args.sigma_fcap is not None:
            width, kind = args.sigma_fcap, FilterKind.GAUSSIAN
            r_values = np.array([width / wi])
        else:
            width, kind = args.gamma_f, FilterKind.LORENTZIAN
            r_values = np.array([2.0 * width / wi])
        widths = np.array([width])
    else:
        r_values = np.geomspace(args.r_min, args.r_max, args.r_steps)
        kind = FilterKind.GAUSSIAN if gaussian else FilterKind.LORENTZIAN
        # R = sigma_F/sigma_g for Gaussian filters, 2 Gamma_F/gamma for
        # Lorentzian ones.
        widths = r_values * wi if gaussian else 0.5 * r_values * wi

    if args.method == "analytic" and not (gaussian and kind is FilterKind.GAUSSIAN):
        parser.error("--method analytic is only available for Gaussian-on-Gaussian filtering")

    k_col = np.empty_like(r_values)
    c_col = np.empty_like(r_values)
    n_failed = 0
    for i, w in enumerate(widths):
        filt = FilterSpec(kind, float(w), state.center)
        try:
            if gaussian and kind is FilterKind.GAUSSIAN and args.method != "numeric":
                res = apply_gaussian_filter(state, filt)
            else:
                res = k_filtered_numeric(state, filt, cfg)
            k_col[i], c_col[i] = res.k_filtered, res.transmission
        except NonConvergenceError:
            print(f"warning: no convergence at R={r_values[i]:g}", file=sys.stderr)
            k_col[i] = c_col[i] = np.nan
            n_failed += 1
    if n_failed == len(r_values):
        print("error: every grid point failed to converge", file=sys.stderr)
        return 3
    params = _model_params(state)
    params.update({"filter": kind.value, "method": args.method})
    _write_csv(
        args.out,
        _common_header(params)
        + ["R = filter width / intrinsic width (2*Gamma_F/gamma for Lorentzian)"]
        + ["columns: R, K_filtered, transmission"],
        ["R", "K_filtered", "transmission"],
        [r_values, k_col, c_col],
    )
    return 0


def cmd_spdc(parser, args) -> int:
    try:
        setup = SpdcSetup(
            pump_fwhm_duration_fs=args.pump_fwhm_fs,
            signal_center_wavelength_nm=args.center_nm,
            filter_fwhm_wavelength_nm=args.filter_fwhm_nm,
            eta=args.eta,
        )
    except ValueError as exc:
        parser.error(str(exc))
    print(f"pump duration = {_fmt(args.pump_fwhm_fs)} fs -> sigma_g = {_fmt(setup.sigma_g)} rad/ps")
    print(f"eta = {_fmt(args.eta)} -> sigma_f = {_fmt(setup.sigma_f)} rad/ps")
    if setup.sigma_filter is not None:
        print(
            f"filter FWHM = {_fmt(args.filter_fwhm_nm)} nm at {_fmt(args.center_nm)} nm "
            f"-> sigma_F = {_fmt(setup.sigma_filter)} rad/ps "
            f"(R = {_fmt(setup.sigma_filter / setup.sigma_g)})"
        )
    res = heralded_indistinguishability(setup)
    print(f"K = {_fmt(res.k_filtered)}")
    print(f"transmission = {_fmt(res.transmission)}")
    return 0


def _fig2_rows(cfg: QuadratureConfig):
    etas = np.geomspace(0.1, 100.0, 31)
    vis_l = np.empty_like(etas)
    vis_g = np.empty_like(etas)
    for i, eta in enumerate(etas):
        lor = lorentzian_state(1.0, 0.5 * eta)
        gau = gaussian_state(1.0, eta)
        vis_l[i] = visibility(hom_curve(lor))
        vis_g[i] = visibility(hom_curve(gau))
    return etas, vis_l, vis_g


def _fig3a_rows(cfg: QuadratureConfig):
    from .filtering import filtered_gaussian_state

    base = gaussian_state(1.0, 3.0)
    taus = np.linspace(-40.0, 40.0, 801)
    series = [1.0 - np.array([k_analytic(base, float(t)).value for t in taus])]
    transmissions = [1.0]
    for r in (0.5, 0.1):
        filt = FilterSpec(FilterKind.GAUSSIAN, r * 1.0)
        res = apply_gaussian_filter(base, filt)
        fstate = filtered_gaussian_state(base, filt)
        series.append(1.0 - np.array([k_analytic(fstate, float(t)).value for t in taus]))
        transmissions.append(res.transmission)
    return taus, series, transmissions


def _fig3b_rows(cfg: QuadratureConfig):
    cols = {}
    for eta in FIG3B_ETAS:
        gau = gaussian_state(1.0, eta)
        cols[f"kprime_gaussian_eta{eta:g}"] = np.array(
            [
                apply_gaussian_filter(gau, FilterSpec(FilterKind.GAUSSIAN, float(r))).k_filtered
                for r in FIG3B_R_GRID
            ]
        )
    for eta in FIG3B_ETAS:
        lor = lorentzian_state(1.0, 0.5 * eta)
        vals = np.empty_like(FIG3B_R_GRID)
        for i, r in enumerate(FIG3B_R_GRID):
            filt = FilterSpec(FilterKind.LORENTZIAN, 0.5 * float(r))
            try:
                vals[i] = k_filtered_numeric(lor, filt, cfg).k_filtered
            except NonConvergenceError:
                print(f"warning: no convergence at R={r:g}", file=sys.stderr)
                vals[i] = np.nan
        cols[f"kprime_lorentzian_eta{eta:g}"] = vals
    return cols


def cmd_figure(parser, args) -> int:
    cfg = _quad_cfg(args)
    if args.name == "fig2":
        etas, vis_l, vis_g = _fig2_rows(cfg)
        _write_csv(
            args.out,
            _common_header({"figure": "fig2", "intrinsic_width": "1"})
            + ["HOM visibility against extrinsic/intrinsic width ratio"]
            + ["columns: eta, visibility_lorentzian, visibility_gaussian"],
            ["eta", "visibility_lorentzian", "visibility_gaussian"],
            [etas, vis_l, vis_g],
        )
    elif args.name == "fig3a":
        taus, series, transmissions = _fig3a_rows(cfg)
        _write_csv(
            args.out,
            _common_header({"figure": "fig3a", "sigma_g": "1", "eta": "3"})
            + [
                "coincidence curves normalized to the distinguishable baseline 1/2,"
                " i.e. 2*C_AB(tau) = 1 - K(tau)",
                f"series transmissions: unfiltered=1, R=0.5: {_fmt(transmissions[1])},"
                f" R=0.1: {_fmt(transmissions[2])}",
                "columns: tau, cab_norm_unfiltered, cab_norm_r0.5, cab_norm_r0.1",
            ],
            ["tau", "cab_norm_unfiltered", "cab_norm_r0.5", "cab_norm_r0.1"],
            [taus, *series],
        )
    else:
        cols = _fig3b_rows(cfg)
        names = ["R"] + list(cols.keys())
        _write_csv(
            args.out,
            _common_header({"figure": "fig3b", "intrinsic_width": "1"})
            + ["filtered indistinguishability against filter/intrinsic width ratio R"]
            + [f"columns: {', '.join(names)}"],
            names,
            [FIG3B_R_GRID, *cols.values()],
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homsim",
        description="Single-photon indistinguishability and HOM interference calculator",
    )
    parser.add_argument("--version", action="version", version=f"homsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("purity", help="indistinguishability K(0) of one source")
    _add_model_flags(p)
    p.add_argument("--method", choices=["analytic", "numeric", "both"], default="analytic")
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_purity)

    p = sub.add_parser("hom-curve", help="K, C_AA, C_AB against arrival offset")
    _add_model_flags(p)
    p.add_argument("--sigma-fcap", type=float, help="Gaussian filter width to apply first")
    p.add_argument("--tau-min", type=float)
    p.add_argument("--tau-max", type=float)
    p.add_argument("--tau-steps", type=int, default=201)
    p.add_argument("--method", choices=["analytic", "numeric"], default="analytic")
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.set_defaults(func=cmd_hom_curve)

    p = sub.add_parser("filter-sweep", help="filtered K and transmission against R")
    _add_model_flags(p)
    p.add_argument("--sigma-fcap", type=float, help="single Gaussian filter width (rad/ps)")
    p.add_argument("--gamma-f", type=float, help="single Lorentzian filter HWHM (rad/ps)")
    p.add_argument("--r-min", type=float, default=0.01)
    p.add_argument("--r-max", type=float, default=100.0)
    p.add_argument("--r-steps", type=int, default=25)
    p.add_argument("--method", choices=["analytic", "numeric"], default="analytic")
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.set_defaults(func=cmd_filter_sweep)

    p = sub.add_parser("spdc", help="heralded-source worked example in lab units")
    p.add_argument("--pump-fwhm-fs", type=float, required=True)
    p.add_argument("--filter-fwhm-nm", type=float)
    p.add_argument("--center-nm", type=float, default=800.0)
    p.add_argument("--eta", type=float, default=0.0)
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_spdc)

    p = sub.add_parser("figure", help="reproduce a reference curve set as CSV")
    p.add_argument("name", choices=["fig2", "fig3a", "fig3b"])
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.set_defaults(func=cmd_figure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
