"""Command-line front end: point queries, Monte Carlo runs, sweeps, optimization.

Flags default to the standard simulation settings, so reproducing the
reference curves needs no configuration. Precedence is command-line flags
over config-file entries over built-in defaults; the config file is flat
``key=value`` text (keys are the long flag names without dashes, ``#``
starts a comment). Angles are degrees at this boundary and dB conversions
happen only here; everything below works in radians and linear units.

Exit codes: 0 success, 2 invalid arguments or infeasible request,
3 numerical failure.
"""

import argparse
import csv
import math
import sys
from dataclasses import dataclass

from .analysis import OutageBranch, QuadratureError, avg_sinr, outage
from .geometry import BeamConfig, CaseId, CorridorGeometry, classify_case, crossing_heights
from .link import RadioConfig, antenna_gain_from_beamwidth, linear_to_db
from .montecarlo import McConfig, McEstimate, McMode, empirical_avg_sinr, empirical_outage
from .optimizer import DEFAULT_MARGIN, OptimizeMethod, OptimizeResult, optimize_uptilt

CSV_HEADER = ("alpha_deg,beta_deg,h2_m,case,branch,pr_out_analytic,pr_out_mc,"
              "pr_out_mc_se,sinr_avg_db_analytic,sinr_avg_db_mc,sinr_avg_db_mc_se")
SWEEP_OUTPUTS = {"outage_analytic", "outage_mc", "avg_sinr_analytic", "avg_sinr_mc",
                 "case_id"}
DEFAULT_OUTPUTS = "outage_analytic,avg_sinr_analytic,case_id"

_DB_PER_NEPER = 10.0 / math.log(10.0)


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: (alpha grid) x (beta values) x (h2 values)."""

    alpha_start: float = 1.0          # deg
    alpha_stop: float | None = None   # deg; None -> 89 - beta for each beta
    alpha_step: float = 0.5           # deg
    beta_values: tuple[float, ...] = (50.0,)   # deg
    h2_values: tuple[float, ...] = (300.0,)    # m
    mc_samples: int = 1_000_000
    mc_seed: int = 0
    mode: McMode = McMode.EXACT
    outputs: frozenset = frozenset(DEFAULT_OUTPUTS.split(","))
    workers: int = 1

    def __post_init__(self):
        if self.alpha_step <= 0:
            raise ValueError(f"alpha step must be positive, got {self.alpha_step}")
        unknown = set(self.outputs) - SWEEP_OUTPUTS
        if unknown:
            raise ValueError(f"unknown sweep outputs: {sorted(unknown)}")


@dataclass(frozen=True)
class OptimizeReport:
    result: OptimizeResult
    case: CaseId
    branch: OutageBranch
    mc_outage: McEstimate


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _db_or_neg_inf(linear: float) -> str:
    return _fmt(linear_to_db(linear)) if linear > 0 else "-inf"


def _alpha_grid(spec: SweepSpec, beta: float) -> list[float]:
    stop = spec.alpha_stop if spec.alpha_stop is not None else 89.0 - beta
    n = int(math.floor((stop - spec.alpha_start) / spec.alpha_step + 1e-9))
    return [spec.alpha_start + i * spec.alpha_step for i in range(n + 1)]


def run_sweep(spec: SweepSpec, geom: CorridorGeometry, radio: RadioConfig,
              stream) -> int:
    """Write one CSV row per grid point to *stream*; returns the row count.

    geom supplies d1 and h1; h2 comes from the spec's h2 list. Rows are
    emitted in grid order (h2 outer, beta middle, alpha inner) and the
    whole output is a pure function of the spec, so identical specs give
    byte-identical files. Aborts with QuadratureError (failing row named)
    on a numerical failure, leaving previous rows written.
    """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    want = spec.outputs
    rows = 0
    for h2 in spec.h2_values:
        geom_row = CorridorGeometry(geom.d1, geom.h1, h2)
        for beta in spec.beta_values:
            for alpha in _alpha_grid(spec, beta):
                cells = [_fmt(alpha), _fmt(beta), _fmt(h2)]
                if not (alpha > 0 and alpha + beta < 90):
                    cells += ["infeasible"] + [""] * 7
                else:
                    try:
                        cells += _metric_cells(spec, geom_row, radio, alpha, beta)
                    except QuadratureError as exc:
                        raise QuadratureError(
                            f"sweep row alpha={alpha} beta={beta} h2={h2}: {exc}",
                            value=exc.value, error_estimate=exc.error_estimate,
                        ) from exc
                writer.writerow(cells)
                rows += 1
    return rows


def _metric_cells(spec: SweepSpec, geom: CorridorGeometry, radio: RadioConfig,
                  alpha_deg: float, beta_deg: float) -> list[str]:
    gain = antenna_gain_from_beamwidth(beta_deg)
    beam = BeamConfig(math.radians(alpha_deg), math.radians(beta_deg), gain)
    want = spec.outputs
    mc = McConfig(samples=spec.mc_samples, seed=spec.mc_seed, mode=spec.mode)

    case_s = branch_s = ""
    if "case_id" in want:
        case_s = classify_case(geom, beam).label
        branch_s = outage(geom, beam).branch.label

    pr_s = _fmt(outage(geom, beam).probability) if "outage_analytic" in want else ""

    pr_mc_s = pr_mc_se_s = ""
    if "outage_mc" in want:
        est = empirical_outage(geom, beam, radio, mc, workers=spec.workers)
        pr_mc_s, pr_mc_se_s = _fmt(est.mean), _fmt(est.std_error)

    avg_s = ""
    if "avg_sinr_analytic" in want:
        avg_s = _db_or_neg_inf(avg_sinr(geom, beam, radio).value)

    avg_mc_s = avg_mc_se_s = ""
    if "avg_sinr_mc" in want:
        est = empirical_avg_sinr(geom, beam, radio, mc, workers=spec.workers)
        avg_mc_s = _db_or_neg_inf(est.mean)
        if est.mean > 0:
            avg_mc_se_s = _fmt(_DB_PER_NEPER * est.std_error / est.mean)

    return [case_s, branch_s, pr_s, pr_mc_s, pr_mc_se_s, avg_s, avg_mc_s, avg_mc_se_s]


def run_optimize(geom: CorridorGeometry, radio: RadioConfig, beam_template: BeamConfig,
                 mc: McConfig, method: OptimizeMethod = OptimizeMethod.GOLDEN_SECTION,
                 margin: float = DEFAULT_MARGIN, workers: int = 1) -> OptimizeReport:
    """Optimize the uptilt and confirm the minimum with a Monte Carlo run."""
    result = optimize_uptilt(geom, beam_template, method=method, margin=margin)
    beam_star = BeamConfig(result.alpha_star, beam_template.beta, beam_template.gain)
    return OptimizeReport(
        result=result,
        case=classify_case(geom, beam_star),
        branch=outage(geom, beam_star).branch,
        mc_outage=empirical_outage(geom, beam_star, radio, mc, workers=workers),
    )


# ---------------------------------------------------------------- CLI plumbing

def load_config(path: str) -> dict[str, str]:
    """Parse flat key=value config text; '#' starts a comment."""
    entries = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"malformed config line (expected key=value): {raw.rstrip()!r}")
            key, val = line.split("=", 1)
            entries[key.strip()] = val.strip()
    return entries


def _normalize_key(key: str) -> str:
    return key.lower().replace("-", "").replace("_", "")


_CONFIG_FLAGS = {
    "d1": "--d1", "h1": "--h1", "h2": "--h2", "alpha": "--alpha", "beta": "--beta",
    "txdbm": "--tx-dbm", "freqghz": "--freq-ghz", "bwmhz": "--bw-mhz",
    "nfdb": "--nf-db", "taudb": "--tau-db", "gainmodel": "--gain-model",
    "samples": "--samples", "seed": "--seed", "mode": "--mode", "out": "--out",
    "workers": "--workers", "alphastart": "--alpha-start", "alphastop": "--alpha-stop",
    "alphastep": "--alpha-step", "outputs": "--outputs", "method": "--method",
}


def _config_argv(entries: dict[str, str], subparser: argparse.ArgumentParser) -> list[str]:
    argv = []
    for key, val in entries.items():
        flag = _CONFIG_FLAGS.get(_normalize_key(key))
        if flag is None:
            raise ValueError(f"unknown config key: {key!r}")
        if flag in subparser._option_string_actions:  # skip keys the subcommand lacks
            argv += [flag, val]
    return argv


def _count(s: str) -> int:
    return int(float(s))


def _float_list(s: str) -> list[float]:
    return [float(tok) for tok in s.split(",") if tok.strip()]


def _add_model_flags(sp, alpha: bool = True, scalar_beta_h2: bool = True):
    sp.add_argument("--config", help="flat key=value config file")
    sp.add_argument("--d1", type=float, default=1000.0, help="BS spacing, m")
    sp.add_argument("--h1", type=float, default=100.0, help="corridor floor, m")
    if scalar_beta_h2:
        sp.add_argument("--h2", type=float, default=300.0, help="corridor ceiling, m")
        sp.add_argument("--beta", type=float, default=50.0, help="beamwidth, deg")
    if alpha:
        sp.add_argument("--alpha", type=float, default=None, help="uptilt angle, deg")
    sp.add_argument("--tx-dbm", type=float, default=30.0, help="transmit power, dBm")
    sp.add_argument("--freq-ghz", type=float, default=3.0, help="carrier frequency, GHz")
    sp.add_argument("--bw-mhz", type=float, default=100.0, help="bandwidth, MHz")
    sp.add_argument("--nf-db", type=float, default=9.0, help="noise figure, dB")
    sp.add_argument("--tau-db", type=float, default=-3.0, help="SINR threshold, dB")
    sp.add_argument("--gain-model", type=str.lower, choices=["db", "linear"],
                    default="db", help="reading of the 297.6/beta gain figure")
    sp.add_argument("--out", default="-", help="output path ('-' = stdout)")


def _add_mc_flags(sp):
    sp.add_argument("--samples", type=_count, default=1_000_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", choices=["exact", "paper"], default="exact")
    sp.add_argument("--workers", type=int, default=1)


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="dronecorridor",
        description="Coverage of a drone corridor served by two uptilted BS antennas.",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    by_name = {}

    sp = by_name["classify"] = subs.add_parser(
        "classify", help="coverage regime and crossing heights at one uptilt")
    _add_model_flags(sp)
    sp.set_defaults(func=_cmd_classify)

    sp = by_name["outage"] = subs.add_parser(
        "outage", help="closed-form outage probability at one uptilt")
    _add_model_flags(sp)
    sp.set_defaults(func=_cmd_outage)

    sp = by_name["avg-sinr"] = subs.add_parser(
        "avg-sinr", help="closed-form average SINR at one uptilt")
    _add_model_flags(sp)
    sp.set_defaults(func=_cmd_avg_sinr)

    sp = by_name["montecarlo"] = subs.add_parser(
        "montecarlo", help="Monte Carlo outage and average SINR at one uptilt")
    _add_model_flags(sp)
    _add_mc_flags(sp)
    sp.set_defaults(func=_cmd_montecarlo)

    sp = by_name["optimize"] = subs.add_parser(
        "optimize", help="uptilt angle minimizing the outage probability")
    _add_model_flags(sp, alpha=False)
    _add_mc_flags(sp)
    sp.add_argument("--method", choices=[m.value for m in OptimizeMethod],
                    default=OptimizeMethod.GOLDEN_SECTION.value)
    sp.set_defaults(func=_cmd_optimize)

    sp = by_name["sweep"] = subs.add_parser(
        "sweep", help="CSV over an (alpha, beta, h2) grid")
    _add_model_flags(sp, alpha=False, scalar_beta_h2=False)
    _add_mc_flags(sp)
    sp.add_argument("--beta", type=_float_list, default=[50.0],
                    help="comma-separated beamwidths, deg")
    sp.add_argument("--h2", type=_float_list, default=[300.0],
                    help="comma-separated corridor ceilings, m")
    sp.add_argument("--alpha-start", type=float, default=1.0)
    sp.add_argument("--alpha-stop", type=float, default=None,
                    help="default: 89 - beta")
    sp.add_argument("--alpha-step", type=float, default=0.5)
    sp.add_argument("--outputs", default=DEFAULT_OUTPUTS,
                    help=f"comma list from {sorted(SWEEP_OUTPUTS)}")
    sp.set_defaults(func=_cmd_sweep)

    return parser, by_name


def _geom(args) -> CorridorGeometry:
    return CorridorGeometry(d1=args.d1, h1=args.h1, h2=args.h2)


def _radio(args) -> RadioConfig:
    return RadioConfig.from_db(
        tx_power_dbm=args.tx_dbm,
        carrier_frequency_hz=args.freq_ghz * 1e9,
        bandwidth_hz=args.bw_mhz * 1e6,
        noise_figure_db=args.nf_db,
        sinr_threshold_db=args.tau_db,
    )


def _beam(args) -> BeamConfig:
    if args.alpha is None:
        raise ValueError("--alpha is required for this command")
    gain = antenna_gain_from_beamwidth(args.beta, args.gain_model)
    return BeamConfig(math.radians(args.alpha), math.radians(args.beta), gain)


def _mc(args) -> McConfig:
    return McConfig(samples=args.samples, seed=args.seed, mode=McMode(args.mode))


def _emit(args, text: str) -> None:
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _cmd_classify(args) -> int:
    geom = _geom(args)
    beam = _beam(args)
    ch = crossing_heights(geom, beam)
    case = classify_case(geom, beam)
    branch = outage(geom, beam).branch
    _emit(args, f"case={case.label} branch={branch.label} "
                f"h3={_fmt(ch.h3)} h4={_fmt(ch.h4)}\n")
    return 0


def _cmd_outage(args) -> int:
    res = outage(_geom(args), _beam(args))
    case = classify_case(_geom(args), _beam(args))
    _emit(args, f"pr_out={_fmt(res.probability)} "
                f"dpr_dalpha={_fmt(res.derivative_wrt_alpha)} "
                f"branch={res.branch.label} case={case.label}\n")
    return 0


def _cmd_avg_sinr(args) -> int:
    res = avg_sinr(_geom(args), _beam(args), _radio(args))
    _emit(args, f"sinr_avg={_fmt(res.value)} sinr_avg_db={_db_or_neg_inf(res.value)} "
                f"case={res.case.label} quad_err={_fmt(res.quadrature_error_estimate)}\n")
    return 0


def _cmd_montecarlo(args) -> int:
    geom, beam, radio, mc = _geom(args), _beam(args), _radio(args), _mc(args)
    est_out = empirical_outage(geom, beam, radio, mc, workers=args.workers)
    est_avg = empirical_avg_sinr(geom, beam, radio, mc, workers=args.workers)
    pr = outage(geom, beam).probability
    lines = (
        f"pr_out_mc={_fmt(est_out.mean)} pr_out_mc_se={_fmt(est_out.std_error)} "
        f"pr_out_analytic={_fmt(pr)}\n"
        f"sinr_avg_mc={_fmt(est_avg.mean)} sinr_avg_mc_se={_fmt(est_avg.std_error)} "
        f"sinr_avg_db_mc={_db_or_neg_inf(est_avg.mean)}\n"
        f"samples={mc.samples} seed={mc.seed} mode={mc.mode.value}\n"
    )
    _emit(args, lines)
    return 0


def _cmd_optimize(args) -> int:
    gain = antenna_gain_from_beamwidth(args.beta, args.gain_model)
    # template alpha is a placeholder inside the feasible interval
    template = BeamConfig(math.radians(1e-3), math.radians(args.beta), gain)
    report = run_optimize(_geom(args), _radio(args), template, _mc(args),
                          method=OptimizeMethod(args.method), workers=args.workers)
    res = report.result
    est = report.mc_outage
    _emit(args,
          f"alpha_star_deg={_fmt(math.degrees(res.alpha_star))} "
          f"pr_out_min={_fmt(res.outage_at_star)} branch={report.branch.label} "
          f"case={report.case.label} method={res.method.value} "
          f"iterations={res.iterations} at_boundary={str(res.at_boundary).lower()}\n"
          f"mc_confirm: pr_out_mc={_fmt(est.mean)} pr_out_mc_se={_fmt(est.std_error)} "
          f"samples={est.samples}\n")
    return 0


def _cmd_sweep(args) -> int:
    spec = SweepSpec(
        alpha_start=args.alpha_start,
        alpha_stop=args.alpha_stop,
        alpha_step=args.alpha_step,
        beta_values=tuple(args.beta),
        h2_values=tuple(args.h2),
        mc_samples=args.samples,
        mc_seed=args.seed,
        mode=McMode(args.mode),
        outputs=frozenset(tok for tok in args.outputs.split(",") if tok),
        workers=args.workers,
    )
    geom = CorridorGeometry(d1=args.d1, h1=args.h1, h2=spec.h2_values[0])
    radio = _radio(args)
    if args.out == "-":
        run_sweep(spec, geom, radio, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            run_sweep(spec, geom, radio, fh)
    return 0


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, by_name = build_parser()

    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    try:
        if known.config and argv and argv[0] in by_name:
            entries = load_config(known.config)
            # config entries become flags injected ahead of the user's, so
            # explicit flags win
            argv = [argv[0]] + _config_argv(entries, by_name[argv[0]]) + argv[1:]
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # argparse exits 2 on bad usage
            return int(exc.code or 0)
        return args.func(args)
    except QuadratureError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
