"""Command-line surface: compute measures, scan random states, trace the
maximal-discord curves, screen channels, and audit the inequality ledger.

Outputs are deterministic for a fixed (command, seed, options) triple: no
timestamps, fixed ordering, 17-significant-digit floats.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from pathlib import Path

import click
import numpy as np

from . import __version__, bounds, channels, linalg, measures, states
from .measures import Distance, OptimizerConfig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_VIOLATION = 3

VALID_FAMILIES = "bell:phi+, werner:P=0.6:minus, maxtr:P=0.7, maxhel:P=0.7, random:seed=3"


class ParseError(ValueError):
    """Malformed state/channel argument on the command line."""


class ViolationExit(RuntimeError):
    """A non-conjecture ledger relation was violated."""


@dataclass(frozen=True)
class RunConfig:
    seed: int
    samples: int
    tol: float
    restarts: int
    out: str | None
    fmt: str

    def optimizer(self) -> OptimizerConfig:
        return OptimizerConfig(restarts=self.restarts, seed=self.seed)


def _fmt(x) -> str:
    if x is None:
        return ""
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x:.17g}"


def _header(cmd: str, cfg: RunConfig, **extra) -> list[str]:
    lines = [
        f"# geodiscord={__version__}",
        f"# command={cmd}",
        f"# seed={cfg.seed}",
        f"# tol={_fmt(cfg.tol)}",
        f"# restarts={cfg.restarts}",
    ]
    lines += [f"# {k}={v}" for k, v in sorted(extra.items())]
    return lines


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
        click.echo(f"wrote {out}")
    else:
        click.echo(text, nl=False)


def _kv_parts(parts) -> tuple[dict, list]:
    kv, bare = {}, []
    for part in parts:
        if "=" in part:
            key, _, value = part.partition("=")
            kv[key.strip().lower()] = value.strip()
        else:
            bare.append(part.strip())
    return kv, bare


def _need_float(kv: dict, key: str, family: str) -> float:
    if key not in kv:
        raise ParseError(f"family '{family}' needs {key.upper()}=<float>")
    try:
        return float(kv[key])
    except ValueError as exc:
        raise ParseError(f"bad {key.upper()} value {kv[key]!r}") from exc


def parse_state(token: str, seed: int = 0) -> states.DensityMatrix:
    """Named family `family:key=value:...` or a path to a state JSON file."""
    if token.endswith(".json") or os.path.sep in token or os.path.exists(token):
        try:
            text = Path(token).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read state file {token!r}: {exc}") from exc
        try:
            return states.state_from_json(text)
        except (KeyError, ValueError, json.JSONDecodeError) as exc:
            raise ParseError(f"bad state JSON in {token!r}: {exc}") from exc
    parts = token.split(":")
    family = parts[0].strip().lower()
    kv, bare = _kv_parts(parts[1:])
    if family == "bell":
        label = bare[0] if bare else kv.get("label", "phi+")
        try:
            return states.bell_state(label)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    if family == "werner":
        p = _need_float(kv, "p", family)
        branch = kv.get("branch") or (bare[0] if bare else "minus")
        return states.werner_state(p, branch)
    if family == "maxtr":
        return states.max_trace_discord_state(_need_float(kv, "p", family))
    if family == "maxhel":
        return states.max_hellinger_discord_state(_need_float(kv, "p", family))
    if family == "random":
        sub = int(kv.get("seed", bare[0] if bare else seed))
        n_a = int(kv.get("n_a", 2))
        n_b = int(kv.get("n_b", 2))
        rank = int(kv.get("rank", n_a * n_b))
        if "purity" in kv or "p" in kv:
            p = float(kv.get("purity", kv.get("p")))
            return states.random_fixed_purity_state(n_a, n_b, p, rank, [sub, 77])
        return states.random_haar_state(n_a, n_b, rank, [sub, 77])
    raise ParseError(f"unknown state family {family!r}; valid: {VALID_FAMILIES}")


_DISTANCES = {
    "trace": Distance.Trace,
    "hs": Distance.HilbertSchmidt,
    "bures": Distance.Bures,
    "hellinger": Distance.Hellinger,
}
_DIST_TAG = {"trace": "tr", "hs": "hs", "bures": "bu", "hellinger": "he"}
_KINDS = {
    "geo": ("G", measures.geo_discord),
    "meas": ("M", measures.meas_induced_discord),
    "response": ("R", measures.disc_response),
}


@click.group()
@click.version_option(__version__)
def cli():
    """Geometric measures of bipartite quantum correlations."""


@cli.command()
@click.argument("state")
@click.argument("distance", default="all",
                type=click.Choice(["all", "trace", "hs", "bures", "hellinger"]))
@click.argument("measure", default="all",
                type=click.Choice(["all", "geo", "meas", "response"]))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--restarts", default=16, show_default=True, type=int)
@click.option("--tol", default=1e-5, show_default=True, type=float)
@click.option("--out", default=None, type=click.Path())
@click.option("--format", "fmt", default="text", show_default=True,
              type=click.Choice(["text", "csv", "json"]))
def compute(state, distance, measure, seed, restarts, tol, out, fmt):
    """Evaluate the selected measures of one state."""
    cfg = RunConfig(seed=seed, samples=1, tol=tol, restarts=restarts, out=out, fmt=fmt)
    rho = parse_state(state, seed)
    opt = cfg.optimizer()
    dist_names = list(_DISTANCES) if distance == "all" else [distance]
    kind_names = list(_KINDS) if measure == "all" else [measure]
    results = {}
    for kname in kind_names:
        prefix, fn = _KINDS[kname]
        for dname in dist_names:
            results[f"{prefix}_{_DIST_TAG[dname]}"] = fn(rho, _DISTANCES[dname], opt)
    if fmt == "json":
        payload = {
            "version": __version__,
            "state": state,
            "seed": seed,
            "values": {k: r.value for k, r in results.items()},
            "reports": {k: r.optimizer_report for k, r in results.items()},
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", out)
        return 0
    if fmt == "csv":
        lines = _header("compute", cfg, state=state)
        lines.append("measure,value,method,converged")
        for k in sorted(results):
            r = results[k]
            rep = r.optimizer_report
            lines.append(f"{k},{_fmt(r.value)},{rep['method']},{int(rep['converged'])}")
        _emit("\n".join(lines) + "\n", out)
        return 0
    lines = [f"state: {state}  (n_a={rho.n_a}, n_b={rho.n_b}, purity={_fmt(rho.purity())})"]
    for k in sorted(results):
        r = results[k]
        rep = r.optimizer_report
        lines.append(
            f"{k} = {_fmt(r.value)}  [method={rep['method']}, "
            f"restarts={rep['restarts']}, converged={rep['converged']}]"
        )
    _emit("\n".join(lines) + "\n", out)
    return 0


def _feasible_ranks(p: float | None) -> list[int]:
    if p is None:
        return [1, 2, 3, 4]
    ranks = [r for r in (2, 3, 4) if p >= 1.0 / r - 1e-12]
    if p >= 1.0 - 1e-9:
        ranks = [1] + ranks
    if not ranks:
        raise ParseError(f"no two-qubit rank achieves purity {p}")
    return ranks


def _sample_state(k: int, seed: int, rank_policy: str, purity: float | None):
    ranks = _feasible_ranks(purity)
    if rank_policy == "mixed":
        rank = ranks[k % len(ranks)]
    else:
        rank = int(rank_policy)
        if rank not in ranks:
            raise ParseError(f"rank {rank} infeasible at purity {purity}")
    if purity is None:
        return states.random_haar_state(2, 2, rank, [seed, 1000 + k]), rank
    return states.random_fixed_purity_state(2, 2, purity, rank, [seed, 1000 + k]), rank


@cli.command()
@click.option("--samples", default=100, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--rank", default="mixed", show_default=True,
              type=click.Choice(["mixed", "1", "2", "3", "4"]))
@click.option("--purity", default=None, type=float)
@click.option("--pair", default="R_bu,R_he", show_default=True,
              help="comma-separated pair of measure keys, e.g. G_he,R_he")
@click.option("--restarts", default=16, show_default=True, type=int)
@click.option("--tol", default=1e-5, show_default=True, type=float)
@click.option("--out", default=None, type=click.Path())
def scan(samples, seed, rank, purity, pair, restarts, tol, out):
    """Audit random two-qubit states and tabulate a pair of measures."""
    cfg = RunConfig(seed=seed, samples=samples, tol=tol, restarts=restarts, out=out, fmt="csv")
    keys = [k.strip() for k in pair.split(",")]
    if len(keys) != 2 or any(k not in measures.MEASURE_KEYS for k in keys):
        raise ParseError(f"pair must name two of {measures.MEASURE_KEYS}")
    lines = _header("scan", cfg, rank=rank, purity=_fmt(purity) if purity is not None else "haar",
                    pair=pair, samples=samples)
    lines.append(f"index,purity,rank,{keys[0]},{keys[1]},violations,conjecture_counterexamples")
    for k in range(samples):
        rho, r = _sample_state(k, seed, rank, purity)
        report = bounds.audit(rho, tol=tol, config=cfg.optimizer())
        m = report.measures
        lines.append(
            f"{k},{_fmt(rho.purity())},{r},{_fmt(m[keys[0]])},{_fmt(m[keys[1]])},"
            f"{len(report.violations)},{report.conjecture_counterexamples}"
        )
    _emit("\n".join(lines) + "\n", out)
    return 0


_CURVE_MEASURES = ("trace_response", "bures_response", "hellinger_response", "hs_response")


def _analytic_curve(measure: str, p: float) -> float | None:
    if measure == "trace_response":
        return states.max_trace_response_curve(p)
    if measure == "hs_response":
        return (4.0 * p - 1.0) / 3.0
    if measure == "hellinger_response" and p <= 1.0 / 3.0 + 1e-12:
        return states.max_hellinger_response_region1(min(p, 1.0 / 3.0))
    return None


def _family_value(measure: str, p: float, opt: OptimizerConfig) -> float:
    if measure == "trace_response":
        rho = states.max_trace_discord_state(p)
        return measures.disc_response(rho, Distance.Trace, opt).value
    if measure == "hellinger_response":
        rho = states.max_hellinger_discord_state(p)
        return measures.hellinger_response_closed(rho)
    rho = states.werner_state(p, "minus")
    if measure == "hs_response":
        return measures.disc_response(rho, Distance.HilbertSchmidt, opt).value
    return measures.disc_response(rho, Distance.Bures, opt).value


def _envelope_value(measure: str, p: float, n: int, seed: int, idx: int,
                    opt: OptimizerConfig) -> float | None:
    dist = {
        "trace_response": Distance.Trace,
        "bures_response": Distance.Bures,
        "hellinger_response": Distance.Hellinger,
        "hs_response": Distance.HilbertSchmidt,
    }[measure]
    ranks = _feasible_ranks(p)
    best = None
    for j in range(n):
        rank = ranks[j % len(ranks)]
        try:
            rho = states.random_fixed_purity_state(2, 2, p, rank, [seed, 500 + idx, j])
        except states.UnachievablePurity:
            continue
        val = measures.disc_response(rho, dist, opt).value
        best = val if best is None else max(best, val)
    return best


@cli.command()
@click.option("--measure", required=True, type=click.Choice(_CURVE_MEASURES))
@click.option("--points", default=40, show_default=True, type=int)
@click.option("--grid", default=None, help="explicit comma-separated purity grid")
@click.option("--envelope-samples", default=25, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--restarts", default=16, show_default=True, type=int)
@click.option("--tol", default=1e-5, show_default=True, type=float)
@click.option("--out", default=None, type=click.Path())
def maxcurve(measure, points, grid, envelope_samples, seed, restarts, tol, out):
    """Maximal response discord versus purity: analytic curve, extremal
    family value, and a random-search envelope."""
    cfg = RunConfig(seed=seed, samples=envelope_samples, tol=tol, restarts=restarts,
                    out=out, fmt="csv")
    if grid:
        try:
            ps = [float(t) for t in grid.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad grid {grid!r}") from exc
    else:
        ps = list(np.linspace(0.25, 1.0, points))
    for p in ps:
        if p < 0.25 - 1e-12 or p > 1.0 + 1e-12:
            raise ParseError(f"purity {p} outside [1/4, 1]")
    opt = cfg.optimizer()
    lines = _header("maxcurve", cfg, measure=measure,
                    envelope_samples=envelope_samples, points=len(ps))
    lines.append("P,curve,family_measured,envelope")
    for idx, p in enumerate(ps):
        curve = _analytic_curve(measure, p)
        family = _family_value(measure, p, opt)
        env = (_envelope_value(measure, p, envelope_samples, seed, idx, opt)
               if envelope_samples > 0 else None)
        lines.append(f"{_fmt(p)},{_fmt(curve)},{_fmt(family)},{_fmt(env)}")
    _emit("\n".join(lines) + "\n", out)
    return 0


@cli.command()
@click.argument("path", type=click.Path())
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--restarts", default=16, show_default=True, type=int)
@click.option("--format", "fmt", default="text", show_default=True,
              type=click.Choice(["text", "json"]))
@click.option("--out", default=None, type=click.Path())
def channel(path, seed, restarts, fmt, out):
    """Screen a Kraus-set channel for quantumness breaking."""
    try:
        text = Path(path).read_text()
        phi = channels.channel_from_json(text)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot load channel {path!r}: {exc}") from exc
    verdict = channels.quantumness_breaking_verdict(
        phi, OptimizerConfig(restarts=restarts, seed=seed)
    )
    if fmt == "json":
        payload = {
            "version": __version__,
            "channel": path,
            "verdict": verdict.status,
            "superoperator_rank": verdict.superoperator_rank,
            "jamiolkowski_discord": verdict.jamiolkowski_discord,
            "residual_lower_bound": verdict.residual_lower_bound,
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", out)
        return 0
    discord = (_fmt(verdict.jamiolkowski_discord)
               if verdict.jamiolkowski_discord is not None else "unknown")
    lines = [
        f"superoperator_rank = {verdict.superoperator_rank}",
        f"jamiolkowski_discord = {discord}",
        f"residual_lower_bound = {_fmt(verdict.residual_lower_bound)}",
        f"verdict = {verdict.status}",
    ]
    _emit("\n".join(lines) + "\n", out)
    return 0


@cli.command()
@click.option("--samples", default=100, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--rank", default="mixed", show_default=True,
              type=click.Choice(["mixed", "1", "2", "3", "4"]))
@click.option("--tol", default=1e-5, show_default=True, type=float)
@click.option("--identity-tol", default=1e-4, show_default=True, type=float)
@click.option("--restarts", default=16, show_default=True, type=int)
@click.option("--out", default=None, type=click.Path())
def audit(samples, seed, rank, tol, identity_tol, restarts, out):
    """Run the full inequality ledger over random two-qubit states."""
    cfg = RunConfig(seed=seed, samples=samples, tol=tol, restarts=restarts, out=out, fmt="csv")
    rows = []
    total_violations = 0
    total_conjecture = 0
    for k in range(samples):
        rho, r = _sample_state(k, seed, rank, None)
        report = bounds.audit(rho, tol=tol, identity_tol=identity_tol,
                              config=cfg.optimizer())
        nv = len(report.violations)
        nc = report.conjecture_counterexamples
        total_violations += nv
        total_conjecture += nc
        rows.append(f"{k},{_fmt(rho.purity())},{r},{nv},{nc}")
    if out:
        lines = _header("audit", cfg, samples=samples, rank=rank,
                        identity_tol=_fmt(identity_tol))
        lines.append("index,purity,rank,violations,conjecture_counterexamples")
        lines += rows
        Path(out).write_text("\n".join(lines) + "\n")
    click.echo(
        f"states={samples} violations={total_violations} "
        f"conjecture_counterexamples={total_conjecture}"
    )
    if total_violations > 0:
        raise ViolationExit(
            f"{total_violations} relation violations across {samples} states"
        )
    return 0


_NUMERICAL_ERRORS = (
    linalg.NotHermitian,
    linalg.NotPSD,
    linalg.DimensionMismatch,
    linalg.ConvergenceFailure,
    measures.UnsupportedDimension,
    measures.OptimizerNotConverged,
    measures.MeasureConsistencyError,
    states.NotNormalized,
    states.BadRank,
    states.UnachievablePurity,
    states.PurityOutOfBranch,
    states.PurityOutOfRange,
    states.WrongDimension,
    states.BadDistribution,
    channels.NotTracePreserving,
    channels.MarginalsNotMaximallyMixed,
    bounds.DomainError,
    np.linalg.LinAlgError,
)


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, standalone_mode=False)
        return int(rv) if rv else EXIT_OK
    except ParseError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return EXIT_USAGE
    except ViolationExit as exc:
        click.echo(f"violation: {exc}", err=True)
        return EXIT_VIOLATION
    except _NUMERICAL_ERRORS as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        return EXIT_NUMERICAL
    except ValueError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
