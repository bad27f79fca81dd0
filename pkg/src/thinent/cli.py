"""Command-line front end: ``thinent verify|sweep|search|repro``.

Exit codes: 0 when every theorem-tier row passes, 1 when at least one fails,
2 on usage or configuration errors.  Conjecture-tier rows never change the
exit code.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import verifiers as V
from .entropy import poisson_pmf
from .errors import ThinentError
from .pmf import Pmf, make_pmf, mean
from .report import ReportRow, fmt_float, rows_to_csv, rows_to_json, write_table
from .search import TARGETS, make_objective, search
from .ulc import bernoulli_sum, random_ulc

COMMANDS = ("verify", "sweep", "search", "repro")

DEFAULTS = {
    "seed": 0,
    "corpus_size": 100,
    "max_support": 8,
    "alpha_grid": None,
    "output": None,
    "format": "csv",
    "budget": 10_000,
    "target": None,
    "fixture": [],
    "no_timestamp": False,
    "tol": {},
}

#: default alpha-grid size per command
ALPHA_GRID = {"verify": 9, "sweep": 33, "search": 9, "repro": 9}

#: theorem-tier checks and their default tolerances; keys accepted by --tol
TOLERANCES = {
    "thm2": V.THEOREM_TOL,
    "prop1": V.THEOREM_TOL,
    "dthin": V.THEOREM_TOL,
    "d_subadditive": V.THEOREM_TOL,
    "l2_nonneg": 1e-8,
    "cor1_segment": V.THEOREM_TOL,
    "ab_identity": 1e-10,
    "naive_epi": -V.POWER_TOL,
    "thin_numbers_entropy": 1e-12,
    "thin_numbers_rel_entropy": 1e-12,
    "thin_numbers_tv": 0.0,
    "rtepi": V.POWER_TOL,
    "thinned_epi": V.POWER_TOL,
}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    corpus_size: int = 100
    max_support: int = 8
    alpha_grid: int = 9
    tolerance_overrides: dict[str, float] = field(default_factory=dict)
    output_path: str | None = None
    format: str = "csv"
    fixtures: list[str] = field(default_factory=list)
    budget: int = 10_000
    target: str | None = None
    no_timestamp: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.corpus_size < 1:
            raise ConfigError("corpus_size must be >= 1")
        if self.alpha_grid < 3:
            raise ConfigError("alpha_grid must be >= 3")
        if self.max_support < 1:
            raise ConfigError("max_support must be >= 1")
        if self.budget < 1:
            raise ConfigError("budget must be >= 1")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        unknown = set(self.tolerance_overrides) - set(TOLERANCES)
        if unknown:
            raise ConfigError(f"unknown tolerance keys: {sorted(unknown)}")
        if self.command == "search" and self.target not in TARGETS:
            raise ConfigError(f"search needs --target in {TARGETS}, got {self.target!r}")

    def tol(self, check: str) -> float:
        return self.tolerance_overrides.get(check, TOLERANCES[check])


# -- fixtures -----------------------------------------------------------------


def parse_fixture(spec: str) -> Pmf:
    """``counterexample | fair-coin | binomial:n,p | poisson:rate | bernoulli:a1,a2,...``"""
    name, _, arg = spec.partition(":")
    try:
        if name == "counterexample" and not arg:
            return make_pmf([1, 4, 1])
        if name == "fair-coin" and not arg:
            return make_pmf([0.5, 0.5])
        if name == "binomial":
            n, p = arg.split(",")
            return bernoulli_sum([float(p)] * int(n))
        if name == "poisson":
            return poisson_pmf(float(arg))
        if name == "bernoulli":
            return bernoulli_sum([float(x) for x in arg.split(",")])
    except (ValueError, ThinentError) as exc:
        raise ConfigError(f"malformed fixture {spec!r}: {exc}") from None
    raise ConfigError(f"unknown fixture {spec!r}")


VERIFY_FIXTURES = (
    "counterexample",
    "fair-coin",
    "binomial:4,0.6",
    "binomial:5,0.2",
    "binomial:6,0.5",
    "poisson:1",
    "poisson:2",
)


# -- row construction -----------------------------------------------------------


def _row(cfg: RunConfig, check: str, instance: str, rep: V.SlackReport) -> ReportRow:
    tol = cfg.tol(check)
    passed = rep.preconditions_met and rep.slack >= -tol
    return ReportRow(check, instance, rep.lhs, rep.rhs, rep.slack, passed, rep.conjecture)


def _plain_row(cfg: RunConfig, check: str, instance: str, lhs: float, rhs: float,
               conjecture: bool = False) -> ReportRow:
    slack = lhs - rhs
    return ReportRow(check, instance, lhs, rhs, slack, slack >= -cfg.tol(check), conjecture)


def _alphas(cfg: RunConfig) -> np.ndarray:
    return np.arange(1, cfg.alpha_grid + 1) / (cfg.alpha_grid + 1)


def _corpus(cfg: RunConfig) -> list[tuple[str, Pmf, Pmf]]:
    rng = np.random.default_rng(cfg.seed)
    seeds = rng.integers(0, 2**62, size=(cfg.corpus_size, 2))
    pairs = []
    for k, (sf, sg) in enumerate(seeds):
        pairs.append((
            f"pair={k};f=random_ulc({cfg.max_support},{sf});g=random_ulc({cfg.max_support},{sg})",
            random_ulc(cfg.max_support, int(sf)),
            random_ulc(cfg.max_support, int(sg)),
        ))
    fx = [(name, parse_fixture(name)) for name in VERIFY_FIXTURES]
    for (nf, f), (ng, g) in zip(fx, fx[1:] + fx[:1]):
        pairs.append((f"f={nf};g={ng}", f, g))
    return pairs


def _pair_rows(cfg: RunConfig, inst: str, f: Pmf, g: Pmf) -> list[ReportRow]:
    rows = []
    for a in _alphas(cfg):
        a = float(a)
        for b in (1.0 - a, 0.5 * (1.0 - a)):
            rep = V.check_concavity_thm2(f, g, a, b)
            rows.append(_row(cfg, "thm2", f"{inst};alpha={fmt_float(a)};beta={fmt_float(b)}", rep))
        rows.append(_row(cfg, "prop1", f"{inst};alpha={fmt_float(a)}", V.check_prop1(f, a)))
        rows.append(_row(cfg, "dthin", f"{inst};alpha={fmt_float(a)}", V.check_dthin(f, a)))
    rows.append(_row(cfg, "d_subadditive", inst, V.check_d_subadditive(f, g)))
    if mean(f) > 0 and mean(g) > 0:
        l2 = V.l2_closed_form(f, g, 0.5)
        rows.append(_plain_row(cfg, "l2_nonneg", f"{inst};alpha=0.5", l2, 0.0))
    rows.append(_row(cfg, "rtepi", f"{inst};alpha=0.5", V.check_rtepi(f, 0.5)))
    rows.append(_row(cfg, "thinned_epi", f"{inst};alpha=0.5", V.check_thinned_epi(f, g, 0.5)))
    return rows


def _cor1_rows(cfg: RunConfig, count: int) -> list[ReportRow]:
    rng = np.random.default_rng([cfg.seed, 1])
    rows = []
    for k in range(count):
        n = int(rng.integers(1, cfg.max_support + 1))
        a, b = rng.uniform(size=n), rng.uniform(size=n)
        a_side = rng.uniform(size=n) < 0.5
        a, b = np.where(a_side, a, 0.0), np.where(a_side, 0.0, b)
        rep = V.check_shepp_olkin_segment(a, b, 17)
        inst = f"segment={k};a={_vec(a)};b={_vec(b)}"
        rows.append(_plain_row(cfg, "cor1_segment", inst, 0.0, rep.max_second))
    return rows


def _vec(x) -> str:
    return "[" + " ".join(fmt_float(v) for v in x) + "]"


def _ab_rows(cfg: RunConfig, count: int) -> list[ReportRow]:
    rng = np.random.default_rng([cfg.seed, 2])
    rows = []
    for k in range(count):
        i, j = (int(v) for v in rng.integers(0, 51, size=2))
        alpha = float(rng.uniform(0.05, 0.95))
        lam, mu = (float(v) for v in rng.uniform(0.1, 10.0, size=2))
        res = abs(V.ab_identity_residual(i, j, alpha, lam, mu))
        inst = f"i={i};j={j};alpha={fmt_float(alpha)};lambda={fmt_float(lam)};mu={fmt_float(mu)}"
        rows.append(_plain_row(cfg, "ab_identity", inst, 0.0, res))
    return rows


def _counterexample_row(cfg: RunConfig) -> ReportRow:
    rep = V.naive_epi_counterexample()
    return _row(cfg, "naive_epi", "f=g=counterexample", rep)


# -- commands -------------------------------------------------------------------


@dataclass
class Outcome:
    text: str
    summary: list[str]
    exit_code: int


def _theorem_exit(rows: Sequence[ReportRow]) -> int:
    return 0 if all(r.passed for r in rows if not r.conjecture_flag) else 1


def _emit_rows(cfg: RunConfig, rows: Sequence[ReportRow], stamp: str | None) -> str:
    if cfg.format == "json":
        return rows_to_json(rows)
    return rows_to_csv(rows, comment=stamp)


def _summarize(rows: Sequence[ReportRow]) -> list[str]:
    lines = []
    for name in dict.fromkeys(r.check_name for r in rows):
        sub = [r for r in rows if r.check_name == name]
        tier = "conjecture" if sub[0].conjecture_flag else "theorem"
        failed = sum(not r.passed for r in sub)
        worst = min(r.slack for r in sub)
        lines.append(
            f"{name:28s} {tier:10s} rows={len(sub):6d} failed={failed:5d} min_slack={worst:.3e}"
        )
    return lines


def cmd_verify(cfg: RunConfig, stamp: str | None) -> Outcome:
    rows: list[ReportRow] = []
    for inst, f, g in _corpus(cfg):
        rows.extend(_pair_rows(cfg, inst, f, g))
    rows.extend(_cor1_rows(cfg, min(cfg.corpus_size, 200)))
    rows.extend(_ab_rows(cfg, cfg.corpus_size))
    rows.append(_counterexample_row(cfg))
    return Outcome(_emit_rows(cfg, rows, stamp), _summarize(rows), _theorem_exit(rows))


SWEEP_HEADER = ("alpha", "h_slack", "v_slack", "l", "fd_l2", "closed_l2")


def cmd_sweep(cfg: RunConfig, stamp: str | None) -> Outcome:
    specs = cfg.fixtures or ["binomial:4,0.6", "binomial:5,0.2"]
    if len(specs) > 2:
        raise ConfigError("sweep takes at most two fixtures (f and g)")
    f = parse_fixture(specs[0])
    g = parse_fixture(specs[-1])
    if mean(f) <= 0 or mean(g) <= 0:
        raise ConfigError("sweep fixtures need positive means")
    try:
        V._require_ulc(f, g)
    except ThinentError as exc:
        raise ConfigError(str(exc)) from None
    table = []
    ok = True
    for a in V.alpha_grid(cfg.alpha_grid):
        a = float(a)
        h_rep = V.check_concavity_thm2(f, g, a, 1.0 - a)
        v_rep = V.check_thinned_epi(f, g, a)
        fn = lambda x: V.l_alpha_two(f, g, x)  # noqa: E731
        fd = V.second_difference(fn, a, V.fd_step(a))
        table.append((a, h_rep.slack, v_rep.slack, fn(a), fd, V.l2_closed_form(f, g, a)))
        ok &= h_rep.slack >= -cfg.tol("thm2")
    if cfg.format == "json":
        text = json.dumps([dict(zip(SWEEP_HEADER, r)) for r in table], indent=1) + "\n"
    else:
        text = write_table(SWEEP_HEADER, table, comment=stamp)
    summary = [
        f"sweep f={specs[0]} g={specs[-1]} points={len(table)}",
        f"min h_slack={min(r[1] for r in table):.3e} min v_slack={min(r[2] for r in table):.3e}",
        "max rel |fd_l2 - closed_l2| = "
        f"{max(abs(r[4] - r[5]) / (1 + abs(r[5])) for r in table):.3e}",
    ]
    return Outcome(text, summary, 0 if ok else 1)


def cmd_search(cfg: RunConfig, stamp: str | None) -> Outcome:
    res = search(cfg.target, cfg.max_support, cfg.budget, cfg.seed)
    rows = []
    for k, r in enumerate(res.restarts):
        inst = f"restart={k};" + json.dumps(_decode(cfg, r.best_x), sort_keys=True)
        rows.append(ReportRow(f"search:{cfg.target}", inst, r.best_slack, 0.0, r.best_slack,
                              r.best_slack >= -res.tolerance, True))
    summary = [
        f"search target={res.target} n={cfg.max_support} evaluations={res.evaluations} "
        f"restarts={len(res.restarts)}",
        f"min slack={fmt_float(res.min_slack)} at {json.dumps(res.argmin, sort_keys=True)}",
    ]
    if res.flagged:
        summary.append(
            "FLAGGED: slack below -tolerance; re-examine this instance before drawing "
            "any conclusion"
        )
    return Outcome(_emit_rows(cfg, rows, stamp), summary, 0)


def _decode(cfg: RunConfig, x: np.ndarray) -> dict:
    return make_objective(cfg.target, cfg.max_support).decode(x)


def cmd_repro(cfg: RunConfig, stamp: str | None) -> Outcome:
    rows = [_counterexample_row(cfg)]
    summary = []
    ce = V.naive_epi_counterexample()
    summary.append(
        "counterexample (1/6, 2/3, 1/6): ULC={}  V(f)={:.10f}  V(f*f)={:.10f}  "
        "V(f*f) - 2V(f) = {:.6e}".format(
            ce.context["is_ulc"], ce.context["v"], ce.context["v_sum"],
            ce.context["additive_slack"])
    )

    trace = V.law_of_thin_numbers_trace(make_pmf([0.7, 0.3]), 30)
    for prev, cur in zip(trace, trace[1:]):
        inst = f"f=[0.7 0.3];n={cur.n}"
        rows.append(_plain_row(cfg, "thin_numbers_entropy", inst, cur.entropy, prev.entropy))
        rows.append(_plain_row(cfg, "thin_numbers_rel_entropy", inst, prev.rel_entropy,
                               cur.rel_entropy))
        rows.append(_plain_row(cfg, "thin_numbers_tv", inst, trace[0].tv_to_poisson,
                               cur.tv_to_poisson))
    summary.append("law of thin numbers, f = (0.7, 0.3):")
    summary.append(f"  {'n':>3s} {'TV to Po(0.3)':>14s} {'H':>14s} {'D':>14s}")
    for r in trace:
        summary.append(f"  {r.n:3d} {r.tv_to_poisson:14.6e} {r.entropy:14.10f} "
                       f"{r.rel_entropy:14.6e}")

    a, b = (0.7, 0.0), (0.0, 0.4)
    seg = V.check_shepp_olkin_segment(a, b, 33)
    for k, d2 in enumerate(seg.second_diffs):
        inst = f"a=[0.7 0];b=[0 0.4];t={fmt_float(seg.ts[k + 1])}"
        rows.append(_plain_row(cfg, "cor1_segment", inst, 0.0, float(d2)))
    summary.append(f"segment a=(0.7, 0) b=(0, 0.4): max second difference "
                   f"{seg.max_second:.6e} (proved regime: {seg.proved_regime})")
    summary.extend(_summarize(rows))
    return Outcome(_emit_rows(cfg, rows, stamp), summary, _theorem_exit(rows))


HANDLERS: dict[str, Callable[[RunConfig, str | None], Outcome]] = {
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "search": cmd_search,
    "repro": cmd_repro,
}


# -- argument handling -------------------------------------------------------------


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment; ``tol.NAME = x`` sets overrides."""
    out: dict = {"tol": {}}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (s.strip() for s in line.partition("="))
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key = key.replace("-", "_")
        if key.startswith("tol."):
            out["tol"][key[4:]] = _to_float(value, key)
        elif key in ("seed", "corpus_size", "max_support", "alpha_grid", "budget"):
            out[key] = _to_int(value, key)
        elif key in ("output", "format", "target"):
            out[key] = value
        elif key == "fixture":
            out[key] = [v.strip() for v in value.split(";") if v.strip()]
        elif key == "no_timestamp":
            out[key] = value.lower() in ("1", "true", "yes", "on")
        else:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    return out


def _to_int(value: str, key: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None


def _to_float(value: str, key: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{key} must be a number, got {value!r}") from None


def _parse_tol(items: Sequence[str]) -> dict[str, float]:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--tol expects NAME=VALUE, got {item!r}")
        out[name.strip()] = _to_float(value, f"tol.{name}")
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value config file")
    common.add_argument("--seed", type=int)
    common.add_argument("--corpus-size", type=int, dest="corpus_size")
    common.add_argument("--max-support", type=int, dest="max_support",
                        help="max Bernoulli summands per random pmf (search: vector length)")
    common.add_argument("--alpha-grid", type=int, dest="alpha_grid")
    common.add_argument("--output", help="report path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--fixture", action="append",
                        help="counterexample | fair-coin | binomial:n,p | poisson:rate | "
                             "bernoulli:a1,a2,...  (sweep: give twice for f and g)")
    common.add_argument("--budget", type=int, help="search evaluation budget")
    common.add_argument("--tol", action="append", default=[], metavar="CHECK=VALUE")
    common.add_argument("--no-timestamp", action="store_true", default=None, dest="no_timestamp")

    parser = argparse.ArgumentParser(
        prog="thinent", description="Numerical checks of entropy inequalities under thinning."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run the theorem suites on a seeded corpus")
    sub.add_parser("sweep", parents=[common], help="tabulate slacks and l(alpha) over an alpha grid")
    p = sub.add_parser("search", parents=[common], help="search for conjecture near-violations")
    p.add_argument("--target", choices=TARGETS)
    sub.add_parser("repro", parents=[common], help="reproduce the reference instances")
    return parser


def resolve_config(ns: argparse.Namespace) -> RunConfig:
    """Merge defaults, config file and command-line flags (flags win)."""
    merged = dict(DEFAULTS)
    merged["tol"] = {}
    if ns.config:
        from_file = read_config_file(ns.config)
        merged["tol"].update(from_file.pop("tol"))
        merged.update(from_file)
    for key in DEFAULTS:
        value = getattr(ns, key, None)
        if key == "tol":
            merged["tol"].update(_parse_tol(value or []))
        elif value is not None:
            merged[key] = value
    cfg = RunConfig(
        command=ns.command,
        seed=merged["seed"],
        corpus_size=merged["corpus_size"],
        max_support=merged["max_support"],
        alpha_grid=merged["alpha_grid"] or ALPHA_GRID[ns.command],
        tolerance_overrides=merged["tol"],
        output_path=merged["output"],
        format=merged["format"],
        fixtures=list(merged["fixture"]),
        budget=merged["budget"],
        target=merged["target"],
        no_timestamp=bool(merged["no_timestamp"]),
    )
    cfg.validate()
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(ns)
        stamp = None if cfg.no_timestamp else (
            "generated_at=" + _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        )
        outcome = HANDLERS[cfg.command](cfg, stamp)
    except ConfigError as exc:
        print(f"thinent: error: {exc}", file=sys.stderr)
        return 2
    if cfg.output_path:
        Path(cfg.output_path).write_text(outcome.text)
        summary_stream = sys.stdout
    else:
        sys.stdout.write(outcome.text)
        summary_stream = sys.stderr
    if stamp:
        print(stamp, file=summary_stream)
    for line in outcome.summary:
        print(line, file=summary_stream)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
