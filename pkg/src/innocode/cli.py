"""Command-line front end: experiment grids, the reduction pipeline,
and the oracle suites.

`simulate` writes one CSV/JSON row per (scheme, q, users) combination;
the CSV is the plotting interface, no plotting happens here.  `reduce`
converts a DIMACS 3-CNF to the GF(2) instance JSON and optionally
decides it by enumeration.  `verify` runs a named cross-check suite.

Flag precedence: command line > --config TOML > defaults.  The default
seed is 0 unless the INNOCODE_SEED environment variable overrides it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .reduction import (
    BudgetExceededError,
    NotThreeCnfError,
    ParseError,
    brute_force_iev,
    parse_dimacs,
    project_vector,
    reduce_3sat_to_2iev,
)
from .sim import SCHEMES, Metrics, RuntimeCapError, SimConfig, run_experiment
from .verify import SUITES

CSV_HEADER = (
    "scheme,q,users,n,pe,realizations,worst_case_delay,wcd_stderr,"
    "average_delay,ad_stderr,mean_additions,mean_multiplications"
)

DEFAULTS = {"pe": 0.3, "realizations": 1000, "format": "csv"}


def _default_seed() -> int:
    return int(os.environ.get("INNOCODE_SEED", "0"))


@dataclass
class ExperimentSpec:
    """Cross-product experiment grid plus output destination."""

    n: int
    pe: float
    users: list[int]
    q: list[int]
    schemes: list[str]
    realizations: int
    seed: int
    out: str | None = None
    format: str = "csv"
    parallel: bool = False
    configs: list[tuple[str, int, int, SimConfig]] = field(init=False)

    def __post_init__(self):
        self.configs = [
            (
                scheme,
                q,
                users,
                SimConfig(
                    n_packets=self.n,
                    n_users=users,
                    q=q,
                    erasure_prob=self.pe,
                    realizations=self.realizations,
                    scheme=scheme,
                    seed=self.seed,
                    parallel=self.parallel,
                ),
            )
            for scheme in self.schemes
            for q in self.q
            for users in self.users
        ]
        if not self.configs:
            raise ValueError("empty experiment grid")


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated ints, got {text!r}") from exc


def _scheme_list(text: str) -> list[str]:
    schemes = [tok.strip() for tok in text.split(",") if tok.strip()]
    for s in schemes:
        if s not in SCHEMES:
            raise argparse.ArgumentTypeError(f"unknown scheme {s!r}")
    return schemes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="innocode")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a delay/decoding-cost experiment grid")
    sim.add_argument("--n", type=int, help="number of source packets")
    sim.add_argument("--pe", type=float, help="erasure probability")
    sim.add_argument("--users", type=_int_list, help="comma-separated user counts")
    sim.add_argument("--q", type=_int_list, help="comma-separated field sizes")
    sim.add_argument("--scheme", type=_scheme_list, help="comma-separated schemes (cofactor,rlnc)")
    sim.add_argument("--realizations", type=int, help="realizations per grid point")
    sim.add_argument("--seed", type=int, help="master seed")
    sim.add_argument("--out", help="output path (default: stdout)")
    sim.add_argument("--format", choices=("csv", "json"), help="output format")
    sim.add_argument("--config", help="TOML file supplying any missing flags")
    sim.add_argument("--parallel", action="store_true", help="fan realizations out to processes")

    red = sub.add_parser("reduce", help="3-CNF to innovative-vector instance")
    red.add_argument("--cnf", required=True, help="DIMACS CNF input path")
    red.add_argument("--solve", action="store_true", help="decide the instance by enumeration")
    red.add_argument("--out", help="instance JSON output path (default: stdout)")

    ver = sub.add_parser("verify", help="run a cross-check oracle suite")
    ver.add_argument("--suite", required=True, choices=sorted(SUITES))
    ver.add_argument("--trials", type=int, default=100)
    ver.add_argument("--seed", type=int, default=1)
    return parser


def _merged_settings(args: argparse.Namespace, parser: argparse.ArgumentParser) -> dict:
    settings: dict = {}
    if args.config:
        with open(args.config, "rb") as fh:
            settings.update(tomllib.load(fh))
    for key in ("n", "pe", "users", "q", "scheme", "realizations", "seed", "format"):
        val = getattr(args, key)
        if val is not None:
            settings[key] = val
    for key, val in DEFAULTS.items():
        settings.setdefault(key, val)
    settings.setdefault("seed", _default_seed())
    for key in ("n", "users", "q", "scheme"):
        if key not in settings:
            parser.error(f"missing required setting --{key}")
    for key in ("users", "q"):
        if isinstance(settings[key], int):
            settings[key] = [settings[key]]
    if isinstance(settings["scheme"], str):
        settings["scheme"] = [settings["scheme"]]
    return settings


def _metrics_row(scheme: str, q: int, users: int, s: dict, m: Metrics) -> dict:
    return {
        "scheme": scheme,
        "q": q,
        "users": users,
        "n": s["n"],
        "pe": s["pe"],
        "realizations": s["realizations"],
        "worst_case_delay": m.worst_case_delay,
        "wcd_stderr": m.worst_case_delay_stderr,
        "average_delay": m.average_delay,
        "ad_stderr": m.average_delay_stderr,
        "mean_additions": m.mean_total_additions,
        "mean_multiplications": m.mean_total_multiplications,
    }


def _format_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(
            "{scheme},{q},{users},{n},{pe:g},{realizations},"
            "{worst_case_delay:.6f},{wcd_stderr:.6f},{average_delay:.6f},"
            "{ad_stderr:.6f},{mean_additions:.6f},{mean_multiplications:.6f}".format(**row)
        )
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_simulate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    s = _merged_settings(args, parser)
    try:
        spec = ExperimentSpec(
            n=s["n"],
            pe=s["pe"],
            users=s["users"],
            q=s["q"],
            schemes=s["scheme"],
            realizations=s["realizations"],
            seed=s["seed"],
            out=args.out,
            format=s["format"],
            parallel=args.parallel,
        )
    except ValueError as exc:
        parser.error(str(exc))
    rows = []
    try:
        for scheme, q, users, cfg in spec.configs:
            rows.append(_metrics_row(scheme, q, users, s, run_experiment(cfg)))
    except RuntimeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(_format_rows(rows, spec.format), spec.out)
    return 0


def cmd_reduce(args: argparse.Namespace) -> int:
    try:
        with open(args.cnf) as fh:
            cnf = parse_dimacs(fh.read())
    except (OSError, ParseError, NotThreeCnfError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    inst = reduce_3sat_to_2iev(cnf)
    _emit(inst.to_json() + "\n", args.out)
    if args.solve:
        try:
            vec = brute_force_iev(inst)
        except BudgetExceededError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        if vec is None:
            print("no innovative vector exists (UNSAT-equivalent)")
        else:
            print("solution: " + " ".join(str(int(v)) for v in vec))
            assignment = project_vector(vec)
            print(
                "assignment: "
                + " ".join(
                    f"x{i + 1}={'T' if val else 'F'}" for i, val in enumerate(assignment)
                )
            )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    results = SUITES[args.suite](args.trials, args.seed)
    failed = False
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {res.name}: {res.detail}")
        failed = failed or not res.passed
    return 1 if failed else 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate":
        return cmd_simulate(args, parser)
    if args.command == "reduce":
        return cmd_reduce(args)
    return cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())
