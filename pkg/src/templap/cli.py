"""Command-line reproduction tool.

    templap --example {1|2|3} --beta B --lambda L --scheme S,S1
            --levels J1..J2 --solver {cg|pcg-ichol|pcg-tchan|dense}
            [--tol 1e-9] [--band 10] [--no-cbeta]
            [--out PATH --format {csv|markdown}] [--radius R]
            [--max-iter N] [--config FILE]

A config file holds the same keys as plain ``key = value`` lines; explicit
flags override it.  Exit codes: 0 success, 2 non-converged solve, 1 usage
error.
"""

from __future__ import annotations

import argparse
import sys

from .convergence import ExperimentConfig, emit_report, format_report, run_convergence_study
from .core import SchemeParams

USAGE_ERROR, NONCONVERGED = 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _parse_levels(text: str) -> tuple[int, ...]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        j1, j2 = int(lo), int(hi)
        if j2 < j1:
            raise ValueError(f"empty level range {text!r}")
        return tuple(range(j1, j2 + 1))
    return (int(text),)


def _parse_scheme(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"scheme must be 'S,S1', got {text!r}")
    return int(parts[0]), int(parts[1])


def _read_config_file(path) -> dict[str, str]:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key] = value
    return values


def _build_parser() -> _Parser:
    p = _Parser(prog="templap",
                description="Convergence studies for the tempered fractional "
                            "Laplacian finite-difference solver.")
    p.add_argument("--config", metavar="FILE", help="key = value file with the same keys")
    p.add_argument("--example", type=int, choices=(1, 2, 3))
    p.add_argument("--beta", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--scheme", metavar="S,S1")
    p.add_argument("--levels", metavar="J1..J2")
    p.add_argument("--solver", choices=("cg", "pcg-ichol", "pcg-tchan", "dense"))
    p.add_argument("--tol", type=float)
    p.add_argument("--band", type=int)
    p.add_argument("--no-cbeta", action="store_true", default=None,
                   help="assemble the unnormalized operator")
    p.add_argument("--radius", type=float, help="half-width of the domain for example 3")
    p.add_argument("--max-iter", type=int)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--format", choices=("csv", "markdown"))
    return p


_DEFAULTS = {"lam": 0.0, "scheme": "0,0", "solver": "pcg-tchan", "tol": 1e-9,
             "band": 10, "no_cbeta": False, "radius": 1.0, "max_iter": None,
             "format": "csv"}

_CONFIG_KEYS = {"example": int, "beta": float, "lambda": float, "scheme": str,
                "levels": str, "solver": str, "tol": float, "band": int,
                "no-cbeta": lambda v: v.lower() in ("1", "true", "yes"),
                "radius": float, "max-iter": int, "out": str, "format": str}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0

    merged = dict(_DEFAULTS)
    try:
        if args.config:
            for key, value in _read_config_file(args.config).items():
                if key not in _CONFIG_KEYS:
                    raise ValueError(f"unknown config key {key!r}")
                merged[key.replace("-", "_").replace("lambda", "lam")] = _CONFIG_KEYS[key](value)
        for key in ("example", "beta", "lam", "scheme", "levels", "solver", "tol",
                    "band", "no_cbeta", "radius", "max_iter", "out", "format"):
            value = getattr(args, key, None)
            if value is not None:
                merged[key] = value

        if merged.get("example") is None or merged.get("beta") is None \
                or merged.get("levels") is None:
            parser.error("--example, --beta, and --levels are required")
        s, s1 = _parse_scheme(str(merged["scheme"]))
        levels = _parse_levels(str(merged["levels"]))
        params = SchemeParams(beta=float(merged["beta"]), lam=float(merged["lam"]),
                              s=s, s1=s1, apply_cbeta=not merged["no_cbeta"])
        config = ExperimentConfig(example=int(merged["example"]), params=params,
                                  levels=levels, solver=str(merged["solver"]),
                                  tolerance=float(merged["tol"]), band=int(merged["band"]),
                                  radius=float(merged["radius"]),
                                  max_iter=merged["max_iter"])
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_ERROR
    except (ValueError, OSError) as exc:
        print(f"templap: error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    try:
        report = run_convergence_study(config)
        if merged.get("out"):
            emit_report(report, str(merged["format"]), str(merged["out"]))
        else:
            print(format_report(report, "markdown"), end="")
    except (ValueError, OSError) as exc:
        print(f"templap: error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    return 0 if report.all_converged else NONCONVERGED


if __name__ == "__main__":
    raise SystemExit(main())
