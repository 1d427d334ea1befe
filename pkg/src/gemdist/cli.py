"""
Command-line front end.

    gemdist eval     --named exponential --params lambda=2 --function quantile --q 0.5
    gemdist eval     --model spec.json --function pdf --points 0:5:0.5
    gemdist moments  --named maxwell --max-j 4
    gemdist fit      data.txt --method gem2
    gemdist sample   --named normal_std --count 10 --seed 1
    gemdist catalog  [--named gamma --params p=3,lambda=2]

Numbers are printed with 17 significant digits.  Exit status: 0 success,
2 bad input or specification, 3 numerical non-convergence, 4 no fit.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import cdf as cdf_mod
from . import model as model_mod
from .catalog import CATALOG, NAMES, NamedDistribution, to_gem
from .errors import (
    DegenerateSample,
    GemError,
    NoFit,
    NonConvergenceError,
)
from .estimation import FitOptions, Sample, fit_gem2_mle, fit_regression
from .model import GemModel
from .serialization import load_spec, model_to_dict
from .transforms import TransformedDistribution

EXIT_OK = 0
EXIT_SPEC = 2
EXIT_NUMERIC = 3
EXIT_NOFIT = 4

FUNCTIONS = ("pdf", "logpdf", "cdf", "ccdf", "hazard", "quantile")


class UsageError(Exception):
    """Bad command-line input (maps to exit status 2)."""


def fmt(v) -> str:
    """17 significant digits, enough to round-trip a double."""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def _json_ready(obj):
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not math.isfinite(v):
            return fmt(v)
        return float(fmt(v))
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        for part in item.split(","):
            part = part.strip()
            if not part:
                continue
            if "=" not in part:
                raise UsageError(f"--params expects key=value, got {part!r}")
            k, v = part.split("=", 1)
            try:
                out[k.strip()] = float(v)
            except ValueError:
                raise UsageError(f"--params: {k} is not a number: {v!r}") from None
    return out


def _parse_points(text: str) -> list[float]:
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError("--points range must be lo:hi:step")
        try:
            lo, hi, step = (float(p) for p in parts)
        except ValueError:
            raise UsageError(f"--points: cannot parse {text!r}") from None
        if not step > 0 or hi < lo:
            raise UsageError("--points needs step > 0 and hi >= lo")
        count = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return [lo + i * step for i in range(count)]
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"--points: cannot parse {text!r}") from None


def _load_model(args):
    if args.model and args.named:
        raise UsageError("give either --model or --named, not both")
    if args.model:
        text = args.model
        if not text.lstrip().startswith("{"):
            try:
                text = Path(text).read_text()
            except OSError as exc:
                raise UsageError(f"cannot read model file: {exc}") from None
        return load_spec(text)
    if args.named:
        return to_gem(NamedDistribution(args.named, _parse_params(args.params)))
    raise UsageError("a model is required: --model <file|json> or --named <name>")


def _emit(args, header, rows, payload):
    out = sys.stdout if not args.out else open(args.out, "w", newline="")
    try:
        if args.format == "json":
            out.write(json.dumps(_json_ready(payload), indent=2) + "\n")
        else:
            out.write(",".join(header) + "\n")
            for row in rows:
                out.write(",".join(r if isinstance(r, str) else fmt(r) for r in row) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    dist = _load_model(args)
    fn = args.function
    if fn == "quantile":
        if not args.q:
            raise UsageError("--function quantile needs --q")
        xs = _parse_points(args.q)
    else:
        if not args.points:
            raise UsageError(f"--function {fn} needs --points")
        xs = _parse_points(args.points)

    if isinstance(dist, TransformedDistribution):
        table = {"pdf": dist.pdf, "cdf": dist.cdf,
                 "logpdf": dist.log_pdf,
                 "ccdf": lambda y: 1.0 - dist.cdf(y)}
        if fn not in table:
            raise UsageError(f"{fn} is not available for transformed distributions")
        f = table[fn]
    else:
        table = {
            "pdf": lambda x: model_mod.pdf(dist, x),
            "logpdf": lambda x: model_mod.log_pdf(dist, x),
            "cdf": lambda x: cdf_mod.cdf(dist, x),
            "ccdf": lambda x: cdf_mod.ccdf(dist, x),
            "hazard": lambda x: cdf_mod.hazard(dist, x),
            "quantile": lambda q: cdf_mod.quantile(dist, cdf_mod.QuantileRequest(q)),
        }
        f = table[fn]
    values = [float(f(x)) for x in xs]
    key = "q" if fn == "quantile" else "x"
    rows = list(zip(xs, values))
    _emit(args, [key, fn], rows, {"function": fn, "rows": [{key: a, fn: b} for a, b in rows]})
    return EXIT_OK


def cmd_moments(args) -> int:
    dist = _load_model(args)
    if not isinstance(dist, GemModel):
        raise UsageError("moments are tabulated for plain models only")
    if args.max_j < 2:
        raise UsageError("--max-j must be at least 2")
    modes = model_mod.mode(dist)
    summary = [
        ("mean", model_mod.mean(dist)),
        ("variance", model_mod.variance(dist)),
        *[("mode", m) for m in modes],
        ("mode_ordinate", model_mod.mode_ordinate(dist)),
        ("skewness", model_mod.skewness(dist)),
        ("kurtosis", model_mod.kurtosis(dist)),
    ]
    raw = [(f"raw_moment_{j}", model_mod.raw_moment(dist, j)) for j in range(1, args.max_j + 1)]
    rows = summary + raw
    payload = {k: v for k, v in summary if k != "mode"}
    payload["mode"] = list(modes)
    payload["raw_moments"] = {str(j): v for j, (_, v) in enumerate(raw, start=1)}
    payload["model"] = model_to_dict(dist)
    _emit(args, ["quantity", "value"], rows, payload)
    return EXIT_OK


def cmd_fit(args) -> int:
    try:
        text = Path(args.data).read_text() if args.data != "-" else sys.stdin.read()
    except OSError as exc:
        raise UsageError(f"cannot read data file: {exc}") from None
    if args.method == "gem2":
        sample = Sample.from_text(text)
        result = fit_gem2_mle(sample, FitOptions(n0=args.n0))
    else:
        pairs = _parse_pairs(text)
        result = fit_regression(pairs, args.variant)
    out = sys.stdout if not args.out else open(args.out, "w")
    try:
        out.write(json.dumps(_json_ready(result.to_dict()), indent=2) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    if not result.converged:
        print(f"gemdist: fit did not converge (method {result.method})", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _parse_pairs(text):
    rows = []
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    for i, ln in enumerate(lines):
        cells = [c for c in ln.replace(",", " ").split()]
        try:
            vals = [float(c) for c in cells]
        except ValueError:
            if i == 0:
                continue
            raise UsageError(f"line {i + 1}: cannot parse {ln!r}") from None
        if len(vals) != 2:
            raise UsageError(f"line {i + 1}: expected two columns x,y")
        rows.append(vals)
    if not rows:
        raise UsageError("no data rows found")
    return rows


def cmd_sample(args) -> int:
    dist = _load_model(args)
    if not isinstance(dist, GemModel):
        raise UsageError("sampling needs a plain model")
    if args.count < 0:
        raise UsageError("--count must be >= 0")
    draws = cdf_mod.sample(dist, args.count, args.seed)
    _emit(args, ["x"], [(v,) for v in draws], {"seed": args.seed, "values": list(draws)})
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.named:
        d = NamedDistribution(args.named, _parse_params(args.params))
        payload = {"named": d.name, "params": d.params, "model": model_to_dict(to_gem(d))}
        _emit(args, ["key", "value"],
              [("variant", payload["model"]["variant"])]
              + [(k, json.dumps(v)) if not isinstance(v, (int, float)) else (k, v)
                 for k, v in payload["model"].items() if k != "variant"],
              payload)
        return EXIT_OK
    rows = [(name, CATALOG[name].variant, " ".join(CATALOG[name].params)) for name in NAMES]
    _emit(args, ["name", "variant", "params"], rows,
          {name: {"variant": v, "params": p.split()} for name, v, p in rows})
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_model_args(p):
    p.add_argument("--model", help="model spec: path to a JSON file or inline JSON")
    p.add_argument("--named", help=f"catalog name ({', '.join(NAMES)})")
    p.add_argument("--params", action="append", help="catalog parameters k=v[,k=v...]")


def _add_output_args(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gemdist",
                                     description="Generalized exponential model toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate pdf/cdf/ccdf/hazard/quantile")
    _add_model_args(p)
    p.add_argument("--function", choices=FUNCTIONS, default="pdf")
    p.add_argument("--points", help="lo:hi:step or comma-separated list")
    p.add_argument("--q", help="probability levels for --function quantile (comma list)")
    _add_output_args(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("moments", help="mean, variance, modes, skewness, kurtosis, raw moments")
    _add_model_args(p)
    p.add_argument("--max-j", type=int, default=4)
    _add_output_args(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("fit", help="fit a data file")
    p.add_argument("data", help="one value per line (gem2) or x,y pairs (regression); - for stdin")
    p.add_argument("--method", choices=("gem2", "regression"), default="gem2")
    p.add_argument("--variant", choices=("II", "IV"), default="II",
                   help="variant for regression fits")
    p.add_argument("--n0", type=float, default=2.0, help="Newton starting value for n")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("sample", help="inverse-transform random draws")
    _add_model_args(p)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    _add_output_args(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("catalog", help="list catalog names or show one mapping")
    p.add_argument("--named")
    p.add_argument("--params", action="append")
    _add_output_args(p)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code) if exc.code is not None else EXIT_SPEC
    try:
        return args.func(args)
    except NonConvergenceError as exc:
        op = f" in {exc.operation}" if exc.operation else ""
        print(f"gemdist: numerical non-convergence{op}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (NoFit, DegenerateSample) as exc:
        print(f"gemdist: no fit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NOFIT
    except (UsageError, GemError, ValueError) as exc:
        print(f"gemdist: error: {exc}", file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
