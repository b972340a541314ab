"""Command-line front end.

Usage examples::

    hus-lab constant --operator bernstein-schurer -n 2 -p 1
    hus-lab sweep --operator bernstein-schurer --n-range 1..3 --p-range 0..1
    hus-lab lorentz-rep --input poly.json --degree 4
    hus-lab bound-check --degree 12 --trials 10000 --seed 42
    hus-lab apply --operator lorentz -n 2 --function 'taylor:[0,0,1]' --at 1+0i
    hus-lab empirical --operator bernstein-schurer -n 2 -p 1 --trials 1000 --seed 7 --certificate
    hus-lab instability --operator lorentz -n 5

Exit codes: 0 success, 1 usage or parse error, 2 domain-parameter error,
3 internal property violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .operators import KINDS, MonomialPoly, OperatorSpec, SzaszValue, Taylor, apply, kind_is_polynomial
from .polyalg import DomainError, ExactComplex, coefficient_bound_check, evaluate, to_bernstein
from .serialization import (
    FormatError,
    dumps,
    function_from_json,
    lorentz_report_to_json,
    parse_rational,
    poly_from_json,
    poly_to_json,
    rational_str,
    report_to_json,
    sweep_csv,
)
from .stability import closed_K, empirical_inverse_norm, lorentz_instability_report

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_PROPERTY = 0, 1, 2, 3
SEED_ENV = "HUS_LAB_SEED"
SZASZ_RULE = "max(64, ceil(8*n*x))"


class UsageError(Exception):
    pass


class PropertyViolation(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- argument helpers ----------------------------------------------------------


def parse_complex(text: str):
    """Parse "a", "bi" or "a+bi" with rational ("p/q") or decimal parts."""
    s = text.replace(" ", "")
    if not s:
        raise FormatError("empty complex literal")
    if not s.endswith("i"):
        return parse_rational(s)
    body = s[:-1]
    cut = None
    for i in range(len(body) - 1, 0, -1):
        if body[i] in "+-" and body[i - 1] not in "eE":
            cut = i
            break
    re_txt, im_txt = ("0", body) if cut is None else (body[:cut], body[cut:])
    if im_txt in ("", "+"):
        im_txt = "1"
    elif im_txt == "-":
        im_txt = "-1"
    return ExactComplex.make(parse_rational(re_txt), parse_rational(im_txt))


def parse_range(text: str) -> range:
    """Inclusive integer range "lo..hi" (or "lo:hi", or a single value)."""
    for sep in ("..", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            break
    else:
        lo = hi = text
    try:
        return range(int(lo), int(hi) + 1)
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}") from exc


def parse_function(text: str):
    """--function value: VARIANT:JSON, e:J for the monomial x^J, or a JSON file path."""
    variant, sep, payload = text.partition(":")
    if sep and variant in ("taylor", "poly", "grid", "step", "e"):
        if variant == "e":
            return MonomialPoly.monomial(int(payload))
        try:
            data = json.loads(payload)
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad JSON in --function: {exc}") from exc
        if isinstance(data, list):
            key = "coeffs" if variant in ("taylor", "poly") else None
            if key is None:
                raise FormatError(f"{variant} input needs an object with its fields")
            data = {key: data}
        return function_from_json({"variant": variant, **data})
    path = Path(text)
    if not path.is_file():
        raise FormatError(f"--function {text!r} is neither VARIANT:JSON nor a file")
    return function_from_json(_load_json(path))


def _load_json(path: Path):
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _seed(args) -> int:
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from exc
    return args.seed


def _spec(args, kind: str | None = None) -> OperatorSpec:
    if kind is None:
        if not args.operator:
            raise UsageError("--operator is required")
        kind = args.operator[0]
    return OperatorSpec(
        kind,
        args.n,
        p=args.p,
        a=args.a,
        b=args.b,
        truncation=getattr(args, "truncation", None),
    )


def _config(args) -> dict:
    cfg = {
        "seed": _seed(args),
        "trials": args.trials,
        "norm": args.norm,
        "ks_denominator": args.ks_denominator,
        "szasz_truncation": SZASZ_RULE,
    }
    if args.norm == "disk":
        cfg["radius"] = args.radius
    return cfg


def _emit(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _json_only(args) -> None:
    if args.format != "json":
        raise UsageError(f"{args.command} only supports --format json")


def _closed(args, spec):
    report = closed_K(spec, ks_denominator=args.ks_denominator, norm=args.norm, radius=args.radius)
    report.config.update(_config(args))
    return report


# --- subcommands -------------------------------------------------------------


def cmd_constant(args) -> int:
    report = _closed(args, _spec(args))
    if args.format == "csv":
        _emit(args, sweep_csv([report]))
    else:
        _emit(args, dumps(report_to_json(report)))
    return EXIT_OK


def cmd_sweep(args) -> int:
    if not args.operator:
        raise UsageError("--operator is required")
    n_range, p_range = parse_range(args.n_range), parse_range(args.p_range)
    if len(n_range) == 0 or len(p_range) == 0:
        raise DomainError("empty n or p range")
    kinds = sorted({OperatorSpec(k, 1).kind for item in args.operator for k in item.split(",")})
    reports = []
    for kind in kinds:
        ps = p_range if kind in ("bernstein_schurer", "kantorovich_schurer") else range(1)
        for n in n_range:
            for p in ps:
                spec = OperatorSpec(kind, n, p=p, a=args.a if kind == "stancu" else 0,
                                    b=args.b if kind == "stancu" else 0)
                reports.append(_closed(args, spec))
    if args.format == "json":
        _emit(args, dumps({"config": _config(args), "rows": [report_to_json(r) for r in reports]}))
    else:
        comments = [f"{k}={v}" for k, v in _config(args).items()]
        _emit(args, sweep_csv(reports, comments))
    return EXIT_OK


def cmd_lorentz_rep(args) -> int:
    _json_only(args)
    poly = poly_from_json(_load_json(Path(args.input)))
    if not isinstance(poly, MonomialPoly):
        raise FormatError("lorentz-rep expects a monomial-basis polynomial")
    degree = poly.degree if args.degree is None else args.degree
    _emit(args, dumps(poly_to_json(to_bernstein(poly, degree))))
    return EXIT_OK


def cmd_bound_check(args) -> int:
    _json_only(args)
    seed = _seed(args)
    trials = 0 if args.chebyshev_only else args.trials
    if args.degree < 1 or (trials < 1 and not args.chebyshev_only):
        raise DomainError("bound-check needs degree >= 1 and trials >= 1")
    res = coefficient_bound_check(args.degree, trials, seed)
    out = {
        "degree": res.degree,
        "trials": res.trials,
        "seed": res.seed,
        "max_ratio": res.max_ratio if trials else None,
        "bound_holds": res.bound_holds,
        "chebyshev_ratio": res.chebyshev_ratio,
        "chebyshev_norm": res.chebyshev_norm,
        "chebyshev_equality": res.chebyshev_equality,
        "passed": res.passed,
        "config": _config(args),
    }
    _emit(args, dumps(out))
    if not res.passed:
        raise PropertyViolation("coefficient bound or Chebyshev equality failed")
    return EXIT_OK


def _scalar_out(v):
    if isinstance(v, ExactComplex):
        return {"re": rational_str(v.real), "im": rational_str(v.imag)}
    if isinstance(v, Fraction):
        return {"re": rational_str(v), "im": "0/1"}
    v = complex(v)
    return {"re": v.real, "im": v.imag}


def cmd_apply(args) -> int:
    _json_only(args)
    spec = _spec(args)
    f = parse_function(args.function)
    at = parse_complex(args.at) if args.at is not None else None
    out = {"operator": spec.to_dict()}
    if kind_is_polynomial(spec.kind) or spec.kind == "lorentz":
        if spec.kind == "lorentz" and not isinstance(f, (Taylor, MonomialPoly)):
            raise DomainError("the Lorentz operator needs taylor or poly input")
        image = apply(spec, f, ks_denominator=args.ks_denominator)
        out["image"] = poly_to_json(image)
        if at is not None:
            value = evaluate(image, at)
            out["at"] = _scalar_out(at)
            out["value"] = _scalar_out(value)
            out["value_float"] = complex(value).real if complex(value).imag == 0 else [
                complex(value).real, complex(value).imag]
    else:
        if at is None:
            raise UsageError(f"{spec.kind} needs --at")
        if isinstance(at, ExactComplex):
            raise DomainError(f"{spec.kind} is defined for real x only")
        result = apply(spec, f, at)
        out["at"] = _scalar_out(at)
        if isinstance(result, SzaszValue):
            out["value"] = result.value
            out["tail_bound"] = result.tail_bound
            out["truncation"] = result.truncation
        else:
            out["value"] = _scalar_out(result)
            out["value_float"] = float(result)
    out["config"] = _config(args)
    _emit(args, dumps(out))
    return EXIT_OK


def cmd_empirical(args) -> int:
    _json_only(args)
    spec = _spec(args)
    seed = _seed(args)
    res = empirical_inverse_norm(
        spec,
        args.trials,
        seed,
        args.certificate,
        norm=args.norm,
        radius=args.radius,
        ks_denominator=args.ks_denominator,
    )
    closed = _closed(args, spec)
    if args.norm == "interval" and res.value > closed.K_float * (1 + 1e-9):
        raise PropertyViolation(f"sampled {res.value} exceeds closed form {closed.K_float}")
    out = {
        "operator": spec.to_dict(),
        "empirical_lower_bound": res.value,
        "max_sampled": res.max_sampled,
        "K_exact": rational_str(closed.K_exact),
        "K_float": closed.K_float,
        "certificate_included": res.certificate_included,
        "witness": poly_to_json(res.witness),
        "shards": res.shards,
        "notes": closed.notes if args.norm == "disk" else [],
        "config": _config(args),
    }
    _emit(args, dumps(out))
    return EXIT_OK


def cmd_instability(args) -> int:
    _json_only(args)
    spec = _spec(args)
    if spec.kind == "lorentz":
        out = lorentz_report_to_json(lorentz_instability_report(spec.n))
    else:
        out = report_to_json(_closed(args, spec))
    out["config"] = _config(args)
    _emit(args, dumps(out))
    return EXIT_OK


COMMANDS = {
    "constant": cmd_constant,
    "sweep": cmd_sweep,
    "lorentz-rep": cmd_lorentz_rep,
    "bound-check": cmd_bound_check,
    "apply": cmd_apply,
    "empirical": cmd_empirical,
    "instability": cmd_instability,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--operator", action="append", metavar="KIND",
                        help=f"one of {', '.join(k.replace('_', '-') for k in KINDS)}")
    common.add_argument("-n", type=int, default=1)
    common.add_argument("-p", type=int, default=0)
    common.add_argument("-a", type=parse_rational, default=Fraction(0))
    common.add_argument("-b", type=parse_rational, default=Fraction(0))
    common.add_argument("--norm", choices=("interval", "disk"), default="interval")
    common.add_argument("--radius", type=float, default=1.0)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=1000)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--output", metavar="PATH")
    common.add_argument("--ks-denominator", choices=("printed", "classical"), default="printed")

    parser = _Parser(prog="hus-lab", description="Hyers-Ulam stability of positive linear operators")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("constant", parents=[common], help="closed-form stability report")
    sw = sub.add_parser("sweep", parents=[common], help="table of constants over n and p")
    sw.add_argument("--n-range", default="1..10")
    sw.add_argument("--p-range", default="0..0")
    lr = sub.add_parser("lorentz-rep", parents=[common], help="monomial polynomial to Lorentz basis")
    lr.add_argument("--input", required=True)
    lr.add_argument("--degree", type=int)
    bc = sub.add_parser("bound-check", parents=[common], help="random check of the coefficient bound")
    bc.add_argument("--degree", type=int, required=True)
    bc.add_argument("--chebyshev-only", action="store_true")
    ap = sub.add_parser("apply", parents=[common], help="apply an operator to a function")
    ap.add_argument("--function", required=True)
    ap.add_argument("--at")
    ap.add_argument("--truncation", type=int)
    em = sub.add_parser("empirical", parents=[common], help="sampled inverse-norm lower bound")
    em.add_argument("--certificate", action="store_true")
    sub.add_parser("instability", parents=[common], help="instability evidence")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command == "sweep" else "json"
    try:
        if args.norm == "disk" and not args.radius > 0:
            raise DomainError("--radius must be positive")
        return COMMANDS[args.command](args)
    except (UsageError, FormatError) as exc:
        print(f"hus-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"hus-lab: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PropertyViolation as exc:
        print(f"hus-lab: property violation: {exc}", file=sys.stderr)
        return EXIT_PROPERTY


if __name__ == "__main__":
    sys.exit(main())
