"""Command-line front end.

Commands::

    series   truncated C_GL,r(t) or C_M,r(t)
    limit    limiting proportion as n grows
    expand   that limit as a series in 1/q
    census   brute-force count of cyclic matrices in a stabiliser
    verify   census against the series prediction
    tlambda  the noncyclic family T_lambda

Exit status is 0 on success, 1 when a precondition fails and 2 when
``verify`` finds a mismatch. Exact values are printed as strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import ffcensus, genfun
from .exact import QRationalFunction, render_rational
from .tseries import DEFAULT_ORDER, TruncSeries

COMMANDS = ("series", "limit", "expand", "census", "verify", "tlambda")
CENSUS_COMMANDS = ("census", "verify", "tlambda")
CENSUS_PRIMES = (2, 3, 5, 7)

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_MISMATCH = 2


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    group: str = "gl"
    r: int = 0
    n: int | None = None
    q: int | None = None
    order: int = DEFAULT_ORDER
    mode: str | None = None
    format: str = "json"
    invertible: bool = False
    approx: bool = False
    max_enum: int | None = None
    shards: int = 1
    workers: int = 1

    @property
    def resolved_mode(self) -> str:
        if self.mode:
            return self.mode
        return "numeric" if self.q is not None else "symbolic"


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def validate(cfg: RunConfig) -> None:
    """Raise :class:`PreconditionError` naming the first violated condition."""
    if cfg.command not in COMMANDS:
        raise PreconditionError(f"unknown command {cfg.command!r}")
    if cfg.group not in ("gl", "m"):
        raise PreconditionError("--group must be gl or m")
    if cfg.r < 0:
        raise PreconditionError("--r must be nonnegative")
    if cfg.order < 0:
        raise PreconditionError("--order must be nonnegative")
    if cfg.format not in ("json", "csv"):
        raise PreconditionError("--format must be json or csv")
    mode = cfg.resolved_mode
    if mode not in ("numeric", "symbolic"):
        raise PreconditionError("--mode must be numeric or symbolic")
    if cfg.command in CENSUS_COMMANDS:
        if mode == "symbolic":
            raise PreconditionError(f"{cfg.command} needs numeric q; symbolic mode forbids census")
        if cfg.q not in CENSUS_PRIMES:
            raise PreconditionError(f"{cfg.command} needs --q to be a prime <= 7")
        if cfg.n is None:
            raise PreconditionError(f"{cfg.command} needs --n")
        if not 1 <= cfg.r < cfg.n:
            raise PreconditionError("census commands need 1 <= r < n")
        if cfg.shards < 1 or cfg.workers < 1:
            raise PreconditionError("--shards and --workers must be positive")
    elif mode == "numeric":
        if cfg.q is None:
            raise PreconditionError("numeric mode needs --q")
        if not _is_prime_power(cfg.q):
            raise PreconditionError("--q must be a prime power")


def _approx(x: Fraction) -> str:
    return f"{float(x):.15g}"


def _series_doc(cfg: RunConfig) -> dict:
    mode = cfg.q if cfg.resolved_mode == "numeric" else "symbolic"
    if cfg.group == "gl":
        s = genfun.c_glr_series(cfg.r, cfg.order, mode)
    else:
        s = genfun.c_mr_series(cfg.r, cfg.order, mode)
    doc = {"command": "series", "group": cfg.group, "r": cfg.r, "mode": cfg.resolved_mode,
           "q": cfg.q, "series": s.render()}
    if cfg.approx and cfg.resolved_mode == "numeric":
        doc["approx_derived"] = [_approx(c) for c in s.coeffs]
    return doc


def _limit(cfg: RunConfig) -> genfun.LimitValue:
    return genfun.gl_limit(cfg.r) if cfg.group == "gl" else genfun.m_limit(cfg.r)


def _limit_doc(cfg: RunConfig) -> dict:
    lim = _limit(cfg)
    doc = {"command": "limit", "group": cfg.group, "r": cfg.r, "limit": lim.to_json()}
    if cfg.q is not None:
        if lim.is_rational():
            value = lim.evaluate(cfg.q)
            doc["value_at_q"] = render_rational(value)
            if cfg.approx:
                doc["approx_derived"] = _approx(value)
        else:
            # the Euler product is infinite; only its finite part is exact
            doc["finite_part_at_q"] = render_rational(lim.finite_part()(cfg.q))
            doc["approx_derived"] = _approx(lim.evaluate(cfg.q))
    return doc


def _expand_doc(cfg: RunConfig) -> dict:
    series = _limit(cfg).expand(cfg.order)
    return {"command": "expand", "group": cfg.group, "r": cfg.r, "order": cfg.order,
            "expansion": series.render()}


def _census_doc(cfg: RunConfig) -> dict:
    res = ffcensus.census(cfg.q, cfg.n, cfg.r, cfg.invertible, shards=cfg.shards,
                          workers=cfg.workers, max_enum=cfg.max_enum)
    doc = {"command": "census", "census": res.to_json(), "proportion": render_rational(res.proportion)}
    if cfg.approx:
        doc["approx_derived"] = _approx(res.proportion)
    return doc


def _verify_doc(cfg: RunConfig) -> tuple[dict, bool]:
    res = ffcensus.census(cfg.q, cfg.n, cfg.r, cfg.invertible, shards=cfg.shards,
                          workers=cfg.workers, max_enum=cfg.max_enum)
    if cfg.invertible:
        predicted = genfun.c_glr_coefficient(cfg.r, cfg.n, cfg.q)
    else:
        predicted = genfun.c_mr_coefficient(cfg.r, cfg.n, cfg.q)
    ok = res.cyclic == res.total * predicted
    doc = {"command": "verify", "census": res.to_json(),
           "census_proportion": render_rational(res.proportion),
           "series_proportion": render_rational(predicted),
           "verdict": "PASS" if ok else "FAIL"}
    return doc, ok


def _tlambda_doc(cfg: RunConfig) -> dict:
    fam = ffcensus.t_lambda_family(cfg.q, cfg.n, cfg.r, cfg.max_enum)
    doc = {"command": "tlambda"}
    doc.update(fam.to_json())
    return doc


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one command; returns the exit status and the output document."""
    try:
        validate(cfg)
        if cfg.command == "series":
            return EXIT_OK, _series_doc(cfg)
        if cfg.command == "limit":
            return EXIT_OK, _limit_doc(cfg)
        if cfg.command == "expand":
            return EXIT_OK, _expand_doc(cfg)
        if cfg.command == "census":
            return EXIT_OK, _census_doc(cfg)
        if cfg.command == "verify":
            doc, ok = _verify_doc(cfg)
            return (EXIT_OK if ok else EXIT_MISMATCH), doc
        return EXIT_OK, _tlambda_doc(cfg)
    except (PreconditionError, ffcensus.SizeGuardError, ValueError) as exc:
        return EXIT_PRECONDITION, {"error": str(exc)}


# ---------------------------------------------------------------------------
# CSV

def _cell(x) -> str:
    if isinstance(x, QRationalFunction):
        return str(x)
    if isinstance(x, (int, Fraction)):
        return render_rational(x)
    return str(x)


def to_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cmd = doc.get("command")
    if cmd == "series":
        w.writerow(["power_of_t", "coefficient"])
        for k, c in enumerate(doc["series"]["coeffs"]):
            if isinstance(c, dict):
                c = str(QRationalFunction.parse(c))
            w.writerow([k, c])
    elif cmd == "expand":
        w.writerow(["power_of_q_inverse", "coefficient"])
        exp = doc["expansion"]
        for k, c in enumerate(exp["coeffs"]):
            w.writerow([exp["offset"] + k, c])
    elif cmd == "tlambda":
        w.writerow(["kind", "lambda", "gamma", "count"])
        for row in doc["per_lambda"]:
            w.writerow(["members", row["lambda"], "", row["members"]])
        for row in doc["intersections"]:
            w.writerow(["intersection", row["lambda"], row["gamma"], row["count"]])
    else:
        w.writerow(["field", "value"])
        for key, value in _flatten(doc):
            w.writerow([key, value])
    return buf.getvalue()


def _flatten(doc: dict, prefix: str = ""):
    for key, value in doc.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _flatten(value, name + ".")
        elif isinstance(value, list):
            yield name, json.dumps(value)
        else:
            yield name, value


# ---------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PRECONDITION, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", choices=("gl", "m"), default="gl",
                        help="invertible matrices (gl) or the full matrix algebra (m)")
    common.add_argument("--r", type=int, default=0, help="dimension of the invariant subspace")
    common.add_argument("--n", type=int, help="dimension of the whole space")
    common.add_argument("--q", type=int, help="field size")
    common.add_argument("--order", type=int, default=DEFAULT_ORDER, help="truncation order")
    common.add_argument("--mode", choices=("numeric", "symbolic"),
                        help="numeric needs --q; defaults to numeric when --q is given")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--invertible", action="store_true",
                        help="restrict the census to invertible matrices")
    common.add_argument("--approx", action="store_true",
                        help="also print decimal approximations (derived, not exact)")
    common.add_argument("--max-enum", type=int, help="raise the enumeration size cap")
    common.add_argument("--shards", type=int, default=1, help="split the census into shards")
    common.add_argument("--workers", type=int, default=1, help="processes for the shards")
    parser = _Parser(prog="cyclicprop", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "series": "truncated generating function",
        "limit": "limiting proportion",
        "expand": "limit expanded in powers of 1/q",
        "census": "exhaustive cyclic count",
        "verify": "census against the series",
        "tlambda": "enumerate the T_lambda families",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(command=ns.command, group=ns.group, r=ns.r, n=ns.n, q=ns.q, order=ns.order,
                     mode=ns.mode, format=ns.format, invertible=ns.invertible, approx=ns.approx,
                     max_enum=ns.max_enum, shards=ns.shards, workers=ns.workers)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    status, doc = run(cfg)
    if "error" in doc:
        print(f"cyclicprop {cfg.command}: precondition violated: {doc['error']}", file=sys.stderr)
        return status
    if cfg.format == "csv":
        sys.stdout.write(to_csv(doc))
    else:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
