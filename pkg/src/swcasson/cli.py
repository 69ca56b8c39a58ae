"""Command-line front end: ``swcasson {alex,sw,eta,omega,lambda,verify,batch}``."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import clifford, eta, forms, frames, spectral
from .corpus import random_corpus, sw_identity_corpus
from .invariant import LambdaInput, lambda_sw
from .knots import KnotParseError, alexander_of, parse_braid, parse_seifert, read_knot_table
from .laurent import format_rational, parse_rational
from .sw3d import sw_identity_check, sw_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
CACHE_ENV = "LAMBDA_SW_CACHE"


class InputError(Exception):
    pass


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2, default=_json_default))


def _json_default(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


# -- knot input ---------------------------------------------------------------------------

def _add_knot_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seifert", metavar="FILE", help="Seifert matrix as JSON or CSV ('-' for stdin)")
    p.add_argument("--braid", metavar="WORD", help='braid word such as "1 -2 1 -2"')
    p.add_argument("--strands", type=int, help="strand count for --braid")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _knot_from_args(args):
    if (args.seifert is None) == (args.braid is None):
        raise InputError("give exactly one of --seifert FILE or --braid WORD --strands N")
    if args.seifert is not None:
        return parse_seifert(_read_text(args.seifert))
    if args.strands is None:
        raise InputError("--braid needs --strands")
    return parse_braid(args.braid, args.strands)


def _knot_label(args) -> str:
    if args.seifert is not None:
        return os.path.basename(args.seifert)
    return f"braid[{args.strands}]: {args.braid}"


# -- simple commands ----------------------------------------------------------------------

def cmd_alex(args) -> int:
    _emit(alexander_of(_knot_from_args(args)).to_json())
    return EXIT_OK


def cmd_sw(args) -> int:
    alex = alexander_of(_knot_from_args(args))
    _emit(sw_report(_knot_label(args), alex, args.k_range))
    return EXIT_OK


def _geometry(args) -> eta.BundleGeometry:
    try:
        return eta.BundleGeometry(args.l, args.chi, args.r, args.h_half)
    except eta.GeometryError as exc:
        raise InputError(str(exc)) from exc


def cmd_eta(args) -> int:
    g = _geometry(args)
    _emit({"l": g.l, "chi": g.chi, "r": format_rational(g.r), "h_half": g.h_half,
           "eta_dirac": format_rational(eta.eta_dirac(g)),
           "eta_signature": format_rational(eta.eta_signature(g)),
           "regime_caveat": eta.REGIME_CAVEAT})
    return EXIT_OK


def cmd_omega(args) -> int:
    res = eta.correction_term(eta.CorrectionInput(_geometry(args), args.hd))
    _emit(res.to_json())
    return EXIT_OK


def _lambda_options(args) -> dict:
    return {"h_dirac": args.hd, "h_half": args.h_half, "r": format_rational(args.r), "chi": args.chi}


def _lambda_report(knot, options: dict) -> dict:
    inp = LambdaInput(knot, options["h_dirac"], options["h_half"],
                      parse_rational(options["r"]), options["chi"])
    return lambda_sw(inp).to_json()


def cmd_lambda(args) -> int:
    _emit(_lambda_report(_knot_from_args(args), _lambda_options(args)))
    return EXIT_OK


# -- verify -------------------------------------------------------------------------------

def verify_transgression(args) -> tuple[bool, dict]:
    dims = (args.dim,) if args.dim else (2, 3, 4)
    records = []
    for inst in forms.random_instances(args.seed, args.trials, dims=dims):
        res = forms.check_instance(inst)
        rec = {"seed": inst.seed, "chart_dim": inst.chart_dim, "so_dim": inst.so_dim,
               "arity": inst.arity}
        rec.update(res.to_json())
        if not res.ok:
            rec["instance"] = inst.to_json()
        records.append(rec)
    ok = all(r["lemma"] and r["transgression"] and r["d_squared"] and r["bianchi"] for r in records)
    return ok, {"suite": "transgression", "seed": args.seed, "trials": args.trials,
                "instances": records, "ok": ok}


def verify_dirac_path(args) -> tuple[bool, dict]:
    tr = clifford.dirac_path_transcript(args.deta_reading, args.t_power)
    tr["suite"] = "dirac-path"
    return tr["holds"], tr


def verify_eq1_torsion(args) -> tuple[bool, dict]:
    out = frames.torsion_check_eq1()
    transcript = {
        "suite": "eq1-torsion",
        "matrix_antisymmetric": out["matrix_antisymmetric"],
        "literal": out["literal"].to_json(),
        "variant": out["variant"].to_json(),
        "other_convention": {
            "literal": frames.torsion_outcome(False, frames.TORSION_MINUS).to_json(),
            "variant": frames.torsion_outcome(True, frames.TORSION_MINUS).to_json(),
        },
        "fiber_metric_compatible": frames.fiber_metric_compatibility_check(),
    }
    # the sign anomaly is a documented discrepancy, not a failure
    return out["matrix_antisymmetric"], transcript


def verify_spectral(args) -> tuple[bool, dict]:
    grid = spectral.load_grid(args.grid_file) if args.grid_file else spectral.default_grid()
    out = spectral.grid_check(grid, args.precision)
    adiabatic = {}
    for eps in ("1", "1/2", "1/1000"):
        ok, recs = spectral.adiabatic_threshold_check(parse_rational(eps), [0, 1],
                                                      [Fraction(1, 4), Fraction(1, 2), 1],
                                                      dps=args.precision, detail=True)
        adiabatic[eps] = {"ok": ok, "P": "r", "grid": recs}
    out["adiabatic"] = adiabatic
    out["suite"] = "spectral"
    ok = out["all_hold"] and all(v["ok"] for v in adiabatic.values())
    return ok, out


def verify_correction(args) -> tuple[bool, dict]:
    grid = eta.correction_r_independence_grid()
    ok = all(rec["r_independent"] and rec.get("matches_l1_form", True) for rec in grid)
    return ok, {"suite": "correction-r-independence", "records": grid, "ok": ok}


def verify_sw_identity(args) -> tuple[bool, dict]:
    if args.corpus == "builtin":
        items = sw_identity_corpus(args.seed)
    else:
        items = []
        for lineno, row in read_knot_table(_read_text(args.corpus)):
            if isinstance(row, KnotParseError):
                raise InputError(f"line {lineno}: {row}")
            try:
                items.append((row.name, row.presentation()))
            except KnotParseError as exc:
                raise InputError(f"line {lineno}: {exc}") from exc
        items += random_corpus(args.seed)
    records = []
    for name, knot in items:
        rec = {"knot": name}
        rec.update(sw_identity_check(alexander_of(knot)))
        records.append(rec)
    ok = all(r["ok"] for r in records)
    return ok, {"suite": "sw-identity", "knots": records, "ok": ok}


SUITES = {
    "transgression": verify_transgression,
    "dirac-path": verify_dirac_path,
    "eq1-torsion": verify_eq1_torsion,
    "spectral": verify_spectral,
    "correction-r-independence": verify_correction,
    "sw-identity": verify_sw_identity,
}


def cmd_verify(args) -> int:
    ok, transcript = SUITES[args.suite](args)
    _emit(transcript)
    return EXIT_OK if ok else EXIT_FAIL


# -- batch + cache ------------------------------------------------------------------------

def cache_key(presentation, options: dict) -> str:
    if hasattr(presentation, "to_json"):
        pres = {"type": type(presentation).__name__, "data": presentation.to_json()}
    else:
        pres = presentation
    return hashlib.sha256(canonical({"knot": pres, "options": options}).encode()).hexdigest()


class ReportCache:
    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, key + ".json")

    def get(self, key: str):
        try:
            with open(self._path(key)) as fh:
                entry = json.load(fh)
        except (OSError, ValueError):
            return None
        return entry.get("value") if entry.get("key") == key else None

    def put(self, key: str, value: dict) -> None:
        entry = {"key": key, "created": time.time(), "value": value}
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(canonical(entry))
            os.replace(tmp, self._path(key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def process_row(lineno: int, row, options: dict, cache: ReportCache | None) -> tuple[dict, str]:
    """Return ``(output object, status)`` with status ``computed``, ``cached`` or ``error``."""
    if isinstance(row, Exception):
        return {"row": lineno, "name": None, "error": str(row)}, "error"
    out = {"row": lineno, "name": row.name}
    try:
        knot = row.presentation()
        key = cache_key(knot, options)
        if cache is not None:
            hit = cache.get(key)
            if hit is not None:
                out["report"] = hit
                return out, "cached"
        report = _lambda_report(knot, options)
    except (KnotParseError, ValueError, ArithmeticError) as exc:
        out["error"] = str(exc)
        return out, "error"
    if cache is not None:
        cache.put(key, report)
    out["report"] = report
    return out, "computed"


def run_batch(text: str, options: dict, cache: ReportCache | None = None, jobs: int = 1):
    rows = list(read_knot_table(text))
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = list(pool.map(lambda item: process_row(item[0], item[1], options, cache), rows))
    lines = [canonical(obj) for obj, _ in results]
    summary = {"rows": len(results)}
    for status in ("computed", "cached", "error"):
        summary[status] = sum(1 for _, s in results if s == status)
    return lines, summary


def cmd_batch(args) -> int:
    text = _read_text(args.input)
    cache_dir = args.cache or os.environ.get(CACHE_ENV)
    cache = ReportCache(cache_dir) if cache_dir else None
    lines, summary = run_batch(text, _lambda_options(args), cache, args.jobs)
    try:
        with open(args.out, "w") as fh:
            fh.write("".join(line + "\n" for line in lines))
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc.strerror}") from exc
    summary["cache_hits"] = summary.pop("cached")
    summary["recomputed"] = summary["computed"] > 0
    print(canonical(summary))
    return EXIT_OK


# -- parser -------------------------------------------------------------------------------

def _add_geometry_args(p, with_hd: bool) -> None:
    p.add_argument("--l", type=int, default=1, help="Euler number of the circle bundle")
    p.add_argument("--chi", type=int, default=0, help="Euler characteristic of the base")
    p.add_argument("--r", type=_rational, default=Fraction(1), help="fiber length")
    p.add_argument("--h-half", dest="h_half", type=int, default=0)
    if with_hd:
        p.add_argument("--hd", type=int, default=0, help="dim ker of the Dirac operator")


def _add_lambda_args(p) -> None:
    p.add_argument("--hd", type=int, default=0)
    p.add_argument("--h-half", dest="h_half", type=int, default=0)
    p.add_argument("--r", type=_rational, default=Fraction(1))
    p.add_argument("--chi", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swcasson", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alex", help="normalized Alexander polynomial")
    _add_knot_args(p)
    p.set_defaults(func=cmd_alex)

    p = sub.add_parser("sw", help="3-dimensional SW invariants in all chambers")
    _add_knot_args(p)
    p.add_argument("--k-range", type=int, default=None)
    p.set_defaults(func=cmd_sw)

    p = sub.add_parser("eta", help="eta invariants of the circle bundle")
    _add_geometry_args(p, with_hd=False)
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("omega", help="correction term")
    _add_geometry_args(p, with_hd=True)
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("lambda", help="full lambda_SW report")
    _add_knot_args(p)
    _add_lambda_args(p)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--dim", type=int, choices=(2, 3, 4), default=None)
    p.add_argument("--precision", type=int, default=spectral.DEFAULT_DPS)
    p.add_argument("--grid-file", default=None)
    p.add_argument("--corpus", default="builtin")
    p.add_argument("--deta-reading", choices=frames.DETA_READINGS, default=frames.DETA_LITERAL)
    p.add_argument("--t-power", type=int, choices=(1, 2), default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("batch", help="lambda_SW for every row of a knot table")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--cache", default=None, help=f"cache directory (default ${CACHE_ENV})")
    p.add_argument("--jobs", type=int, default=1)
    _add_lambda_args(p)
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, KnotParseError, eta.GeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
