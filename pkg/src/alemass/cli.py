"""``mass`` command-line front end.

Exit status: 0 success, 1 input error, 2 extrapolation did not converge,
3 a mathematical verdict failed. Configuration precedence is
flags > ``--config`` file (flat ``key = value`` lines) > built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import admint, homcalc, kahlergeo, lebrun, metrics, reproduce

EXIT_OK, EXIT_INPUT, EXIT_NONCONVERGENCE, EXIT_VERDICT = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for non-convergence
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# -- output ------------------------------------------------------------------


def _canon(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.12g}") + 0.0 if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return _canon(obj.item())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, 12 significant digits, non-finite as null."""
    return json.dumps(_canon(obj), sort_keys=True, indent=2, allow_nan=False)


def _num(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(f"{x:.12g}") + 0.0)


# -- parameter handling ------------------------------------------------------


def parse_value(text: str):
    """``"3"`` -> 3, ``"2.5"`` -> 2.5, ``"1,2"`` -> [1, 2], ``"0,0,0;1,0,0"`` -> nested lists."""
    text = text.strip()
    if ";" in text:
        return [parse_value(part) for part in text.split(";") if part.strip()]
    if "," in text:
        return [parse_value(part) for part in text.split(",") if part.strip()]
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    return text


def read_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    out = {}
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{num}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = val
    return out


def _family_params(extra: list[str]) -> dict:
    params = {}
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--"):
            raise InputError(f"unexpected argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, val = key.split("=", 1)
        else:
            val = next(it, None)
            if val is None:
                raise InputError(f"family parameter --{key} needs a value")
        params[key.replace("-", "_")] = parse_value(val)
    return params


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc


# -- subcommands -------------------------------------------------------------


def cmd_topo(args) -> int:
    obj = _load_json(args.input)
    try:
        data = homcalc.intersection_data_from_json(obj)
    except KeyError as exc:
        raise InputError(f"{args.input}: missing field {exc}") from exc
    cert = homcalc.solve_chern_coefficients(data)
    pairing = homcalc.chern_area_pairing(data)
    if "scalar_integral" in obj:
        mass = homcalc.topological_mass_general(2, float(pairing), float(obj["scalar_integral"]))
    else:
        mass = homcalc.topological_mass_surface(data)
    report = {"mass": mass, "pairing": float(pairing), "a": list(cert.a), "rank": data.rank}
    if args.format == "json":
        print(dumps(report))
    elif args.format == "csv":
        print("mass,pairing")
        print(f"{_num(mass)},{_num(float(pairing))}")
    else:
        print(_num(mass))
    return EXIT_OK


ADM_DEFAULTS = {"format": "table", "tolerance": 1e-6, "method": "adm", "extrapolation": "richardson"}
ADM_KEYS = ("family", "schedule", "rho0", "quad_order", "format", "tolerance", "method", "extrapolation")


def _resolve_adm(args, extra) -> tuple[dict, dict]:
    """Merge flags, config file and defaults for ``adm``."""
    config = read_config(args.config)
    opts = {}
    for key in ADM_KEYS:
        flag = getattr(args, key)
        if flag is not None:
            opts[key] = flag
        elif key in config:
            opts[key] = config[key]
        elif key in ADM_DEFAULTS:
            opts[key] = ADM_DEFAULTS[key]
        else:
            opts[key] = None
    params = {k: parse_value(v) for k, v in config.items() if k not in ADM_KEYS}
    params.update(_family_params(extra))
    if not opts["family"]:
        raise InputError("adm needs --family (see `mass families`)")
    if opts["format"] not in ("table", "json", "csv"):
        raise InputError(f"unknown format {opts['format']!r}")
    if opts["method"] not in ("adm", "logdet"):
        raise InputError(f"unknown method {opts['method']!r}")
    try:
        opts["tolerance"] = float(opts["tolerance"])
        if opts["rho0"] is not None:
            opts["rho0"] = float(opts["rho0"])
        if opts["quad_order"] is not None:
            opts["quad_order"] = int(opts["quad_order"])
        if isinstance(opts["schedule"], str):
            sched = parse_value(opts["schedule"])
            opts["schedule"] = [float(r) for r in (sched if isinstance(sched, list) else [sched])]
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad numeric option: {exc}") from exc
    return opts, params


def cmd_adm(args, extra) -> int:
    opts, params = _resolve_adm(args, extra)
    chart = metrics.build_chart(opts["family"], **params)
    schedule = opts["schedule"]
    if schedule is None:
        schedule = admint.default_schedule(chart, opts["rho0"])
    run = admint.adm_mass if opts["method"] == "adm" else admint.kahler_logdet_mass
    est = run(chart, schedule=schedule, grid=opts["quad_order"], extrapolation=opts["extrapolation"],
              tol=opts["tolerance"])
    if opts["format"] == "json":
        report = est.to_dict()
        report.update(family=opts["family"], params=params, method=opts["method"])
        print(dumps(report))
    elif opts["format"] == "csv":
        sys.stdout.write(admint.convergence_table_csv(est))
    else:
        print(f"{_num(est.value)} ± {est.error_estimate:.1e}")
        sys.stdout.write(admint.convergence_table_csv(est))
    if not est.converged:
        print(f"mass: extrapolation did not reach tolerance {opts['tolerance']:g} "
              f"(error estimate {est.error_estimate:.3g})", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    return EXIT_OK


def cmd_lebrun(args) -> int:
    if args.zero_instance is not None:
        fam = lebrun.zero_mass_instance(args.zero_instance)
    else:
        if args.ell is None:
            raise InputError("lebrun needs --ell (with optional --distances) or --zero-instance ELL")
        dist = parse_value(args.distances) if args.distances else []
        fam = lebrun.LebrunFamily(args.ell, tuple(dist if isinstance(dist, list) else [dist]))
    mass = lebrun.closed_form_mass(fam)
    cross = lebrun.homcalc_cross_check(fam)
    agree = all(abs(cross[k] - float(mass)) <= 1e-12 for k in ("on_section", "intersection_matrix"))
    if args.format == "json":
        print(dumps({"ell": fam.ell, "distances": list(fam.distances), "mass": mass,
                     "cross_check": cross, "consistent": agree}))
    else:
        print(_num(mass))
        print(f"cross-check: on_section={_num(cross['on_section'])} "
              f"intersection_matrix={_num(cross['intersection_matrix'])} "
              f"{'consistent' if agree else 'INCONSISTENT'}")
    return EXIT_OK if agree else EXIT_VERDICT


def cmd_penrose(args) -> int:
    try:
        divisor = kahlergeo.divisor_from_json(_load_json(args.input))
    except KeyError as exc:
        raise InputError(f"{args.input}: missing field {exc}") from exc
    verdict = kahlergeo.penrose_check(args.mass, divisor, args.scalar_flat, args.tolerance)
    if args.format == "json":
        print(dumps(verdict.to_dict()))
    else:
        print(f"mass {_num(verdict.mass)} bound {_num(verdict.bound)}: {verdict.message}")
    return EXIT_OK if verdict.ok else EXIT_VERDICT


def cmd_families(args) -> int:
    names = sorted(metrics.FAMILIES)
    if args.format == "json":
        print(dumps({"families": names}))
    else:
        print("\n".join(names))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    only = [k for part in (args.only or []) for k in part.split(",") if k]
    known = [k for k, *_ in reproduce.CRITERIA]
    unknown = [k for k in only if k not in known]
    if unknown:
        raise InputError(f"unknown criteria {unknown}; known: {', '.join(known)}")
    results = reproduce.run_criteria(only or None, args.mutate)
    if args.format == "json":
        print(dumps([{"key": r.key, "title": r.title, "checks": r.citation, "passed": r.passed,
                      "details": r.details, "seconds": r.seconds} for r in results]))
    else:
        for r in results:
            print(f"{r.line()}  [{r.citation}]")
            if args.verbose or not r.passed:
                for d in r.details:
                    print(f"    {d}")
        print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERDICT


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mass", description="Mass of ALE manifolds: topological, ADM and log-det routes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp, default="table"):
        sp.add_argument("--format", choices=("table", "json", "csv"), default=default)

    sp = sub.add_parser("topo", help="mass from intersection-form data (JSON)")
    sp.add_argument("--input", required=True)
    fmt(sp)

    sp = sub.add_parser("adm", help="numerical ADM mass of a registered family; extra --key value pairs "
                                    "are passed to the family")
    sp.add_argument("--family")
    sp.add_argument("--schedule", help="comma-separated radii")
    sp.add_argument("--rho0", type=float)
    sp.add_argument("--quad-order", type=int, dest="quad_order")
    sp.add_argument("--format", choices=("table", "json", "csv"))
    sp.add_argument("--tolerance", type=float)
    sp.add_argument("--method", choices=("adm", "logdet"))
    sp.add_argument("--extrapolation", choices=("richardson", "linear"))
    sp.add_argument("--config")

    sp = sub.add_parser("lebrun", help="closed-form mass of the hyperbolic-ansatz family")
    sp.add_argument("--ell", type=int)
    sp.add_argument("--distances", help="comma-separated hyperbolic distances")
    sp.add_argument("--zero-instance", type=int, metavar="ELL", dest="zero_instance")
    fmt(sp)

    sp = sub.add_parser("penrose", help="compare a mass with the canonical-divisor bound")
    sp.add_argument("--input", required=True)
    sp.add_argument("--mass", type=float, required=True)
    sp.add_argument("--scalar-flat", action="store_true", dest="scalar_flat")
    sp.add_argument("--tolerance", type=float)
    fmt(sp)

    sp = sub.add_parser("families", help="list registered metric families")
    fmt(sp)

    sp = sub.add_parser("reproduce", help="run the acceptance matrix")
    sp.add_argument("--only", action="append", help="criterion key(s), comma-separated")
    sp.add_argument("--mutate", choices=("sign", "gamma"))
    sp.add_argument("-v", "--verbose", action="store_true")
    fmt(sp)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    if extra and args.command != "adm":
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        if args.command == "adm":
            return cmd_adm(args, extra)
        return {"topo": cmd_topo, "lebrun": cmd_lebrun, "penrose": cmd_penrose,
                "families": cmd_families, "reproduce": cmd_reproduce}[args.command](args)
    except (InputError, ValueError, TypeError) as exc:
        print(f"mass {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
