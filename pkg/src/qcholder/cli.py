"""Command-line front end: ``python -m qcholder <command> [flags]``.

Exit codes: 0 success, 2 configuration error, 3 solver error, 4 bound
violation, 5 I/O error.  Output goes to ``--output``, else to
``$QCHOLDER_OUTPUT_DIR/<command>.<format>`` when that variable is set, else
to stdout.  ``--config FILE`` reads ``key=value`` lines that act as flags
placed before the command-line ones, so explicit flags win.
"""
import argparse
import os
import sys

import numpy as np

from . import geometry, reports
from .beltrami import (estimate_beltrami, principal_solution, random_beltrami,
                       equation_residual, flow_map)
from .errors import DomainError, ParameterError, SolverError
from .grid import BeltramiField, GridSpec, save_gridfield
from .maps import extremal_map, identity_map, radial_stretch_map
from .verify import (SearchBudget, check_bound, constants, harnack_probe, koebe_check,
                     lambda_circle)

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_VIOLATION, EXIT_IO = 0, 2, 3, 4, 5
OUTPUT_DIR_ENV = "QCHOLDER_OUTPUT_DIR"
COMMANDS = ("extremal", "solve", "flow", "verify", "sweep", "constants")


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _floats(text):
    try:
        return [float(t) for t in str(text).split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _complex(text):
    try:
        return complex(str(text).replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a complex number, got {text!r}")


def build_parser():
    p = _Parser(prog="qcholder", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt="json"):
        sp.add_argument("--format", choices=("csv", "json"), default=fmt)
        sp.add_argument("--output")
        sp.add_argument("--config")

    def grid(sp):
        sp.add_argument("--n", type=int, default=512)
        sp.add_argument("--L", type=float, default=4.0)

    def coefficient(sp):
        sp.add_argument("--mu", choices=("zero", "constant", "radial", "random", "extremal"),
                        default="extremal")
        sp.add_argument("--k", type=float, default=0.3, help="level of the constant coefficient")
        sp.add_argument("--seed", type=int, default=7)
        sp.add_argument("--modes", type=int, default=4)

    sp = sub.add_parser("extremal", help="tabulate the extremal disk map")
    common(sp)
    sp.add_argument("--K", type=float, default=2.0)
    sp.add_argument("--R", type=float, default=100.0)
    sp.add_argument("--radii", type=int, default=8)
    sp.add_argument("--angles", type=int, default=16)

    sp = sub.add_parser("solve", help="principal solution with residual report")
    common(sp)
    grid(sp)
    coefficient(sp)
    sp.add_argument("--K", type=float, default=2.0)
    sp.add_argument("--R", type=float, default=100.0)
    sp.add_argument("--dump", help="write f - z as a grid-field file")
    sp.add_argument("--dump-format", choices=("binary", "csv"), default="binary")

    sp = sub.add_parser("flow", help="Koebe check and Harnack probe along the flow")
    common(sp)
    grid(sp)
    coefficient(sp)
    sp.add_argument("--K", type=float, default=2.0)
    sp.add_argument("--R", type=float, default=100.0)
    sp.add_argument("--lambdas", type=int, default=8)
    sp.add_argument("--radius", type=float, default=None,
                    help="|lambda| for the Koebe samples, default (K-1)/(K+1)")
    sp.add_argument("--z", type=_complex, default=0.5)
    sp.add_argument("--w", type=_complex, default=-0.5)

    sp = sub.add_parser("verify", help="check the Hoelder bound for one map")
    common(sp)
    grid(sp)
    sp.add_argument("--map", choices=("identity", "extremal", "radial", "solver"),
                    default="extremal")
    sp.add_argument("--K", type=float, default=2.0)
    sp.add_argument("--R", type=float, default=100.0)
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--modes", type=int, default=4)
    sp.add_argument("--radii", type=int, default=64)
    sp.add_argument("--angles", type=int, default=128)
    sp.add_argument("--top", type=int, default=10)
    sp.add_argument("--rounds", type=int, default=40)
    sp.add_argument("--tol", type=float, default=None)

    sp = sub.add_parser("sweep", help="quotient/bound ratios over a (K, R) grid")
    common(sp, fmt="csv")
    sp.add_argument("--K", type=_floats, default=list(geometry.DEFAULT_K_GRID))
    sp.add_argument("--R", type=_floats, default=list(geometry.DEFAULT_R_GRID))

    sp = sub.add_parser("constants", help="comparison constants at K")
    common(sp)
    sp.add_argument("--K", type=float, default=2.0)
    return p


def _config_tokens(path):
    tokens = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            tokens += ["--" + key.replace("_", "-"), value]
    return tokens


def parse_args(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            extra = _config_tokens(args.config)
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc.strerror}")
        i = argv.index(args.command)
        args = parser.parse_args(argv[:i + 1] + extra + argv[i + 1:])
    return args


def _coefficient(args, spec):
    K = args.K
    if args.mu == "zero":
        return BeltramiField.from_function(spec, lambda z: 0 * z)
    if args.mu == "constant":
        return BeltramiField.from_function(spec, lambda z: args.k + 0 * z)
    if args.mu == "radial":
        return BeltramiField.from_function(
            spec, lambda z: geometry.radial_stretch_beltrami(z, K))
    if args.mu == "random":
        return random_beltrami(args.seed, (K - 1) / (K + 1), args.modes, spec)
    params = geometry.ExtremalParams(K, args.R)
    mu, _ = estimate_beltrami(extremal_map(params), spec, support_radius=1.0)
    return mu


def _interior(spec):
    r = np.abs(spec.z)
    return (r <= 0.9) & (np.abs(r - 1) >= 0.05)


def cmd_extremal(args):
    params = geometry.ExtremalParams(args.K, args.R)
    budget = SearchBudget(radii=args.radii, angles=args.angles)
    r = np.linspace(1 / budget.radii, 1, budget.radii)
    t = 2 * np.pi * np.arange(budget.angles) / budget.angles
    z = np.concatenate([[0j], (r[:, None] * np.exp(1j * t)[None, :]).ravel()])
    fz = geometry.extremal_disk_map(z, params)
    summary = {"K": params.K, "R": params.R, "Rprime": params.Rprime,
               "quotient": geometry.extremal_quotient(params),
               "bound": 4.0 ** (1 - 1 / params.K),
               "dilatation_bound": geometry.analytic_dilatation_bound(params)}
    if args.format == "json":
        summary["table"] = [[a.real, a.imag, b.real, b.imag] for a, b in zip(z, fz)]
        return reports.to_json(summary), EXIT_OK
    lines = [f"# {k}={v!r}" for k, v in summary.items()]
    lines.append("z_re,z_im,f_re,f_im")
    lines += [f"{a.real!r},{a.imag!r},{b.real!r},{b.imag!r}" for a, b in zip(z, fz)]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_solve(args):
    spec = GridSpec(args.n, args.L)
    mu = _coefficient(args, spec)
    f = principal_solution(mu)
    out = {"mu": args.mu, "n": spec.n, "L": spec.L, "k_inf": mu.k_inf,
           "iterations": f.info["iterations"],
           "final_increment": f.info["history"][-1] if f.info["history"] else 0.0,
           "residual": equation_residual(f, mu, _interior(spec)),
           "increments": f.info["history"]}
    if args.dump:
        save_gridfield(args.dump, f.correction, encoding=args.dump_format)
    return _summary(out, args.format), EXIT_OK


def cmd_flow(args):
    spec = GridSpec(args.n, args.L)
    K = args.K
    mu = _coefficient(args, spec)
    radius = (K - 1) / (K + 1) if args.radius is None else args.radius
    lams = lambda_circle(radius, args.lambdas)
    koebe = koebe_check(mu, K, lams)
    hp = harnack_probe(mu, args.z, args.w, K)
    out = {"mu": args.mu, "K": K, "lambda_radius": radius, "lambda_count": args.lambdas,
           "koebe_max": koebe, "koebe_ok": koebe < 2,
           "u0": hp.u0, "uk": hp.uk, "slack": hp.slack,
           "mean_value_defect": hp.mean_value_defect}
    return _summary(out, args.format), EXIT_OK


def cmd_verify(args):
    K = args.K
    budget = SearchBudget(radii=args.radii, angles=args.angles, top=args.top,
                          rounds=args.rounds)
    R = None
    if args.map == "identity":
        f = identity_map()
    elif args.map == "radial":
        f = radial_stretch_map(K)
    elif args.map == "extremal":
        params = geometry.ExtremalParams(K, args.R)
        f, R = extremal_map(params), params.R
    else:
        spec = GridSpec(args.n, args.L)
        mu = random_beltrami(args.seed, (K - 1) / (K + 1) if K > 1 else 0.0, args.modes, spec)
        f = principal_solution(mu)
    report = check_bound(f, K, budget, tol=args.tol, R=R)
    code = EXIT_VIOLATION if report.violation else EXIT_OK
    return reports.emit(report, args.format), code


def cmd_sweep(args):
    for K in args.K:
        for R in args.R:
            geometry.ExtremalParams(K, R)
    rows = reports.sweep_rows(args.K, args.R)
    code = EXIT_VIOLATION if any(r["violated"] for r in rows) else EXIT_OK
    if args.format == "json":
        return reports.to_json(rows), code
    return reports.to_csv(rows), code


def cmd_constants(args):
    table = constants(args.K)
    if args.format == "json":
        return reports.emit(table, "json"), EXIT_OK
    d = table.as_dict()
    return ",".join(d) + "\n" + ",".join(reports._fmt(v) for v in d.values()) + "\n", EXIT_OK


def _summary(out, fmt):
    if fmt == "json":
        return reports.to_json(out)
    flat = {k: v for k, v in out.items() if not isinstance(v, list)}
    return ",".join(flat) + "\n" + ",".join(
        reports._fmt(v) if isinstance(v, (bool, float, int)) else str(v)
        for v in flat.values()) + "\n"


HANDLERS = {"extremal": cmd_extremal, "solve": cmd_solve, "flow": cmd_flow,
            "verify": cmd_verify, "sweep": cmd_sweep, "constants": cmd_constants}


def _destination(args):
    if args.output:
        return args.output
    root = os.environ.get(OUTPUT_DIR_ENV)
    if root:
        return os.path.join(root, f"{args.command}.{args.format}")
    return None


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
        text, code = HANDLERS[args.command](args)
    except ConfigError as exc:
        print(f"qcholder: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ParameterError, DomainError) as exc:
        print(f"qcholder: parameter error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as exc:
        print(f"qcholder: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"qcholder: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    path = _destination(args)
    try:
        if path is None:
            sys.stdout.write(text)
        else:
            reports.write_text(path, text)
    except OSError as exc:
        print(f"qcholder: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return code
