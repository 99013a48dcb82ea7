"""
Command line entry point: finsler verify | geodesic | maxwell.

Exit codes: 0 every check passed, 1 a check failed or an evaluation broke down, 2 usage or configuration error.
"""
import argparse
import logging
import sys
import time

from progress.bar import Bar

import finsler
from finsler.cli.config import RunConfig, parse_vector
from finsler.cli.report import Report, write_csv, write_json
from finsler.electrodynamics import (
    correspondence_report, current_divergence_riemann, field_strength_finsler, field_strength_riemann,
    first_equation_residual_finsler, first_equation_residual_riemann, source_current_finsler, source_current_riemann,
)
from finsler.enums import Convention, Family, Kind, Mode
from finsler.errors import ConfigError, ContractError, FinslerError, ParseDiagnostic
from finsler.geometry import arc_length, energy, integrate, validate, verify_connections
from finsler.geometry.core import sampler_for
from finsler.objects import Check, Status

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _common(parser):
    parser.add_argument("--config", help="JSON run config merged over the shipped defaults")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override one named tolerance")
    parser.add_argument("--output", default=None)
    parser.add_argument("--format", choices=("json", "csv"), default=None)
    parser.add_argument("--verbose", action="store_true")


def _structure_flags(parser):
    parser.add_argument("--structure", help="name of a shipped structure")
    parser.add_argument("--family", choices=[f.id for f in Family.all() if f != Family.EXPRESSION])
    parser.add_argument("--expr", help="expression for F over x0.. and y0..")
    parser.add_argument("--dim", type=int, default=None)
    parser.add_argument("--kind", choices=[k.id for k in Kind.all()])


def build_parser():
    parser = argparse.ArgumentParser(prog="finsler", description="Finsler geometry and geometrized Maxwell checks.")
    parser.add_argument("--version", action="version", version=finsler.VERSION)
    sub = parser.add_subparsers(dest="command")
    sub.required = True

    verify = sub.add_parser("verify", help="Run the identity suite for a structure")
    _common(verify)
    _structure_flags(verify)

    geodesic = sub.add_parser("geodesic", help="Integrate a geodesic and write it as CSV")
    _common(geodesic)
    _structure_flags(geodesic)
    geodesic.add_argument("--x0", help="initial point, e.g. 0,1")
    geodesic.add_argument("--y0", help="initial direction, e.g. 1,0")
    geodesic.add_argument("--t-end", dest="t_end", type=float, default=1.0)
    geodesic.add_argument("--steps", type=int, default=None)
    geodesic.add_argument("--summary", help="path for the JSON summary, default is stdout")

    maxwell = sub.add_parser("maxwell", help="Evaluate the Maxwell equations for a potential")
    _common(maxwell)
    _structure_flags(maxwell)
    maxwell.add_argument("--mode", choices=[m.id for m in Mode.all()], default=Mode.RIEMANN.id)
    maxwell.add_argument("--potential", help="name of a shipped potential")
    maxwell.add_argument("--x", help="the point, e.g. 0.3,0.1,0,0")
    maxwell.add_argument("--y", help="the direction, needed in finsler mode")
    maxwell.add_argument("--convention", choices=[c.id for c in Convention.all()], default=None)
    maxwell.add_argument("--c", type=float, default=None)
    return parser


def _progress(label, count):
    return Bar(label, max=count)


def cmd_verify(args, run):
    """
    The identity suite of finsler_core plus the connection identities for the configured structure.
    """
    if run.format != "json":
        raise ConfigError("verify only writes JSON reports.")
    s = run.structure()
    sampler = sampler_for(s, None, run.config)
    bar = _progress("Verifying {0}".format(s.label), 2 * sampler.count)
    core = validate(s, sampler=sampler, config=run.config, on_sample=bar.next)
    connections = verify_connections(s, sampler=sampler, config=run.config, on_sample=bar.next)
    bar.finish()
    checks = core.checks + connections.checks
    skipped = sorted(set(i for c in checks for i in c.skipped))
    return Report(command="verify", checks=checks, results={"structure": s.describe(), "skipped": skipped})


def cmd_geodesic(args, run):
    """
    Integrate one geodesic, write the CSV trajectory and return the summary.
    """
    if not run.output:
        raise ConfigError("geodesic needs --output for the CSV trajectory.")
    s = run.structure()
    reference_x, reference_y = s.reference_point()
    x0 = parse_vector(args.x0, "--x0") if args.x0 else reference_x
    y0 = parse_vector(args.y0, "--y0") if args.y0 else reference_y
    cfg = run.integrator(steps=args.steps)
    path = integrate(s, x0, y0, args.t_end, cfg)
    write_csv(run.output, path.header(), path.to_rows())
    x_end, y_end = path.endpoint
    results = {
        "structure": s.describe(),
        "x0": x0, "y0": y0, "t_end": args.t_end, "steps": cfg.steps, "samples": len(path.times),
        "endpoint": {"x": x_end, "y": y_end},
        "drift": path.drift,
        "truncated": path.truncated,
        "message": path.message,
        "energy": energy(path),
        "arc_length": arc_length(path) if path.positive else None,
        "csv": run.output,
    }
    checks = [Check(name="drift", residual=path.drift, tolerance=cfg.drift_tolerance, samples=len(path.times))]
    return Report(command="geodesic", checks=checks, results=results)


def _point(text, name):
    if not text:
        raise ConfigError("{0} is required.".format(name))
    return parse_vector(text, name)


def cmd_maxwell(args, run):
    """
    Field strength, first equation and current in one of the three modes.
    """
    if run.format != "json":
        raise ConfigError("maxwell only writes JSON reports.")
    if run.structure_spec is None:
        run.structure_spec = "minkowski"
    s = run.structure()
    A = run.potential()
    mode = Mode.match_by_id(args.mode)
    tol = run.config["tolerances"]
    results = {"structure": s.describe(), "potential": A.describe(), "mode": mode.id}
    if mode == Mode.CORRESPONDENCE:
        convention = Convention.match_by_id(args.convention or Convention.PAPER_RIEMANN.id)
        bar = _progress("Comparing pipelines", run.sampler().count)
        report = correspondence_report(A, s, config=run.config, convention=convention, on_sample=bar.next)
        bar.finish()
        results.update({"convention": convention, "discrepancies": report.discrepancies})
        return Report(command="maxwell", checks=report.checks, results=results)
    x = _point(args.x, "--x")
    if mode == Mode.RIEMANN:
        convention = Convention.match_by_id(args.convention or Convention.PAPER_RIEMANN.id)
        y_ref = parse_vector(args.y, "--y") if args.y else None
        field = field_strength_riemann(A, s, x, y_ref)
        residual = first_equation_residual_riemann(A, x)
        current = source_current_riemann(A, s, x, y_ref, convention=convention)
        results.update({
            "field": field.to_dict(), "current": current.to_dict(),
            "current_divergence": current_divergence_riemann(A, s, x, y_ref, convention=convention),
        })
        checks = [Check(name="first_equation", residual=float(abs(residual).max()), tolerance=tol["construction"])]
        return Report(command="maxwell", checks=checks, results=results)
    y = _point(args.y, "--y")
    convention = Convention.match_by_id(args.convention or Convention.PAPER_FINSLER.id)
    field = field_strength_finsler(A, s, x, y)
    residual = first_equation_residual_finsler(A, s, x, y)
    current = source_current_finsler(A, s, x, y, convention=convention)
    results.update({"field": field.to_dict(), "first_equation": residual.to_dict(), "current": current.to_dict()})
    # the cyclic sum is only known to vanish when nothing depends on y
    tolerance = tol["construction"] if s.riemannian and not A.y_dependent else None
    checks = [Check(name="first_equation", residual=residual.max_abs, tolerance=tolerance)]
    return Report(command="maxwell", checks=checks, results=results)


COMMANDS = {
    "verify": cmd_verify,
    "geodesic": cmd_geodesic,
    "maxwell": cmd_maxwell,
}


def _configure_logging(verbose):
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None):
    """
    Run one command.
    :param argv: The arguments without the program name, default is sys.argv[1:].
    :return: The exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    _configure_logging(args.verbose)
    started = time.perf_counter()
    try:
        run = RunConfig.from_args(args)
        report = COMMANDS[args.command](args, run)
    except (ConfigError, ParseDiagnostic, ContractError) as e:
        logger.error("%s", e)
        sys.stderr.write("error: {0}\n".format(e))
        return EXIT_USAGE
    except FinslerError as e:
        logger.error("%s", e)
        sys.stderr.write("failed: {0}\n".format(e))
        return EXIT_FAIL
    report.command = args.command
    report.version = finsler.VERSION
    report.schema_version = run.config["report"]["schema_version"]
    report.config = run.echo()
    report.wall_time = time.perf_counter() - started
    target = getattr(args, "summary", None) if args.command == "geodesic" else run.output
    write_json(report.to_dict(), target)
    if report.status != Status.PASS.id:
        logger.warning("%s reported a failure", args.command)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
