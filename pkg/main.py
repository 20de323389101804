import argparse
import logging
import sys
from dataclasses import asdict
from fractions import Fraction

import numpy as np

import fields
import susy
from evaluate import Verifier, default_grid
from models.cases import CASES, Tabulated, get_case
from models.domain import AngularMomentum, RadialGrid, UnitSystem
from models.errors import AnalyticUnavailable, HyperlandauError, NoBoundStates
from models.gauges import get_gauge
from sweep import Sweeper, SWEEP_COLUMNS
from utils.helpers import (FormatterNoDuplicate, check_bounds, check_unknown_keys, float_list,
                           get_config_section)
from utils.numerics import SampledFunction
from utils.reports import FORMATS, write_report, write_table

LOG_LEVELS = list(logging._levelToName.values())
COMMANDS = ["spectrum", "eigenfunction", "field", "potentials", "zero-mode", "verify", "sweep"]
# the gauge alone, whatever the angular momentum
LAMBDA_FREE_COMMANDS = ["field"]
CONFIG_SECTION = "hyperlandau"
CASE_PARAMETERS = {"i": ["A0"],
                   "ii": ["lambda_prime", "C1", "D1"],
                   "iii": ["lambda_prime", "C2", "D2"],
                   "iv": ["lambda_prime", "C3", "D3"]}
OPTIONAL_PARAMETERS = {"D2": 0.0, "D3": 0.0}
# grid of the sampling commands
SAMPLING_GRID = RadialGrid(1e-3, 8.0, 500)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    """Bad command line or config file."""


class ArgumentParser(argparse.ArgumentParser):
    """Parser raising `UsageError` instead of exiting."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def real(text):
    """Argparse type accepting "7/2" as well as "3.5"."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("Not a real number: {}".format(text))


def _add_common_arguments(parser):
    general = parser.add_argument_group('General options')
    general.add_argument('-L', '--log-level', help="Logging levels.",
                         default="INFO", choices=LOG_LEVELS)
    general.add_argument('--config', type=str, default=None,
                         help="`.ini` file with a [{}] section of argument defaults.".format(CONFIG_SECTION))
    general.add_argument('--format', default="csv", choices=FORMATS,
                         help="Output format (verify always writes JSON).")
    general.add_argument('--out', type=str, default=None,
                         help="Output file. Standard output if not given.")

    field = parser.add_argument_group('Field options')
    field.add_argument('--case', default="i", choices=CASES,
                       help="Vector potential family.")
    field.add_argument('--A0', type=real, default=None, help="Constant field strength (case i).")
    field.add_argument('--lambda-prime', type=real, default=None,
                       help="Pole strength lambda' of cases ii-iv. Defaults to lambda.")
    field.add_argument('--C1', type=real, default=None, help="Case ii parameter.")
    field.add_argument('--D1', type=real, default=None, help="Case ii parameter.")
    field.add_argument('--C2', type=real, default=None, help="Case iii parameter.")
    field.add_argument('--D2', type=real, default=None, help="Case iii parameter.")
    field.add_argument('--C3', type=real, default=None, help="Case iv parameter.")
    field.add_argument('--D3', type=real, default=None, help="Case iv parameter.")
    field.add_argument('--table', type=str, default=None,
                       help="CSV with header `u,alpha` for the tabulated case.")

    momentum = parser.add_argument_group('Angular momentum and units')
    momentum.add_argument('--lambda', dest="lam", type=str, default=None,
                          help="Total angular momentum, e.g. `7/2`. Defaults to lambda', else 1/2.")
    momentum.add_argument('--relaxed', action='store_true', default=False,
                          help="Accept lambda that is not half-odd; outputs are flagged non-physical.")
    momentum.add_argument('--R', type=lambda v: check_bounds(v, lb=0, is_inclusive=False, name="R"),
                          default=1.0, help="Hyperboloid radius.")

    grid = parser.add_argument_group('Grid options')
    grid.add_argument('--u-min', type=lambda v: check_bounds(v, lb=0, is_inclusive=False, name="u_min"),
                      default=None, help="First grid point.")
    grid.add_argument('--u-max', type=real, default=None, help="Last grid point.")
    grid.add_argument('--n-points', '--samples', dest="n_points",
                      type=lambda v: check_bounds(v, type=int, lb=16, name="n_points"),
                      default=None, help="Number of grid points.")


def parse_arguments(args_to_parse):
    """Parse the command line arguments.

    Parameters
    ----------
    args_to_parse: list of str
        Arguments to parse (splitted on whitespaces).
    """
    description = "Bound states, zero modes and fluxes of the Dirac-Weyl equation on the hyperboloid."
    parser = ArgumentParser(description=description, formatter_class=FormatterNoDuplicate)
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=ArgumentParser)
    subparsers.required = True
    commands = {}

    spectrum = subparsers.add_parser('spectrum', formatter_class=FormatterNoDuplicate,
                                     help="Closed-form bound-state spectrum.")
    spectrum.add_argument('--physical', action='store_true', default=False,
                          help="Add energies in eV, reading R in nm.")
    spectrum.add_argument('--show-threshold', action='store_true', default=False,
                          help="Add the level sitting at the continuum threshold, flagged.")
    commands['spectrum'] = spectrum

    eigenfunction = subparsers.add_parser('eigenfunction', formatter_class=FormatterNoDuplicate,
                                          help="Sample g1,n, its partner g2,n-1 and the spinor density.")
    eigenfunction.add_argument('--n', type=lambda v: check_bounds(v, type=int, lb=0, name="n"), default=0,
                               help="Level index.")
    eigenfunction.add_argument('--normalize', action='store_true', default=False,
                               help="Normalize so that the integral of g1^2 + g2^2 is 1.")
    commands['eigenfunction'] = eigenfunction

    field = subparsers.add_parser('field', formatter_class=FormatterNoDuplicate,
                                  help="Sample alpha, b and both fluxes.")
    commands['field'] = field

    potentials = subparsers.add_parser('potentials', formatter_class=FormatterNoDuplicate,
                                       help="Sample W and the partner potentials V1, V2.")
    commands['potentials'] = potentials

    zero_mode = subparsers.add_parser('zero-mode', formatter_class=FormatterNoDuplicate,
                                      help="Sample g1,0 and report its admissibility.")
    zero_mode.add_argument('--normalize', action='store_true', default=False,
                           help="Normalize on the grid when the zero mode is admissible.")
    commands['zero-mode'] = zero_mode

    verify = subparsers.add_parser('verify', formatter_class=FormatterNoDuplicate,
                                   help="Check the closed forms against the finite-difference oracle.")
    verify.add_argument('--expect', type=float_list, default=None,
                        help="Comma separated reference eigenvalues replacing the closed forms.")
    verify.add_argument('--k', type=lambda v: check_bounds(v, type=int, lb=1, name="k"), default=None,
                        help="Number of levels. Defaults to the closed-form level count.")
    verify.add_argument('--boundary', choices=["dirichlet", "mirror"], default=None,
                        help="Boundary treatment at u_min. Chosen from the case if not given.")
    verify.add_argument('--tolerance', type=float, default=1e-3,
                        help="Relative eigenvalue tolerance.")
    verify.add_argument('--threshold-tolerance', type=float, default=1e-2,
                        help="Relative tolerance for levels near the continuum threshold.")
    verify.add_argument('--zero-tolerance', type=float, default=1e-4,
                        help="Absolute tolerance for the zero mode.")
    verify.add_argument('--intertwine-tolerance', type=float, default=1e-6,
                        help="Bound on the intertwining residual.")
    commands['verify'] = verify

    sweep = subparsers.add_parser('sweep', formatter_class=FormatterNoDuplicate,
                                  help="Admissible angular momenta and their level counts.")
    sweep.add_argument('--two-lambda-min', type=int, default=1, help="Lowest 2*lambda.")
    sweep.add_argument('--two-lambda-max', type=int, default=25, help="Highest 2*lambda.")
    sweep.add_argument('--workers', type=lambda v: check_bounds(v, type=int, lb=1, name="workers"),
                       default=1, help="Threads used for the sweep.")
    commands['sweep'] = sweep

    for subparser in commands.values():
        _add_common_arguments(subparser)

    args = parser.parse_args(args_to_parse)

    if args.config is not None:
        try:
            config = get_config_section([args.config], CONFIG_SECTION)
            check_unknown_keys(config, vars(args), source="[{}]".format(CONFIG_SECTION))
        except ValueError as e:
            raise UsageError(str(e))
        # command line flags win over the file
        commands[args.command].set_defaults(**config)
        args = parser.parse_args(args_to_parse)

    return args


def build_case(args):
    """Field case selected on the command line."""
    if args.case == "tabulated":
        if args.table is None:
            raise UsageError("--table is required with --case tabulated")
        return Tabulated.from_csv(args.table)

    params = {}
    for name in CASE_PARAMETERS[args.case]:
        value = getattr(args, name)
        if value is None and name == "lambda_prime":
            value = resolve_lambda(args, with_prime=False).value
        if value is None:
            value = OPTIONAL_PARAMETERS.get(name)
        if value is None:
            raise UsageError("--{} is required with --case {}".format(name, args.case))
        params[name] = value
    return get_case(args.case, **params)


def resolve_lambda(args, with_prime=True):
    """lambda from --lambda, else from --lambda-prime, else 1/2."""
    if args.lam is not None:
        return AngularMomentum.parse(args.lam, relaxed=args.relaxed)
    if with_prime and args.lambda_prime is not None:
        return AngularMomentum.from_value(args.lambda_prime, relaxed=args.relaxed)
    return AngularMomentum.from_value(Fraction(1, 2))


def build_grid(args, default):
    """`default` with the command line overrides applied, recorded in `args`
    so that headers echo the grid actually used.
    """
    grid = RadialGrid(default.u_min if args.u_min is None else args.u_min,
                      default.u_max if args.u_max is None else args.u_max,
                      default.n_points if args.n_points is None else args.n_points)
    vars(args).update(asdict(grid))
    return grid


def resolved_parameters(case, lam):
    """Case parameters and lambda as used, for the output headers."""
    resolved = {} if isinstance(case, Tabulated) else asdict(case)
    resolved["lam"] = None if lam is None else str(lam)
    return resolved


def cmd_spectrum(args, case, lam, logger):
    entries = susy.spectrum(case, lam, R=args.R, include_threshold=args.show_threshold)
    units = UnitSystem(args.R)
    columns = ["n", "epsilon", "E_plus", "E_minus", "is_threshold", "degeneracy"]
    if args.physical:
        columns += ["E_plus_eV", "E_minus_eV"]
    rows = []
    for entry in entries:
        row = {"n": entry.n, "epsilon": entry.epsilon,
               "E_plus": entry.dirac_energy_plus, "E_minus": entry.dirac_energy_minus,
               "is_threshold": entry.is_threshold, "degeneracy": entry.degeneracy}
        if args.physical:
            row["E_plus_eV"] = units.physical_energy_ev(entry.dirac_energy_plus)
            row["E_minus_eV"] = units.physical_energy_ev(entry.dirac_energy_minus)
        rows.append(row)
    logger.info("{} bound states for case {} at lambda={}".format(len(rows), case.tag, lam))
    write_table(rows, columns, vars(args), fmt=args.format, out=args.out, non_physical=not lam.is_physical)
    return EXIT_OK


def cmd_eigenfunction(args, case, lam, logger):
    grid = build_grid(args, SAMPLING_GRID)
    u = grid.points
    g1 = SampledFunction(grid, susy.eigenfunction_value(case, lam, args.n, "g1", u))
    if args.n == 0:
        g2 = SampledFunction(grid, np.zeros_like(u))
        if args.normalize:
            g1 = g1.normalized()
    else:
        g2 = SampledFunction(grid, susy.eigenfunction_value(case, lam, args.n, "g2", u))
        if args.normalize:
            g1 = SampledFunction(grid, g1.normalized().values / np.sqrt(2))
            g2 = SampledFunction(grid, g2.normalized().values / np.sqrt(2))
    F1, F2 = susy.spinor_assembly(g1, g2, lam, u, 0.0)
    density = susy.spinor_density(F1, F2)

    epsilon = susy.spectrum(case, lam)[args.n].epsilon
    rows = [{"u": x, "g1": a, "g2": b, "psi1_abs2_plus_psi2_abs2": d}
            for x, a, b, d in zip(u, g1.values, g2.values, density)]
    write_table(rows, ["u", "g1", "g2", "psi1_abs2_plus_psi2_abs2"], vars(args), fmt=args.format,
                out=args.out, extra={"epsilon": repr(epsilon)}, non_physical=not lam.is_physical)
    return EXIT_OK


def cmd_field(args, case, lam, logger):
    grid = build_grid(args, SAMPLING_GRID)
    u = grid.points
    columns = {"u": u,
               "alpha": fields.alpha(case, u),
               "b": fields.magnetic_field(case, u),
               "flux_circulation": fields.flux_in_quanta(case, u),
               "flux_surface": fields.flux_surface(case, u)}
    rows = [dict(zip(columns, values)) for values in zip(*columns.values())]
    write_table(rows, list(columns), vars(args), fmt=args.format, out=args.out)
    return EXIT_OK


def cmd_potentials(args, case, lam, logger):
    grid = build_grid(args, SAMPLING_GRID)
    problem = susy.RadialProblem.build(case, lam)
    u = grid.points
    columns = {"u": u,
               "W": problem.W(u),
               "V1": problem.potentials.V1(u),
               "V2": problem.potentials.V2(u)}
    extra = {"threshold": repr(problem.potentials.asymptotic_value),
             "closed_form": problem.potentials.closed_form}
    try:
        extra["levels"] = " ".join(repr(entry.epsilon) for entry in susy.spectrum(case, lam))
    except (AnalyticUnavailable, NoBoundStates) as e:
        logger.info("no closed-form levels: {}".format(e))
        extra["levels"] = "none"
    rows = [dict(zip(columns, values)) for values in zip(*columns.values())]
    write_table(rows, list(columns), vars(args), fmt=args.format, out=args.out, extra=extra,
                non_physical=not lam.is_physical)
    return EXIT_OK


def cmd_zero_mode(args, case, lam, logger):
    grid = build_grid(args, SAMPLING_GRID)
    verdict = susy.zero_mode_admissible(case, lam)
    g = SampledFunction(grid, susy.zero_mode(case, lam, grid.points))
    if args.normalize and verdict.admissible:
        g = g.normalized()
    elif args.normalize:
        logger.warning("zero mode {}: left unnormalized".format(verdict.status.value))
    extra = {"zero_mode": verdict.status.value,
             "origin_exponent": repr(verdict.origin_exponent),
             "decay_rate": repr(verdict.decay_rate)}
    if isinstance(case, Tabulated):
        no_go = susy.finite_flux_no_go(get_gauge(case).total_flux(), lam)
        extra["tail_exponent"] = repr(no_go.tail_exponent)
        extra["normalizable"] = no_go.normalizable
    rows = [{"u": x, "g10": value} for x, value in zip(grid.points, g.values)]
    write_table(rows, ["u", "g10"], vars(args), fmt=args.format, out=args.out, extra=extra,
                non_physical=not lam.is_physical)
    return EXIT_OK


def cmd_verify(args, case, lam, logger):
    grid = build_grid(args, default_grid(case, lam))
    verifier = Verifier(grid=grid, k=args.k, boundary=args.boundary, tolerance=args.tolerance,
                        threshold_tolerance=args.threshold_tolerance, zero_tolerance=args.zero_tolerance,
                        intertwine_tolerance=args.intertwine_tolerance, logger=logger)
    report = verifier(case, lam, expected=args.expect)
    write_report(report, vars(args), out=args.out)
    if not report["passed"]:
        logger.error("verification failed")
        return EXIT_VERIFY
    return EXIT_OK


def cmd_sweep(args, case, lam, logger):
    sweeper = Sweeper(case, workers=args.workers, logger=logger)
    rows = sweeper(args.two_lambda_min, args.two_lambda_max, relaxed=args.relaxed)
    write_table(rows, SWEEP_COLUMNS, vars(args), fmt=args.format, out=args.out,
                extra={"degeneracy": susy.degeneracy_descriptor(case)} if not isinstance(case, Tabulated) else None,
                non_physical=args.relaxed)
    return EXIT_OK


COMMANDS_DICT = {"spectrum": cmd_spectrum,
                 "eigenfunction": cmd_eigenfunction,
                 "field": cmd_field,
                 "potentials": cmd_potentials,
                 "zero-mode": cmd_zero_mode,
                 "verify": cmd_verify,
                 "sweep": cmd_sweep}


def main(args_to_parse=None):
    """Run one command and return its exit code.

    0 success, 1 usage error, 2 rejected parameters, 3 failed verification.
    """
    try:
        args = parse_arguments(sys.argv[1:] if args_to_parse is None else args_to_parse)
    except UsageError as e:
        print("hyperlandau: error: {}".format(e), file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return EXIT_OK if e.code in (None, 0) else EXIT_USAGE

    formatter = logging.Formatter('%(asctime)s %(levelname)s - %(funcName)s: %(message)s',
                                  "%H:%M:%S")
    logger = logging.getLogger(__name__)
    logger.setLevel(args.log_level.upper())
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    stream = logging.StreamHandler()
    stream.setLevel(args.log_level.upper())
    stream.setFormatter(formatter)
    logger.addHandler(stream)
    logger.propagate = False

    try:
        case = build_case(args)
        lam = None if args.command in LAMBDA_FREE_COMMANDS else resolve_lambda(args)
        vars(args).update(resolved_parameters(case, lam))
        if lam is not None and not lam.is_physical:
            logger.warning("lambda={} is not half-odd: results are flagged non-physical".format(lam))
        return COMMANDS_DICT[args.command](args, case, lam, logger)
    except UsageError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except (HyperlandauError, IndexError) as e:
        logger.error(str(e))
        return EXIT_DOMAIN


if __name__ == '__main__':
    sys.exit(main(sys.argv[1:]))
