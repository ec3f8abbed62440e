"""
Command line entry point: nilpotent-cortex <command> [options].

Exit status is 0 for success or a true verdict, 1 for a negative verdict or a
failed computation, 2 for usage and parse errors.
"""
import argparse
import logging
import sys
from dataclasses import dataclass

import pandas as pd

from nilpotent_cortex import __version__, parameters
from nilpotent_cortex.coadjoint import jump_indices, orbit_dimension, tangent_space
from nilpotent_cortex.cortex import (CortexReport, codim_classifier, invariance_report,
                                     membership_report, perturbed_witness, witness_sequence)
from nilpotent_cortex.cortex_sampler import CortexSampler, cloud_coverage, sphere_reference
from nilpotent_cortex.data import (cloud_to_csv, dump_algebra, format_covector, load_algebra,
                                   parse_covector, parse_rational_list, write_output)
from nilpotent_cortex.errors import CortexError, ParseError
from nilpotent_cortex.gd_family import (basis_labels, cross_section_map, in_cross_section,
                                        invariant_generators, make_gd)
from nilpotent_cortex.liealg import center, validate
from nilpotent_cortex.utils import format_rational

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    """
    Everything one command run depends on; equal configs give byte-identical output.
    """
    command: str
    file: str = None
    d: int = None
    ell: str = None
    epsilons: str = None
    perturb: str = None
    seed: int = parameters.DEFAULT_SEED
    trials: int = parameters.CLASSIFIER_TRIALS
    samples: int = 10000
    scales: str = None
    window: str = None
    out: str = None
    fmt: str = 'text'
    verbose: bool = False

    @classmethod
    def from_namespace(cls, args):
        values = {name: getattr(args, name) for name in cls.__dataclass_fields__
                  if name not in ('command', 'fmt') and getattr(args, name, None) is not None}
        return cls(command=args.command, fmt=args.format, **values)


def _dual_table(labels, vectors):
    return pd.DataFrame([[format_rational(v) for v in vector] for vector in vectors],
                        columns=[f"{label}*" for label in labels])

def _d(config):
    make_gd(config.d)
    return config.d

# ----------------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------------

def cmd_validate(config):
    alg = load_algebra(config.file)
    report = validate(alg)
    z = center(alg)
    if not report.jacobi:
        verdict = f"NOT A LIE ALGEBRA: Jacobi fails on basis triple {report.witness}"
    elif report.nilpotency_class is None:
        verdict = "NOT NILPOTENT: the lower central series stabilises above 0"
    elif report.two_step:
        verdict = f"TWO-STEP NILPOTENT: Jacobi ✓, class {report.nilpotency_class}"
    else:
        verdict = f"NOT TWO-STEP: nilpotency class {report.nilpotency_class}"
    residuals = {
        'jacobi': 'pass' if report.jacobi else 'fail',
        'nilpotency class': ('not nilpotent' if report.nilpotency_class is None
                             else report.nilpotency_class),
        'lower central dims': ",".join(str(k) for k in report.lower_central_dims),
        'dim center': z.dim,
    }
    table = pd.DataFrame([[format_rational(v) for v in b] for b in z.basis],
                         columns=list(alg.basis))
    return CortexReport(f"Structure constants {config.file} (dim {alg.dim})", verdict,
                        report.two_step, residuals, table)

def cmd_gd(config):
    return dump_algebra(make_gd(config.d).algebra)

def cmd_orbit(config):
    alg = load_algebra(config.file)
    ell = parse_covector(config.ell, alg.dim)
    dim = orbit_dimension(alg, ell)
    tangent = tangent_space(alg, ell)
    return CortexReport("Coadjoint orbit", f"orbit dimension {dim}", True,
                        {'orbit dimension': dim}, _dual_table(alg.basis, tangent.basis))

def cmd_jump(config):
    alg = load_algebra(config.file)
    ell = parse_covector(config.ell, alg.dim)
    jumps = jump_indices(alg, ell)
    listed = ", ".join(str(j) for j in jumps)
    return CortexReport("Jump indices", f"jump indices {{{listed}}}", True,
                        {'count': len(jumps),
                         'labels': ",".join(alg.basis[j - 1] for j in jumps)})

def cmd_invariants(config):
    d = _d(config)
    return invariance_report(make_gd(d).algebra, invariant_generators(d))

def cmd_cortex_test(config):
    d = _d(config)
    return membership_report(d, parse_covector(config.ell, 4 * d))

def cmd_witness(config):
    d = _d(config)
    target = parse_covector(config.ell, 4 * d)
    epsilons = parse_rational_list(config.epsilons, 'epsilons')
    if config.perturb is not None:
        etas = parse_rational_list(config.perturb, 'perturb')
        return perturbed_witness(d, target, etas, epsilons)
    _, report = witness_sequence(d, target, epsilons)
    return report

def cmd_cloud(config):
    alg = load_algebra(config.file)
    scales = parameters.SCALES if config.scales is None else tuple(
        float(v) for v in parse_rational_list(config.scales, 'scales'))
    window = parameters.WINDOW if config.window is None else tuple(
        float(v) for v in parse_rational_list(config.window, 'window'))
    if len(window) != 2:
        raise ParseError("window needs two values r_lo,r_hi", 'window')
    sampler = CortexSampler(samples=config.samples, scales=scales, window=window,
                            random_state=config.seed).fit(alg)
    if config.fmt == 'csv':
        return cloud_to_csv(sampler.cloud_)
    coverage = cloud_coverage(sampler.cloud_, sphere_reference(alg, 1000, config.seed))
    return CortexReport(
        f"Approximate cortex ({config.samples} samples, seed {config.seed})",
        f"cloud of {sampler.accepted_} normalized images", True,
        {'accepted': sampler.accepted_, 'sphere coverage': coverage}, numeric=True)

def cmd_classify(config):
    alg = load_algebra(config.file)
    verdict = codim_classifier(alg, config.trials, config.seed)
    report = verdict.to_report()
    # an inconclusive verdict is still a successful run
    report.passed = True
    return report

def cmd_cross_section(config):
    d = _d(config)
    ell = parse_covector(config.ell, 4 * d)
    image = cross_section_map(d, ell)
    return CortexReport(
        f"Cross-section map P_{d}",
        f"P_d(ell) = {format_covector(image)}",
        in_cross_section(d, image),
        {'ell in cross-section': 'yes' if in_cross_section(d, ell) else 'no'},
        _dual_table(basis_labels(d), [image]))

COMMANDS = {
    'validate': cmd_validate,
    'gd': cmd_gd,
    'orbit': cmd_orbit,
    'jump': cmd_jump,
    'invariants': cmd_invariants,
    'cortex-test': cmd_cortex_test,
    'witness': cmd_witness,
    'cloud': cmd_cloud,
    'classify': cmd_classify,
    'cross-section': cmd_cross_section,
}

# ----------------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=parameters.DEFAULT_SEED,
                        help="random seed (default 0)")
    common.add_argument('--format', choices=('text', 'record', 'csv'), default='text',
                        help="text report, JSON record or CSV table")
    common.add_argument('--out', help="write to this file instead of stdout")
    common.add_argument('--verbose', action='store_true', help="debug logging on stderr")

    parser = argparse.ArgumentParser(
        prog='nilpotent-cortex',
        description="Coadjoint orbits and the cortex of two-step nilpotent Lie algebras. "
                    "Covectors are comma-separated rationals in basis order, or @path; "
                    "write a leading minus as the Unicode minus or after '--'.")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest='command', required=True)

    p = subparsers.add_parser('validate', parents=[common],
                              help="Jacobi identity, nilpotency class and center of a file")
    p.add_argument('file')

    p = subparsers.add_parser('gd', parents=[common],
                              help="write the structure constants of g_d")
    p.add_argument('d', type=int)

    for name, text in (('orbit', "orbit dimension and tangent space at ell"),
                       ('jump', "jump indices of the skew form at ell")):
        p = subparsers.add_parser(name, parents=[common], help=text)
        p.add_argument('file')
        p.add_argument('ell')

    p = subparsers.add_parser('invariants', parents=[common],
                              help="invariant generators of g_d and their derivations")
    p.add_argument('d', type=int)

    p = subparsers.add_parser('cortex-test', parents=[common],
                              help="exact cortex membership in g_d*")
    p.add_argument('d', type=int)
    p.add_argument('ell')

    p = subparsers.add_parser('witness', parents=[common],
                              help="witness schedule for a cortex point of g_d*")
    p.add_argument('d', type=int)
    p.add_argument('ell', help="target covector")
    p.add_argument('epsilons', help="positive scales, e.g. 1/10,1/100")
    p.add_argument('--perturb', metavar='ETAS',
                   help="perturbation parameters, one per scale (degenerate targets)")

    p = subparsers.add_parser('cloud', parents=[common],
                              help="seeded floating point cloud of normalized images")
    p.add_argument('file')
    p.add_argument('--samples', type=int, default=10000)
    p.add_argument('--scales', help="scale schedule, e.g. 1/10,1/100,1/1000")
    p.add_argument('--window', help="accepted norm range r_lo,r_hi")

    p = subparsers.add_parser('classify', parents=[common],
                              help="codimension criterion on the generic layer")
    p.add_argument('file')
    p.add_argument('--trials', type=int, default=parameters.CLASSIFIER_TRIALS)

    p = subparsers.add_parser('cross-section', parents=[common],
                              help="cross-section map P_d on the layer z_1 != 0")
    p.add_argument('d', type=int)
    p.add_argument('ell')
    return parser

def render(result, fmt):
    if isinstance(result, str):
        return result, True
    if fmt == 'record':
        return result.to_record(), result.passed
    if fmt == 'csv':
        return result.to_csv(), result.passed
    return result.to_text(), result.passed

def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return stop.code

    config = RunConfig.from_namespace(args)
    logging.basicConfig(level=logging.DEBUG if config.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)
    logger.debug("Running %s", config)

    try:
        text, passed = render(COMMANDS[config.command](config), config.fmt)
        write_output(text, config.out)
    except ParseError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE
    except (CortexError, ValueError) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_NEGATIVE
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_NEGATIVE
    return EXIT_OK if passed else EXIT_NEGATIVE

if __name__ == '__main__':
    sys.exit(main())
