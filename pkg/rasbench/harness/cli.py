"""Command line interface: ``rasbench`` and ``python -m rasbench``."""
import argparse
import logging

from ..partition import SCHEMES
from ..rcparams import rc_context
from .config import ExperimentConfig
from .experiment import run_experiment
from .studies import STUDIES

_log = logging.getLogger(__name__)

__all__ = ["build_parser", "parse_cli", "main"]


def _overlap_list(value):
    try:
        overlaps = [int(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma separated list of integers")
    if not overlaps or min(overlaps) < 0:
        raise argparse.ArgumentTypeError("expected non-negative overlaps")
    return overlaps


def build_parser():
    """Return the argument parser; unset options fall back to `rasbench.rcParams`."""
    parser = argparse.ArgumentParser(
        prog="rasbench",
        description="Synchronous and asynchronous Restricted Additive Schwarz testbed",
    )
    problem = parser.add_mutually_exclusive_group()
    problem.add_argument("--grid-n", type=int, help="points per side of the Laplace grid")
    problem.add_argument("--matrix-file", help="Matrix Market file of an SPD system")
    parser.add_argument("--rhs-seed", type=int, help="seed of the random right hand side")
    parser.add_argument("--subdomains", type=int, help="number of subdomains P")
    parser.add_argument("--partitioner", choices=SCHEMES)
    parser.add_argument("--partition-file", help="owner id per line, for --partitioner external")
    parser.add_argument("--overlap", type=int, help="overlap in adjacency-graph layers")
    parser.add_argument("--local-solver", choices=("direct", "cg"))
    parser.add_argument("--cg-tol", type=float, help="relative tolerance of local CG solves")
    parser.add_argument("--mode", choices=("sync", "async"))
    parser.add_argument("--detector", choices=("centralized", "decentralized"))
    parser.add_argument("--arity", type=int, help="arity of the centralized detector tree")
    parser.add_argument("--tolerance", type=float, help="global relative residual tolerance")
    parser.add_argument("--max-iter", type=int, help="iterations (sync) or local solves (async)")
    parser.add_argument(
        "--skip-unchanged",
        action="store_true",
        default=None,
        help="skip async local solves while no new ghost data arrived",
    )
    parser.add_argument("--timeout", type=float, help="rendezvous timeout in seconds")
    parser.add_argument("--runs", type=int, help="number of runs (default 1 sync, 10 async)")
    parser.add_argument("--out-dir", help="output directory")
    parser.add_argument("--netcdf", action="store_true", help="also write experiment.nc")
    parser.add_argument("--study", choices=sorted(STUDIES), help="run a study instead")
    parser.add_argument(
        "--overlaps",
        type=_overlap_list,
        default=[2, 4, 8],
        help="comma separated overlaps of the overlap study",
    )
    parser.add_argument("--rcfile", help="rasbenchrc file to read defaults from")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true")
    verbosity.add_argument("--quiet", "-q", action="store_true")
    return parser


def _to_config(parser, namespace):
    if namespace.partition_file is not None and namespace.partitioner != "external":
        parser.error("--partition-file requires --partitioner external")
    if namespace.partitioner == "external" and namespace.partition_file is None:
        parser.error("--partitioner external requires --partition-file")
    try:
        with rc_context(fname=namespace.rcfile):
            return ExperimentConfig(
                grid_n=namespace.grid_n,
                matrix_file=namespace.matrix_file,
                rhs_seed=namespace.rhs_seed,
                subdomains=namespace.subdomains,
                partitioner=namespace.partitioner,
                partition_file=namespace.partition_file,
                overlap=namespace.overlap,
                mode=namespace.mode,
                local_solver=namespace.local_solver,
                cg_rel_tol=namespace.cg_tol,
                tolerance=namespace.tolerance,
                max_iter=namespace.max_iter,
                detector=namespace.detector,
                arity=namespace.arity,
                skip_unchanged=namespace.skip_unchanged,
                timeout=namespace.timeout,
                runs=namespace.runs,
                out_dir=namespace.out_dir,
                netcdf=namespace.netcdf,
            )
    except (ValueError, OSError) as err:
        parser.error(str(err))


def parse_cli(args):
    """Map command line arguments to an `ExperimentConfig`.

    Unknown or conflicting flags exit with status 2 and a usage message.
    """
    parser = build_parser()
    return _to_config(parser, parser.parse_args(args))


def main(argv=None):
    """Run the experiment or study selected on the command line.

    Returns
    -------
    int
        0 when every run verified, 1 otherwise.
    """
    parser = build_parser()
    namespace = parser.parse_args(argv)
    package_log = logging.getLogger("rasbench")
    if namespace.verbose:
        package_log.setLevel(logging.DEBUG)
    elif namespace.quiet:
        package_log.setLevel(logging.WARNING)
    cfg = _to_config(parser, namespace)

    if namespace.study is not None:
        study = STUDIES[namespace.study]
        if namespace.study == "overlap":
            frame = study(cfg, overlaps=namespace.overlaps)
        else:
            frame = study(cfg)
        print(frame.to_string())
        return 0 if frame["failures"].sum() == 0 else 1

    aggregate = run_experiment(cfg)
    print(aggregate.summary().to_string())
    if aggregate.failures:
        _log.warning("%d of %d runs failed", aggregate.failures, aggregate.runs)
        return 1
    return 0
