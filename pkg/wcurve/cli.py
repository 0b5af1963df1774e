"""
Command-line interface: `wcurve <verb> [options]`.

Manifest verbs either name their objects with selector flags
(`wcurve twist-check --manifest m.json --cochain tau0`) or, without
selectors, run every task of that verb listed in the manifest. `run`
executes all manifest tasks. The process exit code is that of the first
failing task, 0 when everything passes.
"""

__all__ = [
    "RunConfig",
    "parse_window",
    "parse_ring",
    "build_parser",
    "main",
]

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from wcurve.errors import ManifestError, ManifestSyntaxError
from wcurve.golden import EXAMPLES
from wcurve.manifest import (build_objects, compile_report,
                             get_default_definition, get_exit_code_definition,
                             get_verb_definitions, parse_manifest,
                             read_manifest)
from wcurve.properties import SUITES
from wcurve.ring import LocalRingSpec
from wcurve.tasks import (error_payload, run_examples, run_selftest_tasks,
                          run_tasks)
from wcurve.version import __version__

logger = logging.getLogger(__name__)

SELECTORS = ('object', 'second', 'third', 'cochain', 'module', 'target',
             'coalgebra', 'algebra', 'retraction', 'section', 'functor',
             'budget', 'max_len')


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by every verb."""
    manifest: Optional[str] = None
    window: Optional[Tuple[int, int]] = None
    weight_cap: Optional[int] = None
    seed: int = 0
    json: bool = False
    verbosity: int = 0
    jobs: int = 1

    @property
    def overrides(self) -> Dict[str, Any]:
        return {'window': self.window, 'weight_cap': self.weight_cap}


def parse_window(text: str) -> Tuple[int, int]:
    """'lo..hi' -> (lo, hi) with lo <= hi."""
    lo, sep, hi = text.partition('..')
    try:
        window = (int(lo), int(hi))
    except ValueError:
        sep = ''
    if not sep or window[0] > window[1]:
        raise argparse.ArgumentTypeError(f'window must be lo..hi, got '
                                         f'{text!r}')
    return window


def parse_ring(text: str) -> LocalRingSpec:
    """'kind:p:N', e.g. 'eps:5:2' or 'padic:3:4'."""
    parts = text.split(':')
    try:
        kind, p, N = parts[0], int(parts[1]), int(parts[2])
        if len(parts) != 3:
            raise ValueError(text)
        return LocalRingSpec(kind, p, N)
    except (IndexError, ValueError) as e:
        raise argparse.ArgumentTypeError(f'ring must be kind:p:N ({e})')


def _join_window(argv: Sequence[str]) -> List[str]:
    # '-3..3' would otherwise be read as an option
    out, it = [], iter(argv)
    for arg in it:
        if arg == '--window':
            value = next(it, None)
            out.append(arg if value is None else f'--window={value}')
        else:
            out.append(arg)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--manifest', help='path to the JSON manifest')
    common.add_argument('--window', type=parse_window,
                        help='degree window lo..hi')
    common.add_argument('--weight-cap', type=int, dest='weight_cap',
                        help='weight (or word length) cap')
    common.add_argument('--seed', type=int,
                        default=get_default_definition('seed'),
                        help='seed for randomized checks')
    common.add_argument('--json', action='store_true',
                        help='print the JSON report instead of a table')
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for INFO, -vv for DEBUG logging')
    common.add_argument('--jobs', type=int, default=1,
                        help='run independent tasks in N threads')

    selectors = argparse.ArgumentParser(add_help=False)
    for name in SELECTORS:
        flag = '--' + name.replace('_', '-')
        if name in ('budget', 'max_len'):
            selectors.add_argument(flag, dest=name, type=int)
        else:
            selectors.add_argument(flag, dest=name)

    parser = argparse.ArgumentParser(
        prog='wcurve', description='Exact checks for weakly curved DG and '
        'A-infinity algebras over truncated local rings.')
    parser.add_argument('--version', action='version',
                        version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='verb', required=True)
    for verb in get_verb_definitions():
        sub.add_parser(verb, parents=[common, selectors],
                       help=f'{verb} tasks')
    sub.add_parser('run', parents=[common], help='every manifest task')

    examples = sub.add_parser('examples', help='worked examples')
    ex_sub = examples.add_subparsers(dest='action', required=True)
    ex_run = ex_sub.add_parser('run', parents=[common])
    ex_run.add_argument('name', choices=EXAMPLES + ('all',))
    ex_run.add_argument('--ring', type=parse_ring,
                        help='coefficient ring kind:p:N (default eps:5:2)')

    selftest = sub.add_parser('selftest', parents=[common],
                              help='randomized property suites')
    selftest.add_argument('--suite', action='append', choices=list(SUITES),
                          help='suite to run (repeatable; default all)')
    selftest.add_argument('--scale', type=float, default=1.0,
                          help='multiplier for the case counts')
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(manifest=args.manifest, window=args.window,
                     weight_cap=args.weight_cap, seed=args.seed,
                     json=args.json, verbosity=args.verbose,
                     jobs=max(1, args.jobs))


def _manifest_failure(verb: str, exc: BaseException) -> List[Dict[str, Any]]:
    error = error_payload(exc)
    return [{'task': verb, 'verb': verb, 'passed': False,
             'exit_code': get_exit_code_definition(error['category']),
             'error': error}]


def _manifest_results(verb: str, args: argparse.Namespace,
                      config: RunConfig) -> List[Dict[str, Any]]:
    try:
        if config.manifest is None:
            raise ManifestError('no manifest given', '--manifest')
        try:
            manifest = read_manifest(config.manifest)
        except OSError as e:
            raise ManifestSyntaxError(f'cannot read manifest: {e.strerror}',
                                      config.manifest)
        chosen = {name: getattr(args, name) for name in SELECTORS
                  if getattr(args, name, None) is not None}
        if chosen:
            # re-validated against the schema like a manifest task
            data = manifest.to_json()
            data['tasks'] = [dict(chosen, name=verb, verb=verb)]
            tasks = parse_manifest(data).tasks
        elif verb == 'run':
            tasks = manifest.tasks
        else:
            tasks = [t for t in manifest.tasks if t['verb'] == verb]
        objects = build_objects(manifest)
    except ManifestError as e:
        return _manifest_failure(verb, e)
    return run_tasks(tasks, manifest, objects, config.overrides, config.jobs)


def _emit(results: List[Dict[str, Any]], config: RunConfig) -> int:
    report = compile_report(results, 'dict')
    if config.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    elif results:
        print(compile_report(results, 'pandas').to_string())
    return report['exit_code']


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the `wcurve` console script.

    Args:
        argv (Sequence[str], optional): arguments without the program
            name; default sys.argv[1:]

    Returns:
        (int): exit code, 0 iff every task passed
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_window(argv))
    config = _config(args)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][
        min(config.verbosity, 2)]
    logging.basicConfig(level=level,
                        format='%(levelname)s %(name)s: %(message)s')
    logger.debug('%s', config)

    if args.verb == 'examples':
        names = list(EXAMPLES) if args.name == 'all' else [args.name]
        results = run_examples(names, args.ring, config.window or (-3, 3),
                               config.weight_cap or 3, config.jobs)
    elif args.verb == 'selftest':
        results = run_selftest_tasks(config.seed, args.suite, args.scale)
    else:
        results = _manifest_results(args.verb, args, config)
    return _emit(results, config)


if __name__ == '__main__':
    sys.exit(main())
