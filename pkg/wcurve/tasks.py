"""
Module for executing manifest tasks, worked examples and the selftest into
JSON-ready payloads with exit codes.

Every payload carries 'task', 'verb', 'passed' and 'exit_code'; a task
that raises gets an 'error' entry with the exception type, message,
category and witness data (degrees, JSON path or the failed report).
"""

__all__ = [
    "error_category",
    "error_payload",
    "run_task",
    "run_tasks",
    "run_examples",
    "run_selftest_tasks",
]

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from wcurve import twisted
from wcurve.ainfty import check_stasheff, check_strict_unit, stasheff_oracle
from wcurve.barcobar import (adjunction_bijection, bar, check_twisting_cochain,
                             cobar)
from wcurve.cdg import CdgAlgebra, CdgModule, check_cdg_algebra, check_cdg_module
from wcurve.coalgebra import (CdgCoalgebra, CdgComodule, check_cdg_coalgebra,
                              check_cdg_comodule)
from wcurve.errors import (AxiomFailure, EnumerationBudgetExceeded,
                           ManifestError, ManifestSchemaError, OutsideWindow,
                           PrecisionInsufficient, WindowTruncation)
from wcurve.golden import run_example
from wcurve.graded import FreeComplex
from wcurve.homcalc import bar_resolution, ext, semiacyclic
from wcurve.manifest import (Manifest, get_default_definition,
                             get_exit_code_definition, unit_witness)
from wcurve.properties import run_selftest
from wcurve.reports import AxiomReport, jsonable
from wcurve.ring import LocalRingSpec
from wcurve.rmod import adjunction_counts, assoc_checks, phi_psi_roundtrip

logger = logging.getLogger(__name__)


def error_category(exc: BaseException) -> str:
    """Map an exception to its exit-code category."""
    if isinstance(exc, AxiomFailure):
        return 'assertion'
    if isinstance(exc, ManifestError):
        return 'manifest'
    if isinstance(exc, (WindowTruncation, OutsideWindow,
                        PrecisionInsufficient)):
        return 'window'
    if isinstance(exc, EnumerationBudgetExceeded):
        return 'budget'
    return 'other'


def error_payload(exc: BaseException) -> Dict[str, Any]:
    category = error_category(exc)
    error = {'type': type(exc).__name__, 'message': str(exc),
             'category': category}
    if isinstance(exc, WindowTruncation):
        error['degrees'] = list(exc.degrees)
    if isinstance(exc, ManifestError):
        error['path'] = exc.path
    if isinstance(exc, AxiomFailure):
        error['report'] = exc.report.to_dict()
    return error


def _complex_report(C: FreeComplex, name: str) -> AxiomReport:
    rep = AxiomReport(f'complex:{name}')
    bad = dict(C.square_defect())
    for lab in C.module.labels:
        if lab in bad:
            rep.fail('d_squared', lab, bad[lab])
        else:
            rep.ok()
    return rep


def _check_object(task, manifest, objects, overrides):
    obj = objects[task['object']]
    if isinstance(obj, CdgAlgebra):
        rep = check_cdg_algebra(obj)
        return {'report': rep.to_dict(),
                'weakly_curved': obj.is_weakly_curved()}, rep.passed
    if isinstance(obj, CdgCoalgebra):
        rep = check_cdg_coalgebra(obj)
    elif isinstance(obj, CdgModule):
        rep = check_cdg_module(obj)
    elif isinstance(obj, CdgComodule):
        rep = check_cdg_comodule(obj)
    elif isinstance(obj, FreeComplex):
        rep = _complex_report(obj, task['object'])
    else:
        raise ManifestSchemaError(f'{type(obj).__name__} has no axiom check',
                                  f'{task["name"]}.object')
    return {'report': rep.to_dict()}, rep.passed


def _check_ainfty(task, manifest, objects, overrides):
    name = task['object']
    A = objects[name]
    cap = task.get('weight_cap', overrides.get('weight_cap'))
    rep = check_stasheff(A, cap)
    oracle = stasheff_oracle(A, cap)
    payload = {'oracle_agrees': (not oracle) == rep.passed}
    witness = unit_witness(manifest, name)
    if witness is not None:
        rep = rep.merge(check_strict_unit(A, witness, cap))
    payload['report'] = rep.to_dict()
    return payload, rep.passed and payload['oracle_agrees']


def _bar(task, manifest, objects, overrides):
    B = objects[task['object']]
    v = objects[task['retraction']] if 'retraction' in task else None
    cap = task.get('weight_cap', overrides.get('weight_cap') or
                   get_default_definition('bar_cap'))
    Br = bar(B, v, cap)
    rep = check_cdg_coalgebra(Br)
    return {'ranks': Br.module.ranks(), 'curvature': Br.h,
            'weight_cap': cap, 'report': rep.to_dict()}, rep.passed


def _cobar(task, manifest, objects, overrides):
    C = objects[task['object']]
    w = objects[task['section']] if 'section' in task else None
    window = tuple(task.get('window', overrides.get('window') or (0, 6)))
    max_len = task.get('max_len', get_default_definition('cobar_max_len'))
    Cb = cobar(C, w, window, max_len)
    rep = check_cdg_algebra(Cb)
    return {'ranks': Cb.module.ranks(), 'curvature': Cb.h,
            'window': list(window), 'report': rep.to_dict()}, rep.passed


def _twist_check(task, manifest, objects, overrides):
    rep = check_twisting_cochain(objects[task['cochain']])
    return {'report': rep.to_dict()}, rep.passed


def _twist_apply(task, manifest, objects, overrides):
    tau = objects[task['cochain']]
    source = objects[task['module']]
    default = ('module_from_comodule' if isinstance(source, CdgComodule)
               else 'comodule_from_module')
    functor = task.get('functor', default)
    result = getattr(twisted, functor)(tau, source, check=False)
    if isinstance(result, CdgComodule):
        rep = check_cdg_comodule(result)
    else:
        rep = check_cdg_module(result)
    return {'functor': functor, 'ranks': result.module.ranks(),
            'report': rep.to_dict()}, rep.passed


def _adjoint_count(task, manifest, objects, overrides):
    cap = task.get('weight_cap', overrides.get('weight_cap') or 2)
    budget = task.get('budget', get_default_definition('budget'))
    rep = adjunction_bijection(objects[task['coalgebra']],
                               objects[task['algebra']], cap=cap,
                               budget=budget)
    return {'report': rep.to_dict()}, rep.passed


def _ext(task, manifest, objects, overrides):
    L = objects[task['module']]
    M = objects[task.get('target', task['module'])]
    window = task.get('window', overrides.get('window'))
    window = tuple(window) if window is not None else None
    if not L.is_free:
        cap = task.get('weight_cap', overrides.get('weight_cap') or
                       get_default_definition('resolution_cap'))
        L = bar_resolution(L, cap)
    report = ext(L, M, window)
    return {'ext': report.to_dict(), 'exponent': report.exponent()}, True


def _semiacyclic(task, manifest, objects, overrides):
    window = task.get('window', overrides.get('window'))
    report = semiacyclic(objects[task['module']],
                         tuple(window) if window is not None else None)
    return {'semiacyclic': report.to_dict()}, True


def _rmod(task, manifest, objects, overrides):
    P = objects[task['object']]
    M = objects[task.get('second', task['object'])]
    N = objects[task.get('third', task.get('second', task['object']))]
    budget = task.get('budget', get_default_definition('budget'))
    counts = adjunction_counts(P, M, N, budget)
    assoc = assoc_checks(P, M, N)
    roundtrip = all(phi_psi_roundtrip(X) for X in (P, M, N))
    passed = (counts['left'] == counts['right'] and counts['bijective']
              and assoc.passed and roundtrip)
    return {'adjunction': counts, 'assoc': assoc.to_dict(),
            'phi_psi_roundtrip': roundtrip}, passed


VERBS: Dict[str, Callable] = {
    'check-algebra': _check_object,
    'check-ainfty': _check_ainfty,
    'bar': _bar,
    'cobar': _cobar,
    'twist-check': _twist_check,
    'twist-apply': _twist_apply,
    'adjoint-count': _adjoint_count,
    'ext': _ext,
    'semiacyclic': _semiacyclic,
    'rmod': _rmod,
}


def _finish(name: str, verb: str, body: Dict[str, Any],
            passed: bool) -> Dict[str, Any]:
    payload = {'task': name, 'verb': verb, 'passed': passed,
               'exit_code': get_exit_code_definition(
                   'pass' if passed else 'assertion')}
    payload.update(body)
    return jsonable(payload)


def _failed(name: str, verb: str, exc: BaseException) -> Dict[str, Any]:
    error = error_payload(exc)
    logger.info('task %s failed with %s', name, error['type'])
    return jsonable({'task': name, 'verb': verb, 'passed': False,
                     'exit_code': get_exit_code_definition(error['category']),
                     'error': error})


def run_task(task: Mapping[str, Any], manifest: Manifest,
             objects: Mapping[str, Any],
             overrides: Optional[Mapping[str, Any]] = None) -> Dict[str, Any]:
    """
    Run one canonical task.

    Args:
        task (Mapping): a task dict as stored in Manifest.tasks
        manifest (Manifest): the manifest the task belongs to
        objects (Mapping): the output of build_objects(manifest)
        overrides (Mapping, optional): command-line 'window' and
            'weight_cap', used where the task does not set them

    Returns:
        (dict): the task payload; exceptions are caught and reported
    """
    overrides = dict(overrides or {})
    name, verb = task['name'], task['verb']
    logger.debug('running task %s (%s)', name, verb)
    try:
        body, passed = VERBS[verb](task, manifest, objects, overrides)
    except Exception as e:  # every failure becomes a payload
        return _failed(name, verb, e)
    return _finish(name, verb, body, passed)


def run_tasks(tasks: Sequence[Mapping[str, Any]], manifest: Manifest,
              objects: Mapping[str, Any],
              overrides: Optional[Mapping[str, Any]] = None,
              jobs: int = 1) -> List[Dict[str, Any]]:
    """
    Run tasks, `jobs` at a time; the result list follows task order.
    """
    if jobs <= 1 or len(tasks) <= 1:
        return [run_task(t, manifest, objects, overrides) for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda t: run_task(t, manifest, objects,
                                                overrides), tasks))


def run_examples(names: Sequence[str], ring: Optional[LocalRingSpec] = None,
                 window: Tuple[int, int] = (-3, 3), cap: int = 3,
                 jobs: int = 1) -> List[Dict[str, Any]]:
    """Worked examples as task payloads, in the order given."""
    def one(name):
        try:
            body = run_example(name, ring, window, cap)
        except Exception as e:  # reported like a task failure
            return _failed(name, 'examples run', e)
        return _finish(name, 'examples run', body, body['passed'])

    if jobs <= 1 or len(names) <= 1:
        return [one(n) for n in names]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(one, names))


def run_selftest_tasks(seed: int = 0,
                       suites: Optional[Sequence[str]] = None,
                       scale_factor: float = 1.0) -> List[Dict[str, Any]]:
    """The property suites as task payloads, one per suite."""
    results = []
    for report in run_selftest(seed, suites, scale_factor):
        results.append(_finish(report.subject, 'selftest',
                               {'seed': seed, 'report': report.to_dict()},
                               report.passed))
    return results
