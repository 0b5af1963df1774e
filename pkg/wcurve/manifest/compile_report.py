"""
Module for compiling task results into the report returned by the CLI.
"""

__all__ = [
    "summarize",
    "compile_report",
]

import warnings
from typing import Any, Dict, List, Sequence

from pandas import DataFrame


def summarize(payload: Dict[str, Any]) -> str:
    """One line describing a task payload, used in the pandas table."""
    if 'error' in payload:
        error = payload['error']
        return f'{error["type"]}: {error["message"]}'
    report = payload.get('report')
    if isinstance(report, dict) and 'failures' in report:
        failures = report['failures']
        if failures:
            first = failures[0]
            return (f'{len(failures)} failure(s), first {first["axiom"]} at '
                    f'{first["witness"]}')
        return (f'{report.get("checked", 0)} checked, '
                f'{report.get("skipped", 0)} skipped')
    return ''


def compile_report(results: Sequence[Dict[str, Any]], var_type: str) -> Any:
    """
    Compile task payloads into the specified variable type.

    Valid variable types: 'dict' or 'pandas'

    Args:
        results (Sequence[dict]): one payload per task, in task order;
            each has 'task', 'verb', 'passed' and 'exit_code'
        var_type (str): variable type to be returned

    Raises:
        NotImplementedError: var_type 'xarray' is not supported
        ValueError: var_type can only be 'dict' or 'pandas'

    Returns:
        (dict): if var_type == 'dict', {'passed', 'exit_code', 'tasks'}
        (DataFrame): if var_type == 'pandas', one row per task indexed by
            task name
    """
    if not results:
        warnings.warn('Empty report; if you expected results, make sure the '
                      'manifest lists tasks for the requested verb.')

    if var_type == 'dict':
        tasks: List[Dict[str, Any]] = list(results)
        codes = [r['exit_code'] for r in tasks if r['exit_code']]
        return {'passed': all(r['passed'] for r in tasks),
                'exit_code': codes[0] if codes else 0,
                'tasks': tasks}
    elif var_type == 'pandas':
        rows = [{'task': r['task'],
                 'verb': r['verb'],
                 'passed': r['passed'],
                 'exit_code': r['exit_code'],
                 'summary': summarize(r)} for r in results]
        df = DataFrame(rows, columns=['task', 'verb', 'passed', 'exit_code',
                                      'summary'])
        return df.set_index('task')
    elif var_type == 'xarray':
        raise NotImplementedError('xarray is not supported for reports.')
    else:
        raise ValueError("var_type can only be 'dict' or 'pandas'")
