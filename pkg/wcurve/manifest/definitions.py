"""
Module containing wcurve defaults, exit codes and the manifest schema.
"""

__all__ = [
    "get_default_definition",
    "get_exit_code_definition",
    "get_object_schema_definition",
    "get_verb_definitions",
    "get_functor_definitions",
]

from typing import Dict, Tuple


def get_default_definition(name: str) -> int:
    """
    Default numeric settings shared by the manifest reader and the CLI.

    Arguments:
        - name (str), one of 'weight_cap', 'max_word_length', 'budget',
            'bar_cap', 'resolution_cap', 'cobar_max_len', 'seed'

    Raises:
        - ValueError, raise error if the setting is not defined

    Returns:
        - (int), the default value
    """
    DEFAULTS = {
        'weight_cap': 4,
        'max_word_length': 8,
        'budget': 200000,
        'bar_cap': 3,
        'resolution_cap': 3,
        'cobar_max_len': 8,
        'seed': 0,
    }

    if name not in DEFAULTS.keys():
        raise ValueError((f'default not defined - can only be value in:'
                          f'{list(DEFAULTS.keys())}'))

    return DEFAULTS[name]


def get_exit_code_definition(category: str) -> int:
    """
    Process exit code for each error category.

    Arguments:
        - category (str), 'pass', 'assertion', 'manifest', 'window',
            'budget' or 'other'

    Raises:
        - ValueError, raise error if the category is not defined

    Returns:
        - (int), exit code
    """
    EXIT_CODES = {
        'pass': 0,
        'assertion': 1,
        'manifest': 2,
        'window': 3,
        'budget': 4,
        'other': 5,
    }

    if category not in EXIT_CODES.keys():
        raise ValueError((f'exit code category not defined - can only be '
                          f'value in: {list(EXIT_CODES.keys())}'))

    return EXIT_CODES[category]


def get_object_schema_definition(object_type: str) -> Dict[str, Tuple[str, bool]]:
    """
    Fields of one manifest object type.

    Arguments:
        - object_type (str), the object's "type" entry

    Raises:
        - ValueError, raise error if the object type is not defined

    Returns:
        - (Dict[str, Tuple[str, bool]]), field -> (kind, required)
    """
    ALGEBRA_REFS = 'ref:algebra|presentation|cobar'
    COALGEBRA_REFS = 'ref:coalgebra|bar'
    SCHEMAS = {
        'algebra': {
            'basis': ('degrees', True),
            'unit': ('label', True),
            'mult': ('pair_table', False),
            'd': ('table', False),
            'h': ('vector', False),
        },
        'presentation': {
            'generators': ('degrees', True),
            'relations': ('rules', False),
            'd': ('word_table', False),
            'h': ('vector', False),
            'window': ('window', True),
            'max_word_length': ('int', False),
        },
        'coalgebra': {
            'basis': ('degrees', True),
            'comult': ('pair_vector_table', True),
            'counit': ('vector', True),
            'd': ('table', False),
            'h': ('vector', False),
        },
        'module': {
            'algebra': (ALGEBRA_REFS, True),
            'side': ('side', False),
            'basis': ('degrees', True),
            'action': ('pair_table', False),
            'd': ('table', False),
        },
        'free_module': {
            'algebra': (ALGEBRA_REFS, True),
            'side': ('side', False),
            'generators': ('degrees', True),
            'd_gen': ('pair_vector_table', False),
        },
        'comodule': {
            'coalgebra': (COALGEBRA_REFS, True),
            'side': ('side', False),
            'basis': ('degrees', True),
            'coaction': ('pair_vector_table', True),
            'd': ('table', False),
        },
        'retraction': {
            'algebra': (ALGEBRA_REFS, True),
            'values': ('vector', True),
        },
        'section': {
            'coalgebra': (COALGEBRA_REFS, True),
            'values': ('vector', True),
        },
        'bar': {
            'algebra': ('ref:algebra|presentation', True),
            'cap': ('int', False),
            'retraction': ('ref:retraction', False),
        },
        'cobar': {
            'coalgebra': ('ref:coalgebra', True),
            'window': ('window', False),
            'max_len': ('int', False),
            'section': ('ref:section', False),
        },
        'cochain': {
            'coalgebra': (COALGEBRA_REFS, True),
            'algebra': (ALGEBRA_REFS, True),
            'images': ('table', False),
            'canonical': ('bool', False),
        },
        'twisted': {
            'cochain': ('ref:cochain', True),
            'source': ('ref:module|free_module|comodule', True),
            'functor': ('functor', True),
        },
        'ainfty': {
            'basis': ('degrees', True),
            'ops': ('ops', True),
            'weight_cap': ('int', False),
            'unit': ('label', False),
            'retraction': ('vector', False),
        },
        'fgmodule': {
            'relations': ('matrix', True),
            'generators': ('int', False),
        },
        'complex': {
            'basis': ('degrees', True),
            'd': ('table', False),
        },
    }

    if object_type not in SCHEMAS.keys():
        raise ValueError((f'object type not defined - can only be value in:'
                          f'{list(SCHEMAS.keys())}'))

    return SCHEMAS[object_type]


def get_verb_definitions() -> Dict[str, Dict[str, str]]:
    """
    Task verbs and the parameters each one takes.

    Returns:
        - (Dict[str, Dict[str, str]]), verb -> {parameter: field kind};
            parameters of kind 'ref:...' name manifest objects
    """
    MODULES = 'ref:module|free_module|twisted'
    return {
        'check-algebra': {'object': 'ref:algebra|presentation|cobar|coalgebra'
                                    '|bar|module|free_module|comodule|twisted'
                                    '|complex'},
        'check-ainfty': {'object': 'ref:ainfty', 'weight_cap': 'int'},
        'bar': {'object': 'ref:algebra|presentation', 'weight_cap': 'int',
                'retraction': 'ref:retraction'},
        'cobar': {'object': 'ref:coalgebra', 'window': 'window',
                  'max_len': 'int', 'section': 'ref:section'},
        'twist-check': {'cochain': 'ref:cochain'},
        'twist-apply': {'cochain': 'ref:cochain',
                        'module': 'ref:module|free_module|comodule',
                        'functor': 'functor'},
        'adjoint-count': {'coalgebra': 'ref:coalgebra',
                          'algebra': 'ref:algebra|presentation',
                          'weight_cap': 'int', 'budget': 'int'},
        'ext': {'module': MODULES, 'target': MODULES, 'window': 'window',
                'weight_cap': 'int'},
        'semiacyclic': {'module': MODULES + '|complex', 'window': 'window'},
        'rmod': {'object': 'ref:fgmodule', 'second': 'ref:fgmodule',
                 'third': 'ref:fgmodule', 'budget': 'int'},
    }


def get_functor_definitions() -> Tuple[str, ...]:
    """
    Names of the twisted functors a 'twisted' object or a twist-apply task
    may use; each is the function of the same name in wcurve.twisted.
    """
    return ('comodule_from_module', 'module_from_comodule',
            'contramodule_from_module', 'module_from_contramodule',
            'comodule_from_right_module', 'module_from_right_comodule')
