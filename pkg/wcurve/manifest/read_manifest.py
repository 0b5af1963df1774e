"""
Module for reading, canonicalizing and emitting wcurve JSON manifests, and
for turning their objects into kernel structures.

A manifest is a JSON object with a "ring" ({"kind", "p", "N"}), named
"objects" (each with a "type" from the schema in
`wcurve.manifest.definitions`) and a list of "tasks". Coefficients are
integers, "a/b" strings or coefficient arrays (low to high for the eps
kind, base-p digits for the p-adic kind). Pairs of labels are written
"a|b"; words of an algebra given by a presentation (and cobar words) are
written "x*y" with "1" for the empty word.

TODO:
- bar words over a presentation algebra use ',' between letters; the
  emitted form does not yet round-trip letters containing ','.
"""

__all__ = [
    "Manifest",
    "read_manifest",
    "parse_manifest",
    "emit_manifest",
    "build_objects",
    "unit_witness",
]

import io
import json
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

import numpy as np

from wcurve import barcobar, twisted
from wcurve.ainfty import AinftyAlgebra, StrictUnitWitness
from wcurve.cdg import (CdgAlgebra, CdgModule, algebra_from_presentation,
                        free_module)
from wcurve.coalgebra import CdgCoalgebra, CdgComodule
from wcurve.errors import (DanglingReference, ManifestSchemaError,
                           ManifestSyntaxError, WcurveError)
from wcurve.graded import FreeComplex, GradedMap, GradedModule
from wcurve.manifest.definitions import (get_default_definition,
                                         get_functor_definitions,
                                         get_object_schema_definition,
                                         get_verb_definitions)
from wcurve.rmod import FgModule
from wcurve.ring import LocalRingSpec

logger = logging.getLogger(__name__)

OPERATION_KEY = re.compile(r'^m(\d+)$')


@dataclass
class Manifest:
    """
    A schema-checked manifest in canonical form.

    Attributes:
        ring (LocalRingSpec)
        objects (dict): name -> canonical JSON data of the object
        tasks (list): canonical task dicts, each with 'name' and 'verb'
        source (str): where the manifest was read from
    """
    ring: LocalRingSpec
    objects: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    tasks: List[Dict[str, Any]] = field(default_factory=list)
    source: str = field(default='<text>', compare=False)

    def to_json(self) -> dict:
        return {'ring': self.ring.to_json()['ring'],
                'objects': self.objects,
                'tasks': self.tasks}

    def task(self, name: str) -> Dict[str, Any]:
        for t in self.tasks:
            if t['name'] == name:
                return t
        raise KeyError(f'no task named {name!r}')


def read_manifest(source: Union[str, Path, bytes, io.IOBase]) -> Manifest:
    """
    Read a manifest from a path, a file object, bytes or JSON text.

    Args:
        source: a path, an open file, raw bytes, or a string starting with
            '{' holding the JSON text itself

    Raises:
        ManifestSyntaxError: invalid UTF-8 or JSON; the path is
            'line L, column C'
        ManifestSchemaError: the data violates the schema; the path is a
            dotted JSON path
        DanglingReference: a reference names an undefined object

    Returns:
        (Manifest): canonical manifest
    """
    name = '<text>'
    if isinstance(source, bytes):
        raw = source
    elif hasattr(source, 'read'):
        name = getattr(source, 'name', '<stream>')
        raw = source.read()
    elif isinstance(source, str) and source.lstrip().startswith('{'):
        raw = source
    else:
        name = str(source)
        raw = Path(source).read_bytes()
    if isinstance(raw, bytes):
        try:
            raw = raw.decode('utf-8')
        except UnicodeDecodeError as e:
            raise ManifestSyntaxError(f'not UTF-8: {e.reason}',
                                      f'byte {e.start}')
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ManifestSyntaxError(e.msg, f'line {e.lineno}, column {e.colno}')
    manifest = parse_manifest(data)
    manifest.source = name
    logger.info('manifest %s: %d object(s), %d task(s) over %s', name,
                len(manifest.objects), len(manifest.tasks),
                manifest.ring.label)
    return manifest


def emit_manifest(manifest: Manifest) -> str:
    """Canonical JSON text: sorted keys, two-space indent, final newline."""
    return json.dumps(manifest.to_json(), sort_keys=True, indent=2,
                      ensure_ascii=False) + '\n'


# -- schema checking ---------------------------------------------------------

def _fail(message: str, path: str):
    raise ManifestSchemaError(message, path)


def _expect(value, kind, path: str, what: str):
    if not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        _fail(f'expected {what}, got {type(value).__name__}', path)


def _parse_scalar(c, path: str):
    if isinstance(c, bool):
        _fail('a coefficient cannot be a boolean', path)
    if isinstance(c, int):
        return c
    if isinstance(c, str):
        try:
            return Fraction(c)
        except (ValueError, ZeroDivisionError):
            _fail(f'{c!r} is not an integer or a fraction a/b', path)
    _fail(f'expected a coefficient, got {type(c).__name__}', path)


def _coefficient(ring: LocalRingSpec, c, path: str):
    if isinstance(c, list):
        value = [_parse_scalar(x, f'{path}[{i}]') for i, x in enumerate(c)]
    else:
        value = _parse_scalar(c, path)
    try:
        return ring.element(value)
    except (ValueError, ArithmeticError) as e:
        _fail(str(e), path)


def _canonical_coefficient(ring, c, path):
    return _coefficient(ring, c, path).to_json()


def _canonical_vector(ring, vec, path):
    _expect(vec, dict, path, 'an object of coefficients')
    out = {}
    for k, c in vec.items():
        value = _coefficient(ring, c, f'{path}.{k}')
        if value:
            out[k] = value.to_json()
    return out


def _canonical_table(ring, table, path, pairs=False):
    _expect(table, dict, path, 'an object')
    out = {}
    for k, vec in table.items():
        if pairs and k.count('|') != 1:
            _fail(f'pair key {k!r} must have the form "a|b"', f'{path}.{k}')
        out[k] = _canonical_vector(ring, vec, f'{path}.{k}')
    return out


def _canonical_window(value, path):
    _expect(value, list, path, 'a window [lo, hi]')
    if len(value) != 2:
        _fail('a window has exactly two entries', path)
    for i, x in enumerate(value):
        _expect(x, int, f'{path}[{i}]', 'an integer')
    if value[0] > value[1]:
        _fail(f'empty window {value}', path)
    return list(value)


def _canonical_field(ring: LocalRingSpec, kind: str, value, path: str):
    if kind.startswith('ref:'):
        _expect(value, str, path, 'an object name')
        return value
    if kind == 'degrees':
        _expect(value, dict, path, 'an object of degrees')
        for k, n in value.items():
            if not k or '|' in k:
                _fail(f'label {k!r} is empty or contains "|"', f'{path}.{k}')
            _expect(n, int, f'{path}.{k}', 'an integer degree')
        return dict(value)
    if kind == 'label':
        _expect(value, str, path, 'a label')
        return value
    if kind == 'vector':
        return _canonical_vector(ring, value, path)
    if kind in ('table', 'word_table'):
        return _canonical_table(ring, value, path)
    if kind == 'pair_table':
        return _canonical_table(ring, value, path, pairs=True)
    if kind == 'pair_vector_table':
        _expect(value, dict, path, 'an object')
        out = {}
        for k, vec in value.items():
            _expect(vec, dict, f'{path}.{k}', 'an object of coefficients')
            for key in vec:
                if key.count('|') != 1:
                    _fail(f'pair key {key!r} must have the form "a|b"',
                          f'{path}.{k}.{key}')
            out[k] = _canonical_vector(ring, vec, f'{path}.{k}')
        return out
    if kind == 'rules':
        _expect(value, list, path, 'a list of rewrite rules')
        out = []
        for i, rule in enumerate(value):
            if not isinstance(rule, list) or len(rule) != 2:
                _fail('a rule is [word, {word: coefficient}]', f'{path}[{i}]')
            _expect(rule[0], str, f'{path}[{i}][0]', 'a word')
            out.append([rule[0], _canonical_vector(ring, rule[1],
                                                   f'{path}[{i}][1]')])
        return out
    if kind == 'ops':
        _expect(value, dict, path, 'an object of operations')
        out = {}
        for key, table in value.items():
            match = OPERATION_KEY.match(key)
            if match is None:
                _fail(f'unknown operation key {key!r}; expected m<n> with '
                      f'n >= 0', f'{path}.{key}')
            n = int(match.group(1))
            _expect(table, dict, f'{path}.{key}', 'an object of words')
            for word in table:
                length = len(word.split('|')) if word else 0
                if length != n:
                    _fail(f'{key} takes words of length {n}, got {length}',
                          f'{path}.{key}.{word}')
            out[key] = _canonical_table(ring, table, f'{path}.{key}')
        return out
    if kind == 'matrix':
        _expect(value, list, path, 'a list of rows')
        rows = []
        for i, row in enumerate(value):
            _expect(row, list, f'{path}[{i}]', 'a row')
            if rows and len(row) != len(rows[0]):
                _fail(f'row {i} has {len(row)} entries, expected '
                      f'{len(rows[0])}', f'{path}[{i}]')
            rows.append([_canonical_coefficient(ring, c, f'{path}[{i}][{j}]')
                         for j, c in enumerate(row)])
        return rows
    if kind == 'window':
        return _canonical_window(value, path)
    if kind == 'int':
        _expect(value, int, path, 'an integer')
        if value < 0:
            _fail(f'expected a non-negative integer, got {value}', path)
        return value
    if kind == 'bool':
        _expect(value, bool, path, 'true or false')
        return value
    if kind == 'side':
        if value not in ('left', 'right'):
            _fail(f"side must be 'left' or 'right', got {value!r}", path)
        return value
    if kind == 'functor':
        if value not in get_functor_definitions():
            _fail(f'unknown functor {value!r}; choose from '
                  f'{list(get_functor_definitions())}', path)
        return value
    raise ValueError(f'unknown field kind {kind!r}')


def _check_reference(objects: Mapping[str, Any], kind: str, value: str,
                     path: str) -> None:
    if value not in objects:
        raise DanglingReference(f'unknown object {value!r}', path)
    allowed = kind[len('ref:'):].split('|')
    actual = objects[value].get('type')
    if actual not in allowed:
        _fail(f'{value!r} is a {actual}, expected one of {allowed}', path)


def _parse_ring(data, path='ring') -> LocalRingSpec:
    _expect(data, dict, path, 'a ring object')
    for key in ('kind', 'p', 'N'):
        if key not in data:
            _fail(f'missing field {key!r}', path)
    extra = set(data) - {'kind', 'p', 'N'}
    if extra:
        _fail(f'unknown field(s) {sorted(extra)}', path)
    _expect(data['p'], int, f'{path}.p', 'an integer')
    _expect(data['N'], int, f'{path}.N', 'an integer')
    try:
        return LocalRingSpec(data['kind'], data['p'], data['N'])
    except ValueError as e:
        _fail(str(e), path)


def parse_manifest(data: Any) -> Manifest:
    """
    Validate already-decoded JSON data and return the canonical manifest.

    Raises:
        ManifestSchemaError
        DanglingReference
    """
    _expect(data, dict, '$', 'a JSON object')
    extra = set(data) - {'ring', 'objects', 'tasks'}
    if extra:
        _fail(f'unknown top-level field(s) {sorted(extra)}', '$')
    if 'ring' not in data:
        _fail("missing field 'ring'", '$')
    ring = _parse_ring(data['ring'])
    raw_objects = data.get('objects', {})
    _expect(raw_objects, dict, 'objects', 'an object of named objects')
    objects: Dict[str, Dict[str, Any]] = {}
    for name, obj in raw_objects.items():
        path = f'objects.{name}'
        _expect(obj, dict, path, 'an object')
        otype = obj.get('type')
        try:
            schema = get_object_schema_definition(otype)
        except ValueError as e:
            _fail(str(e), f'{path}.type')
        canon = {'type': otype}
        for key, value in obj.items():
            if key == 'type':
                continue
            if key not in schema:
                _fail(f'unknown field {key!r} for a {otype}', f'{path}.{key}')
            canon[key] = _canonical_field(ring, schema[key][0], value,
                                          f'{path}.{key}')
        for key, (_, required) in schema.items():
            if required and key not in canon:
                _fail(f'missing required field {key!r}', path)
        objects[name] = canon
    for name, obj in objects.items():
        schema = get_object_schema_definition(obj['type'])
        for key, (kind, _) in schema.items():
            if kind.startswith('ref:') and key in obj:
                _check_reference(objects, kind, obj[key],
                                 f'objects.{name}.{key}')
    _dependency_order(objects)

    raw_tasks = data.get('tasks', [])
    _expect(raw_tasks, list, 'tasks', 'a list of tasks')
    verbs = get_verb_definitions()
    tasks = []
    seen = set()
    for i, task in enumerate(raw_tasks):
        path = f'tasks[{i}]'
        _expect(task, dict, path, 'a task object')
        verb = task.get('verb')
        if verb not in verbs:
            _fail(f'unknown verb {verb!r}; choose from {sorted(verbs)}',
                  f'{path}.verb')
        name = task.get('name', f'task{i}')
        _expect(name, str, f'{path}.name', 'a task name')
        if name in seen:
            _fail(f'duplicate task name {name!r}', f'{path}.name')
        seen.add(name)
        canon = {'name': name, 'verb': verb}
        for key, value in task.items():
            if key in ('name', 'verb'):
                continue
            if key not in verbs[verb]:
                _fail(f'unknown parameter {key!r} for {verb}',
                      f'{path}.{key}')
            kind = verbs[verb][key]
            canon[key] = _canonical_field(ring, kind, value, f'{path}.{key}')
            if kind.startswith('ref:'):
                _check_reference(objects, kind, value, f'{path}.{key}')
        tasks.append(canon)
    return Manifest(ring, objects, tasks)


def _references(obj: Mapping[str, Any]) -> List[str]:
    schema = get_object_schema_definition(obj['type'])
    return [obj[k] for k, (kind, _) in schema.items()
            if kind.startswith('ref:') and k in obj]


def _dependency_order(objects: Mapping[str, Mapping[str, Any]]) -> List[str]:
    order: List[str] = []
    state: Dict[str, int] = {}

    def visit(name, trail):
        if state.get(name) == 2:
            return
        if state.get(name) == 1:
            _fail(f'reference cycle {" -> ".join(trail + [name])}',
                  f'objects.{name}')
        state[name] = 1
        for dep in _references(objects[name]):
            visit(dep, trail + [name])
        state[name] = 2
        order.append(name)

    for name in sorted(objects):
        visit(name, [])
    return order


# -- object construction -----------------------------------------------------

class _Codec:
    """Label encoding: plain strings, or words joined by a separator."""

    def __init__(self, inner: Optional['_Codec'] = None, sep: str = '*'):
        self.inner = inner
        self.sep = sep

    @property
    def is_word(self) -> bool:
        return self.inner is not None

    def decode(self, key: str):
        if self.inner is None:
            return key
        if key == '1':
            return ()
        return tuple(self.inner.decode(x) for x in key.split(self.sep))


PLAIN = _Codec()
WORDS = _Codec(PLAIN, '*')


class _Builder:
    def __init__(self, manifest: Manifest):
        self.manifest = manifest
        self.ring = manifest.ring
        self.built: Dict[str, Any] = {}
        self.codecs: Dict[str, _Codec] = {}

    def coeff(self, c):
        return _coefficient(self.ring, c, '')

    def vector(self, vec, codec: _Codec, known, path: str):
        out = {}
        for key, c in vec.items():
            lab = codec.decode(key)
            if known is not None and lab not in known:
                _fail(f'unknown label {key!r}', f'{path}.{key}')
            out[lab] = self.coeff(c)
        return out

    def pair(self, key: str, left: _Codec, right: _Codec):
        a, b = key.split('|')
        return left.decode(a), right.decode(b)

    def table(self, data, codec: _Codec, known, path: str,
              defaults=()) -> Dict[Any, Dict]:
        out = {lab: {} for lab in defaults}
        for key, vec in data.items():
            lab = codec.decode(key)
            if known is not None and lab not in known:
                _fail(f'unknown label {key!r}', f'{path}.{key}')
            out[lab] = self.vector(vec, codec, known, f'{path}.{key}')
        return out

    def build(self, name: str):
        obj = self.manifest.objects[name]
        path = f'objects.{name}'
        method = getattr(self, f'_{obj["type"]}')
        try:
            value = method(name, obj, path)
        except WcurveError:
            raise
        except (ValueError, KeyError, TypeError) as e:
            raise ManifestSchemaError(str(e), path) from e
        self.built[name] = value
        return value

    # each builder returns the kernel object and records the label codec

    def _algebra(self, name, obj, path):
        module = GradedModule(self.ring, obj['basis'])
        labels = module.labels
        self.codecs[name] = PLAIN
        mult = {(a, b): {} for a in labels for b in labels}
        for key, vec in obj.get('mult', {}).items():
            a, b = self.pair(key, PLAIN, PLAIN)
            if a not in module or b not in module:
                _fail(f'unknown label in {key!r}', f'{path}.mult.{key}')
            mult[(a, b)] = self.vector(vec, PLAIN, module,
                                       f'{path}.mult.{key}')
        d = self.table(obj.get('d', {}), PLAIN, module, f'{path}.d', labels)
        h = self.vector(obj.get('h', {}), PLAIN, module, f'{path}.h')
        if obj['unit'] not in module:
            _fail(f'unit {obj["unit"]!r} is not a basis label', f'{path}.unit')
        return CdgAlgebra(module, obj['unit'], mult, d, h, name)

    def _presentation(self, name, obj, path):
        gens = obj['generators']
        self.codecs[name] = WORDS

        def word(key, where):
            w = WORDS.decode(key)
            bad = [g for g in w if g not in gens]
            if bad:
                _fail(f'unknown generator(s) {bad}', where)
            return w

        def combo(vec, where):
            return {word(k, f'{where}.{k}'): self.coeff(c)
                    for k, c in vec.items()}

        relations = [(word(lhs, f'{path}.relations[{i}][0]'),
                      combo(rhs, f'{path}.relations[{i}][1]'))
                     for i, (lhs, rhs) in enumerate(obj.get('relations', []))]
        d = {}
        for g, vec in obj.get('d', {}).items():
            if g not in gens:
                _fail(f'unknown generator {g!r}', f'{path}.d.{g}')
            d[g] = combo(vec, f'{path}.d.{g}')
        max_len = obj.get('max_word_length',
                          get_default_definition('max_word_length'))
        return algebra_from_presentation(
            self.ring, list(gens.items()), relations, d,
            combo(obj.get('h', {}), f'{path}.h'), tuple(obj['window']),
            max_len, name)

    def _coalgebra(self, name, obj, path):
        module = GradedModule(self.ring, obj['basis'])
        self.codecs[name] = PLAIN
        comult = {c: {} for c in module.labels}
        for c, vec in obj['comult'].items():
            if c not in module:
                _fail(f'unknown label {c!r}', f'{path}.comult.{c}')
            entry = {}
            for key, coeff in vec.items():
                a, b = self.pair(key, PLAIN, PLAIN)
                if a not in module or b not in module:
                    _fail(f'unknown label in {key!r}',
                          f'{path}.comult.{c}.{key}')
                entry[(a, b)] = self.coeff(coeff)
            comult[c] = entry
        counit = self.vector(obj['counit'], PLAIN, module, f'{path}.counit')
        d = self.table(obj.get('d', {}), PLAIN, module, f'{path}.d',
                       module.labels)
        h = self.vector(obj.get('h', {}), PLAIN, module, f'{path}.h')
        return CdgCoalgebra(module, comult, counit, d, h, name)

    def _module(self, name, obj, path):
        A = self.built[obj['algebra']]
        acodec = self.codecs[obj['algebra']]
        side = obj.get('side', 'left')
        module = GradedModule(self.ring, obj['basis'])
        self.codecs[name] = PLAIN
        r1 = self.ring.one
        action = {}
        for b in A.labels:
            for x in module.labels:
                key = (b, x) if side == 'left' else (x, b)
                action[key] = {x: r1} if b == A.unit else {}
        for key, vec in obj.get('action', {}).items():
            if side == 'left':
                b, x = self.pair(key, acodec, PLAIN)
            else:
                x, b = self.pair(key, PLAIN, acodec)
            if b not in A.module or x not in module:
                _fail(f'unknown label in {key!r}', f'{path}.action.{key}')
            action[(b, x) if side == 'left' else (x, b)] = self.vector(
                vec, PLAIN, module, f'{path}.action.{key}')
        d = self.table(obj.get('d', {}), PLAIN, module, f'{path}.d',
                       module.labels)
        return CdgModule(A, module, action, d, side, name)

    def _free_module(self, name, obj, path):
        A = self.built[obj['algebra']]
        acodec = self.codecs[obj['algebra']]
        side = obj.get('side', 'left')
        gens = obj['generators']
        self.codecs[name] = PLAIN
        d_gen = {u: {} for u in gens}
        for u, vec in obj.get('d_gen', {}).items():
            if u not in gens:
                _fail(f'unknown generator {u!r}', f'{path}.d_gen.{u}')
            entry = {}
            for key, coeff in vec.items():
                if side == 'left':
                    b, v = self.pair(key, acodec, PLAIN)
                    lab = (b, v)
                else:
                    v, b = self.pair(key, PLAIN, acodec)
                    lab = (v, b)
                if b not in A.module or v not in gens:
                    _fail(f'unknown label in {key!r}',
                          f'{path}.d_gen.{u}.{key}')
                entry[lab] = self.coeff(coeff)
            d_gen[u] = entry
        return free_module(A, gens, d_gen, side, name)

    def _comodule(self, name, obj, path):
        C = self.built[obj['coalgebra']]
        ccodec = self.codecs[obj['coalgebra']]
        side = obj.get('side', 'left')
        module = GradedModule(self.ring, obj['basis'])
        self.codecs[name] = PLAIN
        coaction = {y: {} for y in module.labels}
        for y, vec in obj['coaction'].items():
            if y not in module:
                _fail(f'unknown label {y!r}', f'{path}.coaction.{y}')
            entry = {}
            for key, coeff in vec.items():
                if side == 'left':
                    lab = self.pair(key, ccodec, PLAIN)
                    c, z = lab
                else:
                    lab = self.pair(key, PLAIN, ccodec)
                    z, c = lab
                if c not in C.module or z not in module:
                    _fail(f'unknown label in {key!r}',
                          f'{path}.coaction.{y}.{key}')
                entry[lab] = self.coeff(coeff)
            coaction[y] = entry
        d = self.table(obj.get('d', {}), PLAIN, module, f'{path}.d',
                       module.labels)
        return CdgComodule(C, module, coaction, d, side, name)

    def _retraction(self, name, obj, path):
        A = self.built[obj['algebra']]
        return self.vector(obj['values'], self.codecs[obj['algebra']],
                           A.module, f'{path}.values')

    def _section(self, name, obj, path):
        C = self.built[obj['coalgebra']]
        return self.vector(obj['values'], self.codecs[obj['coalgebra']],
                           C.module, f'{path}.values')

    def _bar(self, name, obj, path):
        acodec = self.codecs[obj['algebra']]
        self.codecs[name] = _Codec(acodec, ',' if acodec.is_word else '*')
        v = self.built[obj['retraction']] if 'retraction' in obj else None
        cap = obj.get('cap', get_default_definition('bar_cap'))
        return barcobar.bar(self.built[obj['algebra']], v, cap)

    def _cobar(self, name, obj, path):
        self.codecs[name] = _Codec(self.codecs[obj['coalgebra']], '*')
        w = self.built[obj['section']] if 'section' in obj else None
        window = tuple(obj.get('window', (0, 6)))
        max_len = obj.get('max_len', get_default_definition('cobar_max_len'))
        return barcobar.cobar(self.built[obj['coalgebra']], w, window,
                              max_len)

    def _cochain(self, name, obj, path):
        C = self.built[obj['coalgebra']]
        A = self.built[obj['algebra']]
        if obj.get('canonical', False):
            if isinstance(A, barcobar.CobarAlgebra) and \
                    self.manifest.objects[obj['algebra']]['coalgebra'] == \
                    obj['coalgebra']:
                return barcobar.canonical_cochain_cobar(C, A)
            if isinstance(C, barcobar.BarCoalgebra) and \
                    self.manifest.objects[obj['coalgebra']]['algebra'] == \
                    obj['algebra']:
                return barcobar.canonical_cochain_bar(C)
            _fail('a canonical cochain needs a cobar of its coalgebra or a '
                  'bar of its algebra', f'{path}.canonical')
        ccodec = self.codecs[obj['coalgebra']]
        acodec = self.codecs[obj['algebra']]
        images = {}
        for key, vec in obj.get('images', {}).items():
            c = ccodec.decode(key)
            if c not in C.module:
                _fail(f'unknown label {key!r}', f'{path}.images.{key}')
            images[c] = self.vector(vec, acodec, A.module,
                                    f'{path}.images.{key}')
        return barcobar.TwistingCochain(C, A, images, name)

    def _twisted(self, name, obj, path):
        self.codecs[name] = PLAIN
        functor = getattr(twisted, obj['functor'])
        return functor(self.built[obj['cochain']], self.built[obj['source']],
                       check=False)

    def _ainfty(self, name, obj, path):
        module = GradedModule(self.ring, obj['basis'])
        ops = {}
        for key, table in obj['ops'].items():
            n = int(OPERATION_KEY.match(key).group(1))
            entries = {}
            for word, vec in table.items():
                w = tuple(word.split('|')) if word else ()
                if any(a not in module for a in w):
                    _fail(f'unknown label in {word!r}',
                          f'{path}.ops.{key}.{word}')
                entries[w] = self.vector(vec, PLAIN, module,
                                         f'{path}.ops.{key}.{word}')
            ops[n] = entries
        cap = obj.get('weight_cap', get_default_definition('weight_cap'))
        return AinftyAlgebra(module, ops, cap, name)

    def _fgmodule(self, name, obj, path):
        rows = obj['relations']
        if not rows or not rows[0]:
            return FgModule.free(self.ring, obj.get('generators', len(rows)))
        matrix = np.array([[self.coeff(c) for c in row] for row in rows],
                          dtype=object)
        return FgModule.from_presentation(matrix, self.ring)

    def _complex(self, name, obj, path):
        module = GradedModule(self.ring, obj['basis'])
        d = self.table(obj.get('d', {}), PLAIN, module, f'{path}.d',
                       module.labels)
        return FreeComplex(module, GradedMap(module, module, 1, d),
                           check=False)


def build_objects(manifest: Manifest) -> Dict[str, Any]:
    """
    Build every manifest object into its kernel structure.

    Returns:
        (dict): name -> CdgAlgebra, CdgCoalgebra, CdgModule, CdgComodule,
            BarCoalgebra, CobarAlgebra, TwistingCochain, AinftyAlgebra,
            FgModule, FreeComplex, a retraction {label: RingElem} or a
            section vector; sorted by name

    Raises:
        ManifestSchemaError: a label is unknown or the kernel rejects the
            data; the path names the object
    """
    builder = _Builder(manifest)
    for name in _dependency_order(manifest.objects):
        builder.build(name)
        logger.debug('built %s (%s)', name, manifest.objects[name]['type'])
    return {name: builder.built[name] for name in sorted(builder.built)}


def unit_witness(manifest: Manifest, name: str
                 ) -> Optional[StrictUnitWitness]:
    """The strict unit declared on an 'ainfty' object, if any."""
    obj = manifest.objects[name]
    if 'unit' not in obj:
        return None
    ring = manifest.ring
    retraction = {k: _coefficient(ring, c, f'objects.{name}.retraction.{k}')
                  for k, c in obj.get('retraction', {}).items()}
    return StrictUnitWitness(obj['unit'], retraction)
