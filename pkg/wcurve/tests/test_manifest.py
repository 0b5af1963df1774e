"""
Testing of manifest package
"""

import json
import os
import unittest

import pandas as pd

import wcurve
from wcurve.ainfty import AinftyAlgebra, StrictUnitWitness
from wcurve.cdg import CdgAlgebra, CdgModule
from wcurve.errors import (DanglingReference, ManifestSchemaError,
                           ManifestSyntaxError)
from wcurve.graded import FreeComplex
from wcurve.manifest import (build_objects, compile_report, emit_manifest,
                             get_default_definition, get_exit_code_definition,
                             get_object_schema_definition, parse_manifest,
                             read_manifest, summarize, unit_witness)
from wcurve.ring import LocalRingSpec

EXAMPLES = os.path.join(os.path.dirname(wcurve.__file__), 'manifest',
                        'examples')


def minimal(**extra):
    """A manifest with one algebra and no tasks."""
    data = {'ring': {'kind': 'eps', 'p': 3, 'N': 2},
            'objects': {'D': {'type': 'algebra', 'basis': {'1': 0},
                              'unit': '1', 'mult': {'1|1': {'1': 1}}}},
            'tasks': []}
    data.update(extra)
    return data


class TestReadManifest(unittest.TestCase):
    """ Unit tests for read_manifest and parse_manifest """

    def setUp(self):
        """ The small example manifest """
        self.path = os.path.join(EXAMPLES, 'small.json')
        self.manifest = read_manifest(self.path)

    def test_read_path(self):
        m = self.manifest
        self.assertEqual(m.ring, LocalRingSpec('eps', 3, 2))
        self.assertEqual(len(m.objects), 7)
        self.assertEqual(len(m.tasks), 9)
        self.assertEqual(m.source, self.path)
        self.assertDictEqual(m.objects['D']['h'], {'z': [0, 1]})
        self.assertDictEqual(m.objects['D']['mult']['z|1'], {'z': [1, 0]})
        self.assertEqual(m.task('bar')['weight_cap'], 2)
        with self.assertRaises(KeyError):
            m.task('missing')

    def test_read_text_and_bytes(self):
        text = json.dumps(minimal())
        self.assertEqual(read_manifest(text), read_manifest(text.encode()))
        with open(self.path) as f:
            self.assertEqual(read_manifest(f), self.manifest)

    def test_emit_is_canonical(self):
        text = emit_manifest(self.manifest)
        self.assertTrue(text.endswith('\n'))
        self.assertEqual(read_manifest(text), self.manifest)
        self.assertEqual(emit_manifest(read_manifest(text)), text)

    def test_default_task_name(self):
        data = minimal(tasks=[{'verb': 'check-algebra', 'object': 'D'}])
        self.assertEqual(parse_manifest(data).tasks[0]['name'], 'task0')

    def test_syntax_errors(self):
        with self.assertRaises(ManifestSyntaxError) as cm:
            read_manifest('{"ring": ')
        self.assertTrue(cm.exception.path.startswith('line 1'))
        with self.assertRaises(ManifestSyntaxError) as cm:
            read_manifest(b'\xff')
        self.assertEqual(cm.exception.path, 'byte 0')

    def test_schema_errors(self):
        cases = [
            (minimal(extra=1), '$'),
            ({'objects': {}}, '$'),
            (minimal(ring={'kind': 'eps', 'p': 4, 'N': 2}), 'ring'),
            (minimal(tasks=[{'verb': 'frobnicate'}]), 'tasks[0].verb'),
            (minimal(tasks=[{'verb': 'ext', 'module': 'D'}]),
             'tasks[0].module'),
            (minimal(tasks=[{'verb': 'check-algebra', 'object': 'D',
                             'window': [0, 1]}]), 'tasks[0].window'),
            (minimal(tasks=[{'name': 't', 'verb': 'check-algebra',
                             'object': 'D'},
                            {'name': 't', 'verb': 'check-algebra',
                             'object': 'D'}]), 'tasks[1].name'),
        ]
        for data, path in cases:
            with self.assertRaises(ManifestSchemaError) as cm:
                parse_manifest(data)
            self.assertEqual(cm.exception.path, path)

    def test_field_errors(self):
        data = minimal()
        data['objects']['D']['mult'] = {'1': {'1': 1}}
        with self.assertRaises(ManifestSchemaError) as cm:
            parse_manifest(data)
        self.assertEqual(cm.exception.path, 'objects.D.mult.1')
        data = minimal()
        data['objects']['D']['h'] = {'1': True}
        with self.assertRaises(ManifestSchemaError) as cm:
            parse_manifest(data)
        self.assertEqual(cm.exception.path, 'objects.D.h.1')
        data = minimal()
        del data['objects']['D']['unit']
        with self.assertRaises(ManifestSchemaError) as cm:
            parse_manifest(data)
        self.assertEqual(cm.exception.path, 'objects.D')

    def test_dangling_reference(self):
        data = minimal()
        data['objects']['F'] = {'type': 'free_module', 'algebra': 'E',
                                'generators': {'u': 0}}
        with self.assertRaises(DanglingReference) as cm:
            parse_manifest(data)
        self.assertEqual(cm.exception.path, 'objects.F.algebra')

    def test_fractions(self):
        data = minimal()
        data['objects']['D']['mult']['1|1'] = {'1': '4/2'}
        m = parse_manifest(data)
        self.assertDictEqual(m.objects['D']['mult']['1|1'], {'1': [2, 0]})


class TestBuildObjects(unittest.TestCase):
    """ Unit tests for build_objects and unit_witness """

    def setUp(self):
        """ The small example manifest """
        self.manifest = read_manifest(os.path.join(EXAMPLES, 'small.json'))

    def test_build(self):
        built = build_objects(self.manifest)
        self.assertListEqual(list(built), sorted(self.manifest.objects))
        self.assertIsInstance(built['D'], CdgAlgebra)
        self.assertIsInstance(built['F'], CdgModule)
        self.assertIsInstance(built['K'], FreeComplex)
        self.assertIsInstance(built['A'], AinftyAlgebra)
        self.assertEqual(built['A'].weight_cap, 3)
        self.assertEqual(built['P'].factors, (1,))
        self.assertEqual(built['Q'].factors, (2,))

    def test_unit_witness(self):
        witness = unit_witness(self.manifest, 'A')
        R = self.manifest.ring
        self.assertEqual(witness, StrictUnitWitness('1', {'1': R.one}))

    def test_unknown_label(self):
        data = minimal()
        data['objects']['D']['mult']['1|q'] = {'1': 1}
        with self.assertRaises(ManifestSchemaError):
            build_objects(parse_manifest(data))

    def test_other_examples_build(self):
        for name in ('clifford.json', 'adjunction.json'):
            built = build_objects(read_manifest(os.path.join(EXAMPLES, name)))
            self.assertIn('C', built)


class TestDefinitions(unittest.TestCase):
    """ Unit tests for the manifest definitions """

    def test_defaults(self):
        self.assertEqual(get_default_definition('weight_cap'), 4)
        self.assertEqual(get_default_definition('budget'), 200000)
        with self.assertRaises(ValueError):
            get_default_definition('colour')

    def test_exit_codes(self):
        self.assertEqual(get_exit_code_definition('pass'), 0)
        self.assertEqual(get_exit_code_definition('window'), 3)
        with self.assertRaises(ValueError):
            get_exit_code_definition('fatal')

    def test_schema(self):
        schema = get_object_schema_definition('algebra')
        self.assertEqual(schema['basis'], ('degrees', True))
        self.assertEqual(schema['h'], ('vector', False))
        with self.assertRaises(ValueError):
            get_object_schema_definition('sheaf')


class TestCompileReport(unittest.TestCase):
    """ Unit tests for compile_report """

    def setUp(self):
        """ Two task payloads, one failing """
        self.results = [
            {'task': 'a', 'verb': 'check-algebra', 'passed': True,
             'exit_code': 0,
             'report': {'checked': 4, 'skipped': 1, 'failures': []}},
            {'task': 'b', 'verb': 'ext', 'passed': False, 'exit_code': 3,
             'error': {'type': 'WindowTruncation', 'message': 'degree 2'}},
        ]

    def test_summarize(self):
        self.assertEqual(summarize(self.results[0]), '4 checked, 1 skipped')
        self.assertEqual(summarize(self.results[1]),
                         'WindowTruncation: degree 2')

    def test_compile_dict(self):
        report = compile_report(self.results, 'dict')
        self.assertFalse(report['passed'])
        self.assertEqual(report['exit_code'], 3)
        self.assertEqual(len(report['tasks']), 2)

    def test_compile_pandas(self):
        df = compile_report(self.results, 'pandas')
        expected = pd.DataFrame(
            {'task': ['a', 'b'], 'verb': ['check-algebra', 'ext'],
             'passed': [True, False], 'exit_code': [0, 3],
             'summary': ['4 checked, 1 skipped',
                         'WindowTruncation: degree 2']}).set_index('task')
        pd.testing.assert_frame_equal(df, expected)

    def test_invalid_types(self):
        with self.assertRaises(NotImplementedError):
            compile_report(self.results, 'xarray')
        with self.assertRaises(ValueError):
            compile_report(self.results, 'csv')

    def test_empty_warns(self):
        with self.assertWarns(UserWarning):
            report = compile_report([], 'dict')
        self.assertEqual(report['exit_code'], 0)


if __name__ == '__main__':
    unittest.main()
