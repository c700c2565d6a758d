"""Check CLI argument parsing and the sub-command results
"""
import json
import os
import tempfile
import unittest
from unittest.mock import patch
from argparse import Namespace
from conftest import run_cli
import strauslab.main


def top_level_flags(**kwargs):
    args_ns = Namespace()
    args_ns.output = None
    args_ns.skip_exists = False
    args_ns.overwrite_exists = False
    args_ns.quiet = False
    args_ns.verbose = False
    args_ns.version = False
    for key, value in kwargs.items():
        setattr(args_ns, key, value)
    return args_ns


class TestMain(unittest.TestCase):
    """Check parsing argument list for main.py parser
    """

    @patch('strauslab.main.color')
    def test_parse_color(self, mock_color):
        # test with default parameters
        strauslab.main.parse_args(['color'])
        args_ns = top_level_flags(group='Z', b='1', n=1, prime=None, maps='',
                                  format='json', window=300, func=mock_color)
        mock_color.assert_called_with(args_ns)

        # test with a cyclic group and csv output provided by user
        strauslab.main.parse_args(['color', '--group', 'Zm:9', '--b', '3',
                                   '--format', 'csv'])
        args_ns.group = 'Zm:9'
        args_ns.b = '3'
        args_ns.format = 'csv'
        mock_color.assert_called_with(args_ns)

    @patch('strauslab.main.diagonalize')
    def test_parse_diagonalize(self, mock_diagonalize):
        strauslab.main.parse_args(['diagonalize'])
        args_ns = top_level_flags(mode=31, n=2, m_bound=12, colors=0,
                                  fixture='builtin:mixed20', events='',
                                  fuel=1000, stages=10000, audit=False,
                                  table='', func=mock_diagonalize)
        mock_diagonalize.assert_called_with(args_ns)

        strauslab.main.parse_args(['--verbose', 'diagonalize', '--mode', '32',
                                   '--audit'])
        args_ns.verbose = True
        args_ns.mode = 32
        args_ns.audit = True
        mock_diagonalize.assert_called_with(args_ns)
        strauslab.LOGCONFIG.info()

    @patch('strauslab.main.jockusch')
    def test_parse_jockusch(self, mock_jockusch):
        strauslab.main.parse_args(['jockusch'])
        args_ns = top_level_flags(fixture='builtin:jockusch40', k=2, rounds=1,
                                  oracle='brute', seed=0, witness='auto',
                                  fuel=1000, func=mock_jockusch)
        mock_jockusch.assert_called_with(args_ns)

    def test_usage_errors(self):
        self.assertEqual(run_cli(['color', '--bogus'])[0], 2)
        self.assertEqual(run_cli(['diagonalize', '--mode', '33'])[0], 2)
        self.assertEqual(run_cli(['color', '--b', '0'])[0], 2)
        self.assertEqual(run_cli(['color', '--group', 'Q'])[0], 2)
        self.assertEqual(run_cli(['rado', '--ring', 'Zw'])[0], 2)
        self.assertEqual(run_cli(['jockusch', '--witness', 'case2:99'])[0], 2)
        self.assertEqual(run_cli(['--version']), (0, ''))


class CommandTest(unittest.TestCase):
    """Run the sub-commands end to end and read their JSON results
    """

    def run_json(self, arg_list, code=0):
        result, text = run_cli(arg_list)
        self.assertEqual(result, code, text)
        return json.loads(text)

    def test_color(self):
        payload = self.run_json(['color', '--group', 'Zm:9', '--b', '3'])
        self.assertEqual(payload['k'], 3)
        self.assertEqual(payload['coloring']['case'], {'odd': 3})
        code, text = run_cli(['color', '--format', 'csv', '--window', '2'])
        self.assertEqual(code, 0)
        self.assertEqual(text.splitlines()[0], 'element,color')
        self.assertEqual(len(text.splitlines()), 6)

    def test_verify(self):
        payload = self.run_json(['verify', '--b', '1', '--n', '2',
                                 '--coloring', 'parity', '--window', '300'])
        self.assertEqual(payload['result'], 'none')
        self.assertEqual(payload['window'], {'lo': -300, 'hi': 300})
        payload = self.run_json(['verify', '--group', 'Zm:4', '--coloring',
                                 'constant'], code=1)
        self.assertEqual(payload['result'], 'found')
        self.assertTrue(payload['exact'])

    def test_rado(self):
        self.assertEqual(self.run_json(['rado']), {'pr': True, 't': 3})
        self.assertEqual(self.run_json(['rado', '--ring', 'Zm:7']),
                         {'pr': True, 't': 3})
        payload = self.run_json(['rado', '--system', 'builtin:x_plus_y'])
        self.assertFalse(payload['pr'])
        self.assertEqual(payload['certificate']['report']['result'], 'none')

    def test_greedy(self):
        payload = self.run_json(['greedy', '--count', '100'])
        self.assertEqual(payload['elements'], 100)
        self.assertTrue(payload['proper'])
        payload = self.run_json(['greedy', '--group', 'Zm:9', '--b', '3',
                                 '--bipartite'], code=1)
        self.assertFalse(payload['bipartite'])
        self.assertEqual(payload['components'], 3)

    def test_tree(self):
        payload = self.run_json(['tree'])
        self.assertTrue(payload['verified'])
        self.assertEqual(len(payload['path']), 9)
        payload = self.run_json(['tree', '--k', '2'], code=1)
        self.assertEqual(payload['died_at'], 7)

    def test_jockusch(self):
        payload = self.run_json(['jockusch'])
        self.assertTrue(payload['dnc'])
        self.assertEqual(len(payload['values']), 40)
        self.assertEqual(payload['fuel'], 499)
        payload = self.run_json(['jockusch', '--witness', 'case2:1'], code=1)
        self.assertFalse(payload['dnc'])
        self.assertEqual(payload['index'], '(const 0)')

    def test_extract(self):
        payload = self.run_json(['extract'])
        self.assertTrue(payload['checked'])
        self.assertEqual(payload['values']['1'], 1)
        payload = self.run_json(['extract', '--kind', 'separator'])
        self.assertEqual(payload['values'], {'0': 0, '1': 1, '3': 0, '4': 1})
        payload = self.run_json(['extract', '--kind', 'dnc', '--colors', '3'])
        self.assertTrue(payload['checked'])
        self.assertEqual(payload['mode']['colors'], 3)
        self.assertTrue(all(0 <= v < 6 for v in payload['values'].values()))
        self.assertEqual(run_cli(['extract', '--kind', 'dnc',
                                  '--colors', '1'])[0], 2)

    def test_diagonalize(self):
        with tempfile.TemporaryDirectory() as tmp_dname:
            table = os.path.join(tmp_dname, 'table.csv')
            code, text = run_cli(['diagonalize', '--stages', '200', '--audit',
                                  '--table', table])
            self.assertEqual(code, 0)
            events = [json.loads(line) for line in text.splitlines()]
            self.assertEqual(events[0]['kind'], 'I')
            with open(table, encoding='utf-8') as handle:
                self.assertEqual(handle.readline(), 'id,h-image\n')

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as tmp_dname:
            fpath = os.path.join(tmp_dname, 'rado.json')
            self.assertEqual(run_cli(['--output', fpath, 'rado']), (0, ''))
            self.assertEqual(run_cli(['--output', fpath, 'rado'])[0], 2)
            self.assertEqual(run_cli(['--output', fpath, '--skip-exists',
                                      'rado'])[0], 0)
            with open(fpath, encoding='utf-8') as handle:
                self.assertEqual(json.load(handle), {'pr': True, 't': 3})


if __name__ == "__main__":
    unittest.main()
