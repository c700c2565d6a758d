"""Check that command definitions and CLI arguments are correctly
represented
"""
import os
import tempfile
import unittest
from argparse import Namespace
from unittest.mock import patch
from strauslab.abelian import Cyclic, FreeOmega, Integers, Sequences
from strauslab.config import (CommandsConfig, ConfigError, RunConfig,
                              parity_coloring, parse_group, parse_maps,
                              parse_system, read_text)
from strauslab.diagonal import EventOracle, Mode
from strauslab.straus import ConstantColoring, ProductColoring, TableColoring


class CommandsConfigTest(unittest.TestCase):

    def tearDown(self):
        CommandsConfig.reset()

    def test_commands(self):
        cfg = CommandsConfig()
        self.assertEqual(cfg.commands(), ['color', 'verify', 'rado', 'greedy',
                                          'diagonalize', 'extract', 'tree',
                                          'jockusch'])
        self.assertTrue(cfg.help('rado'))
        self.assertEqual(cfg.values('rado', 'missing'), [])

    def test_rendered_defaults(self):
        params = {p['name']: p for p in CommandsConfig().values('diagonalize')}
        self.assertEqual(params['fuel']['default'], '1000')
        self.assertEqual(params['stages']['default'], '10000')
        self.assertIs(params['audit']['default'], False)
        self.assertIn('1000', params['fuel']['help'])

    def test_environment_override(self):
        with patch.dict(os.environ, {'STRAUSLAB_FUEL': '5000'}):
            CommandsConfig.reset()
            params = {p['name']: p for p in CommandsConfig().values('extract')}
        self.assertEqual(params['fuel']['default'], '5000')

    def test_defaults_context(self):
        self.assertEqual(CommandsConfig.defaults_context({}),
                         CommandsConfig.DEFAULTS)
        context = CommandsConfig.defaults_context({'STRAUSLAB_SEED': '7'})
        self.assertEqual(context['seed'], 7)
        for value in ('x', '-1'):
            with self.assertRaises(ConfigError):
                CommandsConfig.defaults_context({'STRAUSLAB_WINDOW': value})


class ParseTest(unittest.TestCase):

    def test_groups(self):
        self.assertEqual(parse_group('Z'), Integers())
        self.assertEqual(parse_group(' Zw '), Sequences())
        self.assertEqual(parse_group('Zm:9'), Cyclic(9))
        for text in ('Zm:1', 'Zm:x', 'Q', 'free:/nonexistent/table.csv'):
            with self.assertRaises(ConfigError):
                parse_group(text)

    def test_free_group(self):
        with tempfile.TemporaryDirectory() as tmp_dname:
            fpath = os.path.join(tmp_dname, 'table.csv')
            with open(fpath, 'w', encoding='utf-8') as handle:
                handle.write('id,h-image\n0,\n1,1\n2,-1\n')
            spec = parse_group(f'free:{fpath}')
            self.assertIsInstance(spec, FreeOmega)
            self.assertEqual(spec.neg(1), 2)
            with open(fpath, 'w', encoding='utf-8') as handle:
                handle.write('id,h-image\n0,1\n')
            with self.assertRaises(ConfigError):
                parse_group(f'free:{fpath}')

    def test_maps(self):
        self.assertEqual(parse_maps(''), ())
        self.assertEqual([f.name for f in parse_maps('id,mul:2')],
                         ['id', 'mul:2'])
        with self.assertRaises(ConfigError):
            parse_maps('id,twice')

    def test_system(self):
        matrix, rhs = parse_system('# x + y = 3\n\n1 1 3\n2 -1 0\n')
        self.assertEqual(matrix, [[1, 1], [2, -1]])
        self.assertEqual(rhs, [3, 0])
        for text in ('1 x 3', '5', '# only a comment\n'):
            with self.assertRaises(ConfigError):
                parse_system(text)

    def test_read_text(self):
        self.assertEqual(read_text('builtin:x_plus_y', 'data', '.txt').split(),
                         ['1', '1', '3'])
        with self.assertRaises(ConfigError):
            read_text('builtin:nothing', 'data', '.txt')
        with self.assertRaises(ConfigError):
            read_text('/nonexistent/system.txt')

    def test_parity_coloring(self):
        coloring = parity_coloring(Integers())
        self.assertEqual([coloring.color(x) for x in range(-2, 3)],
                         [0, 1, 0, 1, 0])
        self.assertEqual(parity_coloring(Cyclic(8)).k, 2)
        with self.assertRaises(ConfigError):
            parity_coloring(Cyclic(9))


class RunConfigTest(unittest.TestCase):

    def args(self, **kwargs):
        args_ns = Namespace(output=None, overwrite_exists=False,
                            skip_exists=False, group='Z', b='1', n=1,
                            maps='', prime=None, window=5,
                            coloring='straus')
        for key, value in kwargs.items():
            setattr(args_ns, key, value)
        return args_ns

    def test_flags(self):
        config = RunConfig(self.args(output='out.json', skip_exists=True))
        self.assertEqual(config.output, 'out.json')
        self.assertTrue(config.skip_exists)
        self.assertFalse(config.overwrite_exists)
        self.assertEqual(config.get('n'), 1)
        self.assertIsNone(config.get('missing'))

    def test_elements(self):
        config = RunConfig(self.args(group='Zm:12', b='15'))
        spec = config.group()
        self.assertEqual(config.nonzero(spec), 3)
        with self.assertRaises(ConfigError):
            RunConfig(self.args(b='0')).nonzero(Integers())
        with self.assertRaises(ConfigError):
            RunConfig(self.args(b='one')).element(Integers())

    def test_window(self):
        config = RunConfig(self.args())
        self.assertEqual(len(config.window(Integers()).elements), 11)
        self.assertTrue(config.window(Cyclic(4)).exact)
        self.assertEqual(len(config.window(Sequences()).elements), 11)
        with self.assertRaises(ConfigError):
            RunConfig(self.args(window=-1)).window(Integers())

    def test_sources(self):
        config = RunConfig(self.args(fixture='builtin:mixed20', events=''))
        self.assertEqual(len(config.source()), 20)
        config = RunConfig(self.args(fixture='builtin:mixed20',
                                     events='builtin:events'))
        self.assertIsInstance(config.source(), EventOracle)
        with self.assertRaises(ConfigError):
            RunConfig(self.args(fixture='builtin:nothing')).fixture()

    def test_malformed_events(self):
        with tempfile.TemporaryDirectory() as tmp_dname:
            fpath = os.path.join(tmp_dname, 'events.json')
            with open(fpath, 'w', encoding='utf-8') as handle:
                handle.write('{"0": ["phi0", 1], "0": ["phi2", 2]}')
            with self.assertRaises(ConfigError):
                RunConfig(self.args(events=fpath)).events()

    def test_mode(self):
        config = RunConfig(self.args(mode=32, n=3, m_bound=4))
        self.assertEqual(config.mode(), Mode(32, 3, 4))
        self.assertEqual(config.mode(31), Mode(31, 1, 4))
        with self.assertRaises(ConfigError):
            RunConfig(self.args(mode=32, n=1, m_bound=4)).mode()
        config = RunConfig(self.args(mode=32, n=2, m_bound=4, colors=5))
        self.assertEqual(config.mode(), Mode(32, 2, 4, 5))
        self.assertEqual(config.mode(31), Mode(31, 1, 4))
        with self.assertRaises(ConfigError):
            RunConfig(self.args(mode=32, n=2, colors=1)).mode()

    def test_system(self):
        config = RunConfig(self.args(system='builtin:rado_example'))
        matrix, rhs = config.system()
        self.assertEqual(len(matrix), 4)
        self.assertEqual(rhs, [24, 0, 3, 3])

    def test_colorings(self):
        spec = Cyclic(12)
        config = RunConfig(self.args(coloring='constant'))
        self.assertIsInstance(config.coloring(spec, 3, 1), ConstantColoring)
        config = RunConfig(self.args(coloring='straus'))
        self.assertEqual(config.coloring(spec, 3, 2).k, 4)
        maps = parse_maps('id,mul:2')
        self.assertIsInstance(config.coloring(spec, 3, 1, maps),
                              ProductColoring)
        with tempfile.TemporaryDirectory() as tmp_dname:
            fpath = os.path.join(tmp_dname, 'coloring.csv')
            with open(fpath, 'w', encoding='utf-8') as handle:
                handle.write('element,color\n0,0\n1,1\n')
            config = RunConfig(self.args(coloring=fpath))
            self.assertEqual(config.coloring(spec, 3, 1),
                             TableColoring({0: 0, 1: 1}))


if __name__ == "__main__":
    unittest.main()
