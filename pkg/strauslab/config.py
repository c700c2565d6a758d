"""Command definitions and typed run configurations.

CommandsConfig loads the sub-command flags from commands.json; RunConfig
turns the parsed command-line values into groups, elements, maps, windows,
fixtures and linear systems.
"""
import os
import json
import logging
from jinja2 import Template
from strauslab import pkg
from strauslab.abelian import (Cyclic, FreeOmega, GroupError, Integers, Seq,
                               Sequences)
from strauslab.diagonal import B_ID, Construction, EventOracle, Mode
from strauslab.machine import parse_fixture
from strauslab.straus import (ColoringError, ConstantColoring, TableColoring,
                              coloring_from_json, parse_map, straus_coloring,
                              straus_star_coloring)
from strauslab.verify import Window


class ConfigError(ValueError):
    """Raised if a command-line value cannot be turned into a run
    configuration.
    """


class CommandsConfig():
    """Definitions of the optional parameters of the sub-commands
    """

    # Static variable storing the command definitions
    __commands_dict = None

    DEFAULTS = {'fuel': 1000, 'stages': 10000, 'seed': 0, 'm_bound': 12,
                'window': 300}

    def __init__(self):
        """Loads dictionary with command definitions, if not already present
        """
        if not CommandsConfig.__commands_dict:
            CommandsConfig.__commands_dict = self.__load_commands_dict()
        self.__commands_dict = CommandsConfig.__commands_dict

    @classmethod
    def reset(cls):
        """Forget the cached definitions, e.g. after changing the
        environment
        """
        cls.__commands_dict = None

    def commands(self):
        return list(self.__commands_dict)

    def help(self, command):
        return self.__commands_dict[command].get('help', '')

    def values(self, command, section='parameters'):
        """Obtain a section for a command from the json configuration

        Params:
            command: String specifying the command (color, verify, ...)
            section: String specifying the configuration section
        Returns: List of dict objects defining the flags of the section,
            empty list if the section is not available
        """
        cmd_dict = self.__commands_dict[command]
        try:
            result_list = cmd_dict[section]
        except KeyError:
            result_list = []

        return result_list

    @staticmethod
    def __load_commands_dict():
        """Load commands definition from package resource

        Returns:
            commands_dict: Dictionary representing commands.json
        """
        commands_str = pkg.string('commands.json')
        context = CommandsConfig.defaults_context()
        commands_str = Template(commands_str).render(**context)
        return json.loads(commands_str)

    @staticmethod
    def defaults_context(environ=None):
        """Default values substituted into commands.json.

        Each key can be overridden by the environment variable
        STRAUSLAB_<KEY>, e.g. STRAUSLAB_FUEL=5000.

        Raises:
            ConfigError: if an override is not a natural number
        """
        environ = os.environ if environ is None else environ
        context = dict(CommandsConfig.DEFAULTS)
        for key in context:
            env_name = f'STRAUSLAB_{key.upper()}'
            if env_name not in environ:
                continue
            try:
                value = int(environ[env_name])
            except ValueError as err:
                raise ConfigError(f'{env_name} must be an integer, got '
                                  f'"{environ[env_name]}"') from err
            if value < 0:
                raise ConfigError(f'{env_name} must be >= 0')
            context[key] = value
        return context


def read_text(path, resource_dir=None, suffix=''):
    """Contents of a file, or of a package resource for 'builtin:<name>'

    Raises:
        ConfigError: if the file or resource cannot be read
    """
    if path.startswith('builtin:'):
        name = path[len('builtin:'):]
        try:
            return pkg.string(f'{resource_dir}/{name}{suffix}')
        except FileNotFoundError as err:
            raise ConfigError(f'no built-in resource "{name}"') from err
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            return handle.read()
    except OSError as err:
        raise ConfigError(f'cannot read {path}: {err.strerror}') from err


def parse_group(text):
    """Group spec from 'Z', 'Zm:<m>', 'Zw' or 'free:<table.csv>'."""
    text = text.strip()
    if text == 'Z':
        return Integers()
    if text == 'Zw':
        return Sequences()
    if text.startswith('Zm:'):
        try:
            return Cyclic(int(text[3:]))
        except (ValueError, GroupError) as err:
            raise ConfigError(f'invalid cyclic group "{text}": {err}') \
                from err
    if text.startswith('free:'):
        table = read_text(text[len('free:'):])
        try:
            return FreeOmega(Construction.from_table(table))
        except ValueError as err:
            raise ConfigError(str(err)) from err
    raise ConfigError(f'unknown group "{text}" (use Z, Zm:<m>, Zw or '
                      'free:<table.csv>)')


def parse_maps(text):
    """Tuple of GroupMap from a comma-separated list, () for ''."""
    if not text:
        return ()
    try:
        return tuple(parse_map(name) for name in text.split(','))
    except ColoringError as err:
        raise ConfigError(str(err)) from err


def parse_system(text):
    """(matrix, rhs) from rows of space-separated integers, last column b_i.

    Blank lines and lines starting with '#' are ignored.
    """
    matrix, rhs = [], []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError as err:
            raise ConfigError(f'line {number}: {err}') from err
        if len(row) < 2:
            raise ConfigError(f'line {number}: need coefficients and b_i')
        matrix.append(row[:-1])
        rhs.append(row[-1])
    if not matrix:
        raise ConfigError('empty system')
    return matrix, rhs


def parity_coloring(spec):
    """Parity coloring x -> psi(x) in {0, 1/2}, psi(1) = 1/2 (first
    coordinate for sequence presentations)
    """
    if isinstance(spec, Sequences):
        one = Seq.unit(1)
    elif isinstance(spec, FreeOmega):
        one = B_ID
    else:
        one = 1
    try:
        return straus_coloring(spec, one, 1, prime=2)
    except ArithmeticError as err:
        raise ConfigError(f'no parity coloring on {spec.label}: {err}') \
            from err


class RunConfig():
    """Typed view of the parsed command-line arguments of one run
    """

    def __init__(self, args):
        """Params:
            args: argparse.Namespace object with command-line arguments
        """
        self.__args_dict = dict(vars(args))
        self.output = self.__args_dict.get('output')
        self.overwrite_exists = self.__args_dict.get('overwrite_exists',
                                                     False)
        self.skip_exists = self.__args_dict.get('skip_exists', False)

    def get(self, name, default=None):
        return self.__args_dict.get(name, default)

    def group(self, flag='group'):
        return parse_group(self.__args_dict[flag])

    def element(self, spec, flag='b'):
        try:
            return spec.parse_element(self.__args_dict[flag])
        except GroupError as err:
            raise ConfigError(str(err)) from err

    def nonzero(self, spec, flag='b'):
        x = self.element(spec, flag)
        if spec.embed(x) == spec.ambient.zero:
            raise ConfigError('b must be nonzero')
        return x

    def maps(self):
        return parse_maps(self.__args_dict.get('maps', ''))

    def window(self, spec):
        radius = self.__args_dict.get('window')
        if radius is None or radius < 0:
            raise ConfigError('window radius must be >= 0')
        return Window.radius(spec, radius)

    def fixture(self):
        return parse_fixture(read_text(self.__args_dict['fixture'],
                                       'fixtures', '.sexp'))

    def events(self):
        text = read_text(self.__args_dict['events'], 'fixtures', '.json')
        try:
            return EventOracle.from_json(text)
        except (ValueError, TypeError) as err:
            raise ConfigError(f'malformed event list: {err}') from err

    def source(self):
        """Event oracle if --events is set, the fixture enumeration
        otherwise
        """
        if self.__args_dict.get('events'):
            return self.events()
        return self.fixture()

    def mode(self, kind=None):
        kind = self.__args_dict.get('mode', 31) if kind is None else kind
        n, colors = 1, 0
        if kind == 32:
            n = self.__args_dict.get('n', 1)
            colors = self.__args_dict.get('colors', 0)
        try:
            return Mode(kind, n, self.__args_dict.get('m_bound', 12), colors)
        except ValueError as err:
            raise ConfigError(str(err)) from err

    def system(self):
        return parse_system(read_text(self.__args_dict['system'], 'data',
                                      '.txt'))

    def coloring(self, spec, b, n, maps=()):
        """Coloring selected by --coloring: straus, parity, constant or a
        file written by the color command
        """
        logger = logging.getLogger('RunConfig.coloring')
        name = self.__args_dict.get('coloring', 'straus')
        if name == 'straus':
            distinct = tuple(dict.fromkeys(maps))
            if len(distinct) > 1 or (distinct and distinct[0].name != 'id'):
                return straus_star_coloring(spec, b, n, distinct)
            return straus_coloring(spec, b, n, self.__args_dict.get('prime'))
        if name == 'parity':
            return parity_coloring(spec)
        if name == 'constant':
            return ConstantColoring()
        text = read_text(name)
        logger.debug('coloring from %s', name)
        if name.endswith('.csv'):
            return TableColoring.from_csv(spec, text)
        return coloring_from_json(spec, text)
