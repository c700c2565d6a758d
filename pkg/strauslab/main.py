"""Command-line interface for building and checking Straus colorings and for
running the diagonalization constructions on toy machines

Defines module functions for sub-commands; each returns the exit code:
0 success, 1 verified-negative result, 2 usage error.
"""
import sys
import platform
import logging
import argparse
import strauslab
from strauslab.abelian import Cyclic, Integers
from strauslab.config import CommandsConfig, ConfigError, RunConfig
from strauslab.diagonal import (Construction, EventOracle,
                                StageBudgetExceeded, UnstableElement, audit,
                                extract_dnc, extract_pa, extract_separator,
                                halting_requirements_acted,
                                reference_bad_coloring)
from strauslab.machine import (Case2, WitnessError, brute_force_dnc, is_dnc,
                               iterated_domain, random_dnc, reduce_iterated,
                               reduced_fuel)
from strauslab.report import Report
from strauslab.straus import (EquationSpec, TableColoring, straus_coloring,
                              straus_star_coloring)
from strauslab.verify import (LinearEquation, UnsupportedEquation, Window,
                              conflict_graph, constant_solution,
                              find_pairwise_mono, greedy_color,
                              non_pr_certificate, two_color_bipartite,
                              verification_report)
from strauslab.wkl import TreeDied, extract_path, grow, new_tree

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def new_report(config):
    return Report(output=config.output,
                  overwrite_exists=config.overwrite_exists,
                  skip_exists=config.skip_exists)


def color(args):
    """Wrapper for sub-command color

    Params:
        args: argparse.Namespace object with argument parser attributes
    """
    config = RunConfig(args)
    spec = config.group()
    b = config.nonzero(spec)
    maps = config.maps()
    if maps:
        coloring = straus_star_coloring(spec, b, args.n, maps)
    else:
        coloring = straus_coloring(spec, b, args.n, args.prime)
    payload = {'group': spec.label, 'b': spec.format_element(b),
               'n': args.n, 'k': coloring.k, 'coloring': coloring.to_dict()}
    text = None
    if args.format == 'csv':
        window = config.window(spec)
        table = TableColoring({x: coloring.color(x)
                               for x in window.elements}, coloring.k)
        text = table.to_csv(spec)
    new_report(config).emit('color', payload, text)
    return EXIT_OK


def verify(args):
    """Wrapper for sub-command verify; a solution found is a negative
    result
    """
    config = RunConfig(args)
    spec = config.group()
    b = config.nonzero(spec)
    maps = config.maps()
    eq = EquationSpec(args.n, b, maps)
    coloring = config.coloring(spec, b, args.n, maps)
    report = verification_report(spec, coloring, eq, config.window(spec))
    payload = report.to_dict()
    payload['k'] = coloring.k
    new_report(config).emit('verify', payload)
    return EXIT_NEGATIVE if report.found else EXIT_OK


def rado(args):
    """Wrapper for sub-command rado; both answers are successful runs"""
    logger = logging.getLogger('main.rado')
    config = RunConfig(args)
    ring = config.group('ring')
    if not isinstance(ring, (Integers, Cyclic)):
        raise ConfigError('rado works over Z or Zm:<m>')
    matrix, rhs = config.system()
    t = constant_solution(matrix, rhs, ring)
    if t is not None:
        payload = {'pr': True, 't': t}
    else:
        payload = {'pr': False}
        if len(matrix) == 1:
            window = None
            if isinstance(ring, Integers):
                window = Window.interval(-args.window, args.window)
            equation = LinearEquation(tuple(matrix[0]), rhs[0])
            try:
                coloring, report = non_pr_certificate(equation, ring, window)
                payload['certificate'] = {'coloring': coloring.to_dict(),
                                          'report': report.to_dict()}
            except UnsupportedEquation as err:
                logger.info('%s', err)
    new_report(config).emit('rado', payload)
    return EXIT_OK


def greedy(args):
    """Wrapper for sub-command greedy; an odd cycle under --bipartite is a
    negative result
    """
    config = RunConfig(args)
    spec = config.group()
    b = config.nonzero(spec)
    order = spec.order_of(b)
    payload = {'group': spec.label, 'b': spec.format_element(b),
               'order': str(order)}
    if args.bipartite:
        window = None if spec.is_finite() else \
            Window.of(spec.enumerate(args.count))
        graph = conflict_graph(spec, b, window)
        coloring = two_color_bipartite(graph)
        payload['bipartite'] = coloring is not None
        payload['components'] = len(graph.components())
        payload['colors'] = 2 if coloring is not None else None
        new_report(config).emit('greedy', payload)
        return EXIT_OK if coloring is not None else EXIT_NEGATIVE
    coloring = greedy_color(spec, b, args.count)
    colors = coloring.colors
    payload['elements'] = len(colors)
    payload['colors'] = len(set(colors.values()))
    payload['proper'] = all(colors[x] != colors.get(spec.add(x, b))
                            for x in colors)
    new_report(config).emit('greedy', payload)
    return EXIT_OK if payload['proper'] else EXIT_NEGATIVE


def diagonalize(args):
    """Wrapper for sub-command diagonalize; writes the event log as JSON
    lines, audit violations are a negative result
    """
    config = RunConfig(args)
    report = new_report(config)
    mode = config.mode()
    construction = Construction.start(mode, config.source(), fuel=args.fuel,
                                      budget=args.stages)
    violations = []

    def on_stage(state):
        if args.audit and state.event and state.event['kind'] == 'R':
            violations.extend(dict(v.to_dict(), stage=state.stage)
                              for v in audit(state))

    state = construction.run(args.stages, on_stage)
    if args.table:
        report.write_file(args.table, construction.table_csv())
    payload = {'mode': mode.to_dict(), 'stages': state.stage,
               'carrier': len(state.images),
               'acted': sorted(state.acted),
               'events': len(construction.events),
               'audited': args.audit,
               'violations': violations}
    report.emit('diagonalize', payload, construction.dump())
    return EXIT_NEGATIVE if violations else EXIT_OK


def extract(args):
    """Wrapper for sub-command extract; the extracted function is checked
    against the source, a failed check is a negative result
    """
    config = RunConfig(args)
    if args.kind == 'separator':
        source = config.events()
        mode = config.mode(31)
    else:
        source = config.fixture()
        mode = config.mode(31 if args.kind == 'pa' else 32)
    construction = Construction.start(mode, source, fuel=args.fuel,
                                      budget=args.stages)
    candidates = list(construction.state.source.candidates())

    def ready(state):
        return (halting_requirements_acted(state)
                and all(e in state.witnesses for e in candidates))

    state = construction.run_until(ready)
    ids = [x for e in candidates for x in state.witnesses[e]]
    coloring = reference_bad_coloring(state, ids)
    source_view = state.source
    if args.kind == 'pa':
        values = extract_pa(coloring, state, candidates)
        checked = all(values[e] == source_view.final_value(e)
                      for e in candidates
                      if source_view.final_value(e) in (0, 1))
    elif args.kind == 'dnc':
        values = extract_dnc(coloring, state, candidates)
        indices = {e: source.phi(e) for e in candidates}
        checked = is_dnc(values, mode.value_bound, indices, args.fuel)
    else:
        members = extract_separator(coloring, state, candidates)
        values = {e: int(e in members) for e in candidates}
        checked = _separates(source, members)
    payload = {'kind': args.kind, 'mode': mode.to_dict(),
               'stage': state.stage,
               'values': {str(e): v for e, v in values.items()},
               'checked': checked}
    new_report(config).emit('extract', payload)
    return EXIT_OK if checked else EXIT_NEGATIVE


def _separates(oracle: EventOracle, members):
    return all((event.kind == 'phi1') == (e in members)
               for e, event in oracle.events.items())


def tree(args):
    """Wrapper for sub-command tree; a tree dying before the requested
    depth is a negative result
    """
    config = RunConfig(args)
    spec = config.group()
    b = config.nonzero(spec)
    maps = config.maps()
    grown = new_tree(spec, b, args.n, args.k, maps,
                     symmetry=not args.no_symmetry)
    try:
        grown = grow(grown, args.depth)
    except TreeDied as err:
        payload = {'levels': err.tree.sizes(), 'died_at': err.level}
        new_report(config).emit('tree', payload)
        return EXIT_NEGATIVE
    path = extract_path(grown, args.depth)
    solution = find_pairwise_mono(spec, path, grown.eq,
                                  Window.of(path.domain))
    payload = {'levels': grown.sizes(),
               'path': [[spec.format_element(x), c]
                        for x, c in path.colors.items()],
               'verified': solution is None}
    new_report(config).emit('tree', payload)
    return EXIT_OK if solution is None else EXIT_NEGATIVE


def jockusch(args):
    """Wrapper for sub-command jockusch; an invalid or missing case
    witness is a negative result
    """
    config = RunConfig(args)
    enumeration = config.fixture()
    indices = list(enumeration)
    levels, bound = iterated_domain(indices, args.k, args.rounds)
    if args.oracle == 'random':
        oracle = random_dnc(bound, levels[-1], args.fuel, args.seed)
    else:
        oracle = brute_force_dnc(bound, levels[-1], args.fuel)
    witnesses = None
    if args.witness != 'auto':
        witnesses = [_parse_witness(args.witness, enumeration)]
    payload = {'k': args.k, 'rounds': args.rounds, 'bound': bound,
               'oracle': args.oracle}
    try:
        h = reduce_iterated(oracle, args.k, args.rounds, indices, args.fuel,
                            witnesses)
    except WitnessError as err:
        payload['dnc'] = False
        payload['error'] = str(err)
        if err.index is not None:
            payload['index'] = str(err.index)
        new_report(config).emit('jockusch', payload)
        return EXIT_NEGATIVE
    payload['dnc'] = True
    payload['fuel'] = reduced_fuel(args.fuel, args.rounds)
    payload['values'] = [h[expr] for expr in indices]
    new_report(config).emit('jockusch', payload)
    return EXIT_OK


def _parse_witness(text, enumeration):
    kind, _, index = text.partition(':')
    try:
        position = int(index)
    except ValueError as err:
        raise ConfigError(f'invalid witness "{text}"') from err
    if kind != 'case2' or not 0 <= position < len(enumeration):
        raise ConfigError(f'invalid witness "{text}" (use case2:<i> with '
                          f'0 <= i < {len(enumeration)})')
    return Case2(enumeration.phi(position))


def arg_command_group(parser, group_name, group_argument_list):
    """Add a group of optional arguments to the parser.

    Params:
        parser: argparse.ArgumentParser where the argument group will be added.
        group_name: String with the name of the argument group.
        group_argument_list: List of dict objects where each dict specifies an
            argument (name, default, help, optional type and choices).
    Returns:
        group: The argument group object that has been created for the parser.
    Raises:
        ValueError: if the group_argument_list is empty
    """
    if not group_argument_list:
        raise ValueError('Invalid group_argument_list')

    types = {'int': int, 'str': str}
    group = parser.add_argument_group(group_name)
    for arg_dict in group_argument_list:
        arg_name = f'--{arg_dict["name"]}'
        arg_help = arg_dict['help']
        arg_value = arg_dict['default']
        if isinstance(arg_value, bool):
            # Boolean flags always switch a behavior on
            group.add_argument(arg_name, action='store_true', help=arg_help)
            continue
        kwargs = {'default': arg_value, 'help': arg_help}
        if 'type' in arg_dict:
            kwargs['type'] = types[arg_dict['type']]
        if 'choices' in arg_dict:
            kwargs['choices'] = arg_dict['choices']
        group.add_argument(arg_name, **kwargs)

    return group


def parse_args(args_list):
    """Parse command-line arguments and call the function of the selected
    sub-command.

    Each command sets its function to the func attribute with set_defaults.
    After all command-line flags have been processed, the function associated
    with func is executed.

    Params:
        args_list: List of strings with command-line flags (sys.argv[1:])
    Returns: exit code of the sub-command function
    """
    logger = logging.getLogger('main.parse_args')

    # Initiate CommandsConfig in order to obtain command definitions
    cfg = CommandsConfig()

    descr = ('Build Straus colorings, verify them, decide partition '
             'regularity and run diagonalization constructions on toy '
             'machines.')
    parser = argparse.ArgumentParser(prog='strauslab', description=descr)
    parser.add_argument('--output', default=None,
                        help='Write the result to this file instead of stdout')
    parser.add_argument('--skip-exists', action='store_true',
                        help='Skip writing files that already exist')
    parser.add_argument('--overwrite-exists', action='store_true',
                        help='Overwrite files that already exist')
    parser.add_argument('--quiet', action='store_true',
                        help='Print only warning/error messages')
    parser.add_argument('--verbose', action='store_true',
                        help='Print debug messages')
    parser.add_argument('--version', action='store_true',
                        help='Print version')
    # Without a command the help message is printed
    parser.set_defaults(func=lambda _: parser.print_help())
    subparsers = parser.add_subparsers(help='Commands')
    for command, func in (('color', color), ('verify', verify),
                          ('rado', rado), ('greedy', greedy),
                          ('diagonalize', diagonalize), ('extract', extract),
                          ('tree', tree), ('jockusch', jockusch)):
        cmd_parser = subparsers.add_parser(command, help=cfg.help(command))
        arg_command_group(cmd_parser, f'{command} parameters',
                          group_argument_list=cfg.values(command))
        cmd_parser.set_defaults(func=func)
    args_ns = parser.parse_args(args=args_list)

    # If version flag is set: print version and quit
    if args_ns.version:
        logger.info('strauslab v%s', strauslab.__version__)
        return EXIT_OK

    # Set log level according to command-line flags
    if args_ns.verbose:
        strauslab.LOGCONFIG.debug()
        logger.debug('%s:: %s', platform.node(), ' '.join(args_list))
        logger.debug('strauslab v%s\n', strauslab.__version__)
    elif args_ns.quiet:
        strauslab.LOGCONFIG.warning()

    logger.debug('Options:\n%s', ', '.join(f'{key} : {val}'
                                           for key, val in
                                           vars(args_ns).items()))
    return args_ns.func(args_ns)


def main(argv=None):
    """Entrypoint for starting the command-line interface.

    Params:
        argv: List of command-line flags, default: sys.argv[1:]
    Returns: exit code (0 success, 1 verified-negative, 2 usage error)
    """
    logger = logging.getLogger('main.main')
    argv = sys.argv[1:] if argv is None else argv
    try:
        code = parse_args(argv)
    except SystemExit as err:
        # argparse exits with 2 on usage errors and 0 after --help
        return err.code if isinstance(err.code, int) else EXIT_USAGE
    except (StageBudgetExceeded, UnstableElement) as err:
        logger.error('%s', err)
        return EXIT_NEGATIVE
    except (ValueError, LookupError, ArithmeticError, OSError) as err:
        logger.error('%s', err)
        return EXIT_USAGE
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
