import io
import itertools
from contextlib import redirect_stdout
from strauslab import pkg
from strauslab.machine import parse_fixture


def fixture_enumeration(name):
    return parse_fixture(pkg.string(f'fixtures/{name}.sexp'))


def ref_rado_system():
    matrix = [[2, 3, -1, 4],
              [1, -4, 2, 1],
              [3, 1, -5, 2],
              [1, 2, 1, -3]]
    rhs = [24, 0, 3, 3]
    return matrix, rhs


def naive_pairwise_mono(coloring, m, b, n):
    """Brute force over all 2n-tuples of Z_m"""
    for values in itertools.product(range(m), repeat=2 * n):
        xs, ys = values[::2], values[1::2]
        if any(coloring.color(x) != coloring.color(y)
               for x, y in zip(xs, ys)):
            continue
        if (sum(xs) - sum(ys)) % m == b % m:
            return values
    return None


def has_good_coloring(m, b, k):
    """Some k-coloring of Z_m gives x and x + b different colors"""
    for colors in itertools.product(range(k), repeat=m):
        if all(colors[x] != colors[(x + b) % m] for x in range(m)):
            return True
    return False


def count_partial_good(m, b, k, level):
    """Colorings of 0..level-1 in Z_m without x - y = b inside one color"""
    total = 0
    for colors in itertools.product(range(k), repeat=level):
        if all(colors[x] != colors[y]
               for x in range(level) for y in range(level)
               if (x - y) % m == b % m):
            total += 1
    return total


def run_cli(arg_list):
    """Call main.main and capture stdout

    Returns: (exit code, stdout text)
    """
    from strauslab.main import main
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main(arg_list)
    return code, buffer.getvalue()
