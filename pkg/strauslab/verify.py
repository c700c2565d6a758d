"""Checkers for colorings: pairwise monochromatic solutions, the kmb
condition, conflict graphs and the computable colorings built on them, and
the constant-solution criterion for partition regularity of linear systems.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Tuple

from strauslab.abelian import (Cyclic, GroupError, Integers, merge_congruences,
                               solve_congruence)
from strauslab.straus import (ColoringError, EquationSpec, TableColoring,
                              straus_coloring)


class WindowError(ValueError):
    """Raised if a check needs elements outside the supplied window."""


class UnsupportedEquation(ValueError):
    """Raised if no certificate construction exists for an equation."""


@dataclass(frozen=True)
class Window():
    """Finite set of elements a check runs over.

    exact is True when the window is a whole finite group, so results over
    it are proofs rather than evidence.
    """

    elements: Tuple
    bounds: dict = field(compare=False, hash=False, default_factory=dict)
    exact: bool = False

    @classmethod
    def full(cls, spec):
        if not spec.is_finite():
            raise WindowError(f'{spec.label} is infinite, give a window')
        return cls(tuple(range(spec.modulus)), {'full': spec.label}, True)

    @classmethod
    def interval(cls, lo, hi):
        return cls(tuple(range(lo, hi + 1)), {'lo': lo, 'hi': hi})

    @classmethod
    def radius(cls, spec, radius):
        """[-radius, radius] over Z, the whole group for cyclic groups,
        otherwise the first 2*radius+1 enumerated elements.
        """
        if spec.is_finite():
            return cls.full(spec)
        if isinstance(spec, Integers):
            return cls.interval(-radius, radius)
        return cls.of(spec.enumerate(2 * radius + 1))

    @classmethod
    def of(cls, elements):
        elements = tuple(elements)
        return cls(elements, {'size': len(elements)})


def default_window(spec, window):
    if window is None:
        return Window.full(spec)
    if isinstance(window, Window):
        return window
    return Window.of(window)


@dataclass(frozen=True)
class SolutionTuple():
    """pairs (x_i, y_i) with c(x_i) = c(y_i) and
    sum f_i(x_i) - f_i(y_i) = value (= b)
    """

    pairs: Tuple
    value: object

    def to_dict(self, spec):
        fmt = spec.format_element
        return {'pairs': [[fmt(x), fmt(y)] for x, y in self.pairs],
                'value': str(self.value)}


@dataclass(frozen=True)
class VerificationReport():
    result: str
    window: dict
    exact: bool
    witness: Optional[dict] = None

    @property
    def found(self):
        return self.result == 'found'

    def to_dict(self):
        report = {'result': self.result, 'window': self.window,
                  'exact': self.exact}
        if self.witness is not None:
            report['witness'] = self.witness
        return report


def _color_classes(coloring, elements):
    classes = {}
    for x in elements:
        try:
            classes.setdefault(coloring.color(x), []).append(x)
        except ColoringError as err:
            raise WindowError(str(err)) from err
    return classes


def mono_differences(spec, coloring, group_map, window):
    """Differences f(x) - f(y) over same-colored pairs in the window.

    Returns: dict difference (ambient representation) -> witness pair (x, y)
    """
    ambient = spec.ambient
    diffs = {}
    for members in _color_classes(coloring, window.elements).values():
        try:
            images = [(x, group_map(ambient, spec.embed(x))) for x in members]
        except (GroupError, ArithmeticError, TypeError) as err:
            raise WindowError(f'map {group_map.name} failed on the window: '
                              f'{err}') from err
        for x, fx in images:
            for y, fy in images:
                diffs.setdefault(ambient.sub(fx, fy), (x, y))
    return diffs


def find_pairwise_mono(spec, coloring, eq, window=None):
    """Search a pairwise monochromatic solution of
    sum f_i(x_i) - f_i(y_i) = b with all x_i, y_i in the window.

    Per slot the same-colored differences are collected, then an n-step
    reachability DP over sums runs toward b; the witness is rebuilt from
    back-pointers.

    Params:
        spec: group presentation
        coloring: Coloring defined on the window
        eq: EquationSpec
        window: Window, iterable of elements, or None for a whole finite
            group
    Returns: SolutionTuple or None
    Raises:
        WindowError: if the coloring or a map is undefined on the window
    """
    logger = logging.getLogger('verify.find_pairwise_mono')
    window = default_window(spec, window)
    ambient = spec.ambient
    target = spec.embed(eq.b)
    by_map = {}
    for group_map in eq.maps:
        if group_map not in by_map:
            by_map[group_map] = mono_differences(spec, coloring, group_map,
                                                 window)
    layers = []
    reach = {ambient.zero: None}
    for group_map in eq.maps:
        diffs = by_map[group_map]
        step = {}
        for partial in reach:
            for diff, pair in diffs.items():
                total = ambient.add(partial, diff)
                if total not in step:
                    step[total] = (partial, pair)
        layers.append(step)
        reach = step
    logger.debug('%d sums reachable after %d slots', len(reach), eq.n)
    if target not in reach:
        return None
    pairs = []
    current = target
    for step in reversed(layers):
        current, pair = step[current]
        pairs.append(pair)
    pairs.reverse()
    return SolutionTuple(tuple(pairs), eq.b)


def find_monochromatic(spec, coloring, coeffs, rhs, window=None):
    """Search x_1..x_n of one color with sum a_i x_i = rhs in the window.

    Returns: tuple (x_1, ..., x_n) or None
    """
    window = default_window(spec, window)
    ambient = spec.ambient
    target = spec.embed(rhs)
    for members in _color_classes(coloring, window.elements).values():
        layers = []
        reach = {ambient.zero: None}
        for a in coeffs:
            step = {}
            for partial in reach:
                for x in members:
                    total = ambient.add(partial,
                                        ambient.scalar_mul(a, spec.embed(x)))
                    if total not in step:
                        step[total] = (partial, x)
            layers.append(step)
            reach = step
        if target in reach:
            chosen = []
            current = target
            for step in reversed(layers):
                current, x = step[current]
                chosen.append(x)
            return tuple(reversed(chosen))
    return None


def check_lmb_condition(spec, coloring, b, m, L):
    """True iff all l*m*b with |l| <= L carry one color.

    Raises:
        WindowError: if a multiple lies outside the coloring's domain
    """
    if m <= 0:
        raise ValueError(f'm must be positive, got {m}')
    colors = set()
    for l in range(-L, L + 1):
        x = spec.scalar_mul(l * m, b)
        try:
            colors.add(coloring.color(x))
        except ColoringError as err:
            raise WindowError(str(err)) from err
    return len(colors) <= 1


@dataclass
class ConflictGraph():
    """Vertices of a window, edges between elements differing by +-b."""

    vertices: list
    edges: set
    adjacency: dict

    def degree(self, v):
        return len(self.adjacency[v])

    def components(self):
        seen = set()
        result = []
        for v in self.vertices:
            if v in seen:
                continue
            seen.add(v)
            component = [v]
            queue = deque([v])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if w not in seen:
                        seen.add(w)
                        component.append(w)
                        queue.append(w)
            result.append(component)
        return result


def conflict_graph(spec, b, window=None):
    spec.order_of(b)
    window = default_window(spec, window)
    vertices = list(window.elements)
    members = set(vertices)
    adjacency = {v: set() for v in vertices}
    edges = set()
    for u in vertices:
        v = spec.add(u, b)
        if v in members and v != u:
            edges.add(frozenset((u, v)))
            adjacency[u].add(v)
            adjacency[v].add(u)
    return ConflictGraph(vertices, edges, adjacency)


def two_color_bipartite(graph):
    """BFS 2-coloring per component.

    Returns: TableColoring with 2 colors, or None if an odd cycle exists
    """
    colors = {}
    for start in graph.vertices:
        if start in colors:
            continue
        colors[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in graph.adjacency[u]:
                if w not in colors:
                    colors[w] = 1 - colors[u]
                    queue.append(w)
                elif colors[w] == colors[u]:
                    return None
    return TableColoring(colors, 2)


def greedy_color(spec, b, N, palette=3):
    """Color the first N enumerated elements one by one with the least color
    not used by an already-colored element at distance +-b.

    Params:
        palette: number of colors available, at least 3
    Returns: TableColoring
    Raises:
        ColoringError: if an element would need a fourth color
    """
    if palette < 3:
        raise ValueError(f'greedy coloring needs 3 colors, got {palette}')
    colors = {}
    for g in spec.enumerate(N):
        taken = set()
        for h in (spec.add(g, b), spec.sub(g, b)):
            if h in colors:
                taken.add(colors[h])
        c = min(set(range(palette)) - taken)
        if c >= 3:
            raise ColoringError(f'greedy coloring requested color {c} '
                                f'at {g!r}')
        colors[g] = c
    return TableColoring(colors, palette)


def finite_order_coloring(spec, b):
    """Proper coloring of the conflict graph of a cyclic group: 2 colors for
    even ord b, 3 for odd.
    """
    if not isinstance(spec, Cyclic):
        raise GroupError('finite_order_coloring needs a cyclic group')
    if spec.order_of(b).is_even:
        coloring = two_color_bipartite(conflict_graph(spec, b))
    else:
        coloring = greedy_color(spec, b, spec.modulus)
    for x in range(spec.modulus):
        if coloring.color(x) == coloring.color(spec.add(x, b)):
            raise AssertionError(f'{x} and {x}+b share a color')
    return coloring


def constant_solution(matrix, rhs, ring):
    """Common t with (row sum) * t = b_i for every row.

    Params:
        matrix: list of integer rows
        rhs: integer vector, same length as matrix, not all zero
        ring: Integers or Cyclic(M)
    Returns: least nonnegative t (Cyclic) or the integer t, or None
    Raises:
        ValueError: if the dimensions do not match or rhs is zero
    """
    if len(matrix) != len(rhs):
        raise ValueError(f'{len(matrix)} rows but {len(rhs)} right-hand '
                         'sides')
    if len({len(row) for row in matrix}) > 1:
        raise ValueError('rows have different lengths')
    if isinstance(ring, Cyclic):
        modulus = ring.modulus
        if all(v % modulus == 0 for v in rhs):
            raise ValueError('the right-hand side must be nonzero')
    elif all(v == 0 for v in rhs):
        raise ValueError('the right-hand side must be nonzero')
    sums = [sum(row) for row in matrix]
    if isinstance(ring, Cyclic):
        t = _solve_cyclic(sums, rhs, ring.modulus)
    else:
        t = _solve_integers(sums, rhs)
    if t is not None:
        for row, b_i in zip(matrix, rhs):
            value = sum(a * t for a in row) - b_i
            if (value % ring.modulus if isinstance(ring, Cyclic) else value):
                raise AssertionError(f'constant {t} fails row {row}')
    return t


def _solve_integers(sums, rhs):
    t = None
    for s, b_i in zip(sums, rhs):
        if s == 0:
            if b_i != 0:
                return None
            continue
        if b_i % s:
            return None
        if t is not None and t != b_i // s:
            return None
        t = b_i // s
    return t


def _solve_cyclic(sums, rhs, modulus):
    residue, period = 0, 1
    for s, b_i in zip(sums, rhs):
        solution = solve_congruence(s % modulus, b_i % modulus, modulus)
        if solution is None:
            return None
        merged = merge_congruences(residue, period, *solution)
        if merged is None:
            return None
        residue, period = merged
    return residue % modulus


@dataclass(frozen=True)
class LinearEquation():
    """sum coeffs_i x_i = rhs"""

    coeffs: Tuple[int, ...]
    rhs: int

    def difference_form(self):
        """n if the equation reads (x_1 - y_1) + ... + (x_n - y_n) = rhs,
        else None
        """
        if not self.coeffs or len(self.coeffs) % 2:
            return None
        pairs = zip(self.coeffs[::2], self.coeffs[1::2])
        if all(p == (1, -1) for p in pairs):
            return len(self.coeffs) // 2
        return None


def non_pr_certificate(equation, ring, window=None):
    """Bad coloring plus a verifier report for an equation that is not
    partition regular.

    Supported: x + y = c with c odd over Z (parity coloring) and
    (x_1 - y_1) + ... + (x_n - y_n) = b with b != 0 (Straus coloring).

    Returns: (coloring, VerificationReport)
    Raises:
        UnsupportedEquation: for any other shape
    """
    logger = logging.getLogger('verify.non_pr_certificate')
    if window is None and not ring.is_finite():
        window = Window.interval(-100, 100)
    window = default_window(ring, window)
    n = equation.difference_form()
    if isinstance(ring, Cyclic):
        b = equation.rhs % ring.modulus
    else:
        b = equation.rhs
    if n is not None and b:
        coloring = straus_coloring(ring, b, n)
        solution = find_pairwise_mono(ring, coloring,
                                      EquationSpec(n, b), window)
        witness = solution.to_dict(ring) if solution else None
    elif (tuple(equation.coeffs) == (1, 1) and isinstance(ring, Integers)
          and equation.rhs % 2):
        coloring = straus_coloring(Integers(), 1, 1)
        solution = find_monochromatic(ring, coloring, equation.coeffs,
                                      equation.rhs, window)
        witness = ({'solution': [str(x) for x in solution]}
                   if solution else None)
    else:
        raise UnsupportedEquation(f'no certificate for {equation} over '
                                  f'{ring.label}')
    report = VerificationReport('found' if witness else 'none',
                                window.bounds, window.exact, witness)
    logger.debug('certificate for %s: %s', equation, report.result)
    return coloring, report


def verification_report(spec, coloring, eq, window=None):
    """find_pairwise_mono packaged as a VerificationReport"""
    window = default_window(spec, window)
    solution = find_pairwise_mono(spec, coloring, eq, window)
    if solution is None:
        return VerificationReport('none', window.bounds, window.exact)
    return VerificationReport('found', window.bounds, window.exact,
                              solution.to_dict(spec))
