"""Colorings without pairwise monochromatic solutions of
(x_1 - y_1) + ... + (x_n - y_n) = b.

A homomorphism psi into Q/Z sends b to 1/2 (even or infinite order) or to
(p-1)/(2p) (odd order, p a prime dividing ord b). Cutting the circle into
k half-open cells of equal width and coloring x by the cell of psi(x) gives
the coloring: same-colored pairs move psi by less than one cell width, and n
of them cannot add up to psi(b).
"""
import csv
import io
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Tuple

from strauslab.abelian import (CirclePoint, Cyclic, FreeOmega, GroupError,
                               Integers, Seq, Sequences, circle_norm,
                               largest_prime_divisor, prime_divisors,
                               solve_congruence)


class HomError(ArithmeticError):
    """Raised if no homomorphism with the requested anchor exists."""


class ColoringError(ValueError):
    """Raised for invalid coloring parameters or elements outside a
    coloring's domain.
    """


@dataclass(frozen=True)
class HalfCase():
    """psi(b) = 1/2"""

    @property
    def target(self):
        return CirclePoint(1, 2)

    def to_dict(self):
        return 'half'


@dataclass(frozen=True)
class OddCase():
    """psi(b) = (p-1)/(2p) for an odd prime p dividing ord b"""

    p: int

    @property
    def target(self):
        return CirclePoint(self.p - 1, 2 * self.p)

    def to_dict(self):
        return {'odd': self.p}


def case_from_dict(value):
    if value == 'half':
        return HalfCase()
    if isinstance(value, dict) and 'odd' in value:
        return OddCase(int(value['odd']))
    raise ColoringError(f'unknown hom case {value!r}')


@dataclass(frozen=True)
class CircleHom():
    """psi(x) = s * x / D mod 1.

    For sequence-valued presentations x is read at `coordinate` (after
    embedding FreeOmega ids through their images).
    """

    spec: object
    s: int
    D: int
    case: object
    coordinate: int = 1

    @property
    def target(self):
        return self.case.target

    def lift(self, x):
        value = self.spec.embed(x)
        if isinstance(value, Seq):
            return value[self.coordinate]
        return value

    def __call__(self, x):
        return CirclePoint(self.s * self.lift(x), self.D)

    def to_dict(self):
        result = {'s': self.s, 'D': self.D}
        if self.coordinate != 1:
            result['coordinate'] = self.coordinate
        return result


def color_count(n, order, prime=None):
    """Number of colors of the Straus coloring.

    Params:
        n: number of difference pairs, n >= 1
        order: OrderValue of b
        prime: optional prime dividing ord b used for the quotient; default
            is 2 for even/infinite order, the largest prime divisor otherwise
    Returns: 2n in the half case, ceil(2np / (p-1)) otherwise
    """
    if n < 1:
        raise ValueError(f'n must be >= 1, got {n}')
    p = _choose_prime(order, prime)
    if p == 2:
        return 2 * n
    return -(-2 * n * p // (p - 1))


def _choose_prime(order, prime):
    if not order.is_finite:
        if prime not in (None, 2):
            raise HomError('only the half case exists for infinite order')
        return 2
    if prime is None:
        return 2 if order.is_even else largest_prime_divisor(order.d)
    if order.d < 2 or prime not in prime_divisors(order.d):
        raise HomError(f'{prime} is not a prime divisor of ord b = {order}')
    return prime


def build_hom(spec, b, prime=None):
    """Homomorphism psi: G -> Q/Z with psi(b) = 1/2 or (p-1)/(2p).

    Params:
        spec: Integers, Cyclic, Sequences or FreeOmega
        b: nonzero element
        prime: optional prime divisor of ord b (see color_count)
    Returns: CircleHom
    Raises:
        HomError: if the anchoring congruence has no solution
        ColoringError: for unsupported group families
    """
    logger = logging.getLogger('straus.build_hom')
    order = spec.order_of(b)
    p = _choose_prime(order, prime)
    if isinstance(spec, Integers):
        hom = CircleHom(spec, 1 if b > 0 else -1, 2 * abs(b), HalfCase())
    elif isinstance(spec, (Sequences, FreeOmega)):
        image = spec.embed(b)
        j = image.first_nonzero()
        hom = CircleHom(spec, 1 if image[j] > 0 else -1, 2 * abs(image[j]),
                        HalfCase(), coordinate=j)
    elif isinstance(spec, Cyclic):
        m = spec.modulus
        if p == 2:
            solution = solve_congruence(2 * b, m, 2 * m)
            case = HalfCase()
        else:
            solution = solve_congruence(2 * p * b, m * (p - 1), 2 * p * m)
            case = OddCase(p)
        if solution is None:
            raise HomError(f'no hom on {spec.label} sends {b} to '
                           f'{case.target}')
        hom = CircleHom(spec, solution[0], m, case)
    else:
        raise ColoringError(f'unsupported group family {spec!r}')
    if hom(b) != hom.target:
        raise HomError(f'hom sends b to {hom(b)}, expected {hom.target}')
    logger.debug('psi(x) = %d x / %d on %s', hom.s, hom.D, spec.label)
    return hom


def circle_color(pt, k, width):
    """Index of the half-open cell [i*width, (i+1)*width) containing pt; the
    last cell is clipped at 1.
    """
    width = Fraction(width)
    if k < 1 or width <= 0 or k * width < 1:
        raise ColoringError(f'{k} cells of width {width} do not cover [0,1)')
    return min(int(pt.value // width), k - 1)


class Coloring():
    """Common interface: color(x) -> id in range(k).

    Subclasses provide k as an attribute, dataclass field or property.
    """

    def color(self, x):
        raise NotImplementedError

    def __call__(self, x):
        return self.color(x)

    def to_dict(self):
        raise NotImplementedError


class ConstantColoring(Coloring):
    """Every element gets color 0."""

    k = 1

    def color(self, x):
        return 0

    def to_dict(self):
        return {'constant': True, 'k': 1}


class TableColoring(Coloring):
    """Explicit finite coloring over a window of elements."""

    def __init__(self, colors, k=None):
        self.colors = dict(colors)
        used = max(self.colors.values(), default=-1) + 1
        self.k = used if k is None else k
        if any(not 0 <= c < self.k for c in self.colors.values()):
            raise ColoringError(f'table colors must lie in range({self.k})')

    @property
    def domain(self):
        return list(self.colors)

    def color(self, x):
        try:
            return self.colors[x]
        except KeyError as err:
            raise ColoringError(f'{x!r} is outside the colored window') \
                from err

    def to_csv(self, spec):
        handle = io.StringIO()
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(['element', 'color'])
        for x, c in self.colors.items():
            writer.writerow([spec.format_element(x), c])
        return handle.getvalue()

    @classmethod
    def from_csv(cls, spec, text):
        reader = csv.DictReader(io.StringIO(text))
        try:
            colors = {spec.parse_element(row['element']): int(row['color'])
                      for row in reader}
        except (KeyError, TypeError, ValueError) as err:
            raise ColoringError(f'malformed coloring table: {err}') from err
        return cls(colors)

    def to_dict(self):
        return {'table': [[x, c] for x, c in self.colors.items()],
                'k': self.k}

    def __eq__(self, other):
        return (isinstance(other, TableColoring)
                and self.colors == other.colors and self.k == other.k)

    def __repr__(self):
        return f'TableColoring({self.colors!r}, k={self.k})'


@dataclass(frozen=True)
class RuleColoring(Coloring):
    """x is colored by the cell of psi(x); k cells of the given width."""

    hom: CircleHom
    k: int
    width: Fraction

    def __post_init__(self):
        if self.k * self.width < 1:
            raise ColoringError(f'{self.k} cells of width {self.width} do not'
                                ' cover the circle')

    def color(self, x):
        return circle_color(self.hom(x), self.k, self.width)

    def to_dict(self):
        return {'group': self.hom.spec.label,
                'hom': self.hom.to_dict(),
                'k': self.k,
                'width': {'num': self.width.numerator,
                          'den': self.width.denominator},
                'case': self.hom.case.to_dict()}

    @classmethod
    def from_dict(cls, spec, data):
        try:
            hom_dict = data['hom']
            hom = CircleHom(spec, int(hom_dict['s']), int(hom_dict['D']),
                            case_from_dict(data['case']),
                            coordinate=int(hom_dict.get('coordinate', 1)))
            width = Fraction(int(data['width']['num']),
                             int(data['width']['den']))
            return cls(hom, int(data['k']), width)
        except (KeyError, TypeError) as err:
            raise ColoringError(f'malformed rule coloring: {err}') from err


@dataclass(frozen=True)
class GroupMap():
    """Named self-map of a group, applied to ambient representations.

    Maps compare by name, so repeated maps collapse in product colorings.
    """

    name: str
    func: Callable = field(compare=False, hash=False, repr=False)

    def __call__(self, spec, x):
        return self.func(spec, x)


def identity_map():
    return GroupMap('id', lambda spec, x: x)


def scale_map(c):
    """x -> c*x"""
    return GroupMap(f'mul:{c}', lambda spec, x: spec.scalar_mul(c, x))


def parse_map(text):
    """Parse 'id' or 'mul:<c>'."""
    text = text.strip()
    if text == 'id':
        return identity_map()
    if text.startswith('mul:'):
        try:
            return scale_map(int(text[4:]))
        except ValueError as err:
            raise ColoringError(f'invalid map "{text}"') from err
    raise ColoringError(f'unknown map "{text}" (use id or mul:<c>)')


@dataclass(frozen=True)
class EquationSpec():
    """(f_1(x_1) - f_1(y_1)) + ... + (f_n(x_n) - f_n(y_n)) = b"""

    n: int
    b: object
    maps: Tuple[GroupMap, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f'n must be >= 1, got {self.n}')
        if not self.maps:
            object.__setattr__(self, 'maps', (identity_map(),) * self.n)
        elif len(self.maps) != self.n:
            raise ValueError(f'{len(self.maps)} maps given for n = {self.n}')


@dataclass(frozen=True)
class ProductColoring(Coloring):
    """Color of x: base colors of f(x) for each distinct map f, packed as the
    mixed-radix number sum c_i * k^i.
    """

    base: RuleColoring
    maps: Tuple[GroupMap, ...]

    @property
    def k(self):
        return self.base.k ** len(self.maps)

    def components(self, x):
        spec = self.base.hom.spec
        return tuple(self.base.color(f(spec, x)) for f in self.maps)

    def color(self, x):
        result = 0
        for c in reversed(self.components(x)):
            result = result * self.base.k + c
        return result

    def to_dict(self):
        return {'product': {'maps': [f.name for f in self.maps],
                            'base': self.base.to_dict()},
                'k': self.k}


def straus_coloring(spec, b, n, prime=None):
    """Rule coloring with no pairwise monochromatic solution of
    sum (x_i - y_i) = b.

    Params:
        spec: supported group presentation
        b: nonzero element
        n: number of difference pairs
        prime: optional prime divisor of ord b (see color_count)
    Returns: RuleColoring with color_count(n, ord b) colors
    """
    hom = build_hom(spec, b, prime)
    order = spec.order_of(b)
    k = color_count(n, order, prime)
    if isinstance(hom.case, HalfCase):
        width = Fraction(1, 2 * n)
    else:
        p = hom.case.p
        width = Fraction(p - 1, 2 * n * p)
    return RuleColoring(hom, k, width)


def straus_star_coloring(spec, b, n, maps):
    """Product of the Straus coloring over the distinct maps.

    Params:
        maps: iterable of GroupMap; duplicates (by name) are dropped
    Returns: ProductColoring with k^m colors, m the number of distinct maps
    Raises:
        ColoringError: if no map is given or the group's ids cannot be
            mapped (FreeOmega)
    """
    distinct = tuple(dict.fromkeys(maps))
    if not distinct:
        raise ColoringError('at least one map is required')
    if isinstance(spec, FreeOmega):
        raise ColoringError('product colorings need total arithmetic; '
                            'constructed groups are not supported')
    return ProductColoring(straus_coloring(spec, b, n), distinct)


def multiple_period(coloring):
    """Least m > 0 with psi(m b) = 0; all multiples l*m*b then share the
    color of 0.
    """
    if not isinstance(coloring, RuleColoring):
        raise ColoringError('multiple_period needs a rule coloring')
    return coloring.hom.target.den


def anchor_norm(hom):
    """circle_norm of psi(b): 1/2 or (p-1)/(2p)"""
    return circle_norm(hom.target)


def coloring_from_json(spec, text):
    """Parse a rule, product or constant coloring from its JSON form."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ColoringError(f'malformed coloring JSON: {err}') from err
    if 'coloring' in data:
        data = data['coloring']
    if data.get('constant'):
        return ConstantColoring()
    if 'product' in data:
        product = data['product']
        base = RuleColoring.from_dict(spec, product['base'])
        return ProductColoring(base, tuple(parse_map(name)
                                           for name in product['maps']))
    if 'table' in data:
        try:
            colors = {spec.parse_element(str(x)): int(c)
                      for x, c in data['table']}
        except (GroupError, TypeError, ValueError) as err:
            raise ColoringError(f'malformed coloring table: {err}') from err
        return TableColoring(colors, data.get('k'))
    return RuleColoring.from_dict(spec, data)
