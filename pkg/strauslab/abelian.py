"""Exact arithmetic for the group presentations the colorings live on

- Integers: the additive group Z
- Cyclic(m): residues 0..m-1 modulo m
- Sequences: finitely supported integer sequences (Seq values)
- FreeOmega: opaque ids of a group grown by a stage construction, whose
  arithmetic is delegated to the construction's lookups
- the circle group Q/Z (CirclePoint)

All values are immutable; integer arithmetic is arbitrary precision.
"""
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from itertools import count, product
from typing import Optional


class GroupError(ValueError):
    """Raised if an element does not belong to the group it is used with
    or if a zero element is passed where b != 0 is required.
    """


class NeedMoreStages(LookupError):
    """Raised if a constructed group has not been built far enough to answer
    a query.
    """


class Seq():
    """Finitely supported integer sequence with 1-based coordinates.

    The canonical form carries no trailing zeros, so the zero sequence is the
    empty tuple and equal sequences have equal representations.
    """

    __slots__ = ('coords',)

    def __init__(self, coords=()):
        coords = tuple(int(a) for a in coords)
        end = len(coords)
        while end and coords[end - 1] == 0:
            end -= 1
        object.__setattr__(self, 'coords', coords[:end])

    def __setattr__(self, name, value):
        raise AttributeError('Seq is immutable')

    @classmethod
    def _trimmed(cls, coords):
        """Wrap a tuple of ints without converting its entries"""
        end = len(coords)
        while end and not coords[end - 1]:
            end -= 1
        seq = object.__new__(cls)
        object.__setattr__(seq, 'coords', coords[:end])
        return seq

    @classmethod
    def unit(cls, position):
        """Sequence 0^{position-1}1"""
        if position < 1:
            raise GroupError(f'coordinates are 1-based, got {position}')
        return cls((0,) * (position - 1) + (1,))

    @classmethod
    def parse(cls, text):
        """Parse a comma-separated coordinate list, e.g. '1,0,2'."""
        text = text.strip().strip('()')
        if not text:
            return cls()
        try:
            return cls(int(tok) for tok in text.split(','))
        except ValueError as err:
            raise GroupError(f'invalid sequence "{text}"') from err

    def __getitem__(self, position):
        if position < 1:
            raise IndexError('coordinates are 1-based')
        if position > len(self.coords):
            return 0
        return self.coords[position - 1]

    def __len__(self):
        """Index of the last nonzero coordinate (0 for the zero sequence)"""
        return len(self.coords)

    def __bool__(self):
        return bool(self.coords)

    def support(self):
        """Map coordinate -> nonzero value"""
        return {i: a for i, a in enumerate(self.coords, start=1) if a}

    def first_nonzero(self):
        for i, a in enumerate(self.coords, start=1):
            if a:
                return i
        raise GroupError('zero sequence has no nonzero coordinate')

    def __add__(self, other):
        a, b = self.coords, other.coords
        if len(a) < len(b):
            a, b = b, a
        return Seq._trimmed(tuple(map(operator.add, a, b)) + a[len(b):])

    def __neg__(self):
        return Seq._trimmed(tuple(map(operator.neg, self.coords)))

    def __sub__(self, other):
        a, b = self.coords, other.coords
        diff = tuple(map(operator.sub, a, b))
        if len(a) > len(b):
            return Seq._trimmed(diff + a[len(b):])
        return Seq._trimmed(diff + tuple(map(operator.neg, b[len(a):])))

    def __mul__(self, k):
        return Seq(k * a for a in self.coords)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Seq) and self.coords == other.coords

    def __hash__(self):
        return hash(('Seq', self.coords))

    def __lt__(self, other):
        return self.coords < other.coords

    def __repr__(self):
        return f'Seq({self.coords!r})'

    def __str__(self):
        return ','.join(str(a) for a in self.coords)


class CirclePoint():
    """Element of Q/Z, kept as a reduced fraction in [0, 1)."""

    __slots__ = ('value',)

    def __init__(self, num, den=1):
        object.__setattr__(self, 'value', Fraction(num, den) % 1)

    def __setattr__(self, name, value):
        raise AttributeError('CirclePoint is immutable')

    @property
    def num(self):
        return self.value.numerator

    @property
    def den(self):
        return self.value.denominator

    def __add__(self, other):
        return CirclePoint(self.value + other.value)

    def __neg__(self):
        return CirclePoint(-self.value)

    def __sub__(self, other):
        return CirclePoint(self.value - other.value)

    def __eq__(self, other):
        return isinstance(other, CirclePoint) and self.value == other.value

    def __hash__(self):
        return hash(('CirclePoint', self.value))

    def __repr__(self):
        return f'CirclePoint({self.num}, {self.den})'

    def __str__(self):
        return f'{self.num}/{self.den}'


def circle_add(a, b):
    return a + b


def circle_norm(a):
    """Distance of a to 0 on the circle, min(a, 1 - a), as a Fraction."""
    return min(a.value, 1 - a.value)


def circle_dist(a, b):
    return circle_norm(a - b)


@dataclass(frozen=True)
class OrderValue():
    """Order of a group element: finite d >= 1 or infinite (d is None)."""

    d: Optional[int] = None

    @property
    def is_finite(self):
        return self.d is not None

    @property
    def is_even(self):
        return self.d is not None and self.d % 2 == 0

    def __str__(self):
        return str(self.d) if self.is_finite else 'infinite'


INFINITE = OrderValue(None)


def solve_congruence(a, c, modulus):
    """Solve a*s = c (mod modulus).

    Params:
        a, c: integers
        modulus: integer >= 1
    Returns: (s, step) with s the least nonnegative solution and step the
        period of the solution class, or None if no solution exists
    """
    g = math.gcd(a, modulus)
    if c % g:
        return None
    step = modulus // g
    if step == 1:
        return 0, 1
    inverse = pow((a // g) % step, -1, step)
    return (c // g) * inverse % step, step


def merge_congruences(r1, m1, r2, m2):
    """Intersect the classes t = r1 (mod m1) and t = r2 (mod m2).

    Returns: (r, lcm(m1, m2)) with 0 <= r < lcm, or None if disjoint
    """
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    lcm = m1 // g * m2
    solution = solve_congruence(m1, r2 - r1, m2)
    if solution is None:
        return None
    return (r1 + m1 * solution[0]) % lcm, lcm


def largest_prime_divisor(d):
    """Greatest prime dividing d (trial division).

    Raises:
        ValueError: if d < 2
    """
    if d < 2:
        raise ValueError(f'largest_prime_divisor needs d >= 2, got {d}')
    return prime_divisors(d)[-1]


def prime_divisors(d):
    """Ascending list of the distinct primes dividing d >= 2"""
    primes = []
    p = 2
    while p * p <= d:
        if d % p == 0:
            primes.append(p)
            while d % p == 0:
                d //= p
        p += 1
    if d > 1:
        primes.append(d)
    return primes


class GroupSpec():
    """Base class of the group presentations.

    Subclasses implement contains, add, neg, order_of and enumerate; the
    ambient/embed pair gives the representation in which arithmetic is total.
    """

    zero = 0
    label = None

    @property
    def ambient(self):
        return self

    def embed(self, x):
        return x

    def check(self, x):
        if not self.contains(x):
            raise GroupError(f'{x!r} is not an element of {self.label}')
        return x

    def contains(self, x):
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def scalar_mul(self, k, x):
        """k-fold sum by doubling"""
        if k < 0:
            return self.neg(self.scalar_mul(-k, x))
        result, power = self.zero, x
        while k:
            if k & 1:
                result = self.add(result, power)
            k >>= 1
            if k:
                power = self.add(power, power)
        return result

    def order_of(self, b):
        raise NotImplementedError

    def enumerate(self, count_):
        raise NotImplementedError

    def is_finite(self):
        return False

    def parse_element(self, text):
        try:
            return self.check(int(text))
        except ValueError as err:
            if isinstance(err, GroupError):
                raise
            raise GroupError(f'invalid element "{text}" for {self.label}') \
                from err

    def format_element(self, x):
        return str(x)

    def _nonzero(self, b):
        self.check(b)
        if b == self.zero:
            raise GroupError('b must be nonzero')
        return b

    def __eq__(self, other):
        return type(self) is type(other) and self.label == other.label

    def __hash__(self):
        return hash(self.label)

    def __repr__(self):
        return f'<{type(self).__name__} {self.label}>'


class Integers(GroupSpec):
    """The integers; canonical enumeration 0, 1, -1, 2, -2, ..."""

    label = 'Z'

    def contains(self, x):
        return isinstance(x, int) and not isinstance(x, bool)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def scalar_mul(self, k, x):
        return k * x

    def order_of(self, b):
        self._nonzero(b)
        return INFINITE

    def enumerate(self, count_):
        elements = [0]
        i = 1
        while len(elements) < count_:
            elements.extend((i, -i))
            i += 1
        return elements[:count_]


class Cyclic(GroupSpec):
    """Residues modulo m >= 2"""

    def __init__(self, modulus):
        if not isinstance(modulus, int) or modulus < 2:
            raise GroupError(f'cyclic modulus must be >= 2, got {modulus!r}')
        self.modulus = modulus
        self.label = f'Zm:{modulus}'

    def contains(self, x):
        return (isinstance(x, int) and not isinstance(x, bool)
                and 0 <= x < self.modulus)

    def add(self, x, y):
        return (x + y) % self.modulus

    def neg(self, x):
        return -x % self.modulus

    def sub(self, x, y):
        return (x - y) % self.modulus

    def scalar_mul(self, k, x):
        return k * x % self.modulus

    def order_of(self, b):
        self._nonzero(b)
        return OrderValue(self.modulus // math.gcd(self.modulus, b))

    def enumerate(self, count_):
        return list(range(min(count_, self.modulus)))

    def is_finite(self):
        return True

    def parse_element(self, text):
        try:
            return int(text) % self.modulus
        except ValueError as err:
            raise GroupError(f'invalid element "{text}" for {self.label}') \
                from err


class Sequences(GroupSpec):
    """Finitely supported integer sequences under coordinatewise addition.

    The canonical enumeration walks heights h = 1, 2, ...: all sequences with
    support in 1..h and entries in [-h, h], lexicographically, each sequence
    at its first occurrence.
    """

    label = 'Zw'
    zero = Seq()

    def contains(self, x):
        return isinstance(x, Seq)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def scalar_mul(self, k, x):
        return x * k

    def order_of(self, b):
        self._nonzero(b)
        return INFINITE

    def enumerate(self, count_):
        elements = [self.zero]
        seen = {self.zero}
        for height in count(1):
            if len(elements) >= count_:
                break
            entries = range(-height, height + 1)
            for coords in product(entries, repeat=height):
                x = Seq(coords)
                if x not in seen:
                    seen.add(x)
                    elements.append(x)
                    if len(elements) >= count_:
                        break
        return elements[:count_]

    def parse_element(self, text):
        return Seq.parse(text)


class FreeOmega(GroupSpec):
    """Group of ids built by a stage construction.

    The construction handle must offer image(id), lookup_add(i, j),
    lookup_neg(i), ids() and b_id; see strauslab.diagonal.Construction.
    Ids embed into Sequences through the construction's current images.
    """

    def __init__(self, construction):
        if construction is None:
            raise GroupError('FreeOmega needs a construction handle')
        self.construction = construction
        self.label = 'free'
        self.zero = 0

    @property
    def ambient(self):
        return Sequences()

    def embed(self, x):
        return self.construction.image(x)

    def contains(self, x):
        return (isinstance(x, int) and not isinstance(x, bool)
                and self.construction.defines(x))

    def add(self, x, y):
        return self.construction.lookup_add(self.check(x), self.check(y))

    def neg(self, x):
        return self.construction.lookup_neg(self.check(x))

    def order_of(self, b):
        self._nonzero(b)
        return INFINITE

    def enumerate(self, count_):
        ids = self.construction.ids()
        if len(ids) < count_:
            raise NeedMoreStages(f'construction defines {len(ids)} elements,'
                                 f' {count_} requested')
        return list(ids[:count_])

    def __eq__(self, other):
        return (isinstance(other, FreeOmega)
                and other.construction is self.construction)

    def __hash__(self):
        return id(self.construction)


def add(spec, x, y):
    return spec.add(spec.check(x), spec.check(y))


def neg(spec, x):
    return spec.neg(spec.check(x))


def scalar_mul(spec, k, x):
    return spec.scalar_mul(k, spec.check(x))


def order_of(spec, b):
    return spec.order_of(b)


def enumerate_group(spec, count_):
    """Canonical enumeration prefix of length count_ (capped for finite
    groups).
    """
    if count_ < 0:
        raise ValueError('count must be >= 0')
    return spec.enumerate(count_)
