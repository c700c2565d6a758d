"""Toy enumeration of partial computable functions, DNC utilities and the
pairing reduction from DNC over k^2 values to DNC over k values.

Expressions ignore their argument:

    Const(v)            halts with v after 1 step
    Diverge()           never halts
    Countdown(s, v)     halts with v after s steps
    DiagPair(k, a, b)   evaluates a and b on their own codes and halts with
                        pair(value_a, value_b, k) after 1 + their steps;
                        never halts if a value is >= k

so DiagPair(k, a, b) is an index c with Phi_c(c) = <Phi_a(a), Phi_b(b)>.

Goedel coding (bijective on the naturals): code 0 is Diverge; for c >= 1
write q, r = divmod(c - 1, 3):

    r = 0   Const(q)
    r = 1   Countdown(s, v)  with <s, v> = q
    r = 2   DiagPair(k, a, b) with <k - 2, <code a, code b>> = q

where <x, y> = (x + y)(x + y + 1)/2 + y is the Cantor pairing.

Fixture files hold one s-expression per line, e.g.
(diagpair 2 (const 1) (diverge)); blank lines and lines starting with '#'
are ignored.
"""
import functools
import logging
import math
import random
import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Dict, Optional


class FixtureError(ValueError):
    """Raised for malformed expressions; carries the fixture line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message)
        self.line = line


class RangeError(ValueError):
    """Raised if a value is outside the range of a bounded pairing or a DNC
    bound.
    """


class WitnessError(ValueError):
    """Raised if a case witness does not yield a DNC function; index names
    the first index where the result agrees with the diagonal.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


def cantor_pair(x, y):
    return (x + y) * (x + y + 1) // 2 + y


def cantor_unpair(z):
    w = (math.isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def pair(u, v, k):
    """Bijection k x k -> k^2, (u, v) -> u*k + v"""
    if not (0 <= u < k and 0 <= v < k):
        raise RangeError(f'pair({u}, {v}) needs both values < {k}')
    return u * k + v


def unpair(w, k):
    if not 0 <= w < k * k:
        raise RangeError(f'unpair({w}) needs a value < {k * k}')
    return divmod(w, k)


class ToyIndex():
    """Base class of the expression variants"""

    @property
    def code(self):
        return encode(self)


@dataclass(frozen=True)
class Const(ToyIndex):
    value: int

    def __str__(self):
        return f'(const {self.value})'


@dataclass(frozen=True)
class Diverge(ToyIndex):

    def __str__(self):
        return '(diverge)'


@dataclass(frozen=True)
class Countdown(ToyIndex):
    steps: int
    value: int

    def __str__(self):
        return f'(countdown {self.steps} {self.value})'


@dataclass(frozen=True)
class DiagPair(ToyIndex):
    k: int
    a: ToyIndex
    b: ToyIndex

    def __post_init__(self):
        if self.k < 2:
            raise RangeError(f'diagpair bound must be >= 2, got {self.k}')

    def __str__(self):
        return f'(diagpair {self.k} {self.a} {self.b})'


def encode(expr):
    if isinstance(expr, Diverge):
        return 0
    if isinstance(expr, Const):
        return 3 * expr.value + 1
    if isinstance(expr, Countdown):
        return 3 * cantor_pair(expr.steps, expr.value) + 2
    if isinstance(expr, DiagPair):
        inner = cantor_pair(encode(expr.a), encode(expr.b))
        return 3 * cantor_pair(expr.k - 2, inner) + 3
    raise TypeError(f'not an expression: {expr!r}')


def decode(code):
    if code < 0:
        raise RangeError(f'codes are natural numbers, got {code}')
    if code == 0:
        return Diverge()
    q, r = divmod(code - 1, 3)
    if r == 0:
        return Const(q)
    if r == 1:
        return Countdown(*cantor_unpair(q))
    k_offset, inner = cantor_unpair(q)
    a_code, b_code = cantor_unpair(inner)
    return DiagPair(k_offset + 2, decode(a_code), decode(b_code))


@dataclass(frozen=True)
class Halts():
    value: int
    steps: int = field(default=0, compare=False)

    def __str__(self):
        return f'halts({self.value})'


@dataclass(frozen=True)
class OutOfFuel():

    def __str__(self):
        return 'out-of-fuel'


OUT_OF_FUEL = OutOfFuel()


@functools.lru_cache(maxsize=None)
def _run(expr):
    """(value, steps) of the diagonal run, or None if it never halts"""
    if isinstance(expr, Const):
        return expr.value, 1
    if isinstance(expr, Countdown):
        return expr.value, expr.steps
    if isinstance(expr, DiagPair):
        inner_a = _run(expr.a)
        inner_b = _run(expr.b)
        if inner_a is None or inner_b is None:
            return None
        if inner_a[0] >= expr.k or inner_b[0] >= expr.k:
            return None
        return (pair(inner_a[0], inner_b[0], expr.k),
                1 + inner_a[1] + inner_b[1])
    return None


def evaluate(expr, x, fuel):
    """Run expr on argument x with the given fuel.

    Returns: Halts(value) or OUT_OF_FUEL
    """
    if fuel < 0:
        raise ValueError('fuel must be >= 0')
    del x
    result = _run(expr)
    if result is None or result[1] > fuel:
        return OUT_OF_FUEL
    return Halts(*result)


def diagonal(expr, fuel):
    """Phi_e(e) with the given fuel"""
    return evaluate(expr, expr.code, fuel)


class Enumeration():
    """Finite list of expressions standing for Phi_0, Phi_1, ...

    Indices past the end denote Diverge.
    """

    def __init__(self, indices):
        self.indices = tuple(indices)

    def phi(self, e):
        if 0 <= e < len(self.indices):
            return self.indices[e]
        return Diverge()

    def diagonal(self, e, fuel):
        return evaluate(self.phi(e), e, fuel)

    def as_mapping(self):
        return dict(enumerate(self.indices))

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __eq__(self, other):
        return (isinstance(other, Enumeration)
                and self.indices == other.indices)

    def __hash__(self):
        return hash(self.indices)


TOKEN_RE = re.compile(r'\(|\)|[^\s()]+')


def parse_expression(text, line=None):
    """Parse one s-expression."""
    tokens = TOKEN_RE.findall(text)
    if not tokens:
        raise FixtureError('empty expression', line)
    expr, rest = _read(tokens, line)
    if rest:
        raise FixtureError(f'trailing input {" ".join(rest)!r}', line)
    return expr


def _read(tokens, line):
    if tokens[0] != '(':
        raise FixtureError(f'expected "(", got {tokens[0]!r}', line)
    if len(tokens) < 3:
        raise FixtureError('unterminated expression', line)
    head, rest = tokens[1], tokens[2:]
    args = []
    while rest and rest[0] != ')':
        if rest[0] == '(':
            arg, rest = _read(rest, line)
        else:
            arg, rest = _natural(rest[0], line), rest[1:]
        args.append(arg)
    if not rest:
        raise FixtureError('missing ")"', line)
    return _build(head, args, line), rest[1:]


def _natural(token, line):
    if not token.isdigit():
        raise FixtureError(f'expected a natural number, got {token!r}', line)
    return int(token)


SIGNATURES = {'const': (int,),
              'diverge': (),
              'countdown': (int, int),
              'diagpair': (int, ToyIndex, ToyIndex)}


def _build(head, args, line):
    if head not in SIGNATURES:
        raise FixtureError(f'unknown form {head!r}', line)
    signature = SIGNATURES[head]
    if len(args) != len(signature) or not all(
            isinstance(arg, kind) for arg, kind in zip(args, signature)):
        raise FixtureError(f'bad arguments for {head}', line)
    try:
        if head == 'const':
            return Const(*args)
        if head == 'diverge':
            return Diverge()
        if head == 'countdown':
            return Countdown(*args)
        return DiagPair(*args)
    except RangeError as err:
        raise FixtureError(str(err), line) from err


def parse_fixture(text):
    """Enumeration from fixture text, one expression per line."""
    indices = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith('#'):
            continue
        indices.append(parse_expression(stripped, number))
    return Enumeration(indices)


def format_fixture(enumeration):
    return ''.join(f'{expr}\n' for expr in enumeration)


def _items(indices):
    if isinstance(indices, Mapping):
        return list(indices.items())
    return [(expr, expr) for expr in indices]


def _lookup(f, key):
    return f[key] if isinstance(f, Mapping) else f(key)


def dnc_violations(f, k, indices, fuel):
    """Keys e with f(e) = Phi_e(e) within fuel.

    Params:
        f: mapping or callable on the keys of indices
        indices: mapping key -> expression, or iterable of expressions
    Raises:
        RangeError: if some f value is >= k
    """
    violations = []
    for key, expr in _items(indices):
        value = _lookup(f, key)
        if not 0 <= value < k:
            raise RangeError(f'f({key}) = {value} is not below {k}')
        result = evaluate(expr, expr.code, fuel)
        if isinstance(result, Halts) and result.value == value:
            violations.append(key)
    return violations


def is_dnc(f, k, indices, fuel):
    return not dnc_violations(f, k, indices, fuel)


def brute_force_dnc(k, indices, fuel):
    """Least value below k that differs from the diagonal (0 if the diagonal
    does not halt within fuel).
    """
    if k < 2:
        raise RangeError(f'DNC bound must be >= 2, got {k}')
    f = {}
    for key, expr in _items(indices):
        result = evaluate(expr, expr.code, fuel)
        if isinstance(result, Halts) and result.value == 0:
            f[key] = 1
        else:
            f[key] = 0
    return f


def random_dnc(k, indices, fuel, seed=0):
    """Seeded random value below k avoiding the diagonal within fuel."""
    if k < 2:
        raise RangeError(f'DNC bound must be >= 2, got {k}')
    rng = random.Random(seed)
    f = {}
    for key, expr in _items(indices):
        result = evaluate(expr, expr.code, fuel)
        allowed = [v for v in range(k)
                   if not (isinstance(result, Halts) and result.value == v)]
        f[key] = rng.choice(allowed)
    return f


def inner_fuel(fuel):
    """Fuel for a and b under which DiagPair(k, a, b) is decided within
    `fuel`: 1 + 2 * inner_fuel(fuel) <= fuel.
    """
    return max(fuel - 1, 0) // 2


def diagpair_closure(indices, k):
    """DiagPair(k, a, b) for all a, b in indices (a major)"""
    indices = list(indices)
    return [DiagPair(k, a, b) for a in indices for b in indices]


@dataclass(frozen=True)
class Case1():
    """For every a, chooser[a] is some b with g_2(a, b) = Phi_b(b)."""

    chooser: Dict[ToyIndex, ToyIndex] = field(hash=False)

    def to_dict(self):
        return {'case': 1,
                'chooser': [[str(a), str(b)] for a, b in self.chooser.items()]}


@dataclass(frozen=True)
class Case2():
    """g_2(a, b) differs from Phi_b(b) for every b."""

    a: ToyIndex

    def to_dict(self):
        return {'case': 2, 'a': str(self.a)}


def _split(g, k, a, b):
    return unpair(_lookup(g, DiagPair(k, a, b)), k)


def jockusch_reduce(g, k, witness, indices, fuel=None):
    """DNC over k values from g, DNC over k^2 values on the DiagPair closure.

    Case1: h(a) = g_1(a, chooser(a)); Case2 with fixed a: h(b) = g_2(a, b).

    Params:
        g: mapping or callable on DiagPair(k, a, b) for a, b in indices
        witness: Case1 or Case2
        fuel: fuel under which g is DNC on the closure; if given, h is
            checked with inner_fuel(fuel) and a failure raises WitnessError
    Returns: dict index -> value below k
    """
    logger = logging.getLogger('machine.jockusch_reduce')
    indices = list(indices)
    if isinstance(witness, Case1):
        h = {a: _split(g, k, a, witness.chooser[a])[0] for a in indices}
    elif isinstance(witness, Case2):
        h = {b: _split(g, k, witness.a, b)[1] for b in indices}
    else:
        raise TypeError(f'not a case witness: {witness!r}')
    logger.debug('reduced %d indices with %s', len(h), type(witness).__name__)
    if fuel is not None:
        violations = dnc_violations(h, k, indices, inner_fuel(fuel))
        if violations:
            raise WitnessError(f'{witness.to_dict()} fails at '
                               f'{violations[0]}', index=violations[0])
    return h


def find_case_witness(g, k, indices, fuel):
    """Bounded search for a case witness: Case2 first, then Case1.

    Diagonals of a and b are run with inner_fuel(fuel), so a pair whose
    halves both halt is itself decided within the fuel g was checked with.

    Params:
        fuel: fuel under which g is DNC on the closure
    Returns: Case1, Case2 or None
    """
    logger = logging.getLogger('machine.find_case_witness')
    indices = list(indices)
    if not indices:
        return Case2(Diverge())
    diagonals = {b: evaluate(b, b.code, inner_fuel(fuel)) for b in indices}
    for a in indices:
        if all(diagonals[b] != Halts(_split(g, k, a, b)[1]) for b in indices):
            logger.debug('Case2 with a = %s', a)
            return Case2(a)
    chooser = {}
    for a in indices:
        for b in indices:
            if diagonals[b] == Halts(_split(g, k, a, b)[1]):
                chooser[a] = b
                break
        else:
            logger.debug('no witness: %s has no chooser value', a)
            return None
    return Case1(chooser)


def iterated_domain(indices, k, rounds):
    """Index set the top-level oracle must cover for `rounds` reductions,
    with its bound k^(2^rounds).

    Returns: (list of index sets per level, bottom first; top bound)
    """
    levels = [list(indices)]
    bound = k
    for _ in range(rounds):
        levels.append(diagpair_closure(levels[-1], bound))
        bound *= bound
    return levels, bound


def reduce_iterated(g, k, rounds, indices, fuel, witnesses=None):
    """Apply jockusch_reduce `rounds` times: DNC over k^(2^rounds) values on
    the top of iterated_domain down to DNC over k values on indices.

    Params:
        fuel: fuel under which g is DNC on the top level; each round
            halves it through inner_fuel
        witnesses: optional list of case witnesses, top level first;
            missing levels are searched
    Returns: h, DNC on indices with fuel reduced_fuel(fuel, rounds)
    Raises:
        WitnessError: if a level has no witness
    """
    levels, bound = iterated_domain(indices, k, rounds)
    witnesses = list(witnesses or [])
    h = g
    for depth in range(rounds):
        bound = math.isqrt(bound)
        domain = levels[rounds - depth - 1]
        witness = witnesses[depth] if depth < len(witnesses) else None
        if witness is None:
            witness = find_case_witness(h, bound, domain, fuel)
        if witness is None:
            raise WitnessError(f'no case witness at bound {bound}')
        h = jockusch_reduce(h, bound, witness, domain, fuel)
        fuel = inner_fuel(fuel)
    return h


def reduced_fuel(fuel, rounds):
    for _ in range(rounds):
        fuel = inner_fuel(fuel)
    return fuel
