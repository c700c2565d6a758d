"""Stage construction of a computable copy of the finitely supported integer
sequences in which every bad coloring for x - y = b (or for the pairwise
equation with n pairs) encodes a {0,1}-valued / DNC extension of the
diagonal of a toy enumeration.

Elements are natural-number ids; id 0 is the zero and id 1 is b. A state
holds the finite carrier and an injective map h from ids into Seq values.
Stage s+1 is decided by s = <e, j> (Cantor pairing):

    j = 3t+1   A(e): e = <i, l>; give h(i) + h(l) an id if it has none
    j = 3t+2   I(e): give -h(e) an id if it has none
    j = 3t+3   R(e): create the witnesses of e, or, once the diagonal value
               of e is visible, remap h so that the witnesses' images differ
               by a multiple of h(b) with the right parity (one-pair mode)
               or by (M*k + 1) h(b) on the chosen witness pair (DNC mode)
    j = 0      nothing happens

Witness images: one-pair mode puts x_e at coordinate 2e+2 and y_e at 2e+3;
DNC mode with N = 2n colors (or an explicit color count N) puts x_{e,i}
(i = 1..N+1) at 1 + e(N+1) + i.
Coordinate 1 belongs to b.

States are values: run_stage and run_until return new states and never
modify their argument. Construction wraps a state with the event log and the
lookups a FreeOmega group needs.
"""
import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Dict, Optional, Tuple

from strauslab.abelian import NeedMoreStages, Seq
from strauslab.machine import (Enumeration, Halts, cantor_unpair, evaluate)
from strauslab.straus import TableColoring


class StageBudgetExceeded(RuntimeError):
    """Raised if a driver loop needs more stages than its budget allows."""


class UnstableElement(LookupError):
    """Raised if an id's image may still change at a later stage."""


class WitnessMissing(LookupError):
    """Raised if the witnesses of a requirement have not been created."""


class EventConflict(ValueError):
    """Raised if both events fire for one index."""


ZERO_ID = 0
B_ID = 1


@dataclass(frozen=True)
class Mode():
    """Construction variant: kind 31 (one witness pair, {0,1}-valued
    extraction) or 32 (N+1 witnesses, DNC extraction with multiplier
    M = lcm(1..m_bound)).

    N is the number of colors the extraction must handle: 2n by default,
    or any `colors` >= 2 for the variant that covers every finite coloring
    with N colors.
    """

    kind: int = 31
    n: int = 1
    m_bound: int = 12
    colors: int = 0

    def __post_init__(self):
        if self.kind not in (31, 32):
            raise ValueError(f'unknown construction mode {self.kind}')
        if self.kind == 32 and self.n < 2:
            raise ValueError('DNC mode needs n >= 2')
        if self.m_bound < 1:
            raise ValueError('m_bound must be >= 1')
        if self.colors and (self.kind != 32 or self.colors < 2):
            raise ValueError('colors must be >= 2 and needs DNC mode')

    @property
    def palette(self):
        """N, the number of colors covered by the witnesses"""
        return self.colors or 2 * self.n

    @property
    def witness_count(self):
        return 2 if self.kind == 31 else self.palette + 1

    @property
    def value_bound(self):
        """Diagonal values below this bound make R(e) act"""
        if self.kind == 31:
            return 2
        return math.comb(self.witness_count, 2)

    @property
    def multiplier(self):
        result = 1
        for m in range(2, self.m_bound + 1):
            result = result * m // math.gcd(result, m)
        return result

    def witness_position(self, e, i):
        """Coordinate of the i-th witness (1-based) of requirement e"""
        if self.kind == 31:
            return 2 * e + 1 + i
        return 1 + e * self.witness_count + i

    def owner(self, position):
        """Requirement whose witnesses use the coordinate, None for 1"""
        if position < 2:
            return None
        if self.kind == 31:
            return (position - 2) // 2
        return (position - 2) // self.witness_count

    def witness_pairs(self):
        """Pairs (i1, i2), i1 < i2, in lexicographic order; the position in
        this list is the value a DNC extraction returns.
        """
        return list(combinations(range(1, self.witness_count + 1), 2))

    def to_dict(self):
        if self.kind == 31:
            return {'mode': 31}
        result = {'mode': 32, 'n': self.n, 'm_bound': self.m_bound}
        if self.colors:
            result['colors'] = self.colors
        return result


class ToySource():
    """Diagonal values of a toy enumeration: at stage s the value of e is
    visible if Phi_e(e) halts within min(s, fuel) steps.
    """

    def __init__(self, enumeration, fuel):
        self.enumeration = enumeration
        self.fuel = fuel

    def final_value(self, e):
        result = self.enumeration.diagonal(e, self.fuel)
        return result.value if isinstance(result, Halts) else None

    def value_at(self, e, stage):
        result = evaluate(self.enumeration.phi(e), e, min(stage, self.fuel))
        return result.value if isinstance(result, Halts) else None

    def candidates(self):
        """Indices whose requirement may act"""
        return range(len(self.enumeration))


@dataclass(frozen=True)
class Event():
    kind: str
    stage: int


class EventOracle():
    """Events phi0(e) / phi1(e) observed at given stages.

    A phi0 event makes R(e) act with odd k (the witnesses of e get different
    reference colors), phi1 with even k.
    """

    KINDS = ('phi0', 'phi1')

    def __init__(self, events=()):
        self.events = {}
        for e, kind, stage in events:
            if kind not in self.KINDS:
                raise ValueError(f'unknown event kind {kind!r}')
            known = self.events.get(e)
            if known is not None and known.kind != kind:
                raise EventConflict(f'both events fire for {e}')
            if known is None or stage < known.stage:
                self.events[e] = Event(kind, stage)

    @classmethod
    def from_json(cls, text):
        """{"<e>": ["phi0", <stage>], ...}"""
        data = json.loads(text)
        return cls((int(e), kind, int(stage))
                   for e, (kind, stage) in data.items())

    def final_value(self, e):
        event = self.events.get(e)
        if event is None:
            return None
        return 1 if event.kind == 'phi0' else 0

    def value_at(self, e, stage):
        event = self.events.get(e)
        if event is None or event.stage > stage:
            return None
        return self.final_value(e)

    def candidates(self):
        return sorted(self.events)


@dataclass(frozen=True)
class RequirementTag():
    kind: str
    e: int

    def __str__(self):
        return f'{self.kind}({self.e})'


@dataclass(frozen=True)
class Action():
    """Record of an R(e) action"""

    e: int
    k: int
    value: int
    pair: Tuple[int, int]
    multiplier: int
    stage: int


@dataclass(frozen=True)
class Remap():
    """Images just before and just after the most recent remap"""

    stage: int
    e: int
    previous: Dict[int, Seq] = field(repr=False)
    following: Dict[int, Seq] = field(repr=False)


@dataclass(frozen=True)
class StageState():
    mode: Mode
    source: object
    stage: int = 0
    images: Dict[int, Seq] = field(default_factory=dict, repr=False)
    inverse: Dict[Seq, int] = field(default_factory=dict, repr=False)
    witnesses: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    satisfied: frozenset = frozenset()
    acted: Dict[int, Action] = field(default_factory=dict)
    fresh: int = 2
    last_k: int = 0
    last_remap: Optional[Remap] = None
    event: Optional[dict] = None

    @property
    def carrier(self):
        return sorted(self.images)

    @property
    def fuel(self):
        return getattr(self.source, 'fuel', None)

    def __eq__(self, other):
        return (isinstance(other, StageState)
                and self.mode == other.mode
                and self.stage == other.stage
                and self.images == other.images
                and self.witnesses == other.witnesses
                and self.satisfied == other.satisfied
                and self.acted == other.acted)

    __hash__ = None


def init(mode, source, fuel=1000):
    """Stage 0: carrier {0, b} with h(0) = () and h(b) = (1).

    Params:
        mode: Mode
        source: Enumeration (read with the given fuel) or EventOracle
    """
    if isinstance(source, Enumeration):
        source = ToySource(source, fuel)
    images = {ZERO_ID: Seq(), B_ID: Seq((1,))}
    return StageState(mode, source, images=images,
                      inverse={v: i for i, v in images.items()})


def _add_element(state, image, tag, kind):
    new_id = state.fresh
    images = dict(state.images)
    inverse = dict(state.inverse)
    images[new_id] = image
    inverse[image] = new_id
    return replace(state, images=images, inverse=inverse,
                   fresh=new_id + 1,
                   satisfied=state.satisfied | {tag},
                   event={'stage': state.stage, 'kind': kind, 'e': tag.e,
                          'new_ids': [new_id]})


def _requirement_a(state, e):
    tag = RequirementTag('A', e)
    if tag in state.satisfied:
        return state
    i, l = cantor_unpair(e)
    if i not in state.images or l not in state.images:
        return state
    target = state.images[i] + state.images[l]
    if target in state.inverse:
        return replace(state, satisfied=state.satisfied | {tag})
    return _add_element(state, target, tag, 'A')


def _requirement_i(state, e):
    tag = RequirementTag('I', e)
    if tag in state.satisfied or e not in state.images:
        return state
    target = -state.images[e]
    if target in state.inverse:
        return replace(state, satisfied=state.satisfied | {tag})
    return _add_element(state, target, tag, 'I')


def _create_witnesses(state, e):
    mode = state.mode
    images = dict(state.images)
    inverse = dict(state.inverse)
    ids = []
    for i in range(1, mode.witness_count + 1):
        new_id = state.fresh + len(ids)
        image = Seq.unit(mode.witness_position(e, i))
        images[new_id] = image
        inverse[image] = new_id
        ids.append(new_id)
    witnesses = dict(state.witnesses)
    witnesses[e] = tuple(ids)
    return replace(state, images=images, inverse=inverse,
                   witnesses=witnesses, fresh=state.fresh + len(ids),
                   event={'stage': state.stage, 'kind': 'R-witnesses',
                          'e': e, 'new_ids': ids})


def fresh_k(state, parity=None):
    """Least k above twice the total absolute coordinate sum of all images
    and above every earlier k, with the given parity if any.
    """
    total = sum(abs(a) for image in state.images.values()
                for a in image.coords)
    k = max(2 * total, state.last_k) + 1
    if parity is not None and k % 2 != parity % 2:
        k += 1
    return k


def _remap_image(image, p1, p2, multiplier):
    moved = image[p2]
    if not moved:
        return image
    coords = list(image.coords)
    coords[0] += multiplier * moved
    coords[p1 - 1] += moved
    coords[p2 - 1] = 0
    return Seq(coords)


def apply_remap(state, e, k, value=0):
    """Remap h for requirement e with constant k.

    The witness pair (i1, i2) is (1, 2) in one-pair mode, otherwise the
    value-th lexicographic pair. With p1, p2 their coordinates and
    c = k (one-pair mode) or M*k + 1, every image a becomes
    a_1 + c*a_p2 at coordinate 1, a_p1 + a_p2 at p1 and 0 at p2.
    """
    mode = state.mode
    if e not in state.witnesses:
        raise WitnessMissing(f'R({e}) has no witnesses yet')
    if mode.kind == 31:
        i1, i2 = 1, 2
        multiplier = k
    else:
        i1, i2 = mode.witness_pairs()[value]
        multiplier = mode.multiplier * k + 1
    p1 = mode.witness_position(e, i1)
    p2 = mode.witness_position(e, i2)
    images = {x: _remap_image(image, p1, p2, multiplier)
              for x, image in state.images.items()}
    acted = dict(state.acted)
    acted[e] = Action(e, k, value, (i1, i2), multiplier, state.stage)
    return replace(state, images=images,
                   inverse={image: x for x, image in images.items()},
                   acted=acted, last_k=max(state.last_k, k),
                   satisfied=state.satisfied | {RequirementTag('R', e)},
                   last_remap=Remap(state.stage, e, state.images, images),
                   event={'stage': state.stage, 'kind': 'R', 'acted_e': e,
                          'k': k, 'value': value})


def _requirement_r(state, e):
    logger = logging.getLogger('diagonal.run_stage')
    if e not in state.witnesses:
        return _create_witnesses(state, e)
    if RequirementTag('R', e) in state.satisfied:
        return state
    value = state.source.value_at(e, state.stage)
    if value is None or value >= state.mode.value_bound:
        return state
    parity = value if state.mode.kind == 31 else None
    k = fresh_k(state, parity)
    logger.debug('stage %d: R(%d) acts on value %d with k = %d',
                 state.stage, e, value, k)
    return apply_remap(state, e, k, value)


def run_stage(state):
    """Successor state of the stage construction."""
    if state.source is None:
        raise NeedMoreStages('construction table is frozen')
    e, j = cantor_unpair(state.stage)
    current = replace(state, event=None)
    if j % 3 == 1:
        current = _requirement_a(current, e)
    elif j % 3 == 2:
        current = _requirement_i(current, e)
    elif j > 0:
        current = _requirement_r(current, e)
    event = current.event
    if event is not None:
        event = dict(event, stage=state.stage + 1)
    return replace(current, stage=state.stage + 1, event=event)


def stages_reached(count_):
    return lambda state: state.stage >= count_


def carrier_at_least(size):
    return lambda state: len(state.images) >= size


def halting_requirements_acted(state):
    """True once every requirement whose diagonal value lies below the
    mode's bound has acted.
    """
    bound = state.mode.value_bound
    for e in state.source.candidates():
        value = state.source.final_value(e)
        if value is not None and value < bound and e not in state.acted:
            return False
    return True


def run_until(state, predicate=None, budget=10000):
    """Run stages until predicate(state) holds.

    Params:
        predicate: callable on states; None runs exactly `budget` stages
        budget: maximal number of stages; 0 returns the state unchanged
    Raises:
        StageBudgetExceeded: if the predicate still fails after budget > 0
            stages
    """
    if budget == 0:
        return state
    for _ in range(budget):
        if predicate is not None and predicate(state):
            return state
        state = run_stage(state)
    if predicate is not None and not predicate(state):
        raise StageBudgetExceeded(f'predicate still false at stage '
                                  f'{state.stage} after {budget} stages')
    return state


def lookup_add(state, i, j, budget=100000):
    """Id of i + j, running stages until h^-1(h(i) + h(j)) is defined.

    Returns: (id, state)
    """
    return _lookup(state, lambda s: s.images[i] + s.images[j], (i, j),
                   budget)


def lookup_neg(state, i, budget=100000):
    """Id of -i; returns (id, state)"""
    return _lookup(state, lambda s: -s.images[i], (i,), budget)


def _lookup(state, target, ids, budget):
    for x in ids:
        if x not in state.images:
            raise KeyError(f'id {x} is not in the carrier')
    for _ in range(budget + 1):
        found = state.inverse.get(target(state))
        if found is not None:
            return found, state
        if state.source is None:
            break
        state = run_stage(state)
    if state.source is None:
        raise NeedMoreStages(f'{ids} has no result in the frozen table')
    raise StageBudgetExceeded(f'no result for {ids} within {budget} stages')


def is_stable(state, x):
    """True if h(x) can no longer change: every requirement owning a nonzero
    coordinate of h(x) has acted or will never act.
    """
    if state.source is None:
        return True
    bound = state.mode.value_bound
    for position in state.images[x].support():
        e = state.mode.owner(position)
        if e is None or e in state.acted:
            continue
        value = state.source.final_value(e)
        if value is not None and value < bound:
            return False
    return True


def reference_bad_coloring(state, ids=None):
    """Parity of the first coordinate of h: colors x and x + b differently
    because h(b) = (1).

    Raises:
        UnstableElement: if some requested id is not stable yet
    """
    ids = state.carrier if ids is None else list(ids)
    unstable = [x for x in ids if not is_stable(state, x)]
    if unstable:
        raise UnstableElement(f'images of {unstable[:10]} may still change')
    return TableColoring({x: state.images[x][1] % 2 for x in ids}, 2)


def _color_of(coloring, x):
    return coloring.color(x) if hasattr(coloring, 'color') else coloring(x)


def _witnesses_for(state, indices):
    if indices is None:
        return sorted(state.witnesses)
    missing = [e for e in indices if e not in state.witnesses]
    if missing:
        raise WitnessMissing(f'no witnesses yet for {missing[:10]}')
    return list(indices)


def extract_pa(coloring, state, indices=None):
    """g(e) = 0 if x_e and y_e share a color, 1 otherwise."""
    result = {}
    for e in _witnesses_for(state, indices):
        x, y = state.witnesses[e][:2]
        result[e] = int(_color_of(coloring, x) != _color_of(coloring, y))
    return result


def extract_dnc(coloring, state, indices=None):
    """g(e) = index of the least witness pair of e sharing a color.

    Raises:
        ValueError: in one-pair mode or if no pair shares a color
    """
    if state.mode.kind != 32:
        raise ValueError('DNC extraction needs a DNC-mode construction')
    pairs = state.mode.witness_pairs()
    result = {}
    for e in _witnesses_for(state, indices):
        ids = state.witnesses[e]
        colors = [_color_of(coloring, x) for x in ids]
        for index, (i1, i2) in enumerate(pairs):
            if colors[i1 - 1] == colors[i2 - 1]:
                result[e] = index
                break
        else:
            raise ValueError(f'witnesses of {e} carry {len(set(colors))} '
                             'distinct colors')
    return result


def extract_separator(coloring, state, indices=None):
    """X = {e : c(x_e) = c(y_e)}: contains every phi1-event index and no
    phi0-event index.
    """
    if not isinstance(state.source, EventOracle):
        raise ValueError('separator extraction needs an event-driven '
                         'construction')
    pa = extract_pa(coloring, state, indices)
    return {e for e, differs in pa.items() if not differs}


@dataclass(frozen=True)
class Violation():
    kind: str
    detail: str

    def to_dict(self):
        return {'kind': self.kind, 'detail': self.detail}


def audit(state):
    """Check the state's invariants.

    - h is injective
    - h(0) = () and h(b) = (1)
    - sums defined before the last remap keep their ids and no new sums
      appear through it; ids added by later stages are not compared
    - every acted R(e) left h(x_{i2}) - h(x_{i1}) = c h(b), with k of the
      diagonal value's parity in one-pair mode

    Returns: list of Violation (empty if all checks pass)
    """
    violations = []
    images = state.images
    if len(set(images.values())) != len(images):
        seen = {}
        for x, image in images.items():
            if image in seen:
                violations.append(Violation(
                    'injectivity', f'ids {seen[image]} and {x} share {image}'))
            seen.setdefault(image, x)
    if images.get(ZERO_ID) != Seq() or images.get(B_ID) != Seq((1,)):
        violations.append(Violation('pinned', 'h(0) or h(b) moved'))
    if state.last_remap is not None:
        violations.extend(_coherence(state))
    for e, action in sorted(state.acted.items()):
        ids = state.witnesses[e]
        low, high = ids[action.pair[0] - 1], ids[action.pair[1] - 1]
        difference = images[high] - images[low]
        if difference != Seq((action.multiplier,)):
            violations.append(Violation(
                'relation', f'R({e}): h difference is {difference}, expected '
                f'({action.multiplier})'))
        if state.mode.kind == 31 and action.k % 2 != action.value % 2:
            violations.append(Violation(
                'parity', f'R({e}): k = {action.k} for value {action.value}'))
        if state.source is not None:
            value = state.source.final_value(e)
            if value != action.value:
                violations.append(Violation(
                    'value', f'R({e}) acted on {action.value}, diagonal is '
                    f'{value}'))
    return violations


def _coherence(state):
    previous = state.last_remap.previous
    following = state.last_remap.following
    before = {image: x for x, image in previous.items()}
    after = {image: x for x, image in following.items()}
    ids = sorted(previous)
    violations = []
    for pos, i in enumerate(ids):
        for j in ids[pos:]:
            old = before.get(previous[i] + previous[j])
            new = after.get(following[i] + following[j])
            if old != new:
                violations.append(Violation(
                    'coherence', f'{i} + {j} was {old}, now {new} after '
                    f'R({state.last_remap.e})'))
    return violations


class Construction():
    """Mutable handle around a construction: current state, event log,
    lookups for FreeOmega and table export.
    """

    def __init__(self, state, budget=100000):
        self.state = state
        self.events = []
        self.budget = budget

    @classmethod
    def start(cls, mode, source, fuel=1000, budget=100000):
        return cls(init(mode, source, fuel), budget)

    @property
    def frozen(self):
        return self.state.source is None

    def step(self):
        self.state = run_stage(self.state)
        if self.state.event is not None:
            self.events.append(self.state.event)
        return self.state

    def run(self, stages, on_stage=None):
        """Run a number of stages; on_stage(state) is called after each."""
        for _ in range(stages):
            self.step()
            if on_stage is not None:
                on_stage(self.state)
        return self.state

    def run_until(self, predicate, budget=None):
        budget = self.budget if budget is None else budget
        if budget == 0:
            return self.state
        for _ in range(budget):
            if predicate(self.state):
                return self.state
            self.step()
        if not predicate(self.state):
            raise StageBudgetExceeded(f'predicate still false after {budget}'
                                      ' stages')
        return self.state

    def defines(self, x):
        return x in self.state.images

    def image(self, x):
        try:
            return self.state.images[x]
        except KeyError as err:
            raise NeedMoreStages(f'id {x} is not defined yet') from err

    def ids(self):
        return self.state.carrier

    @property
    def b_id(self):
        return B_ID

    def __lookup(self, target, ids):
        for x in ids:
            self.image(x)
        for _ in range(self.budget + 1):
            found = self.state.inverse.get(target())
            if found is not None:
                return found
            if self.frozen:
                raise NeedMoreStages(f'{ids} has no result in the frozen '
                                     'table')
            self.step()
        raise StageBudgetExceeded(f'no result for {ids} within '
                                  f'{self.budget} stages')

    def lookup_add(self, i, j):
        return self.__lookup(lambda: self.state.images[i]
                             + self.state.images[j], (i, j))

    def lookup_neg(self, i):
        return self.__lookup(lambda: -self.state.images[i], (i,))

    def dump(self):
        """Event log as JSON lines"""
        return ''.join(json.dumps(event) + '\n' for event in self.events)

    def table_csv(self):
        handle = io.StringIO()
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(['id', 'h-image'])
        for x in self.state.carrier:
            writer.writerow([x, str(self.state.images[x])])
        return handle.getvalue()

    @classmethod
    def from_table(cls, text):
        """Frozen construction from a group table; it answers lookups but
        runs no stages.
        """
        reader = csv.DictReader(io.StringIO(text))
        try:
            images = {int(row['id']): Seq.parse(row['h-image'])
                      for row in reader}
        except (KeyError, TypeError, ValueError) as err:
            raise ValueError(f'malformed group table: {err}') from err
        if images.get(ZERO_ID) != Seq() or images.get(B_ID) != Seq((1,)):
            raise ValueError('group table must map 0 to () and 1 to (1)')
        state = StageState(Mode(), None, images=images,
                           inverse={v: i for i, v in images.items()},
                           fresh=max(images) + 1)
        return cls(state)
