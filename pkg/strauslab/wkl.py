"""Tree of partial k-colorings of a group prefix with no pairwise
monochromatic solution among the colored elements.

Level m holds colorings of the first m enumerated elements. Children of a
node color the next element; a child is pruned when some solution uses a
difference that only exists because of the new element. Nodes keep their
same-color difference sets per map so the check only looks at tuples
involving the newest element.

With symmetry reduction on, nodes are kept in canonical color order (the
first occurrence of each color is 0, 1, 2, ...); emptiness of every level
is unchanged.
"""
import logging
from dataclasses import dataclass
from typing import FrozenSet, Tuple

from strauslab.straus import EquationSpec, TableColoring


class TreeDied(RuntimeError):
    """Raised if a level of the tree is empty; carries the level and the
    tree grown up to it.
    """

    def __init__(self, level, tree):
        super().__init__(f'no coloring survives at level {level}')
        self.level = level
        self.tree = tree


class NotGrown(LookupError):
    """Raised if a level was not grown yet or is empty."""


@dataclass(frozen=True)
class Node():
    colors: Tuple[int, ...]
    diffs: Tuple[FrozenSet, ...]


class ColoringTree():
    """Levels of surviving partial colorings.

    Params:
        spec: group presentation
        eq: EquationSpec (n, b, maps)
        k: number of colors
        symmetry: keep one representative per color renaming
    """

    def __init__(self, spec, eq, k, symmetry=True, levels=None,
                 died_at=None):
        if k < 1:
            raise ValueError(f'k must be >= 1, got {k}')
        self.spec = spec
        self.eq = eq
        self.k = k
        self.symmetry = symmetry
        self.maps = tuple(dict.fromkeys(eq.maps))
        self.slots = tuple(self.maps.index(f) for f in eq.maps)
        empty = Node((), tuple(frozenset([spec.ambient.zero])
                               for _ in self.maps))
        self.levels = levels if levels is not None else [[empty]]
        self.died_at = died_at

    @property
    def b(self):
        return self.eq.b

    @property
    def depth(self):
        return len(self.levels) - 1

    def prefix(self, m):
        return self.spec.enumerate(m)

    def sizes(self):
        return [len(level) for level in self.levels]


def new_tree(spec, b, n, k, maps=None, symmetry=True):
    return ColoringTree(spec, EquationSpec(n, b, tuple(maps or ())), k,
                        symmetry)


def _sumset(ambient, sets):
    reach = {ambient.zero}
    for diffs in sets:
        reach = {ambient.add(r, d) for r in reach for d in diffs}
    return reach


def _violates(tree, diffs, new_diffs, target):
    """Some solution uses a new difference in some slot"""
    ambient = tree.spec.ambient
    cache = {}
    for slot, map_index in enumerate(tree.slots):
        fresh = new_diffs[map_index]
        if not fresh:
            continue
        others = tuple(sorted(tree.slots[:slot] + tree.slots[slot + 1:]))
        if others not in cache:
            cache[others] = _sumset(ambient, [diffs[i] for i in others])
        rest = cache[others]
        if any(ambient.sub(target, d) in rest for d in fresh):
            return True
    return False


def _children(tree, node, images, target):
    ambient = tree.spec.ambient
    level = len(node.colors)
    palette = tree.k
    if tree.symmetry:
        palette = min(tree.k, max(node.colors, default=-1) + 2)
    for c in range(palette):
        same = [i for i, color in enumerate(node.colors) if color == c]
        diffs = []
        new_diffs = []
        for map_index, old in enumerate(node.diffs):
            fa = images[map_index][level]
            added = set()
            for i in same:
                fy = images[map_index][i]
                added.add(ambient.sub(fa, fy))
                added.add(ambient.sub(fy, fa))
            fresh = frozenset(added - old)
            new_diffs.append(fresh)
            diffs.append(old | fresh)
        if not _violates(tree, diffs, new_diffs, target):
            yield Node(node.colors + (c,), tuple(diffs))


def grow(tree, target):
    """Tree grown to level `target`.

    Raises:
        TreeDied: if a level comes out empty (the exception carries the
            partially grown tree)
        ValueError: if target is below the current depth or beyond the size
            of a finite group
    """
    logger = logging.getLogger('wkl.grow')
    if target < tree.depth:
        raise ValueError(f'tree already has depth {tree.depth}')
    if tree.died_at is not None:
        raise TreeDied(tree.died_at, tree)
    elements = tree.prefix(target)
    if len(elements) < target:
        raise ValueError(f'{tree.spec.label} has only {len(elements)} '
                         'elements')
    ambient = tree.spec.ambient
    images = [[f(ambient, tree.spec.embed(x)) for x in elements]
              for f in tree.maps]
    goal = tree.spec.embed(tree.b)
    levels = list(tree.levels)
    while len(levels) - 1 < target:
        frontier = [child for node in levels[-1]
                    for child in _children(tree, node, images, goal)]
        levels.append(frontier)
        logger.debug('level %d: %d nodes', len(levels) - 1, len(frontier))
        if not frontier:
            died = ColoringTree(tree.spec, tree.eq, tree.k, tree.symmetry,
                                levels, died_at=len(levels) - 1)
            raise TreeDied(len(levels) - 1, died)
    return ColoringTree(tree.spec, tree.eq, tree.k, tree.symmetry, levels)


def level_size(tree, m):
    if not 0 <= m <= tree.depth:
        raise NotGrown(f'level {m} not grown (depth {tree.depth})')
    return len(tree.levels[m])


def extract_path(tree, m):
    """Lexicographically least surviving coloring at level m, as a table over
    the first m elements.
    """
    if not 0 <= m <= tree.depth:
        raise NotGrown(f'level {m} not grown (depth {tree.depth})')
    frontier = tree.levels[m]
    if not frontier:
        raise NotGrown(f'level {m} is empty')
    least = min(node.colors for node in frontier)
    return TableColoring(dict(zip(tree.prefix(m), least)), tree.k)
