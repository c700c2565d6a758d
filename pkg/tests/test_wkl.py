"""Check the tree of partial colorings against exhaustive search
"""
import unittest
from conftest import count_partial_good, has_good_coloring
from strauslab.abelian import Cyclic, Integers
from strauslab.straus import EquationSpec, parse_map
from strauslab.verify import Window, find_pairwise_mono
from strauslab.wkl import (NotGrown, TreeDied, extract_path, grow,
                           level_size, new_tree)


class GrowTest(unittest.TestCase):

    def test_even_order_survives(self):
        tree = grow(new_tree(Cyclic(12), 3, 1, 2), 12)
        self.assertEqual(tree.depth, 12)
        self.assertGreater(level_size(tree, 12), 0)
        path = extract_path(tree, 12)
        self.assertEqual(path.color(0), 0)
        self.assertIsNone(find_pairwise_mono(Cyclic(12), path,
                                             EquationSpec(1, 3)))

    def test_odd_cycle_dies(self):
        with self.assertRaises(TreeDied) as ctx:
            grow(new_tree(Cyclic(9), 3, 1, 2), 9)
        died = ctx.exception
        self.assertEqual(died.level, 7)
        self.assertEqual(died.tree.sizes()[-1], 0)
        with self.assertRaises(NotGrown):
            extract_path(died.tree, 7)
        with self.assertRaises(TreeDied):
            grow(died.tree, 9)
        self.assertGreater(len(extract_path(died.tree, 6).colors), 0)

    def test_odd_cycle_three_colors(self):
        tree = grow(new_tree(Cyclic(9), 3, 1, 3), 9)
        self.assertGreater(level_size(tree, 9), 0)
        path = extract_path(tree, 9)
        self.assertIsNone(find_pairwise_mono(Cyclic(9), path,
                                             EquationSpec(1, 3)))
        tree = grow(new_tree(Cyclic(9), 3, 1, 3, symmetry=False), 9)
        self.assertEqual(level_size(tree, 9), 216)
        self.assertEqual(level_size(tree, 9), count_partial_good(9, 3, 3, 9))

    def test_grow_in_steps(self):
        tree = grow(new_tree(Integers(), 1, 1, 2), 4)
        tree = grow(tree, 9)
        self.assertEqual(tree.sizes(), [1] * 10)
        path = extract_path(tree, 9)
        window = Window.of(Integers().enumerate(9))
        self.assertIsNone(find_pairwise_mono(Integers(), path,
                                             EquationSpec(1, 1), window))
        with self.assertRaises(ValueError):
            grow(tree, 3)

    def test_single_color(self):
        with self.assertRaises(TreeDied) as ctx:
            grow(new_tree(Integers(), 1, 1, 1), 5)
        self.assertEqual(ctx.exception.level, 2)

    def test_maps(self):
        mul3 = parse_map('mul:3')
        tree = grow(new_tree(Cyclic(8), 2, 1, 2, maps=[mul3]), 8)
        path = extract_path(tree, 8)
        self.assertIsNone(find_pairwise_mono(Cyclic(8), path,
                                             EquationSpec(1, 2, (mul3,))))

    def test_two_pairs(self):
        tree = grow(new_tree(Cyclic(6), 3, 2, 4), 6)
        path = extract_path(tree, 6)
        self.assertIsNone(find_pairwise_mono(Cyclic(6), path,
                                             EquationSpec(2, 3)))

    def test_errors(self):
        tree = new_tree(Cyclic(5), 1, 1, 2)
        with self.assertRaises(ValueError):
            grow(tree, 6)
        with self.assertRaises(ValueError):
            new_tree(Cyclic(5), 1, 1, 0)
        with self.assertRaises(NotGrown):
            level_size(tree, 1)
        with self.assertRaises(NotGrown):
            extract_path(tree, 2)
        self.assertEqual(level_size(tree, 0), 1)


class OracleTest(unittest.TestCase):

    def test_emptiness_matches_search(self):
        for m in range(2, 9):
            for b in range(1, m):
                for k in (1, 2, 3):
                    expected = has_good_coloring(m, b, k)
                    try:
                        grow(new_tree(Cyclic(m), b, 1, k), m)
                        survived = True
                    except TreeDied:
                        survived = False
                    self.assertEqual(survived, expected,
                                     f'm={m}, b={b}, k={k}')

    def test_counts_without_symmetry(self):
        for m, b, k in ((6, 2, 2), (7, 3, 3), (8, 4, 2), (5, 1, 3)):
            try:
                tree = grow(new_tree(Cyclic(m), b, 1, k, symmetry=False), m)
            except TreeDied as err:
                tree = err.tree
            for level in range(tree.depth + 1):
                self.assertEqual(level_size(tree, level),
                                 count_partial_good(m, b, k, level),
                                 f'm={m}, b={b}, k={k}, level={level}')

    def test_symmetry_keeps_emptiness(self):
        for m, b in ((9, 3), (10, 5), (7, 1)):
            sizes = []
            for symmetry in (True, False):
                try:
                    tree = grow(new_tree(Cyclic(m), b, 1, 2,
                                         symmetry=symmetry), m)
                except TreeDied as err:
                    tree = err.tree
                sizes.append([size > 0 for size in tree.sizes()])
            self.assertEqual(sizes[0], sizes[1])


if __name__ == "__main__":
    unittest.main()
