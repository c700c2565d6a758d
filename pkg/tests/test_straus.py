"""Check Straus homomorphisms, color counts and the colorings built on them
"""
import json
import unittest
from fractions import Fraction
from strauslab.abelian import (INFINITE, CirclePoint, Cyclic, FreeOmega,
                               Integers, OrderValue, Seq, Sequences)
from strauslab.diagonal import Construction
from strauslab.straus import (ColoringError, ConstantColoring, EquationSpec,
                              HalfCase, HomError, OddCase, RuleColoring,
                              TableColoring, anchor_norm, build_hom,
                              circle_color, color_count, coloring_from_json,
                              identity_map, multiple_period, parse_map,
                              scale_map, straus_coloring,
                              straus_star_coloring)
from strauslab.verify import Window, check_lmb_condition, find_pairwise_mono


class ColorCountTest(unittest.TestCase):

    def test_formula(self):
        self.assertEqual(color_count(1, INFINITE), 2)
        self.assertEqual(color_count(1, OrderValue(3)), 3)
        self.assertEqual(color_count(2, OrderValue(3)), 6)
        self.assertEqual(color_count(3, OrderValue(5)), 8)
        self.assertEqual(color_count(2, OrderValue(12)), 4)

    def test_prime_choice(self):
        self.assertEqual(color_count(1, OrderValue(6), prime=3), 3)
        self.assertEqual(color_count(1, OrderValue(6), prime=2), 2)
        with self.assertRaises(HomError):
            color_count(1, OrderValue(6), prime=5)
        with self.assertRaises(HomError):
            color_count(1, OrderValue(9), prime=2)
        with self.assertRaises(HomError):
            color_count(1, INFINITE, prime=3)
        with self.assertRaises(ValueError):
            color_count(0, INFINITE)


class BuildHomTest(unittest.TestCase):

    def test_anchor_all_cyclic(self):
        for m in range(2, 31):
            spec = Cyclic(m)
            for b in range(1, m):
                hom = build_hom(spec, b)
                self.assertEqual(hom(b), hom.target, f'm={m}, b={b}')
                for x in range(m):
                    self.assertEqual(hom(spec.add(x, b)), hom(x) + hom(b))

    def test_cases(self):
        hom = build_hom(Cyclic(9), 3)
        self.assertEqual(hom.case, OddCase(3))
        self.assertEqual(hom(3), CirclePoint(1, 3))
        self.assertEqual(anchor_norm(hom), Fraction(1, 3))
        hom = build_hom(Integers(), -4)
        self.assertEqual(hom.case, HalfCase())
        self.assertEqual(hom(-4), CirclePoint(1, 2))
        hom = build_hom(Cyclic(12), 2, prime=3)
        self.assertEqual(hom(2), CirclePoint(1, 3))
        self.assertEqual(hom.s, 2)

    def test_sequences(self):
        hom = build_hom(Sequences(), Seq((0, -2)))
        self.assertEqual(hom.coordinate, 2)
        self.assertEqual(hom(Seq((0, -2))), CirclePoint(1, 2))
        self.assertEqual(hom.to_dict(), {'s': -1, 'D': 4, 'coordinate': 2})


class ColoringTest(unittest.TestCase):

    def test_circle_color(self):
        self.assertEqual(circle_color(CirclePoint(1, 2), 2, Fraction(1, 2)),
                         1)
        self.assertEqual(circle_color(CirclePoint(0), 3, Fraction(1, 3)), 0)
        self.assertEqual(circle_color(CirclePoint(9, 10), 3,
                                      Fraction(1, 3)), 2)
        with self.assertRaises(ColoringError):
            circle_color(CirclePoint(0), 2, Fraction(1, 3))

    def test_rule_coloring_direct(self):
        hom = build_hom(Cyclic(9), 3)
        coloring = RuleColoring(hom, 3, Fraction(1, 3))
        self.assertEqual(coloring, RuleColoring(hom=hom, k=3,
                                                width=Fraction(1, 3)))
        self.assertEqual([coloring(x) for x in range(9)],
                         [0, 0, 0, 1, 1, 1, 2, 2, 2])
        self.assertEqual(coloring, straus_coloring(Cyclic(9), 3, 1))
        with self.assertRaises(TypeError):
            RuleColoring(hom, 3)
        with self.assertRaises(ColoringError):
            RuleColoring(hom, 2, Fraction(1, 3))

    def test_straus_cyclic_exhaustive(self):
        for m in range(2, 49):
            spec = Cyclic(m)
            for b in range(1, m):
                for n in (1, 2, 3):
                    coloring = straus_coloring(spec, b, n)
                    self.assertEqual(coloring.k,
                                     color_count(n, spec.order_of(b)))
                    used = {coloring.color(x) for x in range(m)}
                    self.assertLessEqual(len(used), coloring.k)
                    self.assertIsNone(
                        find_pairwise_mono(spec, coloring,
                                           EquationSpec(n, b)),
                        f'm={m}, b={b}, n={n}')

    def test_straus_integers_window(self):
        spec = Integers()
        window = Window.interval(-300, 300)
        for b in (1, 2, 5):
            for n in (1, 2):
                coloring = straus_coloring(spec, b, n)
                self.assertEqual(coloring.k, 2 * n)
                self.assertIsNone(find_pairwise_mono(spec, coloring,
                                                     EquationSpec(n, b),
                                                     window))
                self.assertEqual(multiple_period(coloring), 2)
                self.assertTrue(check_lmb_condition(
                    spec, coloring, b, multiple_period(coloring), 100))

    def test_lmb_odd_order(self):
        spec = Cyclic(15)
        coloring = straus_coloring(spec, 5, 1)
        self.assertEqual(multiple_period(coloring), 3)
        self.assertTrue(check_lmb_condition(spec, coloring, 5, 3, 20))

    def test_straus_sequences(self):
        spec = Sequences()
        coloring = straus_coloring(spec, Seq((0, 2)), 1)
        window = Window.of(spec.enumerate(150))
        self.assertIsNone(find_pairwise_mono(spec, coloring,
                                             EquationSpec(1, Seq((0, 2))),
                                             window))

    def test_straus_free(self):
        construction = Construction.from_table(
            'id,h-image\n0,\n1,1\n2,2\n3,-1\n4,"0,1"\n')
        spec = FreeOmega(construction)
        coloring = straus_coloring(spec, 1, 1)
        self.assertEqual([coloring.color(x) for x in range(5)],
                         [0, 1, 0, 1, 0])
        self.assertIsNone(find_pairwise_mono(spec, coloring,
                                             EquationSpec(1, 1),
                                             Window.of(range(5))))

    def test_prime_coloring(self):
        spec = Cyclic(30)
        coloring = straus_coloring(spec, 1, 1, prime=5)
        self.assertEqual(coloring.k, 3)
        self.assertEqual(coloring.width, Fraction(2, 5))
        self.assertIsNone(find_pairwise_mono(spec, coloring,
                                             EquationSpec(1, 1)))

    def test_product_coloring(self):
        spec = Cyclic(12)
        doubling = scale_map(2)
        coloring = straus_star_coloring(spec, 3, 2, [identity_map(),
                                                     doubling])
        self.assertEqual(coloring.k, 16)
        eq = EquationSpec(2, 3, (identity_map(), doubling))
        self.assertIsNone(find_pairwise_mono(spec, coloring, eq))
        self.assertTrue(all(0 <= coloring.color(x) < 16 for x in range(12)))

    def test_product_coloring_single_pair(self):
        spec = Cyclic(12)
        coloring = straus_star_coloring(spec, 3, 1, [identity_map(),
                                                     scale_map(2),
                                                     parse_map('mul:2')])
        self.assertEqual(coloring.k, 4)
        for group_map in (identity_map(), scale_map(2)):
            eq = EquationSpec(1, 3, (group_map,))
            self.assertIsNone(find_pairwise_mono(spec, coloring, eq))

    def test_product_errors(self):
        with self.assertRaises(ColoringError):
            straus_star_coloring(Cyclic(12), 3, 1, [])
        spec = FreeOmega(Construction.from_table('id,h-image\n0,\n1,1\n'))
        with self.assertRaises(ColoringError):
            straus_star_coloring(spec, 1, 1, [identity_map()])


class SerializationTest(unittest.TestCase):

    def test_rule_json(self):
        spec = Cyclic(9)
        coloring = straus_coloring(spec, 3, 1)
        data = coloring.to_dict()
        self.assertEqual(list(data), ['group', 'hom', 'k', 'width', 'case'])
        self.assertEqual(data['k'], 3)
        self.assertEqual(data['case'], {'odd': 3})
        text = json.dumps({'coloring': data})
        self.assertEqual(coloring_from_json(spec, text), coloring)

    def test_product_json(self):
        spec = Cyclic(12)
        coloring = straus_star_coloring(spec, 3, 1, [identity_map(),
                                                     scale_map(2)])
        parsed = coloring_from_json(spec, json.dumps(coloring.to_dict()))
        self.assertEqual([parsed.color(x) for x in range(12)],
                         [coloring.color(x) for x in range(12)])

    def test_table_csv(self):
        spec = Integers()
        table = TableColoring({-1: 1, 0: 0, 1: 1}, 2)
        text = table.to_csv(spec)
        self.assertEqual(text, 'element,color\n-1,1\n0,0\n1,1\n')
        self.assertEqual(TableColoring.from_csv(spec, text), table)
        with self.assertRaises(ColoringError):
            table.color(5)
        with self.assertRaises(ColoringError):
            TableColoring({0: 2}, 2)

    def test_malformed(self):
        with self.assertRaises(ColoringError):
            coloring_from_json(Integers(), '{')
        with self.assertRaises(ColoringError):
            coloring_from_json(Integers(), '{"k": 2}')
        self.assertIsInstance(
            coloring_from_json(Integers(), '{"constant": true, "k": 1}'),
            ConstantColoring)
        with self.assertRaises(ColoringError):
            RuleColoring(build_hom(Integers(), 1), 1, Fraction(1, 2))


class MapTest(unittest.TestCase):

    def test_parse(self):
        self.assertEqual(parse_map('id'), identity_map())
        self.assertEqual(parse_map(' mul:3 ').name, 'mul:3')
        self.assertEqual(parse_map('mul:3')(Cyclic(7), 4), 5)
        for text in ('mul:x', 'double', ''):
            with self.assertRaises(ColoringError):
                parse_map(text)

    def test_equation_spec(self):
        eq = EquationSpec(2, 3)
        self.assertEqual(eq.maps, (identity_map(), identity_map()))
        with self.assertRaises(ValueError):
            EquationSpec(2, 3, (identity_map(),))
        with self.assertRaises(ValueError):
            EquationSpec(0, 3)


if __name__ == "__main__":
    unittest.main()
