from django.test import SimpleTestCase

from app.formula import evaluate, format_formula, parse_formula
from app.tests.oracle import Generator, depth, same_value

N_CASES = 10000


class OracleEquivalenceTest(SimpleTestCase):
    def test_random_trees_agree_with_reference_interpreter(self):
        generator = Generator(seed=2024)
        mismatches = []
        for case in range(N_CASES):
            grid, oracle = generator.grid()
            ast = generator.expression(oracle, depth=4)
            self.assertLessEqual(depth(ast), 4)
            engine_value = evaluate(ast, grid)
            expected = oracle.run(ast)
            if not same_value(engine_value, expected):
                mismatches.append((case, format_formula(ast), engine_value, expected))
        self.assertEqual(mismatches[:5], [])

    def test_rendered_trees_parse_back(self):
        generator = Generator(seed=7)
        for _ in range(1000):
            _, oracle = generator.grid()
            ast = generator.expression(oracle)
            self.assertEqual(parse_formula(format_formula(ast)), ast)
