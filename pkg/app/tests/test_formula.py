import random

from django.test import SimpleTestCase

from app.exceptions import FormulaParseError
from app.formula import evaluate, execute, format_formula, formula_stats, matches, parse_criteria, parse_formula
from app.models.formula import (Array, Binary, BoolLit, Call, CellError, CellRef, Criteria, NumberLit, RangeRef,
                                TextLit, Unary)
from app.models.grid import EMPTY, CellAddress
from app.tests.oracle import Generator
from app.utils.constants import CELL_ERROR, NOT_EXECUTABLE
from app.utils.grid_util import grid_from_rows, parse_address


def ref(text):
    return CellRef(parse_address(text))


def column(values, letter_index=0, header=None):
    rows = [[None] * letter_index + [header]] if header is not None else []
    rows += [[None] * letter_index + [value] for value in values]
    return grid_from_rows(rows)


class ParserTest(SimpleTestCase):
    def test_binary(self):
        self.assertEqual(parse_formula('=A1 + A2'), Binary('+', ref('A1'), ref('A2')))

    def test_call(self):
        self.assertEqual(parse_formula('=IF(A1 > 10, "Yes", "No")'),
                         Call('IF', (Binary('>', ref('A1'), NumberLit(10.0)), TextLit('Yes'), TextLit('No'))))

    def test_unary(self):
        self.assertEqual(parse_formula('=-(3)'), Unary('neg', NumberLit(3.0)))

    def test_precedence(self):
        self.assertEqual(parse_formula('=1+2*3=7'),
                         Binary('=', Binary('+', NumberLit(1.0), Binary('*', NumberLit(2.0), NumberLit(3.0))),
                                NumberLit(7.0)))
        self.assertEqual(parse_formula('=8-4-2'),
                         Binary('-', Binary('-', NumberLit(8.0), NumberLit(4.0)), NumberLit(2.0)))

    def test_ranges_are_normalized(self):
        self.assertEqual(parse_formula('=SUM(B3:A1)'),
                         Call('SUM', (RangeRef(CellAddress(row=1, column=1), CellAddress(row=3, column=2)),)))

    def test_names_and_literals(self):
        self.assertEqual(parse_formula('=sum(a1)'), Call('SUM', (ref('A1'),)))
        self.assertEqual(parse_formula('=TRUE'), BoolLit(True))
        self.assertEqual(parse_formula('="say ""hi"""'), TextLit('say "hi"'))
        self.assertEqual(parse_formula('=$B$2'), ref('B2'))

    def test_errors(self):
        for text in ('not a formula', '=', '=SUM(A1', '=A1 +', '=1 2', '=foo', '=A1:', '=(1', '=A0', '=#', '=1,2'):
            with self.assertRaises(FormulaParseError, msg=text):
                parse_formula(text)

    def test_error_carries_position(self):
        with self.assertRaises(FormulaParseError) as context:
            parse_formula('=SUM(A1 A2)')
        self.assertEqual(context.exception.position, 8)

    def test_render_parses_back(self):
        for text in ('=A1+2*B1', '=-(A1)/3', '=IF(A1>=2,"a""b",FALSE)', '=COUNTIF(D2:D28, ">=75")', '=TRUE()'):
            ast = parse_formula(text)
            self.assertEqual(parse_formula(format_formula(ast)), ast)
        self.assertEqual(format_formula(parse_formula('=A1+2*B1')), '=(A1 + (2 * B1))')


class EvaluatorTest(SimpleTestCase):
    def setUp(self):
        self.grid = grid_from_rows([
            [1, 'apple', True, 10],
            [2, 'Banana', False, 20],
            [3, None, '7', 30],
            [0, 'cherry', None, 40],
        ])

    def run_formula(self, text):
        return evaluate(parse_formula(text), self.grid)

    def test_arithmetic(self):
        self.assertEqual(self.run_formula('=A1 + A2 * A3'), 7.0)
        self.assertEqual(self.run_formula('=D1 / A2'), 5.0)
        self.assertEqual(self.run_formula('=C1 + C3'), 8.0)
        self.assertEqual(self.run_formula('=-B3'), -0.0)

    def test_errors(self):
        self.assertEqual(self.run_formula('=A1 / A4'), CellError(CELL_ERROR.DIV0))
        self.assertEqual(self.run_formula('=B1 + 1'), CellError(CELL_ERROR.VALUE))
        self.assertEqual(self.run_formula('=Z99'), CellError(CELL_ERROR.REF))
        self.assertEqual(self.run_formula('=FOO(A1)'), CellError(CELL_ERROR.NAME))
        self.assertEqual(self.run_formula('=NOT(1, 2)'), CellError(CELL_ERROR.VALUE))
        self.assertEqual(self.run_formula('=1e300 * 1e300'), CellError(CELL_ERROR.VALUE))

    def test_errors_propagate_left_first(self):
        self.assertEqual(self.run_formula('=(1/0) + Z99'), CellError(CELL_ERROR.DIV0))

    def test_comparison(self):
        self.assertIs(self.run_formula('=B2 = "banana"'), True)
        self.assertIs(self.run_formula('=B3 = 0'), True)
        self.assertIs(self.run_formula('=B3 = ""'), True)
        self.assertIs(self.run_formula('=A1 = "1"'), False)
        self.assertIs(self.run_formula('=A1 <> "1"'), True)
        self.assertEqual(self.run_formula('=A1 < "1"'), CellError(CELL_ERROR.VALUE))
        self.assertIs(self.run_formula('=C1 > C2'), True)

    def test_range_values(self):
        value = self.run_formula('=A1:A3 * 2')
        self.assertIsInstance(value, Array)
        self.assertEqual(value.rows, ((2.0,), (4.0,), (6.0,)))
        self.assertEqual(self.run_formula('=A1:A2 + D1:D3'), CellError(CELL_ERROR.VALUE))

    def test_aggregates(self):
        self.assertEqual(self.run_formula('=SUM(A1:A4)'), 6.0)
        self.assertEqual(self.run_formula('=SUM(A1:D1)'), 11.0)
        self.assertEqual(self.run_formula('=SUM(C1, "2", TRUE)'), 3.0)
        self.assertEqual(self.run_formula('=AVERAGE(D1:D4)'), 25.0)
        self.assertEqual(self.run_formula('=AVERAGE(B1:B4)'), CellError(CELL_ERROR.DIV0))
        self.assertEqual(self.run_formula('=COUNT(A1:D4)'), 8.0)
        self.assertEqual(self.run_formula('=COUNT(B1, "x", 3)'), 1.0)
        self.assertEqual(self.run_formula('=MAX(A1:A4)'), 3.0)
        self.assertEqual(self.run_formula('=MIN(D1:D4, A4)'), 0.0)
        self.assertEqual(self.run_formula('=MAX(B1:B4)'), 0.0)

    def test_max_over_ten_cells(self):
        grid = column([float(v) for v in range(1, 11)])
        self.assertEqual(evaluate(parse_formula('=MAX(A1:A10)'), grid), 10.0)

    def test_logical(self):
        self.assertIs(self.run_formula('=AND(C1, A1)'), True)
        self.assertIs(self.run_formula('=AND(C1:C2)'), False)
        self.assertIs(self.run_formula('=OR(C2, A4, 2)'), True)
        self.assertEqual(self.run_formula('=AND(B1:B2)'), CellError(CELL_ERROR.VALUE))
        self.assertIs(self.run_formula('=NOT(A4)'), True)
        self.assertEqual(self.run_formula('=NOT("x")'), CellError(CELL_ERROR.VALUE))

    def test_if(self):
        self.assertEqual(self.run_formula('=IF(D1 > 10, "Yes", "No")'), 'No')
        self.assertEqual(self.run_formula('=IF(A3, "Yes", "No")'), 'Yes')
        self.assertIs(self.run_formula('=IF(A4, 1)'), False)
        self.assertEqual(self.run_formula('=IF(TRUE, 1, 1/0)'), 1.0)
        self.assertEqual(self.run_formula('=IF(B1, 1, 2)'), CellError(CELL_ERROR.VALUE))

    def test_index_match(self):
        self.assertEqual(self.run_formula('=INDEX(D1:D4, 3)'), 30.0)
        self.assertEqual(self.run_formula('=INDEX(A1:D4, 2, 4)'), 20.0)
        self.assertEqual(self.run_formula('=INDEX(D1:D4, 5)'), CellError(CELL_ERROR.REF))
        self.assertEqual(self.run_formula('=MATCH("banana", B1:B4, 0)'), 2.0)
        self.assertEqual(self.run_formula('=MATCH("kiwi", B1:B4, 0)'), CellError(CELL_ERROR.NA))
        self.assertEqual(self.run_formula('=MATCH(25, D1:D4)'), 2.0)
        self.assertEqual(self.run_formula('=MATCH(5, D1:D4, 1)'), CellError(CELL_ERROR.NA))
        self.assertEqual(self.run_formula('=MATCH(1, A1:B2, 0)'), CellError(CELL_ERROR.NA))
        self.assertEqual(self.run_formula('=INDEX(D1:D4, MATCH("cherry", B1:B4, 0))'), 40.0)

    def test_countif(self):
        self.assertEqual(self.run_formula('=COUNTIF(D1:D4, ">=20")'), 3.0)
        self.assertEqual(self.run_formula('=COUNTIF(B1:B4, "BANANA")'), 1.0)
        self.assertEqual(self.run_formula('=COUNTIF(B1:B4, "<>apple")'), 3.0)
        self.assertEqual(self.run_formula('=COUNTIF(C1:C4, TRUE)'), 1.0)
        self.assertEqual(self.run_formula('=COUNTIF(A1:A4, 2)'), 1.0)
        self.assertEqual(self.run_formula('=COUNTIF(C1:C4, "")'), 1.0)
        self.assertEqual(self.run_formula('=COUNTIF(5, ">1")'), CellError(CELL_ERROR.VALUE))

    def test_sumproduct(self):
        self.assertEqual(self.run_formula('=SUMPRODUCT(A1:A4, D1:D4)'), 140.0)
        self.assertEqual(self.run_formula('=SUMPRODUCT((D1:D4>=20)*1)'), 3.0)
        self.assertEqual(self.run_formula('=SUMPRODUCT((B1:B4="apple")*D1:D4)'), 10.0)
        self.assertEqual(self.run_formula('=SUMPRODUCT(A1:A4, D1:D3)'), CellError(CELL_ERROR.VALUE))
        self.assertEqual(self.run_formula('=SUMPRODUCT(B1:B4)'), 0.0)


class ExecuteTest(SimpleTestCase):
    def setUp(self):
        self.grid = column([1.0, 2.0, 3.0])

    def test_value(self):
        outcome = execute('=SUM(A1:A3)', self.grid)
        self.assertTrue(outcome.executable)
        self.assertEqual(outcome.value, 6.0)
        self.assertEqual(str(outcome), '6')

    def test_not_executable(self):
        cases = {
            'not a formula': NOT_EXECUTABLE.PARSE_ERROR,
            '=SUM(A1:A3': NOT_EXECUTABLE.PARSE_ERROR,
            '=FOO(A1)': NOT_EXECUTABLE.UNKNOWN_FUNCTION,
            '=A1/0': NOT_EXECUTABLE.RUNTIME_ERROR,
            '=A9': NOT_EXECUTABLE.RUNTIME_ERROR,
            '=A1:A3': NOT_EXECUTABLE.ARRAY_RESULT,
        }
        for text, reason in cases.items():
            outcome = execute(text, self.grid)
            self.assertFalse(outcome.executable, text)
            self.assertEqual(outcome.reason, reason, text)

    def test_overflowing_literals_are_value_errors(self):
        for text in ('=1e999', '=-1e999', '=MAX(1e999, 1)', '=1e308*10'):
            outcome = execute(text, self.grid)
            self.assertFalse(outcome.executable, text)
            self.assertEqual((outcome.reason, outcome.detail), (NOT_EXECUTABLE.RUNTIME_ERROR, '#VALUE!'), text)
        self.assertEqual(evaluate(parse_formula('=1e999'), self.grid), CellError(CELL_ERROR.VALUE))
        self.assertEqual(execute('=COUNT(1e999, 1)', self.grid).value, 1.0)

    def test_oversized_row_number_is_a_parse_error(self):
        outcome = execute('=A' + '9' * 5000, self.grid)
        self.assertEqual(outcome.reason, NOT_EXECUTABLE.PARSE_ERROR)
        self.assertEqual(execute('=SUM(A1:B' + '9' * 5000 + ')', self.grid).reason, NOT_EXECUTABLE.PARSE_ERROR)

    def test_single_cell_range_is_a_value(self):
        self.assertEqual(execute('=A2:A2', self.grid).value, 2.0)

    def test_blank_reference_displays_as_zero(self):
        grid = grid_from_rows([[None, 1]])
        self.assertEqual(execute('=A1', grid).value, 0.0)

    def test_deterministic(self):
        self.assertEqual(execute('=AVERAGE(A1:A3)*3', self.grid), execute('=AVERAGE(A1:A3)*3', self.grid))


class CriteriaTest(SimpleTestCase):
    def test_parse(self):
        self.assertEqual(parse_criteria('>=75'), Criteria('>=', 75.0))
        self.assertEqual(parse_criteria('Rick Mears'), Criteria('=', 'rick mears'))
        self.assertEqual(parse_criteria(7.0), Criteria('=', 7.0))
        self.assertEqual(parse_criteria('<>x'), Criteria('<>', 'x'))
        self.assertEqual(parse_criteria('<=1e3'), Criteria('<=', 1000.0))
        self.assertEqual(parse_criteria(EMPTY), Criteria('=', ''))

    def test_matches(self):
        at_least = parse_criteria('>=75')
        self.assertTrue(matches(at_least, 75.0))
        self.assertFalse(matches(at_least, 74.5))
        self.assertFalse(matches(at_least, '80'))
        self.assertFalse(matches(at_least, EMPTY))
        self.assertTrue(matches(parse_criteria('Rick Mears'), 'RICK MEARS'))
        self.assertTrue(matches(parse_criteria('<>x'), EMPTY))
        self.assertTrue(matches(parse_criteria(''), EMPTY))
        self.assertFalse(matches(parse_criteria(1.0), True))
        self.assertFalse(matches(parse_criteria('=1'), 'abc'))

    def test_rick_mears_count(self):
        drivers = ['Rick Mears', 'A. J. Foyt', 'rick mears', 'Al Unser', 'RICK MEARS', None]
        grid = column(drivers, letter_index=6, header='Driver')
        self.assertEqual(evaluate(parse_formula('=COUNTIF(G2:G7, "Rick Mears")'), grid), 3.0)


class CaseStudyTest(SimpleTestCase):
    def test_countif_threshold(self):
        rng = random.Random(9)
        values = [float(rng.randint(75, 100)) for _ in range(13)] + [float(rng.randint(0, 74)) for _ in range(14)]
        rng.shuffle(values)
        grid = column(values, letter_index=3, header='Score')
        self.assertEqual(sum(1 for value in values if value >= 75), 13)
        outcome = execute('=COUNTIF(D2:D28, ">=75")', grid)
        self.assertEqual(outcome.value, 13.0)

    def test_distinct_count_identity(self):
        rng = random.Random(3)
        pool = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 'north', 'North', 'south', 'East', True, False]
        for _ in range(500):
            n = rng.randint(1, 15)
            values = [rng.choice(pool) for _ in range(n)]
            grid = column(values, letter_index=5, header='Region')
            distinct = {('text', v.casefold()) if isinstance(v, str) else (type(v).__name__, v) for v in values}
            outcome = execute(f'=SUMPRODUCT(1/COUNTIF(F2:F{n + 1},F2:F{n + 1}))', grid)
            self.assertTrue(outcome.executable)
            self.assertAlmostEqual(outcome.value, len(distinct), delta=1e-9)

    def test_twelve_cell_example(self):
        values = [3.0, 1.0, 3.0, 2.0, 5.0, 4.0, 1.0, 2.0, 5.0, 3.0, 4.0, 1.0]
        grid = column(values, letter_index=5, header='Units')
        self.assertAlmostEqual(execute('=SUMPRODUCT(1/COUNTIF(F2:F13,F2:F13))', grid).value, 5.0, delta=1e-9)


def count_nodes(node):
    """(operators, variables) counted by structural recursion."""
    if isinstance(node, (CellRef, RangeRef)):
        return 0, 1
    if isinstance(node, Unary):
        operators, variables = count_nodes(node.operand)
        return operators + 1, variables
    if isinstance(node, Binary):
        left, right = count_nodes(node.left), count_nodes(node.right)
        return left[0] + right[0] + 1, left[1] + right[1]
    if isinstance(node, Call):
        counts = [count_nodes(arg) for arg in node.args]
        own = 0 if node.name in ('TRUE', 'FALSE') else 1
        return own + sum(c[0] for c in counts), sum(c[1] for c in counts)
    return 0, 0


class FormulaStatsTest(SimpleTestCase):
    def test_hand_counted(self):
        cases = {
            '=A1 + A2': (7, 1, 2),
            '=TRUE': (4, 0, 0),
            '=TRUE()': (6, 0, 0),
            '=A1': (2, 0, 1),
            '=-(3)': (4, 1, 0),
            '=COUNTIF(D2:D28, ">=75")': (23, 1, 1),
            '=SUMPRODUCT(1/COUNTIF(F2:F13,F2:F13))': (36, 3, 2),
            '=IF(A1 > 10, "Yes", "No")': (24, 2, 1),
        }
        for text, expected in cases.items():
            stats = formula_stats(text)
            self.assertEqual((stats.length, stats.n_operators, stats.n_variables), expected, text)

    def test_generated_corpus(self):
        generator = Generator(seed=11)
        for _ in range(200):
            _, oracle = generator.grid()
            ast = generator.expression(oracle)
            text = format_formula(ast)
            stats = formula_stats(text)
            self.assertEqual((stats.length, stats.n_operators, stats.n_variables),
                             (len(text) - 1, *count_nodes(ast)), text)

    def test_unparseable(self):
        with self.assertRaises(FormulaParseError):
            formula_stats('=SUM(')
