import random

from django.test import SimpleTestCase

from app.exceptions import EmptyRun
from app.models.answer import EXACT, Tolerance
from app.models.formula import ExecutionOutcome, NOT_EXECUTABLE_FORMAT
from app.utils.constants import MODE, NOT_EXECUTABLE
from app.utils.judge_util import (answer_key, exact_match, judge_records, normalize_answer, parse_model_output,
                                  score_run, to_answer_value)


def wrap(body, think='t'):
    return f'<think>{think}</think><answer>{body}</answer>'


class ParseModelOutputTest(SimpleTestCase):
    def test_textual(self):
        parsed = parse_model_output(wrap('{"answer": 4}'), MODE.TEXTUAL)
        self.assertTrue(parsed.format_ok)
        self.assertEqual(parsed.answer, 4.0)
        self.assertEqual(parsed.think, 't')

    def test_symbolic(self):
        parsed = parse_model_output(wrap('{"formula": "=COUNTIF(D2:D28, \\">=75\\")"}'), MODE.SYMBOLIC)
        self.assertTrue(parsed.format_ok)
        self.assertEqual(parsed.formula, '=COUNTIF(D2:D28, ">=75")')

    def test_symbolic_answer_key_holding_a_formula(self):
        parsed = parse_model_output(wrap('{"answer": "=SUM(A1:A3)"}'), MODE.SYMBOLIC)
        self.assertEqual(parsed.formula, '=SUM(A1:A3)')

    def test_list_answer(self):
        parsed = parse_model_output(wrap('{"answer": ["a", 2]}'), MODE.TEXTUAL)
        self.assertEqual(parsed.answer, ('a', 2.0))

    def test_multiline_blocks(self):
        raw = '<think>\nstep one\nstep two\n</think>\n\n<answer>\n{"answer": "x"}\n</answer>'
        self.assertTrue(parse_model_output(raw, MODE.TEXTUAL).format_ok)

    def test_malformed(self):
        cases = [
            ('<answer>{}</answer>', MODE.TEXTUAL),
            (wrap('{"answer": 4}')[:-9], MODE.TEXTUAL),
            (wrap('not json'), MODE.TEXTUAL),
            (wrap('[1, 2]'), MODE.TEXTUAL),
            (wrap('{"result": 4}'), MODE.TEXTUAL),
            (wrap('{"answer": null}'), MODE.TEXTUAL),
            (wrap('{"answer": []}'), MODE.TEXTUAL),
            (wrap('{"formula": "SUM(A1:A3)"}'), MODE.SYMBOLIC),
            (wrap('{"formula": 6}'), MODE.SYMBOLIC),
            (wrap('{"answer": 6}'), MODE.SYMBOLIC),
        ]
        for raw, mode in cases:
            parsed = parse_model_output(raw, mode)
            self.assertFalse(parsed.format_ok, raw)
            self.assertTrue(parsed.reason, raw)


class NormalizeTest(SimpleTestCase):
    def test_text_pipeline(self):
        self.assertEqual(normalize_answer(' 1,234 '), 1234.0)
        self.assertEqual(normalize_answer('$1,234.50'), 1234.5)
        self.assertEqual(normalize_answer('12%'), 12.0)
        self.assertEqual(normalize_answer('  New   York '), 'new york')
        self.assertEqual(normalize_answer('1,2'), '1,2')

    def test_labels(self):
        self.assertIs(normalize_answer('Yes', label_mode=True), True)
        self.assertIs(normalize_answer('no', label_mode=True), False)
        self.assertEqual(normalize_answer('Yes'), 'yes')

    def test_idempotent(self):
        self.assertEqual(normalize_answer(5.0), 5.0)
        for value in (' $ 1,000 %', 'Hello  World', '3.50', ('A', ' b '), True):
            once = normalize_answer(value)
            self.assertEqual(normalize_answer(once), once)


class ExactMatchTest(SimpleTestCase):
    def test_numbers(self):
        self.assertTrue(exact_match(13.0, 13.0))
        self.assertFalse(exact_match(5.0, 4.0))
        self.assertTrue(exact_match(0.25, 25.0))
        self.assertTrue(exact_match(25.0, 0.25))
        self.assertFalse(exact_match(0.25, 25.0, Tolerance(percentage_equivalence=False)))
        self.assertTrue(exact_match(100.00001, 100.0))
        self.assertFalse(exact_match(100.1, 100.0))
        self.assertFalse(exact_match(100.00001, 100.0, EXACT))

    def test_text(self):
        self.assertTrue(exact_match('abc', 'ABC '))
        self.assertTrue(exact_match('1,000', 1000.0))
        self.assertFalse(exact_match('abc', 'abd'))

    def test_booleans_are_strict(self):
        self.assertFalse(exact_match(True, 1.0))
        self.assertFalse(exact_match('yes', True))
        self.assertTrue(exact_match('yes', True, Tolerance(label_mode=True)))

    def test_lists_are_multisets(self):
        self.assertTrue(exact_match(('b', 'a'), ('A', 'B')))
        self.assertFalse(exact_match(('a', 'a'), ('a', 'b')))
        self.assertFalse(exact_match(('a',), ('a', 'b')))
        self.assertTrue(exact_match(('7',), 7.0))

    def test_symmetric_on_exact_scalars(self):
        rng = random.Random(5)
        pool = [1.0, 2.0, 0.5, 50.0, 'x', 'X ', True, False, ('a', 'b')]
        for _ in range(200):
            a, b = rng.choice(pool), rng.choice(pool)
            self.assertEqual(exact_match(a, b, EXACT), exact_match(b, a, EXACT))


class ScoreRunTest(SimpleTestCase):
    def test_mean(self):
        records = [(13.0, 13.0), (5.0, 4.0), (ExecutionOutcome.executed(7.0), 7.0)]
        self.assertAlmostEqual(score_run(records), 2 / 3, delta=1e-9)

    def test_not_executable_is_wrong(self):
        records = [(ExecutionOutcome.failed(NOT_EXECUTABLE.PARSE_ERROR), 1.0), (NOT_EXECUTABLE_FORMAT, 2.0)]
        self.assertEqual(score_run(records), 0.0)

    def test_empty(self):
        with self.assertRaises(EmptyRun):
            score_run([])

    def test_hand_scored_sheet(self):
        sheet = [
            ('42', 42.0, True),
            (' Paris ', 'paris', True),
            (0.5, 50.0, True),
            (ExecutionOutcome.executed(3.0), 4.0, False),
            (ExecutionOutcome.executed('B'), 'b', True),
            (ExecutionOutcome.failed(NOT_EXECUTABLE.RUNTIME_ERROR, '#DIV/0!'), 0.0, False),
            (('x', 'y'), ('y', 'x'), True),
            (('x',), ('x', 'y'), False),
            (True, True, True),
            (True, 'true', False),
            ('$1,200', 1200.0, True),
            (1199.0, 1200.0, False),
            ('12%', 12.0, True),
            (None, 1.0, False),
            ('abc', 'abcd', False),
            (ExecutionOutcome.executed(0.0), 0.0, True),
            (1e-7, 0.0, True),
            (2e-6, 0.0, False),
            ('  Two  words', 'two words', True),
            (ExecutionOutcome.executed(False), False, True),
        ]
        verdicts = judge_records([(pred, gold) for pred, gold, _ in sheet])
        self.assertEqual(verdicts, [expected for _, _, expected in sheet])
        self.assertAlmostEqual(score_run([(pred, gold) for pred, gold, _ in sheet]),
                               sum(expected for _, _, expected in sheet) / len(sheet))


class AnswerValueTest(SimpleTestCase):
    def test_conversion(self):
        self.assertEqual(to_answer_value(3), 3.0)
        self.assertEqual(to_answer_value(['a', 1]), ('a', 1.0))
        self.assertIsNone(to_answer_value([['nested']]))
        self.assertIsNone(to_answer_value({'a': 1}))
        self.assertIsNone(to_answer_value(float('nan')))
        self.assertIsNone(to_answer_value(10 ** 400))

    def test_key(self):
        self.assertEqual(answer_key(('a', 1.0)), '["a", 1.0]')
        self.assertNotEqual(answer_key(True), answer_key(1.0))
