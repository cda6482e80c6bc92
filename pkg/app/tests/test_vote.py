from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from app.exceptions import EmptyRun
from app.models.answer import EXACT, Tolerance
from app.models.formula import ExecutionOutcome, NOT_EXECUTABLE_FORMAT
from app.models.vote import CandidateSet
from app.utils.constants import NOT_EXECUTABLE
from app.utils.grid_util import grid_from_rows
from app.utils.judge_util import answer_key, normalize_answer
from app.utils.vote_util import (build_candidates, hybrid_vote, majority_vote, truncate, upper_bound_hit,
                                 upper_bound_rate, vote_accuracy)

FAILED = ExecutionOutcome.failed(NOT_EXECUTABLE.RUNTIME_ERROR)


def value(answer):
    return ExecutionOutcome.executed(answer)


ANSWERS = st.sampled_from([4.0, 5.0, 4.00001, 0.04, 'four', 'Four ', True, ('a', 'b')])
TEXTUAL = st.lists(st.one_of(st.none(), ANSWERS), max_size=6)
SYMBOLIC = st.lists(st.one_of(st.just(FAILED), ANSWERS.filter(lambda a: not isinstance(a, tuple)).map(value)),
                    max_size=6)


@st.composite
def candidate_sets(draw):
    textual, symbolic = draw(TEXTUAL), draw(SYMBOLIC)
    if not textual and not symbolic:
        textual = [draw(ANSWERS)]
    return CandidateSet(textual=tuple(textual), symbolic=tuple(symbolic)), draw(ANSWERS)


class MajorityVoteTest(SimpleTestCase):
    def test_strict_majority(self):
        result = majority_vote([4.0, 4.0, 5.0])
        self.assertEqual(result.chosen, 4.0)
        self.assertEqual(result.tally, {'4.0': 2, '5.0': 1})
        self.assertEqual(result.n_valid, 3)

    def test_tally_keys_are_normalized(self):
        result = majority_vote(['Paris', 'paris ', 'Rome', 4, 4.0])
        self.assertEqual(result.chosen, 'Paris')
        self.assertEqual(result.tally, {'"paris"': 2, '"rome"': 1, '4.0': 2})
        self.assertEqual(majority_vote(['Yes', 'true'], Tolerance(label_mode=True)).tally, {'true': 2})

    def test_all_invalid(self):
        result = majority_vote([None, None])
        self.assertIsNone(result.chosen)
        self.assertEqual(result.n_valid, 0)
        self.assertEqual(result.tally, {})

    def test_tie_goes_to_first_seen(self):
        self.assertEqual(majority_vote([7.0, 8.0, 8.0, 7.0]).chosen, 7.0)
        self.assertEqual(majority_vote([8.0, 7.0, 7.0, 8.0]).chosen, 8.0)
        self.assertEqual(majority_vote(['b', 'a', 'c'], EXACT).chosen, 'b')

    def test_tolerance_merges_near_duplicates(self):
        result = majority_vote([100.0, 100.000001, 7.0, 7.0])
        self.assertEqual(result.chosen, 100.0)
        self.assertEqual(result.chosen_count, 2)

    def test_normalized_text_shares_a_class(self):
        result = majority_vote(['Paris', 'paris ', 'Rome'])
        self.assertEqual(result.chosen, 'Paris')
        self.assertEqual(result.n_valid, 3)

    def test_none_is_ignored(self):
        candidates = [4.0, 5.0, 5.0]
        self.assertEqual(majority_vote(candidates + [None]), majority_vote(candidates))


class HybridVoteTest(SimpleTestCase):
    def test_pooling(self):
        candidates = CandidateSet(
            textual=(4.0, 4.0, None, 5.0, 4.0),
            symbolic=(value(4.0), NOT_EXECUTABLE_FORMAT, value(5.0), value(4.0), value(4.0)),
        )
        result = hybrid_vote(candidates)
        self.assertEqual(result.chosen, 4.0)
        self.assertEqual(result.chosen_count, 6)
        self.assertEqual(result.n_valid, 8)

    def test_nothing_valid(self):
        candidates = CandidateSet(textual=(None, None), symbolic=(FAILED, NOT_EXECUTABLE_FORMAT))
        self.assertIsNone(hybrid_vote(candidates).chosen)

    def test_single_formula(self):
        self.assertEqual(hybrid_vote(CandidateSet(symbolic=(value(13.0),))).chosen, 13.0)

    def test_textual_first_breaks_ties(self):
        candidates = CandidateSet(textual=('x',), symbolic=(value('y'),))
        self.assertEqual(hybrid_vote(candidates).chosen, 'x')

    def test_truncate(self):
        candidates = CandidateSet(textual=(1.0,) * 6, symbolic=(value(2.0),) * 12)
        formula_only = truncate(candidates, 0, 10)
        self.assertEqual((len(formula_only.textual), len(formula_only.symbolic)), (0, 10))
        hybrid = truncate(candidates, 5, 5)
        self.assertEqual((len(hybrid.textual), len(hybrid.symbolic)), (5, 5))
        with self.assertRaises(EmptyRun):
            truncate(CandidateSet(textual=(1.0,)), 0, 3)

    def test_build_candidates(self):
        grid = grid_from_rows([[1], [2], [3]])
        candidates = build_candidates(
            ['<think>a</think><answer>{"answer": 6}</answer>', 'garbage'],
            ['<think>a</think><answer>{"formula": "=SUM(A1:A3)"}</answer>', 'garbage',
             '<think>a</think><answer>{"formula": "=A1/0"}</answer>'],
            grid,
        )
        self.assertEqual(candidates.textual, (6.0, None))
        self.assertEqual(candidates.symbolic[0].value, 6.0)
        self.assertEqual(candidates.symbolic[1].reason, NOT_EXECUTABLE.INVALID_FORMAT)
        self.assertEqual(candidates.symbolic[2].reason, NOT_EXECUTABLE.RUNTIME_ERROR)
        self.assertEqual(hybrid_vote(candidates).chosen, 6.0)


class UpperBoundTest(SimpleTestCase):
    def test_gap(self):
        sets = [(CandidateSet(textual=(5.0, 4.0)), 4.0)]
        self.assertEqual(upper_bound_rate(sets), 1.0)
        self.assertEqual(vote_accuracy(sets), 0.0)

    def test_extremes(self):
        wrong = [(CandidateSet(textual=(1.0, 2.0)), 3.0), (CandidateSet(symbolic=(value(1.0),)), 3.0)]
        right = [(CandidateSet(textual=(3.0, 3.0)), 3.0), (CandidateSet(symbolic=(value(3.0),)), 3.0)]
        self.assertEqual(upper_bound_rate(wrong), 0.0)
        self.assertEqual(upper_bound_rate(right), 1.0)
        self.assertEqual(vote_accuracy(right), 1.0)

    def test_empty(self):
        with self.assertRaises(EmptyRun):
            upper_bound_rate([])
        with self.assertRaises(EmptyRun):
            vote_accuracy([])

    @settings(max_examples=1000, deadline=None)
    @given(st.lists(candidate_sets(), min_size=1, max_size=4))
    def test_upper_bound_dominates_vote(self, sets):
        self.assertGreaterEqual(upper_bound_rate(sets), vote_accuracy(sets))
        for candidates, gold in sets:
            result = hybrid_vote(candidates)
            if result.n_valid:
                self.assertEqual(result.tally[answer_key(normalize_answer(result.chosen))], max(result.tally.values()))
            else:
                self.assertIsNone(result.chosen)
                self.assertFalse(upper_bound_hit(candidates, gold))
