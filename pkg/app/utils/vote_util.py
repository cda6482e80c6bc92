import logging
from typing import List, Optional, Sequence, Tuple

from app.exceptions import EmptyRun
from app.formula import execute
from app.models.answer import AnswerValue, Tolerance
from app.models.formula import NOT_EXECUTABLE_FORMAT
from app.models.grid import Grid
from app.models.vote import CandidateSet, VoteResult
from app.utils.constants import ERROR_MESSAGE, MODE
from app.utils.judge_util import answer_key, exact_match, normalize_answer, outcome_answer, parse_model_output

logger = logging.getLogger(__name__)


def majority_vote(candidates: Sequence[Optional[AnswerValue]], tolerance: Tolerance = Tolerance()) -> VoteResult:
    """Group valid candidates into classes under exact_match; the first-seen
    member represents its class and wins ties. The tally is keyed by the
    normalized answer."""
    representatives: List[AnswerValue] = []
    counts: List[int] = []
    for candidate in candidates:
        if candidate is None:
            continue
        for position, representative in enumerate(representatives):
            if exact_match(candidate, representative, tolerance):
                counts[position] += 1
                break
        else:
            representatives.append(candidate)
            counts.append(1)
    if not representatives:
        return VoteResult(chosen=None, tally={}, n_valid=0)
    winner = max(range(len(counts)), key=lambda position: (counts[position], -position))
    tally = {}
    for representative, count in zip(representatives, counts):
        key = answer_key(normalize_answer(representative, tolerance.label_mode))
        tally[key] = tally.get(key, 0) + count
    return VoteResult(chosen=representatives[winner], tally=tally, n_valid=sum(counts))


def pooled(candidates: CandidateSet) -> List[Optional[AnswerValue]]:
    """Textual answers first, then executed formula values, in sample order."""
    return list(candidates.textual) + [outcome_answer(outcome) for outcome in candidates.symbolic]


def hybrid_vote(candidates: CandidateSet, tolerance: Tolerance = Tolerance()) -> VoteResult:
    return majority_vote(pooled(candidates), tolerance)


def truncate(candidates: CandidateSet, n_text: int, n_formula: int) -> CandidateSet:
    """Keep the first n_text textual and n_formula symbolic samples."""
    textual, symbolic = candidates.textual[:n_text], candidates.symbolic[:n_formula]
    if not textual and not symbolic:
        raise EmptyRun('Vote sizes leave no candidates.')
    return CandidateSet(textual=textual, symbolic=symbolic)


def upper_bound_hit(candidates: CandidateSet, gold: AnswerValue, tolerance: Tolerance = Tolerance()) -> bool:
    return any(answer is not None and exact_match(answer, gold, tolerance) for answer in pooled(candidates))


def vote_hit(candidates: CandidateSet, gold: AnswerValue, tolerance: Tolerance = Tolerance()) -> bool:
    chosen = hybrid_vote(candidates, tolerance).chosen
    return chosen is not None and exact_match(chosen, gold, tolerance)


def upper_bound_rate(sets: Sequence[Tuple[CandidateSet, AnswerValue]], tolerance: Tolerance = Tolerance()) -> float:
    if not sets:
        raise EmptyRun(ERROR_MESSAGE.EMPTY_RUN)
    return sum(upper_bound_hit(candidates, gold, tolerance) for candidates, gold in sets) / len(sets)


def vote_accuracy(sets: Sequence[Tuple[CandidateSet, AnswerValue]], tolerance: Tolerance = Tolerance()) -> float:
    if not sets:
        raise EmptyRun(ERROR_MESSAGE.EMPTY_RUN)
    return sum(vote_hit(candidates, gold, tolerance) for candidates, gold in sets) / len(sets)


def build_candidates(textual_outputs: Sequence[str], symbolic_outputs: Sequence[str], grid: Grid) -> CandidateSet:
    """Parse raw generations; formulas are executed against the grid."""
    textual = []
    for raw in textual_outputs:
        parsed = parse_model_output(raw, MODE.TEXTUAL)
        textual.append(parsed.answer if parsed.format_ok else None)
    symbolic = []
    for raw in symbolic_outputs:
        parsed = parse_model_output(raw, MODE.SYMBOLIC)
        symbolic.append(execute(parsed.formula, grid) if parsed.format_ok else NOT_EXECUTABLE_FORMAT)
    return CandidateSet(textual=tuple(textual), symbolic=tuple(symbolic))
