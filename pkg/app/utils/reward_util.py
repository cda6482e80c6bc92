"""Reward environment: answer reward, format reward and their sum.

Rewards are exact decimal constants; the final reward is summed in Decimal so
that 0.2 + 0.1 is exactly 0.3.
"""
import concurrent.futures
import logging
from dataclasses import dataclass
from decimal import Decimal
from typing import List, Optional, Sequence, Tuple

from app.exceptions import LengthMismatch
from app.formula import execute
from app.models.answer import AnswerValue, ModelOutput, Tolerance
from app.models.formula import ExecutionOutcome
from app.models.grid import Grid, TaskInstance
from app.models.reward import RewardBreakdown
from app.utils.constants import MODE, REWARD
from app.utils.judge_util import exact_match, outcome_answer, parse_model_output

logger = logging.getLogger(__name__)


def answer_reward(outcome: ExecutionOutcome, gold: AnswerValue, tolerance: Tolerance = Tolerance()) -> float:
    answer = outcome_answer(outcome)
    if answer is None:
        return REWARD.NOT_EXECUTABLE
    if exact_match(answer, gold, tolerance):
        return REWARD.CORRECT
    return REWARD.EXECUTABLE


def textual_answer_reward(answer: AnswerValue, gold: AnswerValue, tolerance: Tolerance = Tolerance(),
                          partial_credit: bool = True) -> float:
    if exact_match(answer, gold, tolerance):
        return REWARD.CORRECT
    return REWARD.EXECUTABLE if partial_credit else REWARD.NOT_EXECUTABLE


def format_reward(parsed: ModelOutput) -> float:
    return REWARD.FORMAT_OK if parsed.format_ok else REWARD.FORMAT_PENALTY


def combine(answer: float, fmt: float) -> RewardBreakdown:
    if fmt == REWARD.FORMAT_PENALTY:
        return RewardBreakdown(answer_reward=0.0, format_reward=fmt, final=fmt)
    final = float(Decimal(str(answer)) + Decimal(str(fmt)))
    return RewardBreakdown(answer_reward=answer, format_reward=fmt, final=final)


@dataclass(frozen=True)
class ScoredOutput:
    parsed: ModelOutput
    outcome: Optional[ExecutionOutcome]
    correct: bool
    reward: RewardBreakdown


def score_output(raw_output: str, grid: Grid, gold: AnswerValue, mode: str, tolerance: Tolerance = Tolerance(),
                 textual_partial_credit: bool = True) -> ScoredOutput:
    """Parse, execute and judge one output."""
    parsed = parse_model_output(raw_output, mode)
    fmt = format_reward(parsed)
    if not parsed.format_ok:
        logger.debug('Malformed output: %s', parsed.reason)
        return ScoredOutput(parsed, None, False, combine(0.0, fmt))
    if mode == MODE.SYMBOLIC:
        outcome = execute(parsed.formula, grid)
        answer = outcome_answer(outcome)
        correct = answer is not None and exact_match(answer, gold, tolerance)
        return ScoredOutput(parsed, outcome, correct, combine(answer_reward(outcome, gold, tolerance), fmt))
    correct = exact_match(parsed.answer, gold, tolerance)
    reward = textual_answer_reward(parsed.answer, gold, tolerance, textual_partial_credit)
    return ScoredOutput(parsed, None, correct, combine(reward, fmt))


def final_reward(raw_output: str, grid: Grid, gold: AnswerValue, mode: str, tolerance: Tolerance = Tolerance(),
                 textual_partial_credit: bool = True) -> RewardBreakdown:
    return score_output(raw_output, grid, gold, mode, tolerance, textual_partial_credit).reward


def reward_batch(records: Sequence[Tuple[str, TaskInstance]], mode: str, tolerance: Tolerance = Tolerance(),
                 textual_partial_credit: bool = True, workers: int = 1) -> List[RewardBreakdown]:
    def score(record):
        raw_output, task = record
        return final_reward(raw_output, task.table, task.gold, mode, tolerance, textual_partial_credit)

    if workers <= 1 or len(records) < 2:
        return [score(record) for record in records]
    # Executor.map yields in submission order.
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(score, records))


def align(outputs: Sequence[str], tasks: Sequence[TaskInstance]) -> List[Tuple[str, TaskInstance]]:
    if len(outputs) != len(tasks):
        raise LengthMismatch(f'{len(outputs)} outputs for {len(tasks)} tasks.')
    return list(zip(outputs, tasks))

