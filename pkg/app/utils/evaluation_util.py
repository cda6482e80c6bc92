"""Per-response evaluation shared by the judge, reward and evaluate commands."""
import logging
from dataclasses import dataclass
from statistics import fmean
from typing import List, Optional, Sequence, Tuple

from app.exceptions import EmptyRun, FormulaParseError
from app.formula import formula_stats
from app.models.answer import ModelOutput, Tolerance
from app.models.config import RunConfig
from app.models.formula import ExecutionOutcome, FormulaStats
from app.models.grid import TaskInstance
from app.models.reward import RewardBreakdown
from app.utils.constants import ERROR_MESSAGE, MODE
from app.utils.dataset_util import task_for
from app.utils.grid_util import table_layout
from app.utils.judge_util import answer_to_json, outcome_answer, score_run
from app.utils.reward_util import score_output

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResponseEvaluation:
    id: str
    parsed: ModelOutput
    outcome: Optional[ExecutionOutcome]
    correct: bool
    reward: RewardBreakdown
    stats: Optional[FormulaStats] = None

    @property
    def prediction(self):
        if self.parsed.mode == MODE.SYMBOLIC:
            return outcome_answer(self.outcome) if self.outcome is not None else None
        return self.parsed.answer

    def to_dict(self) -> dict:
        data = {
            'id': self.id,
            'mode': self.parsed.mode,
            'format_ok': self.parsed.format_ok,
            'prediction': answer_to_json(self.prediction),
            'correct': self.correct,
            **self.reward.to_dict(),
        }
        if self.outcome is not None:
            data['executable'] = self.outcome.executable
            data['formula'] = self.parsed.formula
            if not self.outcome.executable:
                data['reason'] = self.outcome.reason
        elif not self.parsed.format_ok:
            data['reason'] = self.parsed.reason
        return data


def safe_formula_stats(formula: str) -> Optional[FormulaStats]:
    try:
        return formula_stats(formula)
    except FormulaParseError:
        return None


def evaluate_response(record_id: str, output: str, mode: str, task: TaskInstance,
                      config: RunConfig) -> ResponseEvaluation:
    scored = score_output(output, task.table, task.gold, mode, config.tolerance, config.textual_partial_credit)
    stats = None
    if scored.outcome is not None:
        stats = safe_formula_stats(scored.parsed.formula)
    return ResponseEvaluation(record_id, scored.parsed, scored.outcome, scored.correct, scored.reward, stats)


def _mean(values) -> Optional[float]:
    values = list(values)
    return fmean(values) if values else None


def mean_layout(tasks: Sequence[TaskInstance]) -> dict:
    layouts = [table_layout(task.table) for task in tasks]
    return {
        'width': _mean(layout.width for layout in layouts),
        'height': _mean(layout.height for layout in layouts),
        'area': _mean(layout.area for layout in layouts),
    }


def mean_stats(stats: Sequence[FormulaStats]) -> dict:
    return {
        'length': _mean(item.length for item in stats),
        'n_operators': _mean(item.n_operators for item in stats),
        'n_variables': _mean(item.n_variables for item in stats),
    }


def evaluation_report(evaluations: List[ResponseEvaluation], tasks: Sequence[TaskInstance]) -> dict:
    if not evaluations:
        raise EmptyRun(ERROR_MESSAGE.EMPTY_RUN)
    symbolic = [item for item in evaluations if item.parsed.mode == MODE.SYMBOLIC]
    stats = [item.stats for item in symbolic if item.stats is not None]
    return {
        'n': len(evaluations),
        'accuracy': fmean(item.correct for item in evaluations),
        'mean_reward': fmean(item.reward.final for item in evaluations),
        'format_valid_rate': fmean(item.parsed.format_ok for item in evaluations),
        'executability_rate': _mean(item.outcome is not None and item.outcome.executable for item in symbolic),
        'formula_stats': mean_stats(stats),
        'table_layout': mean_layout(tasks),
        'per_id': {item.id: item.correct for item in evaluations},
    }


def judge_report(evaluations: List[ResponseEvaluation], tasks: Sequence[TaskInstance], tolerance: Tolerance) -> dict:
    records = [(item.outcome if item.outcome is not None else item.prediction, task.gold)
               for item, task in zip(evaluations, tasks)]
    return {
        'n': len(evaluations),
        'accuracy': score_run(records, tolerance),
        'per_id': {item.id: item.correct for item in evaluations},
    }


def pair_records(records: Sequence[dict], tasks) -> List[Tuple[dict, TaskInstance]]:
    return [(record, task_for(tasks, record['id'])) for record in records]
