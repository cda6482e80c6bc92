"""Enumerable toy tasks: a small grid, a question template and a finite
formula action space whose correctness is decided by executing every action."""
import logging
from typing import List, Tuple

import numpy as np

from app.exceptions import GenerationFailure
from app.formula import execute
from app.models.answer import Tolerance
from app.models.grid import Grid
from app.models.policy import TaskSpec, ToyTask
from app.utils.constants import TEMPLATE
from app.utils.grid_util import grid_from_rows, render_number
from app.utils.judge_util import outcome_answer
from app.utils.reward_util import answer_reward

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 20

# Formulas that never execute: a parse error, an unknown function, a runtime error.
BROKEN = ('=SUM({rng}', '=FOO({rng})', '={first}/0')


def _column(rng: np.random.Generator, spec: TaskSpec) -> List[float]:
    return [float(v) for v in rng.integers(spec.low, spec.high, endpoint=True, size=spec.n_rows)]


def _range(column: str, n_rows: int) -> str:
    return f'{column}1:{column}{n_rows}'


def _sum_task(rng, spec: TaskSpec):
    values = _column(rng, spec)
    n, cells = spec.n_rows, _range('A', spec.n_rows)
    correct = [f'=SUM({cells})', '=' + '+'.join(f'A{row}' for row in range(1, n + 1)),
               f'=SUMPRODUCT({cells})', f'=AVERAGE({cells})*{n}']
    wrong = [f'=SUM(A1:A{max(n - 1, 1)})', f'=MAX({cells})', f'=MIN({cells})', f'=AVERAGE({cells})',
             f'=COUNT({cells})', f'=SUM({cells})*2']
    return [[v] for v in values], float(sum(values)), 'What is the total of column A?', correct, wrong


def _count_task(rng, spec: TaskSpec):
    threshold = float(spec.threshold)
    if spec.target_count is not None:
        if not 0 <= spec.target_count <= spec.n_rows or not spec.low < threshold <= spec.high:
            raise GenerationFailure('target_count cannot be realized with this threshold and range.')
        above = rng.integers(int(np.ceil(threshold)), spec.high, endpoint=True, size=spec.n_rows)
        below = rng.integers(spec.low, int(np.ceil(threshold)), size=spec.n_rows)
        hits = set(rng.choice(spec.n_rows, size=spec.target_count, replace=False).tolist())
        values = [float(above[i] if i in hits else below[i]) for i in range(spec.n_rows)]
    else:
        values = _column(rng, spec)
    n, cells, t = spec.n_rows, _range('A', spec.n_rows), render_number(threshold)
    gold = float(sum(1 for v in values if v >= threshold))
    correct = [f'=COUNTIF({cells}, ">={t}")', f'=SUMPRODUCT(({cells}>={t})*1)', f'={n}-COUNTIF({cells}, "<{t}")']
    wrong = [f'=COUNTIF({cells}, "<{t}")', f'=COUNTIF({cells}, "<={t}")', f'=COUNT({cells})',
             f'=COUNTIF({cells}, "={t}")', f'=SUMPRODUCT(({cells}<{t})*1)']
    question = f'How many values in column A are at least {t}?'
    return [[v] for v in values], gold, question, correct, wrong


def _max_task(rng, spec: TaskSpec):
    values = _column(rng, spec)
    cells = _range('A', spec.n_rows)
    correct = [f'=MAX({cells})', f'=INDEX({cells}, MATCH(MAX({cells}), {cells}, 0))', f'=SUMPRODUCT(MAX({cells}))']
    wrong = [f'=MIN({cells})', f'=AVERAGE({cells})', '=A1', f'=INDEX({cells}, MATCH(MIN({cells}), {cells}, 0))',
             f'=MAX({cells})-1']
    return [[v] for v in values], max(values), 'What is the largest value in column A?', correct, wrong


def _lookup_task(rng, spec: TaskSpec):
    values = _column(rng, spec)
    n = spec.n_rows
    names = [f'item{row}' for row in range(1, n + 1)]
    target = int(rng.integers(1, n, endpoint=True))
    name = names[target - 1]
    keys, cells = _range('A', n), _range('B', n)
    correct = [f'=INDEX({cells}, MATCH("{name}", {keys}, 0))', f'=B{target}',
               f'=SUMPRODUCT(({keys}="{name}")*{cells})']
    other = target % n + 1
    wrong = [f'=B{other}', f'=INDEX({cells}, {other})', f'=MAX({cells})', f'=MIN({cells})',
             f'=MATCH("{name}", {keys}, 0)']
    rows = [[key, v] for key, v in zip(names, values)]
    return rows, values[target - 1], f'What is the value of {name}?', correct, wrong


_BUILDERS = {
    TEMPLATE.SUM: _sum_task,
    TEMPLATE.COUNT: _count_task,
    TEMPLATE.MAX: _max_task,
    TEMPLATE.LOOKUP: _lookup_task,
}


def _score(action: str, grid: Grid, gold, tolerance: Tolerance) -> Tuple[bool, float]:
    outcome = execute(action, grid)
    reward = answer_reward(outcome, gold, tolerance)
    return outcome_answer(outcome) is not None and reward == 1.0, reward


def _padding(spec: TaskSpec, base: str) -> List[str]:
    cells = _range('A', spec.n_rows)
    broken = [template.format(rng=cells, first='A1') for template in BROKEN]
    offsets = [f'{base[1:]}+{k}' for k in range(1, spec.n_actions + 1)]
    return broken + [f'={offset}' for offset in offsets]


def _attempt(rng: np.random.Generator, spec: TaskSpec, seed: int, tolerance: Tolerance):
    rows, gold, question, correct, wrong = _BUILDERS[spec.template](rng, spec)
    grid = grid_from_rows(rows)
    scored = {}
    for action in correct + wrong + _padding(spec, correct[0]):
        if action not in scored:
            scored[action] = _score(action, grid, gold, tolerance)
    right = [action for action in correct if scored[action][0]]
    if not right:
        return None
    right = right[:max(spec.n_actions - 1, 1)]
    distractors = [action for action in scored if not scored[action][0]]
    broken = [action for action in distractors if scored[action][1] == 0.0]
    executable = [action for action in distractors if scored[action][1] != 0.0]
    # One non-executable action always stays so all three reward levels occur.
    room = spec.n_actions - len(right)
    chosen = broken[:1] + executable
    chosen = chosen[:room] if len(chosen) >= room else chosen + broken[1:room - len(chosen) + 1]
    actions = right + chosen
    order = rng.permutation(len(actions))
    actions = tuple(actions[i] for i in order)
    return ToyTask(
        grid=grid,
        question_id=f'{spec.template}-{seed}',
        action_space=actions,
        gold=gold,
        correct_mask=tuple(scored[action][0] for action in actions),
        answer_rewards=tuple(scored[action][1] for action in actions),
        plan_prob=spec.plan_prob,
        step_fidelity=spec.step_fidelity,
        template=spec.template,
        question=question,
    )


def make_task(spec: TaskSpec, seed: int, tolerance: Tolerance = Tolerance()) -> ToyTask:
    if spec.template not in _BUILDERS:
        raise GenerationFailure(f'Unknown template {spec.template!r}.')
    if spec.n_rows < 2 or spec.n_actions < 1:
        raise GenerationFailure('Tasks need at least two rows and one action.')
    rng = np.random.default_rng(seed)
    for attempt in range(MAX_ATTEMPTS):
        task = _attempt(rng, spec, seed, tolerance)
        if task is not None:
            return task
        logger.debug('Task %s-%s attempt %s had no correct action', spec.template, seed, attempt)
    raise GenerationFailure(f'No correct action for {spec.template} task after {MAX_ATTEMPTS} attempts.')
