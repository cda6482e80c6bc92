from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from app.models.grid import Grid


@dataclass(frozen=True)
class TaskSpec:
    """Generator parameters for one enumerable toy task."""
    template: str = 'sum'
    n_rows: int = 5
    low: int = 0
    high: int = 100
    n_actions: int = 10
    threshold: float = 75
    target_count: Optional[int] = None
    plan_prob: float = 1.0
    step_fidelity: float = 1.0


@dataclass(frozen=True, eq=False)
class ToyTask:
    grid: Grid
    question_id: str
    action_space: Tuple[str, ...]
    gold: object
    correct_mask: Tuple[bool, ...]
    answer_rewards: Tuple[float, ...]
    plan_prob: float = 1.0
    step_fidelity: float = 1.0
    template: str = ''
    question: str = ''

    def __post_init__(self):
        if not self.action_space:
            raise ValueError('Action space must not be empty.')
        if not len(self.action_space) == len(self.correct_mask) == len(self.answer_rewards):
            raise ValueError('Action space and masks are not aligned.')

    @property
    def n_actions(self) -> int:
        return len(self.action_space)

    @property
    def mask(self) -> np.ndarray:
        return np.asarray(self.correct_mask, dtype=float)

    @property
    def rewards(self) -> np.ndarray:
        return np.asarray(self.answer_rewards, dtype=float)

    def with_fidelity(self, plan_prob: float, step_fidelity: float) -> 'ToyTask':
        return ToyTask(self.grid, self.question_id, self.action_space, self.gold, self.correct_mask,
                       self.answer_rewards, plan_prob, step_fidelity, self.template, self.question)


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - np.max(logits)
    weights = np.exp(shifted)
    return weights / weights.sum()


@dataclass(frozen=True, eq=False)
class CategoricalPolicy:
    logits: np.ndarray = field(repr=False)

    def __post_init__(self):
        logits = np.array(self.logits, dtype=float)
        logits.setflags(write=False)
        object.__setattr__(self, 'logits', logits)

    @classmethod
    def uniform(cls, n_actions: int) -> 'CategoricalPolicy':
        return cls(np.zeros(n_actions))

    @property
    def probs(self) -> np.ndarray:
        return softmax(self.logits)

    @property
    def n_actions(self) -> int:
        return len(self.logits)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.choice(self.n_actions, size=size, p=self.probs)

    def updated(self, step: np.ndarray) -> 'CategoricalPolicy':
        return CategoricalPolicy(self.logits + step)


@dataclass(frozen=True, eq=False)
class TeacherPolicy:
    probs: np.ndarray = field(repr=False)

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        if np.any(probs < 0) or not np.isclose(probs.sum(), 1.0, atol=1e-12):
            raise ValueError('Teacher probabilities must be non-negative and sum to 1.')
        probs.setflags(write=False)
        object.__setattr__(self, 'probs', probs)

    @property
    def support(self) -> np.ndarray:
        return self.probs > 0

    def coverage(self, task: ToyTask) -> Tuple[int, ...]:
        """Correct actions that receive teacher mass."""
        return tuple(i for i, correct in enumerate(task.correct_mask) if correct and self.probs[i] > 0)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.choice(len(self.probs), size=size, p=self.probs)
