from dataclasses import dataclass
from typing import Tuple

from app.models.answer import Tolerance


@dataclass(frozen=True)
class RunConfig:
    rel_tol: float
    abs_tol: float
    percentage_equivalence: bool
    label_mode: bool
    vote_sizes: Tuple[int, int]
    seed: int
    textual_partial_credit: bool = True
    workers: int = 1

    @property
    def tolerance(self) -> Tolerance:
        return Tolerance(rel_tol=self.rel_tol, abs_tol=self.abs_tol,
                         percentage_equivalence=self.percentage_equivalence, label_mode=self.label_mode)

    @property
    def n_text(self) -> int:
        return self.vote_sizes[0]

    @property
    def n_formula(self) -> int:
        return self.vote_sizes[1]


@dataclass(frozen=True)
class SimulationConfig:
    """Knobs for the toy-scale theory experiments."""
    n_tasks: int = 100
    templates: Tuple[str, ...] = ('sum', 'count', 'max', 'lookup')
    n_rows: int = 6
    n_actions: int = 10
    fidelities: Tuple[float, ...] = (0.5, 0.9, 1.0)
    plan_prob: float = 0.8
    template: str = 'count'
    coverage: float = 0.6
    n_samples: int = 200000
    sft_lr: float = 3.0
    sft_steps: int = 50000
    kl_threshold: float = 1e-4
    rl_mode: str = 'exact'
    rl_lr: float = 0.4
    rl_steps: int = 50000
    batch_size: int = 64
    reward_tolerance: float = 1e-3
    epsilon: float = 0.01
    delta: float = 0.05
    control_gap: float = 0.01
    discovery_mass: float = 0.5
    trace_every: int = 500
