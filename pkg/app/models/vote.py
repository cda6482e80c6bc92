from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from app.models.answer import AnswerValue
from app.models.formula import ExecutionOutcome


@dataclass(frozen=True)
class CandidateSet:
    textual: Tuple[Optional[AnswerValue], ...] = ()
    symbolic: Tuple[ExecutionOutcome, ...] = ()

    def __post_init__(self):
        if not self.textual and not self.symbolic:
            raise ValueError('A candidate set needs at least one candidate.')


@dataclass(frozen=True)
class VoteResult:
    chosen: Optional[AnswerValue]
    tally: Dict[str, int] = field(default_factory=dict, compare=False)
    n_valid: int = 0

    @property
    def chosen_count(self) -> int:
        return max(self.tally.values()) if self.tally else 0
