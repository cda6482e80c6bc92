from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from app.utils.constants import DEFAULT_ABS_TOL, DEFAULT_REL_TOL

# Num is a float, Str a str, Bool a bool, List a tuple of non-list values.
AnswerValue = Union[float, str, bool, Tuple[Union[float, str, bool], ...]]


@dataclass(frozen=True)
class ModelOutput:
    raw: str
    mode: str
    think: Optional[str] = None
    payload: Optional[dict] = field(default=None, compare=False)
    format_ok: bool = False
    reason: str = ''
    answer: Optional[AnswerValue] = None
    formula: Optional[str] = None

    @property
    def prediction(self):
        return self.formula if self.formula is not None else self.answer


@dataclass(frozen=True)
class Tolerance:
    rel_tol: float = DEFAULT_REL_TOL
    abs_tol: float = DEFAULT_ABS_TOL
    percentage_equivalence: bool = True
    label_mode: bool = False

    def __post_init__(self):
        if self.rel_tol < 0 or self.abs_tol < 0:
            raise ValueError('Tolerances must be non-negative.')


EXACT = Tolerance(rel_tol=0.0, abs_tol=0.0, percentage_equivalence=False)
