from dataclasses import dataclass
from typing import Optional, Tuple, Union

from app.models.grid import CellAddress, CellValue, EMPTY
from app.utils.constants import CELL_ERROR_DISPLAY, NOT_EXECUTABLE


# Abstract syntax tree

@dataclass(frozen=True)
class NumberLit:
    value: float


@dataclass(frozen=True)
class TextLit:
    value: str


@dataclass(frozen=True)
class BoolLit:
    value: bool


@dataclass(frozen=True)
class CellRef:
    address: CellAddress


@dataclass(frozen=True)
class RangeRef:
    start: CellAddress
    end: CellAddress

    @classmethod
    def between(cls, first: CellAddress, second: CellAddress) -> 'RangeRef':
        top_left = CellAddress(row=min(first.row, second.row), column=min(first.column, second.column))
        bottom_right = CellAddress(row=max(first.row, second.row), column=max(first.column, second.column))
        return cls(top_left, bottom_right)

    @property
    def height(self) -> int:
        return self.end.row - self.start.row + 1

    @property
    def width(self) -> int:
        return self.end.column - self.start.column + 1


@dataclass(frozen=True)
class Unary:
    op: str
    operand: 'FormulaAst'


@dataclass(frozen=True)
class Binary:
    op: str
    left: 'FormulaAst'
    right: 'FormulaAst'


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple['FormulaAst', ...] = ()


FormulaAst = Union[NumberLit, TextLit, BoolLit, CellRef, RangeRef, Unary, Binary, Call]

NEG = 'neg'
ARITHMETIC_OPS = ('+', '-', '*', '/')
COMPARISON_OPS = ('=', '<>', '>', '<', '>=', '<=')


# Evaluation values

@dataclass(frozen=True)
class CellError:
    kind: str

    def __str__(self):
        return CELL_ERROR_DISPLAY[self.kind]


@dataclass(frozen=True)
class Array:
    """Rectangular, non-empty matrix of cell values (errors allowed inside)."""
    rows: Tuple[Tuple[object, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ValueError('Array must be non-empty.')
        width = len(self.rows[0])
        if any(len(row) != width for row in self.rows):
            raise ValueError('Array must be rectangular.')

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def size(self) -> int:
        height, width = self.shape
        return height * width

    def flat(self):
        for row in self.rows:
            yield from row

    def map(self, func) -> 'Array':
        return Array(tuple(tuple(func(value) for value in row) for row in self.rows))


EvalValue = Union[float, str, bool, type(EMPTY), CellError, Array]


@dataclass(frozen=True)
class ExecutionOutcome:
    value: Optional[CellValue] = None
    reason: Optional[str] = None
    detail: str = ''

    def __post_init__(self):
        if (self.reason is None) == (self.value is None):
            raise ValueError('An outcome holds either a value or a failure reason.')
        if isinstance(self.value, (CellError, Array)):
            raise ValueError('An executed value must be a plain cell value.')

    @classmethod
    def executed(cls, value: CellValue) -> 'ExecutionOutcome':
        return cls(value=value)

    @classmethod
    def failed(cls, reason: str, detail: str = '') -> 'ExecutionOutcome':
        return cls(reason=reason, detail=detail)

    @property
    def executable(self) -> bool:
        return self.reason is None

    def __str__(self):
        if self.executable:
            from app.utils.grid_util import render_value
            return render_value(self.value)
        return f'NotExecutable({self.reason}{": " + self.detail if self.detail else ""})'


NOT_EXECUTABLE_FORMAT = ExecutionOutcome.failed(NOT_EXECUTABLE.INVALID_FORMAT)


@dataclass(frozen=True)
class Criteria:
    op: str
    operand: CellValue


@dataclass(frozen=True)
class FormulaStats:
    length: int
    n_operators: int
    n_variables: int
