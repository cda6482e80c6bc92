import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Mapping, Optional, Tuple, Union

from app.exceptions import MalformedAddress, NonFiniteNumber


class _Empty(enum.Enum):
    EMPTY = 'EMPTY'

    def __repr__(self):
        return 'EMPTY'

    def __bool__(self):
        return False


EMPTY = _Empty.EMPTY

# Number is a finite float, Text a str, Boolean a bool.
CellValue = Union[float, str, bool, _Empty]


def is_number(value) -> bool:
    return isinstance(value, float) and not isinstance(value, bool)


def is_text(value) -> bool:
    return isinstance(value, str)


def is_boolean(value) -> bool:
    return isinstance(value, bool)


def typed(value):
    """Key that keeps 1.0 and TRUE (or 0.0 and FALSE) apart in comparisons."""
    return type(value).__name__, value


@dataclass(frozen=True, order=True)
class CellAddress:
    row: int
    column: int

    def __post_init__(self):
        if self.column < 1 or self.row < 1:
            raise MalformedAddress(f'Address out of range: column {self.column}, row {self.row}.')

    @property
    def label(self) -> str:
        from app.utils.grid_util import format_address
        return format_address(self)

    def __str__(self):
        return self.label


@dataclass(frozen=True, eq=False)
class Grid:
    n_rows: int
    n_cols: int
    cells: Mapping[CellAddress, CellValue] = field(default_factory=dict)

    def __post_init__(self):
        stored = {}
        for address, value in dict(self.cells).items():
            if value is EMPTY:
                continue
            if is_number(value) and not math.isfinite(value):
                raise NonFiniteNumber(f'Cell {address} holds a non-finite number.')
            if address.row > self.n_rows or address.column > self.n_cols:
                raise MalformedAddress(f'Cell {address} lies outside a {self.n_rows}x{self.n_cols} grid.')
            stored[address] = value
        object.__setattr__(self, 'cells', MappingProxyType(stored))

    def get(self, address: CellAddress) -> CellValue:
        return self.cells.get(address, EMPTY)

    def cell(self, row: int, column: int) -> CellValue:
        return self.cells.get(CellAddress(row, column), EMPTY)

    def contains(self, address: CellAddress) -> bool:
        return address.row <= self.n_rows and address.column <= self.n_cols

    def rows(self):
        for row in range(1, self.n_rows + 1):
            yield tuple(self.cell(row, column) for column in range(1, self.n_cols + 1))

    def typed_cells(self):
        return {address: typed(value) for address, value in self.cells.items()}

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return (self.n_rows, self.n_cols) == (other.n_rows, other.n_cols) \
            and self.typed_cells() == other.typed_cells()

    def __hash__(self):
        return hash((self.n_rows, self.n_cols, frozenset(self.typed_cells().items())))

    def __repr__(self):
        return f'Grid({self.n_rows}x{self.n_cols}, {len(self.cells)} cells)'


@dataclass(frozen=True)
class TableLayout:
    width: int
    height: int
    area: int


@dataclass(frozen=True)
class TaskInstance:
    id: str
    grids: Tuple[Grid, ...]
    question: str
    gold: object
    pre_text: Optional[str] = None
    post_text: Optional[str] = None

    @cached_property
    def table(self) -> Grid:
        from app.utils.grid_util import concat_vertical
        return concat_vertical(self.grids)
