import logging
import math
import re
import string
from typing import Iterable, List, Optional, Sequence

from app.exceptions import ClientException, InvalidCell, MalformedAddress, MalformedEncoding, NonFiniteNumber
from app.models.grid import EMPTY, CellAddress, CellValue, Grid, TableLayout, is_boolean, is_number
from app.utils.constants import ERROR_MESSAGE

logger = logging.getLogger(__name__)

ADDRESS_PATTERN = re.compile(r'\$?([A-Za-z]+)\$?([0-9]+)')
NUMBER_PATTERN = re.compile(r'-?[0-9]+(\.[0-9]+)?([eE][+-]?[0-9]+)?')

CELL_SEPARATOR = '|'
VALUE_SEPARATOR = ','
ESCAPE = '\\'
TEXT_PREFIX = "'"


def column_to_letters(column: int) -> str:
    letters = ''
    while column > 0:
        column, remainder = divmod(column - 1, 26)
        letters = string.ascii_uppercase[remainder] + letters
    return letters


def letters_to_column(letters: str) -> int:
    column = 0
    for char in letters.upper():
        column = column * 26 + string.ascii_uppercase.index(char) + 1
    return column


def parse_address(text: str) -> CellAddress:
    match = ADDRESS_PATTERN.fullmatch(text)
    if not match:
        raise MalformedAddress(f'Malformed cell address: {text!r}.')
    try:
        row = int(match.group(2))
    except ValueError:
        raise MalformedAddress(f'Row number too long: {text[:20]!r}.')
    if row == 0:
        raise MalformedAddress(f'Row numbers start at 1: {text!r}.')
    return CellAddress(row=row, column=letters_to_column(match.group(1)))


def format_address(address: CellAddress) -> str:
    return f'{column_to_letters(address.column)}{address.row}'


def to_cell_value(raw) -> CellValue:
    if raw is None:
        return EMPTY
    if isinstance(raw, bool):
        return raw
    if isinstance(raw, (int, float)):
        try:
            value = float(raw)
        except OverflowError:
            value = math.inf
        if not math.isfinite(value):
            raise NonFiniteNumber('Non-finite number in table.')
        return value
    if isinstance(raw, str):
        return raw
    raise InvalidCell(f'Unsupported cell value: {raw!r}.')


def grid_from_rows(rows: Sequence[Sequence], n_cols: Optional[int] = None) -> Grid:
    width = max((len(row) for row in rows), default=0)
    if n_cols is None:
        n_cols = width
    elif n_cols < width:
        raise ClientException(f'Row of width {width} does not fit in {n_cols} columns.', 'ragged_table')
    cells = {}
    for row_index, row in enumerate(rows, start=1):
        for column_index, raw in enumerate(row, start=1):
            value = to_cell_value(raw)
            if value is not EMPTY:
                cells[CellAddress(row=row_index, column=column_index)] = value
    return Grid(len(rows), n_cols, cells)


def concat_vertical(grids: Sequence[Grid]) -> Grid:
    if not grids:
        raise ClientException(ERROR_MESSAGE.EMPTY_GRID_LIST, 'empty_input')
    if len(grids) == 1:
        return grids[0]
    cells = {}
    offset = 0
    for grid in grids:
        for address, value in grid.cells.items():
            cells[CellAddress(row=address.row + offset, column=address.column)] = value
        offset += grid.n_rows
    return Grid(offset, max(grid.n_cols for grid in grids), cells)


def table_layout(grid: Grid) -> TableLayout:
    return TableLayout(width=grid.n_cols, height=grid.n_rows, area=grid.n_cols * grid.n_rows)


def render_number(value: float) -> str:
    if value.is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def render_value(value) -> str:
    """Spreadsheet display form of a cell value."""
    if value is EMPTY:
        return ''
    if is_boolean(value):
        return 'TRUE' if value else 'FALSE'
    if is_number(value):
        return render_number(value)
    return str(value)


def _needs_text_prefix(text: str) -> bool:
    return text == '' or text in ('TRUE', 'FALSE') or text.startswith(TEXT_PREFIX) \
        or NUMBER_PATTERN.fullmatch(text) is not None


def _escape(text: str) -> str:
    return text.replace(ESCAPE, ESCAPE * 2).replace(VALUE_SEPARATOR, ESCAPE + VALUE_SEPARATOR) \
        .replace(CELL_SEPARATOR, ESCAPE + CELL_SEPARATOR)


def _encode_value(value: CellValue) -> str:
    if isinstance(value, str):
        if _needs_text_prefix(value):
            value = TEXT_PREFIX + value
        return _escape(value)
    return render_value(value)


def encode_linear(grid: Grid) -> str:
    return CELL_SEPARATOR.join(f'{format_address(address)}{VALUE_SEPARATOR}{_encode_value(value)}'
                               for address, value in sorted(grid.cells.items()))


def _split_cells(text: str) -> List[List[str]]:
    """Split on unescaped separators; each cell yields [address, raw value] with escapes resolved."""
    cells = []
    current = ['']
    position = 0
    while position < len(text):
        char = text[position]
        if char == ESCAPE:
            if position + 1 >= len(text) or text[position + 1] not in (ESCAPE, VALUE_SEPARATOR, CELL_SEPARATOR):
                raise MalformedEncoding(f'Invalid escape at position {position}.')
            current[-1] += text[position + 1]
            position += 2
            continue
        if char == CELL_SEPARATOR:
            cells.append(current)
            current = ['']
        elif char == VALUE_SEPARATOR and len(current) == 1:
            current.append('')
        elif char == VALUE_SEPARATOR:
            raise MalformedEncoding(f'Unescaped "," at position {position}.')
        else:
            current[-1] += char
        position += 1
    cells.append(current)
    return cells


def _decode_value(raw: str) -> CellValue:
    if raw.startswith(TEXT_PREFIX):
        return raw[len(TEXT_PREFIX):]
    if raw in ('TRUE', 'FALSE'):
        return raw == 'TRUE'
    if NUMBER_PATTERN.fullmatch(raw):
        value = float(raw)
        if not math.isfinite(value):
            raise MalformedEncoding(f'Number out of range: {raw}.')
        return value
    if raw == '':
        raise MalformedEncoding('Empty cells are not encoded.')
    return raw


def decode_linear(text: str) -> Grid:
    if text == '':
        return Grid(0, 0, {})
    cells = {}
    for parts in _split_cells(text):
        if len(parts) != 2:
            raise MalformedEncoding(f'Cell without a value: {parts[0]!r}.')
        address_text, raw = parts
        try:
            address = parse_address(address_text)
        except MalformedAddress as e:
            raise MalformedEncoding(e.message)
        if address in cells:
            raise MalformedEncoding(f'Duplicate cell {address_text}.')
        cells[address] = _decode_value(raw)
    n_rows = max(address.row for address in cells)
    n_cols = max(address.column for address in cells)
    return Grid(n_rows, n_cols, cells)


def grids_from_tables(tables: Iterable[Sequence[Sequence]]) -> List[Grid]:
    return [grid_from_rows(rows) for rows in tables]
