"""Coercion and comparison rules shared by operators and functions."""
import math
import operator
import re

from app.models.formula import Array, CellError
from app.models.grid import EMPTY, is_boolean, is_number, is_text
from app.utils.constants import CELL_ERROR

NUMERIC_TEXT = re.compile(r'\s*[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?\s*')

DIV0 = CellError(CELL_ERROR.DIV0)
VALUE = CellError(CELL_ERROR.VALUE)
NA = CellError(CELL_ERROR.NA)
NAME = CellError(CELL_ERROR.NAME)
REF = CellError(CELL_ERROR.REF)

_ORDERING = {
    '>': operator.gt,
    '<': operator.lt,
    '>=': operator.ge,
    '<=': operator.le,
}


def is_error(value) -> bool:
    return isinstance(value, CellError)


def parse_numeric_text(text: str):
    """Float for numeric-looking text, else None."""
    if not NUMERIC_TEXT.fullmatch(text):
        return None
    value = float(text)
    return value if math.isfinite(value) else None


def finite(value: float):
    return value if math.isfinite(value) else VALUE


def to_number(value):
    if is_error(value):
        return value
    if is_boolean(value):
        return 1.0 if value else 0.0
    if is_number(value):
        return value
    if value is EMPTY:
        return 0.0
    if is_text(value):
        number = parse_numeric_text(value)
        return VALUE if number is None else number
    return VALUE


def to_bool(value):
    if is_error(value):
        return value
    if is_boolean(value):
        return value
    if is_number(value):
        return value != 0
    if value is EMPTY:
        return False
    return VALUE


def to_scalar(value):
    if isinstance(value, Array):
        if value.shape == (1, 1):
            return value.rows[0][0]
        return VALUE
    return value


def _type_rank(value) -> int:
    if is_number(value):
        return 0
    if is_text(value):
        return 1
    return 2


def _blank_like(value):
    if is_boolean(value):
        return False
    if is_text(value):
        return ''
    return 0.0


def compare(op: str, left, right):
    """Spreadsheet comparison of two scalars; Number < Text < Boolean never mix."""
    if is_error(left):
        return left
    if is_error(right):
        return right
    if left is EMPTY and right is EMPTY:
        left = right = 0.0
    elif left is EMPTY:
        left = _blank_like(right)
    elif right is EMPTY:
        right = _blank_like(left)
    if _type_rank(left) != _type_rank(right):
        if op == '=':
            return False
        if op == '<>':
            return True
        return VALUE
    if is_text(left):
        left, right = left.casefold(), right.casefold()
    if op == '=':
        return left == right
    if op == '<>':
        return left != right
    return _ORDERING[op](left, right)


def arithmetic(op: str, left, right):
    if is_error(left):
        return left
    if is_error(right):
        return right
    x = to_number(left)
    if is_error(x):
        return x
    y = to_number(right)
    if is_error(y):
        return y
    if op == '+':
        return finite(x + y)
    if op == '-':
        return finite(x - y)
    if op == '*':
        return finite(x * y)
    if y == 0:
        return DIV0
    return finite(x / y)


def negate(value):
    number = to_number(value)
    if is_error(number):
        return number
    return -number


def broadcast(func, left, right):
    """Apply a scalar binary rule elementwise when either side is an array."""
    left_is_array = isinstance(left, Array)
    right_is_array = isinstance(right, Array)
    if left_is_array and left.shape == (1, 1) and right_is_array:
        left, left_is_array = left.rows[0][0], False
    elif right_is_array and right.shape == (1, 1) and left_is_array:
        right, right_is_array = right.rows[0][0], False
    if left_is_array and right_is_array:
        if left.shape != right.shape:
            return VALUE
        return Array(tuple(tuple(func(a, b) for a, b in zip(row_a, row_b))
                           for row_a, row_b in zip(left.rows, right.rows)))
    if left_is_array:
        return left.map(lambda a: func(a, right))
    if right_is_array:
        return right.map(lambda b: func(left, b))
    return func(left, right)
