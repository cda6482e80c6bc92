"""Supported spreadsheet functions.

Every function receives the evaluator and its unevaluated argument nodes, so
lazy functions (IF) decide what to evaluate. Argument counts are checked by
the registry before the call; a bad count yields #VALUE!.
"""
import math
from dataclasses import dataclass
from typing import Callable, Optional

from app.formula.criteria import matches, parse_criteria
from app.formula.values import DIV0, NA, REF, VALUE, compare, finite, is_error, to_bool, to_number, to_scalar
from app.models.formula import Array, CellRef, RangeRef
from app.models.grid import EMPTY, is_boolean, is_number, is_text


@dataclass(frozen=True)
class Function:
    name: str
    implementation: Callable
    min_args: int
    max_args: Optional[int]

    def accepts(self, n_args: int) -> bool:
        return n_args >= self.min_args and (self.max_args is None or n_args <= self.max_args)

    def __call__(self, evaluator, args):
        return self.implementation(evaluator, args)


FUNCTIONS = {}


def register(name, min_args=1, max_args=None):
    def decorator(implementation):
        FUNCTIONS[name] = Function(name, implementation, min_args, max_args)
        return implementation
    return decorator


def _is_reference(node) -> bool:
    return isinstance(node, (CellRef, RangeRef))


def _numbers(evaluator, args, skip_errors=False):
    """Numbers of an aggregate call: references and arrays contribute numeric
    cells only; direct scalars are coerced. Returns a list or the first error."""
    numbers = []
    for node in args:
        value = evaluator.reference_values(node) if _is_reference(node) else evaluator.evaluate(node)
        if isinstance(value, Array):
            for cell in value.flat():
                if is_error(cell):
                    if skip_errors:
                        continue
                    return cell
                if is_number(cell):
                    numbers.append(cell)
            continue
        if value is EMPTY:
            continue
        number = to_number(value)
        if is_error(number):
            if skip_errors:
                continue
            return number
        numbers.append(number)
    return numbers


def _logicals(evaluator, args):
    values = []
    for node in args:
        value = evaluator.reference_values(node) if _is_reference(node) else evaluator.evaluate(node)
        if isinstance(value, Array):
            for cell in value.flat():
                if is_error(cell):
                    return cell
                if is_boolean(cell) or is_number(cell):
                    values.append(bool(cell))
            continue
        if value is EMPTY:
            continue
        flag = to_bool(value)
        if is_error(flag):
            return flag
        values.append(flag)
    if not values:
        return VALUE
    return values


def _as_array(evaluator, node):
    value = evaluator.evaluate(node)
    if is_error(value) or isinstance(value, Array):
        return value
    return Array(((value,),))


def _index_number(evaluator, node):
    value = to_number(to_scalar(evaluator.evaluate(node)))
    if is_error(value):
        return value
    return math.trunc(value)


@register('SUM')
def sum_(evaluator, args):
    numbers = _numbers(evaluator, args)
    if is_error(numbers):
        return numbers
    return finite(sum(numbers, 0.0))


@register('AVERAGE')
def average(evaluator, args):
    numbers = _numbers(evaluator, args)
    if is_error(numbers):
        return numbers
    if not numbers:
        return DIV0
    return finite(sum(numbers, 0.0) / len(numbers))


@register('COUNT')
def count(evaluator, args):
    return float(len(_numbers(evaluator, args, skip_errors=True)))


@register('MAX')
def max_(evaluator, args):
    numbers = _numbers(evaluator, args)
    if is_error(numbers):
        return numbers
    return max(numbers) if numbers else 0.0


@register('MIN')
def min_(evaluator, args):
    numbers = _numbers(evaluator, args)
    if is_error(numbers):
        return numbers
    return min(numbers) if numbers else 0.0


@register('AND')
def and_(evaluator, args):
    values = _logicals(evaluator, args)
    if is_error(values):
        return values
    return all(values)


@register('OR')
def or_(evaluator, args):
    values = _logicals(evaluator, args)
    if is_error(values):
        return values
    return any(values)


@register('NOT', 1, 1)
def not_(evaluator, args):
    flag = to_bool(to_scalar(evaluator.evaluate(args[0])))
    if is_error(flag):
        return flag
    return not flag


@register('IF', 2, 3)
def if_(evaluator, args):
    flag = to_bool(to_scalar(evaluator.evaluate(args[0])))
    if is_error(flag):
        return flag
    if flag:
        return evaluator.evaluate(args[1])
    if len(args) == 3:
        return evaluator.evaluate(args[2])
    return False


@register('TRUE', 0, 0)
def true(evaluator, args):
    return True


@register('FALSE', 0, 0)
def false(evaluator, args):
    return False


@register('INDEX', 2, 3)
def index(evaluator, args):
    """INDEX(range, k) reads the k-th cell in row-major order; INDEX(range, r, c) one cell."""
    array = _as_array(evaluator, args[0])
    if is_error(array):
        return array
    position = _index_number(evaluator, args[1])
    if is_error(position):
        return position
    if len(args) == 2:
        if not 1 <= position <= array.size:
            return REF
        height, width = array.shape
        return array.rows[(position - 1) // width][(position - 1) % width]
    column = _index_number(evaluator, args[2])
    if is_error(column):
        return column
    height, width = array.shape
    if not (1 <= position <= height and 1 <= column <= width):
        return REF
    return array.rows[position - 1][column - 1]


def _same_kind(cell, value) -> bool:
    if is_boolean(value):
        return is_boolean(cell)
    if is_number(value):
        return is_number(cell)
    return is_text(cell)


@register('MATCH', 2, 3)
def match(evaluator, args):
    """MATCH with match_type 0 (first exact match) or 1 (largest value <= lookup, ascending data)."""
    value = to_scalar(evaluator.evaluate(args[0]))
    if is_error(value):
        return value
    if value is EMPTY:
        return NA
    array = _as_array(evaluator, args[1])
    if is_error(array):
        return array
    height, width = array.shape
    if height != 1 and width != 1:
        return NA
    match_type = 1
    if len(args) == 3:
        match_type = _index_number(evaluator, args[2])
        if is_error(match_type):
            return match_type
    cells = list(array.flat())
    if match_type == 0:
        for position, cell in enumerate(cells, start=1):
            if cell is EMPTY or is_error(cell):
                continue
            if compare('=', cell, value) is True:
                return float(position)
        return NA
    if match_type != 1:
        return VALUE
    best = None
    for position, cell in enumerate(cells, start=1):
        if not _same_kind(cell, value) or compare('<=', cell, value) is not True:
            continue
        if best is None or compare('>=', cell, cells[best - 1]) is True:
            best = position
    return NA if best is None else float(best)


def _count_matching(cells, raw_criteria):
    if is_error(raw_criteria):
        return raw_criteria
    criteria = parse_criteria(raw_criteria)
    return float(sum(1 for cell in cells if matches(criteria, cell)))


@register('COUNTIF', 2, 2)
def countif(evaluator, args):
    value = evaluator.evaluate(args[0])
    if is_error(value):
        return value
    if isinstance(value, Array):
        cells = list(value.flat())
    elif isinstance(args[0], CellRef):
        cells = [value]
    else:
        return VALUE
    criteria = evaluator.evaluate(args[1])
    if isinstance(criteria, Array):
        return criteria.map(lambda raw: _count_matching(cells, raw))
    return _count_matching(cells, criteria)


@register('SUMPRODUCT')
def sumproduct(evaluator, args):
    arrays = []
    for node in args:
        array = _as_array(evaluator, node)
        if is_error(array):
            return array
        arrays.append(array)
    shape = arrays[0].shape
    if any(array.shape != shape for array in arrays):
        return VALUE
    columns = [list(array.flat()) for array in arrays]
    total = 0.0
    for position in range(len(columns[0])):
        product = 1.0
        for column in columns:
            cell = column[position]
            if is_error(cell):
                return cell
            product *= cell if is_number(cell) else 0.0
        total += product
    return finite(total)

