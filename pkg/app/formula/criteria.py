import operator

from app.formula.values import is_error, parse_numeric_text
from app.models.formula import Criteria
from app.models.grid import EMPTY, CellValue, is_boolean, is_number, is_text
from app.utils.constants import COMPARATOR

# Longest prefixes first so ">=" is not read as ">".
_PREFIXES = (COMPARATOR.GE, COMPARATOR.LE, COMPARATOR.NE, COMPARATOR.GT, COMPARATOR.LT, COMPARATOR.EQ)

_ORDERING = {
    COMPARATOR.GT: operator.gt,
    COMPARATOR.LT: operator.lt,
    COMPARATOR.GE: operator.ge,
    COMPARATOR.LE: operator.le,
}


def parse_criteria(raw: CellValue) -> Criteria:
    if is_text(raw):
        for prefix in _PREFIXES:
            if raw.startswith(prefix):
                operand_text = raw[len(prefix):]
                number = parse_numeric_text(operand_text)
                return Criteria(prefix, number if number is not None else operand_text.casefold())
        return Criteria(COMPARATOR.EQ, raw.casefold())
    if raw is EMPTY:
        return Criteria(COMPARATOR.EQ, '')
    return Criteria(COMPARATOR.EQ, raw)


def _same_kind(cell, operand) -> bool:
    if is_boolean(operand):
        return is_boolean(cell)
    if is_number(operand):
        return is_number(cell)
    return is_text(cell)


def _equals(criteria: Criteria, cell) -> bool:
    operand = criteria.operand
    if operand == '' and is_text(operand):
        return cell is EMPTY or cell == ''
    if not _same_kind(cell, operand):
        return False
    if is_text(cell):
        return cell.casefold() == operand
    return cell == operand


def matches(criteria: Criteria, cell) -> bool:
    if is_error(cell):
        return False
    if criteria.op == COMPARATOR.EQ:
        return _equals(criteria, cell)
    if criteria.op == COMPARATOR.NE:
        return not _equals(criteria, cell)
    if not _same_kind(cell, criteria.operand):
        return False
    if is_text(cell):
        return _ORDERING[criteria.op](cell.casefold(), criteria.operand)
    return _ORDERING[criteria.op](cell, criteria.operand)
