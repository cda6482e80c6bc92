"""Spreadsheet formula engine: exec(f, table) for model-emitted formulas."""
import logging

from app.exceptions import FormulaParseError
from app.formula.criteria import matches, parse_criteria
from app.formula.evaluator import evaluate
from app.formula.functions import FUNCTIONS
from app.formula.parser import parse_formula
from app.formula.render import format_formula
from app.formula.stats import formula_stats, walk
from app.models.formula import Array, CellError, ExecutionOutcome
from app.models.grid import EMPTY, Grid
from app.utils.constants import CELL_ERROR, NOT_EXECUTABLE

logger = logging.getLogger(__name__)


def execute(text: str, grid: Grid) -> ExecutionOutcome:
    try:
        ast = parse_formula(text)
    except FormulaParseError as e:
        logger.debug('Formula %r not parseable: %s', text, e.message)
        return ExecutionOutcome.failed(NOT_EXECUTABLE.PARSE_ERROR, e.message)
    value = evaluate(ast, grid)
    if isinstance(value, Array) and value.shape == (1, 1):
        value = value.rows[0][0]
    if isinstance(value, CellError):
        if value.kind == CELL_ERROR.NAME:
            return ExecutionOutcome.failed(NOT_EXECUTABLE.UNKNOWN_FUNCTION, str(value))
        return ExecutionOutcome.failed(NOT_EXECUTABLE.RUNTIME_ERROR, str(value))
    if isinstance(value, Array):
        height, width = value.shape
        return ExecutionOutcome.failed(NOT_EXECUTABLE.ARRAY_RESULT, f'{height}x{width} array')
    # A referenced blank cell displays as 0.
    if value is EMPTY:
        value = 0.0
    return ExecutionOutcome.executed(value)


__all__ = ['execute', 'evaluate', 'parse_formula', 'parse_criteria', 'matches', 'formula_stats', 'format_formula',
           'walk', 'FUNCTIONS']
