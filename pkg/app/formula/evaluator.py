import logging

from app.formula.values import NAME, REF, VALUE, arithmetic, broadcast, compare, finite, is_error, negate
from app.models.formula import (Array, Binary, BoolLit, Call, CellRef, COMPARISON_OPS, FormulaAst, NumberLit,
                                RangeRef, TextLit, Unary)
from app.models.grid import CellAddress, Grid

logger = logging.getLogger(__name__)


class Evaluator:
    """Tree-walking interpreter; pure with respect to the grid it reads."""

    def __init__(self, grid: Grid):
        self.grid = grid

    def evaluate(self, node: FormulaAst):
        handler = self._handlers.get(type(node))
        if handler is None:
            return VALUE
        return handler(self, node)

    def number(self, node: NumberLit):
        return finite(node.value)

    def text(self, node: TextLit):
        return node.value

    def boolean(self, node: BoolLit):
        return node.value

    def cell(self, node: CellRef):
        if not self.grid.contains(node.address):
            return REF
        return self.grid.get(node.address)

    def cell_range(self, node: RangeRef):
        if not self.grid.contains(node.end):
            return REF
        return Array(tuple(
            tuple(self.grid.get(CellAddress(row=row, column=column))
                  for column in range(node.start.column, node.end.column + 1))
            for row in range(node.start.row, node.end.row + 1)))

    def unary(self, node: Unary):
        operand = self.evaluate(node.operand)
        if isinstance(operand, Array):
            return operand.map(negate)
        return negate(operand)

    def binary(self, node: Binary):
        left = self.evaluate(node.left)
        right = self.evaluate(node.right)
        if node.op in COMPARISON_OPS:
            return broadcast(lambda a, b: compare(node.op, a, b), left, right)
        return broadcast(lambda a, b: arithmetic(node.op, a, b), left, right)

    def call(self, node: Call):
        from app.formula.functions import FUNCTIONS
        function = FUNCTIONS.get(node.name)
        if function is None:
            return NAME
        if not function.accepts(len(node.args)):
            return VALUE
        return function(self, node.args)

    def reference_values(self, node: FormulaAst):
        """Evaluate an argument, wrapping a single-cell reference as a 1x1 array."""
        value = self.evaluate(node)
        if isinstance(node, CellRef) and not is_error(value):
            return Array(((value,),))
        return value

    _handlers = {
        NumberLit: number,
        TextLit: text,
        BoolLit: boolean,
        CellRef: cell,
        RangeRef: cell_range,
        Unary: unary,
        Binary: binary,
        Call: call,
    }


def evaluate(ast: FormulaAst, grid: Grid):
    try:
        return Evaluator(grid).evaluate(ast)
    except RecursionError:
        logger.warning('Formula too deep to evaluate')
        return VALUE
