from app.formula.parser import parse_formula
from app.models.formula import Binary, Call, CellRef, FormulaStats, RangeRef, Unary

# Literal-like calls are not counted as operators.
_LITERAL_CALLS = ('TRUE', 'FALSE')


def walk(ast):
    """Pre-order traversal without recursion."""
    stack = [ast]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Unary):
            stack.append(node.operand)
        elif isinstance(node, Binary):
            stack.extend((node.right, node.left))
        elif isinstance(node, Call):
            stack.extend(reversed(node.args))


def formula_stats(text: str) -> FormulaStats:
    ast = parse_formula(text)
    n_operators = 0
    n_variables = 0
    for node in walk(ast):
        if isinstance(node, (Unary, Binary)):
            n_operators += 1
        elif isinstance(node, Call) and node.name not in _LITERAL_CALLS:
            n_operators += 1
        elif isinstance(node, (CellRef, RangeRef)):
            n_variables += 1
    body = text.strip()[1:]
    return FormulaStats(length=len(body), n_operators=n_operators, n_variables=n_variables)
