from app.models.formula import Binary, BoolLit, Call, CellRef, NumberLit, RangeRef, TextLit, Unary
from app.utils.grid_util import format_address, render_number


def _render(node) -> str:
    if isinstance(node, NumberLit):
        return render_number(node.value)
    if isinstance(node, TextLit):
        return '"' + node.value.replace('"', '""') + '"'
    if isinstance(node, BoolLit):
        return 'TRUE' if node.value else 'FALSE'
    if isinstance(node, CellRef):
        return format_address(node.address)
    if isinstance(node, RangeRef):
        return f'{format_address(node.start)}:{format_address(node.end)}'
    if isinstance(node, Unary):
        return f'-({_render(node.operand)})'
    if isinstance(node, Binary):
        return f'({_render(node.left)} {node.op} {_render(node.right)})'
    if isinstance(node, Call):
        return f'{node.name}({", ".join(_render(arg) for arg in node.args)})'
    raise TypeError(f'Not a formula node: {node!r}')


def format_formula(ast) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    return '=' + _render(ast)
