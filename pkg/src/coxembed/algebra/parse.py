"""Parse arithmetic expressions into exact rational functions.

Accepted syntax: integers, decimal-free rationals such as ``3/7``, names from
the given universe, ``+ - * /`` and integer powers written ``**`` or ``^``.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Iterable

from .field import ParamElement


class ExpressionError(ValueError):
    pass


def parse_expression(text: str, variables: Iterable[str]) -> ParamElement:
    variables = tuple(variables)
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None
    known = set(variables)

    def walk(node) -> ParamElement:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise ExpressionError(f"only integer literals are allowed, got {node.value!r}")
            return ParamElement.constant(variables, node.value)
        if isinstance(node, ast.Name):
            if node.id not in known:
                raise ExpressionError(f"unknown symbol {node.id!r}")
            return ParamElement.variable(variables, node.id)
        if isinstance(node, ast.UnaryOp):
            val = walk(node.operand)
            if isinstance(node.op, ast.USub):
                return -val
            if isinstance(node.op, ast.UAdd):
                return val
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = _int_exponent(node.right)
                return walk(node.left) ** exp
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if right.is_zero():
                    raise ExpressionError(f"division by zero in {text!r}")
                return left / right
        raise ExpressionError(f"unsupported construct in {text!r}")

    return walk(tree)


def _int_exponent(node) -> int:
    sign = 1
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        sign, node = -1, node.operand
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return sign * node.value
    raise ExpressionError("exponents must be integer literals")


def parse_rational(text: str) -> Fraction:
    """Parse a rational number such as ``-3/7``; floats are rejected."""
    value = parse_expression(text, ())
    return value.constant_value()
