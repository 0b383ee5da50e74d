"""Independent reference evaluator used to cross-check the real one.

Deliberately naive: plain recursion over the AST, explicit domain checks,
``None`` bubbling up for undefined values. Shares only the public AST node
types with the package, none of the evaluation code.
"""

from __future__ import annotations

import math

from planebreaker.expr import Binary, Call, Constant, Literal, Unary, Variable

_CONSTANTS = {"pi": math.pi, "e": math.e}


def oracle_eval(node, x, y):
    """Evaluate ``node`` at (x, y); return a finite float or None."""
    if isinstance(node, Literal):
        return node.value if math.isfinite(node.value) else None
    if isinstance(node, Variable):
        return x if node.name == "x" else y
    if isinstance(node, Constant):
        return _CONSTANTS[node.name]
    if isinstance(node, Unary):
        v = oracle_eval(node.child, x, y)
        return None if v is None else -v
    if isinstance(node, Binary):
        a = oracle_eval(node.left, x, y)
        if a is None:
            return None
        b = oracle_eval(node.right, x, y)
        if b is None:
            return None
        if node.op == "add":
            v = a + b
        elif node.op == "sub":
            v = a - b
        elif node.op == "mul":
            v = a * b
        elif node.op == "div":
            if b == 0.0:
                return None
            v = a / b
        elif node.op == "pow":
            if a < 0.0 and b != math.floor(b):
                return None
            if a == 0.0 and b < 0.0:
                return None
            try:
                v = math.pow(a, b)
            except (ValueError, OverflowError):
                return None
        else:
            raise AssertionError(f"unknown operator {node.op!r}")
        return v if math.isfinite(v) else None
    if isinstance(node, Call):
        v = oracle_eval(node.argument, x, y)
        if v is None:
            return None
        name = node.function
        if name == "sin":
            out = math.sin(v)
        elif name == "cos":
            out = math.cos(v)
        elif name == "tan":
            out = math.tan(v)
        elif name == "asin":
            if not -1.0 <= v <= 1.0:
                return None
            out = math.asin(v)
        elif name == "acos":
            if not -1.0 <= v <= 1.0:
                return None
            out = math.acos(v)
        elif name == "atan":
            out = math.atan(v)
        elif name == "exp":
            try:
                out = math.exp(v)
            except OverflowError:
                return None
        elif name == "ln":
            if v <= 0.0:
                return None
            out = math.log(v)
        elif name == "log":
            if v <= 0.0:
                return None
            out = math.log10(v)
        elif name == "sqrt":
            if v < 0.0:
                return None
            out = math.sqrt(v)
        elif name == "abs":
            out = abs(v)
        else:
            raise AssertionError(f"unknown function {name!r}")
        return out if math.isfinite(out) else None
    raise AssertionError(f"unknown node {node!r}")
