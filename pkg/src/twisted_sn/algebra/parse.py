"""A tiny arithmetic-expression language in Python syntax.

Expressions such as ``"4*(1 - A*C + 7*C**2)/(a*B)"`` or ``"tau(G/H)"`` are
parsed with :mod:`ast` and interpreted against a *context* object, which
supplies variable values and hom application.  The grammar: integer
literals, names, ``+ - * / **``, unary minus, and calls ``hom(expr)``.
Dividing two integer literals gives a :class:`~fractions.Fraction`.

``mutate_literal`` produces a copy with one integer literal changed; the
self-test uses it to make sure a check notices a wrong coefficient.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache


class ExprError(ValueError):
    pass


@lru_cache(maxsize=4096)
def parse_expr(text: str) -> ast.expr:
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ExprError(f"cannot parse {text!r}: {exc.msg}") from None
    _validate(tree.body, text)
    return tree.body


_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def _validate(node, text):
    if isinstance(node, ast.BinOp):
        if not isinstance(node.op, _BINOPS):
            raise ExprError(f"operator {type(node.op).__name__} not allowed in {text!r}")
        _validate(node.left, text)
        _validate(node.right, text)
    elif isinstance(node, ast.UnaryOp):
        if not isinstance(node.op, (ast.USub, ast.UAdd)):
            raise ExprError(f"unary operator not allowed in {text!r}")
        _validate(node.operand, text)
    elif isinstance(node, ast.Constant):
        if type(node.value) is not int:
            raise ExprError(f"only integer literals are allowed in {text!r}")
    elif isinstance(node, ast.Name):
        pass
    elif isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.keywords or len(node.args) != 1:
            raise ExprError(f"calls must look like hom(expr) in {text!r}")
        _validate(node.args[0], text)
    else:
        raise ExprError(f"unsupported syntax {type(node).__name__} in {text!r}")


def names_in(text: str) -> set[str]:
    """Variable names referenced (hom names in call position excluded)."""
    out: set[str] = set()

    def walk(node):
        if isinstance(node, ast.Name):
            out.add(node.id)
        elif isinstance(node, ast.Call):
            walk(node.args[0])
        else:
            for child in ast.iter_child_nodes(node):
                walk(child)

    walk(parse_expr(text))
    return out


def homs_in(text: str) -> set[str]:
    return {n.func.id for n in ast.walk(parse_expr(text)) if isinstance(n, ast.Call)}


def _is_number(x) -> bool:
    return type(x) is int or type(x) is Fraction


def evaluate(expr, ctx):
    """Interpret ``expr`` (text or parsed node) in ``ctx``.

    ``ctx`` needs ``lookup(name)`` and ``apply(hom_name, node)``.
    """
    node = parse_expr(expr) if isinstance(expr, str) else expr
    return _ev(node, ctx)


def _ev(node, ctx):
    if isinstance(node, ast.Constant):
        return node.value
    if isinstance(node, ast.Name):
        return ctx.lookup(node.id)
    if isinstance(node, ast.UnaryOp):
        v = _ev(node.operand, ctx)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Call):
        return ctx.apply(node.func.id, node.args[0])
    if isinstance(node, ast.BinOp):
        op = node.op
        if isinstance(op, ast.Pow):
            e = _ev(node.right, ctx)
            if type(e) is not int:
                raise ExprError("exponents must evaluate to integers")
            base = _ev(node.left, ctx)
            if _is_number(base) and e < 0:
                return Fraction(1) / Fraction(base) ** (-e)
            return base**e
        lv = _ev(node.left, ctx)
        rv = _ev(node.right, ctx)
        if isinstance(op, ast.Add):
            return lv + rv
        if isinstance(op, ast.Sub):
            return lv - rv
        if isinstance(op, ast.Mult):
            return lv * rv
        if _is_number(lv) and _is_number(rv):
            if rv == 0:
                raise ZeroDivisionError("division by the literal zero")
            q = Fraction(lv) / rv
            return q.numerator if q.denominator == 1 else q
        return lv / rv
    raise ExprError(f"unsupported node {type(node).__name__}")


class MapContext:
    """Context backed by a plain dict; no homs."""

    def __init__(self, env: dict):
        self.env = env

    def lookup(self, name):
        try:
            return self.env[name]
        except KeyError:
            raise ExprError(f"unknown name {name!r}") from None

    def apply(self, hom, node):
        raise ExprError(f"no hom {hom!r} in this context")


# -- mutation ------------------------------------------------------------------------


def integer_literals(text: str) -> list[tuple[int, int, bool]]:
    """(position, value, is_exponent) for each integer literal, in source order."""
    tree = parse_expr(text)
    exps = set()
    for n in ast.walk(tree):
        if isinstance(n, ast.BinOp) and isinstance(n.op, ast.Pow):
            exps.add(id(n.right))
    lits = [n for n in ast.walk(tree) if isinstance(n, ast.Constant)]
    lits.sort(key=lambda n: (n.lineno, n.col_offset))
    return [(i, n.value, id(n) in exps) for i, n in enumerate(lits)]


def mutate_literal(text: str, which: int | None = None, delta: int = -1) -> str:
    """Return ``text`` with one integer literal shifted by ``delta``.

    By default the first coefficient literal >= 2 is chosen, then any
    coefficient literal, then an exponent.
    """
    lits = integer_literals(text)
    if not lits:
        raise ExprError(f"no integer literal to mutate in {text!r}")
    if which is None:
        big = [i for i, v, is_exp in lits if not is_exp and v >= 2]
        coef = [i for i, v, is_exp in lits if not is_exp]
        which = (big or coef or [lits[0][0]])[0]
    tree = ast.parse(text.strip(), mode="eval")
    consts = [n for n in ast.walk(tree) if isinstance(n, ast.Constant)]
    consts.sort(key=lambda n: (n.lineno, n.col_offset))
    target = consts[which]
    new = target.value + delta
    if new < 0:
        new = target.value + 1
    target.value = new
    return ast.unparse(tree)
