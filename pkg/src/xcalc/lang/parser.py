"""Recursive-descent parser producing core expressions.

Surface sugar is removed while parsing: lambdas ``(x) => e`` become functions
with fresh names, ``def`` becomes a ``val`` bound to a recursive function,
``if (c) {a} else {b}`` becomes ``mux(c, () => a, () => b)()`` and infix
operators become applications of the corresponding builtins.
"""
from __future__ import annotations

import math

from ..core.syntax import App, Expr, Fun, Lit, NLit, Val, Var
from ..core.values import NValue
from .lexer import Token, XCSyntaxError, tokenize

BINARY = {
    "or": (1, "lor"),
    "and": (2, "land"),
    "<": (3, "lt"), "<=": (3, "le"), ">": (3, "gt"), ">=": (3, "ge"),
    "==": (3, "eq"), "!=": (3, "neq"),
    "+": (4, "add"), "-": (4, "sub"),
    "*": (5, "mul"), "/": (5, "div"), "%": (5, "mod"),
}
COMPARISON_LEVEL = 3
LITERAL_KEYWORDS = {"true": True, "false": False, "inf": math.inf, "unit": None}
FRESH_PREFIX = "__lambda"


class Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0
        self.fresh = 0
        self.spans: dict[int, tuple[int, int]] = {}

    # -- token helpers

    def peek(self, k: int = 0) -> Token | None:
        j = self.i + k
        return self.tokens[j] if j < len(self.tokens) else None

    def at(self, lexeme: str, k: int = 0) -> bool:
        t = self.peek(k)
        return t is not None and t.kind in ("punct", "keyword") and t.lexeme == lexeme

    def error(self, expected: tuple) -> XCSyntaxError:
        t = self.peek()
        if t is None:
            last = self.tokens[-1] if self.tokens else None
            line, col = (last.line, last.col + len(last.lexeme)) if last else (1, 1)
            found = "end of input"
        else:
            line, col, found = t.line, t.col, repr(t.lexeme)
        return XCSyntaxError(f"expected {' or '.join(expected)}, found {found}", line, col, expected)

    def expect(self, lexeme: str) -> Token:
        if not self.at(lexeme):
            raise self.error((repr(lexeme),))
        t = self.tokens[self.i]
        self.i += 1
        return t

    def ident(self) -> Token:
        t = self.peek()
        if t is None or t.kind != "ident":
            raise self.error(("identifier",))
        self.i += 1
        return t

    def mark(self, node, tok: Token):
        self.spans.setdefault(id(node), tok.span)
        return node

    def fresh_name(self) -> str:
        name = f"{FRESH_PREFIX}{self.fresh}"
        self.fresh += 1
        return name

    # -- grammar

    def program(self) -> Expr:
        if not self.tokens:
            raise XCSyntaxError("empty program", 1, 1, ("expression",))
        e = self.expr()
        if self.peek() is not None:
            raise self.error(("end of input",))
        return e

    def expr(self) -> Expr:
        t = self.peek()
        if self.at("val"):
            self.i += 1
            name = self.ident().lexeme
            self.expect("=")
            bound = self.expr()
            self.expect(";")
            body = self.expr()
            return self.mark(Val(name, bound, body), t)
        if self.at("def"):
            self.i += 1
            name = self.ident().lexeme
            params = self.params()
            body = self.block()
            if self.at(";"):
                self.i += 1
            rest = self.expr()
            fun = self.mark(Fun(None, name, params, body), t)
            return self.mark(Val(name, fun, rest), t)
        return self.binary(1)

    def binary(self, level: int) -> Expr:
        if level > 5:
            return self.unary()
        left = self.binary(level + 1)
        while True:
            t = self.peek()
            if t is None or t.kind not in ("punct", "keyword"):
                return left
            op = BINARY.get(t.lexeme)
            if op is None or op[0] != level:
                return left
            self.i += 1
            right = self.binary(level + 1)
            left = self.mark(App(self.mark(Var(op[1]), t), (left, right)), t)
            if level == COMPARISON_LEVEL:
                return left

    def unary(self) -> Expr:
        t = self.peek()
        if self.at("-"):
            nxt = self.peek(1)
            if nxt is not None and (nxt.kind in ("int", "real") or nxt.lexeme == "inf") and self.at("[", 2):
                value = self.literal_value()
                return self.mark(NLit(self.nvalue_entries(value)), t)
            self.i += 1
            nxt = self.peek()
            operand = self.unary()
            if isinstance(operand, Lit) and nxt is not None and nxt.kind in ("int", "real", "keyword") \
                    and type(operand.value) in (int, float):
                return self.mark(Lit(-operand.value), t)
            return self.mark(App(self.mark(Var("neg"), t), (operand,)), t)
        if self.at("not"):
            self.i += 1
            operand = self.unary()
            return self.mark(App(self.mark(Var("lnot"), t), (operand,)), t)
        return self.postfix()

    def postfix(self) -> Expr:
        e = self.primary()
        while self.at("("):
            t = self.peek()
            args = self.args()
            e = self.mark(App(e, args), t)
        return e

    def args(self) -> tuple[Expr, ...]:
        self.expect("(")
        out = []
        if not self.at(")"):
            out.append(self.expr())
            while self.at(","):
                self.i += 1
                out.append(self.expr())
        self.expect(")")
        return tuple(out)

    def params(self) -> tuple[str, ...]:
        self.expect("(")
        out = []
        if not self.at(")"):
            out.append(self.ident().lexeme)
            while self.at(","):
                self.i += 1
                out.append(self.ident().lexeme)
        self.expect(")")
        return tuple(out)

    def block(self) -> Expr:
        self.expect("{")
        e = self.expr()
        self.expect("}")
        return e

    def is_lambda(self) -> bool:
        # '(' [ident {',' ident}] ')' '=>'
        k = 1
        if self.at(")", k):
            return self.at("=>", k + 1)
        while True:
            t = self.peek(k)
            if t is None or t.kind != "ident":
                return False
            k += 1
            if self.at(")", k):
                return self.at("=>", k + 1)
            if not self.at(",", k):
                return False
            k += 1

    def literal_value(self):
        t = self.peek()
        if t is None:
            raise self.error(("literal",))
        sign = 1
        if self.at("-"):
            sign = -1
            self.i += 1
            t = self.peek()
            if t is None or not (t.kind in ("int", "real") or (t.kind == "keyword" and t.lexeme == "inf")):
                raise self.error(("number",))
        self.i += 1
        if t.kind == "int":
            return sign * int(t.lexeme)
        if t.kind == "real":
            return sign * float(t.lexeme)
        if t.kind == "string":
            return t.lexeme
        if t.kind == "keyword" and t.lexeme in LITERAL_KEYWORDS:
            v = LITERAL_KEYWORDS[t.lexeme]
            return -v if sign < 0 else v
        self.i -= 1
        raise self.error(("literal",))

    def nvalue_entries(self, default) -> NValue:
        self.expect("[")
        ov = {}
        if not self.at("]"):
            while True:
                dt = self.peek()
                if dt is None or dt.kind != "int":
                    raise self.error(("device id",))
                self.i += 1
                self.expect("->")
                ov[int(dt.lexeme)] = self.literal_value()
                if not self.at(","):
                    break
                self.i += 1
        self.expect("]")
        return NValue(default, dict(sorted(ov.items())))

    def primary(self) -> Expr:
        t = self.peek()
        if t is None:
            raise self.error(("expression",))
        if t.kind in ("int", "real", "string") or (t.kind == "keyword" and t.lexeme in LITERAL_KEYWORDS):
            value = self.literal_value()
            if self.at("["):
                return self.mark(NLit(self.nvalue_entries(value)), t)
            return self.mark(Lit(value), t)
        if t.kind == "ident":
            self.i += 1
            return self.mark(Var(t.lexeme), t)
        if self.at("fun"):
            self.i += 1
            name = self.ident().lexeme
            params = self.params()
            body = self.block()
            return self.mark(Fun(None, name, params, body), t)
        if self.at("if"):
            self.i += 1
            self.expect("(")
            cond = self.expr()
            self.expect(")")
            then = self.block()
            self.expect("else")
            other = self.block()
            then_f = self.mark(Fun(None, self.fresh_name(), (), then), t)
            else_f = self.mark(Fun(None, self.fresh_name(), (), other), t)
            choose = self.mark(App(self.mark(Var("mux"), t), (cond, then_f, else_f)), t)
            return self.mark(App(choose, ()), t)
        if self.at("("):
            if self.is_lambda():
                params = self.params()
                self.expect("=>")
                body = self.block() if self.at("{") else self.expr()
                return self.mark(Fun(None, self.fresh_name(), params, body), t)
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        raise self.error(("expression",))


def parse(tokens: list[Token]) -> Expr:
    return Parser(tokens).program()


def parse_with_spans(text: str) -> tuple[Expr, dict[int, tuple[int, int]]]:
    p = Parser(tokenize(text))
    return p.program(), p.spans


def parse_text(text: str) -> Expr:
    return parse(tokenize(text))
