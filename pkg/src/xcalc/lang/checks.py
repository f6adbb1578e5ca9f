from __future__ import annotations

from dataclasses import dataclass, field

from ..core.evaluator import BUILTINS
from ..core.syntax import App, Expr, Fun, Lit, NLit, Val, Var, annotate
from .lexer import XCSyntaxError, tokenize
from .parser import Parser


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str
    severity: str = "error"

    def render(self, filename: str = "<input>") -> str:
        prefix = "" if self.severity == "error" else f"{self.severity}: "
        return f"{filename}:{self.line}:{self.col}: {prefix}{self.message}"


@dataclass
class SourceProgram:
    text: str
    parsed: Expr | None = None
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(d.severity == "error" for d in self.diagnostics)


def free_vars(e: Expr) -> set[str]:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, (Lit, NLit)):
        return set()
    if isinstance(e, Fun):
        return free_vars(e.body) - {e.name, *e.params}
    if isinstance(e, App):
        out = free_vars(e.fn)
        for a in e.args:
            out |= free_vars(a)
        return out
    if isinstance(e, Val):
        return free_vars(e.bound) | (free_vars(e.body) - {e.name})
    raise TypeError(f"not an expression: {e!r}")


def check_program(e: Expr, spans: dict | None = None) -> list[Diagnostic]:
    """Closedness (modulo builtins), absence of nvalue literals, shadowing warnings."""
    spans = spans or {}
    out: list[Diagnostic] = []

    def where(node) -> tuple[int, int]:
        return spans.get(id(node), (0, 0))

    def walk(node: Expr, bound: frozenset) -> None:
        if isinstance(node, Var):
            if node.name not in bound and node.name not in BUILTINS:
                out.append(Diagnostic(*where(node), f"unbound variable {node.name!r}"))
        elif isinstance(node, NLit):
            out.append(Diagnostic(*where(node), "nvalue literal in program"))
        elif isinstance(node, Fun):
            names = (node.name, *node.params)
            for n in names:
                if n in BUILTINS:
                    out.append(Diagnostic(*where(node), f"{n!r} shadows a builtin", "warning"))
            walk(node.body, bound | set(names))
        elif isinstance(node, App):
            walk(node.fn, bound)
            for a in node.args:
                walk(a, bound)
        elif isinstance(node, Val):
            if node.name in BUILTINS:
                out.append(Diagnostic(*where(node), f"{node.name!r} shadows a builtin", "warning"))
            walk(node.bound, bound)
            walk(node.body, bound | {node.name})

    walk(e, frozenset())
    return out


def load_program(text: str) -> SourceProgram:
    """Lex, parse, check and annotate a source text."""
    prog = SourceProgram(text)
    try:
        p = Parser(tokenize(text))
        expr = p.program()
    except XCSyntaxError as exc:
        prog.diagnostics.append(Diagnostic(exc.line, exc.col, exc.message))
        return prog
    prog.diagnostics.extend(check_program(expr, p.spans))
    if prog.ok:
        prog.parsed = annotate(expr)
    return prog
