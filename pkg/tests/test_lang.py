import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xcalc.core.syntax import App, Fun, Lit, Val, Var
from xcalc.lang import XCSyntaxError, free_vars, load_program, parse_text, print_expr, tokenize


def lexemes(text):
    return [(t.kind, t.lexeme) for t in tokenize(text)]


def test_tokenize_val():
    assert lexemes("val x = 1; x") == [
        ("keyword", "val"), ("ident", "x"), ("punct", "="), ("int", "1"), ("punct", ";"), ("ident", "x"),
    ]


def test_tokenize_fun_has_eight_tokens():
    toks = tokenize("fun f(x){x}")
    assert len(toks) == 8
    assert [t.lexeme for t in toks] == ["fun", "f", "(", "x", ")", "{", "x", "}"]


def test_tokenize_positions_and_comments():
    toks = tokenize("a\n  // note\n  b12 3.5")
    assert [(t.lexeme, t.line, t.col) for t in toks] == [("a", 1, 1), ("b12", 3, 3), ("3.5", 3, 7)]
    assert toks[2].kind == "real"


def test_tokenize_bad_character():
    with pytest.raises(XCSyntaxError) as err:
        tokenize("x @ y")
    assert (err.value.line, err.value.col) == (1, 3)


def test_sugar_infix_and_precedence():
    assert parse_text("a + b * c") == App(Var("add"), (Var("a"), App(Var("mul"), (Var("b"), Var("c")))))
    assert parse_text("a and b or c") == App(Var("lor"), (App(Var("land"), (Var("a"), Var("b"))), Var("c")))
    assert parse_text("-x") == App(Var("neg"), (Var("x"),))
    assert parse_text("not a") == App(Var("lnot"), (Var("a"),))
    assert parse_text("a - b - c") == App(Var("sub"), (App(Var("sub"), (Var("a"), Var("b"))), Var("c")))


def test_sugar_if_becomes_mux_of_thunks():
    e = parse_text("if (c) {1} else {2}")
    assert isinstance(e, App) and e.args == ()
    mux = e.fn
    assert mux.fn == Var("mux") and mux.args[0] == Var("c")
    assert [f.body for f in mux.args[1:]] == [Lit(1), Lit(2)]
    assert all(isinstance(f, Fun) and f.params == () for f in mux.args[1:])


def test_sugar_lambda_and_def():
    lam = parse_text("(x) => x")
    assert isinstance(lam, Fun) and lam.params == ("x",) and lam.body == Var("x")
    d = parse_text("def f(x) {x}\nf(1)")
    assert d == Val("f", Fun(None, "f", ("x",), Var("x")), App(Var("f"), (Lit(1),)))


def test_literals():
    assert parse_text('"s"') == Lit("s")
    assert parse_text("1.5e3") == Lit(1500.0)
    assert parse_text("true") == Lit(True)
    assert parse_text("unit") == Lit(None)


def test_free_vars_examples():
    assert free_vars(parse_text("val x = y; x")) == {"y"}
    assert free_vars(parse_text("val x = x; x")) == {"x"}
    assert free_vars(parse_text("fun f(x) { f(x, y) }")) == {"y"}
    assert free_vars(parse_text("(a, b) => add(a, c)")) == {"add", "c"}
    assert free_vars(Lit(3)) == set()


def test_diagnostics():
    def render(src):
        return [d.render() for d in load_program(src).diagnostics]

    assert render("val x = 1; y") == ["<input>:1:12: unbound variable 'y'"]
    assert render("x +") == ["<input>:1:4: expected expression, found end of input"]
    assert render("1[2->3]") == ["<input>:1:1: nvalue literal in program"]
    warn = load_program("fun uid(x){x}")
    assert warn.ok and warn.diagnostics[0].severity == "warning"


def test_unbalanced_brace_reports_position():
    prog = load_program("fun f(x) { x")
    assert not prog.ok
    d = prog.diagnostics[0]
    assert (d.line, d.col) == (1, 13)


def test_print_expr_is_core_form():
    text = print_expr(parse_text("if (a < 1) {b} else {c + 1}"))
    assert "if" not in text and "=>" not in text
    assert "mux(lt(a, 1)" in text


# -- properties --

NAMES = ["a", "b", "f", "g", "x"]
names = st.sampled_from(NAMES)
literals = st.one_of(
    st.integers(0, 1000),
    st.floats(0, 1e6, allow_nan=False),
    st.booleans(),
    st.none(),
    st.text(alphabet="abc \"\\", max_size=4),
)


def exprs():
    leaves = st.one_of(names.map(Var), literals.map(Lit))

    def extend(sub):
        return st.one_of(
            st.builds(lambda n, ps, b: Fun(None, n, tuple(ps), b), names,
                      st.lists(names, max_size=3, unique=True), sub),
            st.builds(lambda f, a: App(f, tuple(a)), sub, st.lists(sub, max_size=3)),
            st.builds(Val, names, sub, sub),
        )

    return st.recursive(leaves, extend, max_leaves=12)


@settings(max_examples=300)
@given(exprs())
def test_print_parse_round_trip(e):
    assert parse_text(print_expr(e)) == e


def brute_free_vars(e, bound=frozenset()):
    """Collect variable occurrences that no enclosing binder captures."""
    out = set()
    stack = [(e, bound)]
    while stack:
        node, b = stack.pop()
        if isinstance(node, Var):
            if node.name not in b:
                out.add(node.name)
        elif isinstance(node, Fun):
            stack.append((node.body, b | {node.name, *node.params}))
        elif isinstance(node, App):
            stack.append((node.fn, b))
            stack.extend((a, b) for a in node.args)
        elif isinstance(node, Val):
            stack.append((node.bound, b))
            stack.append((node.body, b | {node.name}))
    return out


@given(exprs())
def test_free_vars_matches_occurrence_scan(e):
    assert free_vars(e) == brute_free_vars(e)


def test_tokenize_empty_and_unterminated_string():
    assert tokenize("") == []
    prog = load_program('val s = "abc')
    assert [(d.line, d.col, d.message) for d in prog.diagnostics] == [(1, 9, "unterminated string")]


def test_def_without_separator():
    assert parse_text("def g(x){x} g(3)") == Val("g", Fun(None, "g", ("x",), Var("x")), App(Var("g"), (Lit(3),)))


def test_unicode_mapsto_in_nvalue_literal():
    assert parse_text("1[1↦2]") == parse_text("1[1->2]")


def test_free_vars_of_function_applying_parameter():
    assert free_vars(Fun(None, "f", ("x",), App(Var("x"), (Var("y"),)))) == {"y"}
