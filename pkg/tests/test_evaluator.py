import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xcalc.core import (
    EMPTY,
    AlignmentError,
    KeyMap,
    NValue,
    Plain,
    SensorState,
    Tagged,
    XCTypeError,
    annotate,
    evaluate,
    exchange,
    mux_builtin,
    nfold,
    project_child,
    project_fun,
    self_builtin,
    spawn,
    uid_builtin,
    update_self_builtin,
)
from xcalc.core.evaluator import BUILTINS, Closure
from xcalc.core.syntax import App, Fun, Lit, NLit, Val, Var
from xcalc.lang import load_program

from helpers import program

S = SensorState()


def prog(text):
    p = load_program(text)
    assert p.ok, p.diagnostics
    return p.parsed


def run_rounds(e, device, rounds, sensors=S):
    """Solo device that hears only its own previous round."""
    env = {}
    out = []
    for _ in range(rounds):
        w, t = evaluate(device, env, sensors, e)
        out.append(w.get(device))
        env = {device: t}
    return out


def test_literals_and_val():
    assert evaluate(0, {}, S, Lit(5)) == (NValue(5), EMPTY)
    w = NValue(3, {1: 4})
    assert evaluate(0, {}, S, NLit(w)) == (w, EMPTY)
    got = evaluate(0, {}, S, Val("x", Lit(1), Var("x")))
    assert got == (NValue(1), Plain((EMPTY, EMPTY)))


def test_project_child():
    a, b = Plain(()), Plain((EMPTY,))
    assert project_child({1: Plain((a, b))}, 2) == {1: b}
    assert project_child({1: Plain(())}, 1) == {}
    assert project_child({}, 3) == {}


def test_project_fun_filters_by_name():
    g, f = BUILTINS["add"], BUILTINS["sub"]
    env = {1: Tagged(g.lifted, ()), 2: Tagged(f.lifted, ())}
    assert set(project_fun(env, f)) == {2}
    c1 = Closure("t3", "h", (), None, None, {})
    c2 = Closure("t3", "h", (), None, None, {"x": NValue(1)})
    env = {1: Tagged(c1.lifted, ()), 2: Tagged(c2.lifted, ())}
    assert set(project_fun(env, c1)) == {1, 2}
    assert project_fun({}, f) == {}


def test_apply_non_function_is_type_error():
    with pytest.raises(XCTypeError):
        evaluate(0, {}, S, App(Lit(3), ()))


def test_exchange_builds_n_from_sent_values():
    # what devices 4, 3 and 2 sent last; each one's entry for device 3 is used
    sends = {4: NValue(0, {3: 1}), 3: NValue(2), 2: NValue(0, {3: 3})}
    fn = evaluate(0, {}, S, prog("(n) => pair(n, n)"))[0]
    env = {d: Tagged(w, (EMPTY,)) for d, w in sends.items()}
    w, tree = exchange(3, env, S, NValue(0), fn)
    assert w == NValue(0, {4: 1, 3: 2, 2: 3})
    assert isinstance(tree, Tagged) and tree.export == w


def test_exchange_no_neighbours_uses_init():
    fn = evaluate(0, {}, S, prog("(n) => pair(n, n)"))[0]
    w, _ = exchange(0, {}, S, NValue(7), fn)
    assert w == NValue(7)


def test_exchange_requires_pair():
    fn = evaluate(0, {}, S, prog("(n) => n"))[0]
    with pytest.raises(XCTypeError):
        exchange(0, {}, S, NValue(7), fn)


def test_exchange_solo_counts_rounds():
    e = prog("exchange(0, (n) => pair(n, n + 1))")
    assert run_rounds(e, 5, 5) == [0, 1, 2, 3, 4]


def test_nfold_product_over_sorted_neighbours():
    mul = BUILTINS["mul"].lifted
    env = {1: EMPTY, 3: EMPTY, 4: EMPTY}
    w = NValue(1, {1: 2, 3: 5, 4: 7, 2: 100})
    assert nfold(2, env, S, mul, w, NValue(1))[0] == NValue(70)
    assert nfold(2, {}, S, mul, w, NValue(9))[0] == NValue(9)
    assert nfold(2, {1: EMPTY, 3: EMPTY}, S, mul, NValue(2, {1: 3}), NValue(1))[0] == NValue(6)


def test_nfold_applies_closures_in_device_order():
    cat = evaluate(0, {}, S, prog('(a, b) => a + text(b)'))[0]
    env = {3: EMPTY, 1: EMPTY, 2: EMPTY}
    w = NValue(0, {1: 1, 2: 2, 3: 3})
    assert nfold(2, env, S, cat, w, NValue(""))[0] == NValue("13")


@given(st.dictionaries(st.integers(0, 6), st.integers(-9, 9)), st.integers(-9, 9), st.integers(-9, 9))
def test_nfold_ignores_self(ov, default, own):
    add = BUILTINS["add"].lifted
    env = {d: EMPTY for d in range(7)}
    w = NValue(default, ov)
    a = nfold(3, env, S, add, w, NValue(0))[0]
    b = nfold(3, env, S, add, update_self_builtin(3, w, own), NValue(0))[0]
    assert a == b


def test_small_builtins():
    assert self_builtin(4, NValue(0, {4: 7})) == 7
    assert update_self_builtin(4, NValue(0), 5) == NValue(0, {4: 5})
    assert uid_builtin(9) == 9
    got = mux_builtin(NValue(True, {1: False}), NValue(1), NValue(2))
    assert got == NValue(1, {1: 2})
    with pytest.raises(XCTypeError):
        mux_builtin(NValue(1), NValue(1), NValue(2))


def test_spawn_empty():
    proc = evaluate(0, {}, S, prog("(k) => pair(k, true)"))[0]
    w, tree = spawn(0, {}, S, proc, NValue(frozenset()))
    assert dict(w.get(0)) == {} and isinstance(tree, KeyMap) and not tree.entries


def test_spawn_status_must_be_bool():
    proc = evaluate(0, {}, S, prog("(k) => pair(k, 1)"))[0]
    with pytest.raises(XCTypeError):
        spawn(0, {}, S, proc, NValue(frozenset({1})))


def test_spawn_false_status_lives_one_event():
    e = prog("spawn((k) => pair(k, false), sense(\"gen\"))")
    gen = SensorState(0.0, {"gen": frozenset({"p"})})
    none = SensorState(1.0, {"gen": frozenset()})
    w, t = evaluate(0, {}, gen, e)
    assert dict(w.get(0)) == {"p": "p"}
    w2, _ = evaluate(0, {0: t}, none, e)
    assert dict(w2.get(0)) == {}


def test_spawn_propagates_to_neighbours_with_true_status():
    e = prog("spawn((k) => pair(uid(), true), sense(\"gen\"))")
    gen = SensorState(0.0, {"gen": frozenset({"p"})})
    none = SensorState(0.0, {"gen": frozenset()})
    _, t0 = evaluate(0, {}, gen, e)
    w1, _ = evaluate(1, {0: t0}, none, e)
    assert dict(w1.get(1)) == {"p": 1}
    # the process output is a local value, so every neighbour slot agrees
    assert dict(w1.get(0)) == {"p": 1}


def test_counter_restarts_per_spawn_instance():
    e = program('spawn((k) => pair(counter(), true), sense("gen"))')
    t = {}
    got = []
    for i, keys in enumerate([{"a"}, set(), {"b"}, set()]):
        w, tree = evaluate(0, t, SensorState(float(i), {"gen": frozenset(keys)}), e)
        t = {0: tree}
        got.append(dict(w.get(0)))
    assert got == [{"a": 1}, {"a": 2}, {"a": 3, "b": 1}, {"a": 4, "b": 2}]


def test_annotation_is_preorder_and_idempotent():
    e = load_program("val f = (x) => x; (y) => f(y)").parsed
    taus = []

    def walk(n):
        if isinstance(n, Fun):
            taus.append(n.tau)
        for c in (getattr(n, "bound", None), getattr(n, "body", None), getattr(n, "fn", None)):
            if c is not None:
                walk(c)
        for a in getattr(n, "args", ()):
            walk(a)

    walk(e)
    assert taus == ["t0", "t1"]
    assert annotate(e) == e
    assert load_program("val f = (x) => x; (y) => f(y)").parsed == e


def test_branch_isolation_two_devices():
    # device 0 takes the then-branch, device 1 the else-branch; the exchanges
    # inside the branches must not see each other
    e = prog("if (uid() == 0) { exchange(0, (n) => pair(nfold(add, n, 0), 1)) } "
             "else { exchange(0, (n) => pair(nfold(add, n, 0), 1)) }")
    _, t0 = evaluate(0, {}, S, e)
    _, t1 = evaluate(1, {}, S, e)
    w0, _ = evaluate(0, {0: t0, 1: t1}, S, e)
    w1, _ = evaluate(1, {0: t0, 1: t1}, S, e)
    assert w0.get(0) == 0 and w1.get(1) == 0
    same = prog("exchange(0, (n) => pair(nfold(add, n, 0), 1))")
    _, s0 = evaluate(0, {}, S, same)
    _, s1 = evaluate(1, {}, S, same)
    assert evaluate(1, {0: s0, 1: s1}, S, same)[0].get(1) == 1


def test_if_true_takes_then_branch_everywhere():
    e = prog("if (true) { uid() * 10 } else { 0 - 1 }")
    for d in (0, 1):
        env = {}
        for _ in range(2):
            w, t = evaluate(d, env, S, e)
            env = {d: t}
        assert w.get(d) == d * 10


def test_debug_mode_detects_misaligned_exchange():
    a = prog("exchange(0, (n) => pair(n, n))")
    b = prog("exchange(1, (n) => pair(n, n))")
    _, ta = evaluate(0, {}, S, a, debug=True)
    evaluate(0, {0: ta}, S, a, debug=True)
    with pytest.raises(AlignmentError):
        evaluate(0, {0: ta}, S, b, debug=True)


PROGRAMS = [
    "gradient(uid() == 0)",
    "counter() + nfold(add, nbr(1), 0)",
    "ep(uid() == 1)",
    "multi_gradient(uid() < 2, 3.0)",
    "if (uid() == 0) { counter() } else { gradient(false) }",
    "spanning_tree(uid() == 0)",
]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(PROGRAMS), st.lists(st.integers(0, 3), min_size=1, max_size=12))
def test_alignment_soundness_in_debug_mode(src, schedule):
    # any interleaving of rounds on a clique of four devices, debug fingerprints on
    e = program(src)
    trees = {}
    sensors = SensorState(0.0, {}, {"nbr_dist": NValue(1.0), "nbr_uid": NValue(-1)})
    for d in schedule:
        env = dict(trees)
        sensors.relational["nbr_uid"] = NValue(-1, {m: m for m in env})
        _, trees[d] = evaluate(d, env, sensors, e, debug=True)


def test_evaluate_is_deterministic():
    e = program("multi_gradient(uid() < 2, 5.0)")
    sensors = SensorState(0.0, {}, {"nbr_dist": NValue(1.0)})
    _, t = evaluate(0, {}, sensors, e)
    first = evaluate(1, {0: t}, sensors, e)
    second = evaluate(1, {0: t}, sensors, e)
    assert first == second
