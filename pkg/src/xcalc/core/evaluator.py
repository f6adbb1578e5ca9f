"""Big-step device semantics.

Expressions are compiled once into nested Python closures of the form
``run(venv, theta, ctx) -> (NValue, tree)``; ``venv`` maps variables to the
nvalues substituted for them, ``theta`` is the value-tree environment of the
current sub-expression and ``ctx`` carries the device id and its sensors.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Any, Callable

from .syntax import App, Expr, Fun, Lit, NLit, Val, Var
from .trees import EMPTY, KeyMap, Plain, Tagged, project_child, project_fun, project_key
from .values import (
    FrozenMap,
    NValue,
    XCError,
    XCEvalError,
    XCTypeError,
    format_local,
    pointwise_apply,
    sort_key,
)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

PURE = "pure"
AUX = "aux"


class AlignmentError(XCError):
    """Raised in debug mode when an exchange consumes a foreign subtree."""


@dataclass
class SensorState:
    """Sensor values seen by one round.

    ``relational`` sensors are nvalues defined on the current neighbourhood
    (``nbr_dist``, ``nbr_uid``); ``scalar`` sensors are plain local values.
    """

    time: float = 0.0
    scalar: dict = field(default_factory=dict)
    relational: dict = field(default_factory=dict)


@dataclass
class EvalContext:
    device: int
    sensors: SensorState
    debug: bool = False


class Closure:
    __slots__ = ("tau", "var", "params", "body", "code", "env", "lifted")

    def __init__(self, tau, var, params, body, code, env):
        self.tau = tau
        self.var = var
        self.params = params
        self.body = body
        self.code = code
        self.env = env
        self.lifted = NValue(self)

    @property
    def name(self):
        return self.tau

    def __eq__(self, other):
        return isinstance(other, Closure) and other.tau == self.tau

    def __hash__(self):
        return hash(("closure", self.tau))

    def __repr__(self):
        return f"<fun {self.tau} {self.var}({', '.join(self.params)})>"


class Builtin:
    __slots__ = ("name", "fn", "arity", "kind", "uses_env", "lifted")

    def __init__(self, name, fn, arity, kind=PURE, uses_env=False):
        self.name = name
        self.fn = fn
        self.arity = arity
        self.kind = kind
        self.uses_env = uses_env
        self.lifted = NValue(self)

    def __eq__(self, other):
        return isinstance(other, Builtin) and other.name == self.name

    def __hash__(self):
        return hash(("builtin", self.name))

    def __repr__(self):
        return f"<builtin {self.name}>"


BUILTINS: dict[str, Builtin] = {}


def _is_fun(v) -> bool:
    return type(v) is Closure or type(v) is Builtin


# ---------------------------------------------------------------------------
# compilation


def _needs_env(e: Expr) -> bool:
    if isinstance(e, App):
        return True
    if isinstance(e, Val):
        return _needs_env(e.bound) or _needs_env(e.body)
    return False


_NOENV: dict = {}
# Variable environment of a whole program; builtins are resolved through
# GLOBALS when a name is not bound locally.
TOP_ENV: dict = {}
_cache: dict[int, tuple[Expr, Callable]] = {}


def compile_expr(e: Expr) -> Callable:
    hit = _cache.get(id(e))
    if hit is not None and hit[0] is e:
        return hit[1]
    code = _compile(e)
    _cache[id(e)] = (e, code)
    return code


def _compile(e: Expr) -> Callable:
    if isinstance(e, Lit):
        w = NValue(e.value)

        def run_lit(venv, theta, ctx):
            return w, EMPTY

        return run_lit

    if isinstance(e, NLit):
        w = e.value

        def run_nlit(venv, theta, ctx):
            return w, EMPTY

        return run_nlit

    if isinstance(e, Var):
        name = e.name

        def run_var(venv, theta, ctx):
            w = venv.get(name)
            if w is None:
                w = GLOBALS.get(name)
                if w is None:
                    raise XCEvalError(f"unbound variable {name!r}")
            return w, EMPTY

        return run_var

    if isinstance(e, Fun):
        if e.tau is None:
            raise XCEvalError(f"function {e.name!r} is not annotated")
        body_code = _compile(e.body)
        tau, var, params, body = e.tau, e.name, e.params, e.body

        def run_fun(venv, theta, ctx):
            return Closure(tau, var, params, body, body_code, venv).lifted, EMPTY

        return run_fun

    if isinstance(e, Val) and isinstance(e.bound, Fun):
        return _compile_definitions(e)

    if isinstance(e, Val):
        c1, c2 = _compile(e.bound), _compile(e.body)
        n1, n2 = _needs_env(e.bound), _needs_env(e.body)
        name = e.name

        def run_val(venv, theta, ctx):
            if theta:
                w1, th1 = c1(venv, project_child(theta, 1) if n1 else _NOENV, ctx)
                venv2 = dict(venv)
                venv2[name] = w1
                w2, th2 = c2(venv2, project_child(theta, 2) if n2 else _NOENV, ctx)
            else:
                w1, th1 = c1(venv, _NOENV, ctx)
                venv2 = dict(venv)
                venv2[name] = w1
                w2, th2 = c2(venv2, _NOENV, ctx)
            return w2, Plain((th1, th2))

        return run_val

    if isinstance(e, App):
        codes = [_compile(e.fn)] + [_compile(a) for a in e.args]
        needs = [_needs_env(e.fn)] + [_needs_env(a) for a in e.args]
        parts = list(zip(range(1, len(codes) + 1), codes, needs))
        n = len(e.args)
        last = n + 2
        pos = id(e)

        def run_app(venv, theta, ctx):
            ws = []
            ths = []
            if theta:
                for i, code, need in parts:
                    w, th = code(venv, project_child(theta, i) if need else _NOENV, ctx)
                    ws.append(w)
                    ths.append(th)
            else:
                for i, code, need in parts:
                    w, th = code(venv, _NOENV, ctx)
                    ws.append(w)
                    ths.append(th)
            f = ws[0].get(ctx.device)
            w, th = _apply(f, ws[1:], theta, last, ctx, pos)
            ths.append(th)
            return w, Tagged(f.lifted, tuple(ths), f.name)

        return run_app

    raise XCEvalError(f"cannot evaluate {e!r}")


def _compile_definitions(e: Val) -> Callable:
    """A run of ``val f = fun ...;`` bindings followed by a body.

    Evaluating a function literal has an empty tree and a closure that only
    depends on the variable environment, so the whole run is evaluated in one
    step: the closures are built once per environment (and cached for the
    top-level environment) and the tree is the same chain of ``Plain`` nodes
    that the binding-by-binding evaluation produces.
    """
    defs = []
    node: Expr = e
    while isinstance(node, Val) and isinstance(node.bound, Fun):
        defs.append((node.name, _compile(node.bound)))
        node = node.body
    body = _compile(node)
    need = _needs_env(node)
    depth = len(defs)
    top: list = []

    def bind(venv, ctx):
        for name, code in defs:
            w, _ = code(venv, _NOENV, ctx)
            venv = dict(venv)
            venv[name] = w
        return venv

    def run_defs(venv, theta, ctx):
        if venv is TOP_ENV:
            if not top:
                top.append(bind(venv, ctx))
            inner = top[0]
        else:
            inner = bind(venv, ctx)
        sub = _NOENV
        if theta and need:
            sub = {}
            for d, t in theta.items():
                for _ in range(depth):
                    ch = t.children
                    if len(ch) < 2:
                        break
                    t = ch[1]
                else:
                    sub[d] = t
        w, th = body(inner, sub, ctx)
        for _ in range(depth):
            th = Plain((EMPTY, th))
        return w, th

    return run_defs


def _apply(f, args: list, theta, last: int, ctx: EvalContext, pos):
    """Auxiliary evaluation of ``f(args)`` against the App environment ``theta``."""
    tf = type(f)
    if tf is Builtin:
        if f.arity is not None and len(args) != f.arity:
            raise XCTypeError(f"{f.name} expects {f.arity} arguments, got {len(args)}")
        if f.kind == PURE:
            return pointwise_apply(f.fn, args), EMPTY
        if f.uses_env and theta:
            sub = project_child(project_fun(theta, f), last)
        else:
            sub = _NOENV
        return f.fn(ctx, sub, args, pos)
    if tf is Closure:
        if len(args) != len(f.params):
            raise XCTypeError(
                f"function {f.var} expects {len(f.params)} arguments, got {len(args)}"
            )
        sub = project_child(project_fun(theta, f), last) if theta else _NOENV
        venv = dict(f.env)
        venv[f.var] = f.lifted
        for p, w in zip(f.params, args):
            venv[p] = w
        return f.code(venv, sub, ctx)
    raise XCTypeError(f"cannot apply non-function {format_local(f)}", device=ctx.device)


def apply_value(ctx: EvalContext, theta, fw: NValue, args: list) -> tuple[NValue, Any]:
    """Evaluate the application of value ``fw`` to value arguments (rule E-APP
    with value sub-expressions): returns the result and the frame tree."""
    f = fw.get(ctx.device)
    if not _is_fun(f):
        raise XCTypeError(f"cannot apply non-function {format_local(f)}", device=ctx.device)
    last = len(args) + 2
    w, th = _apply(f, args, theta, last, ctx, None)
    return w, Tagged(f.lifted, (EMPTY,) * (len(args) + 1) + (th,), f.name)


def evaluate(device: int, env: dict, sensors: SensorState, e: Expr, debug: bool = False):
    """Evaluate a closed annotated expression on ``device`` for one round.

    Returns the result nvalue and the value tree to be shared with neighbours.
    """
    ctx = EvalContext(device, sensors, debug)
    return compile_expr(e)(TOP_ENV, env or _NOENV, ctx)


# ---------------------------------------------------------------------------
# helpers for builtins


def _split_pair(w: NValue, what: str) -> tuple[NValue, NValue]:
    def fst(p):
        if type(p) is not tuple:
            raise XCTypeError(f"{what} must return a pair, got {format_local(p)}")
        return p[0]

    def snd(p):
        return p[1]

    first = pointwise_apply(fst, [w])
    return first, pointwise_apply(snd, [w])


def _check_bool_nvalue(w: NValue, what: str) -> None:
    if type(w.default) is not bool:
        raise XCTypeError(f"{what} must be Bool, got {format_local(w.default)}")
    for d, v in w.overrides.items():
        if type(v) is not bool:
            raise XCTypeError(f"{what} must be Bool, got {format_local(v)}", device=d)


def _fold_local(ctx: EvalContext, fw: NValue, acc, items):
    f = fw.get(ctx.device)
    if type(f) is Builtin and f.kind == PURE:
        if f.arity not in (None, 2):
            raise XCTypeError(f"fold function {f.name} is not binary")
        fn = f.fn
        for x in items:
            acc = fn(acc, x)
        return acc
    for x in items:
        r, _ = apply_value(ctx, _NOENV, fw, [NValue(acc), NValue(x)])
        acc = r.get(ctx.device)
    return acc


# ---------------------------------------------------------------------------
# environment-dependent builtins (auxiliary rules)


def _exchange(ctx, theta, args, pos):
    init, fw = args
    d = ctx.device
    if theta:
        ov = dict(init.overrides)
        for nb in theta:
            t = theta[nb]
            if type(t) is not Tagged:
                continue
            if ctx.debug and t.pos != pos:
                raise AlignmentError(f"exchange at {pos} received tree from {t.pos}")
            ov[nb] = t.export.get(d)
        n = NValue(init.default, ov)
        sub = project_child(theta, 1)
    else:
        n = init
        sub = _NOENV
    w, th = apply_value(ctx, sub, fw, [n])
    ret, send = _split_pair(w, "exchange function")
    return ret, Tagged(send, (th,), None, pos if ctx.debug else None)


def _nfold(ctx, theta, args, pos):
    fw, w, init = args
    d = ctx.device
    items = [w.get(nb) for nb in sorted(theta) if nb != d]
    return NValue(_fold_local(ctx, fw, init.get(d), items)), EMPTY


def _fold_set(ctx, theta, args, pos):
    fw, sw, init = args
    s = sw.get(ctx.device)
    if type(s) is not frozenset:
        raise XCTypeError(f"fold_set expects a set, got {format_local(s)}")
    items = sorted(s, key=sort_key)
    return NValue(_fold_local(ctx, fw, init.get(ctx.device), items)), EMPTY


def _self(ctx, theta, args, pos):
    return NValue(args[0].get(ctx.device)), EMPTY


def _update_self(ctx, theta, args, pos):
    w, l = args
    ov = dict(w.overrides)
    ov[ctx.device] = l.get(ctx.device)
    return NValue(w.default, ov), EMPTY


def _uid(ctx, theta, args, pos):
    return NValue(ctx.device), EMPTY


def _spawn(ctx, theta, args, pos):
    pw, kw = args
    d = ctx.device
    keys = kw.get(d)
    if type(keys) is not frozenset:
        raise XCTypeError(f"spawn keys must be a set, got {format_local(keys)}", device=d)
    active = set(keys)
    for t in theta.values():
        if type(t) is KeyMap:
            for k, sub in t.entries.items():
                if k not in active and sub.export.get(d) is True:
                    active.add(k)
    outputs = {}
    entries = {}
    for k in sorted(active, key=sort_key):
        env_k = project_child(project_key(theta, k), 1) if theta else _NOENV
        w, th = apply_value(ctx, env_k, pw, [NValue(k)])
        out, status = _split_pair(w, "process function")
        _check_bool_nvalue(status, "process status")
        outputs[k] = out
        entries[k] = Tagged(status, (th,))
    domain = set()
    for o in outputs.values():
        domain.update(o.overrides)
    default = FrozenMap({k: o.default for k, o in outputs.items()})
    ov = {nb: FrozenMap({k: o.get(nb) for k, o in outputs.items()}) for nb in sorted(domain)}
    return NValue(default, ov), KeyMap(entries)


def _sense(ctx, theta, args, pos):
    name = args[0].get(ctx.device)
    sensors = ctx.sensors
    if name in sensors.relational:
        return sensors.relational[name], EMPTY
    if name in sensors.scalar:
        return NValue(sensors.scalar[name]), EMPTY
    raise XCEvalError(f"unknown sensor {name!r}")


def _relational(name, default):
    def run(ctx, theta, args, pos):
        w = ctx.sensors.relational.get(name)
        return (w if w is not None else NValue(default)), EMPTY

    return run


def _current_time(ctx, theta, args, pos):
    return NValue(ctx.sensors.time), EMPTY


for _b in [
    Builtin("exchange", _exchange, 2, AUX, uses_env=True),
    Builtin("nfold", _nfold, 3, AUX, uses_env=True),
    Builtin("spawn", _spawn, 2, AUX, uses_env=True),
    Builtin("fold_set", _fold_set, 3, AUX),
    Builtin("self", _self, 1, AUX),
    Builtin("updateSelf", _update_self, 2, AUX),
    Builtin("uid", _uid, 0, AUX),
    Builtin("sense", _sense, 1, AUX),
    Builtin("nbr_dist", _relational("nbr_dist", float("inf")), 0, AUX),
    Builtin("nbr_uid", _relational("nbr_uid", -1), 0, AUX),
    Builtin("current_time", _current_time, 0, AUX),
]:
    BUILTINS[_b.name] = _b

from . import builtins as _pure  # noqa: E402  (registers the pointwise builtins)

for _name, (_fn, _arity) in _pure.POINTWISE.items():
    BUILTINS[_name] = Builtin(_name, _fn, _arity, PURE)

GLOBALS: dict[str, NValue] = {name: b.lifted for name, b in BUILTINS.items()}
