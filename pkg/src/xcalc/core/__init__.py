"""Runtime value algebra and device semantics of the exchange calculus."""
from __future__ import annotations

from . import builtins as _builtins
from .evaluator import (
    BUILTINS,
    GLOBALS,
    AlignmentError,
    Builtin,
    Closure,
    EvalContext,
    SensorState,
    _exchange,
    _nfold,
    _spawn,
    apply_value,
    compile_expr,
    evaluate,
)
from .syntax import App, Expr, Fun, Lit, NLit, Val, Var, annotate, strip_annotations
from .trees import EMPTY, KeyMap, Plain, Tagged, project_child, project_fun, project_key
from .values import (
    FrozenMap,
    NValue,
    XCError,
    XCEvalError,
    XCTypeError,
    format_local,
    format_nvalue,
    lift_local,
    local_equal,
    nv_get,
    pointwise_apply,
    sort_key,
)


def _as_nvalue(v) -> NValue:
    return v if isinstance(v, NValue) else NValue(v)


def exchange(d, env, sensors, w_init, f):
    ctx = EvalContext(d, sensors or SensorState())
    return _exchange(ctx, env or {}, [_as_nvalue(w_init), _as_nvalue(f)], None)


def nfold(d, env, sensors, f, w, init):
    ctx = EvalContext(d, sensors or SensorState())
    return _nfold(ctx, env or {}, [_as_nvalue(f), _as_nvalue(w), _as_nvalue(init)], None)


def spawn(d, env, sensors, proc, keys):
    ctx = EvalContext(d, sensors or SensorState())
    return _spawn(ctx, env or {}, [_as_nvalue(proc), _as_nvalue(keys)], None)


def self_builtin(d, w: NValue):
    return w.get(d)


def update_self_builtin(d, w: NValue, l) -> NValue:
    ov = dict(w.overrides)
    ov[d] = l
    return NValue(w.default, ov)


def uid_builtin(d) -> int:
    return d


def mux_builtin(c: NValue, a: NValue, b: NValue) -> NValue:
    return pointwise_apply(_builtins.mux, [c, a, b])


__all__ = [
    "App", "Expr", "Fun", "Lit", "NLit", "Val", "Var", "annotate", "strip_annotations",
    "EMPTY", "KeyMap", "Plain", "Tagged", "project_child", "project_fun", "project_key",
    "FrozenMap", "NValue", "XCError", "XCEvalError", "XCTypeError", "AlignmentError",
    "format_local", "format_nvalue", "lift_local", "local_equal", "nv_get",
    "pointwise_apply", "sort_key", "BUILTINS", "GLOBALS", "Builtin", "Closure",
    "EvalContext", "SensorState", "apply_value", "compile_expr", "evaluate",
    "exchange", "nfold", "spawn", "self_builtin", "update_self_builtin",
    "uid_builtin", "mux_builtin",
]
