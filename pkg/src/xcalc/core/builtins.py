"""Pure builtins on local values; the evaluator lifts them pointwise."""
from __future__ import annotations

import math

from .values import FrozenMap, XCTypeError, format_local, local_equal, sort_key


def _num(x, op):
    if type(x) is bool or not isinstance(x, (int, float)):
        raise XCTypeError(f"{op}: expected a number, got {format_local(x)}")
    return x


def _bool(x, op):
    if type(x) is not bool:
        raise XCTypeError(f"{op}: expected a Bool, got {format_local(x)}")
    return x


def _set(x, op):
    if type(x) is not frozenset:
        raise XCTypeError(f"{op}: expected a set, got {format_local(x)}")
    return x


def _map(x, op):
    if type(x) is not FrozenMap:
        raise XCTypeError(f"{op}: expected a map, got {format_local(x)}")
    return x


def _pair(x, op):
    if type(x) is not tuple:
        raise XCTypeError(f"{op}: expected a pair, got {format_local(x)}")
    return x


def add(a, b):
    if type(a) is str and type(b) is str:
        return a + b
    return _num(a, "add") + _num(b, "add")


def sub(a, b):
    return _num(a, "sub") - _num(b, "sub")


def mul(a, b):
    return _num(a, "mul") * _num(b, "mul")


def div(a, b):
    a, b = _num(a, "div"), _num(b, "div")
    if b == 0:
        if a == 0 or math.isnan(a):
            return math.nan
        return math.copysign(math.inf, a) * math.copysign(1.0, b)
    return a / b


def mod(a, b):
    a, b = _num(a, "mod"), _num(b, "mod")
    if b == 0:
        raise XCTypeError("mod: division by zero")
    return a % b


def neg(a):
    return -_num(a, "neg")


def _comparable(a, b, op):
    if type(a) is str and type(b) is str:
        return a, b
    return _num(a, op), _num(b, op)


def lt(a, b):
    a, b = _comparable(a, b, "lt")
    return a < b


def le(a, b):
    a, b = _comparable(a, b, "le")
    return a <= b


def gt(a, b):
    a, b = _comparable(a, b, "gt")
    return a > b


def ge(a, b):
    a, b = _comparable(a, b, "ge")
    return a >= b


def eq(a, b):
    return local_equal(a, b)


def neq(a, b):
    return not local_equal(a, b)


def land(a, b):
    return _bool(a, "and") and _bool(b, "and")


def lor(a, b):
    return _bool(a, "or") or _bool(b, "or")


def lnot(a):
    return not _bool(a, "not")


def mux(c, a, b):
    return a if _bool(c, "mux") else b


def vmin(a, b):
    if type(a) in (int, float) and type(b) in (int, float):
        return b if b < a else a
    return b if sort_key(b) < sort_key(a) else a


def vmax(a, b):
    if type(a) in (int, float) and type(b) in (int, float):
        return b if b > a else a
    return b if sort_key(b) > sort_key(a) else a


def vabs(a):
    return abs(_num(a, "abs"))


def floor(a):
    a = _num(a, "floor")
    if isinstance(a, float) and not math.isfinite(a):
        raise XCTypeError(f"floor: not a finite number: {format_local(a)}")
    return math.floor(a)


def sqrt(a):
    a = _num(a, "sqrt")
    if a < 0:
        raise XCTypeError("sqrt: negative argument")
    return math.sqrt(a)


def real(a):
    return float(_num(a, "real"))


def pair(a, b):
    return (a, b)


def fst(p):
    return _pair(p, "fst")[0]


def snd(p):
    return _pair(p, "snd")[1]


def empty_set():
    return frozenset()


def insert(s, x):
    return _set(s, "insert") | {x}


def remove(s, x):
    return _set(s, "remove") - {x}


def union(a, b):
    return _set(a, "union") | _set(b, "union")


def contains(s, x):
    if type(s) is FrozenMap:
        return x in s
    return x in _set(s, "contains")


def size(s):
    if type(s) not in (frozenset, FrozenMap):
        raise XCTypeError(f"size: expected a collection, got {format_local(s)}")
    return len(s)


def set_min(s):
    s = _set(s, "set_min")
    if not s:
        raise XCTypeError("set_min: empty set")
    return min(s, key=sort_key)


def empty_map():
    return FrozenMap()


def map_put(m, k, v):
    return _map(m, "map_put").put(k, v)


def map_get(m, k):
    m = _map(m, "map_get")
    if k not in m:
        raise XCTypeError(f"map_get: missing key {format_local(k)}")
    return m[k]


def map_get_or(m, k, default):
    return _map(m, "map_get_or").get(k, default)


def keys(m):
    return frozenset(_map(m, "keys"))


def text(x):
    return x if type(x) is str else format_local(x)


POINTWISE = {
    "add": (add, 2),
    "sub": (sub, 2),
    "mul": (mul, 2),
    "div": (div, 2),
    "mod": (mod, 2),
    "neg": (neg, 1),
    "lt": (lt, 2),
    "le": (le, 2),
    "gt": (gt, 2),
    "ge": (ge, 2),
    "eq": (eq, 2),
    "neq": (neq, 2),
    "land": (land, 2),
    "lor": (lor, 2),
    "lnot": (lnot, 1),
    "mux": (mux, 3),
    "min": (vmin, 2),
    "max": (vmax, 2),
    "abs": (vabs, 1),
    "floor": (floor, 1),
    "sqrt": (sqrt, 1),
    "real": (real, 1),
    "pair": (pair, 2),
    "fst": (fst, 1),
    "snd": (snd, 1),
    "set": (empty_set, 0),
    "insert": (insert, 2),
    "remove": (remove, 2),
    "union": (union, 2),
    "contains": (contains, 2),
    "size": (size, 1),
    "set_min": (set_min, 1),
    "map": (empty_map, 0),
    "map_put": (map_put, 3),
    "map_get": (map_get, 2),
    "map_get_or": (map_get_or, 3),
    "keys": (keys, 1),
    "text": (text, 1),
}
