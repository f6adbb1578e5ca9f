"""Local values and neighbouring values (nvalues).

Local values are plain Python objects:

    unit      -> None
    Bool      -> bool
    Int       -> int (device identifiers are ints too)
    Real      -> float
    Text      -> str
    Pair      -> tuple of length 2
    Set       -> frozenset
    Map       -> FrozenMap
    functions -> Closure / Builtin

An NValue is a default local value plus per-device overrides.
"""
from __future__ import annotations

import math
from typing import Any, Callable, Iterable, Iterator, Mapping

_NO_OVERRIDES: Mapping[int, Any] = {}


class XCError(Exception):
    """Base class for interpreter errors."""


class XCTypeError(XCError):
    """A runtime kind mismatch, optionally at a specific device entry."""

    def __init__(self, message: str, device: int | None = None):
        self.device = device
        if device is not None:
            message = f"{message} (at device {device})"
        super().__init__(message)


class XCEvalError(XCError):
    pass


class FrozenMap(Mapping):
    """Immutable, hashable map between local values."""

    __slots__ = ("_data", "_hash")

    def __init__(self, items: Iterable[tuple[Any, Any]] | Mapping = ()):
        if isinstance(items, Mapping):
            items = items.items()
        self._data = dict(sorted(items, key=lambda kv: sort_key(kv[0])))
        self._hash = None

    def __getitem__(self, key):
        return self._data[key]

    def __iter__(self) -> Iterator:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._data.items()))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, FrozenMap):
            return self._data == other._data
        return NotImplemented

    def put(self, key, value) -> "FrozenMap":
        data = dict(self._data)
        data[key] = value
        return FrozenMap(data)

    def __repr__(self) -> str:
        return f"FrozenMap({self._data!r})"


_RANK = {type(None): 0, bool: 1, int: 2, float: 2, str: 3, tuple: 4, frozenset: 5, FrozenMap: 6}


def sort_key(value) -> tuple:
    """Total order over local values (used for nfold order, spawn keys, printing)."""
    rank = _RANK.get(type(value))
    if rank is None:
        name = getattr(value, "name", None)
        if name is not None:
            return (7, str(name))
        raise XCTypeError(f"value {value!r} has no ordering")
    if rank == 0:
        return (0,)
    if rank == 2 and math.isnan(value):
        return (2, math.inf, 1)
    if rank in (1, 2, 3):
        return (rank, value)
    if rank == 4:
        return (4, tuple(sort_key(v) for v in value))
    if rank == 5:
        return (5, tuple(sorted(sort_key(v) for v in value)))
    return (6, tuple((sort_key(k), sort_key(v)) for k, v in value.items()))


class NValue:
    """A neighbouring value: ``default[d1 -> l1, ...]``."""

    __slots__ = ("default", "overrides")

    def __init__(self, default, overrides: Mapping[int, Any] | None = None):
        self.default = default
        self.overrides = overrides if overrides else _NO_OVERRIDES

    def get(self, device: int):
        return self.overrides.get(device, self.default)

    @property
    def is_local(self) -> bool:
        return not self.overrides

    def normalized(self) -> "NValue":
        ov = {d: v for d, v in self.overrides.items() if not local_equal(v, self.default)}
        return NValue(self.default, ov)

    def domain(self) -> list[int]:
        return sorted(self.overrides)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NValue):
            return NotImplemented
        if not local_equal(self.default, other.default):
            return False
        for d in set(self.overrides) | set(other.overrides):
            if not local_equal(self.get(d), other.get(d)):
                return False
        return True

    def __hash__(self):
        n = self.normalized()
        return hash((n.default, frozenset(n.overrides.items())))

    def __repr__(self) -> str:
        return format_nvalue(self)


def lift_local(value) -> NValue:
    return NValue(value)


def nv_get(w: NValue, device: int):
    return w.get(device)


def local_equal(a, b) -> bool:
    # bool is an int subclass in Python; keep the two kinds apart
    if (type(a) is bool) != (type(b) is bool):
        return False
    return a == b


def pointwise_apply(op: Callable, args: list[NValue]) -> NValue:
    """Lift a function on local values to nvalues."""
    locals_only = True
    for a in args:
        if a.overrides:
            locals_only = False
            break
    try:
        default = op(*[a.default for a in args])
    except XCTypeError as exc:
        if exc.device is None and not locals_only:
            raise XCTypeError(f"{exc} for default entry") from None
        raise
    if locals_only:
        return NValue(default)
    domain: set[int] = set()
    for a in args:
        domain.update(a.overrides)
    overrides = {}
    try:
        if len(args) == 1:
            (a,) = args
            for d in domain:
                overrides[d] = op(a.get(d))
        elif len(args) == 2:
            a, b = args
            for d in domain:
                overrides[d] = op(a.get(d), b.get(d))
        else:
            for d in domain:
                overrides[d] = op(*[a.get(d) for a in args])
    except XCTypeError as exc:
        raise XCTypeError(str(exc), device=d) from None
    return NValue(default, overrides)


def format_local(value) -> str:
    """Deterministic single-line rendering of a local value."""
    if value is None:
        return "unit"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(value, tuple):
        return "(" + ", ".join(format_local(v) for v in value) + ")"
    if isinstance(value, frozenset):
        return "{" + ", ".join(format_local(v) for v in sorted(value, key=sort_key)) + "}"
    if isinstance(value, FrozenMap):
        return "{" + ", ".join(f"{format_local(k)}: {format_local(v)}" for k, v in value.items()) + "}"
    name = getattr(value, "name", None)
    if name is not None:
        return f"<fun {name}>"
    return repr(value)


def format_nvalue(w: NValue) -> str:
    entries = ", ".join(f"{d} -> {format_local(w.overrides[d])}" for d in sorted(w.overrides))
    return f"{format_local(w.default)}[{entries}]"
