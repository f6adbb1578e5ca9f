"""Tagged JSON encoding of local values, nvalues and sensor snapshots."""
from __future__ import annotations

import json
import math

from ..core.evaluator import SensorState
from ..core.values import FrozenMap, NValue, sort_key


def encode_local(v):
    if v is None or type(v) in (bool, int, str):
        return v
    if type(v) is float:
        if math.isfinite(v):
            return v
        return {"f": "inf" if v > 0 else ("-inf" if v < 0 else "nan")}
    if type(v) is tuple:
        return {"p": [encode_local(v[0]), encode_local(v[1])]}
    if type(v) is frozenset:
        return {"s": [encode_local(x) for x in sorted(v, key=sort_key)]}
    if type(v) is FrozenMap:
        return {"m": [[encode_local(k), encode_local(x)] for k, x in v.items()]}
    raise TypeError(f"cannot encode {v!r}")


def decode_local(o):
    if o is None or type(o) in (bool, int, float, str):
        return o
    if type(o) is dict:
        if "f" in o:
            return float(o["f"])
        if "p" in o:
            a, b = o["p"]
            return (decode_local(a), decode_local(b))
        if "s" in o:
            return frozenset(decode_local(x) for x in o["s"])
        if "m" in o:
            return FrozenMap({decode_local(k): decode_local(x) for k, x in o["m"]})
    raise ValueError(f"cannot decode {o!r}")


def encode_nvalue(w: NValue):
    return {"d": encode_local(w.default),
            "o": [[d, encode_local(v)] for d, v in sorted(w.overrides.items())]}


def decode_nvalue(o) -> NValue:
    return NValue(decode_local(o["d"]), {int(d): decode_local(v) for d, v in o["o"]})


def encode_sensors(s: SensorState) -> str:
    body = {
        "t": encode_local(float(s.time)),
        "s": {k: encode_local(v) for k, v in sorted(s.scalar.items())},
        "r": {k: encode_nvalue(v) for k, v in sorted(s.relational.items())},
    }
    return json.dumps(body, separators=(",", ":"), allow_nan=False)


def decode_sensors(text: str) -> SensorState:
    o = json.loads(text)
    return SensorState(
        time=decode_local(o["t"]),
        scalar={k: decode_local(v) for k, v in o["s"].items()},
        relational={k: decode_nvalue(v) for k, v in o["r"].items()},
    )
