"""JSON encoding of engine values. Matrices use the input literal syntax."""

from __future__ import annotations

import json
from fractions import Fraction

from exactcat.matrix import Matrix
from exactcat.modules import FgModule, ModuleMap
from exactcat.rep import Rep, RepMap, ShortSeq
from exactcat.verdict import BOUNDED, Decision

SCHEMA = 1


def verdict(v):
    if v is True or v is False:
        return v
    if v == BOUNDED:
        return BOUNDED
    return str(v)


def module(M: FgModule):
    free, tors = M.free_rank, list(M.torsion_invariants)
    return {"free_rank": free, "torsion": tors, "moduli": list(M.moduli)}


def rep(X: Rep):
    spec = X.spec
    return {
        "modules": {o: module(v) for o, v in zip(spec.objects, X.values)},
        "actions": {g.name: a.literal() for g, a in zip(spec.generators, X.actions)},
    }


def rep_map(f: RepMap):
    return {o: c.literal() for o, c in zip(f.source.spec.objects, f.components)}


def seq(s: ShortSeq):
    return {"left": rep(s.left), "middle": rep(s.middle), "right": rep(s.right),
            "i": rep_map(s.i), "p": rep_map(s.p)}


def encode(obj, depth: int = 0):
    """Best-effort structural encoding; unknown objects become their repr."""
    if depth > 12:
        return repr(obj)
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Matrix):
        return obj.literal()
    if isinstance(obj, FgModule):
        return module(obj)
    if isinstance(obj, ModuleMap):
        return {"source": module(obj.source), "target": module(obj.target), "matrix": obj.matrix.literal()}
    if isinstance(obj, Rep):
        return rep(obj)
    if isinstance(obj, RepMap):
        return rep_map(obj)
    if isinstance(obj, ShortSeq):
        return seq(obj)
    if isinstance(obj, Decision):
        out = {"verdict": verdict(obj.verdict), "reason": obj.reason}
        if obj.witness:
            out["witness"] = encode(obj.witness, depth + 1)
        if obj.bound is not None or obj.verdict == BOUNDED:
            out["bound"] = encode(obj.bound or {}, depth + 1)
        return out
    if isinstance(obj, dict):
        return {str(k): encode(v, depth + 1) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v, depth + 1) for v in obj]
    if hasattr(obj, "as_dict"):
        return encode(obj.as_dict(), depth + 1)
    if hasattr(obj, "__dataclass_fields__"):
        return {k: encode(getattr(obj, k), depth + 1) for k in obj.__dataclass_fields__}
    return repr(obj)


def dumps(payload: dict, indent=None) -> str:
    body = {"schema": SCHEMA}
    body.update(payload)
    return json.dumps(encode(body), indent=indent, ensure_ascii=False)
