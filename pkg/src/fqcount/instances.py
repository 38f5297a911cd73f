"""The JSON instance-file format.

An instance file describes a system to count/verify:

    {
      "p": 3, "s": 4,
      "modulus": [2, 1, 0, 0, 1],          // optional; default is deterministic
      "n": 3,
      "f": [{"coeffs": [1, 0, 1, 1]}, ...],  // n univariate polynomials
      "P": [{"terms": [{"c": 1, "e": [1, 0, 0]}, ...]}, ...],
      "I": [1, 2, 3]                        // optional, 1-based
    }

Field elements appear as their integer encodings in [0, q).  Serialization
is canonical (sorted keys, fixed separators) so parse/serialize round-trips
byte-identically on canonicalized files.
"""

from __future__ import annotations

import json
from pathlib import Path

from .counting import SystemInstance, system
from .errors import FqError, ParseError
from .gf import field
from .multipoly import index_set, multipoly
from .unipoly import unipoly


def system_from_dict(data: dict) -> SystemInstance:
    if not isinstance(data, dict):
        raise ParseError("instance must be a JSON object")
    try:
        p = _require_int(data, "p")
        s = _require_int(data, "s")
        modulus = data.get("modulus")
        try:
            ctx = field(p, s, modulus)
        except FqError as exc:
            raise ParseError(str(exc), field="p/s/modulus") from exc
        n = _require_int(data, "n")
        f_raw = data.get("f")
        if not isinstance(f_raw, list) or len(f_raw) != n:
            raise ParseError(f"expected a list of {n} polynomials", field="f")
        f_list = []
        for pos, entry in enumerate(f_raw):
            try:
                f_list.append(unipoly(ctx, entry["coeffs"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(str(exc), field=f"f[{pos}]") from exc
        p_raw = data.get("P")
        if not isinstance(p_raw, list) or not p_raw:
            raise ParseError("expected a nonempty list of polynomials", field="P")
        p_list = []
        for pos, entry in enumerate(p_raw):
            try:
                terms = [(t["c"], t["e"]) for t in entry["terms"]]
                p_list.append(multipoly(ctx, n, terms))
            except (KeyError, TypeError, ValueError, FqError) as exc:
                raise ParseError(str(exc), field=f"P[{pos}]") from exc
        subset = None
        if data.get("I") is not None:
            try:
                subset = index_set(data["I"], n)
            except (TypeError, ValueError, FqError) as exc:
                raise ParseError(str(exc), field="I") from exc
        return system(ctx, f_list, p_list, subset)
    except FqError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def _require_int(data: dict, key: str) -> int:
    if key not in data:
        raise ParseError("missing required field", field=key)
    v = data[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise ParseError("must be an integer", field=key)
    return v


def system_to_dict(sys: SystemInstance) -> dict:
    out = {
        "p": sys.ctx.p,
        "s": sys.ctx.s,
        "modulus": list(sys.ctx.modulus),
        "n": sys.n,
        "f": [f.to_dict() for f in sys.f_list],
        "P": [pj.to_dict() for pj in sys.p_list],
    }
    if sys.index_set is not None:
        out["I"] = list(sys.index_set.as_sorted())
    return out


def canonical_json(data: dict) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def load_instance(path: str | Path) -> SystemInstance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(str(exc)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return system_from_dict(data)


def dump_instance(sys: SystemInstance, path: str | Path) -> None:
    Path(path).write_text(canonical_json(system_to_dict(sys)))
