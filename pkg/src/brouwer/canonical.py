"""Canonical JSON: no insignificant whitespace, deterministic key order.

Object keys are sorted as strings, except in objects whose keys are all
sequence-like (decimal naturals, comma-joined decimals, or the empty
string), which are sorted by their numeric tuples. That puts tree children
``"2"`` before ``"10"`` and table paths in lexicographic order of paths.
"""

from __future__ import annotations

import json
import re

_SEQ_KEY = re.compile(r"(\d+(,\d+)*)?")


def _seq_key(k: str):
    return (tuple(int(p) for p in k.split(",")) if k else (), k)


def _ordered(keys):
    if all(_SEQ_KEY.fullmatch(k) for k in keys):
        return sorted(keys, key=_seq_key)
    return sorted(keys)


def _emit(obj, out: list[str]) -> None:
    if isinstance(obj, dict):
        out.append("{")
        for i, k in enumerate(_ordered(obj)):
            if i:
                out.append(",")
            out.append(json.dumps(k))
            out.append(":")
            _emit(obj[k], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, x in enumerate(obj):
            if i:
                out.append(",")
            _emit(x, out)
        out.append("]")
    else:
        out.append(json.dumps(obj))


def dumps(obj) -> str:
    """Canonical text of ``obj``, with a trailing newline."""
    out: list[str] = []
    _emit(obj, out)
    out.append("\n")
    return "".join(out)
