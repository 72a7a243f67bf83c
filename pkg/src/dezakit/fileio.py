"""Matrix text files, digraph6/dot export, and JSON report documents.

The matrix01 text format is the canonical interchange format: a header
line "<order> <alphabet>" with alphabet binary or signed, then order
lines of order whitespace-separated tokens.
"""

from __future__ import annotations

import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .matrix_core import Digraph, as_int_matrix

ALPHABETS = {"binary": {0, 1}, "signed": {-1, 0, 1}}

DIGRAPH6_MAX_ORDER = 258


class MatrixParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def write_matrix(m: np.ndarray, path) -> None:
    m = as_int_matrix(m)
    tag = "signed" if (m < 0).any() else "binary"
    lines = [f"{m.shape[0]} {tag}"]
    lines.extend(" ".join(str(int(x)) for x in row) for row in m)
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_matrix(path) -> np.ndarray:
    text = Path(path).read_text(encoding="ascii")
    lines = text.splitlines()
    if not lines:
        raise MatrixParseError(1, 1, "empty file")
    header = lines[0].split()
    if len(header) != 2 or not header[0].isdigit() or header[1] not in ALPHABETS:
        raise MatrixParseError(1, 1, f"expected header '<order> <binary|signed>', got {lines[0]!r}")
    n = int(header[0])
    allowed = ALPHABETS[header[1]]
    if len(lines) < n + 1:
        raise MatrixParseError(len(lines) + 1, 1, f"expected {n} rows, file has {len(lines) - 1}")
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        tokens = lines[i + 1].split()
        if len(tokens) != n:
            raise MatrixParseError(i + 2, len(tokens) + 1,
                                   f"expected {n} tokens, got {len(tokens)}")
        for j, tok in enumerate(tokens):
            try:
                v = int(tok)
            except ValueError:
                raise MatrixParseError(i + 2, j + 1, f"not an integer: {tok!r}") from None
            if v not in allowed:
                raise MatrixParseError(i + 2, j + 1,
                                       f"token {v} outside alphabet {header[1]}")
            out[i, j] = v
    return out


def read_digraph(path) -> Digraph:
    m = read_matrix(path)
    if (m < 0).any():
        raise ValueError("signed matrix cannot be read as a digraph")
    return Digraph(m, loops_allowed=bool(np.diagonal(m).any()))


def _digraph6_order_bytes(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    # 63 <= n <= 258047: '~' then three 6-bit groups, high first
    return bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])


def to_digraph6(d: Digraph) -> bytes:
    """Standard digraph6 line: '&', the order, then the row-major
    adjacency bits packed 6 per character."""
    if d.n > DIGRAPH6_MAX_ORDER:
        raise ValueError(f"digraph6 export limited to order {DIGRAPH6_MAX_ORDER}")
    if np.diagonal(d.adjacency).any():
        raise ValueError("digraph6 does not support loops")
    bits = d.adjacency.reshape(-1)
    out = bytearray(b"&")
    out += _digraph6_order_bytes(d.n)
    acc = 0
    count = 0
    for b in bits:
        acc = (acc << 1) | int(b)
        count += 1
        if count == 6:
            out.append(acc + 63)
            acc = 0
            count = 0
    if count:
        acc <<= (6 - count)
        out.append(acc + 63)
    return bytes(out)


def to_dot(d: Digraph) -> str:
    lines = ["digraph {"]
    for u, v in d.arcs():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(d: Digraph, fmt: str) -> bytes:
    if fmt == "matrix01":
        m = d.adjacency
        text = f"{d.n} binary\n" + "\n".join(
            " ".join(str(int(x)) for x in row) for row in m) + "\n"
        return text.encode("ascii")
    if fmt == "digraph6":
        return to_digraph6(d)
    if fmt == "dot":
        return to_dot(d).encode("ascii")
    raise ValueError(f"unknown format {fmt!r}")


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return [[int(x) for x in row] for row in value]
    if is_dataclass(value):
        return {k: _jsonable(v) for k, v in asdict(value).items()}
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


def report_to_dict(report) -> dict:
    """Flatten a verification report (any of the report dataclasses) to a
    JSON-ready dict; numpy members become nested lists."""
    return _jsonable(report)


def write_report(document: dict, path) -> None:
    Path(path).write_text(json.dumps(_jsonable(document), indent=2, sort_keys=True) + "\n",
                          encoding="utf-8")


def load_report(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))
