"""Text formats: state/unitary files and deterministic CSV emission.

State files are line-oriented: a header `dim <2^q>` followed by one complex
entry per line as `re im`.  A file with dim^2 entry lines holds a matrix in
row-major order; a file with dim entry lines holds a state vector.
"""

from __future__ import annotations

import numpy as np


class FormatError(ValueError):
    def __init__(self, code: str, detail: str = ""):
        self.code = code
        super().__init__(f"{code}: {detail}" if detail else code)


def parse_array(text: str):
    """Parse a state file; returns (array, kind) with kind 'vector' or 'matrix'."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("E_EMPTY_FILE")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "dim":
        raise FormatError("E_BAD_HEADER", lines[0])
    try:
        dim = int(head[1])
    except ValueError:
        raise FormatError("E_BAD_HEADER", lines[0]) from None
    if dim <= 0 or dim & (dim - 1):
        raise FormatError("E_DIM_NOT_POWER_OF_TWO", str(dim))
    entries = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError("E_BAD_ENTRY", ln)
        try:
            entries.append(complex(float(parts[0]), float(parts[1])))
        except ValueError:
            raise FormatError("E_BAD_ENTRY", ln) from None
    if len(entries) == dim:
        return np.array(entries), "vector"
    if len(entries) == dim * dim:
        return np.array(entries).reshape(dim, dim), "matrix"
    raise FormatError("E_ENTRY_COUNT", f"got {len(entries)}, expected {dim} or {dim * dim}")


def write_array(a: np.ndarray) -> str:
    if a.ndim == 1:
        dim = a.shape[0]
        flat = a
    elif a.ndim == 2 and a.shape[0] == a.shape[1]:
        dim = a.shape[0]
        flat = a.reshape(-1)
    else:
        raise FormatError("E_BAD_SHAPE", str(a.shape))
    lines = [f"dim {dim}"]
    for z in flat:
        lines.append(f"{fmt(z.real)} {fmt(z.imag)}")
    return "\n".join(lines) + "\n"


def fmt(x: float) -> str:
    """17 significant digits: round trips every double, byte-deterministic."""
    return f"{float(x):.17g}"


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(fmt(v) if isinstance(v, float) else str(v) for v in row) + "\n")
