"""graph6 encoding and decoding.

Bit order follows the standard format: the upper triangle is read column by
column, ``(0,1), (0,2), (1,2), (0,3), ...``, packed six bits per byte with an
offset of 63.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

HEADER = ">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 68719476736:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) > 1 and data[1] == 126:
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


@lru_cache(maxsize=64)
def _column_major_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    rows, cols = np.triu_indices(n, k=1)
    order = np.lexsort((rows, cols))
    return rows[order], cols[order]


def upper_bits(adj: np.ndarray) -> np.ndarray:
    """Upper-triangle adjacency bits in graph6 (column-major) order."""
    rows, cols = _column_major_pairs(adj.shape[0])
    return adj[rows, cols].astype(np.uint8)


def encode(adj: np.ndarray) -> str:
    """Encode a symmetric boolean adjacency matrix as a graph6 string."""
    adj = np.asarray(adj, dtype=bool)
    n = adj.shape[0]
    bits = upper_bits(adj)
    pad = (-len(bits)) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    groups = bits.reshape(-1, 6) if len(bits) else np.zeros((0, 6), dtype=np.uint8)
    values = groups @ np.array([32, 16, 8, 4, 2, 1], dtype=np.int64)
    return (_encode_n(n) + bytes((values + 63).tolist())).decode("ascii")


def decode(text: str | bytes) -> np.ndarray:
    """Decode a graph6 string into a boolean adjacency matrix."""
    if isinstance(text, str):
        text = text.encode("ascii")
    text = text.strip()
    if text.startswith(HEADER.encode()):
        text = text[len(HEADER):]
    if not text:
        raise ValueError("empty graph6 string")
    if any(b < 63 or b > 126 for b in text):
        raise ValueError("graph6 bytes must lie in 63..126")
    n, offset = _decode_n(text)
    nbits = n * (n - 1) // 2
    body = np.frombuffer(text[offset:], dtype=np.uint8).astype(np.int64) - 63
    if len(body) != (nbits + 5) // 6:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    bits = ((body[:, None] >> np.arange(5, -1, -1)) & 1).reshape(-1)[:nbits]
    adj = np.zeros((n, n), dtype=bool)
    if nbits:
        rows, cols = np.triu_indices(n, k=1)
        order = np.lexsort((rows, cols))
        r, c = rows[order], cols[order]
        adj[r, c] = bits.astype(bool)
        adj[c, r] = bits.astype(bool)
    return adj
