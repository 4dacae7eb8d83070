"""GF(2) linear algebra on int bitsets (one int per row)."""

from __future__ import annotations

from typing import Optional


def rank(rows: list[int]) -> int:
    pivots: list[tuple[int, int]] = []  # (reduced row, pivot column)
    for r in rows:
        for pr, pc in pivots:
            if (r >> pc) & 1:
                r ^= pr
        if r == 0:
            continue
        pc = (r & -r).bit_length() - 1
        pivots = [(pr ^ r, pcc) if (pr >> pc) & 1 else (pr, pcc) for pr, pcc in pivots]
        pivots.append((r, pc))
    return len(pivots)


def solve(rows: list[int], rhs: list[int], n_cols: int) -> Optional[list[int]]:
    """
    Solve A x = b over GF(2) by Gauss-Jordan; rows[i] is the bitset of row
    i (bit j = column j).  Returns one solution (free variables = 0) as a
    0/1 list, or None if inconsistent.
    """
    system: list[tuple[int, int, int]] = []  # (row, b, pivot column)
    for r, b in zip(rows, rhs):
        b &= 1
        for pr, pb, pc in system:
            if (r >> pc) & 1:
                r ^= pr
                b ^= pb
        if r == 0:
            if b:
                return None
            continue
        pc = (r & -r).bit_length() - 1
        system = [
            (pr ^ r, pb ^ b, pcc) if (pr >> pc) & 1 else (pr, pb, pcc)
            for pr, pb, pcc in system
        ]
        system.append((r, b, pc))
    x = [0] * n_cols
    for r, b, pc in system:
        x[pc] = b
    return x


def verify(rows: list[int], rhs: list[int], x: list[int]) -> bool:
    xm = 0
    for j, v in enumerate(x):
        if v & 1:
            xm |= 1 << j
    return all((r & xm).bit_count() % 2 == (b & 1) for r, b in zip(rows, rhs))
