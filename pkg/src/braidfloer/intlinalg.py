"""
Exact integer linear algebra: Smith normal form, integer solving, kernels.

Matrices are lists of lists of Python ints.  Sizes here are small
(tens of rows/columns), so classical elimination with full pivoting on
minimal absolute value is plenty fast and keeps entries tame.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            aik = ai[k]
            if aik:
                bk = b[k]
                for j in range(cols):
                    oi[j] += aik * bk[j]
    return out


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(ai[j] * v[j] for j in range(len(v)) if v[j]) for ai in a]


class SmithForm:
    """U * M * V = S with U, V unimodular and S diagonal (d_i | d_{i+1})."""

    def __init__(self, m: Sequence[Sequence[int]]):
        rows = len(m)
        cols = len(m[0]) if rows else 0
        s = [list(map(int, row)) for row in m]
        u = identity(rows)
        v = identity(cols)

        def swap_rows(i, j):
            s[i], s[j] = s[j], s[i]
            u[i], u[j] = u[j], u[i]

        def swap_cols(i, j):
            for r in s:
                r[i], r[j] = r[j], r[i]
            for r in v:
                r[i], r[j] = r[j], r[i]

        def add_row(dst, src, c):
            s[dst] = [x + c * y for x, y in zip(s[dst], s[src])]
            u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

        def add_col(dst, src, c):
            for r in s:
                r[dst] += c * r[src]
            for r in v:
                r[dst] += c * r[src]

        t = 0
        while t < min(rows, cols):
            # pivot: smallest nonzero |entry| in the remaining block
            pr = pc = -1
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = abs(s[i][j])
                    if x and (best is None or x < best):
                        best, pr, pc = x, i, j
            if best is None:
                break
            swap_rows(t, pr)
            swap_cols(t, pc)
            again = True
            while again:
                again = False
                for i in range(t + 1, rows):
                    if s[i][t]:
                        q = s[i][t] // s[t][t]
                        add_row(i, t, -q)
                        if s[i][t]:
                            swap_rows(t, i)
                            again = True
                for j in range(t + 1, cols):
                    if s[t][j]:
                        q = s[t][j] // s[t][t]
                        add_col(j, t, -q)
                        if s[t][j]:
                            swap_cols(t, j)
                            again = True
            # divisibility fix-up
            pivot = s[t][t]
            fixed = False
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if s[i][j] % pivot:
                        add_row(t, i, 1)
                        fixed = True
                        break
                if fixed:
                    break
            if fixed:
                continue
            if s[t][t] < 0:
                s[t] = [-x for x in s[t]]
                u[t] = [-x for x in u[t]]
            t += 1

        self.s = s
        self.u = u
        self.v = v
        self.rows = rows
        self.cols = cols
        self.rank = sum(1 for i in range(min(rows, cols)) if s[i][i] != 0)
        self.diag = [s[i][i] for i in range(self.rank)]

    def solve(self, b: Sequence[int]) -> Optional[list[int]]:
        """One integer solution of M x = b, or None."""
        ub = mat_vec(self.u, list(b))
        t = [0] * self.cols
        for i in range(self.rank):
            d = self.diag[i]
            if ub[i] % d:
                return None
            t[i] = ub[i] // d
        for i in range(self.rank, self.rows):
            if ub[i] != 0:
                return None
        return mat_vec(self.v, t)

    def kernel_basis(self) -> list[list[int]]:
        """Integer basis of ker(M): the last cols - rank columns of V."""
        return [[self.v[r][c] for r in range(self.cols)] for c in range(self.rank, self.cols)]


def solve_rational(m: Sequence[Sequence[int]], b: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """One rational solution of M x = b by Gaussian elimination, or None."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [[Fraction(m[i][j]) for j in range(cols)] + [Fraction(b[i])] for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if a[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(piv_cols):
        x[c] = a[i][cols]
    return x


def rational_kernel_basis(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(map(Fraction, row)) for row in m]
    piv_cols: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in piv_cols]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(piv_cols):
            vec[pc] = -a[i][fc]
        basis.append(vec)
    return basis


def express_in_basis(basis: Sequence[Sequence[int]], vec: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Coordinates of vec in the given (independent) basis, or None."""
    if not basis:
        return [] if all(x == 0 for x in vec) else None
    n = len(basis[0])
    a = [[Fraction(basis[k][i]) for k in range(len(basis))] + [Fraction(vec[i])] for i in range(n)]
    rows, cols = n, len(basis)
    piv = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv.append(c)
        r += 1
    for i in range(r, rows):
        if a[i][cols] != 0:
            return None
    out = [Fraction(0)] * cols
    for i, c in enumerate(piv):
        out[c] = a[i][cols]
    return out
