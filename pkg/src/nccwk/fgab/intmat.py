"""Exact integer matrices and Smith normal form.

Everything downstream (K-groups, induced maps, purity checks) reduces to
integer linear algebra on small matrices, so this module keeps entries as
plain Python ints (arbitrary precision) and never touches floats.

The Smith normal form here tracks all four transforms: D = U*A*V with
U, V unimodular, and the inverses Uinv, Vinv accumulated alongside so
cyclic decompositions of cokernels come for free.

>>> A = IntMatrix.from_rows([[2, -2, 0], [1, -1, 0]])
>>> smith_normal_form(A).invariant_factors
(1, 0)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Immutable rectangular integer matrix; degenerate shapes allowed."""

    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]], cols: Optional[int] = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else (cols if cols is not None else 0)
        return IntMatrix(len(data), ncols, data)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def column(vec: Sequence[int]) -> "IntMatrix":
        return IntMatrix(len(vec), 1, tuple((int(x),) for x in vec))

    @staticmethod
    def from_columns(cols: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        if not cols:
            return IntMatrix.zero(rows if rows is not None else 0, 0)
        nrows = len(cols[0])
        return IntMatrix(nrows, len(cols), tuple(tuple(int(c[i]) for c in cols) for i in range(nrows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self.col(j) for j in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ocols = other.cols
        data = tuple(
            tuple(sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols)) for j in range(ocols))
            for i in range(self.rows)
        )
        return IntMatrix(self.rows, ocols, data)

    def apply(self, vec: Sequence[int]) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(self.entries[i][k] * vec[k] for k in range(self.cols)) for i in range(self.rows))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(c * x for x in row) for row in self.entries))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return IntMatrix(self.rows, self.cols + other.cols,
                         tuple(r1 + r2 for r1, r2 in zip(self.entries, other.entries)))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix(len(row_idx), len(col_idx),
                         tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __str__(self):
        if self.rows == 0 or self.cols == 0:
            return f"[{self.rows}x{self.cols}]"
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in self.entries) + "]"


def det(A: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    m = [list(row) for row in A.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """D = U*A*V with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.

    Uinv and Vinv are the exact inverses of U and V; columns of Uinv
    realize the cyclic decomposition of coker(A) on the original generators.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    Uinv: IntMatrix
    Vinv: IntMatrix
    invariant_factors: tuple

    def verify(self, A: IntMatrix) -> bool:
        ok = (self.U @ A @ self.V) == self.D
        ok = ok and abs(det(self.U)) == 1 and abs(det(self.V)) == 1
        ok = ok and (self.U @ self.Uinv) == IntMatrix.identity(A.rows)
        ok = ok and (self.V @ self.Vinv) == IntMatrix.identity(A.cols)
        d = self.invariant_factors
        for i in range(len(d) - 1):
            if d[i] != 0 and d[i + 1] % d[i] != 0:
                return False
            if d[i] == 0 and d[i + 1] != 0:
                return False
        return ok


def _xgcd(a: int, b: int):
    """g, s, t with g = s*a + t*b, g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class _Worker:
    """Mutable state for the reduction; transforms and inverses kept in sync."""

    def __init__(self, A: IntMatrix):
        self.m = A.rows
        self.n = A.cols
        self.D = [list(row) for row in A.entries]
        self.U = [[1 if i == j else 0 for j in range(self.m)] for i in range(self.m)]
        self.Uinv = [[1 if i == j else 0 for j in range(self.m)] for i in range(self.m)]
        self.V = [[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)]
        self.Vinv = [[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)]

    # Row ops act on D and U on the left; the inverse op is applied to
    # Uinv on the right (columns), keeping U*Uinv = I at every step.
    def swap_rows(self, i, j):
        self.D[i], self.D[j] = self.D[j], self.D[i]
        self.U[i], self.U[j] = self.U[j], self.U[i]
        for r in self.Uinv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(self, i, j):
        for r in self.D:
            r[i], r[j] = r[j], r[i]
        for r in self.V:
            r[i], r[j] = r[j], r[i]
        self.Vinv[i], self.Vinv[j] = self.Vinv[j], self.Vinv[i]

    def row_combine(self, i, j, a, b, c, d):
        # rows (i,j) <- (a*ri + b*rj, c*ri + d*rj); requires a*d - b*c = +-1
        for M in (self.D, self.U):
            ri, rj = M[i], M[j]
            M[i] = [a * x + b * y for x, y in zip(ri, rj)]
            M[j] = [c * x + d * y for x, y in zip(ri, rj)]
        det2 = a * d - b * c  # +-1
        ai, bi, ci, di = det2 * d, -det2 * b, -det2 * c, det2 * a
        for r in self.Uinv:
            x, y = r[i], r[j]
            r[i] = x * ai + y * ci
            r[j] = x * bi + y * di

    def col_combine(self, i, j, a, b, c, d):
        # cols (i,j) <- (a*ci + b*cj, c*ci + d*cj)
        for M in (self.D, self.V):
            for r in M:
                x, y = r[i], r[j]
                r[i] = a * x + b * y
                r[j] = c * x + d * y
        det2 = a * d - b * c
        ai, bi, ci, di = det2 * d, -det2 * b, -det2 * c, det2 * a
        ri, rj = self.Vinv[i], self.Vinv[j]
        self.Vinv[i] = [ai * x + ci * y for x, y in zip(ri, rj)]
        self.Vinv[j] = [bi * x + di * y for x, y in zip(ri, rj)]

    def negate_row(self, i):
        self.D[i] = [-x for x in self.D[i]]
        self.U[i] = [-x for x in self.U[i]]
        for r in self.Uinv:
            r[i] = -r[i]


def _reduce(w: _Worker):
    m, n, D = w.m, w.n, w.D
    for t in range(min(m, n)):
        # pick the nonzero pivot of least magnitude in the trailing block
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(D[i][j])
                if x != 0 and (best is None or x < best):
                    best, piv = x, (i, j)
        if piv is None:
            break
        i0, j0 = piv
        if i0 != t:
            w.swap_rows(t, i0)
        if j0 != t:
            w.swap_cols(t, j0)
        while True:
            # plain subtraction leaves row/col t alone; the gcd combine is
            # reserved for non-dividing entries and strictly shrinks the pivot,
            # so the sweep terminates
            for i in range(t + 1, m):
                if D[i][t] != 0:
                    if D[i][t] % D[t][t] == 0:
                        w.row_combine(t, i, 1, 0, -(D[i][t] // D[t][t]), 1)
                    else:
                        g, s, u = _xgcd(D[t][t], D[i][t])
                        a, b = D[t][t] // g, D[i][t] // g
                        w.row_combine(t, i, s, u, -b, a)
            for j in range(t + 1, n):
                if D[t][j] != 0:
                    if D[t][j] % D[t][t] == 0:
                        w.col_combine(t, j, 1, 0, -(D[t][j] // D[t][t]), 1)
                    else:
                        g, s, u = _xgcd(D[t][t], D[t][j])
                        a, b = D[t][t] // g, D[t][j] // g
                        w.col_combine(t, j, s, u, -b, a)
            if all(D[i][t] == 0 for i in range(t + 1, m)) and all(D[t][j] == 0 for j in range(t + 1, n)):
                break
        if D[t][t] < 0:
            w.negate_row(t)
    # enforce the divisibility chain on the diagonal (zeros sink to the end)
    r = min(m, n)
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if (a == 0 and b == 0) or (a != 0 and b % a == 0):
                continue
            # fold gcd(a, b) into position i and lcm into position i+1
            w.col_combine(i, i + 1, 1, 1, 0, 1)  # c_i += c_{i+1}
            g, s, u = _xgcd(D[i][i], D[i + 1][i])
            aa, bb = D[i][i] // g, D[i + 1][i] // g
            w.row_combine(i, i + 1, s, u, -bb, aa)
            if D[i][i + 1] != 0:
                q = D[i][i + 1] // D[i][i]
                w.col_combine(i, i + 1, 1, 0, -q, 1)
            if D[i][i] < 0:
                w.negate_row(i)
            if D[i + 1][i + 1] < 0:
                w.negate_row(i + 1)
            changed = True


def _smith_raw(A: IntMatrix) -> SmithDecomposition:
    w = _Worker(A)
    _reduce(w)
    r = min(A.rows, A.cols)
    factors = tuple(w.D[i][i] for i in range(r))
    D = IntMatrix(A.rows, A.cols, tuple(tuple(row) for row in w.D))
    U = IntMatrix(A.rows, A.rows, tuple(tuple(row) for row in w.U))
    V = IntMatrix(A.cols, A.cols, tuple(tuple(row) for row in w.V))
    Uinv = IntMatrix(A.rows, A.rows, tuple(tuple(row) for row in w.Uinv))
    Vinv = IntMatrix(A.cols, A.cols, tuple(tuple(row) for row in w.Vinv))
    return SmithDecomposition(U, D, V, Uinv, Vinv, factors)


@lru_cache(maxsize=None)
def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith decomposition of A; total, cached (IntMatrix is hashable)."""
    return _smith_raw(A)


def rank(A: IntMatrix) -> int:
    return sum(1 for d in smith_normal_form(A).invariant_factors if d != 0)


def kernel(A: IntMatrix) -> IntMatrix:
    """Columns form a Z-basis of {v : A v = 0}  (an A.cols x nullity matrix)."""
    snf = smith_normal_form(A)
    d = snf.invariant_factors
    free = [j for j in range(A.cols) if j >= len(d) or d[j] == 0]
    return snf.V.submatrix(range(A.cols), free)


def solve(A: IntMatrix, b: Sequence[int]) -> Optional[tuple]:
    """One integer solution x of A x = b, or None. Free coordinates are set to 0."""
    if len(b) != A.rows:
        raise ValueError("rhs length mismatch")
    snf = smith_normal_form(A)
    c = snf.U.apply(b)
    d = snf.invariant_factors
    y = [0] * A.cols
    for i in range(A.rows):
        di = d[i] if i < len(d) else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % di != 0:
                return None
            y[i] = c[i] // di
    return snf.V.apply(y)


def solve_matrix(A: IntMatrix, B: IntMatrix) -> Optional[IntMatrix]:
    """X with A X = B over the integers, or None."""
    if B.rows != A.rows:
        raise ValueError("shape mismatch")
    cols = []
    for j in range(B.cols):
        x = solve(A, B.col(j))
        if x is None:
            return None
        cols.append(x)
    return IntMatrix.from_columns(cols, rows=A.cols)


def in_column_span(A: IntMatrix, b: Sequence[int]) -> bool:
    return solve(A, b) is not None


def lattice_preimage(M: IntMatrix, R: IntMatrix) -> IntMatrix:
    """Generators (columns) of {x : M x lies in the column span of R}.

    R may have zero columns, in which case this is just ker(M).
    """
    if M.rows != R.rows:
        raise ValueError("shape mismatch")
    K = kernel(M.hstack(R.scale(-1)))
    return K.submatrix(range(M.cols), range(K.cols))


def unimodular_completion(v: Sequence[int]) -> IntMatrix:
    """A unimodular matrix whose first column is the primitive vector v."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g != 1:
        raise ValueError("vector is not primitive")
    snf = smith_normal_form(IntMatrix.column(v))
    # U v = +-e1, so Uinv has +-v as first column
    P = snf.Uinv
    if P.col(0) != tuple(v):
        P = IntMatrix.from_columns([tuple(-x for x in P.col(0))] + [P.col(j) for j in range(1, P.cols)])
    assert P.col(0) == tuple(v)
    return P


def invert_unimodular(P: IntMatrix) -> IntMatrix:
    X = solve_matrix(P, IntMatrix.identity(P.rows))
    if X is None:
        raise ValueError("matrix is not invertible over the integers")
    return X


def nonnegative_kernel_witness(A: IntMatrix, strict_rows: Sequence[int]) -> Optional[tuple]:
    """An integer v >= 0 with A v = 0 and v[j] >= 1 for every j in strict_rows.

    Decided exactly by Fourier-Motzkin elimination on the kernel-basis
    coordinates; a rational solution scales to an integer one because the
    constraint cone is invariant under positive dilation.
    """
    cols = A.cols
    strict = sorted(set(strict_rows))
    if not strict:
        return tuple(0 for _ in range(cols))
    B = kernel(A)
    r = B.cols
    # constraints sum_k B[j,k] c_k >= 1 (j strict), >= 0 (other coords)
    cons = []
    for j in range(cols):
        coeffs = tuple(Fraction(B[j, k]) for k in range(r))
        rhs = Fraction(1) if j in strict else Fraction(0)
        cons.append((coeffs, rhs))
    sol = _fourier_motzkin(cons, r)
    if sol is None:
        return None
    lcm = 1
    for c in sol:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    v = B.apply([int(c * lcm) for c in sol])
    assert all(x >= 0 for x in v) and all(v[j] >= 1 for j in strict)
    return v


def _fourier_motzkin(cons, nvars):
    """Feasible rational point for constraints (coeffs . c >= rhs), or None."""
    if nvars == 0:
        return () if all(rhs <= 0 for _, rhs in cons) else None
    k = nvars - 1
    lower, upper, rest = [], [], []
    for coeffs, rhs in cons:
        a = coeffs[k]
        head = coeffs[:k]
        if a > 0:
            # c_k >= (rhs - head.c)/a
            lower.append((tuple(x / a for x in head), rhs / a))
        elif a < 0:
            # c_k <= (rhs - head.c)/a  (inequality flips)
            upper.append((tuple(x / a for x in head), rhs / a))
        else:
            rest.append((head, rhs))
    projected = list(rest)
    for lo_c, lo_r in lower:
        for up_c, up_r in upper:
            # need lo_bound <= up_bound: (up - lo).c >= ... rearranged below
            coeffs = tuple(lo - up for lo, up in zip(lo_c, up_c))
            projected.append((coeffs, lo_r - up_r))
    tail = _fourier_motzkin(projected, k)
    if tail is None:
        return None
    lo_val = None
    for lo_c, lo_r in lower:
        b = lo_r - sum(c * t for c, t in zip(lo_c, tail))
        lo_val = b if lo_val is None or b > lo_val else lo_val
    up_val = None
    for up_c, up_r in upper:
        b = up_r - sum(c * t for c, t in zip(up_c, tail))
        up_val = b if up_val is None or b < up_val else up_val
    if lo_val is None and up_val is None:
        ck = Fraction(0)
    elif lo_val is None:
        ck = up_val
    elif up_val is None:
        ck = lo_val
    else:
        ck = (lo_val + up_val) / 2
    return tail + (ck,)
