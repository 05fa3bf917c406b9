"""Exact integer matrix algorithms: echelon/Hermite forms, Smith form with
transforms, kernels, saturation and lattice membership.

Matrices enter as anything numpy can read and leave as numpy arrays of
dtype int64 when every entry fits, object otherwise.  Internally rows are
Python lists of ints so intermediate growth never overflows.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_INT64_SAFE = 1 << 62


def as_int_array(A, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Normalize to a 2-d integer array (int64 if it fits, else object)."""
    if isinstance(A, np.ndarray) and A.ndim == 2 and A.dtype == np.int64:
        return A
    arr = np.array(A, dtype=object)
    if arr.size == 0:
        r = rows if rows is not None else (arr.shape[0] if arr.ndim >= 1 else 0)
        c = cols if cols is not None else (arr.shape[1] if arr.ndim == 2 else 0)
        return np.zeros((r, c), dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return _shrink(arr)


def _shrink(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == np.int64:
        return arr
    if arr.size == 0:
        return np.zeros(arr.shape, dtype=np.int64)
    if int(np.abs(arr).max()) < _INT64_SAFE:
        return arr.astype(np.int64)
    return arr.astype(object)


def from_rows(rows, ncols: int) -> np.ndarray:
    if not rows:
        return np.zeros((0, ncols), dtype=np.int64)
    return _shrink(np.array(rows, dtype=object).reshape(len(rows), ncols))


def to_rows(A) -> list:
    A = as_int_array(A)
    return [[int(x) for x in row] for row in A.tolist()]


def _maxabs(A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    return int(np.abs(A).max())


def mm(*mats) -> np.ndarray:
    """Exact matrix product; int64 fast path guarded against overflow."""
    out = as_int_array(mats[0])
    for B in mats[1:]:
        B = as_int_array(B)
        if out.shape[1] != B.shape[0]:
            raise ValueError(f"shape mismatch {out.shape} @ {B.shape}")
        k = out.shape[1]
        if out.dtype == np.int64 and B.dtype == np.int64 and \
                _maxabs(out) * _maxabs(B) * max(k, 1) < _INT64_SAFE:
            out = out @ B
        else:
            out = _shrink(out.astype(object) @ B.astype(object))
    return out


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def equal(A, B) -> bool:
    A, B = as_int_array(A), as_int_array(B)
    if A.dtype == np.int64 and B.dtype == np.int64:
        return A.shape == B.shape and bool(np.array_equal(A, B))
    return A.shape == B.shape and bool((A.astype(object) == B.astype(object)).all())


# ------------------------------------------------------------------ echelon

def _axpy(target: list, q: int, src: list, nz: list | None):
    """target -= q * src (in place)."""
    if nz is None:
        return [a - q * b for a, b in zip(target, src)]
    for j in nz:
        target[j] -= q * src[j]
    return target


def _nonzeros(row):
    return [j for j, x in enumerate(row) if x]


def echelon(rows: list, ncols: int, reduce: bool = True, search_cols: int | None = None):
    """Row-style Hermite reduction in place.

    rows: list of integer lists (may be longer than ncols: the extra columns
    ride along as a transform).  Pivots are searched in the first
    search_cols columns.  Returns (rows, pivots) where rows[:len(pivots)]
    is in echelon form with positive pivots; with reduce=True entries above
    each pivot are reduced into [0, pivot).
    """
    if search_cols is None:
        search_cols = ncols
    prow = 0
    pivots = []
    nrows = len(rows)
    for c in range(search_cols):
        if prow >= nrows:
            break
        cand = [i for i in range(prow, nrows) if rows[i][c]]
        if not cand:
            continue
        while True:
            p = min(cand, key=lambda i: abs(rows[i][c]))
            pr = rows[p]
            pv = pr[c]
            nz = _nonzeros(pr)
            sparse = nz if 3 * len(nz) < len(pr) else None
            left = []
            for i in cand:
                if i == p:
                    continue
                q = rows[i][c] // pv
                if q:
                    rows[i] = _axpy(rows[i], q, pr, sparse)
                if rows[i][c]:
                    left.append(i)
            if not left:
                break
            cand = left + [p]
        rows[prow], rows[p] = rows[p], rows[prow]
        if rows[prow][c] < 0:
            rows[prow] = [-x for x in rows[prow]]
        pr = rows[prow]
        if reduce:
            pv = pr[c]
            nz = _nonzeros(pr)
            sparse = nz if 3 * len(nz) < len(pr) else None
            for i in range(prow):
                q = rows[i][c] // pv
                if q:
                    rows[i] = _axpy(rows[i], q, pr, sparse)
        pivots.append(c)
        prow += 1
    return rows, pivots


def row_hnf(A, transform: bool = False):
    """Row Hermite normal form H = U A (nonzero rows only unless transform).

    Returns (H, U) where U is unimodular (m x m) when transform, else None.
    With transform, H has all m rows (zero rows at the bottom)."""
    A = to_rows(A)
    m = len(A)
    n = len(A[0]) if m else 0
    if transform:
        rows = [A[i] + [1 if j == i else 0 for j in range(m)] for i in range(m)]
        rows, piv = echelon(rows, n + m, reduce=True, search_cols=n)
        H = from_rows([r[:n] for r in rows], n)
        U = from_rows([r[n:] for r in rows], m)
        return H, U
    rows, piv = echelon(A, n, reduce=True)
    return from_rows(rows[:len(piv)], n), None


def hnf(A):
    """Column Hermite form: returns (H, V) with H = A V, V unimodular; the
    nonzero columns of H come first, lower echelon with positive pivots."""
    A = as_int_array(A)
    H, U = row_hnf(A.T, transform=True)
    return H.T.copy(), U.T.copy()


def rank(A) -> int:
    A = to_rows(A)
    if not A:
        return 0
    _, piv = echelon(A, len(A[0]), reduce=False)
    return len(piv)


# ---------------------------------------------------------------- kernels

def kernel_basis(A) -> np.ndarray:
    """Columns form a Z-basis of {x : A x = 0} (automatically saturated),
    in column Hermite form for determinism."""
    A = as_int_array(A)
    m, n = A.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if m == 0:
        return identity(n)
    cols = to_rows(A.T)            # n rows of length m
    rows = [cols[i] + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    rows, piv = echelon(rows, m + n, reduce=False, search_cols=m)
    kern = [r[m:] for r in rows[len(piv):]]
    if not kern:
        return np.zeros((n, 0), dtype=np.int64)
    kern, p2 = echelon(kern, n, reduce=True)
    return from_rows(kern[:len(p2)], n).T.copy()


def left_kernel(A) -> np.ndarray:
    """Rows form a basis of {y : y A = 0}."""
    return kernel_basis(as_int_array(A).T).T.copy()


def row_basis(A) -> np.ndarray:
    """Row HNF basis of the row span."""
    return row_hnf(A)[0]


def saturate(B) -> np.ndarray:
    """Columns: basis (column HNF) of (span of columns of B tensor Q) meet Z^n."""
    B = as_int_array(B)
    n = B.shape[0]
    if B.shape[1] == 0:
        return np.zeros((n, 0), dtype=np.int64)
    basis = row_basis(B.T)                 # r x n, full row rank
    r = basis.shape[0]
    if r == 0:
        return np.zeros((n, 0), dtype=np.int64)
    K = basis.T                            # n x r, full column rank
    D, V = _snf_diag_colV(K)
    KV = mm(K, V)
    cols = []
    for j in range(r):
        d = D[j]
        col = [int(x) for x in KV[:, j]]
        assert all(x % d == 0 for x in col)
        cols.append([x // d for x in col])
    rows, piv = echelon(cols, n, reduce=True)
    return from_rows(rows[:len(piv)], n).T.copy()


def is_saturated(B) -> bool:
    B = as_int_array(B)
    if B.shape[1] == 0:
        return True
    return all(d == 1 for d in elementary_divisors(B))


# ------------------------------------------------------------------ solving

@dataclass
class _Solver:
    H: list          # k x n echelon rows of B^T
    U: list          # k x k transform with U B^T = H
    pivots: list
    n: int


def _make_solver(B) -> _Solver:
    B = as_int_array(B)
    n, k = B.shape
    rows = to_rows(B.T)
    rows = [rows[i] + [1 if j == i else 0 for j in range(k)] for i in range(k)]
    rows, piv = echelon(rows, n + k, reduce=True, search_cols=n)
    if len(piv) != k:
        raise ValueError("solve_integer needs a basis (full column rank)")
    return _Solver([r[:n] for r in rows], [r[n:] for r in rows], piv, n)


def solve_integer(B, Y):
    """Return X with B X = Y exactly (B of full column rank), or None when
    some column of Y is not in the Z-span of the columns of B."""
    B = as_int_array(B)
    Y = as_int_array(Y, rows=B.shape[0])
    n, k = B.shape
    if Y.shape[1] == 0:
        return np.zeros((k, 0), dtype=np.int64)
    if k == 0:
        return np.zeros((0, Y.shape[1]), dtype=np.int64) if not Y.any() else None
    S = _make_solver(B)
    out = []
    for y in to_rows(Y.T):
        z = _solve_echelon(S, y)
        if z is None:
            return None
        out.append(z)
    Z = from_rows(out, k).T            # coordinates with respect to H rows
    X = mm(as_int_array(S.U).T if S.U else np.zeros((k, k), dtype=np.int64), Z)
    if not equal(mm(B, X), Y):
        return None
    return X


def _solve_echelon(S: _Solver, y: list):
    # find z with z^T H = y^T
    y = list(y)
    z = []
    for i, c in enumerate(S.pivots):
        h = S.H[i]
        if y[c] % h[c]:
            return None
        q = y[c] // h[c]
        z.append(q)
        if q:
            for j in range(c, S.n):
                if h[j]:
                    y[j] -= q * h[j]
    if any(y):
        return None
    return z


def in_span(B, y) -> bool:
    return solve_integer(B, as_int_array(y).reshape(-1, 1)) is not None


# ------------------------------------------------------------------ inverse

def integer_inverse(A) -> np.ndarray | None:
    """Inverse of a unimodular matrix, or None if A is not invertible over Z.

    A floating-point candidate is tried first and accepted only after the
    exact check A B = I; otherwise the exact route decides."""
    A = as_int_array(A)
    n = A.shape[0]
    if A.shape != (n, n):
        return None
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    I = identity(n)
    if A.dtype == np.int64 and n <= 400:
        try:
            cand = np.rint(np.linalg.inv(A.astype(float)))
            if np.isfinite(cand).all() and np.abs(cand).max() < 2**52:
                B = cand.astype(np.int64)
                if equal(mm(A, B), I):
                    return B
        except np.linalg.LinAlgError:
            pass
    if det(A) == 0:
        return None
    return solve_integer(A, I)


def det(A) -> int:
    """Exact determinant by fraction-free elimination (Bareiss)."""
    M = to_rows(A)
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# -------------------------------------------------------------------- Smith

@dataclass
class SmithDecomposition:
    U: np.ndarray
    D: np.ndarray
    V: np.ndarray

    @property
    def diagonal(self) -> list:
        k = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(k)]


def snf(A) -> SmithDecomposition:
    """Smith form D = U A V with U, V unimodular and d1 | d2 | ... >= 0.

    Alternates row and column Hermite reductions (which keep entries
    reduced modulo pivots) until the matrix is diagonal, then repairs the
    divisibility chain with 2x2 gcd/lcm moves."""
    A = as_int_array(A)
    m, n = A.shape
    U, V, M = identity(m), identity(n), A
    while not _is_diagonal(M):
        H, U1 = row_hnf(M, transform=True)
        U, M = mm(U1, U), H
        if _is_diagonal(M):
            break
        H, V1 = hnf(M)
        V, M = mm(V, V1), H
    Ur, Vr, Mr = to_rows(U), to_rows(V.T), to_rows(M)   # Vr holds columns of V
    r = min(m, n)
    d = [Mr[i][i] if i < r else 0 for i in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            a, b = d[i], d[j]
            if b == 0 or (a != 0 and b % a == 0):
                continue
            if a == 0:
                d[i], d[j] = b, 0
                Ur[i], Ur[j] = Ur[j], Ur[i]
                Vr[i], Vr[j] = Vr[j], Vr[i]
                continue
            g, x, y = _xgcd(a, b)
            # [[x, y], [-b/g, a/g]] diag(a, b) [[1, -y b/g], [1, x a/g]] = diag(g, ab/g)
            ui, uj = Ur[i], Ur[j]
            Ur[i] = [x * p + y * q for p, q in zip(ui, uj)]
            Ur[j] = [(-b // g) * p + (a // g) * q for p, q in zip(ui, uj)]
            vi, vj = Vr[i], Vr[j]
            Vr[i] = [p + q for p, q in zip(vi, vj)]
            Vr[j] = [(-y * b // g) * p + (x * a // g) * q for p, q in zip(vi, vj)]
            d[i], d[j] = g, a * b // g
    for i in range(r):
        if d[i] < 0:
            d[i] = -d[i]
            Ur[i] = [-x for x in Ur[i]]
    D = [[0] * n for _ in range(m)]
    for i in range(r):
        D[i][i] = d[i]
    return SmithDecomposition(from_rows(Ur, m), from_rows(D, n) if m else np.zeros((0, n), dtype=np.int64),
                              from_rows(Vr, n).T.copy())


def _is_diagonal(M) -> bool:
    M = as_int_array(M)
    if M.size == 0:
        return True
    nz = np.argwhere(M.astype(object) != 0)
    return bool((nz[:, 0] == nz[:, 1]).all()) if len(nz) else True


def _xgcd(a, b):
    """(g, x, y) with x a + y b = g = gcd(a, b) > 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _col_op(M, V, j, t, q):
    """column j -= q * column t, on M and on V."""
    for r in M:
        if r[t]:
            r[j] -= q * r[t]
    if V is not None:
        for r in V:
            if r[t]:
                r[j] -= q * r[t]


def _col_swap(M, V, a, b):
    for r in M:
        r[a], r[b] = r[b], r[a]
    if V is not None:
        for r in V:
            r[a], r[b] = r[b], r[a]


def _smith(M, m, n, U, V):
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            M[t], M[i] = M[i], M[t]
            if U is not None:
                U[t], U[i] = U[i], U[t]
        if j != t:
            _col_swap(M, V, t, j)
        while True:
            p = M[t][t]
            changed = False
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // p
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                    if U is not None:
                        U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                    if M[i][t]:
                        M[t], M[i] = M[i], M[t]
                        if U is not None:
                            U[t], U[i] = U[i], U[t]
                        changed = True
                        break
            if changed:
                continue
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // p
                    _col_op(M, V, j, t, q)
                    if M[t][j]:
                        _col_swap(M, V, t, j)
                        changed = True
                        break
            if changed:
                continue
            bad = None
            for i in range(t + 1, m):
                if any(x % p for x in M[i][t + 1:]):
                    bad = i
                    break
            if bad is None:
                break
            M[t] = [a + b for a, b in zip(M[t], M[bad])]
            if U is not None:
                U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1


def _snf_diag_colV(K) -> tuple:
    """Smith diagonal and column transform V for K."""
    S = snf(K)
    return S.diagonal, S.V


def elementary_divisors(A) -> list:
    """Nonzero Smith invariants of A (with multiplicity, including 1s)."""
    A = as_int_array(A)
    if A.size == 0:
        return []
    # compress: row echelon, then column echelon of the result
    H = row_basis(A)
    if H.shape[0] == 0:
        return []
    H2 = row_basis(H.T)
    M = to_rows(H2)
    r = len(M)
    _smith(M, r, len(M[0]), None, None)
    return [abs(M[i][i]) for i in range(r) if M[i][i]]


# --------------------------------------------------------- abelian groups

@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        if any(x <= 1 for x in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"non-canonical torsion {t}")
        object.__setattr__(self, "torsion", t)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def count(self, d: int) -> int:
        return sum(1 for t in self.torsion if t == d)

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "AbelianInvariants":
        text = text.strip()
        if text == "0":
            return cls()
        free, tors = 0, []
        for part in text.split("+"):
            part = part.strip()
            if part == "Z":
                free += 1
            elif part.startswith("Z^"):
                free += int(part[2:])
            elif part.startswith("Z/"):
                tors.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse {part!r}")
        return cls(free, tuple(tors))


def cokernel(A, ambient: int | None = None) -> AbelianInvariants:
    """Z^m / (column span of A)."""
    A = as_int_array(A, rows=ambient)
    m = A.shape[0]
    ed = elementary_divisors(A) if A.shape[1] else []
    return AbelianInvariants(m - len(ed), tuple(d for d in ed if d > 1))
