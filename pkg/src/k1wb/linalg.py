"""Exact linear algebra over the integers and over prime fields.

Everything here is deterministic and works on Python integers, so there is
no overflow.  Matrices are immutable; the algorithms copy the entries into
lists of rows, work in place, and wrap the result again.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class BaseRing:
    """The integers (``modulus is None``) or the prime field of order ``modulus``."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and not _is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")

    @property
    def kind(self) -> str:
        return "Integers" if self.modulus is None else "PrimeField"

    @property
    def is_field(self) -> bool:
        return self.modulus is not None

    def reduce(self, x: int) -> int:
        return x if self.modulus is None else x % self.modulus

    def is_unit(self, x: int) -> bool:
        if self.modulus is None:
            return x in (1, -1)
        return x % self.modulus != 0

    def inverse(self, x: int) -> int:
        if not self.is_unit(x):
            raise ZeroDivisionError(f"{x} is not a unit in {self}")
        if self.modulus is None:
            return x
        return pow(x, -1, self.modulus)

    def __str__(self) -> str:
        return "Z" if self.modulus is None else f"GF({self.modulus})"


ZZ = BaseRing()


def GF(p: int) -> BaseRing:
    return BaseRing(p)


@dataclass(frozen=True)
class Matrix:
    ring: BaseRing
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")
        p = self.ring.modulus
        if p is not None and any(not 0 <= e < p for e in self.entries):
            object.__setattr__(self, "entries", tuple(e % p for e in self.entries))

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, ring: BaseRing, rows: Sequence[Sequence[int]],
                  cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionError("column count needed for a matrix with no rows")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged rows")
        return cls(ring, len(rows), cols, tuple(int(e) for r in rows for e in r))

    @classmethod
    def zero(cls, ring: BaseRing, rows: int, cols: int) -> Matrix:
        return cls(ring, rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, ring: BaseRing, n: int) -> Matrix:
        e = [0] * (n * n)
        for i in range(n):
            e[i * n + i] = 1
        return cls(ring, n, n, tuple(e))

    @classmethod
    def diagonal(cls, ring: BaseRing, diag: Sequence[int]) -> Matrix:
        n = len(diag)
        e = [0] * (n * n)
        for i, d in enumerate(diag):
            e[i * n + i] = d
        return cls(ring, n, n, tuple(e))

    # -- access -------------------------------------------------------------

    def tolists(self) -> list[list[int]]:
        c = self.cols
        e = self.entries
        return [list(e[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def column(self, j: int) -> list[int]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        return _transpose(self.tolists(), self.cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other: Matrix):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check_ring(other)
        if self.cols != other.cols and self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = _mul(self.tolists(), other.tolists(), other.cols)
        return Matrix._wrap(self.ring, out, self.rows, other.cols)

    def __add__(self, other: Matrix) -> Matrix:
        self._check_ring(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.ring, self.rows, self.cols,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_ring(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix(self.ring, self.rows, self.cols,
                      tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> Matrix:
        return Matrix(self.ring, self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c: int) -> Matrix:
        return Matrix(self.ring, self.rows, self.cols, tuple(c * a for a in self.entries))

    def transpose(self) -> Matrix:
        return Matrix._wrap(self.ring, _transpose(self.tolists(), self.cols),
                            self.cols, self.rows)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> Matrix:
        rows = [r[c0:c1] for r in self.tolists()[r0:r1]]
        return Matrix._wrap(self.ring, rows, r1 - r0, c1 - c0)

    def reduced(self) -> Matrix:
        return self

    @staticmethod
    def _wrap(ring: BaseRing, rows: list[list[int]], nrows: int, ncols: int) -> Matrix:
        return Matrix(ring, nrows, ncols, tuple(e for r in rows for e in r))

    def __repr__(self) -> str:
        return f"Matrix({self.ring}, {self.tolists() if self.rows else f'0x{self.cols}'})"


def hstack(ring: BaseRing, rows: int, *blocks: Matrix) -> Matrix:
    """Concatenate side by side; ``rows`` fixes the height when there are no blocks."""
    for b in blocks:
        if b.rows != rows:
            raise DimensionError(f"hstack: block with {b.rows} rows, expected {rows}")
    lists = [b.tolists() for b in blocks]
    out = [[e for bl in lists for e in bl[i]] for i in range(rows)]
    return Matrix._wrap(ring, out, rows, sum(b.cols for b in blocks))


def vstack(ring: BaseRing, cols: int, *blocks: Matrix) -> Matrix:
    for b in blocks:
        if b.cols != cols:
            raise DimensionError(f"vstack: block with {b.cols} cols, expected {cols}")
    return Matrix(ring, sum(b.rows for b in blocks), cols,
                  tuple(e for b in blocks for e in b.entries))


def block_matrix(ring: BaseRing, row_sizes: Sequence[int], col_sizes: Sequence[int],
                 blocks: Sequence[Sequence[Matrix | int | None]]) -> Matrix:
    """Assemble a block matrix.  ``None`` or ``0`` is a zero block, ``1`` an identity."""
    out = []
    for bi, rs in enumerate(row_sizes):
        band = [[] for _ in range(rs)]
        for bj, cs in enumerate(col_sizes):
            b = blocks[bi][bj]
            if b is None or (isinstance(b, int) and b == 0):
                for r in band:
                    r.extend([0] * cs)
            elif isinstance(b, int):
                if rs != cs:
                    raise DimensionError("scalar block must be square")
                for i, r in enumerate(band):
                    r.extend(b if j == i else 0 for j in range(cs))
            else:
                if b.shape != (rs, cs):
                    raise DimensionError(
                        f"block ({bi},{bj}) has shape {b.shape}, expected {(rs, cs)}")
                for r, src in zip(band, b.tolists()):
                    r.extend(src)
        out.extend(band)
    return Matrix._wrap(ring, out, sum(row_sizes), sum(col_sizes))


def block_diag(ring: BaseRing, *blocks: Matrix) -> Matrix:
    rs = [b.rows for b in blocks]
    cs = [b.cols for b in blocks]
    grid = [[blocks[i] if i == j else None for j in range(len(blocks))]
            for i in range(len(blocks))]
    return block_matrix(ring, rs, cs, grid)


# ---------------------------------------------------------------------------
# list-of-rows kernels

def _transpose(rows: list[list[int]], ncols: int) -> list[list[int]]:
    if not rows:
        return [[] for _ in range(ncols)]
    return [list(c) for c in zip(*rows)]


def _mul(a: list[list[int]], b: list[list[int]], bcols: int) -> list[list[int]]:
    bt = _transpose(b, bcols)
    return [[sum(x * y for x, y in zip(ra, cb)) for cb in bt] for ra in a]


def _ident(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(x, y, g)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


# ---------------------------------------------------------------------------
# Smith normal form

@dataclass(frozen=True)
class SnfDecomposition:
    U: Matrix
    D: Matrix
    V: Matrix
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.divisors)


def snf(A: Matrix) -> SnfDecomposition:
    """Smith normal form with transforms: ``U @ A @ V == D``."""
    m, n = A.rows, A.cols
    D = A.tolists()
    U = _ident(m)
    # V is kept transposed so column operations become row operations
    Vt = _ident(n)
    p = A.ring.modulus
    if p is None:
        r = _snf_int(D, U, Vt, m, n)
    else:
        r = _snf_field(D, U, Vt, m, n, p)
    ring = A.ring
    divisors = tuple(D[i][i] for i in range(r))
    return SnfDecomposition(
        Matrix._wrap(ring, U, m, m),
        Matrix._wrap(ring, D, m, n),
        Matrix._wrap(ring, _transpose(Vt, n), n, n),
        divisors)


def _swap_cols(D, Vt, j1, j2):
    if j1 == j2:
        return
    for row in D:
        row[j1], row[j2] = row[j2], row[j1]
    Vt[j1], Vt[j2] = Vt[j2], Vt[j1]


def _smallest(D, t, m, n):
    best = None
    bi = bj = -1
    for i in range(t, m):
        row = D[i]
        for j in range(t, n):
            v = row[j]
            if v:
                a = v if v > 0 else -v
                if best is None or a < best:
                    best, bi, bj = a, i, j
                    if a == 1:
                        return bi, bj
    return (bi, bj) if best is not None else None


def _snf_int(D, U, Vt, m, n) -> int:
    t = 0
    while t < min(m, n):
        loc = _smallest(D, t, m, n)
        if loc is None:
            break
        i, j = loc
        D[t], D[i] = D[i], D[t]
        U[t], U[i] = U[i], U[t]
        _swap_cols(D, Vt, t, j)
        while True:
            piv = D[t][t]
            dirty = False
            rowt = D[t]
            for i in range(t + 1, m):
                v = D[i][t]
                if v:
                    q = v // piv
                    Di, Ui, Ut = D[i], U[i], U[t]
                    for k in range(t, n):
                        Di[k] -= q * rowt[k]
                    for k in range(m):
                        Ui[k] -= q * Ut[k]
                    if Di[t]:
                        dirty = True
            Vtt = Vt[t]
            for j in range(t + 1, n):
                v = rowt[j]
                if v:
                    q = v // piv
                    for i in range(t, m):
                        Di = D[i]
                        Di[j] -= q * Di[t]
                    Vj = Vt[j]
                    for k in range(n):
                        Vj[k] -= q * Vtt[k]
                    if rowt[j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot survived; move it into place
                best, bi, bj = None, t, t
                for i in range(t + 1, m):
                    v = abs(D[i][t])
                    if v and (best is None or v < best):
                        best, bi, bj = v, i, t
                for j in range(t + 1, n):
                    v = abs(rowt[j])
                    if v and (best is None or v < best):
                        best, bi, bj = v, t, j
                if bi != t:
                    D[t], D[bi] = D[bi], D[t]
                    U[t], U[bi] = U[bi], U[t]
                    rowt = D[t]
                if bj != t:
                    _swap_cols(D, Vt, t, bj)
                continue
            # pivot row and column are clear; enforce divisibility of the rest
            bad = None
            for i in range(t + 1, m):
                Di = D[i]
                for j in range(t + 1, n):
                    if Di[j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            Db, Ub, Ut = D[bad], U[bad], U[t]
            for k in range(t, n):
                rowt[k] += Db[k]
            for k in range(m):
                Ut[k] += Ub[k]
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return t


def _snf_field(D, U, Vt, m, n, p) -> int:
    t = 0
    while t < min(m, n):
        loc = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] % p:
                    loc = (i, j)
                    break
            if loc:
                break
        if loc is None:
            break
        i, j = loc
        D[t], D[i] = D[i], D[t]
        U[t], U[i] = U[i], U[t]
        _swap_cols(D, Vt, t, j)
        inv = pow(D[t][t], -1, p)
        D[t] = [x * inv % p for x in D[t]]
        U[t] = [x * inv % p for x in U[t]]
        rowt, Ut = D[t], U[t]
        for i in range(t + 1, m):
            v = D[i][t]
            if v:
                Di, Ui = D[i], U[i]
                for k in range(t, n):
                    Di[k] = (Di[k] - v * rowt[k]) % p
                for k in range(m):
                    Ui[k] = (Ui[k] - v * Ut[k]) % p
        Vtt = Vt[t]
        for j in range(t + 1, n):
            v = rowt[j]
            if v:
                for i in range(t, m):
                    Di = D[i]
                    Di[j] = (Di[j] - v * Di[t]) % p
                Vj = Vt[j]
                for k in range(n):
                    Vj[k] = (Vj[k] - v * Vtt[k]) % p
        t += 1
    return t


# ---------------------------------------------------------------------------
# column Hermite form

@dataclass(frozen=True)
class _Echelon:
    """Column echelon data: ``H = A @ V``; ``pivots[k]`` is the pivot row of column k."""
    Ht: list  # columns of H
    Vt: list  # columns of V
    pivots: list


def _round_div(b: int, a: int) -> int:
    """Nearest integer to b / a (a nonzero)."""
    if a < 0:
        a, b = -a, -b
    return (2 * b + a) // (2 * a)


def _axpy(dst: list, src: list, q: int, lo: int = 0):
    for k in range(lo, len(dst)):
        dst[k] -= q * src[k]


def _echelon(A: Matrix, track: bool = True) -> _Echelon:
    """Column echelon form by column operations.

    Over Z each pivot row is cleared Euclid-style: the column holding the
    smallest nonzero entry is moved into pivot position and the others are
    reduced by rounded quotients, which keeps entry growth modest.  With
    ``track=False`` the transform V is not maintained.
    """
    m, n = A.rows, A.cols
    Ht = A.columns()
    Vt = _ident(n) if track else None
    p = A.ring.modulus
    pivots = []
    c = 0
    for r in range(m):
        if c >= n:
            break
        if p is None:
            while True:
                best = None
                for j in range(c, n):
                    v = Ht[j][r]
                    if v and (best is None or abs(v) < abs(Ht[best][r])):
                        best = j
                if best is None:
                    break
                if best != c:
                    Ht[c], Ht[best] = Ht[best], Ht[c]
                    if track:
                        Vt[c], Vt[best] = Vt[best], Vt[c]
                a = Ht[c][r]
                done = True
                hc = Ht[c]
                for j in range(c + 1, n):
                    b = Ht[j][r]
                    if not b:
                        continue
                    q = _round_div(b, a)
                    if q:
                        _axpy(Ht[j], hc, q, r)
                        if track:
                            _axpy(Vt[j], Vt[c], q)
                    if Ht[j][r]:
                        done = False
                if done:
                    break
            piv = Ht[c][r]
            if piv == 0:
                continue
            if piv < 0:
                Ht[c] = [-u for u in Ht[c]]
                if track:
                    Vt[c] = [-u for u in Vt[c]]
                piv = -piv
            hc = Ht[c]
            for j in range(c):
                q = Ht[j][r] // piv
                if q:
                    _axpy(Ht[j], hc, q, r)
                    if track:
                        _axpy(Vt[j], Vt[c], q)
        else:
            piv_j = None
            for j in range(c, n):
                if Ht[j][r] % p:
                    piv_j = j
                    break
            if piv_j is None:
                continue
            Ht[c], Ht[piv_j] = Ht[piv_j], Ht[c]
            if track:
                Vt[c], Vt[piv_j] = Vt[piv_j], Vt[c]
            inv = pow(Ht[c][r], -1, p)
            Ht[c] = [u * inv % p for u in Ht[c]]
            if track:
                Vt[c] = [u * inv % p for u in Vt[c]]
            hc = Ht[c]
            vc = Vt[c] if track else None
            for j in range(n):
                if j == c:
                    continue
                q = Ht[j][r] % p
                if q:
                    Ht[j] = [(u - q * w) % p for u, w in zip(Ht[j], hc)]
                    if track:
                        Vt[j] = [(u - q * w) % p for u, w in zip(Vt[j], vc)]
        pivots.append(r)
        c += 1
    return _Echelon(Ht, Vt, pivots)


def hnf(A: Matrix) -> tuple[Matrix, Matrix]:
    """Column Hermite normal form ``(H, V)`` with ``H == A @ V`` and V unimodular.

    H is column echelon: column k has its first nonzero entry (the pivot,
    positive) strictly below that of column k-1, and the entries to the left
    of a pivot lie in ``[0, pivot)``.  Over a prime field the pivots are 1 and
    the other entries of a pivot row vanish.
    """
    e = _echelon(A)
    H = Matrix._wrap(A.ring, _transpose(e.Ht, A.rows), A.rows, A.cols)
    V = Matrix._wrap(A.ring, _transpose(e.Vt, A.cols), A.cols, A.cols)
    return H, V


def rank(A: Matrix) -> int:
    return len(_echelon(A, track=False).pivots)


def kernel_basis(A: Matrix) -> Matrix:
    """Columns generating ``{x : A x = 0}``; over Z an LLL-reduced basis of the lattice."""
    e = _echelon(A)
    r = len(e.pivots)
    n = A.cols
    cols = e.Vt[r:]
    if A.ring.modulus is None and len(cols) > 1:
        cols = lll_reduce(cols)
    return Matrix._wrap(A.ring, _transpose(cols, n), n, n - r)


def _dot(u: list, v: list) -> int:
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(basis: list[list[int]]) -> list[list[int]]:
    """LLL reduction (delta = 3/4) of linearly independent integer vectors.

    Integral version: all Gram-Schmidt data is kept as the integers
    d_i (Gram determinants) and lambda_ij = d_j mu_ij, so no fractions occur.
    Returns new vectors spanning the same lattice.
    """
    b = [list(v) for v in basis]
    n = len(b)
    if n <= 1:
        return b
    d = [0] * (n + 1)      # d[i] is the Gram determinant of the first i vectors
    lam = [[0] * n for _ in range(n)]
    d[0] = 1
    d[1] = _dot(b[0], b[0])
    if d[1] == 0:
        raise ValueError("vectors are not independent")
    k, kmax = 1, 0

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = _round_div(lam[k][l], d[l + 1])
            _axpy(b[k], b[l], q)
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + lm * lm) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lm * t) // d[k]
            lam[i][k - 1] = (B * t + lm * lam[i][k]) // d[k + 1]
        d[k] = B

    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = _dot(b[k], b[j])
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise ValueError("vectors are not independent")
                    d[k + 1] = u
        red(k, k - 1)
        if 4 * d[k + 1] * d[k - 1] < 3 * d[k] * d[k] - 4 * lam[k][k - 1] ** 2:
            swap(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return b


def column_basis(A: Matrix) -> Matrix:
    """Canonical basis (the nonzero Hermite columns) of the column span of A."""
    e = _echelon(A, track=False)
    r = len(e.pivots)
    return Matrix._wrap(A.ring, _transpose(e.Ht[:r], A.rows), A.rows, r)


def _solve_echelon(e: _Echelon, b: list[int], m: int, p: int | None):
    y = []
    res = list(b)
    for k, r in enumerate(e.pivots):
        h = e.Ht[k]
        v = res[r]
        if p is None:
            if v % h[r]:
                return None
            q = v // h[r]
            if q:
                for i in range(r, m):
                    res[i] -= q * h[i]
        else:
            q = v % p
            if q:
                for i in range(r, m):
                    res[i] = (res[i] - q * h[i]) % p
        y.append(q)
    if p is None:
        if any(res):
            return None
    elif any(x % p for x in res):
        return None
    return y


def solve_matrix(A: Matrix, B: Matrix) -> Matrix | None:
    """Some X with ``A @ X == B`` exactly, or None when there is no solution."""
    if A.rows != B.rows:
        raise DimensionError(f"solve: A has {A.rows} rows, B has {B.rows}")
    A._check_ring(B)
    e = _echelon(A)
    return _solve_with(e, A, B)


def _solve_with(e: _Echelon, A: Matrix, B: Matrix) -> Matrix | None:
    m, n = A.rows, A.cols
    p = A.ring.modulus
    xs = []
    r = len(e.pivots)
    for b in B.columns():
        y = _solve_echelon(e, b, m, p)
        if y is None:
            return None
        x = [0] * n
        for q, vcol in zip(y, e.Vt[:r]):
            if q:
                for i in range(n):
                    x[i] += q * vcol[i]
        xs.append(x)
    return Matrix._wrap(A.ring, _transpose(xs, n), n, B.cols)


def _solve_square_int(A: Matrix, B: Matrix) -> tuple[bool, Matrix | None]:
    """Fraction-free Gauss-Jordan solve of a square integer system.

    Returns (False, None) when A is singular (the caller falls back to the
    echelon route), otherwise (True, X) with X the integer solution or None
    when the rational solution is not integral.  After elimination every
    diagonal entry equals d = ±det(A) and the right block is d·A⁻¹B.
    """
    n, k = A.rows, B.cols
    M = [ra + rb for ra, rb in zip(A.tolists(), B.tolists())]
    w = n + k
    prev = 1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if M[i][c]:
                if piv is None or abs(M[i][c]) < abs(M[piv][c]):
                    piv = i
        if piv is None:
            return False, None
        M[c], M[piv] = M[piv], M[c]
        rc = M[c]
        pc = rc[c]
        for i in range(n):
            if i == c:
                continue
            ri = M[i]
            f = ri[c]
            for j in range(c + 1, w):
                ri[j] = (pc * ri[j] - f * rc[j]) // prev
            if i < c:
                ri[i] = pc  # rows already processed carry the current pivot on the diagonal
            ri[c] = 0
        prev = pc
    d = prev
    X = []
    for i in range(n):
        if M[i][i] != d:
            raise AssertionError("fraction-free elimination lost its diagonal")
        row = []
        for j in range(n, w):
            q, r = divmod(M[i][j], d)
            if r:
                return True, None
            row.append(q)
        X.append(row)
    return True, Matrix._wrap(A.ring, X, n, k)


class Solver:
    """Reusable factorisation of A for repeated right-hand sides.

    Square nonsingular integer systems are solved by fraction-free
    elimination, which avoids the coefficient growth of the unimodular
    transform; everything else goes through the column echelon form.
    """

    def __init__(self, A: Matrix):
        self.A = A
        self._echelon_cache = None
        self._square = A.ring.modulus is None and A.rows == A.cols and A.rows > 0

    @property
    def _e(self) -> _Echelon:
        if self._echelon_cache is None:
            self._echelon_cache = _echelon(self.A)
        return self._echelon_cache

    @property
    def rank(self) -> int:
        return len(self._e.pivots)

    def solve(self, B: Matrix) -> Matrix | None:
        if B.rows != self.A.rows:
            raise DimensionError("solve: row mismatch")
        if self._square:
            ok, X = _solve_square_int(self.A, B)
            if ok:
                return X
            self._square = False
        return _solve_with(self._e, self.A, B)

    def spans_everything(self) -> bool:
        """True when the columns of A generate the whole ambient module."""
        e = self._e
        if len(e.pivots) != self.A.rows:
            return False
        return all(e.Ht[k][r] == 1 for k, r in enumerate(e.pivots))


def column_span_membership(A: Matrix, b: Matrix | Sequence[int]) -> bool:
    if not isinstance(b, Matrix):
        b = Matrix.from_rows(A.ring, [[x] for x in b], 1)
    return solve_matrix(A, b) is not None


# ---------------------------------------------------------------------------
# determinants

def det(A: Matrix) -> int:
    if not A.is_square():
        raise DimensionError(f"determinant of a non-square {A.rows}x{A.cols} matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.tolists()
    p = A.ring.modulus
    if p is not None:
        return _det_field(M, n, p)
    return _det_bareiss(M, n)


def _det_bareiss(M, n) -> int:
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        mk = M[k]
        akk = mk[k]
        for i in range(k + 1, n):
            mi = M[i]
            aik = mi[k]
            for j in range(k + 1, n):
                mi[j] = (mi[j] * akk - aik * mk[j]) // prev
        prev = akk
    return sign * M[n - 1][n - 1]


def _det_field(M, n, p) -> int:
    d = 1
    for k in range(n):
        piv = None
        for i in range(k, n):
            if M[i][k] % p:
                piv = i
                break
        if piv is None:
            return 0
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            d = -d
        akk = M[k][k] % p
        d = d * akk % p
        inv = pow(akk, -1, p)
        mk = M[k]
        for i in range(k + 1, n):
            f = M[i][k] * inv % p
            if f:
                mi = M[i]
                for j in range(k, n):
                    mi[j] = (mi[j] - f * mk[j]) % p
    return d % p


def is_unimodular(A: Matrix) -> bool:
    if not A.is_square():
        return False
    return A.ring.is_unit(det(A))


def inverse(A: Matrix) -> Matrix:
    if not A.is_square():
        raise DimensionError("inverse of a non-square matrix")
    X = solve_matrix(A, Matrix.identity(A.ring, A.rows))
    if X is None:
        raise ZeroDivisionError("matrix is not invertible over its ring")
    return X


def as_column(ring: BaseRing, xs: Iterable[int]) -> Matrix:
    xs = list(xs)
    return Matrix(ring, len(xs), 1, tuple(xs))
