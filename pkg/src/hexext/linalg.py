"""Exact dense linear algebra over Z and Z/m.

Smith normal form with recorded unimodular transforms, linear solving,
kernel computation and canonical coset representatives (via column Hermite
form).  All arithmetic uses Python's arbitrary-precision integers;
intermediate Smith-form entries can grow well past machine width and
overflow would be a correctness bug, not a performance issue.

Z/m computations are reduced to Z computations by lifting matrices to Z and
adjoining ``m * identity`` columns where a relation lattice is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .rings import RingSpec, ZZ, unit_rescaling, xgcd

IntRows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable dense matrix over a :class:`RingSpec`, row-major entries."""

    ring: RingSpec
    rows: int
    cols: int
    data: IntRows

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("matrix data does not match declared shape")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rows(ring: RingSpec, rows: list[list[int]] | IntRows, cols: int | None = None) -> "ExactMatrix":
        nrows = len(rows)
        if nrows == 0:
            if cols is None:
                cols = 0
            return ExactMatrix(ring, 0, cols, ())
        ncols = len(rows[0])
        data = tuple(tuple(ring.reduce(x) for x in r) for r in rows)
        return ExactMatrix(ring, nrows, ncols, data)

    @staticmethod
    def from_cols(ring: RingSpec, cols: list[list[int]], rows: int) -> "ExactMatrix":
        ncols = len(cols)
        data = tuple(
            tuple(ring.reduce(cols[j][i]) for j in range(ncols)) for i in range(rows)
        )
        return ExactMatrix(ring, rows, ncols, data)

    @staticmethod
    def identity(ring: RingSpec, n: int) -> "ExactMatrix":
        return ExactMatrix(ring, n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(ring: RingSpec, rows: int, cols: int) -> "ExactMatrix":
        return ExactMatrix(ring, rows, cols, tuple((0,) * cols for _ in range(rows)))

    # -- access ------------------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        return self.data[i][j]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.data[i][i] for i in range(min(self.rows, self.cols)))

    # -- arithmetic ---------------------------------------------------------

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows or self.ring != other.ring:
            raise ValueError("matrix product shape/ring mismatch")
        if self.cols == 0 or other.cols == 0:
            return ExactMatrix.zeros(self.ring, self.rows, other.cols)
        red = self.ring.reduce
        ocols = list(zip(*other.data))
        out = tuple(
            tuple(red(sum(a * b for a, b in zip(r, c))) for c in ocols)
            for r in self.data
        )
        return ExactMatrix(self.ring, self.rows, other.cols, out)

    def apply(self, vec: tuple[int, ...] | list[int]) -> tuple[int, ...]:
        """Matrix @ column vector."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        red = self.ring.reduce
        return tuple(red(sum(a * b for a, b in zip(r, vec))) for r in self.data)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols, self.ring) != (other.rows, other.cols, other.ring):
            raise ValueError("matrix sum shape/ring mismatch")
        red = self.ring.reduce
        return ExactMatrix(
            self.ring, self.rows, self.cols,
            tuple(tuple(red(a + b) for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)),
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __neg__(self) -> "ExactMatrix":
        red = self.ring.reduce
        return ExactMatrix(self.ring, self.rows, self.cols, tuple(tuple(red(-x) for x in r) for r in self.data))

    def scale(self, c: int) -> "ExactMatrix":
        red = self.ring.reduce
        return ExactMatrix(self.ring, self.rows, self.cols, tuple(tuple(red(c * x) for x in r) for r in self.data))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.ring, self.cols, self.rows, tuple(zip(*self.data)) if self.data else tuple(() for _ in range(self.cols)))

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows or self.ring != other.ring:
            raise ValueError("hstack shape/ring mismatch")
        return ExactMatrix(self.ring, self.rows, self.cols + other.cols,
                           tuple(r1 + r2 for r1, r2 in zip(self.data, other.data)))

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols or self.ring != other.ring:
            raise ValueError("vstack shape/ring mismatch")
        return ExactMatrix(self.ring, self.rows + other.rows, self.cols, self.data + other.data)

    def take_rows(self, lo: int, hi: int) -> "ExactMatrix":
        return ExactMatrix(self.ring, hi - lo, self.cols, self.data[lo:hi])

    def take_cols(self, lo: int, hi: int) -> "ExactMatrix":
        return ExactMatrix(self.ring, self.rows, hi - lo, tuple(r[lo:hi] for r in self.data))

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(x) for x in r) for r in self.data) + "]"


def block_diag(ring: RingSpec, blocks: list[ExactMatrix]) -> ExactMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    i0 = j0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[i0 + i][j0 + j] = b.data[i][j]
        i0 += b.rows
        j0 += b.cols
    return ExactMatrix.from_rows(ring, out, cols)


# ---------------------------------------------------------------------------
# Integer Smith normal form with full transforms
# ---------------------------------------------------------------------------


def _identity_list(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _snf_int_work(a: IntRows, nrows: int, ncols: int):
    """Smith normal form of an integer matrix.

    Returns ``(U, Uinv, D, V, Vinv)`` as lists with ``U @ A @ V == D``,
    U, V unimodular, D diagonal with a divisibility chain and zeros last.
    Pivoting: smallest nonzero absolute value, ties broken by lowest
    (row, column) index, so the output is deterministic.
    """
    d = [list(r) for r in a]
    u = _identity_list(nrows)
    uinv = _identity_list(nrows)
    v = _identity_list(ncols)
    vinv = _identity_list(ncols)

    def swap_rows(i, j):
        if i == j:
            return
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_row(i, j, q):
        # row_i += q * row_j
        if q == 0:
            return
        di, dj = d[i], d[j]
        for k in range(ncols):
            di[k] += q * dj[k]
        ui, uj = u[i], u[j]
        for k in range(nrows):
            ui[k] += q * uj[k]
        for r in uinv:
            r[j] -= q * r[i]

    def add_col(j, i, q):
        # col_j += q * col_i
        if q == 0:
            return
        for r in d:
            r[j] += q * r[i]
        for r in v:
            r[j] += q * r[i]
        vi, vj = vinv[i], vinv[j]
        for k in range(ncols):
            vi[k] -= q * vj[k]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]
        for r in uinv:
            r[i] = -r[i]

    n = min(nrows, ncols)
    t = 0
    while t < n:
        # locate pivot: smallest |entry| != 0 in the trailing submatrix
        best = None
        for i in range(t, nrows):
            di = d[i]
            for j in range(t, ncols):
                x = di[j]
                if x:
                    ax = -x if x < 0 else x
                    if best is None or ax < best[0]:
                        best = (ax, i, j)
        if best is None:
            break
        swap_rows(best[1], t)
        swap_cols(best[2], t)

        while True:
            col_clean = all(d[i][t] == 0 for i in range(t + 1, nrows))
            row_clean = all(d[t][j] == 0 for j in range(t + 1, ncols))
            if col_clean and row_clean:
                break
            if not col_clean:
                # euclidean clearing of column t; remainder swaps shrink the
                # pivot, so this terminates
                for i in range(t + 1, nrows):
                    while d[i][t]:
                        q = d[i][t] // d[t][t]
                        add_row(i, t, -q)
                        if d[i][t]:
                            swap_rows(i, t)
                continue
            for j in range(t + 1, ncols):
                while d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(j, t, -q)
                    if d[t][j]:
                        swap_cols(j, t)
        # enforce divisibility of the remaining block by the pivot
        piv = d[t][t]
        bad = None
        for i in range(t + 1, nrows):
            di = d[i]
            for j in range(t + 1, ncols):
                if di[j] % piv:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(t, bad, 1)
            continue  # redo the clearing at the same t
        if piv < 0:
            negate_row(t)
        t += 1

    to_t = lambda m_: tuple(tuple(r) for r in m_)
    return to_t(u), to_t(uinv), to_t(d), to_t(v), to_t(vinv)


@lru_cache(maxsize=None)
def _snf_int(a: IntRows, nrows: int, ncols: int):
    return _snf_int_work(a, nrows, ncols)


def _rank_of_diag(d: IntRows, nrows: int, ncols: int) -> int:
    r = 0
    for i in range(min(nrows, ncols)):
        if d[i][i]:
            r += 1
        else:
            break
    return r


@dataclass(frozen=True)
class SNFDecomposition:
    """``U @ A @ V == D`` over the matrix ring; U, V invertible, D diagonal
    with divisibility chain ``d1 | d2 | ...`` and zeros last."""

    u: ExactMatrix
    d: ExactMatrix
    v: ExactMatrix
    u_inv: ExactMatrix
    v_inv: ExactMatrix
    source_rows: int
    source_cols: int

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d.diagonal() if x != 0)

    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(x for x in self.d.diagonal() if x != 0)


def snf(a: ExactMatrix) -> SNFDecomposition:
    """Smith normal form over the matrix's own ring.

    Over Z/m the integer Smith form of a lift is computed and the diagonal is
    normalised to ``gcd(d, m)`` by scaling rows of U with units, which keeps
    ``U @ A @ V == D`` and makes D the canonical invariant-factor diagonal of
    the ring.
    """
    u, uinv, d, v, vinv = _snf_int(a.data, a.rows, a.cols)
    ring = a.ring
    if not ring.is_modular:
        mk = lambda t, r, c: ExactMatrix(ZZ, r, c, t)
        return SNFDecomposition(
            mk(u, a.rows, a.rows), mk(d, a.rows, a.cols), mk(v, a.cols, a.cols),
            mk(uinv, a.rows, a.rows), mk(vinv, a.cols, a.cols), a.rows, a.cols,
        )
    m = ring.modulus
    u = [list(r) for r in u]
    uinv = [list(r) for r in uinv]
    d = [list(r) for r in d]
    for i in range(min(a.rows, a.cols)):
        w = unit_rescaling(d[i][i], m)
        if w != 1:
            winv = pow(w, -1, m)
            u[i] = [x * w for x in u[i]]
            d[i] = [x * w for x in d[i]]
            for r in uinv:
                r[i] = r[i] * winv
    mk = lambda t, r, c: ExactMatrix.from_rows(ring, t, c)
    return SNFDecomposition(
        mk(u, a.rows, a.rows), mk(d, a.rows, a.cols), mk(v, a.cols, a.cols),
        mk(uinv, a.rows, a.rows), mk(vinv, a.cols, a.cols), a.rows, a.cols,
    )


# ---------------------------------------------------------------------------
# Solving and kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearSolution:
    """A particular solution of ``A x = b`` together with generators of the
    solution space of ``A x = 0`` (columns of ``kernel``)."""

    x: tuple[int, ...]
    kernel: ExactMatrix


def _lifted(a: ExactMatrix) -> tuple[IntRows, int, int]:
    """Integer lift; over Z/m the columns ``m * e_i`` are adjoined so that
    solvability over Z of the lift matches solvability mod m."""
    if not a.ring.is_modular:
        return a.data, a.rows, a.cols
    m = a.ring.modulus
    data = tuple(
        tuple(a.data[i]) + tuple(m if j == i else 0 for j in range(a.rows))
        for i in range(a.rows)
    )
    return data, a.rows, a.cols + a.rows


def _solve_int(data: IntRows, nrows: int, ncols: int, b: tuple[int, ...]):
    u, _uinv, d, v, _vinv = _snf_int(data, nrows, ncols)
    rank = _rank_of_diag(d, nrows, ncols)
    c = [sum(u[i][k] * b[k] for k in range(nrows)) for i in range(nrows)]
    y = [0] * ncols
    for i in range(rank):
        q, r = divmod(c[i], d[i][i])
        if r:
            return None
        y[i] = q
    for i in range(rank, nrows):
        if c[i]:
            return None
    return tuple(sum(v[i][k] * y[k] for k in range(ncols)) for i in range(ncols))


def _kernel_int(data: IntRows, nrows: int, ncols: int) -> list[tuple[int, ...]]:
    _u, _uinv, d, v, _vinv = _snf_int(data, nrows, ncols)
    rank = _rank_of_diag(d, nrows, ncols)
    return [tuple(v[i][j] for i in range(ncols)) for j in range(rank, ncols)]


def solve_linear(a: ExactMatrix, b: tuple[int, ...] | list[int]) -> LinearSolution | None:
    """Solve ``A x = b`` over the matrix's ring; ``None`` when unsolvable."""
    if len(b) != a.rows:
        raise ValueError("right-hand side length mismatch")
    data, nr, nc = _lifted(a)
    x = _solve_int(data, nr, nc, tuple(int(t) for t in b))
    if x is None:
        return None
    red = a.ring.reduce
    return LinearSolution(tuple(red(t) for t in x[: a.cols]), kernel_columns(a))


def solve_canonical(a: ExactMatrix, b: tuple[int, ...] | list[int]) -> tuple[int, ...] | None:
    """The canonical solution of ``A x = b``: a particular solution reduced to
    the canonical representative of its coset modulo the solution lattice of
    ``A x = 0``.  Deterministic and independent of elimination internals."""
    sol = solve_linear(a, b)
    if sol is None:
        return None
    if sol.kernel.cols == 0 and not a.ring.is_modular:
        return sol.x
    return reduce_mod_lattice(sol.x, sol.kernel)


def kernel_columns(a: ExactMatrix) -> ExactMatrix:
    """Columns generating ``{x : A x = 0}`` over the ring.

    Over Z the columns form a lattice basis; over Z/m they are a generating
    set (projections of an integer kernel basis of the lifted matrix).
    Zero and duplicate columns are dropped; order is deterministic.
    """
    data, nr, nc = _lifted(a)
    cols = _kernel_int(data, nr, nc)
    red = a.ring.reduce
    seen = set()
    out = []
    for cvec in cols:
        c = tuple(red(t) for t in cvec[: a.cols])
        if any(c) and c not in seen:
            seen.add(c)
            out.append(c)
    out.sort(key=lambda c: (sum(1 for t in c if t), c))
    return ExactMatrix.from_cols(a.ring, [list(c) for c in out], a.cols)


def shrink_generators(a: ExactMatrix) -> ExactMatrix:
    """Drop columns lying in the span of the columns kept so far.

    Greedy and deterministic; used to keep presentations and kernel
    generating sets small before they feed into resolutions.
    """
    kept: list[list[int]] = []
    for j in range(a.cols):
        c = a.col(j)
        if not any(c):
            continue
        if kept:
            m = ExactMatrix.from_cols(a.ring, kept, a.rows)
            if solve_linear(m, c) is not None:
                continue
        kept.append(list(c))
    return ExactMatrix.from_cols(a.ring, kept, a.rows)


# ---------------------------------------------------------------------------
# Canonical coset representatives (column Hermite form)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _hermite_cols(data: IntRows, nrows: int, ncols: int):
    """Canonical column Hermite form of the lattice spanned by the columns.

    Returns a list of pivot columns ``(pivot_row, column)`` with strictly
    increasing pivot rows, positive pivots, and entries below each pivot row
    reduced modulo the later pivots.
    """
    cols = [[data[i][j] for i in range(nrows)] for j in range(ncols)]
    cols = [c for c in cols if any(c)]
    pivots: list[tuple[int, list[int]]] = []
    p = 0
    for row in range(nrows):
        idxs = [k for k in range(p, len(cols)) if cols[k][row] != 0]
        if not idxs:
            continue
        # combine all candidate columns into a single gcd pivot column
        k0 = idxs[0]
        for k in idxs[1:]:
            a_, b_ = cols[k0][row], cols[k][row]
            g, x, y = xgcd(a_, b_)
            aa, bb = a_ // g, b_ // g
            c0, ck = cols[k0], cols[k]
            for i in range(row, nrows):
                s, t = c0[i], ck[i]
                c0[i] = x * s + y * t
                ck[i] = -bb * s + aa * t
        if cols[k0][row] < 0:
            cols[k0] = [-x for x in cols[k0]]
        cols[p], cols[k0] = cols[k0], cols[p]
        piv = cols[p][row]
        for k in range(len(cols)):
            if k != p and cols[k][row]:
                q = cols[k][row] // piv
                ck, cp = cols[k], cols[p]
                for i in range(row, nrows):
                    ck[i] -= q * cp[i]
        pivots.append((row, cols[p]))
        p += 1
        if p == len(cols):
            break
    # fully reduce entries of earlier pivot columns against later pivots
    for a_idx in range(len(pivots)):
        for b_idx in range(a_idx + 1, len(pivots)):
            row_b, col_b = pivots[b_idx]
            piv_b = col_b[row_b]
            col_a = pivots[a_idx][1]
            q = col_a[row_b] // piv_b
            if q:
                for i in range(row_b, nrows):
                    col_a[i] -= q * col_b[i]
    return tuple((r, tuple(c)) for r, c in pivots)


def reduce_mod_lattice(vec: tuple[int, ...] | list[int], lattice: ExactMatrix) -> tuple[int, ...]:
    """Canonical representative of ``vec`` modulo the integer column lattice.

    For Z/m matrices the lattice is lifted with ``m * identity`` columns
    first, so representatives are canonical mod m as well.
    """
    data, nr, nc = _lifted(lattice)
    if len(vec) != nr:
        raise ValueError("vector length mismatch")
    pivots = _hermite_cols(data, nr, nc)
    v = [int(t) for t in vec]
    for row, col in pivots:
        q = v[row] // col[row]
        if q:
            for i in range(row, nr):
                v[i] -= q * col[i]
    red = lattice.ring.reduce
    return tuple(red(t) for t in v)


def lattice_pivot_profile(lattice: ExactMatrix) -> tuple[tuple[int, int], ...]:
    """Pivot (row, value) pairs of the canonical Hermite form; the canonical
    representatives produced by :func:`reduce_mod_lattice` range over
    ``0 <= v[row] < value`` at the pivot rows and are unconstrained elsewhere
    (over Z) -- everything over Z/m has full pivot structure."""
    data, nr, nc = _lifted(lattice)
    pivots = _hermite_cols(data, nr, nc)
    return tuple((r, c[r]) for r, c in pivots)


def determinant(a: ExactMatrix) -> int:
    """Exact determinant (Bareiss fraction-free elimination); square only."""
    if a.rows != a.cols:
        raise ValueError("determinant of non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m_ = [list(r) for r in a.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m_[k][k] == 0:
            for i in range(k + 1, n):
                if m_[i][k]:
                    m_[k], m_[i] = m_[i], m_[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m_[i][j] = (m_[i][j] * m_[k][k] - m_[i][k] * m_[k][j]) // prev
        prev = m_[k][k]
    det = sign * m_[n - 1][n - 1]
    return a.ring.reduce(det)
