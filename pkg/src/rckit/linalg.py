"""Exact linear algebra over the small finite fields.

Vectors are tuples of element indices, matrices are flat row-major tuples.
Subspaces are always held in reduced row echelon form, so two subspaces are
equal exactly when their SubspaceBasis values are equal.  Row reduction has
two interchangeable implementations: a generic table-driven one and a packed
integer-bitset one for F_2 (rows become Python ints, elimination becomes XOR).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .errors import MixedFields, ShapeMismatch
from .field import FieldSpec

Vec = tuple[int, ...]


# ---------------------------------------------------------------------------
# row reduction


def _pack(v) -> int:
    bits = 0
    for j, x in enumerate(v):
        if x:
            bits |= 1 << j
    return bits


def _unpack(bits: int, width: int) -> Vec:
    return tuple((bits >> j) & 1 for j in range(width))


class Gf2Accumulator:
    """Incremental reduced row echelon form over F_2 on packed-int rows."""

    def __init__(self, width: int):
        self.width = width
        self.piv: dict[int, int] = {}  # pivot column -> packed row

    def add(self, row: int) -> bool:
        """Fold one packed row in; return True when the rank grows."""
        piv = self.piv
        while row:
            c = (row & -row).bit_length() - 1
            if c in piv:
                row ^= piv[c]
            else:
                # clear higher pivot columns from the new row, then clear the
                # new pivot column from the existing rows
                for c2, r2 in piv.items():
                    if (row >> c2) & 1:
                        row ^= r2
                for c2, r2 in piv.items():
                    if (r2 >> c) & 1:
                        piv[c2] = r2 ^ row
                piv[c] = row
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.piv)

    def rows_pivots(self) -> tuple[list[int], list[int]]:
        cols = sorted(self.piv)
        return [self.piv[c] for c in cols], cols


class GenericAccumulator:
    """Incremental reduced row echelon form via field lookup tables."""

    def __init__(self, field: FieldSpec, width: int):
        self.field = field
        self.width = width
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def add(self, row) -> bool:
        f = self.field
        mul, sub = f.mul, f.sub
        v = list(row)
        for r, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [sub(v[j], mul(c, r[j])) for j in range(self.width)]
        p = next((j for j, x in enumerate(v) if x), None)
        if p is None:
            return False
        s = f.inv(v[p])
        if s != 1:
            v = [mul(s, x) for x in v]
        for i, r in enumerate(self.rows):
            c = r[p]
            if c:
                self.rows[i] = [sub(r[j], mul(c, v[j])) for j in range(self.width)]
        self.rows.append(v)
        self.pivots.append(p)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def rows_pivots(self) -> tuple[list[list[int]], list[int]]:
        order = sorted(range(len(self.pivots)), key=self.pivots.__getitem__)
        return [self.rows[i] for i in order], sorted(self.pivots)


def make_accumulator(field: FieldSpec, width: int, force_generic: bool = False):
    if field.q == 2 and not force_generic:
        return Gf2Accumulator(width)
    return GenericAccumulator(field, width)


def echelonize(field: FieldSpec, vectors, width: int, force_generic: bool = False):
    """Reduced row echelon form of a list of vectors.

    Returns (rows, pivots) with rows as tuples, zero rows dropped, pivot
    columns strictly increasing: the canonical basis of the span.
    """
    acc = make_accumulator(field, width, force_generic)
    if isinstance(acc, Gf2Accumulator):
        for v in vectors:
            acc.add(_pack(v))
        rows, pivots = acc.rows_pivots()
        return [_unpack(r, width) for r in rows], list(pivots)
    for v in vectors:
        acc.add(v)
    rows, pivots = acc.rows_pivots()
    return [tuple(r) for r in rows], list(pivots)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True, slots=True)
class SubspaceBasis:
    """Canonical (RREF) basis of a subspace of K^ambient_dim."""

    field: FieldSpec
    ambient_dim: int
    vectors: tuple[Vec, ...]
    pivots: tuple[int, ...]

    @staticmethod
    def from_vectors(field: FieldSpec, ambient_dim: int, vectors) -> "SubspaceBasis":
        for v in vectors:
            if len(v) != ambient_dim:
                raise ShapeMismatch(f"vector of length {len(v)} in K^{ambient_dim}")
        rows, pivots = echelonize(field, vectors, ambient_dim)
        return SubspaceBasis(field, ambient_dim, tuple(rows), tuple(pivots))

    @staticmethod
    def zero(field: FieldSpec, ambient_dim: int) -> "SubspaceBasis":
        return SubspaceBasis(field, ambient_dim, (), ())

    @staticmethod
    def full(field: FieldSpec, ambient_dim: int) -> "SubspaceBasis":
        rows = tuple(
            tuple(1 if j == i else 0 for j in range(ambient_dim))
            for i in range(ambient_dim)
        )
        return SubspaceBasis(field, ambient_dim, rows, tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def coords_of(self, v) -> Vec | None:
        """Coefficients of v in this basis, or None when v is outside."""
        if len(v) != self.ambient_dim:
            raise ShapeMismatch("vector length does not match ambient dimension")
        f = self.field
        coeffs = tuple(v[p] for p in self.pivots)
        rem = list(v)
        for c, row in zip(coeffs, self.vectors):
            if c:
                rem = [f.sub(rem[j], f.mul(c, row[j])) for j in range(len(rem))]
        if any(rem):
            return None
        return coeffs

    def member(self, v) -> bool:
        return self.coords_of(v) is not None

    def contains_space(self, other: "SubspaceBasis") -> bool:
        return all(self.member(v) for v in other.vectors)

    def enumerate_elements(self):
        """Yield every vector of the subspace (q^dim of them), zero first."""
        f = self.field
        elems = [tuple(0 for _ in range(self.ambient_dim))]
        for row in self.vectors:
            scaled = [[f.mul(c, x) for x in row] for c in range(f.q)]
            elems = [
                tuple(f.add(e[j], s[j]) for j in range(self.ambient_dim))
                for e in elems
                for s in scaled
            ]
        return elems


def sum_spaces(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    _check_same_space(a, b)
    return SubspaceBasis.from_vectors(a.field, a.ambient_dim, a.vectors + b.vectors)


def annihilator(w: SubspaceBasis) -> SubspaceBasis:
    """All functionals a with sum_j a_j v_j = 0 for every v in w."""
    m = Matrix(w.field, len(w.vectors), w.ambient_dim, tuple(x for v in w.vectors for x in v))
    return kernel_basis(m)


def intersect_spaces(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    _check_same_space(a, b)
    return annihilator(sum_spaces(annihilator(a), annihilator(b)))


def _check_same_space(a: SubspaceBasis, b: SubspaceBasis) -> None:
    if a.field is not b.field:
        raise MixedFields("subspaces over different fields")
    if a.ambient_dim != b.ambient_dim:
        raise ShapeMismatch("subspaces of different ambient dimensions")


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True, slots=True)
class Matrix:
    """Dense matrix over one field; entries are element indices, row-major."""

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch("entry count does not match rows*cols")

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row_tuple(self, i: int) -> Vec:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col_tuple(self, j: int) -> Vec:
        return self.entries[j :: self.cols] if self.cols else ()

    def transpose(self) -> "Matrix":
        ent = tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows))
        return Matrix(self.field, self.cols, self.rows, ent)

    def mat_vec(self, v) -> Vec:
        if len(v) != self.cols:
            raise ShapeMismatch("vector length does not match matrix columns")
        f = self.field
        out = []
        for i in range(self.rows):
            acc = 0
            base = i * self.cols
            for j in range(self.cols):
                e = self.entries[base + j]
                if e and v[j]:
                    acc = f.add(acc, f.mul(e, v[j]))
            out.append(acc)
        return tuple(out)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.field is not other.field:
            raise MixedFields("matrices over different fields")
        if self.cols != other.rows:
            raise ShapeMismatch("inner dimensions differ")
        f = self.field
        ent = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = 0
                for t in range(self.cols):
                    a = self.entries[i * self.cols + t]
                    b = other.entries[t * other.cols + j]
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                ent.append(acc)
        return Matrix(self.field, self.rows, other.cols, tuple(ent))

    def add_matrix(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeMismatch("matrix shapes differ")
        f = self.field
        return Matrix(
            self.field, self.rows, self.cols,
            tuple(f.add(a, b) for a, b in zip(self.entries, other.entries)),
        )

    def scale(self, c: int) -> "Matrix":
        f = self.field
        return Matrix(self.field, self.rows, self.cols, tuple(f.mul(c, e) for e in self.entries))


def matrix_from_rows(field: FieldSpec, rows) -> Matrix:
    rows = [tuple(r) for r in rows]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != m:
            raise ShapeMismatch("ragged rows")
    return Matrix(field, n, m, tuple(x for r in rows for x in r))


def zero_matrix(field: FieldSpec, rows: int, cols: int) -> Matrix:
    return Matrix(field, rows, cols, (0,) * (rows * cols))


def identity_matrix(field: FieldSpec, n: int) -> Matrix:
    return Matrix(field, n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    rows, pivots = echelonize(m.field, [m.row_tuple(i) for i in range(m.rows)], m.cols)
    return matrix_from_rows(m.field, rows) if rows else zero_matrix(m.field, 0, m.cols), tuple(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[0].rows


def row_space(m: Matrix) -> SubspaceBasis:
    return SubspaceBasis.from_vectors(m.field, m.cols, [m.row_tuple(i) for i in range(m.rows)])


def column_space(m: Matrix) -> SubspaceBasis:
    return SubspaceBasis.from_vectors(m.field, m.rows, [m.col_tuple(j) for j in range(m.cols)])


def kernel_basis(m: Matrix) -> SubspaceBasis:
    """Canonical basis of the right kernel {x : Mx = 0}."""
    f = m.field
    rows, pivots = echelonize(f, [m.row_tuple(i) for i in range(m.rows)], m.cols)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    vecs = []
    for fr in free:
        v = [0] * m.cols
        v[fr] = 1
        for r, p in zip(rows, pivots):
            v[p] = f.neg(r[fr])
        vecs.append(tuple(v))
    # re-echelonize: the free-column construction need not be in RREF
    return SubspaceBasis.from_vectors(f, m.cols, vecs)


def left_kernel_rows(field: FieldSpec, entries, rows: int, cols: int) -> list[Vec]:
    """Canonical basis of {a : a M = 0} for a flat row-major entry tuple."""
    cols_as_rows = [tuple(entries[i * cols + j] for i in range(rows)) for j in range(cols)]
    m = matrix_from_rows(field, cols_as_rows) if cols_as_rows else zero_matrix(field, 0, rows)
    return list(kernel_basis(m).vectors)


def solve(m: Matrix, b) -> Vec | None:
    """One solution x of Mx = b, or None when the system is inconsistent."""
    if len(b) != m.rows:
        raise ShapeMismatch("right-hand side length does not match rows")
    f = m.field
    aug = [m.row_tuple(i) + (b[i],) for i in range(m.rows)]
    rows, pivots = echelonize(f, aug, m.cols + 1)
    if m.cols in pivots:
        return None
    x = [0] * m.cols
    for r, p in zip(rows, pivots):
        x[p] = r[m.cols]
    return tuple(x)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over F_q."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def subspace_count_up_to(n: int, c: int, q: int) -> int:
    """Number of subspaces of codimension 0..c in an n-dimensional space."""
    return sum(gaussian_binomial(n, n - i, q) for i in range(min(c, n) + 1))


# ---------------------------------------------------------------------------
# JSON


def matrix_to_json(m: Matrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [list(m.row_tuple(i)) for i in range(m.rows)],
    }


def matrix_from_json(field: FieldSpec, obj: dict) -> Matrix:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    ent = obj["entries"]
    if len(ent) != rows or any(len(r) != cols for r in ent):
        raise ShapeMismatch("entries do not match declared shape")
    flat = []
    for r in ent:
        for x in r:
            x = int(x)
            if not 0 <= x < field.q:
                raise ValueError(f"entry {x} out of range for F_{field.q}")
            flat.append(x)
    return Matrix(field, rows, cols, tuple(flat))
