"""Structured matrix spaces and their subspaces.

An Ambient fixes a coordinate system for one of three shapes of matrix over a
field K:

* kind "sym": n x (n+m) matrices [A | R] with A symmetric n x n, R an
  arbitrary n x m tail.  Coordinates: the diagonal of A, then the above
  diagonal entries in lexicographic order, then the tail column by column.
* kind "alt": the same but with A alternating (zero diagonal, A^T = -A).
  Coordinates: one per pair i > j in lexicographic order, with the sign
  chosen so that for n = 3 the matrix [[0,-a,b],[a,0,-c],[-b,c,0]] encodes
  to (a, b, c); then the tail column by column.
* kind "full": arbitrary n x m matrices, row-major coordinates.

An OperatorSpace is a linear subspace of an ambient held as a canonical
(reduced row echelon) coordinate basis, so equality of spaces is equality of
values.  Builders for the named spaces used by the verification suites and a
deterministic subspace enumerator live here too.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    AmbientMismatch,
    BadParams,
    EnumerationCapExceeded,
    MatrixNotInAmbient,
    MixedFields,
)
from .field import FieldSpec, parse_field_label
from .linalg import (
    Matrix,
    SubspaceBasis,
    annihilator,
    gaussian_binomial,
    intersect_spaces,
    kernel_basis,
    matrix_from_rows,
)

KIND_SYM = "sym"
KIND_ALT = "alt"
KIND_FULL = "full"


@dataclass(frozen=True, slots=True)
class Ambient:
    """A coordinatized space of structured matrices over one field."""

    field: FieldSpec
    kind: str
    n: int
    m: int

    def __post_init__(self):
        if self.kind not in (KIND_SYM, KIND_ALT, KIND_FULL):
            raise BadParams(f"unknown ambient kind {self.kind!r}")
        if self.n < 0 or self.m < 0:
            raise BadParams("ambient dimensions must be nonnegative")

    @property
    def nrows(self) -> int:
        return self.n

    @property
    def ncols(self) -> int:
        return self.m if self.kind == KIND_FULL else self.n + self.m

    @property
    def dim(self) -> int:
        n, m = self.n, self.m
        if self.kind == KIND_SYM:
            return n * (n + 1) // 2 + n * m
        if self.kind == KIND_ALT:
            return n * (n - 1) // 2 + n * m
        return n * m

    def block_positions(self):
        """Coordinate order for the structured block (sym/alt kinds)."""
        n = self.n
        if self.kind == KIND_SYM:
            return [(i, i) for i in range(n)] + [
                (i, j) for i in range(n) for j in range(i + 1, n)
            ]
        if self.kind == KIND_ALT:
            return [(i, j) for i in range(1, n) for j in range(i)]
        return []

    def tail_positions(self):
        if self.kind == KIND_FULL:
            return [(i, j) for i in range(self.n) for j in range(self.m)]
        return [(i, j) for j in range(self.n, self.n + self.m) for i in range(self.n)]


def encode(amb: Ambient, mat: Matrix):
    """Coordinates of a structured matrix; checks shape and structure."""
    if mat.field is not amb.field:
        raise MixedFields("matrix and ambient over different fields")
    if mat.rows != amb.nrows or mat.cols != amb.ncols:
        raise MatrixNotInAmbient(
            f"shape {mat.rows}x{mat.cols}, ambient wants {amb.nrows}x{amb.ncols}"
        )
    f, n = amb.field, amb.n
    out = []
    if amb.kind == KIND_SYM:
        for i in range(n):
            for j in range(i + 1, n):
                if mat.entry(i, j) != mat.entry(j, i):
                    raise MatrixNotInAmbient("block is not symmetric")
        out = [mat.entry(i, j) for i, j in amb.block_positions()]
    elif amb.kind == KIND_ALT:
        for i in range(n):
            if mat.entry(i, i) != 0:
                raise MatrixNotInAmbient("alternating block has nonzero diagonal")
            for j in range(i + 1, n):
                if mat.entry(i, j) != f.neg(mat.entry(j, i)):
                    raise MatrixNotInAmbient("block is not alternating")
        for i, j in amb.block_positions():
            v = mat.entry(i, j) if (i + j) % 2 == 1 else mat.entry(j, i)
            out.append(v)
    out.extend(mat.entry(i, j) for i, j in amb.tail_positions())
    return tuple(out)


def decode(amb: Ambient, coords) -> Matrix:
    """Inverse of encode."""
    if len(coords) != amb.dim:
        raise AmbientMismatch(f"expected {amb.dim} coordinates, got {len(coords)}")
    f, n = amb.field, amb.n
    ent = [[0] * amb.ncols for _ in range(amb.nrows)]
    pos = 0
    if amb.kind == KIND_SYM:
        for i, j in amb.block_positions():
            ent[i][j] = ent[j][i] = coords[pos]
            pos += 1
    elif amb.kind == KIND_ALT:
        for i, j in amb.block_positions():
            v = coords[pos]
            pos += 1
            if (i + j) % 2 == 1:
                ent[i][j], ent[j][i] = v, f.neg(v)
            else:
                ent[j][i], ent[i][j] = v, f.neg(v)
    for i, j in amb.tail_positions():
        ent[i][j] = coords[pos]
        pos += 1
    return matrix_from_rows(f, ent) if ent else Matrix(f, 0, amb.ncols, ())


@dataclass(frozen=True, slots=True)
class OperatorSpace:
    """A linear subspace of an ambient, in canonical coordinates.

    product_of remembers the two factors when the space was assembled by
    side_by_side; it is bookkeeping only and does not affect equality.
    """

    ambient: Ambient
    basis: SubspaceBasis
    product_of: tuple | None = dc_field(default=None, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def codim(self) -> int:
        return self.ambient.dim - self.basis.dim

    def contains(self, mat: Matrix) -> bool:
        return self.basis.member(encode(self.ambient, mat))

    def basis_matrices(self):
        return [decode(self.ambient, v) for v in self.basis.vectors]


def space_from_coords(amb: Ambient, vectors, product_of=None) -> OperatorSpace:
    basis = SubspaceBasis.from_vectors(amb.field, amb.dim, vectors)
    return OperatorSpace(amb, basis, product_of)


def space_from_matrices(amb: Ambient, mats) -> OperatorSpace:
    return space_from_coords(amb, [encode(amb, m) for m in mats])


def full_space(amb: Ambient) -> OperatorSpace:
    return OperatorSpace(amb, SubspaceBasis.full(amb.field, amb.dim))


def _check_same_field(a: OperatorSpace, b: OperatorSpace) -> None:
    if a.ambient.field is not b.ambient.field:
        raise MixedFields("spaces over different fields")


def direct_sum(a: OperatorSpace, b: OperatorSpace) -> OperatorSpace:
    """Block-diagonal sum of two tailless sym (or alt) spaces."""
    _check_same_field(a, b)
    ka, kb = a.ambient.kind, b.ambient.kind
    if ka != kb or ka == KIND_FULL or a.ambient.m or b.ambient.m:
        raise AmbientMismatch("direct_sum needs two tailless spaces of one kind")
    f = a.ambient.field
    na, nb = a.ambient.n, b.ambient.n
    big = Ambient(f, ka, na + nb, 0)
    mats = []
    for mat in a.basis_matrices():
        ent = [[0] * (na + nb) for _ in range(na + nb)]
        for i in range(na):
            for j in range(na):
                ent[i][j] = mat.entry(i, j)
        mats.append(matrix_from_rows(f, ent))
    for mat in b.basis_matrices():
        ent = [[0] * (na + nb) for _ in range(na + nb)]
        for i in range(nb):
            for j in range(nb):
                ent[na + i][na + j] = mat.entry(i, j)
        mats.append(matrix_from_rows(f, ent))
    return space_from_matrices(big, mats)


def side_by_side(a: OperatorSpace, b: OperatorSpace) -> OperatorSpace:
    """All matrices [M | R] with M in a and R in b; b must be a full space
    of rectangles with the same number of rows."""
    _check_same_field(a, b)
    if b.ambient.kind != KIND_FULL or b.ambient.nrows != a.ambient.nrows:
        raise AmbientMismatch("second factor must be full rectangles with matching rows")
    f = a.ambient.field
    amb = Ambient(f, a.ambient.kind, a.ambient.n, a.ambient.m + b.ambient.m)
    nrows, old_cols, extra = amb.nrows, a.ambient.ncols, b.ambient.m
    mats = []
    for mat in a.basis_matrices():
        ent = [list(mat.row_tuple(i)) + [0] * extra for i in range(nrows)]
        mats.append(matrix_from_rows(f, ent))
    for mat in b.basis_matrices():
        ent = [[0] * old_cols + list(mat.row_tuple(i)) for i in range(nrows)]
        mats.append(matrix_from_rows(f, ent))
    return space_from_coords(amb, [encode(amb, m) for m in mats], product_of=(a, b))


def restricted_part(s: OperatorSpace) -> OperatorSpace:
    """Matrices of s whose tail vanishes, viewed in the tailless ambient."""
    amb = s.ambient
    if amb.kind == KIND_FULL:
        raise AmbientMismatch("restricted_part needs a sym or alt ambient")
    block_dim = Ambient(amb.field, amb.kind, amb.n, 0).dim
    vecs = [
        v[:block_dim]
        for v in _coordinate_section(s, block_dim).vectors
    ]
    return space_from_coords(Ambient(amb.field, amb.kind, amb.n, 0), vecs)


def modulo_part(s: OperatorSpace) -> OperatorSpace:
    """Projection of s onto its tail coordinates."""
    amb = s.ambient
    if amb.kind == KIND_FULL:
        raise AmbientMismatch("modulo_part needs a sym or alt ambient")
    block_dim = Ambient(amb.field, amb.kind, amb.n, 0).dim
    tail_amb = Ambient(amb.field, KIND_FULL, amb.n, amb.m)
    # tail coordinates of the ambient are column-major; reorder to row-major
    order = _tail_reorder(amb)
    vecs = [tuple(v[block_dim + t] for t in order) for v in s.basis.vectors]
    return space_from_coords(tail_amb, vecs)


def _tail_reorder(amb: Ambient):
    tail = amb.tail_positions()
    target = [(i, j - amb.n) for i, j in tail]
    want = [(i, j) for i in range(amb.n) for j in range(amb.m)]
    return [target.index(p) for p in want]


def _coordinate_section(s: OperatorSpace, block_dim: int) -> SubspaceBasis:
    """Subbasis of s whose vectors vanish on all tail coordinates."""
    amb = s.ambient
    zero_tail = [
        tuple(1 if j == t else 0 for j in range(amb.dim))
        for t in range(block_dim, amb.dim)
    ]
    tailless = annihilator(SubspaceBasis.from_vectors(amb.field, amb.dim, zero_tail))
    return intersect_spaces(s.basis, tailless)


def quotient_projection(s: OperatorSpace, w: SubspaceBasis) -> Matrix:
    """Canonical matrix P whose rows span the annihilator of w in K^n."""
    amb = s.ambient
    if w.field is not amb.field:
        raise MixedFields("subspace over a different field")
    if w.ambient_dim != amb.nrows:
        raise AmbientMismatch("w must live in the target column space K^n")
    ann = annihilator(w)
    if ann.dim == 0:
        return Matrix(amb.field, 0, amb.nrows, ())
    return matrix_from_rows(amb.field, ann.vectors)


def quotient_space(s: OperatorSpace, w: SubspaceBasis) -> OperatorSpace:
    """The space {P M : M in s} of rectangles, P projecting along w."""
    p = quotient_projection(s, w)
    amb = s.ambient
    out_amb = Ambient(amb.field, KIND_FULL, p.rows, amb.ncols)
    mats = [p.matmul(m) for m in s.basis_matrices()]
    return space_from_coords(out_amb, [encode(out_amb, m) for m in mats])


# ---------------------------------------------------------------------------
# deterministic subspace enumeration


def count_subspaces(amb: Ambient, codim: int) -> int:
    return gaussian_binomial(amb.dim, amb.dim - codim, amb.field.q)


def dual_rref_rows(field: FieldSpec, dim: int, rank: int):
    """Every reduced-row-echelon matrix with `rank` rows over K^dim, scanned
    by pivot-column combination and then by free entries, both ascending.
    These index the rank-codimensional subspaces via their annihilators."""
    from itertools import combinations, product

    q = field.q
    for pivots in combinations(range(dim), rank):
        pivot_set = set(pivots)
        free = [
            (i, col)
            for i in range(rank)
            for col in range(pivots[i] + 1, dim)
            if col not in pivot_set
        ]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * dim for _ in range(rank)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, col), v in zip(free, values):
                rows[i][col] = v
            yield rows


def enumerate_subspaces(amb: Ambient, codim: int, cap: int = 1 << 20):
    """Yield every subspace of the ambient with the given codimension.

    Order is canonical: subspaces are indexed by the reduced row echelon
    form of their annihilator (codim x dim matrices of full rank), scanned
    by pivot-column combination and then by free entries, both ascending.
    Raises EnumerationCapExceeded when the case count is above the cap.
    """
    d = amb.dim
    if not 0 <= codim <= d:
        raise BadParams(f"codimension {codim} out of range for dimension {d}")
    total = count_subspaces(amb, codim)
    if total > cap:
        raise EnumerationCapExceeded(
            f"{total} subspaces of codimension {codim} exceeds cap {cap}"
        )
    if codim == 0:
        yield full_space(amb)
        return
    f = amb.field
    for rows in dual_rref_rows(f, d, codim):
        yield OperatorSpace(amb, kernel_basis(matrix_from_rows(f, rows)))


def enumerate_subspaces_up_to(amb: Ambient, codim: int, cap: int = 1 << 20):
    """All subspaces of codimension 0..codim, in increasing codimension."""
    total = sum(count_subspaces(amb, c) for c in range(codim + 1))
    if total > cap:
        raise EnumerationCapExceeded(f"{total} subspaces exceeds cap {cap}")
    for c in range(codim + 1):
        yield from enumerate_subspaces(amb, c, cap)


# ---------------------------------------------------------------------------
# named builders


def build_full_sym(f: FieldSpec, n: int, m: int = 0) -> OperatorSpace:
    return full_space(Ambient(f, KIND_SYM, n, m))


def build_full_alt(f: FieldSpec, n: int, m: int = 0) -> OperatorSpace:
    return full_space(Ambient(f, KIND_ALT, n, m))


def build_full_rect(f: FieldSpec, n: int, m: int) -> OperatorSpace:
    return full_space(Ambient(f, KIND_FULL, n, m))


def _sym_units(f: FieldSpec, n: int, rows):
    """Symmetric unit matrices E_ii and E_ij + E_ji supported on given rows."""
    out = []
    for a in rows:
        for b in rows:
            if b < a:
                continue
            ent = [[0] * n for _ in range(n)]
            ent[a][b] = ent[b][a] = 1
            out.append(matrix_from_rows(f, ent))
    return out


def build_t3(f: FieldSpec) -> OperatorSpace:
    """Symmetric 3x3 matrices with vanishing (2,3) entry."""
    amb = Ambient(f, KIND_SYM, 3, 0)
    mats = []
    for a, b in [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)]:
        ent = [[0] * 3 for _ in range(3)]
        ent[a][b] = ent[b][a] = 1
        mats.append(matrix_from_rows(f, ent))
    return space_from_matrices(amb, mats)


def build_sym_block(f: FieldSpec, n: int) -> OperatorSpace:
    """Block diagonal sum of 1x1 symmetric matrices and full Mats_{n-1}."""
    if n < 2:
        raise BadParams("sym-block needs n >= 2")
    amb = Ambient(f, KIND_SYM, n, 0)
    mats = _sym_units(f, n, [0]) + _sym_units(f, n, range(1, n))
    return space_from_matrices(amb, mats)


def build_u2_block(f: FieldSpec, n: int) -> OperatorSpace:
    """Top-left block {[a b; b 0]} summed with full Mats_{n-2}."""
    if n < 2:
        raise BadParams("u2 needs n >= 2")
    amb = Ambient(f, KIND_SYM, n, 0)
    mats = []
    for a, b in [(0, 0), (0, 1)]:
        ent = [[0] * n for _ in range(n)]
        ent[a][b] = ent[b][a] = 1
        mats.append(matrix_from_rows(f, ent))
    mats += _sym_units(f, n, range(2, n))
    return space_from_matrices(amb, mats)


def build_alt_col1(f: FieldSpec, n: int) -> OperatorSpace:
    """Alternating matrices whose first column vanishes below row 2."""
    if n < 3:
        raise BadParams("alt-col1 needs n >= 3")
    amb = Ambient(f, KIND_ALT, n, 0)
    keep = []
    for t, (i, j) in enumerate(amb.block_positions()):
        if j == 0 and i >= 2:
            continue
        keep.append(tuple(1 if s == t else 0 for s in range(amb.dim)))
    return space_from_coords(amb, keep)


def _alt_unit(f: FieldSpec, n: int, i: int, j: int) -> Matrix:
    ent = [[0] * n for _ in range(n)]
    ent[i][j], ent[j][i] = 1, f.neg(1)
    return matrix_from_rows(f, ent)


def _alt_tail_blocks(f: FieldSpec, n: int):
    """Shared lower-right generators for the two low-codimension families:
    the (3,4) unit, the rows >= 5 by columns 3..4 units, and Mata on rows >= 5
    (1-indexed descriptions)."""
    mats = [_alt_unit(f, n, 3, 2)]
    for r in range(4, n):
        for c in (2, 3):
            mats.append(_alt_unit(f, n, r, c))
    for r in range(4, n):
        for c in range(4, r):
            mats.append(_alt_unit(f, n, r, c))
    return mats


def build_alt_2n5(f: FieldSpec, n: int) -> OperatorSpace:
    """Alternating matrices whose rows 3..4 by columns 1..2 block has the
    upper-triangular Toeplitz shape [a b; 0 a] (1-indexed)."""
    if n < 4:
        raise BadParams("alt-2n5 needs n >= 4")
    amb = Ambient(f, KIND_ALT, n, 0)
    neg1 = f.neg(1)
    a_gen = [[0] * n for _ in range(n)]
    a_gen[2][0], a_gen[0][2] = 1, neg1
    a_gen[3][1], a_gen[1][3] = 1, neg1
    b_gen = [[0] * n for _ in range(n)]
    b_gen[2][1], b_gen[1][2] = 1, neg1
    mats = [matrix_from_rows(f, a_gen), matrix_from_rows(f, b_gen)]
    mats += _alt_tail_blocks(f, n)
    return space_from_matrices(amb, mats)


def build_alt_2n6(f: FieldSpec, n: int) -> OperatorSpace:
    """Alternating matrices whose rows 3..4 by columns 1..2 block is
    symmetric (1-indexed)."""
    if n < 4:
        raise BadParams("alt-2n6 needs n >= 4")
    amb = Ambient(f, KIND_ALT, n, 0)
    neg1 = f.neg(1)
    gens = []
    for pos in [[(2, 0)], [(3, 1)], [(2, 1), (3, 0)]]:
        ent = [[0] * n for _ in range(n)]
        for i, j in pos:
            ent[i][j], ent[j][i] = 1, neg1
        gens.append(matrix_from_rows(f, ent))
    gens += _alt_tail_blocks(f, n)
    return space_from_matrices(amb, gens)


def build_mf(f: FieldSpec, r: int, coeffs) -> OperatorSpace:
    """Alternating 3x3 block with an r-column tail, cut by one trace condition.

    coeffs lists, for each of the three alternating coordinates of the block,
    an r x r matrix row-major; the space holds [A | R] whenever the trace of
    the top r x r part of R equals the trace of sum(coord_w(A) * coeffs[w]).
    For r = 0 the space is all of the tailless ambient.
    """
    if r not in (0, 1, 2, 3):
        raise BadParams("mf needs r in 0..3")
    coeffs = tuple(int(c) for c in coeffs)
    if len(coeffs) != 3 * r * r:
        raise BadParams(f"mf with r={r} needs {3 * r * r} coefficients")
    if any(not 0 <= c < f.q for c in coeffs):
        raise BadParams("mf coefficients out of field range")
    amb = Ambient(f, KIND_ALT, 3, r)
    if r == 0:
        return full_space(amb)
    traces = []
    for w in range(3):
        t = 0
        for u in range(r):
            t = f.add(t, coeffs[w * r * r + u * r + u])
        traces.append(t)
    dim = amb.dim
    gens = []
    for w in range(3):
        v = [0] * dim
        v[w] = 1
        # tail coordinates are column-major after the 3 block coordinates;
        # tail position (0,0) is coordinate 3
        v[3] = traces[w]
        gens.append(tuple(v))
    block = 3
    for j in range(r):  # column-major tail positions (i, j)
        for i in range(3):
            if i == j:
                continue
            v = [0] * dim
            v[block + j * 3 + i] = 1
            gens.append(tuple(v))
    for t in range(1, r):
        v = [0] * dim
        v[block + t * 3 + t] = 1
        v[block + 0] = f.neg(1)
        gens.append(tuple(v))
    return space_from_coords(amb, gens)


def mf_membership(f: FieldSpec, r: int, coeffs, mat: Matrix) -> bool:
    """Direct membership test for build_mf spaces, used as an oracle."""
    amb = Ambient(f, KIND_ALT, 3, r)
    v = encode(amb, mat)
    lhs = 0
    for t in range(r):
        lhs = f.add(lhs, mat.entry(t, 3 + t))
    rhs = 0
    for w in range(3):
        for u in range(r):
            rhs = f.add(rhs, f.mul(v[w], coeffs[w * r * r + u * r + u]))
    return lhs == rhs


_FAMILY_BUILDERS = {
    "full-sym": lambda f, n: build_full_sym(f, n),
    "full-alt": lambda f, n: build_full_alt(f, n),
    "sym-block": build_sym_block,
    "u2": build_u2_block,
    "alt-col1": build_alt_col1,
    "alt-2n5": build_alt_2n5,
    "alt-2n6": build_alt_2n6,
}


def build_space(designator: str, f: FieldSpec) -> OperatorSpace:
    """Build a named space from a designator like "full-sym:3", "t3",
    "u2:4", or "mf:r=1,f=012" (f gives 3*r*r hex digits)."""
    text = designator.strip()
    if text == "t3":
        return build_t3(f)
    name, _, rest = text.partition(":")
    if name == "mf":
        params = dict(
            part.split("=", 1) for part in rest.split(",") if "=" in part
        )
        if "r" not in params:
            raise BadParams("mf designator needs r=<int>")
        r = int(params["r"])
        digits = params.get("f", "")
        coeffs = [int(ch, 16) for ch in digits]
        return build_mf(f, r, coeffs)
    if name in _FAMILY_BUILDERS:
        if not rest:
            raise BadParams(f"designator {name!r} needs :n")
        return _FAMILY_BUILDERS[name](f, int(rest))
    raise BadParams(f"unknown space designator {designator!r}")


# ---------------------------------------------------------------------------
# JSON


def space_to_json(s: OperatorSpace) -> dict:
    return {
        "field": s.ambient.field.label,
        "ambient": {"kind": s.ambient.kind, "n": s.ambient.n, "m": s.ambient.m},
        "basis": [list(v) for v in s.basis.vectors],
    }


def space_from_json(obj: dict, max_order: int = 16) -> OperatorSpace:
    f = parse_field_label(str(obj["field"]), max_order=max_order)
    a = obj["ambient"]
    amb = Ambient(f, str(a["kind"]), int(a["n"]), int(a["m"]))
    vecs = []
    for v in obj["basis"]:
        vec = tuple(int(x) for x in v)
        if any(not 0 <= x < f.q for x in vec):
            raise ValueError("basis entry out of field range")
        vecs.append(vec)
    return space_from_coords(amb, vecs)
