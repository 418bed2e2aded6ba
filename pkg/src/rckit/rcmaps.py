"""Additive maps on operator spaces and range-compatibility machinery.

An additive map F : S -> K^n (S an OperatorSpace of matrices with n rows) is
stored by its values on the prime basis of S: if b_1, ..., b_d is the
canonical K-basis of S and 1, x, ..., x^{k-1} the power basis of K over its
prime field F_p, the prime basis vectors are u_{i*k+t} = x^t * b_i and every
element of S is a unique F_p-combination of them.  Additivity makes a map
F_p-linear, so F is determined by (and free on) its values at the u_j.

Everything here reduces questions about such maps to F_p-linear algebra:

* F is range-compatible when F(s) lies in the column space of s for every
  s in S.  The solution set of that condition is the kernel of explicit
  F_p-linear constraints (one batch per pair (s, annihilator row of s)).
* F is local when it is evaluation at a fixed vector, F(s) = s x.
* In characteristic 2 the diagonal maps s -> alpha(diag of the symmetric
  block) for root-linear alpha (additive with alpha(c^2 x) = c alpha(x))
  are range-compatible without being local; together with local maps they
  span the "standard" maps on symmetric-block spaces.

A brute-force oracle that filters all p^(coordinate count) additive maps is
included for cross-checking the solver on small domains.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    AmbientMismatch,
    CharacteristicMismatch,
    DomainTooLarge,
    IllDefined,
    MixedFields,
    NotInDomain,
)
from .field import FieldSpec, make_field
from .linalg import (
    Gf2Accumulator,
    Matrix,
    SubspaceBasis,
    intersect_spaces,
    kernel_basis,
    left_kernel_rows,
    make_accumulator,
    matrix_from_rows,
    solve,
)
from .opspace import (
    KIND_SYM,
    OperatorSpace,
    decode,
    encode,
    quotient_projection,
    quotient_space,
    side_by_side,
    space_from_json,
    space_to_json,
)

DEFAULT_ELEMENT_CAP = 1 << 20


def element_cap(cap: int | None = None) -> int:
    """Resolve an exhaustive-walk cap: explicit value, else RC_KIT_CAP, else 2^20."""
    if cap is not None:
        return cap
    env = os.environ.get("RC_KIT_CAP")
    return int(env) if env else DEFAULT_ELEMENT_CAP


def prime_field(space: OperatorSpace) -> FieldSpec:
    return make_field(space.ambient.field.p)


def prime_basis_vectors(space: OperatorSpace):
    """The F_p-basis x^t * b_i of S, indexed by j = i*k + t."""
    f = space.ambient.field
    lams = [f.from_prime_coords(tuple(1 if u == t else 0 for u in range(f.k))) for t in range(f.k)]
    out = []
    for b in space.basis.vectors:
        for lam in lams:
            out.append(tuple(f.mul(lam, x) for x in b))
    return out


def map_coord_width(space: OperatorSpace) -> int:
    k = space.ambient.field.k
    return space.dim * k * space.ambient.nrows * k


def iter_space_elements(space: OperatorSpace):
    """Yield (prime_coeffs, coords) for all q^dim elements, odometer order."""
    f = space.ambient.field
    p = f.p
    basis_p = prime_basis_vectors(space)
    d = len(basis_p)
    width = space.ambient.dim
    supports = [[(t, v[t]) for t in range(width) if v[t]] for v in basis_p]
    digits = [0] * d
    cur = [0] * width
    yield tuple(digits), tuple(cur)
    if d == 0:
        return
    add = f.add
    for _ in range(p**d - 1):
        j = 0
        while True:
            for t, val in supports[j]:
                cur[t] = add(cur[t], val)
            digits[j] += 1
            if digits[j] == p:
                digits[j] = 0
                j += 1
            else:
                break
        yield tuple(digits), tuple(cur)


@dataclass(frozen=True, slots=True)
class AdditiveMap:
    """An additive map S -> K^n given by its values on the prime basis of S."""

    domain: OperatorSpace
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        f = self.domain.ambient.field
        n = self.domain.ambient.nrows
        if len(self.values) != self.domain.dim * f.k:
            raise AmbientMismatch(
                f"need {self.domain.dim * f.k} prime-basis values, got {len(self.values)}"
            )
        for v in self.values:
            if len(v) != n or any(not 0 <= x < f.q for x in v):
                raise AmbientMismatch("value outside K^n")


def zero_map(space: OperatorSpace) -> AdditiveMap:
    n = space.ambient.nrows
    k = space.ambient.field.k
    return AdditiveMap(space, tuple(((0,) * n for _ in range(space.dim * k))))


def random_map(space: OperatorSpace, rng) -> AdditiveMap:
    f = space.ambient.field
    n = space.ambient.nrows
    return AdditiveMap(
        space,
        tuple(
            tuple(rng.randrange(f.q) for _ in range(n))
            for _ in range(space.dim * f.k)
        ),
    )


def map_from_function(space: OperatorSpace, fn) -> AdditiveMap:
    """Build a map from a function on matrices, sampled on the prime basis.

    The result is the unique additive map agreeing with fn there; fn itself
    is not checked for additivity.
    """
    amb = space.ambient
    values = [tuple(fn(decode(amb, v))) for v in prime_basis_vectors(space)]
    return AdditiveMap(space, tuple(values))


def prime_coeffs_of(space: OperatorSpace, coords) -> tuple[int, ...]:
    """F_p-coordinates of an element of S in the prime basis."""
    f = space.ambient.field
    gamma = space.basis.coords_of(coords)
    if gamma is None:
        raise NotInDomain("matrix is not in the map's domain")
    out = []
    for g in gamma:
        out.extend(f.prime_coords(g))
    return tuple(out)


def evaluate_at_coeffs(f_map: AdditiveMap, coeffs) -> tuple[int, ...]:
    f = f_map.domain.ambient.field
    n = f_map.domain.ambient.nrows
    acc = [0] * n
    for c, val in zip(coeffs, f_map.values):
        if c:
            for i in range(n):
                if val[i]:
                    acc[i] = f.add(acc[i], f.mul(c, val[i]))
    return tuple(acc)


def evaluate(f_map: AdditiveMap, mat: Matrix) -> tuple[int, ...]:
    """F(mat) in K^n; raises NotInDomain outside the domain."""
    space = f_map.domain
    if mat.field is not space.ambient.field:
        raise MixedFields("matrix over a different field")
    return evaluate_at_coeffs(f_map, prime_coeffs_of(space, encode(space.ambient, mat)))


def map_to_coords(f_map: AdditiveMap) -> tuple[int, ...]:
    """Flatten to F_p-coordinates: index (j*n + i)*k + t is the t-th prime
    coordinate of F(u_j)_i."""
    f = f_map.domain.ambient.field
    out = []
    for val in f_map.values:
        for x in val:
            out.extend(f.prime_coords(x))
    return tuple(out)


def map_from_coords(space: OperatorSpace, coords) -> AdditiveMap:
    f = space.ambient.field
    n, k = space.ambient.nrows, f.k
    d = space.dim * k
    if len(coords) != d * n * k:
        raise AmbientMismatch(f"need {d * n * k} coordinates, got {len(coords)}")
    values = []
    pos = 0
    for _ in range(d):
        row = []
        for _ in range(n):
            row.append(f.from_prime_coords(tuple(coords[pos : pos + k])))
            pos += k
        values.append(tuple(row))
    return AdditiveMap(space, tuple(values))


def is_range_compatible(f_map: AdditiveMap, cap: int | None = None) -> bool:
    """Exhaustively test F(s) in column space of s for all s in the domain."""
    space = f_map.domain
    f = space.ambient.field
    limit = element_cap(cap)
    if f.q**space.dim > limit:
        raise DomainTooLarge(f"{f.q ** space.dim} elements exceeds cap {limit}")
    amb = space.ambient
    for coeffs, coords in iter_space_elements(space):
        value = evaluate_at_coeffs(f_map, coeffs)
        if not any(value):
            continue
        if solve(decode(amb, coords), value) is None:
            return False
    return True


@dataclass(frozen=True, slots=True)
class MapSpace:
    """An F_p-subspace of additive maps on one domain, in map coordinates."""

    domain: OperatorSpace
    basis: SubspaceBasis

    @property
    def dim(self) -> int:
        return self.basis.dim

    def contains_coords(self, coords) -> bool:
        return self.basis.member(coords)

    def contains_map(self, f_map: AdditiveMap) -> bool:
        if f_map.domain != self.domain:
            raise AmbientMismatch("map lives on a different domain")
        return self.basis.member(map_to_coords(f_map))

    def maps(self):
        return [map_from_coords(self.domain, v) for v in self.basis.vectors]


def _constraint_rows_for(space: OperatorSpace, coeffs, ann_row, stride: int):
    """The k F_p-rows forcing <a, F(s)> = 0 for one element s and one
    annihilator row a of its column space."""
    f = space.ambient.field
    p, k = f.p, f.k
    n = space.ambient.nrows
    width = map_coord_width(space)
    lams = [f.from_prime_coords(tuple(1 if u == t else 0 for u in range(k))) for t in range(k)]
    rows = [[0] * width for _ in range(k)]
    support = [j for j, c in enumerate(coeffs) if c]
    for i in range(n):
        ai = ann_row[i]
        if not ai:
            continue
        for u in range(k):
            digs = f.prime_coords(f.mul(ai, lams[u]))
            for j in support:
                cj = coeffs[j]
                idx = j * stride + i * k + u
                for w in range(k):
                    if digs[w]:
                        rows[w][idx] = (cj * digs[w]) % p
    return rows


def rc_solution_space(space: OperatorSpace, cap: int | None = None) -> MapSpace:
    """Canonical basis of all range-compatible additive maps on the space.

    Walks every element s, collects the linear constraints "F(s) is
    annihilated by the left kernel of s", and returns the kernel of the
    stacked system over F_p.
    """
    f = space.ambient.field
    p, k = f.p, f.k
    n, ncols = space.ambient.nrows, space.ambient.ncols
    fp = prime_field(space)
    limit = element_cap(cap)
    if f.q**space.dim > limit:
        raise DomainTooLarge(f"{f.q ** space.dim} elements exceeds cap {limit}")
    width = map_coord_width(space)
    stride = n * k
    amb = space.ambient
    acc = make_accumulator(fp, width)
    packed = isinstance(acc, Gf2Accumulator)
    for coeffs, coords in iter_space_elements(space):
        if not any(coeffs):
            continue
        mat = decode(amb, coords)
        for a in left_kernel_rows(f, mat.entries, n, ncols):
            if packed:
                # pattern_w packs digit_w(a_i * x^u) over (i, u); shifting by
                # j*stride places it under basis slot j
                patterns = [0] * k
                for i in range(n):
                    ai = a[i]
                    if not ai:
                        continue
                    for u in range(k):
                        digs = f.prime_coords(f.mul(ai, f.from_prime_coords(tuple(1 if x == u else 0 for x in range(k)))))
                        for w in range(k):
                            if digs[w]:
                                patterns[w] |= 1 << (i * k + u)
                for w in range(k):
                    row = 0
                    pat = patterns[w]
                    if not pat:
                        continue
                    for j, c in enumerate(coeffs):
                        if c:
                            row |= pat << (j * stride)
                    acc.add(row)
            else:
                for row in _constraint_rows_for(space, coeffs, a, stride):
                    if any(row):
                        acc.add(row)
    rows, _ = acc.rows_pivots()
    if packed:
        rows = [tuple((r >> t) & 1 for t in range(width)) for r in rows]
    if not rows:
        return MapSpace(space, SubspaceBasis.full(fp, width))
    constraint = matrix_from_rows(fp, rows)
    return MapSpace(space, kernel_basis(constraint))


def local_map(space: OperatorSpace, x) -> AdditiveMap:
    """The evaluation map s -> s x for a fixed vector x in K^ncols."""
    amb = space.ambient
    if len(x) != amb.ncols:
        raise AmbientMismatch(f"x must live in K^{amb.ncols}")
    values = [decode(amb, v).mat_vec(x) for v in prime_basis_vectors(space)]
    return AdditiveMap(space, tuple(values))


def local_space(space: OperatorSpace) -> MapSpace:
    """Span of the evaluation maps, as a subspace of map coordinates."""
    f = space.ambient.field
    fp = prime_field(space)
    width = map_coord_width(space)
    gens = []
    for col in range(space.ambient.ncols):
        for t in range(f.k):
            x = [0] * space.ambient.ncols
            x[col] = f.from_prime_coords(tuple(1 if u == t else 0 for u in range(f.k)))
            gens.append(map_to_coords(local_map(space, tuple(x))))
    return MapSpace(space, SubspaceBasis.from_vectors(fp, width, gens))


def respects_row_decomposition(f_map: AdditiveMap) -> bool:
    """Whether each output entry F(M)_i depends only on row i of M.

    By additivity this holds exactly when F(M)_i = 0 for every M in the
    domain whose i-th row vanishes, so it suffices to check a prime basis
    of each row-kill subspace.  Range-compatible maps always pass.
    """
    space = f_map.domain
    amb = space.ambient
    f = amb.field
    if space.dim == 0:
        return True
    for i in range(amb.nrows):
        stacked = []
        for vec in space.basis.vectors:
            stacked.extend(decode(amb, vec).row_tuple(i))
        for gamma in left_kernel_rows(f, tuple(stacked), space.dim, amb.ncols):
            coords = [0] * amb.dim
            for g, vec in zip(gamma, space.basis.vectors):
                if g:
                    for j, v in enumerate(vec):
                        if v:
                            coords[j] = f.add(coords[j], f.mul(g, v))
            scalar = 1
            for _ in range(f.k):
                scaled = tuple(f.mul(scalar, c) for c in coords)
                value = evaluate_at_coeffs(f_map, prime_coeffs_of(space, scaled))
                if value[i]:
                    return False
                scalar = f.mul(scalar, f.p if f.k > 1 else 1)
    return True


def is_local(f_map: AdditiveMap):
    """A vector x with F(s) = s x for all s, or None.

    Solves the K-linear system on a K-basis of the domain and then verifies
    the candidate on the whole prime basis, which catches additive maps that
    agree with an evaluation on the basis without being K-semilinear.
    """
    space = f_map.domain
    f = space.ambient.field
    amb = space.ambient
    k = f.k
    rows: list[tuple[int, ...]] = []
    rhs: list[int] = []
    for i, b in enumerate(space.basis.vectors):
        mat = decode(amb, b)
        for r in range(amb.nrows):
            rows.append(mat.row_tuple(r))
            rhs.append(f_map.values[i * k][r])
    stacked = (
        matrix_from_rows(f, rows) if rows else Matrix(f, 0, amb.ncols, ())
    )
    x = solve(stacked, tuple(rhs))
    if x is None:
        return None
    for u, val in zip(prime_basis_vectors(space), f_map.values):
        if decode(amb, u).mat_vec(x) != val:
            return None
    return x


@dataclass(frozen=True, slots=True)
class RootLinearForm:
    """An additive alpha : K -> K with alpha(c^2 x) = c alpha(x); in
    characteristic 2 these are exactly x -> coeff * sqrt(x)."""

    field: FieldSpec
    coeff: int
    table: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.table[a]


def root_linear_form(field: FieldSpec, coeff: int) -> RootLinearForm:
    if field.p != 2:
        raise CharacteristicMismatch("root-linear forms require characteristic 2")
    table = tuple(field.mul(coeff, field.sqrt(a)) for a in range(field.q))
    form = RootLinearForm(field, coeff, table)
    for a in range(field.q):
        for b in range(field.q):
            if form(field.add(a, b)) != field.add(form(a), form(b)):
                raise AssertionError("root-linear form is not additive")
            sq = field.mul(b, b)
            if form(field.mul(sq, a)) != field.mul(b, form(a)):
                raise AssertionError("root-linear scaling law fails")
    return form


def root_linear_forms(field: FieldSpec):
    """F_2-basis of the space of root-linear forms (empty in odd
    characteristic, where only the zero form satisfies the scaling law)."""
    if field.p != 2:
        return []
    coeffs = [field.from_prime_coords(tuple(1 if u == t else 0 for u in range(field.k))) for t in range(field.k)]
    return [root_linear_form(field, c) for c in coeffs]


def diag_root_linear_map(space: OperatorSpace, form: RootLinearForm) -> AdditiveMap:
    """The map [A | R] -> alpha(diagonal of A) on a symmetric-block space."""
    amb = space.ambient
    if amb.kind != KIND_SYM:
        raise AmbientMismatch("diagonal maps need a symmetric-block ambient")
    if form.field is not amb.field:
        raise MixedFields("form over a different field")
    values = []
    for v in prime_basis_vectors(space):
        mat = decode(amb, v)
        values.append(tuple(form(mat.entry(i, i)) for i in range(amb.nrows)))
    return AdditiveMap(space, tuple(values))


def standard_space(space: OperatorSpace) -> MapSpace:
    """Span of local maps and (characteristic 2) diagonal root-linear maps."""
    amb = space.ambient
    if amb.kind != KIND_SYM:
        raise AmbientMismatch("standard maps are defined on symmetric-block spaces")
    fp = prime_field(space)
    width = map_coord_width(space)
    gens = list(local_space(space).basis.vectors)
    for form in root_linear_forms(amb.field):
        gens.append(map_to_coords(diag_root_linear_map(space, form)))
    return MapSpace(space, SubspaceBasis.from_vectors(fp, width, gens))


def is_standard(f_map: AdditiveMap) -> bool:
    return standard_space(f_map.domain).contains_map(f_map)


def is_linear(f_map: AdditiveMap) -> bool:
    """Exhaustive check of F(c s) = c F(s) over scalars c and a K-basis."""
    space = f_map.domain
    f = space.ambient.field
    for b in space.basis.vectors:
        fb = evaluate_at_coeffs(f_map, prime_coeffs_of(space, b))
        for c in range(f.q):
            scaled = tuple(f.mul(c, x) for x in b)
            want = tuple(f.mul(c, x) for x in fb)
            if evaluate_at_coeffs(f_map, prime_coeffs_of(space, scaled)) != want:
                return False
    return True


def linear_maps_space(space: OperatorSpace) -> MapSpace:
    """All K-linear maps, cut out by F(x^t b_i) = x^t F(b_i) in coordinates."""
    f = space.ambient.field
    p, k = f.p, f.k
    n = space.ambient.nrows
    fp = prime_field(space)
    width = map_coord_width(space)
    stride = n * k
    if k == 1:
        return MapSpace(space, SubspaceBasis.full(fp, width))
    lams = [f.from_prime_coords(tuple(1 if u == t else 0 for u in range(k))) for t in range(k)]
    acc = make_accumulator(fp, width)
    rows = []
    for i in range(space.dim):
        for t in range(1, k):
            # values[i*k+t] - x^t * values[i*k] = 0, one row per (target
            # row r, prime coordinate w)
            for r in range(n):
                for w in range(k):
                    row = [0] * width
                    row[(i * k + t) * stride + r * k + w] = 1
                    for u in range(k):
                        digs = f.prime_coords(f.mul(lams[t], lams[u]))
                        if digs[w]:
                            idx = (i * k) * stride + r * k + u
                            row[idx] = (row[idx] - digs[w]) % p
                    rows.append(row)
    for row in rows:
        if isinstance(acc, Gf2Accumulator):
            bits = 0
            for j, x in enumerate(row):
                if x:
                    bits |= 1 << j
            acc.add(bits)
        else:
            acc.add(row)
    out_rows, _ = acc.rows_pivots()
    if isinstance(acc, Gf2Accumulator):
        out_rows = [tuple((r >> t) & 1 for t in range(width)) for r in out_rows]
    if not out_rows:
        return MapSpace(space, SubspaceBasis.full(fp, width))
    return MapSpace(space, kernel_basis(matrix_from_rows(fp, out_rows)))


def linear_rc_space(space: OperatorSpace, cap: int | None = None) -> MapSpace:
    """Range-compatible maps that are also K-linear."""
    rc = rc_solution_space(space, cap)
    lin = linear_maps_space(space)
    return MapSpace(space, intersect_spaces(rc.basis, lin.basis))


# ---------------------------------------------------------------------------
# quotients and products of maps


def quotient_map(f_map: AdditiveMap, w: SubspaceBasis) -> AdditiveMap:
    """Push F down to the quotient space {P s : s in S}, P projecting along w.

    Raises IllDefined unless F maps {s in S : P s = 0} into the kernel of P,
    which is exactly when G(P s) = P F(s) defines a map.
    """
    space = f_map.domain
    f = space.ambient.field
    amb = space.ambient
    k = f.k
    p_mat = quotient_projection(space, w)
    q_space = quotient_space(space, w)
    q_amb = q_space.ambient
    lams = [f.from_prime_coords(tuple(1 if u == t else 0 for u in range(k))) for t in range(k)]
    # K-linear projection phi : coords(S) -> coords(Q), columns phi(b_i)
    images = [
        encode(q_amb, p_mat.matmul(decode(amb, b))) for b in space.basis.vectors
    ]
    d = space.dim
    phi_cols = matrix_from_rows(f, images).transpose() if images else Matrix(f, q_amb.dim, 0, ())
    # well-definedness on the kernel of phi within S
    for gamma in kernel_basis(phi_cols).vectors:
        for lam in lams:
            coeffs = []
            for g in gamma:
                coeffs.extend(f.prime_coords(f.mul(lam, g)))
            value = evaluate_at_coeffs(f_map, coeffs)
            if any(p_mat.mat_vec(value)):
                raise IllDefined("map does not vanish where the projection does")
    # values on the prime basis of the quotient
    values = []
    for qb in q_space.basis.vectors:
        gamma = solve(phi_cols, qb)
        assert gamma is not None  # qb is in the image of phi by construction
        for lam in lams:
            coeffs = []
            for g in gamma:
                coeffs.extend(f.prime_coords(f.mul(lam, g)))
            value = evaluate_at_coeffs(f_map, coeffs)
            values.append(p_mat.mat_vec(value))
    return AdditiveMap(q_space, tuple(values))


def join_maps(f_map: AdditiveMap, g_map: AdditiveMap) -> AdditiveMap:
    """The map [M | R] -> F(M) + G(R) on the side-by-side product."""
    a, b = f_map.domain, g_map.domain
    s = side_by_side(a, b)
    amb = s.ambient
    split = a.ambient.ncols
    values = []
    for v in prime_basis_vectors(s):
        mat = decode(amb, v)
        left = matrix_from_rows(
            amb.field, [mat.row_tuple(i)[:split] for i in range(amb.nrows)]
        )
        right = matrix_from_rows(
            amb.field, [mat.row_tuple(i)[split:] for i in range(amb.nrows)]
        )
        fv = evaluate(f_map, left)
        gv = evaluate(g_map, right)
        values.append(tuple(amb.field.add(x, y) for x, y in zip(fv, gv)))
    return AdditiveMap(s, tuple(values))


def split_map(f_map: AdditiveMap) -> tuple[AdditiveMap, AdditiveMap]:
    """Undo join_maps on a domain built by side_by_side."""
    s = f_map.domain
    if s.product_of is None:
        raise AmbientMismatch("domain was not built by side_by_side")
    a, b = s.product_of
    amb = s.ambient
    f = amb.field
    split = a.ambient.ncols
    extra = amb.ncols - split

    def embed_left(mat):
        return matrix_from_rows(
            f, [list(mat.row_tuple(i)) + [0] * extra for i in range(amb.nrows)]
        )

    def embed_right(mat):
        return matrix_from_rows(
            f, [[0] * split + list(mat.row_tuple(i)) for i in range(amb.nrows)]
        )

    f_vals = [
        evaluate(f_map, embed_left(decode(a.ambient, v)))
        for v in prime_basis_vectors(a)
    ]
    g_vals = [
        evaluate(f_map, embed_right(decode(b.ambient, v)))
        for v in prime_basis_vectors(b)
    ]
    return AdditiveMap(a, tuple(f_vals)), AdditiveMap(b, tuple(g_vals))


# ---------------------------------------------------------------------------
# naive oracle


def naive_rc_maps(space: OperatorSpace, cap: int | None = None):
    """Every range-compatible map found by filtering all additive maps.

    Returns map coordinate tuples in ascending counter order.  Exponential in
    the coordinate count; guarded by the cap.
    """
    f = space.ambient.field
    p = f.p
    width = map_coord_width(space)
    limit = element_cap(cap)
    if p**width > limit:
        raise DomainTooLarge(f"{p ** width} candidate maps exceeds cap {limit}")
    if width == 0:
        return [()]
    if p == 2 and f.k == 1:
        return _naive_rc_maps_gf2(space)
    return _naive_rc_maps_generic(space)


def _element_value_sets(space: OperatorSpace):
    """For each nonzero element: (prime coefficients, set of valid values)."""
    amb = space.ambient
    out = []
    for coeffs, coords in iter_space_elements(space):
        if not any(coeffs):
            continue
        mat = decode(amb, coords)
        col_span = SubspaceBasis.from_vectors(
            amb.field, amb.nrows, [mat.col_tuple(j) for j in range(amb.ncols)]
        )
        out.append((coeffs, set(col_span.enumerate_elements())))
    return out


def _naive_rc_maps_generic(space: OperatorSpace):
    from itertools import product

    f = space.ambient.field
    p, k = f.p, f.k
    n = space.ambient.nrows
    d = space.dim * k
    width = map_coord_width(space)
    elements = _element_value_sets(space)
    accepted = []
    for coords in product(range(p), repeat=width):
        f_map = None
        values = []
        pos = 0
        for _ in range(d):
            row = []
            for _ in range(n):
                row.append(f.from_prime_coords(tuple(coords[pos : pos + k])))
                pos += k
            values.append(tuple(row))
        ok = True
        for coeffs, valid in elements:
            acc = [0] * n
            for c, val in zip(coeffs, values):
                if c:
                    for i in range(n):
                        if val[i]:
                            acc[i] = f.add(acc[i], f.mul(c, val[i]))
            if tuple(acc) not in valid:
                ok = False
                break
        if ok:
            accepted.append(tuple(coords))
    return accepted


def _naive_rc_maps_gf2(space: OperatorSpace):
    """Vectorized filter over all 2^width maps: per element s, the value
    index of F(s) is a batch of bit parities, tested against a lookup of the
    column space of s."""
    n = space.ambient.nrows
    width = map_coord_width(space)
    maps = np.arange(1 << width, dtype=np.uint64)
    keep = np.ones(maps.shape, dtype=bool)
    for coeffs, valid in _element_value_sets(space):
        masks = []
        for i in range(n):
            m = 0
            for j, c in enumerate(coeffs):
                if c:
                    m |= 1 << (j * n + i)
            masks.append(np.uint64(m))
        val_idx = np.zeros(maps.shape, dtype=np.uint64)
        for i in range(n):
            parity = np.bitwise_count(maps & masks[i]) & np.uint64(1)
            val_idx |= parity << np.uint64(i)
        table = np.zeros(1 << n, dtype=bool)
        for v in valid:
            idx = 0
            for i, x in enumerate(v):
                idx |= x << i
            table[idx] = True
        keep &= table[val_idx]
    hits = np.nonzero(keep)[0]
    return [
        tuple((int(h) >> t) & 1 for t in range(width))
        for h in hits
    ]


# ---------------------------------------------------------------------------
# JSON


def map_to_json(f_map: AdditiveMap) -> dict:
    return {
        "space": space_to_json(f_map.domain),
        "values": [list(v) for v in f_map.values],
    }


def map_from_json(obj: dict, space: OperatorSpace | None = None, max_order: int = 16) -> AdditiveMap:
    if space is None:
        space = space_from_json(obj["space"], max_order=max_order)
    values = tuple(tuple(int(x) for x in v) for v in obj["values"])
    return AdditiveMap(space, values)
