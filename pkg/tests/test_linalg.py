"""Tests for exact linear algebra, checked against brute-force enumeration."""

from __future__ import annotations

import random
from itertools import product

import pytest

from rckit.errors import ShapeMismatch
from rckit.field import make_field
from rckit.linalg import (
    Matrix,
    SubspaceBasis,
    annihilator,
    column_space,
    echelonize,
    gaussian_binomial,
    identity_matrix,
    intersect_spaces,
    kernel_basis,
    left_kernel_rows,
    matrix_from_json,
    matrix_from_rows,
    matrix_to_json,
    rank,
    rref,
    solve,
    subspace_count_up_to,
    sum_spaces,
    zero_matrix,
)

F2 = make_field(2)
F3 = make_field(3)
F4 = make_field(2, 2)


# -- brute-force oracles ----------------------------------------------------


def span_set(field, vectors, width):
    """Every linear combination of the vectors, as a set of tuples."""
    out = {tuple([0] * width)}
    for v in vectors:
        additions = [[field.mul(c, x) for x in v] for c in range(field.q)]
        out = {
            tuple(field.add(e[j], a[j]) for j in range(width))
            for e in out
            for a in additions
        }
    return out


def kernel_set(m):
    f = m.field
    return {
        x
        for x in product(range(f.q), repeat=m.cols)
        if not any(m.mat_vec(x))
    }


def random_matrix(rng, field, rows, cols):
    return Matrix(field, rows, cols, tuple(rng.randrange(field.q) for _ in range(rows * cols)))


# -- row reduction ----------------------------------------------------------


def test_rref_preserves_row_space_and_is_canonical():
    rng = random.Random(7)
    for field in (F2, F3, F4):
        for _ in range(60):
            rows, cols = rng.randrange(0, 4), rng.randrange(0, 5)
            m = random_matrix(rng, field, rows, cols)
            r, pivots = rref(m)
            orig = span_set(field, [m.row_tuple(i) for i in range(rows)], cols)
            red = span_set(field, [r.row_tuple(i) for i in range(r.rows)], cols)
            assert orig == red
            assert list(pivots) == sorted(pivots)
            for i, p in enumerate(pivots):
                col = [r.entry(t, p) for t in range(r.rows)]
                assert col == [1 if t == i else 0 for t in range(r.rows)]
                assert all(x == 0 for x in r.row_tuple(i)[:p])
            r2, p2 = rref(r)
            assert r2 == r and p2 == pivots


def test_gf2_fast_path_matches_generic_path():
    rng = random.Random(11)
    for _ in range(200):
        width = rng.randrange(0, 9)
        nvec = rng.randrange(0, 7)
        vecs = [tuple(rng.randrange(2) for _ in range(width)) for _ in range(nvec)]
        fast = echelonize(F2, vecs, width)
        slow = echelonize(F2, vecs, width, force_generic=True)
        assert fast == slow
    # exhaustive on all pairs of vectors in F_2^3
    all3 = list(product(range(2), repeat=3))
    for a in all3:
        for b in all3:
            assert echelonize(F2, [a, b], 3) == echelonize(F2, [a, b], 3, force_generic=True)


def test_rank_matches_span_cardinality():
    rng = random.Random(13)
    for field in (F2, F3, F4):
        for _ in range(40):
            m = random_matrix(rng, field, rng.randrange(0, 4), rng.randrange(0, 4))
            sp = span_set(field, [m.row_tuple(i) for i in range(m.rows)], m.cols)
            assert field.q ** rank(m) == len(sp)


# -- subspaces --------------------------------------------------------------


def test_subspace_membership_against_oracle():
    rng = random.Random(17)
    for field in (F2, F3, F4):
        for _ in range(30):
            width = rng.randrange(1, 5)
            vecs = [tuple(rng.randrange(field.q) for _ in range(width)) for _ in range(rng.randrange(0, 4))]
            basis = SubspaceBasis.from_vectors(field, width, vecs)
            sp = span_set(field, vecs, width)
            assert field.q ** basis.dim == len(sp)
            for v in product(range(field.q), repeat=width):
                assert basis.member(v) == (v in sp)
                coords = basis.coords_of(v)
                if coords is not None:
                    rebuilt = [0] * width
                    for c, row in zip(coords, basis.vectors):
                        rebuilt = [field.add(rebuilt[j], field.mul(c, row[j])) for j in range(width)]
                    assert tuple(rebuilt) == v


def test_subspace_equality_is_canonical():
    # different generating sets of one subspace produce equal bases
    b1 = SubspaceBasis.from_vectors(F3, 3, [(1, 2, 0), (0, 0, 1)])
    b2 = SubspaceBasis.from_vectors(F3, 3, [(2, 1, 1), (1, 2, 2), (2, 1, 0)])
    assert b1 == b2
    assert hash(b1) == hash(b2)
    assert b1 != SubspaceBasis.from_vectors(F3, 3, [(1, 2, 0)])


def test_enumerate_elements():
    basis = SubspaceBasis.from_vectors(F3, 3, [(1, 0, 2), (0, 1, 1)])
    elems = basis.enumerate_elements()
    assert len(elems) == 9 and len(set(elems)) == 9
    assert all(basis.member(v) for v in elems)
    assert elems[0] == (0, 0, 0)


def test_kernel_against_enumeration():
    rng = random.Random(19)
    for field in (F2, F3, F4):
        for _ in range(25):
            m = random_matrix(rng, field, rng.randrange(0, 4), rng.randrange(1, 4))
            ker = kernel_basis(m)
            oracle = kernel_set(m)
            assert field.q ** ker.dim == len(oracle)
            assert all(v in oracle for v in ker.vectors)
            assert ker == SubspaceBasis.from_vectors(field, m.cols, sorted(oracle))


def test_kernel_edge_shapes():
    assert kernel_basis(zero_matrix(F2, 0, 3)).dim == 3
    assert kernel_basis(zero_matrix(F2, 3, 0)).dim == 0
    assert kernel_basis(identity_matrix(F3, 4)).dim == 0


def test_column_space_and_left_kernel():
    rng = random.Random(23)
    for field in (F2, F3):
        for _ in range(25):
            m = random_matrix(rng, field, rng.randrange(1, 4), rng.randrange(0, 4))
            cs = column_space(m)
            for j in range(m.cols):
                assert cs.member(m.col_tuple(j))
            assert cs.dim == rank(m)
            for a in left_kernel_rows(field, m.entries, m.rows, m.cols):
                prod = [0] * m.cols
                for j in range(m.cols):
                    acc = 0
                    for i in range(m.rows):
                        acc = field.add(acc, field.mul(a[i], m.entry(i, j)))
                    prod[j] = acc
                assert not any(prod)
            assert len(left_kernel_rows(field, m.entries, m.rows, m.cols)) == m.rows - rank(m)


def test_solve():
    rng = random.Random(29)
    for field in (F2, F3, F4):
        for _ in range(40):
            m = random_matrix(rng, field, rng.randrange(1, 4), rng.randrange(1, 4))
            x = tuple(rng.randrange(field.q) for _ in range(m.cols))
            b = m.mat_vec(x)
            got = solve(m, b)
            assert got is not None and m.mat_vec(got) == b
    # inconsistent system
    m = matrix_from_rows(F2, [(1, 0), (1, 0)])
    assert solve(m, (1, 0)) is None
    assert solve(m, (1, 1)) == (1, 0)


def all_subspaces_f2(d):
    """Every subspace of F_2^d, found by closing over all generating subsets."""
    vectors = list(product(range(2), repeat=d))
    seen = set()
    for mask in range(2 ** len(vectors)):
        gens = [v for i, v in enumerate(vectors) if (mask >> i) & 1]
        seen.add(SubspaceBasis.from_vectors(F2, d, gens))
    return seen


def test_double_annihilator_exhaustive_f2_small_dims():
    for d in (1, 2, 3):
        subs = all_subspaces_f2(d)
        for w in subs:
            aw = annihilator(w)
            assert aw.dim == d - w.dim
            for a in aw.vectors:
                for v in w.vectors:
                    acc = 0
                    for x, y in zip(a, v):
                        acc = F2.add(acc, F2.mul(x, y))
                    assert acc == 0
            assert annihilator(aw) == w


def test_subspace_counts_match_gaussian_binomials():
    subs = all_subspaces_f2(3)
    assert len(subs) == sum(gaussian_binomial(3, k, 2) for k in range(4))
    by_dim = {}
    for s in subs:
        by_dim[s.dim] = by_dim.get(s.dim, 0) + 1
    assert by_dim == {0: 1, 1: 7, 2: 7, 3: 1}


def test_double_annihilator_randomized_f3_f4():
    rng = random.Random(31)
    for field in (F3, F4):
        for _ in range(40):
            d = rng.randrange(1, 6)
            vecs = [tuple(rng.randrange(field.q) for _ in range(d)) for _ in range(rng.randrange(0, 4))]
            w = SubspaceBasis.from_vectors(field, d, vecs)
            assert annihilator(annihilator(w)) == w


def test_sum_and_intersection_dimension_formula():
    rng = random.Random(37)
    for field in (F2, F3, F4):
        for _ in range(40):
            d = rng.randrange(1, 6)
            mk = lambda: SubspaceBasis.from_vectors(
                field, d,
                [tuple(rng.randrange(field.q) for _ in range(d)) for _ in range(rng.randrange(0, 4))],
            )
            a, b = mk(), mk()
            s, i = sum_spaces(a, b), intersect_spaces(a, b)
            assert s.dim + i.dim == a.dim + b.dim
            assert s.contains_space(a) and s.contains_space(b)
            assert a.contains_space(i) and b.contains_space(i)


def test_gaussian_binomial_values():
    assert gaussian_binomial(6, 5, 2) == 63
    assert gaussian_binomial(6, 5, 3) == 364
    assert gaussian_binomial(6, 6, 2) == 1
    assert gaussian_binomial(4, 2, 2) == 35
    for n in range(7):
        for k in range(n + 1):
            assert gaussian_binomial(n, k, 2) == gaussian_binomial(n, n - k, 2)
    assert subspace_count_up_to(6, 1, 2) == 64
    assert subspace_count_up_to(6, 1, 3) == 365
    assert subspace_count_up_to(6, 0, 3) == 1


def test_matrix_ops():
    rng = random.Random(41)
    for field in (F2, F4):
        a = random_matrix(rng, field, 3, 4)
        b = random_matrix(rng, field, 4, 2)
        c = random_matrix(rng, field, 2, 3)
        assert a.matmul(b).matmul(c) == a.matmul(b.matmul(c))
        assert a.matmul(identity_matrix(field, 4)) == a
        assert a.transpose().transpose() == a
        x = tuple(rng.randrange(field.q) for _ in range(2))
        assert a.matmul(b).mat_vec(x) == a.mat_vec(b.mat_vec(x))
    with pytest.raises(ShapeMismatch):
        zero_matrix(F2, 2, 3).matmul(zero_matrix(F2, 2, 3))
    with pytest.raises(ShapeMismatch):
        zero_matrix(F2, 2, 3).mat_vec((0, 0))


def test_matrix_json_round_trip():
    m = matrix_from_rows(F4, [(0, 1, 2), (3, 2, 1)])
    obj = matrix_to_json(m)
    assert obj == {"rows": 2, "cols": 3, "entries": [[0, 1, 2], [3, 2, 1]]}
    assert matrix_from_json(F4, obj) == m
    with pytest.raises(ValueError):
        matrix_from_json(F2, {"rows": 1, "cols": 1, "entries": [[5]]})
    with pytest.raises(ShapeMismatch):
        matrix_from_json(F2, {"rows": 2, "cols": 1, "entries": [[1]]})
