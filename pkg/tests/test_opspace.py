"""Tests for structured matrix ambients, builders, and subspace machinery."""

from __future__ import annotations

import random
from itertools import product

import pytest

from rckit.errors import (
    AmbientMismatch,
    BadParams,
    EnumerationCapExceeded,
    MatrixNotInAmbient,
)
from rckit.field import make_field
from rckit.linalg import SubspaceBasis, kernel_basis, matrix_from_rows, rank
from rckit.opspace import (
    Ambient,
    build_alt_2n5,
    build_alt_2n6,
    build_alt_col1,
    build_full_alt,
    build_full_rect,
    build_full_sym,
    build_mf,
    build_space,
    build_sym_block,
    build_t3,
    build_u2_block,
    count_subspaces,
    decode,
    direct_sum,
    encode,
    enumerate_subspaces,
    enumerate_subspaces_up_to,
    full_space,
    mf_membership,
    modulo_part,
    quotient_space,
    restricted_part,
    side_by_side,
    space_from_coords,
    space_from_json,
    space_from_matrices,
    space_to_json,
)

F2 = make_field(2)
F3 = make_field(3)
F4 = make_field(2, 2)


def random_coords(rng, amb):
    return tuple(rng.randrange(amb.field.q) for _ in range(amb.dim))


def test_ambient_dimensions():
    assert Ambient(F2, "sym", 3, 0).dim == 6
    assert Ambient(F2, "sym", 3, 1).dim == 9
    assert Ambient(F2, "alt", 4, 0).dim == 6
    assert Ambient(F3, "alt", 3, 1).dim == 6
    assert Ambient(F3, "full", 2, 3).dim == 6
    assert Ambient(F2, "alt", 1, 0).dim == 0
    assert Ambient(F2, "sym", 0, 0).dim == 0
    with pytest.raises(BadParams):
        Ambient(F2, "weird", 2, 0)


def test_encode_decode_round_trip():
    rng = random.Random(5)
    ambients = [
        Ambient(F2, "sym", 3, 0),
        Ambient(F3, "sym", 2, 2),
        Ambient(F4, "alt", 3, 0),
        Ambient(F3, "alt", 4, 1),
        Ambient(F2, "full", 2, 3),
        Ambient(F3, "alt", 1, 2),
    ]
    for amb in ambients:
        for _ in range(20):
            v = random_coords(rng, amb)
            m = decode(amb, v)
            assert encode(amb, m) == v
            assert m.rows == amb.nrows and m.cols == amb.ncols


def test_alt_sign_convention_anchor():
    # [[0,-a,b],[a,0,-c],[-b,c,0]] must encode to (a, b, c)
    amb = Ambient(F3, "alt", 3, 0)
    a, b, c = 1, 2, 1
    m = matrix_from_rows(
        F3,
        [
            (0, F3.neg(a), b),
            (a, 0, F3.neg(c)),
            (F3.neg(b), c, 0),
        ],
    )
    assert encode(amb, m) == (a, b, c)
    # and its kernel is spanned by (c, b, a)
    assert kernel_basis(m) == SubspaceBasis.from_vectors(F3, 3, [(c, b, a)])


def test_nonzero_alternating_3x3_has_rank_2():
    for f in (F2, F3, F4):
        amb = Ambient(f, "alt", 3, 0)
        for v in product(range(f.q), repeat=3):
            m = decode(amb, v)
            assert rank(m) == (2 if any(v) else 0)


def test_encode_rejects_wrong_structure():
    with pytest.raises(MatrixNotInAmbient):
        encode(Ambient(F2, "sym", 2, 0), matrix_from_rows(F2, [(0, 1), (0, 0)]))
    with pytest.raises(MatrixNotInAmbient):
        encode(Ambient(F3, "alt", 2, 0), matrix_from_rows(F3, [(0, 1), (1, 0)]))
    with pytest.raises(MatrixNotInAmbient):
        encode(Ambient(F3, "alt", 2, 0), matrix_from_rows(F3, [(1, 1), (2, 0)]))
    with pytest.raises(MatrixNotInAmbient):
        encode(Ambient(F2, "sym", 2, 1), matrix_from_rows(F2, [(0, 1), (1, 0)]))


def test_builder_dimensions_and_codimensions():
    for f in (F2, F3, F4):
        assert build_full_sym(f, 3).dim == 6
        assert build_full_alt(f, 4).dim == 6
        assert build_t3(f).codim == 1
        assert build_sym_block(f, 3).codim == 2  # n - 1
        assert build_sym_block(f, 4).codim == 3
        assert build_u2_block(f, 3).codim == 3  # 2n - 3
        assert build_u2_block(f, 4).codim == 5
        assert build_alt_col1(f, 4).codim == 2  # n - 2
        assert build_alt_col1(f, 5).codim == 3
        assert build_alt_2n5(f, 4).codim == 3  # 2n - 5
        assert build_alt_2n5(f, 5).codim == 5
        assert build_alt_2n5(f, 6).codim == 7
        assert build_alt_2n6(f, 4).codim == 2  # 2n - 6
        assert build_alt_2n6(f, 5).codim == 4


def test_t3_membership():
    s = build_t3(F3)
    assert s.contains(matrix_from_rows(F3, [(1, 2, 1), (2, 2, 0), (1, 0, 1)]))
    assert not s.contains(matrix_from_rows(F3, [(1, 2, 1), (2, 2, 1), (1, 1, 1)]))


def test_u2_membership():
    s = build_u2_block(F3, 3)
    assert s.contains(matrix_from_rows(F3, [(2, 1, 0), (1, 0, 0), (0, 0, 2)]))
    # nonzero (2,2) entry inside the U_2 block is excluded
    assert not s.contains(matrix_from_rows(F3, [(0, 0, 0), (0, 1, 0), (0, 0, 0)]))
    # off-diagonal coupling between the two blocks is excluded
    assert not s.contains(matrix_from_rows(F3, [(0, 0, 1), (0, 0, 0), (1, 0, 0)]))


def test_alt_2n5_membership():
    s = build_alt_2n5(F3, 4)
    amb = s.ambient
    # block [a b; 0 a] at rows 3..4, cols 1..2 (1-indexed)
    ent = [[0] * 4 for _ in range(4)]
    ent[2][0], ent[0][2] = 1, F3.neg(1)
    ent[3][1], ent[1][3] = 1, F3.neg(1)
    ent[2][1], ent[1][2] = 2, F3.neg(2)
    ent[3][2], ent[2][3] = 2, F3.neg(2)
    assert s.contains(matrix_from_rows(F3, ent))
    # a lone a_{31} entry breaks the Toeplitz shape
    lone = [[0] * 4 for _ in range(4)]
    lone[2][0], lone[0][2] = 1, F3.neg(1)
    assert not s.contains(matrix_from_rows(F3, lone))
    # lower-left must vanish at position (4,1)
    low = [[0] * 4 for _ in range(4)]
    low[3][0], low[0][3] = 1, F3.neg(1)
    assert not s.contains(matrix_from_rows(F3, low))
    assert full_space(amb).contains(matrix_from_rows(F3, low))


def test_alt_2n6_membership():
    s = build_alt_2n6(F2, 4)
    sym_block = [[0] * 4 for _ in range(4)]
    sym_block[2][1] = sym_block[1][2] = 1
    sym_block[3][0] = sym_block[0][3] = 1
    assert s.contains(matrix_from_rows(F2, sym_block))
    skew = [[0] * 4 for _ in range(4)]
    skew[2][1] = skew[1][2] = 1
    assert not s.contains(matrix_from_rows(F2, skew))


def test_direct_sum_matches_sym_block_builder():
    for f in (F2, F3, F4):
        a = build_full_sym(f, 1)
        b = build_full_sym(f, 2)
        assert direct_sum(a, b) == build_sym_block(f, 3)
    with pytest.raises(AmbientMismatch):
        direct_sum(build_full_sym(F2, 2), build_full_alt(F2, 2))


def test_side_by_side():
    a = build_full_sym(F3, 2)
    b = build_full_rect(F3, 2, 1)
    s = side_by_side(a, b)
    assert s == build_full_sym(F3, 2, 1)
    assert s.product_of == (a, b)
    assert s.dim == a.dim + b.dim
    # equality ignores product bookkeeping
    assert s == full_space(Ambient(F3, "sym", 2, 1))
    with pytest.raises(AmbientMismatch):
        side_by_side(a, build_full_rect(F3, 3, 1))
    with pytest.raises(AmbientMismatch):
        side_by_side(a, build_full_sym(F3, 2))


def test_restricted_and_modulo_parts():
    s = build_full_sym(F3, 2, 1)
    r = restricted_part(s)
    m = modulo_part(s)
    assert r == build_full_sym(F3, 2)
    assert m == build_full_rect(F3, 2, 1)
    rng = random.Random(9)
    for f in (F2, F3):
        amb = Ambient(f, "alt", 3, 2)
        for _ in range(25):
            vecs = [random_coords(rng, amb) for _ in range(rng.randrange(0, 7))]
            s = space_from_coords(amb, vecs)
            assert restricted_part(s).dim + modulo_part(s).dim == s.dim


def test_quotient_space_of_full_sym():
    # project away the last coordinate direction of the target space
    for f, n in [(F2, 3), (F3, 3), (F2, 4)]:
        s = build_full_sym(f, n)
        w = SubspaceBasis.from_vectors(
            f, n, [tuple(1 if i == n - 1 else 0 for i in range(n))]
        )
        q = quotient_space(s, w)
        assert q.ambient.kind == "full"
        assert q.ambient.n == n - 1 and q.ambient.m == n
        # oracle: rank of the projected basis
        proj = [encode(q.ambient, m) for m in (quotient_space(s, w)).basis_matrices()]
        assert q.dim == len(proj)
        assert q.dim == s.dim - 1  # only multiples of E_nn die under P
    # quotient by the zero space keeps the dimension
    s = build_full_sym(F2, 3)
    z = SubspaceBasis.zero(F2, 3)
    assert quotient_space(s, z).dim == s.dim
    # quotient by everything is the zero space of 0 x n matrices
    e = SubspaceBasis.full(F2, 3)
    assert quotient_space(s, e).dim == 0
    with pytest.raises(AmbientMismatch):
        quotient_space(s, SubspaceBasis.zero(F2, 2))


def test_quotient_kernel_dimension_identity():
    # dim S = dim quotient + dim {M in S : PM = 0}, exhaustively checked
    rng = random.Random(21)
    for f in (F2, F3):
        amb = Ambient(f, "sym", 3, 0)
        for _ in range(15):
            vecs = [random_coords(rng, amb) for _ in range(rng.randrange(0, 5))]
            s = space_from_coords(amb, vecs)
            w = SubspaceBasis.from_vectors(
                f, 3, [tuple(rng.randrange(f.q) for _ in range(3))]
            )
            q = quotient_space(s, w)
            killed = 0
            from rckit.opspace import quotient_projection

            p = quotient_projection(s, w)
            for v in s.basis.enumerate_elements():
                if not any(p.matmul(decode(amb, v)).entries):
                    killed += 1
            assert f.q ** (s.dim - q.dim) == killed


def test_mf_builder():
    for f in (F2, F3):
        assert build_mf(f, 0, ()) == build_full_alt(f, 3)
        for coeffs in product(range(f.q), repeat=3):
            s = build_mf(f, 1, coeffs)
            assert s.codim == 1 and s.ambient.dim == 6
            for v in s.basis.enumerate_elements():
                assert mf_membership(f, 1, coeffs, decode(s.ambient, v))
            hits = sum(
                mf_membership(f, 1, coeffs, decode(s.ambient, v))
                for v in product(range(f.q), repeat=6)
            )
            assert hits == f.q**5
    s = build_mf(F2, 2, (1, 0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0))
    assert s.codim == 1 and s.ambient.dim == 9
    with pytest.raises(BadParams):
        build_mf(F2, 1, (0, 1))
    with pytest.raises(BadParams):
        build_mf(F3, 1, (0, 1, 3))


def test_build_space_designators():
    assert build_space("full-sym:3", F2) == build_full_sym(F2, 3)
    assert build_space("full-alt:4", F3) == build_full_alt(F3, 4)
    assert build_space("t3", F4) == build_t3(F4)
    assert build_space("sym-block:3", F4) == build_sym_block(F4, 3)
    assert build_space("u2:3", F3) == build_u2_block(F3, 3)
    assert build_space("alt-col1:4", F4) == build_alt_col1(F4, 4)
    assert build_space("alt-2n5:4", F2) == build_alt_2n5(F2, 4)
    assert build_space("alt-2n6:4", F2) == build_alt_2n6(F2, 4)
    assert build_space("mf:r=1,f=012", F3) == build_mf(F3, 1, (0, 1, 2))
    for bad in ("nope", "u2", "mf:r=1", "mf:f=0", "sym-block:"):
        with pytest.raises(BadParams):
            build_space(bad, F2)


def test_enumerate_subspaces_counts_and_determinism():
    amb = Ambient(F2, "sym", 2, 0)  # dimension 3
    ones = list(enumerate_subspaces(amb, 1))
    assert len(ones) == count_subspaces(amb, 1) == 7
    assert len({s.basis for s in ones}) == 7
    assert all(s.codim == 1 for s in ones)
    again = list(enumerate_subspaces(amb, 1))
    assert [s.basis for s in ones] == [s.basis for s in again]
    # brute-force cross-check: spans of all generator subsets give the same set
    all_vecs = list(product(range(2), repeat=3))
    brute = set()
    for mask in range(2 ** len(all_vecs)):
        gens = [v for i, v in enumerate(all_vecs) if (mask >> i) & 1]
        b = SubspaceBasis.from_vectors(F2, 3, gens)
        if b.dim == 2:
            brute.add(b)
    assert {s.basis for s in ones} == brute
    assert len(list(enumerate_subspaces(amb, 0))) == 1
    assert len(list(enumerate_subspaces(amb, 3))) == 1
    up = list(enumerate_subspaces_up_to(amb, 1))
    assert len(up) == 8 and up[0].codim == 0


def test_enumerate_subspaces_f3_counts():
    amb = Ambient(F3, "alt", 3, 0)  # dimension 3
    assert len(list(enumerate_subspaces(amb, 1))) == 13
    assert count_subspaces(Ambient(F3, "sym", 3, 0), 1) == 364


def test_enumeration_cap():
    amb = Ambient(F2, "sym", 3, 0)
    with pytest.raises(EnumerationCapExceeded):
        list(enumerate_subspaces(amb, 1, cap=10))
    with pytest.raises(EnumerationCapExceeded):
        list(enumerate_subspaces_up_to(amb, 1, cap=63))
    with pytest.raises(BadParams):
        list(enumerate_subspaces(amb, 7))


def test_space_json_round_trip():
    s = build_u2_block(F4, 3)
    obj = space_to_json(s)
    assert obj["field"] == "2^2"
    assert obj["ambient"] == {"kind": "sym", "n": 3, "m": 0}
    assert space_from_json(obj) == s
    with pytest.raises(ValueError):
        space_from_json({"field": "2", "ambient": {"kind": "sym", "n": 2, "m": 0}, "basis": [[9, 0, 0]]})


def test_space_from_matrices_canonicalizes():
    amb = Ambient(F3, "sym", 2, 0)
    m1 = matrix_from_rows(F3, [(1, 2), (2, 0)])
    m2 = matrix_from_rows(F3, [(2, 1), (1, 0)])  # 2 * m1
    s = space_from_matrices(amb, [m1, m2, m1])
    assert s.dim == 1
    assert s.basis.vectors[0][0] == 1  # leading coefficient normalized
