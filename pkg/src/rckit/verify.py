"""Verification suites for the classification and optimality results.

Each suite enumerates (or deterministically samples) a family of cases,
decides the claimed property on every case with the exact solvers from
`rcmaps`, and returns a VerificationReport.  For a fixed suite spec the
JSON form of the report is byte-for-byte reproducible, independent of the
worker count: case lists are materialised in a canonical order before any
work is dispatched, and `Pool.map` preserves that order.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from functools import lru_cache, partial
from itertools import product
from multiprocessing import get_context

import numpy as np

from . import __version__
from .errors import BadParams, EnumerationCapExceeded, IllDefined
from .field import FieldSpec, parse_field_label
from .linalg import Matrix, SubspaceBasis, kernel_basis, matrix_from_rows, rank
from .opspace import (
    Ambient,
    KIND_ALT,
    KIND_FULL,
    KIND_SYM,
    OperatorSpace,
    build_alt_col1,
    build_alt_2n5,
    build_alt_2n6,
    build_full_alt,
    build_full_sym,
    build_mf,
    build_sym_block,
    build_t3,
    build_u2_block,
    count_subspaces,
    decode,
    dual_rref_rows,
    encode,
    enumerate_subspaces_up_to,
    full_space,
    quotient_projection,
    restricted_part,
    side_by_side,
    space_from_coords,
    space_to_json,
)
from .rcmaps import (
    AdditiveMap,
    MapSpace,
    element_cap,
    evaluate,
    is_linear,
    is_local,
    is_range_compatible,
    is_standard,
    iter_space_elements,
    join_maps,
    linear_rc_space,
    local_space,
    map_coord_width,
    map_from_coords,
    map_from_function,
    map_to_coords,
    naive_rc_maps,
    quotient_map,
    random_map,
    rc_solution_space,
    respects_row_decomposition,
    split_map,
    standard_space,
)

# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True, slots=True)
class SuiteSpec:
    """Everything that determines a suite run except the worker count."""

    suite: str
    field: str | None = None
    n: int | None = None
    m: int | None = None
    codim: int | None = None
    r: int | None = None
    trials: int | None = None
    samples: int | None = None
    seed: int | None = None
    cap: int | None = None

    def to_json(self) -> dict:
        out: dict = {"suite": self.suite}
        for key in ("field", "n", "m", "codim", "r", "trials", "samples", "seed", "cap"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out


@dataclass(frozen=True, slots=True)
class VerificationReport:
    spec: SuiteSpec
    cases_run: int
    passes: int
    failures: tuple[dict, ...]
    wall_time: float
    tool_version: str

    @property
    def verified(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.spec.to_json(),
            "casesRun": self.cases_run,
            "passes": self.passes,
            "failures": [dict(f) for f in self.failures],
            "verdict": "verified" if self.verified else "falsified",
            "wallTime": self.wall_time,
            "toolVersion": self.tool_version,
        }


def report_from_json(obj: dict) -> VerificationReport:
    raw = dict(obj["suite"])
    spec = SuiteSpec(
        suite=raw.pop("suite"),
        **{k: raw.get(k) for k in ("field", "n", "m", "codim", "r", "trials", "samples", "seed", "cap")},
    )
    return VerificationReport(
        spec,
        obj["casesRun"],
        obj["passes"],
        tuple(dict(f) for f in obj["failures"]),
        obj["wallTime"],
        obj["toolVersion"],
    )


def _failure(space: OperatorSpace, map_coords, reason: str) -> dict:
    return {
        "space": space_to_json(space),
        "map": None if map_coords is None else [int(c) for c in map_coords],
        "reason": reason,
    }


def _finish(spec: SuiteSpec, per_case, t0: float) -> VerificationReport:
    failures = tuple(f for fails in per_case for f in fails)
    passes = sum(1 for fails in per_case if not fails)
    return VerificationReport(
        spec, len(per_case), passes, failures, time.perf_counter() - t0, __version__
    )


def _map_cases(worker, cases, jobs: int = 1):
    cases = list(cases)
    if jobs and jobs > 1 and len(cases) > 1:
        ctx = get_context("fork")
        with ctx.Pool(processes=jobs) as pool:
            chunk = max(1, len(cases) // (jobs * 8))
            return pool.map(worker, cases, chunksize=chunk)
    return [worker(c) for c in cases]


# ---------------------------------------------------------------------------
# shared case predicates


def _standard_class_case(cap: int, space: OperatorSpace) -> list[dict]:
    rc = rc_solution_space(space, cap=cap)
    std = standard_space(space)
    return [
        _failure(space, vec, "range-compatible map is not standard")
        for vec in rc.basis.vectors
        if not std.basis.member(vec)
    ]


def _local_class_case(cap: int, space: OperatorSpace) -> list[dict]:
    rc = rc_solution_space(space, cap=cap)
    loc = local_space(space)
    if rc.basis == loc.basis:
        return []
    out = [
        _failure(space, vec, "range-compatible map is not local")
        for vec in rc.basis.vectors
        if not loc.basis.member(vec)
    ]
    out.extend(
        _failure(space, vec, "local map missing from the solution space")
        for vec in loc.basis.vectors
        if not rc.basis.member(vec)
    )
    return out


# ---------------------------------------------------------------------------
# main classification suites


def run_sym_main(
    field: FieldSpec,
    n: int,
    m: int = 0,
    codim: int | None = None,
    cap: int | None = None,
    jobs: int = 1,
) -> VerificationReport:
    """Every subspace of Sym(n, m) with codimension <= codim has all of its
    range-compatible maps standard.  The bound must stay within 0..n-2."""
    if n < 2:
        raise BadParams("the symmetric classification needs n >= 2")
    if codim is None:
        codim = n - 2
    if not 0 <= codim <= n - 2:
        raise BadParams(f"codimension bound {codim} outside the admissible range 0..{n - 2}")
    cap = element_cap(cap)
    t0 = time.perf_counter()
    amb = Ambient(field, KIND_SYM, n, m)
    cases = list(enumerate_subspaces_up_to(amb, codim, cap=cap))
    per_case = _map_cases(partial(_standard_class_case, cap), cases, jobs)
    spec = SuiteSpec("sym-main", field=field.label, n=n, m=m, codim=codim, cap=cap)
    return _finish(spec, per_case, t0)


def run_alt_main(
    field: FieldSpec,
    n: int,
    m: int = 0,
    codim: int | None = None,
    cap: int | None = None,
    jobs: int = 1,
) -> VerificationReport:
    """Every admissible subspace of Alt(n, m) has range-compatible == local.

    Admissible means codim <= n-2 and the restricted part (tail forced to
    zero) has codimension <= n-3 inside Alt(n).  Subspaces enumerated up to
    the requested codimension that miss the second condition are skipped and
    not counted.
    """
    if n < 3:
        raise BadParams("the alternating classification needs n >= 3")
    if codim is None:
        codim = n - 2
    if not 0 <= codim <= n - 2:
        raise BadParams(f"codimension bound {codim} outside the admissible range 0..{n - 2}")
    cap = element_cap(cap)
    t0 = time.perf_counter()
    amb = Ambient(field, KIND_ALT, n, m)
    cases = [
        s
        for s in enumerate_subspaces_up_to(amb, codim, cap=cap)
        if restricted_part(s).codim <= n - 3
    ]
    per_case = _map_cases(partial(_local_class_case, cap), cases, jobs)
    spec = SuiteSpec("alt-main", field=field.label, n=n, m=m, codim=codim, cap=cap)
    return _finish(spec, per_case, t0)


def run_rect_group(
    field: FieldSpec,
    n: int,
    m: int,
    codim: int | None = None,
    cap: int | None = None,
    jobs: int = 1,
) -> VerificationReport:
    """Every subspace of the n x m rectangles with codimension <= codim
    (bounded by n-2) has range-compatible == local."""
    if n < 2 or m < 1:
        raise BadParams("rectangle suite needs n >= 2 rows and m >= 1 columns")
    if codim is None:
        codim = n - 2
    if not 0 <= codim <= n - 2:
        raise BadParams(f"codimension bound {codim} outside the admissible range 0..{n - 2}")
    cap = element_cap(cap)
    t0 = time.perf_counter()
    amb = Ambient(field, KIND_FULL, n, m)
    cases = list(enumerate_subspaces_up_to(amb, codim, cap=cap))
    per_case = _map_cases(partial(_local_class_case, cap), cases, jobs)
    spec = SuiteSpec("rect-group", field=field.label, n=n, m=m, codim=codim, cap=cap)
    return _finish(spec, per_case, t0)


def run_full_sym_class(field: FieldSpec, n: int, cap: int | None = None) -> VerificationReport:
    """On the full space Sym(n): solution space == standard maps, the
    standard dimension exceeds the local one by k exactly in characteristic
    two, and (when the brute-force search fits under the cap) the naive
    filter over all additive maps finds the same set."""
    if n < 2:
        raise BadParams("the full symmetric classification needs n >= 2")
    cap = element_cap(cap)
    t0 = time.perf_counter()
    space = build_full_sym(field, n)
    fails: list[dict] = []
    rc = rc_solution_space(space, cap=cap)
    std = standard_space(space)
    loc = local_space(space)
    for vec in rc.basis.vectors:
        if not std.basis.member(vec):
            fails.append(_failure(space, vec, "range-compatible map is not standard"))
    for vec in std.basis.vectors:
        if not rc.basis.member(vec):
            fails.append(_failure(space, vec, "standard map missing from the solution space"))
    extra = field.k if field.p == 2 else 0
    if std.dim != loc.dim + extra:
        fails.append(
            _failure(
                space,
                None,
                f"standard dimension {std.dim} != local dimension {loc.dim} + {extra}",
            )
        )
    if field.p ** map_coord_width(space) <= cap:
        brute = naive_rc_maps(space, cap=cap)
        if len(brute) != field.p**rc.dim:
            fails.append(
                _failure(
                    space,
                    None,
                    f"brute-force count {len(brute)} != p^dim {field.p ** rc.dim}",
                )
            )
        else:
            for coords in brute:
                if not rc.contains_coords(coords):
                    fails.append(
                        _failure(space, coords, "brute-force map outside the solution space")
                    )
                    break
    spec = SuiteSpec("full-sym-class", field=field.label, n=n, cap=cap)
    return _finish(spec, [fails], t0)


def run_full_alt_class(field: FieldSpec, n: int, cap: int | None = None) -> VerificationReport:
    """On the full space Alt(n): linear range-compatible maps == local maps."""
    if n < 0:
        raise BadParams("need n >= 0")
    cap = element_cap(cap)
    t0 = time.perf_counter()
    space = build_full_alt(field, n)
    lin_rc = linear_rc_space(space, cap=cap)
    loc = local_space(space)
    fails = [
        _failure(space, vec, "linear range-compatible map is not local")
        for vec in lin_rc.basis.vectors
        if not loc.basis.member(vec)
    ]
    fails.extend(
        _failure(space, vec, "local map missing from the linear solution space")
        for vec in loc.basis.vectors
        if not lin_rc.basis.member(vec)
    )
    spec = SuiteSpec("full-alt-class", field=field.label, n=n, cap=cap)
    return _finish(spec, [fails], t0)


# ---------------------------------------------------------------------------
# optimality witnesses


def _witness_case(case) -> list[dict]:
    name, f_map, want_codim, checks = case
    space = f_map.domain
    fails = []
    if space.codim != want_codim:
        fails.append(
            _failure(space, None, f"{name}: codimension {space.codim}, expected {want_codim}")
        )
    coords = map_to_coords(f_map)
    for check in checks:
        if check == "rc":
            ok = is_range_compatible(f_map)
        elif check == "linear":
            ok = is_linear(f_map)
        elif check == "not-local":
            ok = is_local(f_map) is None
        elif check == "not-standard":
            ok = not is_standard(f_map)
        else:  # pragma: no cover - guarded by the fixed case tables
            raise BadParams(f"unknown witness check '{check}'")
        if not ok:
            fails.append(_failure(space, coords, f"{name}: witness check '{check}' failed"))
    return fails


def sym_witness_cases() -> list:
    """Maps showing the symmetric codimension bounds cannot be relaxed."""
    f4 = parse_field_label("2^2")
    cases = []
    block = build_sym_block(f4, 3)
    frob = map_from_function(
        block, lambda mat: (f4.frobenius(mat.entry(0, 0)),) + (0,) * 2
    )
    cases.append(("sym-block:3 over 2^2", frob, 2, ("rc", "not-standard")))
    for label in ("2", "3"):
        f = parse_field_label(label)
        u2 = build_u2_block(f, 3)
        corner = map_from_function(u2, lambda mat: (mat.entry(0, 0), 0, 0))
        cases.append((f"u2:3 over {label}", corner, 3, ("rc", "linear", "not-local")))
    return cases


def alt_witness_cases() -> list:
    """Maps showing the alternating codimension bounds cannot be relaxed."""
    f4 = parse_field_label("2^2")
    cases = []
    col1 = build_alt_col1(f4, 4)
    frob = map_from_function(
        col1, lambda mat: (0, f4.frobenius(mat.entry(1, 0)), 0, 0)
    )
    cases.append(("alt-col1:4 over 2^2", frob, 2, ("rc", "not-local")))
    for label in ("2", "3"):
        f = parse_field_label(label)
        toep = build_alt_2n5(f, 4)
        pick = map_from_function(toep, lambda mat: (0, 0, mat.entry(2, 1), 0))
        cases.append((f"alt-2n5:4 over {label}", pick, 3, ("rc", "linear", "not-local")))
    f2 = parse_field_label("2")
    symb = build_alt_2n6(f2, 4)
    two = map_from_function(symb, lambda mat: (0, 0, mat.entry(2, 0), mat.entry(3, 1)))
    cases.append(("alt-2n6:4 over 2", two, 2, ("rc", "linear", "not-local")))
    return cases


def run_sym_optimality(cap: int | None = None, jobs: int = 1) -> VerificationReport:
    cap = element_cap(cap)
    t0 = time.perf_counter()
    per_case = _map_cases(_witness_case, sym_witness_cases(), jobs)
    return _finish(SuiteSpec("sym-optimality", cap=cap), per_case, t0)


def run_alt_optimality(cap: int | None = None, jobs: int = 1) -> VerificationReport:
    cap = element_cap(cap)
    t0 = time.perf_counter()
    per_case = _map_cases(_witness_case, alt_witness_cases(), jobs)
    return _finish(SuiteSpec("alt-optimality", cap=cap), per_case, t0)


# ---------------------------------------------------------------------------
# rank-one gap lemma


def line_reps(field: FieldSpec, n: int) -> list[tuple[int, ...]]:
    """Canonical representatives of the lines of K^n: first nonzero entry 1."""
    out = []
    for vec in product(range(field.q), repeat=n):
        lead = next((c for c in vec if c), None)
        if lead == 1:
            out.append(vec)
    return out


def _rank1_candidates(field: FieldSpec, n: int):
    """Coordinates of c * x x^T for every line rep x and scalar c != 0."""
    amb = Ambient(field, KIND_SYM, n, 0)
    rows = []
    for x in line_reps(field, n):
        for c in range(1, field.q):
            entries = [
                field.mul(c, field.mul(x[i], x[j])) for i in range(n) for j in range(n)
            ]
            rows.append(encode(amb, Matrix(field, n, n, tuple(entries))))
    return rows


def _rank1_case(field: FieldSpec, n: int, cand, ann_rows) -> list[dict]:
    scalars = field.q - 1
    if field.k == 1:
        a = np.array(ann_rows, dtype=np.int64)
        hit = (a @ cand.T) % field.p
        in_w = ~hit.any(axis=0)
    else:
        in_w = []
        for vec in cand:
            ok = True
            for row in ann_rows:
                acc = 0
                for r, v in zip(row, vec):
                    if r and v:
                        acc = field.add(acc, field.mul(r, v))
                if acc:
                    ok = False
                    break
            in_w.append(ok)
        in_w = np.array(in_w)
    line_hit = in_w.reshape(-1, scalars).any(axis=1)
    gaps = int((~line_hit).sum())
    if gaps >= 2:
        return []
    amb = Ambient(field, KIND_SYM, n, 0)
    space = OperatorSpace(amb, kernel_basis(matrix_from_rows(field, ann_rows)))
    return [_failure(space, None, f"only {gaps} gap line(s); expected at least 2")]


def run_rank1_gaps(
    field: FieldSpec, n: int = 3, cap: int | None = None, jobs: int = 1
) -> VerificationReport:
    """Every proper subspace of Sym(n) misses the rank-one matrices built
    from at least two distinct lines of K^n (all scalar multiples of x x^T
    stay outside the subspace)."""
    if n < 3:
        raise BadParams("the rank-one gap property needs n >= 3")
    cap = element_cap(cap)
    t0 = time.perf_counter()
    amb = Ambient(field, KIND_SYM, n, 0)
    d = amb.dim
    total = sum(count_subspaces(amb, c) for c in range(1, d + 1))
    if total > cap:
        raise EnumerationCapExceeded(f"{total} proper subspaces exceeds cap {cap}")
    raw = _rank1_candidates(field, n)
    cand = np.array(raw, dtype=np.int64) if field.k == 1 else raw
    cases = [
        tuple(tuple(row) for row in rows)
        for c in range(1, d + 1)
        for rows in dual_rref_rows(field, d, c)
    ]
    per_case = _map_cases(partial(_rank1_case, field, n, cand), cases, jobs)
    spec = SuiteSpec("rank1-gaps", field=field.label, n=n, cap=cap)
    return _finish(spec, per_case, t0)


# ---------------------------------------------------------------------------
# good functionals lemma


@lru_cache(maxsize=None)
def _invertible_matrices(field: FieldSpec, n: int) -> tuple[Matrix, ...]:
    out = []
    for entries in product(range(field.q), repeat=n * n):
        m = Matrix(field, n, n, entries)
        if rank(m) == n:
            out.append(m)
    return tuple(out)


def _t3_orbit(field: FieldSpec, m: int) -> frozenset[SubspaceBasis]:
    """Canonical bases of every space congruent to the t3 block with a free
    tail: [A | R] -> [Q^T A Q | Q^T (A U + R)] over invertible Q and any U."""
    base = build_t3(field)
    if m:
        base = side_by_side(base, full_space(Ambient(field, KIND_FULL, 3, m)))
    amb = base.ambient
    n = 3
    mats = base.basis_matrices()
    out = set()
    for q in _invertible_matrices(field, n):
        qt = q.transpose()
        for u_entries in product(range(field.q), repeat=n * m):
            u = Matrix(field, n, m, tuple(u_entries))
            vecs = []
            for bm in mats:
                a = Matrix(
                    field, n, n, tuple(bm.entry(i, j) for i in range(n) for j in range(n))
                )
                a2 = qt.matmul(a).matmul(q)
                if m:
                    r = Matrix(
                        field,
                        n,
                        m,
                        tuple(bm.entry(i, n + j) for i in range(n) for j in range(m)),
                    )
                    r2 = qt.matmul(a.matmul(u).add_matrix(r))
                    entries = tuple(
                        a2.entry(i, j) if j < n else r2.entry(i, j - n)
                        for i in range(n)
                        for j in range(n + m)
                    )
                else:
                    entries = a2.entries
                vecs.append(encode(amb, Matrix(field, n, n + m, entries)))
            out.add(SubspaceBasis.from_vectors(field, amb.dim, vecs))
    return frozenset(out)


def _good_lines(space: OperatorSpace) -> tuple[int, int]:
    """Count lines K*f of the target whose quotient S mod f has codimension
    at most n-3 inside the self-adjoint operators to the smaller target.

    Quotients of symmetric-with-tail spaces are (after a change of bases)
    again symmetric-with-tail, one row smaller, so the reference dimension
    is (n-1)n/2 + (n-1)(ncols-n+1).  The second return value flags any line
    whose quotient dimension exceeds that bound, which would contradict the
    self-adjoint structure of the quotient.
    """
    amb = space.ambient
    field = amb.field
    n = amb.nrows
    rect_dim = (n - 1) * amb.ncols
    self_adjoint_dim = (n - 1) * n // 2 + (n - 1) * (amb.ncols - n + 1)
    count = 0
    overflow = 0
    for x in line_reps(field, n):
        w = SubspaceBasis.from_vectors(field, n, [x])
        p = quotient_projection(space, w)
        vecs = [p.matmul(mat).entries for mat in space.basis_matrices()]
        dim = SubspaceBasis.from_vectors(field, rect_dim, vecs).dim
        if dim > self_adjoint_dim:
            overflow += 1
        elif self_adjoint_dim - dim <= n - 3:
            count += 1
    return count, overflow


def _good_functional_case(orbits, space: OperatorSpace) -> list[dict]:
    field = space.ambient.field
    good, overflow = _good_lines(space)
    if overflow:
        return [
            _failure(
                space, None, f"{overflow} quotient(s) larger than the self-adjoint bound"
            )
        ]
    if good >= 2 and field.q != 2:
        return []
    if field.q == 2 and (good >= 3 or (good >= 2 and space.basis in orbits[space.ambient.m])):
        return []
    if good < 2:
        return [_failure(space, None, f"only {good} good line(s); expected at least 2")]
    return [
        _failure(
            space,
            None,
            f"only {good} good lines over GF(2) and the space is not congruent "
            "to the t3 block with free tail",
        )
    ]


def run_good_functionals(
    field: FieldSpec, cap: int | None = None, jobs: int = 1
) -> VerificationReport:
    """Subspaces of Sym(3, m) for m in {0, 1} with codimension <= 1 admit at
    least two good lines (quotient by the line is everything); over GF(2)
    either a third good line exists or the space is congruent to the t3
    block with a free tail."""
    cap = element_cap(cap)
    t0 = time.perf_counter()
    orbits = {}
    if field.q == 2:
        orbits = {m: _t3_orbit(field, m) for m in (0, 1)}
    cases = []
    for m in (0, 1):
        amb = Ambient(field, KIND_SYM, 3, m)
        cases.extend(enumerate_subspaces_up_to(amb, 1, cap=cap))
    per_case = _map_cases(partial(_good_functional_case, orbits), cases, jobs)
    spec = SuiteSpec("good-functionals", field=field.label, n=3, cap=cap)
    return _finish(spec, per_case, t0)


# ---------------------------------------------------------------------------
# dimension-three alternating spaces and the trace-constrained family


def run_dim3_alt(field: FieldSpec, cap: int | None = None) -> VerificationReport:
    """On Alt(3) every additive range-compatible map is local."""
    cap = element_cap(cap)
    t0 = time.perf_counter()
    per_case = [_local_class_case(cap, build_full_alt(field, 3))]
    spec = SuiteSpec("dim3-alt", field=field.label, n=3, cap=cap)
    return _finish(spec, per_case, t0)


def _mf_case(field: FieldSpec, r: int, cap: int, coeffs) -> list[dict]:
    return _local_class_case(cap, build_mf(field, r, coeffs))


def run_mf_suite(
    field: FieldSpec,
    r: int = 1,
    samples: int | None = None,
    seed: int = 0,
    cap: int | None = None,
    jobs: int = 1,
) -> VerificationReport:
    """Range-compatible == local on the trace-constrained spaces M_f inside
    Alt(3) with an r-column tail.  With samples=None every coefficient
    tensor (q^(3 r^2) of them) is checked; otherwise that many tensors are
    drawn with a seeded generator."""
    if r < 1:
        raise BadParams("need r >= 1; use dim3-alt for the tailless case")
    cap = element_cap(cap)
    t0 = time.perf_counter()
    width = 3 * r * r
    if samples is None:
        total = field.q**width
        if total > cap:
            raise EnumerationCapExceeded(f"{total} coefficient tensors exceeds cap {cap}")
        cases = [tuple(c) for c in product(range(field.q), repeat=width)]
        spec = SuiteSpec("mf-lemma", field=field.label, r=r, cap=cap)
    else:
        if samples < 1:
            raise BadParams("need at least one sample")
        rng = random.Random(f"mf:{field.label}:{r}:{seed}")
        cases = [
            tuple(rng.randrange(field.q) for _ in range(width)) for _ in range(samples)
        ]
        spec = SuiteSpec(
            "mf-lemma", field=field.label, r=r, samples=samples, seed=seed, cap=cap
        )
    per_case = _map_cases(partial(_mf_case, field, r, cap), cases, jobs)
    return _finish(spec, per_case, t0)


# ---------------------------------------------------------------------------
# randomized structural properties: quotients and splittings


_QUOTIENT_DOMAINS = (
    ("2", KIND_SYM, 2, 0),
    ("2", KIND_SYM, 3, 0),
    ("2", KIND_ALT, 3, 0),
    ("2", KIND_ALT, 4, 0),
    ("2", KIND_SYM, 2, 1),
    ("2", KIND_FULL, 2, 2),
    ("3", KIND_SYM, 2, 0),
    ("3", KIND_SYM, 3, 0),
    ("3", KIND_ALT, 3, 0),
    ("3", KIND_SYM, 2, 1),
    ("3", KIND_FULL, 3, 1),
    ("2^2", KIND_SYM, 2, 0),
    ("2^2", KIND_ALT, 3, 0),
    ("2^2", KIND_FULL, 2, 1),
)


def _random_space(amb: Ambient, rng, max_gens: int) -> OperatorSpace:
    gens = [
        tuple(rng.randrange(amb.field.q) for _ in range(amb.dim))
        for _ in range(rng.randint(0, max_gens))
    ]
    return space_from_coords(amb, gens)


def _random_member(mspace: MapSpace, rng) -> AdditiveMap:
    p = mspace.domain.ambient.field.p
    width = map_coord_width(mspace.domain)
    coords = [0] * width
    for vec in mspace.basis.vectors:
        c = rng.randrange(p)
        if c:
            for i, v in enumerate(vec):
                if v:
                    coords[i] = (coords[i] + c * v) % p
    return map_from_coords(mspace.domain, tuple(coords))


def _quotient_trial(seed: int, idx: int) -> list[dict]:
    rng = random.Random(f"quotient:{seed}:{idx}")
    label, kind, n, m = _QUOTIENT_DOMAINS[rng.randrange(len(_QUOTIENT_DOMAINS))]
    field = parse_field_label(label)
    amb = Ambient(field, kind, n, m)
    space = _random_space(amb, rng, 4)
    f_map = _random_member(rc_solution_space(space), rng)
    w = SubspaceBasis.from_vectors(
        field,
        n,
        [tuple(rng.randrange(field.q) for _ in range(n)) for _ in range(rng.randint(0, n))],
    )
    coords_f = map_to_coords(f_map)
    if not respects_row_decomposition(f_map):
        return [
            _failure(
                space, coords_f, "range-compatible map does not decompose row-wise"
            )
        ]
    try:
        g_map = quotient_map(f_map, w)
    except IllDefined:
        return [
            _failure(space, coords_f, "quotient of a range-compatible map must be defined")
        ]
    p = quotient_projection(space, w)
    for coeffs, coords in iter_space_elements(space):
        mat = decode(amb, coords)
        lhs = evaluate(g_map, p.matmul(mat))
        rhs = p.mat_vec(evaluate(f_map, mat))
        if lhs != rhs:
            return [
                _failure(space, coords_f, "quotient map does not commute with the projection")
            ]
    if not is_range_compatible(g_map):
        return [
            _failure(
                space, coords_f, "quotient of a range-compatible map is not range-compatible"
            )
        ]
    return []


def run_quotient_property(
    trials: int = 200, seed: int = 0, jobs: int = 1
) -> VerificationReport:
    """Randomized check that range-compatible maps decompose row-wise and
    that their quotients are defined, commute with the projection on every
    element, and stay range-compatible."""
    if trials < 1:
        raise BadParams("need at least one trial")
    t0 = time.perf_counter()
    per_case = _map_cases(partial(_quotient_trial, seed), list(range(trials)), jobs)
    spec = SuiteSpec("quotient-lemma", trials=trials, seed=seed)
    return _finish(spec, per_case, t0)


_SPLIT_SHAPES = (
    ("2", KIND_SYM, 2, 1),
    ("2", KIND_SYM, 2, 2),
    ("2", KIND_ALT, 3, 1),
    ("2", KIND_FULL, 2, 1),
    ("3", KIND_SYM, 2, 1),
    ("3", KIND_ALT, 3, 1),
    ("2^2", KIND_SYM, 2, 1),
)


def _split_trial(seed: int, idx: int) -> list[dict]:
    rng = random.Random(f"split:{seed}:{idx}")
    label, kind, n, extra = _SPLIT_SHAPES[rng.randrange(len(_SPLIT_SHAPES))]
    field = parse_field_label(label)
    left = _random_space(Ambient(field, kind, n, 0), rng, 3)
    right = _random_space(Ambient(field, KIND_FULL, n, extra), rng, 2)
    prod = side_by_side(left, right)
    if rng.random() < 0.5:
        f_map = _random_member(rc_solution_space(left), rng)
    else:
        f_map = random_map(left, rng)
    if rng.random() < 0.5:
        g_map = _random_member(rc_solution_space(right), rng)
    else:
        g_map = random_map(right, rng)
    joined = join_maps(f_map, g_map)
    coords_j = map_to_coords(joined)
    back_f, back_g = split_map(joined)
    fails = []
    if map_to_coords(back_f) != map_to_coords(f_map) or map_to_coords(back_g) != map_to_coords(g_map):
        fails.append(_failure(prod, coords_j, "splitting does not invert joining"))
    want = is_range_compatible(f_map) and is_range_compatible(g_map)
    if is_range_compatible(joined) != want:
        fails.append(
            _failure(
                prod,
                coords_j,
                "joined map range-compatibility differs from the parts",
            )
        )
    want_local = is_local(f_map) is not None and is_local(g_map) is not None
    if (is_local(joined) is not None) != want_local:
        fails.append(
            _failure(prod, coords_j, "joined map locality differs from the parts")
        )
    free = random_map(prod, rng)
    part_f, part_g = split_map(free)
    if map_to_coords(join_maps(part_f, part_g)) != map_to_coords(free):
        fails.append(
            _failure(prod, map_to_coords(free), "joining does not invert splitting")
        )
    if is_range_compatible(free) != (
        is_range_compatible(part_f) and is_range_compatible(part_g)
    ):
        fails.append(
            _failure(
                prod,
                map_to_coords(free),
                "map range-compatibility differs from its split parts",
            )
        )
    return fails


def run_splitting_property(
    trials: int = 200, seed: int = 0, jobs: int = 1
) -> VerificationReport:
    """Randomized check that joining and splitting maps over side-by-side
    products are mutually inverse and preserve range-compatibility and
    locality exactly."""
    if trials < 1:
        raise BadParams("need at least one trial")
    t0 = time.perf_counter()
    per_case = _map_cases(partial(_split_trial, seed), list(range(trials)), jobs)
    spec = SuiteSpec("splitting-lemma", trials=trials, seed=seed)
    return _finish(spec, per_case, t0)


# ---------------------------------------------------------------------------
# dispatch


SUITE_IDS = (
    "sym-main",
    "alt-main",
    "rect-group",
    "full-sym-class",
    "full-alt-class",
    "sym-optimality",
    "alt-optimality",
    "rank1-gaps",
    "good-functionals",
    "dim3-alt",
    "mf-lemma",
    "quotient-lemma",
    "splitting-lemma",
)


def run_suite(
    suite: str,
    field: FieldSpec | None = None,
    n: int | None = None,
    m: int | None = None,
    codim: int | None = None,
    r: int | None = None,
    trials: int | None = None,
    samples: int | None = None,
    seed: int = 0,
    cap: int | None = None,
    jobs: int = 1,
) -> VerificationReport:
    """Run one suite by id.  Missing required parameters raise BadParams."""

    def need(value, what):
        if value is None:
            raise BadParams(f"suite '{suite}' needs {what}")
        return value

    if suite == "sym-main":
        return run_sym_main(need(field, "a field"), need(n, "n"), m or 0, codim, cap, jobs)
    if suite == "alt-main":
        return run_alt_main(need(field, "a field"), need(n, "n"), m or 0, codim, cap, jobs)
    if suite == "rect-group":
        return run_rect_group(
            need(field, "a field"), need(n, "n"), need(m, "m"), codim, cap, jobs
        )
    if suite == "full-sym-class":
        return run_full_sym_class(need(field, "a field"), need(n, "n"), cap)
    if suite == "full-alt-class":
        return run_full_alt_class(need(field, "a field"), need(n, "n"), cap)
    if suite == "sym-optimality":
        return run_sym_optimality(cap, jobs)
    if suite == "alt-optimality":
        return run_alt_optimality(cap, jobs)
    if suite == "rank1-gaps":
        return run_rank1_gaps(need(field, "a field"), n if n is not None else 3, cap, jobs)
    if suite == "good-functionals":
        return run_good_functionals(need(field, "a field"), cap, jobs)
    if suite == "dim3-alt":
        return run_dim3_alt(need(field, "a field"), cap)
    if suite == "mf-lemma":
        return run_mf_suite(
            need(field, "a field"), r if r is not None else 1, samples, seed, cap, jobs
        )
    if suite == "quotient-lemma":
        return run_quotient_property(trials if trials is not None else 200, seed, jobs)
    if suite == "splitting-lemma":
        return run_splitting_property(trials if trials is not None else 200, seed, jobs)
    raise BadParams(f"unknown suite '{suite}'")
