"""Exact linear algebra and polyhedral geometry: frozen examples and oracles."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monoidorder.exactmath import (InputError, IntegerLattice, RationalCone,
                                   bounded_nonneg_combination,
                                   default_combination_bound,
                                   hermite_normal_form, int_det,
                                   integer_kernel, integer_solve,
                                   invariant_factors, lp_feasible, primitive,
                                   rational_nullspace, rational_rank,
                                   rational_solve, sign_canonical,
                                   smith_normal_form, solve_nonneg_rational,
                                   vadd, vdot, vneg, vscale, vsub)

from conftest import seeded

small_ints = st.integers(min_value=-6, max_value=6)
vectors3 = st.lists(small_ints, min_size=3, max_size=3)


# ---------------------------------------------------------------------------
# vector helpers


@given(vectors3, vectors3)
def test_vector_helpers_are_componentwise(a, b):
    assert list(vadd(a, b)) == [x + y for x, y in zip(a, b)]
    assert list(vsub(a, b)) == [x - y for x, y in zip(a, b)]
    assert list(vneg(a)) == [-x for x in a]
    assert list(vscale(3, a)) == [3 * x for x in a]
    assert vdot(a, b) == sum(x * y for x, y in zip(a, b))


@given(vectors3)
def test_primitive_idempotent_and_parallel(v):
    if all(x == 0 for x in v):
        return
    p = primitive(v)
    assert primitive(p) == p
    # p is parallel to v with positive proportionality
    from math import gcd
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    assert list(vscale(g, p)) == list(v)


@given(vectors3)
def test_sign_canonical_fixes_leading_sign(v):
    c = sign_canonical(v)
    assert sign_canonical(c) == tuple(c)
    nz = [x for x in c if x != 0]
    if nz:
        assert nz[0] > 0


# ---------------------------------------------------------------------------
# rational solving


def test_rational_solve_example():
    rows = [(1, 0), (1, 2)]
    sol = rational_solve(rows, (3, 4))
    assert sol is not None
    assert vadd(vscale(sol[0], rows[0]), vscale(sol[1], rows[1])) == (3, 4)
    assert rational_solve([(1, 0)], (0, 1)) is None


@given(st.lists(vectors3, min_size=1, max_size=4), vectors3)
def test_rational_solve_verifies(rows, rhs):
    sol = rational_solve(rows, rhs)
    if sol is not None:
        combo = [Fraction(0)] * 3
        for c, row in zip(sol, rows):
            combo = [x + c * y for x, y in zip(combo, row)]
        assert combo == [Fraction(v) for v in rhs]


def test_rational_nullspace_is_kernel():
    rows = [(1, 2, 3), (2, 4, 6)]
    basis = rational_nullspace(rows)
    assert len(basis) == 2
    for v in basis:
        assert vdot(rows[0], v) == 0


def test_rank_examples():
    assert rational_rank([(1, 0), (0, 1)]) == 2
    assert rational_rank([(1, 2), (2, 4)]) == 1
    assert rational_rank([]) == 0


# ---------------------------------------------------------------------------
# integer structures


def test_hermite_rowspace_membership():
    rng = seeded(1)
    for _ in range(25):
        rows = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
        hnf = hermite_normal_form(rows)
        lat = IntegerLattice(3, rows)
        lat2 = IntegerLattice(3, hnf)
        for _ in range(10):
            coeffs = [rng.randint(-3, 3) for _ in rows]
            point = [sum(c * r[j] for c, r in zip(coeffs, rows))
                     for j in range(3)]
            assert lat2.contains(point)
        for b in lat2.basis:
            assert lat.contains(b)


def test_integer_lattice_coordinates_roundtrip():
    lat = IntegerLattice(2, [(1, 0), (0, 2)])
    assert lat.coordinates((3, 4)) == (3, 2)
    assert lat.coordinates((0, 1)) is None
    assert lat.from_coordinates((3, 2)) == (3, 4)


def _random_matrix(rng, n, m, bound=5):
    return [[rng.randint(-bound, bound) for _ in range(m)] for _ in range(n)]


def test_smith_normal_form_oracle():
    rng = seeded(2)
    for _ in range(40):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        a = _random_matrix(rng, n, m)
        u, d, v = smith_normal_form(a)
        # U a V == D exactly
        ua = [[sum(u[i][k] * a[k][j] for k in range(n)) for j in range(m)]
              for i in range(n)]
        uav = [[sum(ua[i][k] * v[k][j] for k in range(m)) for j in range(m)]
               for i in range(n)]
        assert uav == [list(row) for row in d]
        # diagonal with divisibility chain
        diag = [d[i][i] for i in range(min(n, m))]
        for i in range(n):
            for j in range(m):
                if i != j:
                    assert d[i][j] == 0
        for x, y in zip(diag, diag[1:]):
            if x != 0 and y != 0:
                assert y % x == 0
        # unimodular transforms
        if n == len(u):
            assert abs(int_det(u)) == 1
        assert abs(int_det(v)) == 1


def test_invariant_factors_example():
    assert invariant_factors([[2, 0], [0, 4]]) == [2, 4]
    assert invariant_factors([[2, 4], [4, 8]]) == [2]


def test_integer_kernel_annihilates():
    a = [[1, 2, 3], [0, 1, 1]]
    for v in integer_kernel(a):
        for row in a:
            assert vdot(row, v) == 0
    assert len(integer_kernel(a)) == 1


def test_integer_solve_and_refusals():
    sol = integer_solve([[2, 0], [0, 3]], [4, 9])
    assert sol == [2, 3] or tuple(sol) == (2, 3)
    assert integer_solve([[2]], [3]) is None


def test_integer_solve_random_verified():
    # integer_solve finds x with sum_i x_i * rows_i == rhs (row combinations)
    rng = seeded(3)
    for _ in range(30):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        a = _random_matrix(rng, n, m, bound=4)
        x = [rng.randint(-3, 3) for _ in range(n)]
        rhs = [sum(x[i] * a[i][j] for i in range(n)) for j in range(m)]
        sol = integer_solve(a, rhs)
        assert sol is not None
        back = [sum(sol[i] * a[i][j] for i in range(n)) for j in range(m)]
        assert back == rhs


# ---------------------------------------------------------------------------
# linear programming


def test_lp_feasible_certificate_checks():
    # x + y == 2, x - y >= 0, both coordinates free
    sol = lp_feasible(2, eqs=[((1, 1), 2)], ineqs=[((1, -1), 0)])
    assert sol is not None
    assert sol[0] + sol[1] == 2
    assert sol[0] - sol[1] >= 0
    # infeasible: x >= 1 and -x >= 1
    assert lp_feasible(1, ineqs=[((1,), 1), ((-1,), 1)]) is None


def test_solve_nonneg_rational_matches_grid():
    gens = [(1, 0), (1, 2)]
    for x in range(-3, 4):
        for y in range(-3, 4):
            got = solve_nonneg_rational(gens, (x, y)) is not None
            # oracle: x', y' >= 0 with x = a + b, y = 2 b
            want = y >= 0 and y % 1 == 0 and 2 * x >= y
            assert got == want, (x, y)
            sol = solve_nonneg_rational(gens, (x, y))
            if sol is not None:
                assert all(c >= 0 for c in sol)
                combo = vadd(vscale(sol[0], gens[0]), vscale(sol[1], gens[1]))
                assert combo == (Fraction(x), Fraction(y))


def test_bounded_nonneg_combination_integer():
    gens = [(1, 0), (1, 2)]
    target = (3, 4)
    bound = default_combination_bound(target, gens)
    combo = bounded_nonneg_combination(gens, target, bound)
    assert combo is not None
    total = (0, 0)
    for c, g in zip(combo, gens):
        total = vadd(total, vscale(c, g))
    assert tuple(total) == target
    assert bounded_nonneg_combination(gens, (0, 1),
                                      default_combination_bound((0, 1), gens)) is None


# ---------------------------------------------------------------------------
# cones: frozen double-description examples plus grid oracles


def test_orthant_conversions():
    cone = RationalCone.from_rays([(1, 0), (0, 1)], 2)
    assert sorted(cone.h_rep) == [(0, 1), (1, 0)]
    cone2 = RationalCone.from_inequalities([(0, 1), (1, 0)], 2)
    assert sorted(cone2.extreme_rays) == [(0, 1), (1, 0)]
    assert cone.same_cone(cone2)


def test_slanted_cone_h_rep_frozen():
    cone = RationalCone.from_rays([(1, 0), (1, 2)], 2)
    assert sorted(cone.h_rep) == [(0, 1), (2, -1)]
    assert cone.is_pointed()


def test_halfplane_has_lineality():
    cone = RationalCone.from_rays([(1, 0), (0, 1), (0, -1)], 2)
    assert cone.lineality_basis == [(0, 1)]
    assert not cone.is_pointed()
    assert sorted(cone.h_rep) == [(1, 0)]


def test_dual_of_slanted_cone():
    cone = RationalCone.from_rays([(1, 0), (1, 2)], 2)
    dual = cone.dual()
    assert sorted(dual.extreme_rays) == [(0, 1), (2, -1)]
    # dual of dual comes back
    assert dual.dual().same_cone(cone)


def test_membership_grid_oracle_dim2():
    cone = RationalCone.from_rays([(1, 0), (1, 2)], 2)
    for x in range(-5, 6):
        for y in range(-5, 6):
            want = solve_nonneg_rational([(1, 0), (1, 2)], (x, y)) is not None
            assert cone.member((x, y)) == want


def test_membership_grid_oracle_dim3():
    rays = [(1, 0, 0), (1, 1, 0), (1, 1, 1)]
    cone = RationalCone.from_rays(rays, 3)
    for x in itertools.product(range(-5, 6), repeat=3):
        want = solve_nonneg_rational(rays, x) is not None
        assert cone.member(x) == want


def test_member_certificate_roundtrip():
    cone = RationalCone.from_rays([(1, 0), (1, 2)], 2)
    inside, data = cone.member_certificate((2, 2))
    assert inside
    combo = (0, 0)
    for c, ray in zip(data, cone.v_rep):
        combo = vadd(combo, vscale(c, ray))
    assert tuple(combo) == (Fraction(2), Fraction(2))
    inside, normal = cone.member_certificate((0, -1))
    assert not inside
    assert vdot(normal, (0, -1)) < 0
    assert all(vdot(normal, r) >= 0 for r in cone.v_rep)


def test_extreme_rays_minimality_random():
    rng = seeded(4)
    for _ in range(15):
        rays = [tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(4)]
        rays = [r for r in rays if any(r)]
        if not rays:
            continue
        cone = RationalCone.from_rays(rays, 3)
        ext = cone.extreme_rays
        # every claimed extreme ray is in the cone and not a combination of
        # the others (within the pointed quotient by the lineality space)
        for i, r in enumerate(ext):
            assert cone.member(r)
            others = [e for j, e in enumerate(ext) if j != i]
            others += cone.lineality_basis
            others += [vneg(b) for b in cone.lineality_basis]
            assert solve_nonneg_rational(others, r) is None


def test_intersection_and_containment():
    quadrant = RationalCone.from_rays([(1, 0), (0, 1)], 2)
    slanted = RationalCone.from_rays([(1, 0), (1, 2)], 2)
    meet = quadrant.intersection(slanted)
    assert meet.same_cone(slanted)
    assert quadrant.contains_cone(slanted)
    assert not slanted.contains_cone(quadrant)


def test_cone_input_validation():
    with pytest.raises(InputError):
        RationalCone.from_rays([], dim=None)
    with pytest.raises(InputError):
        RationalCone.from_rays([(1, 0), (1,)], 2)
