"""Difference groups, saturation closures, reduced orders, transfer checks."""

import itertools
from fractions import Fraction

import pytest

from monoidorder.exactmath import IntegerLattice, InputError, solve_nonneg_rational
from monoidorder.grothendieck import (FiniteAbelianGroup, check_lemma_canequiv,
                                      check_lemma_canleq, ddagger_closure,
                                      default_pairs, grothendieck,
                                      kernel_crosscheck_finite, lift_mu, nabla,
                                      pi12, stable_equality, up_closure)
from monoidorder.monoids import (BiadditiveOp, FiniteMonoid, LatticeMonoid,
                                 approx, free_monoid, half_open_half_plane,
                                 leq, saturating_product_op,
                                 truncated_free_monoid)

from conftest import cone_corpus, finite_corpus, lattice_corpus


def _cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _klein_table():
    return [[i ^ j for j in range(4)] for i in range(4)]


# ---------------------------------------------------------------------------
# difference-group structure


@pytest.mark.parametrize("table,factors", [
    (_cyclic_table(3), [3]),
    (_cyclic_table(5), [5]),
    ([[0, 1], [1, 1]], []),                      # absorbing element collapses
    ([[min(i + j, 3) for j in range(4)] for i in range(4)], []),
])
def test_finite_difference_group_invariant_factors(table, factors):
    gg = grothendieck(FiniteMonoid(table))
    assert gg.kind == "finite"
    assert gg.group.invariant_factors() == factors


@pytest.mark.parametrize("name,m", finite_corpus())
def test_finite_iota_is_additive(name, m):
    gg = grothendieck(m)
    for a in range(m.n):
        for b in range(m.n):
            assert gg.iota[m.add(a, b)] == gg.group.add(gg.iota[a], gg.iota[b])
    assert gg.iota[0] == 0


@pytest.mark.parametrize("name,m", finite_corpus())
def test_stable_equality_matches_definition(name, m):
    se = stable_equality(m)
    for a in range(m.n):
        for b in range(m.n):
            want = any(m.add(a, t) == m.add(b, t) for t in range(m.n))
            assert se[a][b] == want


def test_lattice_difference_group_basis():
    gg = grothendieck(LatticeMonoid(2, [(1, 0), (1, 2)]))
    assert gg.kind == "lattice"
    assert [list(row) for row in gg.lattice.basis] == [[1, 0], [0, 2]]
    gg2 = grothendieck(free_monoid(2))
    assert [list(row) for row in gg2.lattice.basis] == [[1, 0], [0, 1]]


def test_cone_difference_group_span():
    gg = grothendieck(half_open_half_plane())
    assert gg.kind == "cone"
    assert list(gg.span_basis) == [(1, 0), (0, 1)]


def test_finite_abelian_group_arithmetic():
    g = FiniteAbelianGroup(_cyclic_table(6))
    assert g.exponent == 6
    assert g.invariant_factors() == [6]
    assert sorted(g.order_of(x) for x in g.elements()) == [1, 2, 3, 3, 6, 6]
    for a in g.elements():
        assert g.add(a, g.neg(a)) == 0
        for b in g.elements():
            assert g.add(g.sub(a, b), b) == a
    k = FiniteAbelianGroup(_klein_table())
    assert k.exponent == 2
    assert k.invariant_factors() == [2, 2]


# ---------------------------------------------------------------------------
# saturation closures, cross-checked against their definitions


def _up_oracle(group, base):
    base = set(base)
    out = set()
    for x in group.elements():
        y = 0
        for _ in range(group.exponent):
            y = group.add(y, x)
            if y in base:
                out.add(x)
                break
    return out


def _ddagger_oracle(group, base):
    base = set(base)
    out = set()
    for x in group.elements():
        for e in group.elements():
            y, ok = e, True
            for _ in range(group.exponent):
                y = group.add(y, x)
                if y not in base:
                    ok = False
                    break
            if ok:
                out.add(x)
                break
    return out


@pytest.mark.parametrize("table,base", [
    (_cyclic_table(6), {2}),
    (_cyclic_table(6), {1, 2, 4, 5}),
    (_cyclic_table(4), {0, 2}),
    (_klein_table(), {1}),
    (_cyclic_table(5), set(range(5))),
])
def test_finite_closures_match_definition(table, base):
    g = FiniteAbelianGroup(table)
    up = up_closure(g, base)
    want_up = _up_oracle(g, base)
    got_up = {x for x in g.elements() if up.member(x)}
    assert got_up == want_up
    dd = ddagger_closure(g, up)
    want_dd = _ddagger_oracle(g, want_up)
    got_dd = {x for x in g.elements() if dd.member(x)}
    assert got_dd == want_dd
    assert dd.describe()["kind"] == "up_ddagger"


def test_frozen_closure_example_mod_six():
    g = FiniteAbelianGroup(_cyclic_table(6))
    up = up_closure(g, {2})
    assert {x for x in g.elements() if up.member(x)} == {1, 2, 4, 5}
    dd = ddagger_closure(g, up)
    assert {x for x in g.elements() if dd.member(x)} == {0, 3}


def test_lattice_up_closure_is_cone_intersect_lattice():
    lattice = IntegerLattice(2, [(1, 0), (0, 2)])
    up = up_closure(lattice, [(1, 0), (1, 2)])
    for x in range(-4, 5):
        for y in range(-4, 5):
            in_lattice = y % 2 == 0
            in_cone = solve_nonneg_rational([(1, 0), (1, 2)], (x, y)) is not None
            assert up.member((x, y)) == (in_lattice and in_cone)
    dd = ddagger_closure(lattice, up)
    for x in range(-4, 5):
        for y in range(-4, 5):
            assert dd.member((x, y)) == up.member((x, y))


def test_cone_closures_open_faces():
    m = half_open_half_plane()
    gg = grothendieck(m)
    up = up_closure(gg, m)
    assert up.member((1, 0)) and up.member((Fraction(1, 2), -7))
    assert not up.member((0, 1)) and not up.member((-1, 0))
    dd = ddagger_closure(gg, up)
    assert dd.member((0, 1)) and dd.member((0, -3)) and dd.member((1, 5))
    assert not dd.member((-1, 0))


# ---------------------------------------------------------------------------
# reduced orders and the two transfer lemmas


@pytest.mark.parametrize("name,m", finite_corpus())
def test_finite_transfer_exhaustive(name, m):
    n1, n2 = nabla(m, 1), nabla(m, 2)
    for a in range(m.n):
        for b in range(m.n):
            assert leq(m, a, b) == n1.leq(n1.iota(a), n1.iota(b))
            assert approx(m, a, b) == n2.eq(n2.iota(a), n2.iota(b))


@pytest.mark.parametrize("name,m", lattice_corpus() + cone_corpus())
def test_polyhedral_transfer_sampled(name, m):
    n1, n2 = nabla(m, 1), nabla(m, 2)
    for a, b in default_pairs(m, 200):
        assert leq(m, a, b) == n1.leq(n1.iota(a), n1.iota(b))
        assert approx(m, a, b) == n2.eq(n2.iota(a), n2.iota(b))


@pytest.mark.parametrize("name,m",
                         finite_corpus() + lattice_corpus() + cone_corpus())
def test_lemma_checkers_report_clean(name, m):
    r1 = check_lemma_canleq(m)
    r2 = check_lemma_canequiv(m)
    assert r1["ok"] and r1["mismatches"] == [] and r1["checked"] > 0
    assert r2["ok"] and r2["mismatches"] == [] and r2["checked"] > 0


@pytest.mark.parametrize("name,m", finite_corpus())
def test_kernel_crosscheck_and_pi12(name, m):
    kc = kernel_crosscheck_finite(m)
    assert kc["ok"] and kc["mismatches"] == []
    report = pi12(m).report
    assert report["bijective"]
    assert all(c["ok"] for c in report["checks"])


def test_lattice_project_reconstruct_roundtrip():
    m = LatticeMonoid(2, [(1, 0), (1, 2)])
    n1 = nabla(m, 1)
    for x in [(3, -2), (0, 0), (1, 2), (-4, 6)]:
        assert n1.reconstruct(n1.project(x)) == x
    with pytest.raises(InputError):
        n1.project((3, -1))  # outside the difference lattice


def test_cone_project_is_identity_on_full_span():
    m = half_open_half_plane()
    n1 = nabla(m, 1)
    v = (Fraction(1, 2), Fraction(3))
    assert n1.project(v) == v
    assert n1.reconstruct(n1.iota((1, 0))) == (1, 0)


def test_reduced_describe_is_consistent():
    # group carriers order-collapse: every element is order-equivalent to 0,
    # so the reduced group is trivial while the kernel swallows the carrier
    d1 = nabla(FiniteMonoid(_cyclic_table(5)), 1).describe()
    assert d1["group_order"] == 1
    assert d1["kernel_size"] == 5
    lat = nabla(LatticeMonoid(2, [(1, 0), (1, 2)]), 1).describe()
    assert lat["carrier"] == "lattice"
    assert lat["free_rank"] == 2 and lat["kernel_rank"] == 0


# ---------------------------------------------------------------------------
# lifting a biadditive operation to the reduced carrier


@pytest.mark.parametrize("level", [1, 2])
def test_lift_mu_is_equivariant(level):
    m = truncated_free_monoid(2, cap=2)
    op = saturating_product_op(m)
    lifted = lift_mu(op, level)
    reduced = lifted.reduced
    for a in range(m.n):
        for b in range(m.n):
            assert reduced.eq(lifted.mu(reduced.iota(a), reduced.iota(b)),
                              reduced.iota(op.mu(a, b)))
    assert all(c["ok"] for c in lifted.report["checks"])


def test_lift_mu_zero_op():
    m = FiniteMonoid(_cyclic_table(3))
    op = BiadditiveOp(m, table=[[0] * 3 for _ in range(3)])
    lifted = lift_mu(op, 1)
    reduced = lifted.reduced
    zero = reduced.iota(0)
    for a in range(3):
        for b in range(3):
            assert reduced.eq(lifted.mu(reduced.iota(a), reduced.iota(b)), zero)
