"""Localizable elements, damped comparison maps, weak/strong certificates."""

from fractions import Fraction

import pytest

from monoidorder.localizability import (apply_matrix, damping_matrix,
                                        definitional_sample_check,
                                        is_left_localizable, is_localizable,
                                        is_strongly_localizable,
                                        is_weakly_localizable,
                                        monomial_row_obstruction,
                                        order_unit_fast_path)
from monoidorder.monoids import (BiadditiveOp, approx, free_monoid,
                                 half_open_half_plane, leq,
                                 saturating_product_op, truncated_free_monoid)

from conftest import seeded, weakly_localizable_ops


def matrix_product_op():
    m = free_monoid(4)
    t = [[[0] * 4 for _ in range(4)] for _ in range(4)]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                t[2 * i + j][2 * j + k][2 * i + k] += 1
    return BiadditiveOp(m, tensor=t, name="matrix-product")


def elementwise_op(dim, weights=None):
    m = free_monoid(dim)
    t = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        t[i][i][i] = 1 if weights is None else weights[i]
    return BiadditiveOp(m, tensor=t, name="elementwise")


def half_plane_op():
    hp = half_open_half_plane()
    t = [[[0] * 2 for _ in range(2)] for _ in range(2)]
    t[0][0][0] = 1
    t[0][1][1] = 1
    return BiadditiveOp(hp, tensor=t, name="half-plane-product")


SWAP = (0, 1, 1, 0)
IDENT = (1, 0, 0, 1)


# ---------------------------------------------------------------------------
# the damped comparison map


@pytest.mark.parametrize("op,points", [
    (matrix_product_op(), [SWAP, IDENT, (1, 2, 0, 3)]),
    (elementwise_op(2), [(0, 0), (2, 3)]),
    (half_plane_op(), [(1, 0), (2, 5)]),
])
def test_damping_matrix_matches_operation(op, points):
    m = op.carrier
    dim = m.dim
    units = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    for s in points:
        for side in ("left", "right"):
            d = damping_matrix(op, s, side)
            for e in units:
                prod = op.mu(s, e) if side == "left" else op.mu(e, s)
                want = tuple(p + u for p, u in zip(prod, e))
                assert tuple(apply_matrix(d, e)) == want


# ---------------------------------------------------------------------------
# single-element verdicts, with witnesses re-validated from scratch


def _damped(op, s, x, side="left"):
    prod = op.mu(s, x) if side == "left" else op.mu(x, s)
    return tuple(p + v for p, v in zip(prod, x))


def test_swap_matrix_refuted_with_live_witness():
    op = matrix_product_op()
    m = op.carrier
    v = is_left_localizable(op, SWAP)
    assert v.as_dict()["verdict"] == "no"
    x, y = v.witness
    assert leq(m, _damped(op, SWAP, x), _damped(op, SWAP, y))
    assert not leq(m, x, y)


def test_identity_matrix_is_localizable_both_sides():
    op = matrix_product_op()
    for s in (IDENT, (2, 0, 0, 1), (3, 0, 0, 3)):
        assert is_localizable(op, s).as_dict()["verdict"] == "yes"


@pytest.mark.parametrize("s", [(0, 1, 0, 0), (0, 0, 1, 0), SWAP,
                               (1, 1, 1, 1), (0, 2, 2, 0), (1, 1, 0, 1)])
def test_monomial_obstruction_implies_refutation(s):
    op = matrix_product_op()
    ob = monomial_row_obstruction(op, s)
    assert ob is not None
    row = ob["row"]
    cols = ob["positive_columns"]
    assert len(cols) >= 2
    d = damping_matrix(op, s, ob["side"])
    assert sum(1 for c in cols if d[row][c] > 0) == len(cols)
    assert is_left_localizable(op, s, ob["side"]).as_dict()["verdict"] == "no"


def test_diagonal_matrices_have_no_obstruction():
    op = matrix_product_op()
    for s in (IDENT, (2, 0, 0, 3), (0, 0, 0, 0)):
        assert monomial_row_obstruction(op, s) is None


def test_definitional_sample_check_agrees_with_verdicts():
    op = matrix_product_op()
    m = op.carrier
    rng = seeded(7)
    pairs = [(tuple(rng.randrange(4) for _ in range(4)),
              tuple(rng.randrange(4) for _ in range(4))) for _ in range(60)]
    ok_report = definitional_sample_check(op, IDENT, pairs)
    assert ok_report["ok"] and ok_report["violations"] == []
    v = is_left_localizable(op, SWAP)
    bad_report = definitional_sample_check(op, SWAP, list(pairs) + [v.witness])
    assert not bad_report["ok"]
    assert bad_report["violations"]


# ---------------------------------------------------------------------------
# weak localizability certificates


def test_weak_certificate_assignments_are_live():
    for name, op in [("saturating", saturating_product_op(truncated_free_monoid(2, cap=2))),
                     ("elementwise", elementwise_op(3)),
                     ("half-plane", half_plane_op())]:
        cert = is_weakly_localizable(op)
        assert cert.verdict == "yes", name
        assert cert.assignments, name
        for a, s in cert.assignments.items():
            assert leq(op.carrier, a, s), (name, a, s)
            assert is_localizable(op, s).as_dict()["verdict"] == "yes", (name, s)


def test_matrix_operation_not_weakly_localizable():
    op = matrix_product_op()
    cert = is_weakly_localizable(op)
    assert cert.verdict == "no"
    assert cert.refuted is not None
    assert monomial_row_obstruction(op, cert.refuted) is not None


def test_weak_queries_are_honored():
    # queries steer the assignment table, but a refutation of the
    # operation-level property always wins
    op = elementwise_op(2)
    good = is_weakly_localizable(op, queries=[(1, 0), (2, 3)])
    assert good.verdict == "yes"
    assert set(good.assignments) == {(1, 0), (2, 3)}
    bad = is_weakly_localizable(matrix_product_op(), queries=[SWAP])
    assert bad.verdict == "no"
    assert monomial_row_obstruction(matrix_product_op(), bad.refuted) is not None


@pytest.mark.parametrize("name,op", weakly_localizable_ops()[:8])
def test_corpus_instances_are_weakly_localizable(name, op):
    cert = is_weakly_localizable(op)
    assert cert.verdict == "yes", name


# ---------------------------------------------------------------------------
# order-unit fast path


def test_fast_path_with_two_sided_unit():
    m = truncated_free_monoid(2, cap=2)
    op = saturating_product_op(m)
    unit = m._cache["tuple_index"][(1, 1)]
    cert = order_unit_fast_path(op, unit)
    assert cert.verdict == "yes" and cert.method == "order-unit"
    for a, s in cert.assignments.items():
        assert leq(m, a, s)
        assert is_localizable(op, s).as_dict()["verdict"] == "yes"


def test_fast_path_unit_on_orthant():
    op = elementwise_op(2)
    cert = order_unit_fast_path(op, (1, 1))
    assert cert.verdict == "yes" and cert.method == "order-unit"


def test_fast_path_refuses_non_unit_then_falls_back():
    op = elementwise_op(2)
    cert = order_unit_fast_path(op, (2, 3))
    assert cert.method == "search-after-refusal"
    assert cert.details["refusal_reasons"]
    assert cert.verdict == "yes"


def test_fast_path_refuses_one_sided_unit():
    op = half_plane_op()
    assert op.mu((1, 0), (4, -5)) == (4, -5)       # left unit ...
    assert op.mu((4, -5), (1, 0)) != (4, -5)       # ... but not right
    cert = order_unit_fast_path(op, (1, 0))
    assert cert.method == "search-after-refusal"
    assert any("unit" in r for r in cert.details["refusal_reasons"])


# ---------------------------------------------------------------------------
# strong localizability


def test_strong_verdicts():
    sat = saturating_product_op(truncated_free_monoid(2, cap=2))
    assert is_strongly_localizable(sat)["verdict"] == "yes"
    ew = is_strongly_localizable(elementwise_op(2))
    assert ew["verdict"] == "yes" and ew["confirmed"] == "structural"
    weighted = is_strongly_localizable(elementwise_op(3, weights=[5, 1, 4]))
    assert weighted["verdict"] == "yes" and weighted["weights"] == [5, 1, 4]


def test_strong_refutation_carries_witness():
    op = matrix_product_op()
    m = op.carrier
    res = is_strongly_localizable(op)
    assert res["verdict"] == "no"
    x = tuple(int(v) for v in res["refuted_element"])
    wx, wy = res["witness"]
    wx = tuple(int(v) for v in wx)
    wy = tuple(int(v) for v in wy)
    assert leq(m, _damped(op, x, wx), _damped(op, x, wy))
    assert not leq(m, wx, wy)


def test_strong_implies_weak_on_corpus_sample():
    for name, op in weakly_localizable_ops()[:5]:
        strong = is_strongly_localizable(op)
        if strong["verdict"] == "yes":
            assert is_weakly_localizable(op).verdict == "yes", name
