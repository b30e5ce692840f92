"""Shared fixtures: deterministic hypothesis profile and the instance corpus."""

import os
import random

import pytest
from hypothesis import HealthCheck, settings

from monoidorder.monoids import (BiadditiveOp, FiniteMonoid, LatticeMonoid,
                                 OpenConeMonoid, cyclic_group_monoid,
                                 cyclic_product_op, elementwise_product_op,
                                 free_monoid, half_open_half_plane,
                                 half_plane_product_tensor,
                                 matrix_product_op, saturating_product_op,
                                 truncated_free_monoid)
from monoidorder.exactmath import RationalCone

settings.register_profile(
    "ci",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

INSTANCE_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "instances")


def instance_path(name: str) -> str:
    return os.path.abspath(os.path.join(INSTANCE_DIR, name))


def seeded(salt: int = 0) -> random.Random:
    return random.Random(20240901 + salt)


# ---------------------------------------------------------------------------
# corpus builders (used by several test modules and the acceptance gate)


def finite_corpus() -> list:
    """Small finite monoids, with element count <= 6 for exhaustive sweeps."""
    return [
        ("truncated-1-cap2", truncated_free_monoid(1, cap=2)),
        ("truncated-1-cap3", truncated_free_monoid(1, cap=3)),
        ("flag", FiniteMonoid([[0, 1], [1, 1]], names=["o", "t"])),
        ("cyclic-2", cyclic_group_monoid(2)),
        ("cyclic-3", cyclic_group_monoid(3)),
        ("cyclic-5", cyclic_group_monoid(5)),
        ("chain-4", FiniteMonoid([[min(i + j, 3) for j in range(4)]
                                  for i in range(4)])),
    ]


def lattice_corpus() -> list:
    return [
        ("free-2", free_monoid(2)),
        ("free-3", free_monoid(3)),
        ("slanted", LatticeMonoid(2, [(1, 0), (1, 2)])),
        ("plane-with-line", LatticeMonoid(2, [(1, 0), (-1, 0), (0, 1)])),
        ("full-rank-3", LatticeMonoid(3, [(1, 0, 0), (1, 1, 0), (1, 1, 1)])),
        ("matrix-4", free_monoid(4)),
    ]


def cone_corpus() -> list:
    quarter = RationalCone.from_rays([(1, 0), (0, 1)], 2)
    return [
        ("half-open-half-plane", half_open_half_plane()),
        ("open-quadrant", OpenConeMonoid(quarter, [(1, 0), (0, 1)])),
        ("closed-quadrant", OpenConeMonoid(quarter, [])),
    ]


def weakly_localizable_ops() -> list:
    """Operations with weak-localizability certificates: the theorem corpus."""
    ops = []
    for cap in (1, 2):
        for coords in (1, 2):
            m = truncated_free_monoid(coords, cap=cap)
            ops.append((f"saturating-{coords}-cap{cap}", saturating_product_op(m)))
    for k in (2, 3, 5, 7):
        ops.append((f"cyclic-mult-{k}", cyclic_product_op(k)))
    flag = FiniteMonoid([[0, 1], [1, 1]], names=["o", "t"])
    ops.append(("flag-meet", BiadditiveOp(flag, table=[[0, 0], [0, 1]])))
    ops.append(("flag-zero", BiadditiveOp(flag, table=[[0, 0], [0, 0]])))
    for dim in (1, 2, 3, 4):
        ops.append((f"elementwise-{dim}",
                    elementwise_product_op(free_monoid(dim))))
    for dim, weights in ((2, [2, 3]), (3, [1, 2, 1]), (3, [5, 1, 4])):
        from monoidorder.monoids import diagonal_tensor
        ops.append((f"weighted-{dim}-{''.join(map(str, weights))}",
                    BiadditiveOp(free_monoid(dim),
                                 tensor=diagonal_tensor(dim, weights))))
    for dim in (2, 3):
        zero = tuple(tuple(tuple(0 for _ in range(dim)) for _ in range(dim))
                     for _ in range(dim))
        ops.append((f"zero-op-{dim}", BiadditiveOp(free_monoid(dim), tensor=zero)))
    m = truncated_free_monoid(3, cap=1)
    ops.append(("saturating-3-cap1", saturating_product_op(m)))
    return ops


@pytest.fixture(scope="session")
def half_plane_op() -> BiadditiveOp:
    return BiadditiveOp(half_open_half_plane(),
                        tensor=half_plane_product_tensor())


@pytest.fixture(scope="session")
def matrix_op() -> BiadditiveOp:
    return matrix_product_op()
