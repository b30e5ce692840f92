"""Parsing of the on-disk instance format and element lookup."""

import pathlib
from fractions import Fraction

import pytest

from monoidorder.exactmath import InputError
from monoidorder.instancefile import (check_membership, load_instance,
                                      parse_element, parse_instance_text)
from monoidorder.latticeorder import FRingCandidate
from monoidorder.monoids import (FiniteMonoid, LatticeMonoid, OpenConeMonoid,
                                 leq)

from conftest import INSTANCE_DIR, instance_path


ALL_INSTANCES = sorted(p.name for p in pathlib.Path(INSTANCE_DIR).glob("*.mon"))


def test_corpus_is_present():
    assert len(ALL_INSTANCES) >= 10


@pytest.mark.parametrize("name", ALL_INSTANCES)
def test_every_shipped_instance_loads(name):
    inst = load_instance(instance_path(name))
    assert inst.kind in ("finite", "lattice", "open-cone", "lattice-group",
                         "rational-function")
    desc = inst.describe()
    assert desc["kind"] == inst.kind
    assert desc["source"].endswith(name)


def test_finite_instance_round_trip():
    inst = load_instance(instance_path("finite-flag.mon"))
    assert inst.kind == "finite"
    assert isinstance(inst.monoid, FiniteMonoid)
    assert inst.names == ["o", "t"]
    assert inst.monoid.add(1, 1) == 1
    op = inst.require_op()
    assert op.mu(1, 1) == 1
    assert parse_element(inst, "t") == 1
    with pytest.raises(InputError):
        parse_element(inst, "bogus")


def test_lattice_instance_round_trip():
    inst = load_instance(instance_path("slanted-cone.mon"))
    assert inst.kind == "lattice"
    m = inst.monoid
    assert isinstance(m, LatticeMonoid)
    assert m.dim == 2 and list(m.generators) == [(1, 0), (1, 2)]
    assert inst.op is None
    with pytest.raises(InputError):
        inst.require_op()
    assert parse_element(inst, "(1,2)") == (1, 2)
    assert parse_element(inst, "3, 4") == (3, 4)
    # check_membership raises on non-members and returns None on success.
    assert check_membership(inst, (2, 2)) is None
    with pytest.raises(InputError, match="not in the monoid"):
        check_membership(inst, (0, 1))


def test_open_cone_instance_round_trip():
    inst = load_instance(instance_path("half-open-half-plane.mon"))
    assert inst.kind == "open-cone"
    m = inst.monoid
    assert isinstance(m, OpenConeMonoid)
    assert parse_element(inst, "(1/2, -3)") == (Fraction(1, 2), Fraction(-3))
    assert check_membership(inst, (Fraction(1, 2), Fraction(7))) is None
    op = inst.require_op()
    assert op.mu((1, 0), (2, 5)) == (2, 5)


def test_lattice_group_instance_round_trip():
    inst = load_instance(instance_path("almost-fring.mon"))
    assert inst.kind == "lattice-group"
    assert isinstance(inst.candidate, FRingCandidate)
    assert inst.candidate.group.scalar == "rational"
    assert parse_element(inst, "(1/2, 0, 1)") == \
        (Fraction(1, 2), Fraction(0), Fraction(1))


def test_rational_function_instance():
    inst = load_instance(instance_path("rational-function.mon"))
    assert inst.kind == "rational-function"
    assert inst.function.evaluate(1) == 2  # (1 + 3) / (1 + 1)


def test_matrix_instance_operation_is_matrix_product():
    inst = load_instance(instance_path("matrix-2x2.mon"))
    op = inst.require_op()
    # (a b; c d) * (e f; g h), flattened row-major
    assert op.mu((1, 2, 3, 4), (5, 6, 7, 8)) == (19, 22, 43, 50)
    assert leq(inst.monoid, (0, 0, 0, 0), (1, 1, 1, 1))


# ---------------------------------------------------------------------------
# diagnostics


def _expect_error(text, *needles):
    with pytest.raises(InputError) as err:
        parse_instance_text(text, source="<test>")
    msg = str(err.value)
    for needle in needles:
        assert needle in msg, (msg, needle)


def test_unknown_kind_is_rejected():
    _expect_error("kind: banana\n", "kind")


def test_duplicate_header_is_located():
    _expect_error("kind: lattice\ndim: 2\ndim: 3\n", ":3:", "duplicate")


def test_unknown_header_is_rejected():
    _expect_error("kind: lattice\ndim: 2\nflavor: spicy\n[generators]\n1 0\n",
                  "flavor")


def test_unknown_section_is_rejected():
    _expect_error("kind: lattice\ndim: 2\n[generators]\n1 0\n[frobnicators]\nx\n",
                  "frobnicators")


def test_duplicate_section_is_located():
    _expect_error(
        "kind: lattice\ndim: 2\n[generators]\n1 0\n[generators]\n0 1\n",
        "duplicate", "generators")


def test_bad_row_arity_is_located():
    _expect_error("kind: lattice\ndim: 2\n[generators]\n1 0 0\n", ":4:")


def test_missing_required_section():
    _expect_error("kind: lattice\ndim: 2\n", "generators")


def test_tensor_duplicate_pair_is_rejected():
    _expect_error(
        "kind: lattice\ndim: 1\n[generators]\n1\n[tensor]\n0 0 1\n0 0 2\n",
        "duplicate")


def test_tensor_index_out_of_range():
    _expect_error(
        "kind: lattice\ndim: 1\n[generators]\n1\n[tensor]\n0 1 1\n",
        "must be in")


def test_open_cone_needs_exactly_one_geometry():
    base = "kind: open-cone\ndim: 2\n"
    _expect_error(base, "rays")
    _expect_error(base + "[rays]\n1 0\n[inequalities]\n1 0\n", "exactly one")


def test_finite_mu_must_be_biadditive():
    text = ("kind: finite\nnames: z a\n"
            "[add]\nz a\na z\n"
            "[mu]\na a\na a\n")
    _expect_error(text, "biadditivity")


def test_non_monoid_table_is_rejected():
    text = "kind: finite\nnames: z a\n[add]\na a\na a\n"
    _expect_error(text, "neutral")


def test_comments_and_blank_lines_are_ignored():
    inst = parse_instance_text(
        "# a comment\nkind: lattice\n\ndim: 1\n[generators]\n# inside\n2\n",
        source="<test>")
    assert inst.monoid.generators == ((2,),)
