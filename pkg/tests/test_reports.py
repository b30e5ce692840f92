"""Tests for deterministic report rendering.

Reports must be byte-stable: same document in, same bytes out, with no
clocks or environment data.  Rationals are printed exactly, never as
floats.
"""

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monoidorder.exactmath import InputError
from monoidorder.reports import (canonical, render_json, render_report,
                                 render_text, stderr_timer)


# --------------------------------------------------------------------------
# canonical(): the JSON-safe value set
# --------------------------------------------------------------------------

def test_canonical_fraction_renders_as_p_over_q():
    assert canonical(Fraction(3, 7)) == "3/7"
    assert canonical(Fraction(-5, 2)) == "-5/2"


def test_canonical_integral_fraction_collapses_to_int():
    got = canonical(Fraction(14, 7))
    assert got == 2 and isinstance(got, int)


def test_canonical_passes_through_scalars():
    assert canonical(True) is True
    assert canonical(False) is False
    assert canonical(None) is None
    assert canonical(42) == 42
    assert canonical("yes") == "yes"


def test_canonical_rejects_floats():
    with pytest.raises(InputError, match="loating-point"):
        canonical(0.5)
    with pytest.raises(InputError):
        canonical({"value": 1.25})


def test_canonical_rejects_unknown_types():
    with pytest.raises(InputError, match="cannot serialize"):
        canonical(object())
    with pytest.raises(InputError):
        canonical({"value": {1, 2}})


def test_canonical_tuples_become_lists():
    assert canonical((1, (2, 3))) == [1, [2, 3]]
    assert canonical([Fraction(1, 2), (0, 1)]) == ["1/2", [0, 1]]


def test_canonical_flattens_tuple_keys():
    doc = {(1, 0): "a", (0, Fraction(1, 2)): "b", 3: "c"}
    assert canonical(doc) == {"1,0": "a", "0,1/2": "b", "3": "c"}


def test_canonical_recurses_into_nested_documents():
    doc = {"outer": {"inner": [Fraction(2, 4), {"deep": (1, 2)}]}}
    assert canonical(doc) == {"outer": {"inner": ["1/2", {"deep": [1, 2]}]}}


# --------------------------------------------------------------------------
# render_json(): sorted keys, indent 2, trailing newline, byte determinism
# --------------------------------------------------------------------------

def test_render_json_sorts_keys_and_ends_with_newline():
    text = render_json({"b": 1, "a": 2})
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"a": 2, "b": 1}


def test_render_json_is_byte_stable_under_key_shuffle():
    base = {"gamma": [1, 2], "alpha": {"y": Fraction(1, 3), "x": None}}
    shuffled = {"alpha": {"x": None, "y": Fraction(1, 3)}, "gamma": [1, 2]}
    assert render_json(base).encode() == render_json(shuffled).encode()


def test_render_json_contains_no_floats():
    text = render_json({"half": Fraction(1, 2), "n": 7})
    parsed = json.loads(text)
    assert parsed == {"half": "1/2", "n": 7}
    assert not any(isinstance(v, float) for v in parsed.values())


@given(st.dictionaries(
    st.text(min_size=1, max_size=6),
    st.one_of(st.integers(), st.booleans(), st.none(),
              st.fractions(max_denominator=50)),
    max_size=6))
def test_render_json_roundtrips_scalar_documents(doc):
    rendered = render_json(doc)
    assert rendered == render_json(dict(reversed(list(doc.items()))))
    json.loads(rendered)


# --------------------------------------------------------------------------
# render_text(): flattened dotted paths, sorted, one value per line
# --------------------------------------------------------------------------

def test_render_text_flattens_paths():
    doc = {"b": {"z": 1, "a": [True, None]}, "a": Fraction(1, 2)}
    assert render_text(doc) == (
        "a: 1/2\n"
        "b.a[0]: true\n"
        "b.a[1]: none\n"
        "b.z: 1\n")


def test_render_text_marks_empty_containers():
    assert render_text({"hits": [], "map": {}}) == "hits: []\nmap: {}\n"


def test_render_report_dispatches_and_rejects_unknown_format():
    doc = {"k": 1}
    assert render_report(doc, "json") == render_json(doc)
    assert render_report(doc, "text") == render_text(doc)
    with pytest.raises(InputError, match="unknown report format"):
        render_report(doc, "yaml")


# --------------------------------------------------------------------------
# stderr_timer(): observability goes to stderr, never into the document
# --------------------------------------------------------------------------

def test_stderr_timer_writes_stderr_only(capsys):
    with stderr_timer("unit-test"):
        pass
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "[timing] unit-test:" in captured.err
