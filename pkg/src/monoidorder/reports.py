"""Deterministic result documents.

Reports are plain data: dicts, lists, strings, booleans, integers, and
exact rationals.  Rendering is byte-stable for identical inputs — keys are
sorted, rationals print as ``p/q``, and no clocks, hostnames, or other
environment data enter the document.  Wall-clock timing is observability,
not a result, and goes to stderr only.
"""

from __future__ import annotations

import json
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

from .exactmath import InputError

FORMATS = ("json", "text")


def canonical(doc):
    """Copy a report document onto the JSON-safe value set.

    Fractions become ``"p/q"`` strings (plain integers stay integers),
    tuples become lists, and dict keys become strings.  Unexpected types
    are rejected rather than silently stringified.
    """
    if isinstance(doc, Fraction):
        if doc.denominator == 1:
            return int(doc)
        return f"{doc.numerator}/{doc.denominator}"
    if isinstance(doc, bool) or doc is None or isinstance(doc, (int, str)):
        return doc
    if isinstance(doc, float):
        raise InputError(
            "floating-point values are not allowed in reports; use Fraction")
    if isinstance(doc, (list, tuple)):
        return [canonical(x) for x in doc]
    if isinstance(doc, dict):
        return {_key(k): canonical(v) for k, v in doc.items()}
    if hasattr(doc, "as_dict"):
        return canonical(doc.as_dict())
    if hasattr(doc, "describe"):
        return canonical(doc.describe())
    raise InputError(f"cannot serialize {type(doc).__name__} into a report")


def _key(k) -> str:
    """Flatten a dict key to a stable string: vectors join with commas."""
    if isinstance(k, (list, tuple)):
        return ",".join(_key(x) for x in k)
    flat = canonical(k)
    return flat if isinstance(flat, str) else str(flat)


def render_json(doc) -> str:
    return json.dumps(canonical(doc), sort_keys=True, indent=2,
                      ensure_ascii=True) + "\n"


def _text_lines(value, prefix: str, out: list) -> None:
    if isinstance(value, dict):
        if not value:
            out.append(f"{prefix}: {{}}")
            return
        for key in sorted(value):
            _text_lines(value[key], f"{prefix}.{key}" if prefix else str(key),
                        out)
        return
    if isinstance(value, list):
        if not value:
            out.append(f"{prefix}: []")
            return
        for i, item in enumerate(value):
            _text_lines(item, f"{prefix}[{i}]", out)
        return
    if value is None:
        out.append(f"{prefix}: none")
    elif isinstance(value, bool):
        out.append(f"{prefix}: {'true' if value else 'false'}")
    else:
        out.append(f"{prefix}: {value}")


def render_text(doc) -> str:
    lines: list = []
    _text_lines(canonical(doc), "", lines)
    return "\n".join(lines) + "\n"


def render_report(doc, fmt: str = "json") -> str:
    if fmt == "json":
        return render_json(doc)
    if fmt == "text":
        return render_text(doc)
    raise InputError(f"unknown report format {fmt!r}; use one of {FORMATS}")


@contextmanager
def stderr_timer(label: str):
    """Print elapsed wall time to stderr; never touches the report body."""
    start = time.monotonic()
    try:
        yield
    finally:
        elapsed = time.monotonic() - start
        print(f"[timing] {label}: {elapsed:.3f}s", file=sys.stderr)
