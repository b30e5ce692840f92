"""Plain-text instance files for monoids, operations, and function-field inputs.

Grammar (diff-friendly, line-oriented):

* ``#`` starts a comment; blank lines are ignored.
* Header lines ``key: value`` come first; ``kind`` is mandatory and one of
  ``finite``, ``lattice``, ``open-cone``, ``lattice-group``,
  ``rational-function``.
* ``[section]`` opens a row table; each following line is one row of
  whitespace-separated tokens.  Numeric tokens are integers or rationals
  written ``p/q``.

Per kind:

``finite``
    header ``names: a b c`` (element names; the first is the neutral
    element), section ``[add]`` with one row per left operand giving the
    sums by name, optional section ``[mu]`` in the same shape.

``lattice``
    header ``dim: d``, section ``[generators]`` with integer rows,
    optional ``[tensor]`` rows ``i j t_1 .. t_d`` meaning the basis
    product e_i * e_j has those coordinates (missing pairs are zero).

``open-cone``
    header ``dim: d``, section ``[rays]`` (closed-cone generators) or
    ``[inequalities]`` (closed-cone normals), optional ``[open-normals]``
    rows marking faces removed except at the apex, optional ``[tensor]``.

``lattice-group``
    header ``dim: d``, optional header ``scalar: integer|rational``,
    section ``[tensor]`` rows ``i j t_1 .. t_d`` with nonnegative entries.

``rational-function``
    header ``expression: (x^4+3)/(x^2+1)``.

Errors carry ``source:line:`` positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exactmath import InputError, RationalCone
from .monoids import BiadditiveOp, FiniteMonoid, LatticeMonoid, OpenConeMonoid
from .latticeorder import FRingCandidate, LatticeGroup
from .formallyreal import RationalFunction, parse_rational_function

KINDS = ("finite", "lattice", "open-cone", "lattice-group", "rational-function")


@dataclass
class Instance:
    """A parsed and validated instance file."""

    kind: str
    source: str
    headers: dict
    monoid: object = None
    op: Optional[BiadditiveOp] = None
    candidate: Optional[FRingCandidate] = None
    function: Optional[RationalFunction] = None
    names: Optional[list] = None

    def require_op(self) -> BiadditiveOp:
        if self.op is None:
            raise InputError(
                f"{self.source}: this command needs an operation "
                "([mu] or [tensor] section)")
        return self.op

    def describe(self) -> dict:
        out = {"kind": self.kind, "source": self.source}
        if self.kind == "finite":
            out["size"] = self.monoid.n
            out["names"] = list(self.names)
        elif self.kind == "lattice":
            out["dim"] = self.monoid.dim
            out["generators"] = [list(g) for g in self.monoid.generators]
        elif self.kind == "open-cone":
            out["dim"] = self.monoid.dim
            out["closed_rays"] = [list(r) for r in self.monoid.closed_cone.v_rep]
            out["open_normals"] = [list(n) for n in self.monoid.open_normals]
        elif self.kind == "lattice-group":
            out["dim"] = self.candidate.group.dim
            out["scalar"] = self.candidate.group.scalar
        elif self.kind == "rational-function":
            out["expression"] = self.function.text()
        out["has_operation"] = self.op is not None
        return out


@dataclass
class _Raw:
    source: str
    headers: dict = field(default_factory=dict)
    header_lines: dict = field(default_factory=dict)
    sections: dict = field(default_factory=dict)
    section_lines: dict = field(default_factory=dict)


def _tokenize(raw_text: str, source: str) -> _Raw:
    raw = _Raw(source)
    current = None
    for lineno, line in enumerate(raw_text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("[") and body.endswith("]"):
            current = body[1:-1].strip()
            if not current:
                raise InputError(f"{source}:{lineno}: empty section name")
            if current in raw.sections:
                raise InputError(f"{source}:{lineno}: duplicate section "
                                 f"[{current}]")
            raw.sections[current] = []
            raw.section_lines[current] = []
            continue
        if current is None:
            if ":" not in body:
                raise InputError(
                    f"{source}:{lineno}: expected 'key: value' header or "
                    "'[section]'")
            key, value = body.split(":", 1)
            key = key.strip()
            if key in raw.headers:
                raise InputError(f"{source}:{lineno}: duplicate header "
                                 f"{key!r}")
            raw.headers[key] = value.strip()
            raw.header_lines[key] = lineno
        else:
            raw.sections[current].append(body.split())
            raw.section_lines[current].append(lineno)
    return raw


def _int_token(tok: str, where: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"{where}: expected an integer, got {tok!r}") from None


def _rat_token(tok: str, where: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise InputError(
            f"{where}: expected an integer or rational p/q, got {tok!r}") from None


def _need_header(raw: _Raw, key: str) -> str:
    if key not in raw.headers:
        raise InputError(f"{raw.source}: missing required header {key!r}")
    return raw.headers[key]


def _need_section(raw: _Raw, name: str):
    if name not in raw.sections:
        raise InputError(f"{raw.source}: missing required section [{name}]")
    return raw.sections[name]


def _check_known(raw: _Raw, headers, sections):
    for key in raw.headers:
        if key not in headers:
            raise InputError(
                f"{raw.source}:{raw.header_lines[key]}: unknown header "
                f"{key!r} (expected one of {sorted(headers)})")
    for name in raw.sections:
        if name not in sections:
            line = raw.section_lines[name][0] if raw.section_lines[name] else 0
            raise InputError(
                f"{raw.source}: unknown section [{name}] "
                f"(expected one of {sorted(sections)})")


def _int_rows(raw: _Raw, name: str, width: Optional[int] = None):
    rows = []
    for row, lineno in zip(raw.sections[name], raw.section_lines[name]):
        where = f"{raw.source}:{lineno}"
        if width is not None and len(row) != width:
            raise InputError(
                f"{where}: expected {width} entries in [{name}], got {len(row)}")
        rows.append(tuple(_int_token(t, where) for t in row))
    return rows


def _tensor_rows(raw: _Raw, name: str, dim: int):
    tensor = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    seen = set()
    for row, lineno in zip(raw.sections[name], raw.section_lines[name]):
        where = f"{raw.source}:{lineno}"
        if len(row) != 2 + dim:
            raise InputError(
                f"{where}: tensor rows are 'i j t_1 .. t_{dim}' "
                f"({2 + dim} entries), got {len(row)}")
        i = _int_token(row[0], where)
        j = _int_token(row[1], where)
        if not (0 <= i < dim and 0 <= j < dim):
            raise InputError(f"{where}: tensor indices must be in 0..{dim - 1}")
        if (i, j) in seen:
            raise InputError(f"{where}: duplicate tensor row for pair "
                             f"({i}, {j})")
        seen.add((i, j))
        tensor[i][j] = [_int_token(t, where) for t in row[2:]]
    return tensor


# ---------------------------------------------------------------------------
# per-kind builders


def _build_finite(raw: _Raw) -> Instance:
    _check_known(raw, {"kind", "names"}, {"add", "mu"})
    names = _need_header(raw, "names").split()
    if len(set(names)) != len(names):
        raise InputError(f"{raw.source}: duplicate element names")
    index = {nm: i for i, nm in enumerate(names)}
    n = len(names)

    def table_from(section: str):
        rows = _need_section(raw, section)
        lines = raw.section_lines[section]
        if len(rows) != n:
            raise InputError(
                f"{raw.source}: [{section}] needs {n} rows (one per element), "
                f"got {len(rows)}")
        table = []
        for row, lineno in zip(rows, lines):
            where = f"{raw.source}:{lineno}"
            if len(row) != n:
                raise InputError(
                    f"{where}: expected {n} entries, got {len(row)}")
            out = []
            for tok in row:
                if tok not in index:
                    raise InputError(
                        f"{where}: unknown element name {tok!r}")
                out.append(index[tok])
            table.append(out)
        return table

    monoid = FiniteMonoid(table_from("add"), names=names)
    op = None
    if "mu" in raw.sections:
        op = BiadditiveOp(monoid, table=table_from("mu"))
        _validate_op(op, raw.source)
    return Instance(kind="finite", source=raw.source, headers=dict(raw.headers),
                    monoid=monoid, op=op, names=list(names))


def _validate_op(op: BiadditiveOp, source: str) -> None:
    report = op.validate()
    if not report.ok:
        first = report.failures[0] if report.failures else "unspecified"
        raise InputError(
            f"{source}: operation fails biadditivity/monotonicity "
            f"validation: {first}")


def _build_lattice(raw: _Raw) -> Instance:
    _check_known(raw, {"kind", "dim"}, {"generators", "tensor"})
    dim = _int_token(_need_header(raw, "dim"), raw.source)
    _need_section(raw, "generators")
    gens = _int_rows(raw, "generators", width=dim)
    if not gens:
        raise InputError(f"{raw.source}: [generators] must not be empty")
    monoid = LatticeMonoid(dim, gens)
    op = None
    if "tensor" in raw.sections:
        op = BiadditiveOp(monoid, tensor=_tensor_rows(raw, "tensor", dim))
        _validate_op(op, raw.source)
    return Instance(kind="lattice", source=raw.source,
                    headers=dict(raw.headers), monoid=monoid, op=op)


def _build_open_cone(raw: _Raw) -> Instance:
    _check_known(raw, {"kind", "dim"},
                 {"rays", "inequalities", "open-normals", "tensor"})
    dim = _int_token(_need_header(raw, "dim"), raw.source)
    has_rays = "rays" in raw.sections
    has_ineq = "inequalities" in raw.sections
    if has_rays == has_ineq:
        raise InputError(
            f"{raw.source}: open-cone instances need exactly one of [rays] "
            "or [inequalities]")
    if has_rays:
        rays = _int_rows(raw, "rays", width=dim)
        if not rays:
            raise InputError(f"{raw.source}: [rays] must not be empty")
        closed = RationalCone.from_rays(rays, dim)
    else:
        normals = _int_rows(raw, "inequalities", width=dim)
        closed = RationalCone.from_inequalities(normals, dim)
    open_normals = _int_rows(raw, "open-normals", width=dim) \
        if "open-normals" in raw.sections else []
    monoid = OpenConeMonoid(closed, open_normals)
    op = None
    if "tensor" in raw.sections:
        op = BiadditiveOp(monoid, tensor=_tensor_rows(raw, "tensor", dim))
        _validate_op(op, raw.source)
    return Instance(kind="open-cone", source=raw.source,
                    headers=dict(raw.headers), monoid=monoid, op=op)


def _build_lattice_group(raw: _Raw) -> Instance:
    _check_known(raw, {"kind", "dim", "scalar"}, {"tensor"})
    dim = _int_token(_need_header(raw, "dim"), raw.source)
    scalar = raw.headers.get("scalar", "integer")
    if scalar not in ("integer", "rational"):
        raise InputError(
            f"{raw.source}: scalar must be 'integer' or 'rational', "
            f"got {scalar!r}")
    _need_section(raw, "tensor")
    group = LatticeGroup(dim, scalar=scalar)
    candidate = FRingCandidate(group, _tensor_rows(raw, "tensor", dim))
    return Instance(kind="lattice-group", source=raw.source,
                    headers=dict(raw.headers), monoid=group,
                    candidate=candidate)


def _build_rational_function(raw: _Raw) -> Instance:
    _check_known(raw, {"kind", "expression"}, set())
    expr = _need_header(raw, "expression")
    try:
        fn = parse_rational_function(expr)
    except InputError as exc:
        raise InputError(f"{raw.source}: {exc}") from None
    return Instance(kind="rational-function", source=raw.source,
                    headers=dict(raw.headers), function=fn)


_BUILDERS = {
    "finite": _build_finite,
    "lattice": _build_lattice,
    "open-cone": _build_open_cone,
    "lattice-group": _build_lattice_group,
    "rational-function": _build_rational_function,
}


def parse_instance_text(text: str, source: str = "<string>") -> Instance:
    raw = _tokenize(text, source)
    kind = _need_header(raw, "kind")
    if kind not in KINDS:
        raise InputError(
            f"{source}:{raw.header_lines.get('kind', 0)}: unknown kind "
            f"{kind!r} (expected one of {list(KINDS)})")
    return _BUILDERS[kind](raw)


def load_instance(path: str) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read instance file {path}: {exc}") from None
    return parse_instance_text(text, source=path)


# ---------------------------------------------------------------------------
# command-line element syntax


def parse_element(instance: Instance, text: str):
    """Parse an element argument: a name (finite) or comma-separated vector."""
    text = text.strip()
    if instance.kind == "finite":
        if instance.names and text in instance.names:
            return instance.names.index(text)
        raise InputError(
            f"unknown element {text!r}: expected one of {instance.names}")
    if instance.kind in ("lattice", "open-cone", "lattice-group"):
        body = text
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        toks = [t for t in body.replace(",", " ").split() if t]
        dim = instance.monoid.dim
        if len(toks) != dim:
            raise InputError(
                f"element {text!r} has {len(toks)} coordinates, expected {dim}")
        if instance.kind == "open-cone" or (
                instance.kind == "lattice-group"
                and instance.monoid.scalar == "rational"):
            vec = tuple(_rat_token(t, f"element {text!r}") for t in toks)
        else:
            vec = tuple(_int_token(t, f"element {text!r}") for t in toks)
        return vec
    raise InputError(
        f"instances of kind {instance.kind!r} have no carrier elements")


def check_membership(instance: Instance, element) -> None:
    """Raise the located membership error the order command promises."""
    monoid = instance.monoid
    if instance.kind == "finite":
        return
    if instance.kind in ("lattice", "open-cone"):
        if not monoid.contains(element):
            raise InputError(
                f"element {list(element)} is not in the monoid described by "
                f"{instance.source}")
        return
    if instance.kind == "lattice-group":
        return
    raise InputError("this instance kind has no membership test")
