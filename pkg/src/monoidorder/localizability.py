"""Localizability of biadditive operations on ordered monoid carriers.

An element s is *left localizable* for an operation mu when the damped
comparison ``mu(s,a) + a <~ mu(s,b) + b`` always forces ``a <~ b``; it is
*localizable* when this holds for mu and its opposite.  The carrier is
*weakly localizable* when every element sits below some localizable one,
and *strongly localizable* when every element is localizable.

Finite carriers are decided exhaustively.  Vector carriers reduce the
left condition to exact convex geometry: with ``L_s(x) = x + mu(s, x)``
linear on the difference span, s is left localizable exactly when the
preimage of the positivity cone under L_s stays inside the cone.  The
preimage is computed by double description; every "no" verdict carries
an explicit witness pair re-validated through the order decision
procedures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exactmath import (
    InputError,
    InternalCheckError,
    RationalCone,
    cone_from_inequalities,
    hermite_normal_form,
    integer_solve,
    lp_feasible,
    rational_nullspace,
    rational_solve,
    rational_rank,
    vadd,
    vdot,
    vneg,
    vscale,
)
from .monoids import (
    BiadditiveOp,
    FiniteMonoid,
    LatticeMonoid,
    OpenConeMonoid,
    check_element,
    leq,
)


@dataclass
class LocalizabilityVerdict:
    subject: object
    kind: str                       # "left" or "full"
    verdict: str                    # "yes", "no", or "unknown"
    witness: Optional[tuple] = None  # pair (a, b) refuting the condition
    reason: str = ""
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "subject": _ser(self.subject),
            "kind": self.kind,
            "verdict": self.verdict,
            "witness": None if self.witness is None else
                       [_ser(self.witness[0]), _ser(self.witness[1])],
            "reason": self.reason,
            "details": self.details,
        }


@dataclass
class WeakLocalizabilityCertificate:
    verdict: str                    # "yes", "no", or "unknown"
    assignments: dict = field(default_factory=dict)  # query -> localizable s
    refuted: Optional[object] = None
    reason: str = ""
    budget: int = 0
    method: str = "search"
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "assignments": {str(_ser(k)): _ser(v) for k, v in self.assignments.items()},
            "refuted": None if self.refuted is None else _ser(self.refuted),
            "reason": self.reason,
            "budget": self.budget,
            "method": self.method,
            "details": self.details,
        }


def _ser(x):
    if isinstance(x, int):
        return x
    if isinstance(x, tuple):
        return [str(v) for v in x]
    return str(x)


# ---------------------------------------------------------------------------
# the damped comparison map L_s


def damping_matrix(op: BiadditiveOp, s, side: str = "left") -> list[list]:
    """Matrix of ``x -> x + mu(s, x)`` (or ``x + mu(x, s)``), rows = inputs."""
    d = op.carrier.dim
    t = op.tensor
    rows = []
    for j in range(d):
        row = [Fraction(0)] * d
        row[j] = Fraction(1)
        for k in range(d):
            if side == "left":
                row[k] += sum(Fraction(s[i]) * t[i][j][k] for i in range(d))
            else:
                row[k] += sum(t[j][i][k] * Fraction(s[i]) for i in range(d))
        rows.append(row)
    return rows


def apply_matrix(mat, x):
    d = len(mat)
    return tuple(sum(Fraction(x[j]) * mat[j][k] for j in range(d)) for k in range(d))


# ---------------------------------------------------------------------------
# left localizability


def is_left_localizable(op: BiadditiveOp, s, side: str = "left") -> LocalizabilityVerdict:
    m = op.carrier
    check_element(m, s)
    kind = "left" if side == "left" else "left-opposite"
    if isinstance(m, FiniteMonoid):
        return _finite_left(op, s, side, kind)
    if isinstance(m, LatticeMonoid):
        return _lattice_left(op, s, side, kind)
    if isinstance(m, OpenConeMonoid):
        return _opencone_left(op, s, side, kind)
    raise InputError(f"unsupported carrier {type(m).__name__}")


def _finite_left(op, s, side, kind) -> LocalizabilityVerdict:
    m = op.carrier

    def mu(x, y):
        return op.mu(x, y) if side == "left" else op.mu(y, x)

    for a in m.elements():
        for b in m.elements():
            if leq(m, m.add(mu(s, a), a), m.add(mu(s, b), b)) and not leq(m, a, b):
                v = LocalizabilityVerdict(s, kind, "no", witness=(a, b),
                                          reason="exhaustive pair search")
                _validate_witness(op, s, side, (a, b))
                return v
    return LocalizabilityVerdict(s, kind, "yes", reason="exhaustive pair search",
                                 details={"pairs_checked": m.n * m.n})


def _span_basis_lattice(m: LatticeMonoid) -> list[tuple[int, ...]]:
    if "span_basis" not in m._cache:
        rows = hermite_normal_form([list(g) for g in m.generators])
        m._cache["span_basis"] = [tuple(r) for r in rows]
    return m._cache["span_basis"]


def _lattice_left(op, s, side, kind) -> LocalizabilityVerdict:
    m = op.carrier
    mat = damping_matrix(op, s, side)
    basis = _span_basis_lattice(m)
    r = len(basis)
    cone = m.cone
    h = list(cone.h_rep)
    # preimage cone in span coordinates: c . (B L) . h^T >= 0 for each h
    bl = [apply_matrix(mat, brow) for brow in basis]
    normals = []
    for hrow in h:
        normals.append(tuple(vdot(bl[i], hrow) for i in range(r)))
    normals = [_as_int(n) for n in normals]
    lineality, rays = cone_from_inequalities(normals, r)
    violation = None
    for c in sorted(rays):
        x = _combine(c, basis)
        if not cone.member(x):
            violation = x
            break
    if violation is None:
        for c in sorted(lineality):
            x = _combine(c, basis)
            if not cone.member(x):
                violation = x
                break
            if not cone.member(vneg(x)):
                violation = vneg(x)
                break
    injective = not _left_kernel(bl, r)
    if violation is None:
        return LocalizabilityVerdict(
            s, kind, "yes",
            reason="preimage of the positivity cone stays inside the cone",
            details={"injective_on_span": injective,
                     "preimage_rays": len(rays),
                     "preimage_lineality": len(lineality)})
    witness = _lattice_witness(m, violation)
    verdict = LocalizabilityVerdict(
        s, kind, "no", witness=witness,
        reason="preimage cone escapes the positivity cone",
        details={"violating_direction": [int(v) for v in violation],
                 "injective_on_span": injective})
    _validate_witness(op, s, side, witness)
    return verdict


def _left_kernel(bl_rows, r) -> list[tuple]:
    """Nonzero combinations of the span basis killed by the damping map."""
    cols = [tuple(bl_rows[i][k] for i in range(r)) for k in range(len(bl_rows[0]))]
    return rational_nullspace(cols)


def _as_int(vec):
    from .exactmath import as_int_vector
    return as_int_vector(vec)


def _combine(coeffs, basis):
    out = tuple(0 for _ in basis[0])
    for c, b in zip(coeffs, basis):
        out = vadd(out, vscale(c, b))
    return out


def _lattice_witness(m: LatticeMonoid, direction) -> tuple:
    """Deterministic monoid pair (a, b) with b - a equal to the direction.

    The base point is the smallest multiple of the all-generators sum
    whose translate by the direction stays in the monoid.
    """
    combo = integer_solve([tuple(g) for g in m.generators], tuple(direction))
    if combo is None:
        raise InternalCheckError("violating direction left the difference lattice")
    gsum = tuple(0 for _ in range(m.dim))
    for g in m.generators:
        gsum = vadd(gsum, g)
    cap = max(0, -min(combo)) + 1
    for k in range(cap + 1):
        a = vscale(k, gsum)
        b = vadd(a, tuple(direction))
        if m.contains(a) and m.contains(b):
            return (a, b)
    raise InternalCheckError("witness base point search exceeded its certain bound")


def _validate_witness(op, s, side, witness) -> None:
    m = op.carrier

    def mu(x, y):
        return op.mu(x, y) if side == "left" else op.mu(y, x)

    a, b = witness
    if isinstance(m, FiniteMonoid):
        lhs, rhs = m.add(mu(s, a), a), m.add(mu(s, b), b)
    else:
        lhs, rhs = vadd(mu(s, a), a), vadd(mu(s, b), b)
    if not leq(m, lhs, rhs) or leq(m, a, b):
        raise InternalCheckError("localizability witness failed re-validation")


# -- open-cone carrier -------------------------------------------------------


def _span_basis_cone(m: OpenConeMonoid) -> list[tuple[int, ...]]:
    if "span_basis" not in m._cache:
        rays = [tuple(int(x) for x in r) for r in m.closed_cone.v_rep]
        m._cache["span_basis"] = [tuple(r) for r in hermite_normal_form(
            [list(r) for r in rays])]
    return m._cache["span_basis"]


def _interior_point(m: OpenConeMonoid) -> tuple:
    """A member strictly positive on every facet form."""
    acc = tuple(0 for _ in range(m.dim))
    for r in m.closed_cone.v_rep:
        acc = vadd(acc, r)
    for h in m.closed_cone.h_rep:
        if vdot(h, acc) <= 0:
            raise InternalCheckError("ray sum is not relatively interior")
    return acc


def _cone_base_pair(m: OpenConeMonoid, direction) -> tuple:
    """Pair (a, a + direction) in the monoid, deterministic base point."""
    g0 = _interior_point(m)
    k = 1
    while True:
        a = vscale(k, g0)
        b = vadd(a, direction)
        if m.contains(a) and m.contains(b):
            return (tuple(Fraction(v) for v in a), tuple(Fraction(v) for v in b))
        k += 1
        if k > 10_000:
            raise InternalCheckError("interior base point search runaway")


def _opencone_left(op, s, side, kind) -> LocalizabilityVerdict:
    m = op.carrier
    mat = damping_matrix(op, s, side)
    basis = _span_basis_cone(m)
    r = len(basis)
    closed = m.closed_cone
    bl = [apply_matrix(mat, brow) for brow in basis]

    # scalar action on the span: immediate yes
    lam = None
    scalar = True
    for i in range(r):
        for k in range(m.dim):
            if basis[i][k] == 0:
                if bl[i][k] != 0:
                    scalar = False
            else:
                ratio = Fraction(bl[i][k], basis[i][k]) if isinstance(bl[i][k], int) \
                    else bl[i][k] / basis[i][k]
                if lam is None:
                    lam = ratio
                elif ratio != lam:
                    scalar = False
        if not scalar:
            break
    if scalar and lam is not None and lam > 0:
        return LocalizabilityVerdict(
            s, kind, "yes", reason="damped map scales the span",
            details={"scale": str(lam)})

    # killed directions: with strict faces present, any nonzero one refutes;
    # without them the containment pass below settles lineality membership
    kernel = _left_kernel(bl, r)
    for c in kernel:
        x = _as_int(_combine(c, basis))
        direction = None
        if not _inside(m, x):
            direction = x
        elif not _inside(m, vneg(x)):
            direction = vneg(x)
        if direction is not None:
            witness = _cone_base_pair(m, direction)
            verdict = LocalizabilityVerdict(
                s, kind, "no", witness=witness,
                reason="damped map kills a direction outside the strict cone",
                details={"kernel_direction": [str(v) for v in direction]})
            _validate_witness(op, s, side, witness)
            return verdict

    # closed containment: the preimage cone of the closed positivity cone,
    # computed in span coordinates, must stay inside it
    normals = [_as_int(tuple(vdot(bl[i], hrow) for i in range(r)))
               for hrow in closed.h_rep]
    lin_p, rays_p = cone_from_inequalities(normals, r)
    violation = None
    for c in sorted(rays_p):
        x = _combine(c, basis)
        if not closed.member(x):
            violation = x
            break
    if violation is None:
        for c in sorted(lin_p):
            x = _combine(c, basis)
            if not closed.member(x):
                violation = x
                break
            if not closed.member(vneg(x)):
                violation = vneg(x)
                break
    if violation is not None:
        image = apply_matrix(mat, violation)
        if _inside(m, image) and any(Fraction(t) != 0 for t in image):
            direction = violation
        else:
            direction = _strictify(m, mat, bl, basis, violation)
        witness = _cone_base_pair(m, direction)
        verdict = LocalizabilityVerdict(
            s, kind, "no", witness=witness,
            reason="preimage of the closed positivity cone escapes it",
            details={"violating_direction": [str(v) for v in violation]})
        _validate_witness(op, s, side, witness)
        return verdict

    # excluded faces: no nonzero face direction may map strictly inside
    for nf in m.open_normals:
        face_rays = [rr for rr in closed.extreme_rays if vdot(nf, rr) == 0]
        face_rays += [v for l in closed.lineality_basis for v in (l, vneg(l))]
        if not face_rays:
            continue
        imgs = [apply_matrix(mat, rr) for rr in face_rays]
        ineqs = [(tuple(Fraction(0) if t != i else Fraction(1)
                        for t in range(len(face_rays))), 0)
                 for i in range(len(face_rays))]
        for h in closed.h_rep:
            ineqs.append((tuple(vdot(img, h) for img in imgs), 0))
        for n2 in m.open_normals:
            ineqs.append((tuple(vdot(img, n2) for img in imgs), 1))
        lam_sol = lp_feasible(len(face_rays), ineqs=ineqs)
        if lam_sol is not None:
            direction = tuple(sum(lam_sol[i] * Fraction(face_rays[i][j])
                                  for i in range(len(face_rays)))
                              for j in range(m.dim))
            witness = _cone_base_pair(m, direction)
            verdict = LocalizabilityVerdict(
                s, kind, "no", witness=witness,
                reason="an excluded-face direction maps strictly inside",
                details={"face_normal": [int(t) for t in nf]})
            _validate_witness(op, s, side, witness)
            return verdict
    return LocalizabilityVerdict(
        s, kind, "yes",
        reason="closed preimage contained and no excluded-face direction "
               "maps strictly inside")


def _inside(m: OpenConeMonoid, x) -> bool:
    return m.boundary_status(x) == "inside"


def _preimage(bl, basis, v):
    """Span vector x with (damped map)(x) == v, or None."""
    c = rational_solve([tuple(row) for row in bl], tuple(Fraction(t) for t in v))
    if c is None:
        return None
    return _combine(c, basis)


def _strictify(m: OpenConeMonoid, mat, bl, basis, x):
    """Perturb x so its image becomes a strict member while x itself stays
    outside the closed cone.  Requires the interior to have a preimage."""
    interior = _interior_point(m)
    u = _preimage(bl, basis, interior)
    if u is None:
        raise InternalCheckError("interior point lost from the damped image")
    offending = [h for h in m.closed_cone.h_rep if vdot(h, x) < 0]
    if not offending:
        raise InternalCheckError("expected a separating facet form")
    eps = Fraction(1)
    while True:
        x2 = vadd(x, vscale(eps, u))
        if any(vdot(h, x2) < 0 for h in offending):
            if not _inside(m, apply_matrix(mat, x2)):
                raise InternalCheckError("perturbed image lost strictness")
            return x2
        eps /= 2
        if eps.denominator > 2 ** 40:
            raise InternalCheckError("perturbation did not stabilize")


# ---------------------------------------------------------------------------
# full localizability and the bulk notions


def is_localizable(op: BiadditiveOp, s) -> LocalizabilityVerdict:
    left = is_left_localizable(op, s, side="left")
    if left.verdict == "no":
        return LocalizabilityVerdict(s, "full", "no", witness=left.witness,
                                     reason="left condition fails: " + left.reason,
                                     details=left.details)
    right = is_left_localizable(op, s, side="right")
    if right.verdict == "no":
        return LocalizabilityVerdict(s, "full", "no", witness=right.witness,
                                     reason="opposite condition fails: " + right.reason,
                                     details=right.details)
    if left.verdict == right.verdict == "yes":
        return LocalizabilityVerdict(s, "full", "yes",
                                     reason="both sides localizable")
    return LocalizabilityVerdict(s, "full", "unknown",
                                 reason="; ".join({left.reason, right.reason}))


def _lattice_candidates(m: LatticeMonoid, budget: int) -> list[tuple]:
    """Generator combinations ordered by coefficient sum, then lexicographic."""
    out = []
    seen = set()
    frontier = {tuple(0 for _ in range(m.dim))}
    for _ in range(budget):
        nxt = set()
        for x in sorted(frontier):
            for g in m.generators:
                y = vadd(x, g)
                if y not in seen:
                    nxt.add(y)
        for y in sorted(nxt):
            if y not in seen:
                seen.add(y)
                out.append(y)
        frontier = nxt
    return out


def _cone_candidates(m: OpenConeMonoid, budget: int) -> list[tuple]:
    g0 = _interior_point(m)
    out = []
    seen = set()
    for k in range(1, budget + 1):
        x = vscale(k, g0)
        if x not in seen:
            seen.add(x)
            out.append(x)
    for r in m.closed_cone.extreme_rays:
        for k in range(1, budget + 1):
            x = vadd(vscale(k, g0), r)
            if m.contains(x) and x not in seen:
                seen.add(x)
                out.append(x)
            y = r if k == 1 else vscale(k, r)
            if m.contains(y) and y not in seen:
                seen.add(y)
                out.append(y)
    return out


def _is_orthant_coordinates(m: LatticeMonoid) -> bool:
    """Generators are positive multiples of the distinct unit vectors."""
    dirs = set()
    for g in m.generators:
        support = [i for i, v in enumerate(g) if v != 0]
        if len(support) != 1 or g[support[0]] <= 0:
            return False
        dirs.add(support[0])
    return dirs == set(range(m.dim))


def monomial_row_obstruction(op: BiadditiveOp, a0) -> Optional[dict]:
    """Structural refutation: above a0, no element can be localizable.

    Applies on orthant-coordinate carriers with entrywise nonnegative
    tensors: the damping matrix of any s above a0 dominates the damping
    matrix of a0 entrywise, so a row with two or more positive entries
    persists, the map can never be monomial, and the orthant preimage
    condition must fail.
    """
    m = op.carrier
    if not isinstance(m, LatticeMonoid) or not _is_orthant_coordinates(m):
        return None
    d = m.dim
    if any(op.tensor[i][j][k] < 0 for i in range(d) for j in range(d) for k in range(d)):
        return None
    for side in ("left", "right"):
        mat = damping_matrix(op, a0, side)
        for j in range(d):
            positives = [k for k in range(d) if mat[j][k] > 0]
            if len(positives) >= 2:
                return {"element": list(a0), "side": side, "row": j,
                        "positive_columns": positives}
    return None


def is_weakly_localizable(op: BiadditiveOp, queries: Optional[Sequence] = None,
                          budget: int = 8) -> WeakLocalizabilityCertificate:
    m = op.carrier
    if isinstance(m, FiniteMonoid):
        assignments = {}
        for a in m.elements():
            found = None
            for s in m.elements():
                if leq(m, a, s) and is_localizable(op, s).verdict == "yes":
                    found = s
                    break
            if found is None:
                return WeakLocalizabilityCertificate(
                    "no", refuted=a, budget=budget,
                    reason="no localizable element above the refuted one "
                           "(exhaustive)")
            assignments[a] = found
        return WeakLocalizabilityCertificate(
            "yes", assignments=assignments, budget=budget,
            reason="exhaustive search over the carrier")
    if isinstance(m, LatticeMonoid):
        if queries is None:
            queries = list(m.generators)
        candidates = _lattice_candidates(m, budget)
        obstruction_pool = list(queries) + _lattice_candidates(m, 2)
        for a0 in obstruction_pool:
            obs = monomial_row_obstruction(op, a0)
            if obs is not None:
                return WeakLocalizabilityCertificate(
                    "no", refuted=tuple(a0), budget=budget,
                    reason="every element above the refuted one has a damping "
                           "row with two positive entries, so none is localizable",
                    details={"obstruction": obs})
        assignments = {}
        for a in queries:
            found = None
            for s in candidates:
                if leq(m, a, s) and is_localizable(op, s).verdict == "yes":
                    found = s
                    break
            if found is None:
                return WeakLocalizabilityCertificate(
                    "unknown", assignments=assignments, budget=budget,
                    reason=f"no localizable dominator found for {tuple(a)} "
                           f"within coefficient budget {budget}")
            assignments[tuple(a)] = found
        return WeakLocalizabilityCertificate(
            "yes", assignments=assignments, budget=budget,
            reason="localizable dominator found for every queried element")
    if isinstance(m, OpenConeMonoid):
        if queries is None:
            queries = m.sample_elements(6)
        candidates = _cone_candidates(m, budget)
        assignments = {}
        for a in queries:
            found = None
            for s in candidates:
                if leq(m, a, s) and is_localizable(op, s).verdict == "yes":
                    found = s
                    break
            if found is None:
                return WeakLocalizabilityCertificate(
                    "unknown", assignments=assignments, budget=budget,
                    reason=f"no localizable dominator found for {tuple(a)} "
                           f"within budget {budget}")
            assignments[tuple(a)] = found
        return WeakLocalizabilityCertificate(
            "yes", assignments=assignments, budget=budget,
            reason="localizable dominator found for every queried element")
    raise InputError(f"unsupported carrier {type(m).__name__}")


def _is_diagonal_tensor(op: BiadditiveOp) -> Optional[list]:
    """Per-coordinate weights if the tensor is diagonal and nonnegative."""
    m = op.carrier
    d = m.dim
    weights = [0] * d
    for i in range(d):
        for j in range(d):
            for k in range(d):
                v = op.tensor[i][j][k]
                if i == j == k:
                    if v < 0:
                        return None
                    weights[i] = v
                elif v != 0:
                    return None
    return weights


def is_strongly_localizable(op: BiadditiveOp, budget: int = 3) -> dict:
    """Exhaustive on finite carriers; structural or sampled on vector ones."""
    m = op.carrier
    if isinstance(m, FiniteMonoid):
        for s in m.elements():
            v = is_localizable(op, s)
            if v.verdict != "yes":
                return {"verdict": "no", "confirmed": "exhaustive",
                        "refuted_element": s, "witness": v.as_dict()["witness"]}
        return {"verdict": "yes", "confirmed": "exhaustive",
                "elements_checked": m.n}
    if isinstance(m, LatticeMonoid):
        if _is_orthant_coordinates(m):
            weights = _is_diagonal_tensor(op)
            if weights is not None:
                return {"verdict": "yes", "confirmed": "structural",
                        "reason": "diagonal nonnegative tensor on orthant "
                                  "coordinates keeps every damping map a "
                                  "positive diagonal",
                        "weights": weights}
        samples = _lattice_candidates(m, budget)
    else:
        samples = _cone_candidates(m, budget)
    for s in samples:
        v = is_localizable(op, s)
        if v.verdict == "no":
            return {"verdict": "no", "confirmed": "witnessed",
                    "refuted_element": _ser(s), "witness": v.as_dict()["witness"]}
    return {"verdict": "yes", "confirmed": "sampled",
            "elements_checked": len(samples),
            "note": "refutations are sound; confirmation is sampled"}


# ---------------------------------------------------------------------------
# order-unit fast path


def _order_unit_multiple(cone: RationalCone, e, g) -> Optional[int]:
    """Least k >= 1 with k*e - g in the cone, decided exactly."""
    lo = 1
    hi = None
    for h in cone.h_rep:
        he = vdot(h, e)
        hg = vdot(h, g)
        if he > 0:
            need = -(-hg // he) if hg > 0 else 0  # ceil for positive demand
            lo = max(lo, need)
        elif he == 0:
            if hg > 0:
                return None
        else:
            bound = hg // he  # floor of hg/he with he < 0
            hi = bound if hi is None else min(hi, bound)
    if hi is not None and lo > hi:
        return None
    return lo


def order_unit_fast_path(op: BiadditiveOp, e, queries: Optional[Sequence] = None,
                         budget: int = 8) -> WeakLocalizabilityCertificate:
    """Weak-localizability certificate through multiples of a unit.

    Demands that e is a two-sided unit for the operation and an order
    unit of the level-1 reduction, and that the reduction's positivity
    is a closed polyhedral cone (hence unperforated with damped limits
    adding nothing).  On refusal the general search runs instead, with
    the refusal reasons attached.
    """
    m = op.carrier
    check_element(m, e)
    refusals = []
    if isinstance(m, FiniteMonoid):
        probe = list(m.elements())
        unit_ok = all(op.mu(e, a) == a and op.mu(a, e) == a for a in probe)
    else:
        probe = list(m.generators) if isinstance(m, LatticeMonoid) \
            else list(m.closed_cone.v_rep)
        unit_ok = all(op.mu(e, tuple(a)) == tuple(a) and op.mu(tuple(a), e) == tuple(a)
                      for a in probe)
    if not unit_ok:
        refusals.append("not a two-sided unit for the operation")
    multiples = {}
    if isinstance(m, FiniteMonoid):
        # the canonical quasi-order on a finite carrier is total, so any
        # multiple dominates; the reduced order is discrete and closed
        if unit_ok:
            for a in m.elements():
                multiples[a] = 1
    else:
        cone = m.cone if isinstance(m, LatticeMonoid) else m.closed_cone
        if cone.dim != len(e):
            raise InputError("unit dimension mismatch")
        cone_dirs = [list(r) for r in cone.v_rep] + [list(b) for b in cone.lineality_basis]
        gen_rows = [list(g) for g in (m.generators if isinstance(m, LatticeMonoid)
                                      else m.closed_cone.v_rep)]
        cone_rank = rational_rank(cone_dirs) if cone_dirs else 0
        gen_rank = rational_rank(gen_rows) if gen_rows else 0
        if cone_rank < gen_rank:
            refusals.append(
                "positivity cone spans a smaller space than the carrier: "
                "no order unit can dominate every element")
        targets = queries if queries is not None else (
            list(m.generators) if isinstance(m, LatticeMonoid)
            else [r for r in m.closed_cone.v_rep])
        for g in targets:
            k = _order_unit_multiple(cone, e, g)
            if k is None:
                refusals.append(
                    f"not an order unit: no multiple dominates {tuple(g)}")
                break
            multiples[tuple(g)] = k
    if refusals:
        fallback = is_weakly_localizable(op, queries=queries, budget=budget)
        fallback.method = "search-after-refusal"
        fallback.details = dict(fallback.details, refusal_reasons=refusals)
        return fallback
    assignments = {}
    validated: dict = {}
    for a, k in multiples.items():
        if isinstance(m, FiniteMonoid):
            s = m.scale(k, e)
        else:
            s = vscale(k, tuple(e))
        if s not in validated:
            validated[s] = is_localizable(op, s).verdict
        if validated[s] != "yes":
            fallback = is_weakly_localizable(op, queries=queries, budget=budget)
            fallback.method = "search-after-refusal"
            fallback.details = dict(
                fallback.details,
                refusal_reasons=[f"unit multiple {_ser(s)} failed localizability"])
            return fallback
        if not leq(m, a, s):
            raise InternalCheckError("order-unit multiple does not dominate")
        assignments[a] = s
    return WeakLocalizabilityCertificate(
        "yes", assignments=assignments, budget=budget, method="order-unit",
        reason="unit multiples dominate and are localizable",
        details={"hypotheses": "two-sided unit; order unit of the level-1 "
                               "reduction; closed polyhedral positivity"})


def definitional_sample_check(op: BiadditiveOp, s, pairs: Sequence,
                              side: str = "left") -> dict:
    """Direct damped-comparison sampling used to audit fast verdicts."""
    m = op.carrier

    def mu(x, y):
        return op.mu(x, y) if side == "left" else op.mu(y, x)

    add = m.add if isinstance(m, FiniteMonoid) else vadd
    bad = []
    for a, b in pairs:
        if leq(m, add(mu(s, a), a), add(mu(s, b), b)) and not leq(m, a, b):
            bad.append((a, b))
    return {"checked": len(pairs), "violations": [(_ser(a), _ser(b)) for a, b in bad],
            "ok": not bad}
