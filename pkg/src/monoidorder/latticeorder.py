"""Coordinatewise lattice-ordered abelian groups and f-ring checks.

Carriers are finite products of the integers or rationals with the
coordinatewise order, where meet and join are coordinatewise min and
max.  A bilinear operation whose products of disjointly supported
positive elements stay disjoint from the complement is support
preserving; for coordinatewise carriers this pins the tensor to its
diagonal, which upgrades localizability and makes the operation
associative and commutative on the nose.  The module also builds the
fixed three-coordinate operation that satisfies the weaker
disjoint-products-vanish axiom while failing associativity, and the
implication chain showing coordinatewise carriers are archimedean.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .exactmath import (
    InputError,
    InternalCheckError,
    RationalCone,
    vadd,
    vneg,
    vscale,
    vsub,
)
from .functionals import verify_theorem_main
from .localizability import is_strongly_localizable, is_weakly_localizable
from .monoids import BiadditiveOp, LatticeMonoid, OpenConeMonoid, free_monoid


class LatticeGroup:
    """Free abelian group of fixed arity with the coordinatewise order."""

    def __init__(self, dim: int, scalar: str = "integer"):
        if dim <= 0:
            raise InputError("dimension must be positive")
        if scalar not in ("integer", "rational"):
            raise InputError("scalar kind must be 'integer' or 'rational'")
        self.dim = dim
        self.scalar = scalar

    def coerce(self, x) -> tuple:
        v = tuple(Fraction(t) for t in x)
        if len(v) != self.dim:
            raise InputError("element arity mismatch")
        if self.scalar == "integer":
            if any(t.denominator != 1 for t in v):
                raise InputError(f"{tuple(x)!r} is not an integer vector")
            return tuple(int(t) for t in v)
        return v

    @property
    def zero(self) -> tuple:
        base = 0 if self.scalar == "integer" else Fraction(0)
        return tuple(base for _ in range(self.dim))

    def add(self, x, y):
        return vadd(self.coerce(x), self.coerce(y))

    def sub(self, x, y):
        return vsub(self.coerce(x), self.coerce(y))

    def neg(self, x):
        return vneg(self.coerce(x))

    def scale(self, k, x):
        return vscale(k, self.coerce(x))

    def leq(self, x, y) -> bool:
        return all(a <= b for a, b in zip(self.coerce(x), self.coerce(y)))

    def meet(self, x, y):
        return tuple(min(a, b) for a, b in zip(self.coerce(x), self.coerce(y)))

    def join(self, x, y):
        return tuple(max(a, b) for a, b in zip(self.coerce(x), self.coerce(y)))

    def pos_part(self, x):
        return self.join(x, self.zero)

    def neg_part(self, x):
        return self.join(self.neg(x), self.zero)

    def box(self, lo: int, hi: int):
        """All integer vectors with entries in [lo, hi], lexicographic."""
        for v in product(range(lo, hi + 1), repeat=self.dim):
            yield self.coerce(v)

    def sample(self, rng: random.Random, bound: int = 3) -> tuple:
        return self.coerce(tuple(rng.randint(-bound, bound)
                                 for _ in range(self.dim)))


def check_lattice_identities(g: LatticeGroup, pairs: Sequence) -> dict:
    """Exact sweep of the defining identities of the coordinatewise order."""
    failures = []
    for x, y in pairs:
        x, y = g.coerce(x), g.coerce(y)
        shift = tuple(1 for _ in range(g.dim))
        if g.add(g.meet(x, y), shift) != g.meet(g.add(x, shift), g.add(y, shift)):
            failures.append({"identity": "translation", "x": x, "y": y})
        if g.neg(g.meet(x, y)) != g.join(g.neg(x), g.neg(y)):
            failures.append({"identity": "negation-swaps-meet-join", "x": x, "y": y})
        if g.meet(g.pos_part(x), g.neg_part(x)) != g.zero:
            failures.append({"identity": "parts-disjoint", "x": x})
        if g.add(x, g.neg_part(x)) != g.pos_part(x):
            failures.append({"identity": "parts-decompose", "x": x})
        if g.sub(g.join(x, y), y) != g.sub(x, g.meet(x, y)):
            failures.append({"identity": "join-meet-exchange", "x": x, "y": y})
        for k in (2, 3):
            if g.leq(g.scale(k, x), g.scale(k, y)) and not g.leq(x, y):
                failures.append({"identity": f"unperforated-{k}", "x": x, "y": y})
    return {"checked": len(list(pairs)), "failures": failures,
            "ok": not failures}


def check_riesz_lemma(g: LatticeGroup, count: int = 100,
                      seed: int = 20240901, bound: int = 4) -> dict:
    """``a <= (b meet a) + (c meet a)`` for positive ``a <= b + c``, sampled.

    Samples draw positive ``b`` and ``c`` and squeeze ``a`` below ``b + c``
    by meeting a random positive vector with the sum.
    """
    rng = random.Random(seed)
    checked = 0
    failures = []
    while checked < count:
        b = g.pos_part(g.sample(rng, bound))
        c = g.pos_part(g.sample(rng, bound))
        a = g.meet(g.add(b, c), g.pos_part(g.sample(rng, bound)))
        if not g.leq(a, g.add(b, c)):
            raise InternalCheckError("sampler produced an invalid premise")
        checked += 1
        dominated = g.leq(a, g.add(g.meet(b, a), g.meet(c, a)))
        if not dominated:
            failures.append({"a": a, "b": b, "c": c})
    return {"checked": checked, "failures": failures, "ok": not failures}


# ---------------------------------------------------------------------------
# support-preserving bilinear operations


@dataclass
class FRingCandidate:
    """Bilinear operation on a coordinatewise carrier, positive on the orthant."""

    group: LatticeGroup
    tensor: tuple

    def __post_init__(self):
        d = self.group.dim
        t = tuple(tuple(tuple(int(x) for x in row) for row in slab)
                  for slab in self.tensor)
        if len(t) != d or any(len(s) != d for s in t) or \
                any(len(r) != d for s in t for r in s):
            raise InputError("tensor shape mismatch")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    if t[i][j][k] < 0:
                        raise InputError(
                            "operation leaves the positive orthant on the "
                            f"basis pair ({i}, {j}): component {k} is negative")
        object.__setattr__(self, "tensor", t)

    def mu(self, a, b) -> tuple:
        a = self.group.coerce(a)
        b = self.group.coerce(b)
        d = self.group.dim
        out = []
        for k in range(d):
            acc = 0
            for i in range(d):
                if a[i] == 0:
                    continue
                for j in range(d):
                    if b[j] and self.tensor[i][j][k]:
                        acc += a[i] * b[j] * self.tensor[i][j][k]
            out.append(acc)
        return self.group.coerce(out)


def elementwise_candidate(dim: int, weights: Optional[Sequence[int]] = None,
                          scalar: str = "integer") -> FRingCandidate:
    """Coordinatewise multiplication with optional positive weights."""
    if weights is None:
        weights = [1] * dim
    tensor = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for k, w in enumerate(weights):
        tensor[k][k][k] = int(w)
    return FRingCandidate(LatticeGroup(dim, scalar), tensor)


def is_extended_f_ring(cand: FRingCandidate, box_bound: int = 3) -> dict:
    """Disjointness preservation of the operation, decided exactly.

    The defining condition is: whenever ``a`` and ``b`` are positive with
    ``a meet b = 0``, both ``mu(c, a) meet b`` and ``mu(a, c) meet b``
    vanish for every positive ``c``.  On a coordinatewise carrier,
    ``a meet b = 0`` means disjoint supports, and with a nonnegative
    tensor the support of ``mu(c, a)`` over all positive ``c`` is exactly
    the set of output coordinates reachable from the support of ``a``;
    single-coordinate choices of ``a``, ``b`` and ``c`` therefore witness
    every violation, so the condition holds if and only if every nonzero
    tensor entry sits on the full diagonal.  A bounded box sweep guards
    the reduction.
    """
    g = cand.group
    d = g.dim
    offender = None
    for i in range(d):
        for j in range(d):
            for k in range(d):
                if cand.tensor[i][j][k] and not (i == j == k):
                    offender = (i, j, k)
                    break
            if offender:
                break
        if offender:
            break
    witness = None
    if offender is not None:
        i, j, k = offender
        unit = [tuple(1 if t == n else 0 for t in range(d)) for n in range(d)]
        if k != j:
            witness = {"a": unit[j], "b": unit[k], "c": unit[i],
                       "side": "left-multiplier",
                       "value": cand.mu(unit[i], unit[j])}
        else:
            witness = {"a": unit[i], "b": unit[k], "c": unit[j],
                       "side": "right-multiplier",
                       "value": cand.mu(unit[i], unit[j])}
        a, b, c = witness["a"], witness["b"], witness["c"]
        if g.meet(a, b) != g.zero:
            raise InternalCheckError("witness supports are not disjoint")
        hit = (g.meet(cand.mu(c, a), b) if witness["side"] == "left-multiplier"
               else g.meet(cand.mu(a, c), b))
        if hit == g.zero:
            raise InternalCheckError("witness does not violate the condition")
    box_checked = 0
    box_witness = None
    if d <= 4:
        cells = list(product(range(box_bound), repeat=d))
        disjoint_pairs = [(a, b) for a in cells for b in cells
                          if all(min(x, y) == 0 for x, y in zip(a, b))]
        for a, b in disjoint_pairs:
            for c in cells:
                box_checked += 1
                if g.meet(cand.mu(c, a), b) != g.zero or \
                        g.meet(cand.mu(a, c), b) != g.zero:
                    box_witness = {"a": a, "b": b, "c": c}
                    break
            if box_witness:
                break
        if (box_witness is None) != (offender is None):
            raise InternalCheckError(
                "box sweep disagrees with the diagonal-support reduction")
    return {
        "verdict": "yes" if offender is None else "no",
        "structural_diagonal": offender is None,
        "offending_entry": offender,
        "witness": witness,
        "box_checked": box_checked,
    }


def _orthant_op(cand: FRingCandidate) -> BiadditiveOp:
    """The operation restricted to the positive orthant of the carrier."""
    d = cand.group.dim
    if cand.group.scalar == "integer":
        carrier = free_monoid(d)
    else:
        unit = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
        carrier = OpenConeMonoid(RationalCone.from_rays(unit, d), [])
    return BiadditiveOp(carrier, tensor=cand.tensor)


def fring_strong_localizability(cand: FRingCandidate,
                                box_bound: int = 3) -> dict:
    """Support-preserving candidates are strongly localizable and exact.

    Requires the disjointness-preservation verdict; then asserts strong
    localizability of the orthant-restricted operation, and that
    commutativity and associativity hold with on-the-nose equality (on
    coordinatewise archimedean carriers the equivalence collapses to
    equality).
    """
    fr = is_extended_f_ring(cand, box_bound=box_bound)
    if fr["verdict"] != "yes":
        return {"status": "skipped", "ok": True,
                "reason": "operation does not preserve disjoint supports",
                "f_ring": fr}
    op = _orthant_op(cand)
    strong = is_strongly_localizable(op)
    theorem = verify_theorem_main(op)
    exact = (theorem["commutativity"]["exact_equality_failures"] == 0
             and theorem["associativity"]["exact_equality_failures"] == 0)
    ok = strong["verdict"] == "yes" and theorem["ok"] and exact
    if not ok:
        raise InternalCheckError(
            "support-preserving operation failed the strength upgrade")
    return {"status": "confirmed", "ok": True, "f_ring": fr,
            "strong": strong,
            "exact_commutativity": True, "exact_associativity": True,
            "theorem": {"mode": theorem["mode"],
                        "pool_size": theorem["pool_size"],
                        "pairs": theorem["commutativity"]["checked"],
                        "triples": theorem["associativity"]["checked"]}}


# ---------------------------------------------------------------------------
# the three-coordinate commutative, non-associative operation


def almost_fring_tensor() -> list:
    """Tensor of ``mu(a, b) = (a_0 b_0 + a_2 b_2) * (1, 1, 1)`` on three coordinates."""
    t = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for k in range(3):
        t[0][0][k] = 1
        t[2][2][k] = 1
    return t


def almost_fring_counterexample(box_bound: int = 3) -> dict:
    """Disjoint products vanish, yet the operation is not associative.

    The fixed operation on three coordinates multiplies the outer
    coordinates and spreads the sum over all three.  The report verifies,
    in exact arithmetic over a bounded box: the vanishing of products of
    disjointly supported positive pairs, the archimedean property of the
    coordinatewise order, commutativity of the operation, and a concrete
    triple on which the two associators differ — so commutativity of such
    operations cannot be an instance of the localizability route, whose
    weak hypothesis this operation refutes outright.
    """
    g = LatticeGroup(3, "rational")
    cand = FRingCandidate(g, almost_fring_tensor())
    cells = list(product(range(box_bound), repeat=3))

    axiom_checked = 0
    axiom_failures = []
    for a in cells:
        for b in cells:
            if any(min(x, y) != 0 for x, y in zip(a, b)):
                continue
            axiom_checked += 1
            if cand.mu(a, b) != g.zero:
                axiom_failures.append({"a": a, "b": b, "mu": cand.mu(a, b)})

    commut_checked = 0
    commut_failures = []
    for a in cells:
        for b in cells:
            commut_checked += 1
            if cand.mu(a, b) != cand.mu(b, a):
                commut_failures.append({"a": a, "b": b})

    witness = None
    for a in cells:
        for b in cells:
            for c in cells:
                left = cand.mu(cand.mu(a, b), c)
                right = cand.mu(a, cand.mu(b, c))
                if left != right:
                    witness = {"a": a, "b": b, "c": c,
                               "left": left, "right": right}
                    break
            if witness:
                break
        if witness:
            break

    archimedean_checked = 0
    archimedean_failures = []
    for a in cells:
        if all(x == 0 for x in a):
            continue
        for b in cells:
            archimedean_checked += 1
            bound = max(b) + 1
            dominated_forever = all(
                g.leq(g.scale(ell, a), b) for ell in range(1, bound + 2))
            if dominated_forever:
                archimedean_failures.append({"a": a, "b": b})

    # decisive refutation needs the integer orthant form of the carrier,
    # where the damping-row obstruction applies
    weak = is_weakly_localizable(BiadditiveOp(free_monoid(3), tensor=cand.tensor))
    ok = (not axiom_failures and not commut_failures
          and witness is not None and not archimedean_failures
          and weak.verdict == "no")
    return {
        "ok": ok,
        "disjoint_products_vanish": {"checked": axiom_checked,
                                     "failures": axiom_failures},
        "commutative": {"checked": commut_checked,
                        "failures": commut_failures},
        "archimedean": {"checked": archimedean_checked,
                        "failures": archimedean_failures},
        "non_associative_witness": witness,
        "weak_localizability": {"verdict": weak.verdict,
                                "reason": weak.reason,
                                "refuted": weak.refuted},
    }


# ---------------------------------------------------------------------------
# weakly archimedean implies archimedean (coordinatewise carriers)


def weakly_archimedean_is_archimedean_check(g: LatticeGroup,
                                            count: int = 50,
                                            scalar_limit: int = 6,
                                            seed: int = 20240901,
                                            bound: int = 3) -> dict:
    """Bounded multiples squeeze the negative part, on sampled pairs.

    For sampled ``(a, b)``: every scalar ``l`` with ``0 <= l a + b`` must
    satisfy ``-pos_part(b) <= l neg_part(a) <= pos_part(b)``; and whenever
    ``neg_part(a)`` is nonzero the premise must fail for some ``l`` up to
    an explicit bound, which is how the order rules out infinitesimals.
    """
    rng = random.Random(seed)
    implication_failures = []
    escape_failures = []
    escapes = 0
    checked = 0
    for _ in range(count):
        a = g.sample(rng, bound)
        b = g.sample(rng, bound)
        neg = g.neg_part(a)
        cap = g.pos_part(b)
        checked += 1
        for ell in range(1, scalar_limit + 1):
            if g.leq(g.zero, g.add(g.scale(ell, a), b)):
                scaled = g.scale(ell, neg)
                if not (g.leq(g.neg(cap), scaled) and g.leq(scaled, cap)):
                    implication_failures.append({"a": a, "b": b, "l": ell})
        if neg != g.zero:
            escapes += 1
            worst = max(x for x in cap) if any(cap) else 0
            limit = int(worst) + 2
            escaped = any(
                not g.leq(g.zero, g.add(g.scale(ell, a), b))
                for ell in range(1, limit + 1))
            if not escaped:
                escape_failures.append({"a": a, "b": b, "limit": limit})
    return {
        "checked": checked,
        "implication_failures": implication_failures,
        "escape_checked": escapes,
        "escape_failures": escape_failures,
        "ok": not implication_failures and not escape_failures,
    }
