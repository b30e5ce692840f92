"""Difference groups of commutative monoids and their ordered reductions.

The difference group of a commutative monoid M consists of classes of
formal differences: pairs (a, b) with (a, b) ~ (a', b') when
``a + b' + t == a' + b + t`` for some t.  Two successive reductions
produce partially ordered abelian groups:

* level 1 quotients by ``U ∩ -U`` where U is the scaling saturation
  ("up-closure") of the embedded monoid image: ``x ∈ U`` iff some
  positive multiple of x lands in the image;
* level 2 additionally applies the damped-limit closure
  ("dagger-closure"): ``x`` enters when some single e keeps ``l*x + e``
  in the set for every scalar l >= 1.

The embedded order of level 1 recovers the canonical quasi-order of the
monoid, and level-2 equality recovers its canonical equivalence; both
facts are exposed as cross-checks over sampled pairs.  Biadditive
operations descend to both reductions, with well-definedness asserted
rather than assumed.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Optional, Sequence

from .exactmath import (
    InputError,
    InternalCheckError,
    IntegerLattice,
    RationalCone,
    as_int_vector,
    hermite_normal_form,
    integer_kernel,
    rational_solve,
    smith_normal_form,
    vadd,
    vdot,
    vneg,
    vscale,
    vsub,
)
from .monoids import (
    BiadditiveOp,
    FiniteMonoid,
    LatticeMonoid,
    OpenConeMonoid,
    approx,
    leq,
)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class FiniteAbelianGroup:
    """Finite abelian group given by its addition table, identity 0."""

    def __init__(self, table: Sequence[Sequence[int]]):
        self.n = len(table)
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        for i in range(self.n):
            if len(self.table[i]) != self.n:
                raise InputError("group table is not square")
            if self.table[0][i] != i:
                raise InputError("element 0 is not the identity")
            for j in range(i + 1):
                if self.table[i][j] != self.table[j][i]:
                    raise InputError("group table is not commutative")
        for i in range(self.n):
            for j in range(self.n):
                for k in range(self.n):
                    if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                        raise InputError("group table is not associative")
        self._neg = [None] * self.n
        for i in range(self.n):
            for j in range(self.n):
                if self.table[i][j] == 0:
                    self._neg[i] = j
                    break
            if self._neg[i] is None:
                raise InputError(f"element {i} has no inverse")

    def elements(self) -> range:
        return range(self.n)

    def add(self, a: int, b: int) -> int:
        return self.table[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.table[a][self._neg[b]]

    def scale(self, k: int, a: int) -> int:
        if k < 0:
            return self.scale(-k, self._neg[a])
        out = 0
        for _ in range(k):
            out = self.table[out][a]
        return out

    def order_of(self, a: int) -> int:
        x = a
        k = 1
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    @property
    def exponent(self) -> int:
        e = 1
        for a in range(self.n):
            e = _lcm(e, self.order_of(a))
        return e

    def subgroup(self, gens: Sequence[int]) -> frozenset:
        out = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in gens:
                for y in (self.table[x][g], self.table[x][self._neg[g]]):
                    if y not in out:
                        out.add(y)
                        frontier.append(y)
        return frozenset(out)

    def quotient(self, sub: frozenset) -> tuple["FiniteAbelianGroup", list[int]]:
        """Quotient group and the projection map element -> class index."""
        for s in sub:
            if self._neg[s] not in sub:
                raise InputError("subgroup not closed under negation")
            for t in sub:
                if self.table[s][t] not in sub:
                    raise InputError("subgroup not closed under addition")
        if 0 not in sub:
            raise InputError("subgroup must contain 0")
        coset_of = [None] * self.n
        reps: list[int] = []
        for x in range(self.n):
            if coset_of[x] is not None:
                continue
            idx = len(reps)
            reps.append(x)
            for s in sub:
                coset_of[self.table[x][s]] = idx
        table = [[coset_of[self.table[reps[i]][reps[j]]] for j in range(len(reps))]
                 for i in range(len(reps))]
        return FiniteAbelianGroup(table), coset_of

    def invariant_factors(self) -> list[int]:
        """Cyclic decomposition orders d_1 | d_2 | ... with product |G|."""
        if self.n == 1:
            return []
        best = max(self.elements(), key=lambda a: (self.order_of(a), -a))
        d = self.order_of(best)
        q, _ = self.quotient(self.subgroup([best]))
        factors = q.invariant_factors() + [d]
        for i in range(len(factors) - 1):
            if factors[i + 1] % factors[i] != 0:
                raise InternalCheckError("invariant factor chain broken")
        return factors


def stable_equality(m: FiniteMonoid) -> list[list[bool]]:
    """x, y identified after adding some common t: exists t, x+t == y+t."""
    if "stable_eq" in m._cache:
        return m._cache["stable_eq"]
    eq = [[False] * m.n for _ in range(m.n)]
    for x in range(m.n):
        for y in range(m.n):
            eq[x][y] = any(m.table[x][t] == m.table[y][t] for t in range(m.n))
    m._cache["stable_eq"] = eq
    return eq


class FiniteGrothGroup:
    """Difference group of a finite monoid as explicit pair classes."""

    kind = "finite"

    def __init__(self, monoid: FiniteMonoid):
        self.monoid = monoid
        eq = stable_equality(monoid)
        n = monoid.n
        pair_class: dict[tuple[int, int], int] = {}
        reps: list[tuple[int, int]] = []
        for a in range(n):
            for b in range(n):
                found = None
                for idx, (c, d) in enumerate(reps):
                    if eq[monoid.add(a, d)][monoid.add(c, b)]:
                        found = idx
                        break
                if found is None:
                    found = len(reps)
                    reps.append((a, b))
                pair_class[(a, b)] = found
        self.reps = reps
        self._pair_class = pair_class
        if len(reps) > n:
            raise InternalCheckError("difference group larger than the monoid")
        table = []
        for (a, b) in reps:
            row = []
            for (c, d) in reps:
                row.append(pair_class[(monoid.add(a, c), monoid.add(b, d))])
            table.append(row)
        zero = pair_class[(0, 0)]
        if zero != 0:
            raise InternalCheckError("class of (0,0) is not the first class")
        self.group = FiniteAbelianGroup(table)
        self.iota = [pair_class[(a, 0)] for a in range(n)]
        for a in range(n):
            for b in range(n):
                if self.group.add(self.iota[a], self.iota[b]) != self.iota[monoid.add(a, b)]:
                    raise InternalCheckError("monoid embedding is not additive")
        for idx, (a, b) in enumerate(reps):
            if self.group.sub(self.iota[a], self.iota[b]) != idx:
                raise InternalCheckError("pair class is not the difference of embeddings")
        if self.group.subgroup(sorted(set(self.iota))) != frozenset(self.group.elements()):
            raise InternalCheckError("monoid image does not generate the group")

    def pair_class(self, a: int, b: int) -> int:
        return self._pair_class[(a, b)]


class LatticeGrothGroup:
    """Difference group of a lattice monoid: the generated integer lattice."""

    kind = "lattice"

    def __init__(self, monoid: LatticeMonoid):
        self.monoid = monoid
        self.dim = monoid.dim
        self.lattice = IntegerLattice(monoid.dim, monoid.generators)

    def iota(self, a):
        return tuple(a)


class ConeGrothGroup:
    """Difference group of an open-cone monoid: the rational span."""

    kind = "cone"

    def __init__(self, monoid: OpenConeMonoid):
        self.monoid = monoid
        self.dim = monoid.dim
        rays = [tuple(int(x) for x in r) for r in monoid.closed_cone.v_rep]
        basis = hermite_normal_form([list(r) for r in rays])
        self.span_basis = tuple(tuple(row) for row in basis)

    def span_coordinates(self, x) -> Optional[tuple]:
        return rational_solve(self.span_basis, tuple(Fraction(v) for v in x))

    def iota(self, a):
        return tuple(Fraction(v) for v in a)


def grothendieck(m):
    """Difference group of a carrier, cached on the carrier."""
    if "groth" not in m._cache:
        if isinstance(m, FiniteMonoid):
            m._cache["groth"] = FiniteGrothGroup(m)
        elif isinstance(m, LatticeMonoid):
            m._cache["groth"] = LatticeGrothGroup(m)
        elif isinstance(m, OpenConeMonoid):
            m._cache["groth"] = ConeGrothGroup(m)
        else:
            raise InputError(f"unsupported carrier {type(m).__name__}")
    return m._cache["groth"]


# ---------------------------------------------------------------------------
# closures of submonoids inside their ambient group


class SubmonoidClosure:
    """A closure of a submonoid, queryable through :meth:`member`.

    kind is one of ``up`` (scaling saturation), ``ddagger`` (damped-limit
    closure), or ``up_ddagger`` (both applied in order).
    """

    def __init__(self, kind: str, member, description: dict,
                 result_set: Optional[frozenset] = None):
        self.kind = kind
        self._member = member
        self.description = description
        self.result_set = result_set

    def member(self, x) -> bool:
        return self._member(x)

    def describe(self) -> dict:
        return dict(self.description, kind=self.kind)


def up_closure(group, base) -> SubmonoidClosure:
    """Saturation {x in G : some positive multiple of x lies in base}."""
    if isinstance(group, FiniteAbelianGroup):
        base_set = frozenset(base)
        result = set()
        bound = group.exponent
        for x in group.elements():
            y = 0
            for _ in range(bound):
                y = group.add(y, x)
                if y in base_set:
                    result.add(x)
                    break
        result = frozenset(result)
        return SubmonoidClosure(
            "up", lambda x: x in result,
            {"ambient_order": group.n, "result_size": len(result)},
            result_set=result)
    if isinstance(group, IntegerLattice):
        gens = [tuple(int(v) for v in g) for g in base]
        nonzero = [g for g in gens if any(g)]
        if nonzero:
            cone = RationalCone.from_rays(nonzero, group.dim)
        else:
            unit = [tuple(1 if j == i else 0 for j in range(group.dim))
                    for i in range(group.dim)]
            cone = RationalCone.from_inequalities(unit + [vneg(u) for u in unit], group.dim)

        def member(x):
            return group.contains(x) and cone.member(x)

        return SubmonoidClosure(
            "up", member,
            {"ambient": "integer lattice", "cone_rays": [list(r) for r in cone.v_rep]})
    if isinstance(group, ConeGrothGroup):
        monoid = base if isinstance(base, OpenConeMonoid) else group.monoid

        def member(x):
            return (group.span_coordinates(x) is not None
                    and monoid.boundary_status(x) == "inside")

        return SubmonoidClosure(
            "up", member,
            {"ambient": "rational span",
             "open_normals": [list(n) for n in monoid.open_normals]})
    raise InputError(f"unsupported ambient group {type(group).__name__}")


def ddagger_closure(group, base, bound: Optional[int] = None) -> SubmonoidClosure:
    """Damped-limit closure {x : some e has l*x + e in base for all l >= 1}."""
    if isinstance(group, FiniteAbelianGroup):
        base_set = base.result_set if isinstance(base, SubmonoidClosure) else frozenset(base)
        e_exp = group.exponent
        if bound is None:
            bound = e_exp * e_exp + e_exp
        result = set()
        for x in group.elements():
            for e in group.elements():
                y = e
                good = True
                for _ in range(bound):
                    y = group.add(y, x)
                    if y not in base_set:
                        good = False
                        break
                if good:
                    result.add(x)
                    break
        result = frozenset(result)
        kind = "up_ddagger" if isinstance(base, SubmonoidClosure) else "ddagger"
        return SubmonoidClosure(
            kind, lambda x: x in result,
            {"ambient_order": group.n, "scalar_bound": bound,
             "result_size": len(result)},
            result_set=result)
    if isinstance(group, IntegerLattice):
        # base is the up-closure: lattice points of a closed rational cone.
        # Scaling any member down by l and letting l grow keeps every weak
        # inequality weak, so the damped-limit closure adds nothing.
        up = base if isinstance(base, SubmonoidClosure) else up_closure(group, base)
        return SubmonoidClosure(
            "up_ddagger", up.member,
            dict(up.description, note="closed cone: damped-limit closure is the identity"))
    if isinstance(group, ConeGrothGroup):
        monoid = group.monoid
        closed = monoid.closed_cone

        def member(x):
            return group.span_coordinates(x) is not None and closed.member(x)

        return SubmonoidClosure(
            "up_ddagger", member,
            {"ambient": "rational span",
             "note": "open faces close up: the damped shift clears each strict "
                     "inequality for every scalar"})
    raise InputError(f"unsupported ambient group {type(group).__name__}")


# ---------------------------------------------------------------------------
# reduced ordered groups


class ReducedFinite:
    """Reduction of a finite carrier: quotient group plus positivity set."""

    kind = "finite"

    def __init__(self, monoid: FiniteMonoid, level: int):
        if level not in (1, 2):
            raise InputError("level must be 1 or 2")
        self.monoid = monoid
        self.level = level
        gg = grothendieck(monoid)
        self.groth = gg
        image = sorted(set(gg.iota))
        up = up_closure(gg.group, image)
        if level == 1:
            self.positive_closure = up
        else:
            self.positive_closure = ddagger_closure(gg.group, up)
        pos = self.positive_closure.result_set
        kernel = frozenset(x for x in pos if gg.group.neg(x) in pos)
        self.kernel_set = kernel
        self.group, self._proj = gg.group.quotient(kernel)
        self.positive_classes = frozenset(self._proj[x] for x in pos)
        self._iota = [self._proj[gg.iota[a]] for a in range(monoid.n)]

    def iota(self, a: int) -> int:
        return self._iota[a]

    def project(self, groth_element: int) -> int:
        return self._proj[groth_element]

    def eq(self, p: int, q: int) -> bool:
        return p == q

    def leq(self, p: int, q: int) -> bool:
        return self.group.sub(q, p) in self.positive_classes

    def describe(self) -> dict:
        return {
            "carrier": "finite",
            "level": self.level,
            "group_order": self.group.n,
            "invariant_factors": self.group.invariant_factors(),
            "positive_class_count": len(self.positive_classes),
            "kernel_size": len(self.kernel_set),
        }


class ReducedLattice:
    """Reduction of a lattice carrier in canonical quotient coordinates.

    The quotient of the generated lattice by its order-kernel is free; a
    unimodular change of basis turns classes into integer coordinate
    tuples, and the positivity cone is the image of the generators.
    """

    kind = "lattice"

    def __init__(self, monoid: LatticeMonoid, level: int):
        if level not in (1, 2):
            raise InputError("level must be 1 or 2")
        self.monoid = monoid
        self.level = level
        gg = grothendieck(monoid)
        self.groth = gg
        lat = gg.lattice
        basis = [list(row) for row in lat.basis]
        r = len(basis)
        h = list(monoid.cone.h_rep)
        up = up_closure(lat, monoid.generators)
        if level == 1:
            self.positive_closure = up
        else:
            self.positive_closure = ddagger_closure(lat, up)
        if h:
            rel = [[vdot(hrow, brow) for brow in basis] for hrow in h]
            kernel_coords = integer_kernel(rel)
        else:
            kernel_coords = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
        self.kernel_rank = len(kernel_coords)
        self.kernel_vectors = tuple(
            tuple(sum(c[i] * basis[i][j] for i in range(r)) for j in range(monoid.dim))
            for c in kernel_coords)
        if kernel_coords:
            _, d, v = smith_normal_form([list(c) for c in kernel_coords])
            k = len(kernel_coords)
            for i in range(k):
                if d[i][i] != 1:
                    raise InternalCheckError("order kernel is not a direct summand")
            self._v = v
        else:
            k = 0
            self._v = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
        self._basis = basis
        self._r = r
        self._k = k
        self.rank = r - k
        vinv = _integer_inverse(self._v)
        # class w reconstructs through c = (0,...,0,w) V^{-1}; x = c B
        self._recon_rows = [
            tuple(sum(vinv[k + t][i] * basis[i][j] for i in range(r))
                  for j in range(monoid.dim))
            for t in range(self.rank)]
        gen_images = sorted(set(self.project(g) for g in monoid.generators))
        self.gen_images = gen_images
        nonzero = [g for g in gen_images if any(g)]
        if nonzero:
            self.positive_cone = RationalCone.from_rays(nonzero, self.rank)
        else:
            unit = [tuple(1 if j == i else 0 for j in range(self.rank))
                    for i in range(self.rank)]
            self.positive_cone = RationalCone.from_inequalities(
                unit + [vneg(u) for u in unit], self.rank)

    def project(self, x) -> tuple:
        c = self.groth.lattice.coordinates(x)
        if c is None:
            raise InputError(f"{tuple(x)!r} is not in the difference lattice")
        w = tuple(sum(c[i] * self._v[i][j] for i in range(self._r)) for j in range(self._r))
        return w[self._k:]

    def reconstruct(self, w) -> tuple:
        out = tuple(0 for _ in range(self.monoid.dim))
        for t, coeff in enumerate(w):
            out = vadd(out, vscale(coeff, self._recon_rows[t]))
        return out

    def iota(self, a) -> tuple:
        return self.project(a)

    def eq(self, p, q) -> bool:
        return tuple(p) == tuple(q)

    def leq(self, p, q) -> bool:
        return self.positive_cone.member(vsub(q, p))

    def describe(self) -> dict:
        return {
            "carrier": "lattice",
            "level": self.level,
            "free_rank": self.rank,
            "invariant_factors": [],
            "kernel_rank": self.kernel_rank,
            "positive_rays": [list(r) for r in self.positive_cone.v_rep],
        }


def _integer_inverse(v: list[list[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix, verified integral."""
    r = len(v)
    rows = [tuple(Fraction(x) for x in row) for row in v]
    inv = []
    for i in range(r):
        e = tuple(Fraction(1) if j == i else Fraction(0) for j in range(r))
        sol = rational_solve([tuple(rows[t][j] for t in range(r)) for j in range(r)], e)
        if sol is None:
            raise InternalCheckError("matrix not invertible")
        if any(f.denominator != 1 for f in sol):
            raise InternalCheckError("matrix inverse not integral")
        inv.append([int(f) for f in sol])
    # each solve produced one column of the inverse; transpose into rows
    return [[inv[j][i] for j in range(r)] for i in range(r)]


class ReducedCone:
    """Reduction of an open-cone carrier over the rationals.

    Level 1 keeps strict faces strict (kernel trivial when any face is
    excluded); level 2 closes them, collapsing the lineality of the
    closed cone.  Classes are rational coordinate tuples in a basis of
    the quotient space.
    """

    kind = "cone"

    def __init__(self, monoid: OpenConeMonoid, level: int):
        if level not in (1, 2):
            raise InputError("level must be 1 or 2")
        self.monoid = monoid
        self.level = level
        gg = grothendieck(monoid)
        self.groth = gg
        basis = [list(row) for row in gg.span_basis]
        r = len(basis)
        if level == 1:
            self.positive_closure = up_closure(gg, monoid)
            if monoid.open_normals:
                kernel_vectors: list[tuple] = []
            else:
                kernel_vectors = list(monoid.closed_cone.lineality_basis)
        else:
            self.positive_closure = ddagger_closure(gg, monoid)
            kernel_vectors = list(monoid.closed_cone.lineality_basis)
        self.kernel_vectors = tuple(tuple(v) for v in kernel_vectors)
        kernel_coords = []
        for kv in kernel_vectors:
            c = rational_solve(basis, kv)
            if c is None:
                raise InternalCheckError("kernel vector outside the span")
            kernel_coords.append(as_int_vector(c))
        k = len(kernel_coords)
        if kernel_coords:
            _, _, v = smith_normal_form([list(c) for c in kernel_coords])
            self._v = v
        else:
            self._v = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
        self._basis = basis
        self._r = r
        self._k = k
        self.rank = r - k
        vinv = _integer_inverse(self._v)
        self._recon_rows = [
            tuple(sum(Fraction(vinv[k + t][i]) * basis[i][j] for i in range(r))
                  for j in range(monoid.dim))
            for t in range(self.rank)]

    def project(self, x) -> tuple:
        c = self.groth.span_coordinates(x)
        if c is None:
            raise InputError(f"{tuple(x)!r} is not in the difference span")
        w = tuple(sum(c[i] * self._v[i][j] for i in range(self._r)) for j in range(self._r))
        return tuple(Fraction(t) for t in w[self._k:])

    def reconstruct(self, w) -> tuple:
        out = tuple(Fraction(0) for _ in range(self.monoid.dim))
        for t, coeff in enumerate(w):
            out = vadd(out, vscale(Fraction(coeff), self._recon_rows[t]))
        return out

    def iota(self, a) -> tuple:
        return self.project(a)

    def eq(self, p, q) -> bool:
        return tuple(p) == tuple(q)

    def leq(self, p, q) -> bool:
        diff = self.reconstruct(vsub(q, p))
        if self.level == 1:
            return self.positive_closure.member(diff)
        return self.monoid.closed_cone.member(diff)

    def describe(self) -> dict:
        return {
            "carrier": "opencone",
            "level": self.level,
            "free_rank": self.rank,
            "kernel_rank": self._k,
            "span_basis": [list(r) for r in self.groth.span_basis],
        }


def nabla(m, level: int):
    """The level-1 or level-2 ordered reduction of a carrier, cached."""
    key = f"nabla{level}"
    if key not in m._cache:
        if isinstance(m, FiniteMonoid):
            m._cache[key] = ReducedFinite(m, level)
        elif isinstance(m, LatticeMonoid):
            m._cache[key] = ReducedLattice(m, level)
        elif isinstance(m, OpenConeMonoid):
            m._cache[key] = ReducedCone(m, level)
        else:
            raise InputError(f"unsupported carrier {type(m).__name__}")
    return m._cache[key]


# ---------------------------------------------------------------------------
# cross-checks of the order/equivalence transfer


def default_pairs(m, count: int = 200, seed: int = 20240901) -> list[tuple]:
    """Deterministic element pairs used by the transfer cross-checks."""
    if isinstance(m, FiniteMonoid):
        return [(a, b) for a in m.elements() for b in m.elements()]
    rng = random.Random(seed)
    if isinstance(m, LatticeMonoid):
        pool = m.element_pool(3)
        pairs = []
        for _ in range(count):
            pairs.append((rng.choice(pool), rng.choice(pool)))
        return pairs
    if isinstance(m, OpenConeMonoid):
        pool = m.sample_elements(12)
        zero = tuple(Fraction(0) for _ in range(m.dim))
        pool = [zero] + [tuple(Fraction(x) for x in p) for p in pool]
        scaled = []
        for p in pool:
            scaled.append(p)
            scaled.append(tuple(x / 2 for x in p))
            scaled.append(tuple(3 * x for x in p))
        pairs = []
        for _ in range(count):
            pairs.append((rng.choice(scaled), rng.choice(scaled)))
        return pairs
    raise InputError(f"unsupported carrier {type(m).__name__}")


def check_lemma_canleq(m, pairs: Optional[Sequence] = None) -> dict:
    """Monoid quasi-order against the level-1 embedded order, pairwise."""
    if pairs is None:
        pairs = default_pairs(m)
    red = nabla(m, 1)
    mismatches = []
    for a, b in pairs:
        direct = leq(m, a, b)
        reduced = red.leq(red.iota(a), red.iota(b))
        if direct != reduced:
            mismatches.append({"a": _as_report(a), "b": _as_report(b),
                               "monoid": direct, "reduced": reduced})
    return {"checked": len(pairs), "mismatches": mismatches, "ok": not mismatches}


def check_lemma_canequiv(m, pairs: Optional[Sequence] = None) -> dict:
    """Monoid equivalence against level-2 embedded equality, pairwise."""
    if pairs is None:
        pairs = default_pairs(m)
    red = nabla(m, 2)
    mismatches = []
    for a, b in pairs:
        direct = approx(m, a, b)
        reduced = red.eq(red.iota(a), red.iota(b))
        if direct != reduced:
            mismatches.append({"a": _as_report(a), "b": _as_report(b),
                               "monoid": direct, "reduced": reduced})
    return {"checked": len(pairs), "mismatches": mismatches, "ok": not mismatches}


def _as_report(x):
    if isinstance(x, int):
        return x
    return [str(v) for v in x]


def kernel_crosscheck_finite(m: FiniteMonoid) -> dict:
    """Alternative description of the level-1 kernel on finite carriers.

    A difference class x lies in the kernel exactly when some positive
    multiple of x sits between 0 and 0 in the saturation order, i.e.
    k*x and -k*x both saturate into the monoid image.
    """
    red = nabla(m, 1)
    gg = red.groth
    g = gg.group
    image = sorted(set(gg.iota))
    up = up_closure(g, image).result_set
    mismatches = []
    for x in g.elements():
        direct = x in red.kernel_set
        sandwich = False
        y = 0
        for _ in range(g.exponent):
            y = g.add(y, x)
            if y in up and g.neg(y) in up:
                sandwich = True
                break
        if direct != sandwich:
            mismatches.append(x)
    return {"checked": g.n, "mismatches": mismatches, "ok": not mismatches}


# ---------------------------------------------------------------------------
# descending biadditive operations


class LiftedOp:
    """A biadditive operation pushed down to a reduced group."""

    def __init__(self, op: BiadditiveOp, level: int):
        self.base = op
        self.level = level
        m = op.carrier
        self.reduced = nabla(m, level)
        self.report = {"level": level, "checks": []}
        if isinstance(m, FiniteMonoid):
            self._init_finite()
        else:
            self._init_vector()

    # -- finite ------------------------------------------------------------

    def _init_finite(self):
        red = self.reduced
        m = self.base.carrier
        gg = red.groth
        g = gg.group
        images: dict[tuple[int, int], int] = {}
        for (a, b) in itertools.product(m.elements(), m.elements()):
            for (c, d) in itertools.product(m.elements(), m.elements()):
                p = red.project(gg.pair_class(a, b))
                q = red.project(gg.pair_class(c, d))
                val = red.project(gg.pair_class(
                    m.add(self.base.mu(a, c), self.base.mu(b, d)),
                    m.add(self.base.mu(a, d), self.base.mu(b, c))))
                if (p, q) in images:
                    if images[(p, q)] != val:
                        raise InternalCheckError(
                            "descended operation disagrees on equivalent "
                            f"representatives at classes ({p}, {q})")
                else:
                    images[(p, q)] = val
        self._finite_table = images
        self.report["checks"].append(
            {"name": "representative-independence", "ok": True,
             "pairs_checked": m.n ** 4})
        bad = []
        for p in red.group.elements():
            for q in red.group.elements():
                for s in red.group.elements():
                    lhs = self._finite_table[(red.group.add(p, q), s)]
                    rhs = red.group.add(self._finite_table[(p, s)],
                                        self._finite_table[(q, s)])
                    if lhs != rhs:
                        bad.append(("left", p, q, s))
                    lhs2 = self._finite_table[(p, red.group.add(q, s))]
                    rhs2 = red.group.add(self._finite_table[(p, q)],
                                         self._finite_table[(p, s)])
                    if lhs2 != rhs2:
                        bad.append(("right", p, q, s))
        if bad:
            raise InternalCheckError(f"descended operation is not biadditive: {bad[:3]}")
        self.report["checks"].append({"name": "biadditivity", "ok": True})
        agree = all(
            self.mu(red.iota(a), red.iota(b)) == red.iota(self.base.mu(a, b))
            for a in m.elements() for b in m.elements())
        if not agree:
            raise InternalCheckError("descended operation disagrees with the base map")
        self.report["checks"].append({"name": "embedding-compatibility", "ok": True})

    # -- lattice / cone ------------------------------------------------------

    def _init_vector(self):
        red = self.reduced
        m = self.base.carrier
        kernels = list(red.kernel_vectors)
        if isinstance(m, LatticeMonoid):
            span_vectors = [tuple(row) for row in red._basis]
        else:
            span_vectors = [tuple(row) for row in red._basis]
        bad = []
        for kv in kernels:
            for sv in span_vectors:
                for prod in (self.base.mu(kv, sv), self.base.mu(sv, kv)):
                    if not self._in_kernel_span(prod):
                        bad.append((list(kv), list(sv), list(prod)))
        if bad:
            raise InternalCheckError(
                f"operation does not preserve the order kernel: {bad[:3]}")
        self.report["checks"].append(
            {"name": "kernel-preservation", "ok": True,
             "pairs_checked": 2 * len(kernels) * len(span_vectors)})
        if isinstance(m, LatticeMonoid):
            gens = m.generators
        else:
            gens = m.closed_cone.v_rep
        agree = all(
            self.mu(red.iota(a), red.iota(b)) == red.project(self.base.mu(a, b))
            for a in gens for b in gens)
        if not agree:
            raise InternalCheckError("descended operation disagrees with the base map")
        self.report["checks"].append({"name": "embedding-compatibility", "ok": True})

    def _in_kernel_span(self, x) -> bool:
        kernels = list(self.reduced.kernel_vectors)
        if not any(Fraction(v) != 0 for v in x):
            return True
        if not kernels:
            return False
        return rational_solve([tuple(k) for k in kernels],
                              tuple(Fraction(v) for v in x)) is not None

    def mu(self, p, q):
        if isinstance(self.base.carrier, FiniteMonoid):
            return self._finite_table[(p, q)]
        x = self.reduced.reconstruct(p)
        y = self.reduced.reconstruct(q)
        return self.reduced.project(self.base.mu(x, y))


def lift_mu(op: BiadditiveOp, level: int) -> LiftedOp:
    return LiftedOp(op, level)


# ---------------------------------------------------------------------------
# the connecting morphism between the two reductions


class Pi12:
    """The canonical surjection from the level-1 to level-2 reduction."""

    def __init__(self, m):
        self.monoid = m
        self.red1 = nabla(m, 1)
        self.red2 = nabla(m, 2)
        self.report = {"checks": []}
        if isinstance(m, FiniteMonoid):
            self._init_finite()
        else:
            self._init_vector()

    def _init_finite(self):
        r1, r2 = self.red1, self.red2
        if not r1.kernel_set <= r2.kernel_set:
            raise InternalCheckError("level-1 kernel not inside level-2 kernel")
        gg = r1.groth
        mapping: dict[int, int] = {}
        for x in gg.group.elements():
            p = r1.project(x)
            q = r2.project(x)
            if p in mapping and mapping[p] != q:
                raise InternalCheckError("connecting morphism not well defined")
            mapping[p] = q
        self._map = mapping
        g1, g2 = r1.group, r2.group
        additive = all(
            mapping[g1.add(p, q)] == g2.add(mapping[p], mapping[q])
            for p in g1.elements() for q in g1.elements())
        if not additive:
            raise InternalCheckError("connecting morphism not additive")
        self.report["checks"].append({"name": "additivity", "ok": True})
        triangle = all(mapping[r1.iota(a)] == r2.iota(a) for a in self.monoid.elements())
        surjective = set(mapping.values()) == set(g2.elements())
        self.report["checks"].append({"name": "triangle", "ok": triangle})
        self.report["checks"].append({"name": "surjectivity", "ok": surjective})
        self.report["bijective"] = surjective and g1.n == g2.n
        if not (triangle and surjective):
            raise InternalCheckError("connecting morphism failed its checks")

    def _init_vector(self):
        r1, r2 = self.red1, self.red2
        k1 = set(tuple(v) for v in r1.kernel_vectors)
        for kv in k1:
            if not _in_span(r2.kernel_vectors, kv):
                raise InternalCheckError("level-1 kernel not inside level-2 kernel")
        m = self.monoid
        if isinstance(m, LatticeMonoid):
            samples = m.element_pool(2)
        else:
            samples = m.sample_elements(8) + [tuple(Fraction(0) for _ in range(m.dim))]
        triangle = all(
            r2.eq(self.map(r1.iota(a)), r2.iota(a)) for a in samples)
        self.report["checks"].append({"name": "triangle", "ok": triangle})
        additive = all(
            r2.eq(self.map(vadd(r1.iota(a), r1.iota(b))),
                  vadd(self.map(r1.iota(a)), self.map(r1.iota(b))))
            for a in samples[:6] for b in samples[:6])
        self.report["checks"].append({"name": "additivity", "ok": additive})
        rank_onto = r2.rank <= r1.rank
        self.report["checks"].append({"name": "rank-onto", "ok": rank_onto})
        self.report["bijective"] = (r1.rank == r2.rank
                                    and len(r1.kernel_vectors) == len(r2.kernel_vectors))
        if not (triangle and additive and rank_onto):
            raise InternalCheckError("connecting morphism failed its checks")

    def map(self, p):
        if isinstance(self.monoid, FiniteMonoid):
            return self._map[p]
        x = self.red1.reconstruct(p)
        return self.red2.project(x)


def _in_span(vectors, x) -> bool:
    if not any(Fraction(v) != 0 for v in x):
        return True
    if not vectors:
        return False
    return rational_solve([tuple(v) for v in vectors],
                          tuple(Fraction(v) for v in x)) is not None


def pi12(m) -> Pi12:
    if "pi12" not in m._cache:
        m._cache["pi12"] = Pi12(m)
    return m._cache["pi12"]
