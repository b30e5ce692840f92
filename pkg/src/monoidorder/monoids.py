"""Commutative monoid carriers, the canonical quasi-order, and biadditive maps.

Three carrier representations are supported:

* :class:`FiniteMonoid` -- explicit Cayley table on ``{0, ..., n-1}`` with
  neutral element 0;
* :class:`LatticeMonoid` -- all finite sums of a generator list inside
  ``Z^d``;
* :class:`OpenConeMonoid` -- a rational polyhedral cone with some facets
  excluded (strict inequalities), plus the origin.

The canonical quasi-order ``a <~ b`` holds when ``k*a + c + t == k*b + t``
for some monoid elements c, t and some positive integer k.  The associated
equivalence ``a ~~ b`` holds when there is a single d with
``l*a <~ l*b + d`` and ``l*b <~ l*a + d`` for every positive integer l.
Each carrier gets its own exact decision procedure; the finite carrier
uses exhaustive search with the scalar bound n + n*n (orbit preperiod plus
period envelope), the vector carriers reduce to exact cone membership.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exactmath import (
    InputError,
    InternalCheckError,
    IntegerLattice,
    RationalCone,
    ResourceBudgetError,
    bounded_nonneg_combination,
    is_zero_vector,
    solve_nonneg_rational,
    vadd,
    vdot,
    vneg,
    vscale,
    vsub,
)


class FiniteMonoid:
    """Commutative monoid on ``{0, .., n-1}`` given by its addition table.

    Element 0 is the neutral element.  Associativity, commutativity and
    the neutral law are checked exhaustively at construction.
    """

    kind = "finite"

    def __init__(self, table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None):
        self.n = len(table)
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        for row in self.table:
            if len(row) != self.n:
                raise InputError("addition table is not square")
            for x in row:
                if not 0 <= x < self.n:
                    raise InputError("addition table entry out of range")
        for i in range(self.n):
            if self.table[0][i] != i:
                raise InputError("element 0 is not neutral")
            for j in range(i + 1):
                if self.table[i][j] != self.table[j][i]:
                    raise InputError("addition table is not commutative")
        for i in range(self.n):
            for j in range(self.n):
                for k in range(self.n):
                    if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                        raise InputError("addition table is not associative")
        self.names = tuple(names) if names is not None else None
        self._cache: dict = {}

    def add(self, a: int, b: int) -> int:
        return self.table[a][b]

    def scale(self, k: int, a: int) -> int:
        out = 0
        for _ in range(k):
            out = self.table[out][a]
        return out

    def elements(self) -> range:
        return range(self.n)

    @property
    def scalar_bound(self) -> int:
        # orbit preperiod is at most n and the pair-orbit period at most n*n
        return self.n + self.n * self.n

    def sum_elements(self, items: Iterable[int]) -> int:
        out = 0
        for x in items:
            out = self.table[out][x]
        return out

    def generators(self) -> list[int]:
        if "generators" in self._cache:
            return self._cache["generators"]
        gens: list[int] = []
        known = {0}
        for x in range(1, self.n):
            if x in known:
                continue
            gens.append(x)
            frontier = list(known)
            while frontier:
                y = frontier.pop()
                for g in gens:
                    z = self.table[y][g]
                    if z not in known:
                        known.add(z)
                        frontier.append(z)
        self._cache["generators"] = gens
        return gens

    def expressions(self) -> dict[int, tuple[int, ...]]:
        """One fixed expression of every element as a sum of generators."""
        if "expressions" in self._cache:
            return self._cache["expressions"]
        gens = self.generators()
        expr: dict[int, tuple[int, ...]] = {0: ()}
        frontier = [0]
        while frontier:
            x = frontier.pop(0)
            for g in gens:
                y = self.table[x][g]
                if y not in expr:
                    expr[y] = expr[x] + (g,)
                    frontier.append(y)
        if len(expr) != self.n:
            raise InternalCheckError("generator closure missed elements")
        self._cache["expressions"] = expr
        return expr

    # -- canonical quasi-order (cached exhaustive decision) ---------------

    def leq_matrix(self) -> list[list[bool]]:
        if "leq" in self._cache:
            return self._cache["leq"]
        n = self.n
        reach = [[False] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                hit = False
                for t in range(n):
                    at = self.table[a][t]
                    bt = self.table[b][t]
                    if any(self.table[at][c] == bt for c in range(n)):
                        hit = True
                        break
                reach[a][b] = hit
        K = self.scalar_bound
        mult = [[0] * n]
        for k in range(1, K + 1):
            prev = mult[-1]
            mult.append([self.table[prev[a]][a] for a in range(n)])
        self._cache["multiples"] = mult
        leq = [[False] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                leq[a][b] = any(reach[mult[k][a]][mult[k][b]] for k in range(1, K + 1))
        self._cache["leq"] = leq
        return leq

    def multiples(self) -> list[list[int]]:
        self.leq_matrix()
        return self._cache["multiples"]


class LatticeMonoid:
    """All sums (with repetition) of finitely many generators in ``Z^d``."""

    kind = "lattice"

    def __init__(self, dim: int, generators: Sequence[Sequence[int]]):
        self.dim = int(dim)
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != self.dim:
                raise InputError("generator dimension mismatch")
            gens.append(g)
        if not gens:
            raise InputError("lattice monoid needs at least one generator")
        self.generators = tuple(gens)
        self._cache: dict = {}

    @property
    def cone(self) -> RationalCone:
        if "cone" not in self._cache:
            nonzero = [g for g in self.generators if not is_zero_vector(g)]
            if nonzero:
                cone = RationalCone.from_rays(nonzero, self.dim)
            else:
                unit = [tuple(1 if j == i else 0 for j in range(self.dim)) for i in range(self.dim)]
                cone = RationalCone.from_inequalities(unit + [vneg(u) for u in unit], self.dim)
            self._cache["cone"] = cone
        return self._cache["cone"]

    @property
    def lattice(self) -> IntegerLattice:
        if "lattice" not in self._cache:
            self._cache["lattice"] = IntegerLattice(self.dim, self.generators)
        return self._cache["lattice"]

    def contains(self, x: Sequence[int], bound: Optional[int] = None) -> bool:
        x = tuple(int(v) for v in x)
        if len(x) != self.dim:
            raise InputError("element dimension mismatch")
        if is_zero_vector(x):
            return True
        if not self.lattice.contains(x) or not self.cone.member(x):
            return False
        return bounded_nonneg_combination(self.generators, x, bound) is not None

    def element_pool(self, max_coeff_sum: int = 3) -> list[tuple[int, ...]]:
        """All generator combinations with coefficient sum up to the budget."""
        pool = {tuple(0 for _ in range(self.dim))}
        frontier = [tuple(0 for _ in range(self.dim))]
        for _ in range(max_coeff_sum):
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = vadd(x, g)
                    if y not in pool:
                        pool.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(pool)


class OpenConeMonoid:
    """A rational cone with chosen facets excluded, plus the origin.

    ``open_normals`` must be a subset of the h-representation of the
    closed cone; the monoid is the set of points satisfying every closed
    inequality weakly and every open inequality strictly, together with 0.
    Closure under addition is automatic for this shape: sums of weakly
    nonnegative values stay weakly nonnegative, sums of two strictly
    positive values stay strictly positive, and adding the origin changes
    nothing.  A generator-sum spot check is still run at construction.
    """

    kind = "opencone"

    def __init__(self, closed_cone: RationalCone, open_normals: Sequence[Sequence[int]]):
        self.dim = closed_cone.dim
        self.closed_cone = closed_cone
        h = set(closed_cone.h_rep)
        normals = []
        for n in open_normals:
            n = tuple(int(x) for x in n)
            if n not in h:
                raise InputError("open normal is not a facet normal of the closed cone")
            normals.append(n)
        self.open_normals = tuple(sorted(set(normals)))
        self.closed_normals = tuple(n for n in closed_cone.h_rep if n not in self.open_normals)
        for a in closed_cone.v_rep:
            for b in closed_cone.v_rep:
                s = vadd(a, b)
                if not closed_cone.member(s):
                    raise InternalCheckError("closed cone not closed under addition")
        self._cache: dict = {}

    def boundary_status(self, x: Sequence) -> str:
        if len(x) != self.dim:
            raise InputError("element dimension mismatch")
        if all(Fraction(v) == 0 for v in x):
            return "inside"
        for n in self.closed_normals:
            if vdot(n, x) < 0:
                return "outside"
        strict = True
        for n in self.open_normals:
            s = vdot(n, x)
            if s < 0:
                return "outside"
            if s == 0:
                strict = False
        return "inside" if strict else "on_excluded_face"

    def contains(self, x: Sequence) -> bool:
        return self.boundary_status(x) == "inside"

    def sample_elements(self, count: int = 12) -> list[tuple[Fraction, ...]]:
        """Deterministic nonzero members built from extreme rays."""
        rays = self.closed_cone.v_rep
        interior = None
        for r in rays:
            if self.contains(r):
                interior = r
                break
        if interior is None:
            acc = tuple(0 for _ in range(self.dim))
            for r in rays:
                acc = vadd(acc, r)
            if self.contains(acc):
                interior = acc
        out = []
        if interior is None:
            return out
        for r in rays:
            for k in (1, 2, 3):
                cand = vadd(vscale(k, interior), r)
                if self.contains(cand):
                    out.append(tuple(Fraction(v) for v in cand))
                if len(out) >= count:
                    return out
        return out


def check_element(m, x) -> None:
    """Raise :class:`InputError` unless x is a member of the carrier m."""
    if isinstance(m, FiniteMonoid):
        if not isinstance(x, int) or not 0 <= x < m.n:
            raise InputError(f"element {x!r} not an index in 0..{m.n - 1}")
        return
    if isinstance(m, LatticeMonoid):
        if not m.contains(x):
            raise InputError(f"element {tuple(x)!r} is not a generator combination")
        return
    if isinstance(m, OpenConeMonoid):
        if not m.contains(x):
            raise InputError(f"element {tuple(x)!r} is outside the open cone")
        return
    raise InputError(f"unsupported carrier {type(m).__name__}")


# ---------------------------------------------------------------------------
# canonical quasi-order and its equivalence


def leq(m, a, b) -> bool:
    """Decide ``a <~ b``: some k, c, t with ``k*a + c + t == k*b + t``."""
    if isinstance(m, FiniteMonoid):
        check_element(m, a)
        check_element(m, b)
        return m.leq_matrix()[a][b]
    if isinstance(m, LatticeMonoid):
        check_element(m, a)
        check_element(m, b)
        diff = vsub(b, a)
        return solve_nonneg_rational(m.generators, diff) is not None
    if isinstance(m, OpenConeMonoid):
        check_element(m, a)
        check_element(m, b)
        return m.boundary_status(vsub(b, a)) == "inside"
    raise InputError(f"unsupported carrier {type(m).__name__}")


def approx(m, a, b) -> bool:
    """Decide ``a ~~ b``: one d works for all scalars in both directions."""
    if isinstance(m, FiniteMonoid):
        check_element(m, a)
        check_element(m, b)
        key = "approx"
        if key not in m._cache:
            m._cache[key] = {}
        if (a, b) in m._cache[key]:
            return m._cache[key][(a, b)]
        leqm = m.leq_matrix()
        mult = m.multiples()
        K = m.scalar_bound
        result = False
        for d in range(m.n):
            good = True
            for l in range(1, K + 1):
                la, lb = mult[l][a], mult[l][b]
                if not (leqm[la][m.table[lb][d]] and leqm[lb][m.table[la][d]]):
                    good = False
                    break
            if good:
                result = True
                break
        m._cache[key][(a, b)] = result
        m._cache[key][(b, a)] = result
        return result
    if isinstance(m, LatticeMonoid):
        check_element(m, a)
        check_element(m, b)
        diff = vsub(b, a)
        # closed rational cones absorb the damping element: both directions
        # of the scaled comparison collapse to membership of +-diff
        return m.cone.member(diff) and m.cone.member(vneg(diff))
    if isinstance(m, OpenConeMonoid):
        check_element(m, a)
        check_element(m, b)
        diff = vsub(b, a)
        return m.closed_cone.member(diff) and m.closed_cone.member(vneg(diff))
    raise InputError(f"unsupported carrier {type(m).__name__}")


# ---------------------------------------------------------------------------
# biadditive operations


class BiadditiveValidation:
    def __init__(self, ok: bool, failures: list, notes: list[str]):
        self.ok = ok
        self.failures = failures
        self.notes = notes

    def as_dict(self) -> dict:
        return {"ok": self.ok, "failures": self.failures, "notes": self.notes}


class BiadditiveOp:
    """A biadditive binary operation on a carrier.

    Finite carriers take a value table; vector carriers take a d x d x d
    integer tensor T acting as ``mu(x, y)[k] = sum_ij T[i][j][k] x_i y_j``.
    """

    def __init__(self, carrier, table: Optional[Sequence[Sequence[int]]] = None,
                 tensor=None, name: str = "mu"):
        self.carrier = carrier
        self.name = name
        if isinstance(carrier, FiniteMonoid):
            if table is None:
                raise InputError("finite carrier needs a value table")
            self.table = tuple(tuple(int(x) for x in row) for row in table)
            if len(self.table) != carrier.n or any(len(r) != carrier.n for r in self.table):
                raise InputError("operation table shape mismatch")
            for row in self.table:
                for x in row:
                    if not 0 <= x < carrier.n:
                        raise InputError("operation table entry out of range")
            self.tensor = None
        else:
            if tensor is None:
                raise InputError("vector carrier needs a tensor")
            d = carrier.dim
            self.tensor = tuple(tuple(tuple(int(x) for x in row) for row in slab) for slab in tensor)
            if len(self.tensor) != d or any(len(s) != d for s in self.tensor) or \
                    any(len(r) != d for s in self.tensor for r in s):
                raise InputError("tensor shape mismatch")
            self.table = None

    def mu(self, a, b):
        if self.table is not None:
            return self.table[a][b]
        d = self.carrier.dim
        out = [0] * d
        for i in range(d):
            if a[i] == 0:
                continue
            for j in range(d):
                if b[j] == 0:
                    continue
                coeff = a[i] * b[j]
                row = self.tensor[i][j]
                for k in range(d):
                    if row[k]:
                        out[k] += coeff * row[k]
        return tuple(out)

    def opposite(self) -> "BiadditiveOp":
        if self.table is not None:
            t = tuple(tuple(self.table[j][i] for j in range(self.carrier.n))
                      for i in range(self.carrier.n))
            return BiadditiveOp(self.carrier, table=t, name=self.name + "_op")
        d = self.carrier.dim
        t = tuple(tuple(self.tensor[j][i] for j in range(d)) for i in range(d))
        return BiadditiveOp(self.carrier, tensor=t, name=self.name + "_op")

    # -- validation --------------------------------------------------------

    def validate(self) -> BiadditiveValidation:
        if isinstance(self.carrier, FiniteMonoid):
            return self._validate_finite()
        if isinstance(self.carrier, LatticeMonoid):
            return self._validate_lattice()
        if isinstance(self.carrier, OpenConeMonoid):
            return self._validate_opencone()
        raise InputError(f"unsupported carrier {type(self.carrier).__name__}")

    def _validate_finite(self) -> BiadditiveValidation:
        m = self.carrier
        failures = []
        for a in m.elements():
            for b in m.elements():
                for c in m.elements():
                    left = self.table[m.add(a, b)][c]
                    if left != m.add(self.table[a][c], self.table[b][c]):
                        failures.append(("left-additivity", a, b, c))
                    right = self.table[a][m.add(b, c)]
                    if right != m.add(self.table[a][b], self.table[a][c]):
                        failures.append(("right-additivity", a, b, c))
        notes = []
        for c in m.elements():
            v = self.table[0][c]
            if m.add(v, v) != v:
                failures.append(("zero-row-idempotent", c))
            w = self.table[c][0]
            if m.add(w, w) != w:
                failures.append(("zero-column-idempotent", c))
        notes.append("zero rows and columns verified idempotent")
        return BiadditiveValidation(not failures, failures[:20], notes)

    def _validate_lattice(self) -> BiadditiveValidation:
        m = self.carrier
        failures = []
        for i, g in enumerate(m.generators):
            for j, h in enumerate(m.generators):
                prod = self.mu(g, h)
                if not m.contains(prod):
                    failures.append(("generator-product-outside", i, j, list(prod)))
        notes = ["closure checked on all generator pairs; biadditivity is structural for tensors"]
        return BiadditiveValidation(not failures, failures, notes)

    def _validate_opencone(self) -> BiadditiveValidation:
        m = self.carrier
        failures = []
        notes = []
        rays = m.closed_cone.v_rep
        for a in rays:
            for b in rays:
                prod = self.mu(a, b)
                if not m.closed_cone.member(prod):
                    failures.append(("ray-product-outside-closure", list(a), list(b), list(prod)))
        # strict faces: certify <h, mu(a,b)> as a nonnegative combination of
        # products F_i(a) F_j(b) of facet forms with at least one strictly
        # positive pair, via exact LP on the tensor identity
        forms = list(m.closed_cone.h_rep)
        open_idx = [i for i, f in enumerate(forms) if f in set(m.open_normals)]
        d = m.dim
        for h in m.open_normals:
            target = [[sum(self.tensor[i][j][k] * h[k] for k in range(d)) for j in range(d)]
                      for i in range(d)]
            # solve target[i][j] == sum_{p,q} lam[p][q] forms[p][i] forms[q][j], lam >= 0
            nf = len(forms)
            gens = []
            for p in range(nf):
                for q in range(nf):
                    gens.append(tuple(forms[p][i] * forms[q][j] for i in range(d) for j in range(d)))
            flat = tuple(target[i][j] for i in range(d) for j in range(d))
            lam = solve_nonneg_rational(gens, flat)
            certified = False
            if lam is not None:
                strict_weight = sum(lam[p * nf + q] for p in open_idx for q in open_idx)
                certified = strict_weight > 0
            if certified:
                notes.append(f"strict face {list(h)} certified by facet-form decomposition")
            else:
                notes.append(f"strict face {list(h)} not certified; membership will be "
                             "checked per evaluation")
        return BiadditiveValidation(not failures, failures, notes)


def validate_biadditive(op: BiadditiveOp) -> BiadditiveValidation:
    return op.validate()


def mu_monotone_check(op: BiadditiveOp, triples: Optional[Sequence] = None) -> dict:
    """Check that a <~ a' forces mu(a,b) <~ mu(a',b) on both sides."""
    m = op.carrier
    if triples is None:
        if isinstance(m, FiniteMonoid):
            triples = [(a, a2, b) for a in m.elements() for a2 in m.elements()
                       for b in m.elements() if leq(m, a, a2)]
        elif isinstance(m, LatticeMonoid):
            pool = m.element_pool(2)
            triples = [(a, a2, b) for a in pool for a2 in pool for b in pool
                       if leq(m, a, a2)]
        else:
            pool = m.sample_elements()
            triples = [(a, a2, b) for a in pool for a2 in pool for b in pool
                       if leq(m, a, a2)][:400]
    violations = []
    for a, a2, b in triples:
        if not leq(m, op.mu(a, b), op.mu(a2, b)):
            violations.append(("left", a, a2, b))
        if not leq(m, op.mu(b, a), op.mu(b, a2)):
            violations.append(("right", a, a2, b))
    return {"checked": len(triples), "violations": violations[:20], "ok": not violations}


# ---------------------------------------------------------------------------
# enumeration of biadditive operations on finite carriers


def enumerate_biadditive_ops(m: FiniteMonoid, unital: Optional[int] = None,
                             node_budget: int = 2_000_000) -> list[BiadditiveOp]:
    """All biadditive operation tables on a finite carrier.

    A biadditive map is determined by its values on generator pairs; the
    search assigns those values depth first and prunes with the unit
    constraints when ``unital`` names a two-sided unit.  The budget counts
    assignment nodes; exceeding it raises :class:`ResourceBudgetError`.
    """
    gens = m.generators()
    expr = m.expressions()
    if unital is not None:
        check_element(m, unital)
    g = len(gens)
    pairs = [(i, j) for j in range(g) for i in range(g)]  # column major: fix j, vary i
    unit_expr = expr[unital] if unital is not None else ()
    unit_counts = [sum(1 for x in unit_expr if x == gens[i]) for i in range(g)]
    if unital is not None and m.sum_elements(unit_expr) != unital:
        raise InternalCheckError("unit expression does not re-evaluate to the unit")

    # backward feasibility per column: back[t] = partial sums after t of the
    # unit-weighted assignments from which the column target stays reachable
    def column_feasible_sets(j):
        total = sum(unit_counts)
        target = gens[j]
        back = [set() for _ in range(total + 1)]
        back[total] = {target}
        for t in reversed(range(total)):
            ok = set()
            for p in range(m.n):
                fine = False
                for v in range(m.n):
                    if m.table[p][v] in back[t + 1]:
                        fine = True
                        break
                if fine:
                    ok.add(p)
            back[t] = ok
        return back

    feasible = [column_feasible_sets(j) for j in range(g)] if unital is not None else None

    assign: dict[tuple[int, int], int] = {}
    results: set = set()
    nodes = 0

    def column_state(j):
        """Partial constrained sum and count for column j under unit counts."""
        total = 0
        count = 0
        s = 0
        for i in range(g):
            if unit_counts[i] == 0:
                continue
            if (i, j) in assign:
                for _ in range(unit_counts[i]):
                    s = m.table[s][assign[(i, j)]]
                    count += 1
            else:
                return s, count, False
        return s, count, True

    def extend_and_validate():
        mu_val: dict[tuple[int, int], int] = {}
        for a in m.elements():
            ea = expr[a]
            for b in m.elements():
                total = 0
                for ga in ea:
                    ia = gens.index(ga)
                    for gb in expr[b]:
                        jb = gens.index(gb)
                        total = m.table[total][assign[(ia, jb)]]
                mu_val[(a, b)] = total
        table = tuple(tuple(mu_val[(a, b)] for b in m.elements()) for a in m.elements())
        for a in m.elements():
            for b in m.elements():
                for c in m.elements():
                    if table[m.add(a, b)][c] != m.add(table[a][c], table[b][c]):
                        return
                    if table[a][m.add(b, c)] != m.add(table[a][b], table[a][c]):
                        return
        if unital is not None:
            for a in m.elements():
                if table[unital][a] != a or table[a][unital] != a:
                    return
        results.add(table)

    def dfs(idx: int):
        nonlocal nodes
        if idx == len(pairs):
            extend_and_validate()
            return
        i, j = pairs[idx]
        for v in range(m.n):
            nodes += 1
            if nodes > node_budget:
                raise ResourceBudgetError(
                    f"biadditive enumeration exceeded {node_budget} nodes")
            assign[(i, j)] = v
            ok = True
            if unital is not None and unit_counts[i] > 0:
                s, count, complete = column_state(j)
                back = feasible[j]
                if s not in back[count]:
                    ok = False
                elif complete and s != gens[j]:
                    ok = False
            if ok:
                dfs(idx + 1)
            del assign[(i, j)]

    dfs(0)
    ops = [BiadditiveOp(m, table=t) for t in sorted(results)]
    return ops


# ---------------------------------------------------------------------------
# carrier factories


def truncated_free_monoid(coords: int, cap: int = 2) -> FiniteMonoid:
    """Product of ``coords`` copies of {0, 1, .., cap} with saturating sum."""
    if coords < 1:
        raise InputError("need at least one coordinate")
    tuples = list(itertools.product(range(cap + 1), repeat=coords))
    index = {t: i for i, t in enumerate(tuples)}
    table = [[index[tuple(min(cap, x + y) for x, y in zip(s, t))] for t in tuples]
             for s in tuples]
    m = FiniteMonoid(table)
    m._cache["tuples"] = tuples
    m._cache["tuple_index"] = index
    return m


def saturating_product_op(m: FiniteMonoid) -> BiadditiveOp:
    """Coordinatewise saturating multiplication on a truncated free monoid."""
    tuples = m._cache["tuples"]
    index = m._cache["tuple_index"]
    cap = max(max(t) for t in tuples)
    table = [[index[tuple(min(cap, x * y) for x, y in zip(s, t))] for t in tuples]
             for s in tuples]
    return BiadditiveOp(m, table=table)


def cyclic_group_monoid(k: int) -> FiniteMonoid:
    if k < 1:
        raise InputError("cyclic order must be positive")
    return FiniteMonoid([[(i + j) % k for j in range(k)] for i in range(k)])


def cyclic_product_op(k: int) -> BiadditiveOp:
    m = cyclic_group_monoid(k)
    return BiadditiveOp(m, table=[[(i * j) % k for j in range(k)] for i in range(k)])


def free_monoid(coords: int) -> LatticeMonoid:
    """The free commutative monoid N^coords as a lattice monoid."""
    gens = [tuple(1 if j == i else 0 for j in range(coords)) for i in range(coords)]
    return LatticeMonoid(coords, gens)


def diagonal_tensor(dim: int, weights: Sequence[int]):
    if len(weights) != dim:
        raise InputError("one weight per coordinate required")
    return tuple(tuple(tuple(int(weights[i]) if (i == j and k == i) else 0
                             for k in range(dim))
                       for j in range(dim))
                 for i in range(dim))


def elementwise_product_op(m: LatticeMonoid) -> BiadditiveOp:
    return BiadditiveOp(m, tensor=diagonal_tensor(m.dim, [1] * m.dim))


def matrix_monoid_2x2() -> LatticeMonoid:
    """Entrywise-nonnegative 2x2 integer matrices, flattened row major."""
    gens = [tuple(1 if j == i else 0 for j in range(4)) for i in range(4)]
    return LatticeMonoid(4, gens)


def matrix_product_tensor():
    """Tensor of the 2x2 matrix product in row-major coordinates."""
    def unit(i, j):
        return i * 2 + j

    t = [[[0] * 4 for _ in range(4)] for _ in range(4)]
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    # e_ab . e_cd = delta_bc e_ad
                    if b == c:
                        t[unit(a, b)][unit(c, d)][unit(a, d)] = 1
    return tuple(tuple(tuple(row) for row in slab) for slab in t)


def matrix_product_op(m: Optional[LatticeMonoid] = None) -> BiadditiveOp:
    if m is None:
        m = matrix_monoid_2x2()
    return BiadditiveOp(m, tensor=matrix_product_tensor())


def half_open_half_plane() -> OpenConeMonoid:
    """Points with positive first coordinate, plus the origin, in Q^2."""
    cone = RationalCone.from_rays([(1, 0), (0, 1), (0, -1)], 2)
    return OpenConeMonoid(cone, [(1, 0)])


def half_plane_product_tensor():
    """mu((x, y), (x', y')) = (x x', x y') as an integer tensor."""
    t = [[[0] * 2 for _ in range(2)] for _ in range(2)]
    t[0][0][0] = 1  # x x' feeds the first coordinate
    t[0][1][1] = 1  # x y' feeds the second coordinate
    return tuple(tuple(tuple(row) for row in slab) for slab in t)
