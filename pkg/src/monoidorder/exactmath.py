"""Exact rational and integer linear algebra.

Everything downstream (orders on monoids, cone reductions, functional
enumeration) reduces to a handful of primitives implemented here:

* vector/matrix arithmetic over ``fractions.Fraction`` and ``int``,
* the double description method for converting between generator and
  inequality representations of rational polyhedral cones,
* exact LP feasibility (phase-one simplex with Bland's rule),
* Smith and Hermite normal forms of integer matrices,
* exhaustive bounded search for nonnegative integer combinations.

No floating point is used anywhere.  ``fractions.Fraction`` already
provides canonical reduced rationals with positive denominators, so no
wrapper scalar type is introduced.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence


class InputError(ValueError):
    """Malformed input: dimension mismatch, non-integer entry, bad element."""


class ResourceBudgetError(RuntimeError):
    """An explicitly budgeted search exceeded its configured budget."""


class InternalCheckError(RuntimeError):
    """A redundant internal cross-check failed; indicates a genuine bug."""


# ---------------------------------------------------------------------------
# vector helpers


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(c, a):
    return tuple(c * x for x in a)


def vdot(a, b):
    if len(a) != len(b):
        raise InputError(f"dot product of vectors of lengths {len(a)} and {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def is_zero_vector(a) -> bool:
    return all(x == 0 for x in a)


def as_int_vector(a) -> tuple[int, ...]:
    """Clear denominators and return a primitive integer vector.

    The result spans the same ray as the input.  Raises on the zero vector
    only when asked to via callers; zero maps to zero.
    """
    fracs = [Fraction(x) for x in a]
    if all(f == 0 for f in fracs):
        return tuple(0 for _ in fracs)
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


def primitive(a: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (direction kept)."""
    g = 0
    for x in a:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(0 for _ in a)
    return tuple(x // g for x in a)


def sign_canonical(a: Sequence[int]) -> tuple[int, ...]:
    """Flip sign so the first nonzero entry is positive (for lines only)."""
    for x in a:
        if x != 0:
            return tuple(a) if x > 0 else tuple(-y for y in a)
    return tuple(a)


# ---------------------------------------------------------------------------
# rational Gaussian elimination


def rational_rank(rows: Sequence[Sequence]) -> int:
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def rational_solve(rows: Sequence[Sequence], rhs: Sequence) -> Optional[list[Fraction]]:
    """One exact solution of ``rows^T . x = rhs`` treating rows as columns.

    ``rows`` is a list of vectors; we solve for coefficients ``x`` with
    ``sum(x[i] * rows[i]) == rhs``.  Returns None when inconsistent.
    """
    if not rows:
        return [] if all(Fraction(v) == 0 for v in rhs) else None
    dim = len(rows[0])
    aug = [[Fraction(rows[j][i]) for j in range(len(rows))] + [Fraction(rhs[i])]
           for i in range(dim)]
    n = len(rows)
    pivots: list[tuple[int, int]] = []
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, dim) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = 1 / aug[rank][col]
        aug[rank] = [x * inv for x in aug[rank]]
        for r in range(dim):
            if r != rank and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[rank])]
        pivots.append((rank, col))
        rank += 1
    for r in range(rank, dim):
        if aug[r][n] != 0:
            return None
    sol = [Fraction(0)] * n
    for r, col in pivots:
        sol[col] = aug[r][n]
    return sol


def rational_nullspace(rows: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : row . x == 0 for every row}``."""
    if not rows:
        raise InputError("nullspace of an empty constraint list needs a dimension")
    dim = len(rows[0])
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(dim):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    basis = []
    free = [c for c in range(dim) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * dim
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -mat[r][fc]
        basis.append(tuple(vec))
    return basis


# ---------------------------------------------------------------------------
# integer determinant (Bareiss, fraction free)


def int_det(mat: Sequence[Sequence[int]]) -> int:
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise InputError("determinant of a non-square matrix")
    a = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


# ---------------------------------------------------------------------------
# phase-one simplex (exact, Bland's rule)


def _phase_one(columns: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    """Feasibility of ``A q = b, q >= 0`` with A given column-wise.

    Returns a solution vector q or None.  Bland's rule prevents cycling; all
    arithmetic is exact so there is no tolerance anywhere.
    """
    m = len(rhs)
    n = len(columns)
    # tableau rows: [A | I | b], artificial basis
    rows = []
    for i in range(m):
        row = [columns[j][i] for j in range(n)]
        b = rhs[i]
        if b < 0:
            row = [-x for x in row]
            b = -b
        row += [Fraction(0)] * m
        row[n + i] = Fraction(1)
        row.append(b)
        rows.append(row)
    basis = [n + i for i in range(m)]
    # objective: minimize sum of artificials; z-row holds reduced costs
    # (sum of rows minus the unit cost of each artificial, so that basic
    # artificial columns start at reduced cost zero)
    z = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n + m + 1):
            z[j] += rows[i][j]
    for i in range(m):
        z[n + i] -= 1
    while True:
        enter = next((j for j in range(n + m) if j not in basis and z[j] > 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if rows[i][enter] > 0:
                ratio = rows[i][-1] / rows[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise InternalCheckError("phase-one objective unbounded")
        _, leave = best
        piv = rows[leave][enter]
        rows[leave] = [x / piv for x in rows[leave]]
        for i in range(m):
            if i != leave and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[leave])]
        if z[enter] != 0:
            f = z[enter]
            z = [x - f * y for x, y in zip(z, rows[leave])]
        basis[leave] = enter
    if z[-1] != 0:
        return None
    sol = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            sol[var] = rows[i][-1]
    return sol


def solve_nonneg_rational(generators: Sequence[Sequence], target: Sequence) -> Optional[list[Fraction]]:
    """Exact coefficients q >= 0 with ``sum(q[i] * generators[i]) == target``.

    Returns None when no nonnegative rational combination exists.  The
    returned certificate always re-validates by direct substitution.
    """
    if not generators:
        return [] if all(Fraction(x) == 0 for x in target) else None
    dim = len(generators[0])
    for g in generators:
        if len(g) != dim:
            raise InputError("generator dimension mismatch")
    if len(target) != dim:
        raise InputError("target dimension mismatch")
    cols = [[Fraction(g[i]) for i in range(dim)] for g in generators]
    rhs = [Fraction(x) for x in target]
    sol = _phase_one(cols, rhs)
    if sol is None:
        return None
    check = [sum(sol[j] * cols[j][i] for j in range(len(cols))) for i in range(dim)]
    if check != rhs:
        raise InternalCheckError("simplex certificate failed re-substitution")
    return sol


def lp_feasible(n_vars: int,
                eqs: Sequence[tuple[Sequence, object]] = (),
                ineqs: Sequence[tuple[Sequence, object]] = ()) -> Optional[list[Fraction]]:
    """Feasibility of ``coeffs.x == rhs`` (eqs) and ``coeffs.x >= rhs`` (ineqs).

    Variables are free; internally split into positive and negative parts
    plus one surplus variable per inequality.
    """
    rows = []
    rhs = []
    for coeffs, b in eqs:
        rows.append((list(coeffs), Fraction(b), None))
    for k, (coeffs, b) in enumerate(ineqs):
        rows.append((list(coeffs), Fraction(b), k))
    n_slack = len(ineqs)
    total = 2 * n_vars + n_slack
    cols = [[Fraction(0)] * len(rows) for _ in range(total)]
    target = []
    for i, (coeffs, b, slack) in enumerate(rows):
        if len(coeffs) != n_vars:
            raise InputError("constraint arity mismatch")
        for j, c in enumerate(coeffs):
            f = Fraction(c)
            cols[j][i] = f
            cols[n_vars + j][i] = -f
        if slack is not None:
            cols[2 * n_vars + slack][i] = Fraction(-1)
        target.append(b)
    sol = _phase_one(cols, target)
    if sol is None:
        return None
    return [sol[j] - sol[n_vars + j] for j in range(n_vars)]


# ---------------------------------------------------------------------------
# double description


def _dd_state(dim: int):
    lineality = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    rays: list[tuple[tuple[int, ...], frozenset]] = []
    return lineality, rays


def _dd_insert(normal, idx, lineality, rays):
    """Insert one inequality ``normal . x >= 0`` into the (L, R) pair."""
    dots = [vdot(normal, l) for l in lineality]
    pivot = next((i for i in range(len(lineality)) if dots[i] != 0), None)
    if pivot is not None:
        l0 = lineality[pivot]
        d0 = dots[pivot]
        if d0 < 0:
            l0 = vneg(l0)
            d0 = -d0
        new_lin = []
        for i, l in enumerate(lineality):
            if i == pivot:
                continue
            new_lin.append(primitive(vsub(vscale(d0, l), vscale(dots[i], l0))))
        new_rays = [(primitive(vsub(vscale(d0, r), vscale(vdot(normal, r), l0))),
                     zs | {idx}) for r, zs in rays]
        new_rays.append((primitive(l0), frozenset(range(idx))))
        return new_lin, new_rays
    pos, zero, neg = [], [], []
    for r, zs in rays:
        d = vdot(normal, r)
        if d > 0:
            pos.append((r, zs, d))
        elif d < 0:
            neg.append((r, zs, d))
        else:
            zero.append((r, zs | {idx}))
    if not neg:
        return lineality, [(r, zs) for r, zs, _ in pos] + zero
    result = [(r, zs) for r, zs, _ in pos] + zero
    for rp, zp, dp in pos:
        for rn, zn, dn in neg:
            common = zp & zn
            adjacent = True
            for r2, zs2 in rays:
                if r2 is rp or r2 is rn:
                    continue
                if common <= zs2:
                    adjacent = False
                    break
            if not adjacent:
                continue
            combo = primitive(vadd(vscale(dp, rn), vscale(-dn, rp)))
            result.append((combo, common | {idx}))
    return lineality, result


def cone_from_inequalities(normals: Sequence[Sequence[int]], dim: int):
    """Minimal generators of ``{x : n . x >= 0 for all n}``.

    Returns ``(lineality_basis, extreme_rays)``; rays are primitive integer
    vectors reduced modulo the lineality space and sorted, the lineality
    basis is in Hermite normal form.
    """
    cleaned = sorted({primitive(tuple(int(x) for x in n)) for n in normals
                      if not is_zero_vector(n)})
    for n in cleaned:
        if len(n) != dim:
            raise InputError("inequality normal has wrong dimension")
    lineality, rays = _dd_state(dim)
    for idx, n in enumerate(cleaned):
        lineality, rays = _dd_insert(n, idx, lineality, rays)
    lin_basis = hermite_normal_form([list(l) for l in lineality])
    ray_list = sorted({_reduce_mod_lineality(r, lin_basis) for r, _ in rays})
    return [tuple(row) for row in lin_basis], ray_list


def _reduce_mod_lineality(ray, lin_basis) -> tuple[int, ...]:
    """Canonical representative of a ray modulo the lineality space."""
    if not lin_basis:
        return primitive(ray)
    vec = [Fraction(x) for x in ray]
    for row in lin_basis:
        piv = next(j for j, x in enumerate(row) if x != 0)
        if vec[piv] != 0:
            f = vec[piv] / row[piv]
            vec = [v - f * Fraction(r) for v, r in zip(vec, row)]
    return as_int_vector(vec)


class RationalCone:
    """A rational polyhedral cone carrying both representations.

    Construct with :meth:`from_rays` or :meth:`from_inequalities`.  The
    complementary representation is computed on demand via the double
    description method, and both are kept in a deterministic canonical
    form: primitive integer vectors, lexicographically sorted (the
    lineality basis additionally in Hermite normal form).
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rays: Optional[list[tuple[int, ...]]] = None
        self._h_rep: Optional[list[tuple[int, ...]]] = None
        self._extreme: Optional[list[tuple[int, ...]]] = None
        self._lineality: Optional[list[tuple[int, ...]]] = None

    @classmethod
    def from_rays(cls, rays: Iterable[Sequence], dim: Optional[int] = None) -> "RationalCone":
        rays = [as_int_vector(r) for r in rays]
        rays = [r for r in rays if not is_zero_vector(r)]
        if dim is None:
            if not rays:
                raise InputError("cannot infer ambient dimension from no rays")
            dim = len(rays[0])
        for r in rays:
            if len(r) != dim:
                raise InputError("ray dimension mismatch")
        cone = cls(dim)
        cone._rays = sorted(set(rays))
        return cone

    @classmethod
    def from_inequalities(cls, normals: Iterable[Sequence], dim: int) -> "RationalCone":
        normals = [as_int_vector(n) for n in normals]
        normals = [n for n in normals if not is_zero_vector(n)]
        for n in normals:
            if len(n) != dim:
                raise InputError("normal dimension mismatch")
        cone = cls(dim)
        cone._h_rep = sorted(set(normals))
        return cone

    # -- representation conversion ---------------------------------------

    @property
    def h_rep(self) -> list[tuple[int, ...]]:
        if self._h_rep is None:
            dual_lin, dual_rays = cone_from_inequalities(self._rays, self.dim)
            h = list(dual_rays)
            for l in dual_lin:
                h.append(tuple(l))
                h.append(vneg(l))
            self._h_rep = sorted(set(primitive(n) for n in h))
        return self._h_rep

    def _compute_generators(self):
        lin, ext = cone_from_inequalities(self.h_rep, self.dim)
        self._lineality = [tuple(l) for l in lin]
        self._extreme = ext
        if self._rays is not None:
            for r in self._rays:
                if not self.member(r):
                    raise InternalCheckError("input ray escaped computed h-representation")
            for r in ext:
                if solve_nonneg_rational(self._rays, r) is None:
                    raise InternalCheckError("extreme ray not spanned by input rays")

    @property
    def extreme_rays(self) -> list[tuple[int, ...]]:
        if self._extreme is None:
            self._compute_generators()
        return self._extreme

    @property
    def lineality_basis(self) -> list[tuple[int, ...]]:
        if self._lineality is None:
            self._compute_generators()
        return self._lineality

    def _generator_set(self) -> list[tuple[int, ...]]:
        gens = list(self.extreme_rays)
        for l in self.lineality_basis:
            gens.append(tuple(l))
            gens.append(vneg(l))
        return gens

    @property
    def v_rep(self) -> list[tuple[int, ...]]:
        if self._rays is not None:
            return list(self._rays)
        return self._generator_set()

    # -- queries ----------------------------------------------------------

    def member(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise InputError("point dimension mismatch")
        return all(vdot(n, x) >= 0 for n in self.h_rep)

    def slacks(self, x: Sequence) -> list:
        return [vdot(n, x) for n in self.h_rep]

    def member_certificate(self, x: Sequence):
        """(inside, data): conic combination over v_rep, or a violated normal."""
        for n in self.h_rep:
            if vdot(n, x) < 0:
                return False, n
        combo = solve_nonneg_rational(self.v_rep, x)
        if combo is None:
            raise InternalCheckError("h-rep accepts a point the v-rep cannot express")
        return True, combo

    def is_pointed(self) -> bool:
        return not self.lineality_basis

    def contains_cone(self, other: "RationalCone") -> bool:
        return all(self.member(g) for g in other.v_rep)

    def same_cone(self, other: "RationalCone") -> bool:
        return self.contains_cone(other) and other.contains_cone(self)

    def dual(self) -> "RationalCone":
        """The cone of functionals nonnegative on this cone."""
        h = self.h_rep
        if not h:
            return RationalCone.from_inequalities(
                [tuple(1 if j == i else 0 for j in range(self.dim)) for i in range(self.dim)]
                + [tuple(-1 if j == i else 0 for j in range(self.dim)) for i in range(self.dim)],
                self.dim)
        return RationalCone.from_rays(h, self.dim)

    def intersection(self, other: "RationalCone") -> "RationalCone":
        if other.dim != self.dim:
            raise InputError("intersecting cones of different dimensions")
        return RationalCone.from_inequalities(self.h_rep + other.h_rep, self.dim)

    def describe(self) -> dict:
        return {
            "dim": self.dim,
            "extreme_rays": [list(r) for r in self.extreme_rays],
            "lineality_basis": [list(l) for l in self.lineality_basis],
            "h_rep": [list(n) for n in self.h_rep],
        }


def dd_convert(rays: Iterable[Sequence], dim: Optional[int] = None) -> RationalCone:
    """Cone of the given rays with h-representation and extreme rays forced.

    Runs the redundant cross-checks (every input ray satisfies the computed
    inequalities, every extreme ray is a nonnegative combination of the
    input) eagerly.
    """
    cone = RationalCone.from_rays(rays, dim)
    cone.h_rep
    cone.extreme_rays
    return cone


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form; zero rows dropped.

    Pivots are positive, entries above each pivot are reduced to lie in
    ``[0, pivot)``, pivot columns strictly increase down the rows.
    """
    mat = [list(map(int, row)) for row in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    for row in mat:
        if len(row) != ncols:
            raise InputError("ragged matrix")
    result: list[list[int]] = []
    work = [row[:] for row in mat if any(row)]
    col = 0
    while work and col < ncols:
        cand = [r for r in work if r[col] != 0]
        if not cand:
            col += 1
            continue
        while True:
            cand.sort(key=lambda r: abs(r[col]))
            piv = cand[0]
            done = True
            for r in cand[1:]:
                q = r[col] // piv[col]
                for j in range(ncols):
                    r[j] -= q * piv[j]
                if r[col] != 0:
                    done = False
            cand = [piv] + [r for r in cand[1:] if r[col] != 0]
            if done or len(cand) == 1:
                break
        if piv[col] < 0:
            for j in range(ncols):
                piv[j] = -piv[j]
        result.append(piv)
        work = [r for r in work if r is not piv and any(r)]
        col += 1
    # reduce entries above pivots
    for i in reversed(range(len(result))):
        piv_col = next(j for j, x in enumerate(result[i]) if x != 0)
        piv = result[i][piv_col]
        for k in range(i):
            q = result[k][piv_col] // piv
            if q:
                for j in range(len(result[k])):
                    result[k][j] -= q * result[i][j]
    return result


class IntegerLattice:
    """The set of integer combinations of a list of integer vectors."""

    def __init__(self, dim: int, vectors: Iterable[Sequence[int]]):
        self.dim = dim
        vecs = []
        for v in vectors:
            v = tuple(int(x) for x in v)
            if len(v) != dim:
                raise InputError("lattice vector dimension mismatch")
            vecs.append(list(v))
        self.basis = [tuple(row) for row in hermite_normal_form(vecs)]
        self._pivots = [next(j for j, x in enumerate(row) if x != 0) for row in self.basis]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, x: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Integer coordinates of x in the HNF basis, or None."""
        if len(x) != self.dim:
            raise InputError("point dimension mismatch")
        residue = [int(v) for v in x]
        coords = []
        for row, piv in zip(self.basis, self._pivots):
            if residue[piv] % row[piv] != 0:
                return None
            c = residue[piv] // row[piv]
            coords.append(c)
            for j in range(self.dim):
                residue[j] -= c * row[j]
        if any(residue):
            return None
        return tuple(coords)

    def contains(self, x: Sequence[int]) -> bool:
        return self.coordinates(x) is not None

    def from_coordinates(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.rank:
            raise InputError("coordinate arity mismatch")
        out = [0] * self.dim
        for c, row in zip(coords, self.basis):
            for j in range(self.dim):
                out[j] += c * row[j]
        return tuple(out)


def smith_normal_form(matrix: Sequence[Sequence[int]]):
    """Smith normal form with transformations: returns (U, D, V).

    ``U`` and ``V`` are unimodular, ``U . A . V == D``, and the diagonal of
    D is a nonnegative divisibility chain d1 | d2 | ... .  Verified before
    returning; a failed check raises :class:`InternalCheckError`.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    if m == 0:
        raise InputError("empty matrix")
    n = len(a[0])
    for row in a:
        if len(row) != n:
            raise InputError("ragged matrix")
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q * row_j
        for k in range(n):
            a[i][k] -= q * a[j][k]
        for k in range(m):
            u[i][k] -= q * u[j][k]

    def col_op(i, j, q):  # col_i -= q * col_j
        for k in range(m):
            a[k][i] -= q * a[k][j]
        for k in range(n):
            v[k][i] -= q * v[k][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for k in range(m):
            a[k][i], a[k][j] = a[k][j], a[k][i]
        for k in range(n):
            v[k][i], v[k][j] = v[k][j], v[k][i]

    t = 0
    while t < min(m, n):
        # find the smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            changed = False
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                    changed = True
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                    changed = True
            if not changed:
                break
        # ensure the pivot divides everything below-right; if not, merge rows
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)  # add offender row to pivot row
            continue
        if a[t][t] < 0:
            for k in range(n):
                a[t][k] = -a[t][k]
            for k in range(m):
                u[t][k] = -u[t][k]
        t += 1

    d = [[a[i][j] for j in range(n)] for i in range(m)]
    # verify
    if abs(int_det(u)) != 1 or abs(int_det(v)) != 1:
        raise InternalCheckError("SNF transform not unimodular")
    prod = [[sum(u[i][k] * int(matrix[k][j]) for k in range(m)) for j in range(n)] for i in range(m)]
    prod = [[sum(prod[i][k] * v[k][j] for k in range(n)) for j in range(n)] for i in range(m)]
    if prod != d:
        raise InternalCheckError("SNF product check failed")
    diag = [d[i][i] for i in range(min(m, n))]
    for i in range(len(diag) - 1):
        if diag[i] == 0 and diag[i + 1] != 0:
            raise InternalCheckError("SNF zero ordering violated")
        if diag[i] != 0 and diag[i + 1] % diag[i] != 0:
            raise InternalCheckError("SNF divisibility chain violated")
    for i in range(m):
        for j in range(n):
            if i != j and d[i][j] != 0:
                raise InternalCheckError("SNF off-diagonal entry")
    return u, d, v


def invariant_factors(matrix: Sequence[Sequence[int]]) -> list[int]:
    _, d, _ = smith_normal_form(matrix)
    return [d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i] not in (0,)]


def integer_kernel(matrix: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Basis of ``{x integer : matrix . x == 0}`` (x a column vector)."""
    m = len(matrix)
    if m == 0:
        raise InputError("kernel of an empty matrix needs a dimension")
    n = len(matrix[0])
    u, d, v = smith_normal_form(matrix)
    rank = sum(1 for i in range(min(m, n)) if d[i][i] != 0)
    basis = []
    for j in range(rank, n):
        basis.append(tuple(v[i][j] for i in range(n)))
    return basis


def integer_solve(rows: Sequence[Sequence[int]],
                  rhs: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Integer coefficients x with ``sum x_i * rows_i == rhs``, or None."""
    a = [list(r) for r in rows]
    m = len(a)
    if m == 0:
        return None if any(rhs) else ()
    n = len(a[0])
    if len(rhs) != n:
        raise InputError("right-hand side dimension mismatch")
    u, d, v = smith_normal_form(a)
    rhsv = [sum(int(rhs[i]) * v[i][j] for i in range(n)) for j in range(n)]
    y = [0] * m
    for j in range(n):
        dj = d[j][j] if j < m else 0
        if dj == 0:
            if rhsv[j] != 0:
                return None
        else:
            if rhsv[j] % dj != 0:
                return None
            y[j] = rhsv[j] // dj
    x = tuple(sum(y[i] * u[i][j] for i in range(m)) for j in range(m))
    check = tuple(sum(x[i] * a[i][j] for i in range(m)) for j in range(n))
    if check != tuple(int(t) for t in rhs):
        raise InternalCheckError("integer solve certificate failed")
    return x


# ---------------------------------------------------------------------------
# bounded nonnegative integer combinations


def default_combination_bound(target: Sequence[int], generators: Sequence[Sequence[int]]) -> int:
    """Crude but safe coefficient-sum envelope for desk-scale instances."""
    weight = max((sum(abs(int(c)) for c in g) for g in generators), default=1)
    return 1 + sum(abs(int(x)) for x in target) * max(weight, 1)


def bounded_nonneg_combination(generators: Sequence[Sequence[int]],
                               target: Sequence[int],
                               bound: Optional[int] = None) -> Optional[tuple[int, ...]]:
    """Search for naturals n with ``sum(n[i] * generators[i]) == target``.

    Exhaustive branch and bound over coefficient vectors with
    ``sum(n) <= bound``; complete within the bound, so a None answer
    certifies absence of any combination with that coefficient budget.
    """
    gens = [tuple(int(c) for c in g) for g in generators]
    tgt = tuple(int(x) for x in target)
    if any(len(g) != len(tgt) for g in gens):
        raise InputError("generator dimension mismatch")
    if bound is None:
        bound = default_combination_bound(tgt, gens)
    dim = len(tgt)

    def prune(rest: int, residue, budget: int) -> bool:
        for j in range(dim):
            r = residue[j]
            if r == 0:
                continue
            signs = [gens[i][j] for i in range(rest, len(gens))]
            if r > 0 and all(s <= 0 for s in signs):
                return True
            if r < 0 and all(s >= 0 for s in signs):
                return True
            step = max((abs(s) for s in signs), default=0)
            if step == 0 or abs(r) > budget * step:
                return True
        return False

    coeffs = [0] * len(gens)

    def dfs(i: int, residue, budget: int):
        if all(x == 0 for x in residue):
            return tuple(coeffs[:i]) + (0,) * (len(gens) - i)
        if i == len(gens) or budget == 0 or prune(i, residue, budget):
            return None
        g = gens[i]
        for c in range(0, budget + 1):
            coeffs[i] = c
            res = tuple(residue[j] - c * g[j] for j in range(dim))
            found = dfs(i + 1, res, budget - c)
            if found is not None:
                return found
        coeffs[i] = 0
        return None

    return dfs(0, tgt, bound)
