"""Finite-dimensional algebras given by structure constants.

An algebra is a dim x dim x dim array of exact scalars c[i][j][k] (the
coefficient of basis vector k in b_i * b_j) over Q or Q(sqrt 3).  Elements are
coordinate vectors over the scalar field, or over a multivariate polynomial
ring for symbolic generic elements.  The module provides multiplication, the
left/right multiplication operators, exact unit detection, evaluation of free
polynomials, identity checking (symbolic and multilinear backends), subalgebra
generation A(x), symbolic degree, and sampled division checks.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import engine
from .exactmath import (MultiPoly, QuadExt, Scalar, scalar_is_zero,
                        scalar_rank, solve_affine, det, poly_rank)
from .freealg import FreePoly, FreeTerm, UNIT

FIELD_Q = "Q"
FIELD_QSQRT3 = "Q(sqrt 3)"


def _coord_is_zero(x) -> bool:
    if isinstance(x, MultiPoly):
        return x.is_zero()
    return scalar_is_zero(x)


class StructureAlgebra:
    """Immutable finite-dimensional algebra over Q or Q(sqrt 3)."""

    def __init__(self, name: str, dim: int, field: str, constants,
                 basis_names: Optional[Sequence[str]] = None):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        if field not in (FIELD_Q, FIELD_QSQRT3):
            raise ValueError(f"unknown field tag {field!r}")
        self.name = name
        self.dim = dim
        self.field = field
        rows = []
        for i in range(dim):
            row = []
            for j in range(dim):
                cell = []
                for k in range(dim):
                    c = constants[i][j][k]
                    if isinstance(c, QuadExt):
                        if field != FIELD_QSQRT3:
                            raise ValueError(
                                "quadratic scalar in a rational algebra")
                        cell.append(c)
                    else:
                        cell.append(Fraction(c))
                row.append(tuple(cell))
            rows.append(tuple(row))
        self.constants = tuple(rows)
        self.basis_names = tuple(basis_names) if basis_names else tuple(
            f"e{i}" for i in range(dim))
        if len(self.basis_names) != dim:
            raise ValueError("basis name count mismatch")
        # sparse products: for each (i, j), the nonzero (k, c) pairs
        self._sparse = tuple(
            tuple(
                tuple((k, c) for k, c in enumerate(self.constants[i][j])
                      if not scalar_is_zero(c))
                for j in range(dim))
            for i in range(dim))
        self._tensor: Optional[engine.ScaledTensor] = None
        self._ml: Optional[engine.MultilinearEngine] = None
        self._units: Optional[UnitReport] = None

    # -- helpers ----------------------------------------------------------

    def zero(self) -> "Element":
        return Element(tuple(Fraction(0) for _ in range(self.dim)))

    def basis_element(self, i: int) -> "Element":
        coords = [Fraction(0)] * self.dim
        coords[i] = Fraction(1)
        return Element(tuple(coords))

    def element(self, coords) -> "Element":
        coords = tuple(coords)
        if len(coords) != self.dim:
            raise ValueError("coordinate length mismatch")
        return Element(coords)

    def generic_element(self, nvars: Optional[int] = None,
                        offset: int = 0) -> "Element":
        """Element with independent polynomial indeterminate coordinates."""
        nv = nvars if nvars is not None else self.dim
        return Element(tuple(MultiPoly.variable(nv, offset + i)
                             for i in range(self.dim)))

    def tensor(self) -> engine.ScaledTensor:
        if self._tensor is None:
            self._tensor = engine.ScaledTensor(self.constants)
        return self._tensor

    def ml_engine(self) -> engine.MultilinearEngine:
        if self._ml is None:
            self._ml = engine.MultilinearEngine(self.tensor())
        return self._ml

    def __repr__(self):
        return f"StructureAlgebra({self.name!r}, dim={self.dim}, field={self.field!r})"


@dataclass(frozen=True)
class Element:
    """Coordinate vector; entries are scalars or MultiPoly (generic)."""

    coords: tuple

    def is_zero(self) -> bool:
        return all(_coord_is_zero(c) for c in self.coords)

    def is_concrete(self) -> bool:
        return not any(isinstance(c, MultiPoly) for c in self.coords)

    def __add__(self, other: "Element") -> "Element":
        return Element(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Element") -> "Element":
        return Element(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Element":
        return Element(tuple(-a for a in self.coords))

    def scale(self, c) -> "Element":
        return Element(tuple(c * a for a in self.coords))


@dataclass(frozen=True)
class AffineSet:
    """Affine solution set: particular + span(homogeneous)."""

    particular: tuple
    homogeneous: tuple

    @property
    def unique(self) -> bool:
        return not self.homogeneous


@dataclass(frozen=True)
class UnitReport:
    left: Optional[AffineSet]
    right: Optional[AffineSet]
    two_sided: Optional[Element]

    @property
    def has_left(self) -> bool:
        return self.left is not None

    @property
    def has_right(self) -> bool:
        return self.right is not None

    @property
    def has_unit(self) -> bool:
        return self.two_sided is not None


@dataclass(frozen=True)
class HoldsResult:
    holds: bool
    backend: str
    witness: Optional[dict] = None


@dataclass(frozen=True)
class DivisionReport:
    all_invertible: bool
    trials: int
    seed: int
    failing_witness: Optional[Element] = None


@dataclass(frozen=True)
class SubalgebraResult:
    basis: tuple
    dim: int


def multiply(A: StructureAlgebra, u: Element, v: Element) -> Element:
    """Bilinear product (u*v)_k = sum u_i v_j c[i][j][k], exact."""
    if len(u.coords) != A.dim or len(v.coords) != A.dim:
        raise ValueError("dimension mismatch")
    out = [Fraction(0)] * A.dim
    sparse = A._sparse
    for i, ui in enumerate(u.coords):
        if _coord_is_zero(ui):
            continue
        row = sparse[i]
        for j, vj in enumerate(v.coords):
            if _coord_is_zero(vj):
                continue
            p = ui * vj
            for k, c in row[j]:
                out[k] = out[k] + p * c
    return Element(tuple(out))


def mult_operator(A: StructureAlgebra, x: Element, side: str):
    """Matrix of L_x (columns x*b_j) or R_x (columns b_j*x)."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    cols = []
    for j in range(A.dim):
        bj = A.basis_element(j)
        prod = multiply(A, x, bj) if side == "left" else multiply(A, bj, x)
        cols.append(prod.coords)
    return [[cols[j][k] for j in range(A.dim)] for k in range(A.dim)]


def find_units(A: StructureAlgebra) -> UnitReport:
    """Exact left/right/two-sided unit solution sets."""
    if A._units is not None:
        return A._units
    n = A.dim

    def system(left: bool):
        rows, rhs = [], []
        for j in range(n):
            for k in range(n):
                if left:
                    rows.append([A.constants[i][j][k] for i in range(n)])
                else:
                    rows.append([A.constants[j][i][k] for i in range(n)])
                rhs.append(Fraction(1) if j == k else Fraction(0))
        return rows, rhs

    lrows, lrhs = system(True)
    rrows, rrhs = system(False)
    lsol = solve_affine(lrows, lrhs)
    rsol = solve_affine(rrows, rrhs)

    def verify(e_coords, left: bool):
        e = Element(tuple(e_coords))
        for j in range(n):
            bj = A.basis_element(j)
            p = multiply(A, e, bj) if left else multiply(A, bj, e)
            if p != bj:
                raise AssertionError("unit re-verification failed")

    left = None
    if lsol is not None:
        verify(lsol[0], True)
        left = AffineSet(tuple(lsol[0]), tuple(tuple(v) for v in lsol[1]))
    right = None
    if rsol is not None:
        verify(rsol[0], False)
        right = AffineSet(tuple(rsol[0]), tuple(tuple(v) for v in rsol[1]))
    two = None
    if left is not None and right is not None:
        tsol = solve_affine(lrows + rrows, lrhs + rrhs)
        if tsol is not None:
            verify(tsol[0], True)
            verify(tsol[0], False)
            two = Element(tuple(tsol[0]))
    report = UnitReport(left, right, two)
    A._units = report
    return report


def eval_free_poly(A: StructureAlgebra, poly: FreePoly,
                   assignment: Dict[str, Element]) -> Element:
    """Homomorphic evaluation of a free polynomial at algebra elements."""
    missing = poly.variables() - set(assignment)
    if missing:
        raise ValueError(f"assignment misses variables {sorted(missing)}")
    unit_elt = None
    if poly.contains_unit():
        units = find_units(A)
        if units.two_sided is None:
            raise ValueError("unit leaf requires a two-sided unit")
        unit_elt = units.two_sided
    cache: Dict[FreeTerm, Element] = {}

    def walk(t: FreeTerm) -> Element:
        if isinstance(t, str):
            if t == UNIT:
                return unit_elt
            return assignment[t]
        got = cache.get(t)
        if got is None:
            got = multiply(A, walk(t[0]), walk(t[1]))
            cache[t] = got
        return got

    out = A.zero()
    for t, c in poly.terms.items():
        out = out + walk(t).scale(c)
    return out


# ---------------------------------------------------------------------------
# Identity checking
# ---------------------------------------------------------------------------


def _witness_candidates(A: StructureAlgebra, limit: int = 400):
    """Deterministic stream of small concrete elements for witness search."""
    n = A.dim
    for i in range(n):
        yield A.basis_element(i)
    for i in range(n):
        for j in range(i + 1, n):
            yield A.basis_element(i) + A.basis_element(j)
            yield A.basis_element(i) - A.basis_element(j)
    rng = random.Random(12345)
    for _ in range(limit):
        yield A.element([Fraction(rng.randint(-3, 3)) for _ in range(n)])


def _find_witness(A: StructureAlgebra, poly: FreePoly):
    """Search for a concrete assignment where poly evaluates nonzero."""
    vars_ = sorted(poly.variables())
    cands = list(itertools.islice(_witness_candidates(A), 0, 80))
    for combo in itertools.product(cands, repeat=len(vars_)):
        assignment = dict(zip(vars_, combo))
        val = eval_free_poly(A, poly, assignment)
        if not val.is_zero():
            return assignment
    return None


def _symbolic_groups(A: StructureAlgebra, vars_: Sequence[str]):
    n = A.dim
    nvars = n * len(vars_)
    bits = 4
    if nvars * bits > 64:
        return None
    return {v: engine.SymVec.generic(n, nvars, bits, gi * n)
            for gi, v in enumerate(vars_)}


def _symbolic_zero_multipoly(A: StructureAlgebra, poly: FreePoly,
                             vars_: Sequence[str]) -> bool:
    """Slow exact fallback: evaluate at MultiPoly generic elements."""
    n = A.dim
    nv = n * len(vars_)
    assignment = {v: A.generic_element(nvars=nv, offset=gi * n)
                  for gi, v in enumerate(vars_)}
    val = eval_free_poly(A, poly, assignment)
    return val.is_zero()


def identity_holds(A: StructureAlgebra, poly: FreePoly,
                   backend: str = "symbolic") -> HoldsResult:
    """Does the identity poly = 0 hold for all elements of A?

    poly must be homogeneous in each of its variables (true for all the
    linearization components and one-variable power identities used here).
    The symbolic backend evaluates at generic elements with polynomial
    coordinates; the multilinear backend fully polarizes to multilinearity
    (valid in characteristic zero) and evaluates on all basis tuples.  Both
    report a concrete witness when the identity fails.
    """
    if poly.is_zero():
        return HoldsResult(True, backend)
    if poly.contains_unit():
        raise ValueError("identity polynomials must be unit-free")
    vars_ = sorted(poly.variables())
    if backend == "symbolic":
        groups = _symbolic_groups(A, vars_)
        if groups is None:
            zero = _symbolic_zero_multipoly(A, poly, vars_)
        else:
            zero = engine.poly_vanishes_symbolically(poly, A.tensor(), groups)
        if zero:
            return HoldsResult(True, backend)
        witness = _find_witness(A, poly)
        return HoldsResult(False, backend, witness)
    if backend == "multilinear":
        ok, idx = A.ml_engine().check(poly)
        if ok:
            return HoldsResult(True, backend)
        xs, ys = idx
        witness = {"x_tuple": tuple(A.basis_element(i) for i in xs)}
        if ys:
            witness["y_tuple"] = tuple(A.basis_element(j) for j in ys)
        return HoldsResult(False, backend, witness)
    raise ValueError(f"unknown backend {backend!r}")


# ---------------------------------------------------------------------------
# Subalgebra generation, degree
# ---------------------------------------------------------------------------


class _RREF:
    """Incremental reduced row echelon form for independence testing."""

    def __init__(self):
        self.rows: List[List[Scalar]] = []  # each normalized, distinct leads
        self.leads: List[int] = []

    def try_add(self, coords) -> bool:
        row = list(coords)
        for r, lead in zip(self.rows, self.leads):
            if not scalar_is_zero(row[lead]):
                f = row[lead]
                row = [a - f * b for a, b in zip(row, r)]
        lead = next((i for i, c in enumerate(row) if not scalar_is_zero(c)),
                    None)
        if lead is None:
            return False
        pv = row[lead]
        row = [c / pv for c in row]
        for r in self.rows:
            if not scalar_is_zero(r[lead]):
                f = r[lead]
                r[:] = [a - f * b for a, b in zip(r, row)]
        self.rows.append(row)
        self.leads.append(lead)
        return True


def _concrete_closure(A: StructureAlgebra, x: Element) -> SubalgebraResult:
    basis: List[Element] = []
    rref = _RREF()

    def try_add(v: Element) -> bool:
        if rref.try_add(v.coords):
            basis.append(v)
            return True
        return False

    if x.is_zero():
        return SubalgebraResult((), 0)
    try_add(x)
    while True:
        grew = False
        current = list(basis)
        for u in current:
            for v in current:
                if len(basis) == A.dim:
                    return SubalgebraResult(tuple(basis), len(basis))
                if try_add(multiply(A, u, v)):
                    grew = True
        if not grew:
            return SubalgebraResult(tuple(basis), len(basis))


def _closure_points(A: StructureAlgebra, count: int = 4) -> List[List[Fraction]]:
    rng = random.Random(9001)
    pts = [[Fraction(1 + i) for i in range(A.dim)]]
    while len(pts) < count:
        p = [Fraction(rng.randint(-4, 4)) for _ in range(A.dim)]
        if any(p):
            pts.append(p)
    return pts


def _specialize(v: Element, point: Sequence[Fraction]) -> Element:
    return Element(tuple(
        c.evaluate(point) if isinstance(c, MultiPoly) else c
        for c in v.coords))


def _sym_member_of_span(cand: Element, basis: Sequence[Element]) -> bool:
    """Membership over the function field: rank comparison by Bareiss."""
    rows = [list(b.coords) for b in basis]
    r0 = poly_rank(rows)
    r1 = poly_rank(rows + [list(cand.coords)])
    return r1 == r0


def _generic_closure(A: StructureAlgebra, x: Element) -> SubalgebraResult:
    """Span-closure at a symbolic element, exact over the function field.

    Independence of a candidate is certified cheaply by exhibiting a rational
    specialization where the rank grows (specialization can only drop rank);
    only candidates that look dependent at every probe point are decided by
    fraction-free elimination over the polynomial ring.
    """
    n = A.dim
    if x.is_zero():
        return SubalgebraResult((), 0)
    points = _closure_points(A)
    basis: List[Element] = [x]
    basis_pts: List[List[Element]] = [[_specialize(x, p) for p in points]]

    def pts_rank(rows_pts: List[List[Element]]) -> int:
        best = 0
        for pi in range(len(points)):
            mat = [list(r[pi].coords) for r in rows_pts]
            best = max(best, scalar_rank(mat))
        return best

    processed = set()
    unresolved: List[Tuple[int, int]] = []
    while True:
        grew = False
        k = len(basis)
        for i in range(k):
            for j in range(k):
                if (i, j) in processed:
                    continue
                processed.add((i, j))
                cand_pts = [multiply(A, basis_pts[i][pi], basis_pts[j][pi])
                            for pi in range(len(points))]
                indep = False
                for pi in range(len(points)):
                    mat = [list(r[pi].coords) for r in basis_pts]
                    mat.append(list(cand_pts[pi].coords))
                    if scalar_rank(mat) > len(basis):
                        indep = True
                        break
                if indep:
                    basis.append(multiply(A, basis[i], basis[j]))
                    basis_pts.append(cand_pts)
                    grew = True
                    if len(basis) == n:
                        return SubalgebraResult(tuple(basis), n)
                else:
                    unresolved.append((i, j))
        if grew:
            continue
        # decide the deferred candidates exactly; membership once certified
        # stays valid as the span only ever grows
        added = False
        while unresolved:
            i, j = unresolved.pop(0)
            cand = multiply(A, basis[i], basis[j])
            if not _sym_member_of_span(cand, basis):
                basis.append(cand)
                basis_pts.append([
                    multiply(A, basis_pts[i][pi], basis_pts[j][pi])
                    for pi in range(len(points))])
                added = True
                if len(basis) == n:
                    return SubalgebraResult(tuple(basis), n)
                break
        if not added:
            return SubalgebraResult(tuple(basis), len(basis))


def subalgebra_generated(A: StructureAlgebra, x: Element) -> SubalgebraResult:
    """Basis and dimension of the subalgebra A(x) generated by x."""
    if x.is_concrete():
        return _concrete_closure(A, x)
    return _generic_closure(A, x)


def degree(A: StructureAlgebra) -> int:
    """max over x of dim A(x): the dimension at a fully generic element."""
    return subalgebra_generated(A, A.generic_element()).dim


def degree_sampled(A: StructureAlgebra, trials: int = 20,
                   seed: int = 0) -> int:
    """Sampling cross-check: max dim A(x) over random concrete elements."""
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        x = A.element([Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                       for _ in range(A.dim)])
        if x.is_zero():
            continue
        best = max(best, subalgebra_generated(A, x).dim)
        if best == A.dim:
            break
    return best


def division_sampled(A: StructureAlgebra, trials: int = 1000,
                     seed: int = 0) -> DivisionReport:
    """Check det L_x != 0 and det R_x != 0 on seeded random nonzero elements.

    This is a falsifier, not a certificate: passing all trials is evidence,
    not proof, that A has no zero divisors.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    for _ in range(trials):
        coords = [Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                  for _ in range(A.dim)]
        if not any(coords):
            coords[rng.randrange(A.dim)] = Fraction(1)
        x = A.element(coords)
        for side in ("left", "right"):
            m = mult_operator(A, x, side)
            if scalar_is_zero(det(m)):
                return DivisionReport(False, trials, seed, x)
    return DivisionReport(True, trials, seed)
