"""Structure-constant algebras: products, operators, units, identity checks,
subalgebras, degree and sampled division."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nalab.algebra import (FIELD_Q, Element, StructureAlgebra, degree,
                           degree_sampled, division_sampled, eval_free_poly,
                           find_units, identity_holds, mult_operator,
                           multiply, subalgebra_generated)
from nalab.catalog import catalog_algebra, classical
from nalab.exactmath import poly_rank
from nalab.freealg import FreePoly, associator, pqr_associator

H = classical("H").algebra
C = classical("C").algebra
SH = catalog_algebra("*H")
DH = catalog_algebra("**H")


def zero_algebra(n=2):
    consts = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    return StructureAlgebra("Z", n, FIELD_Q, consts)


fracs = st.fractions(min_value=-3, max_value=3, max_denominator=4)


class TestMultiply:
    def test_quaternion_table(self):
        e, i, j, k = (H.basis_element(t) for t in range(4))
        assert multiply(H, i, j) == k
        assert multiply(H, j, i) == -k
        assert multiply(H, i, i) == -e

    def test_zero_annihilates(self):
        v = H.element([Fraction(1), Fraction(2), Fraction(3), Fraction(4)])
        assert multiply(H, H.zero(), v).is_zero()

    def test_star_H_square(self):
        # x * x = conj(x) x = N(x) e in the left isotope
        i = SH.basis_element(1)
        assert multiply(SH, i, i) == SH.basis_element(0)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            multiply(H, C.basis_element(0), H.basis_element(0))

    @given(a=fracs, u=st.tuples(fracs, fracs, fracs, fracs),
           v=st.tuples(fracs, fracs, fracs, fracs),
           w=st.tuples(fracs, fracs, fracs, fracs))
    @settings(max_examples=40, deadline=None)
    def test_bilinearity(self, a, u, v, w):
        eu, ev, ew = H.element(u), H.element(v), H.element(w)
        left = multiply(H, eu.scale(a) + ev, ew)
        right = multiply(H, eu, ew).scale(a) + multiply(H, ev, ew)
        assert left == right


class TestMultOperator:
    def test_identity_at_unit(self):
        m = mult_operator(C, C.basis_element(0), "left")
        assert m == [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]

    def test_rotation_at_i(self):
        m = mult_operator(C, C.basis_element(1), "left")
        assert m == [[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(0)]]

    def test_zero_algebra(self):
        Z = zero_algebra()
        m = mult_operator(Z, Z.element([Fraction(5), Fraction(7)]), "right")
        assert all(c == 0 for row in m for c in row)

    @given(x=st.tuples(fracs, fracs, fracs, fracs),
           v=st.tuples(fracs, fracs, fracs, fracs))
    @settings(max_examples=30, deadline=None)
    def test_operator_consistency(self, x, v):
        ex, ev = H.element(x), H.element(v)
        m = mult_operator(H, ex, "left")
        applied = tuple(
            sum((m[k][j] * ev.coords[j] for j in range(4)), Fraction(0))
            for k in range(4))
        assert Element(applied) == multiply(H, ex, ev)


class TestFindUnits:
    def test_quaternion_two_sided(self):
        rep = find_units(H)
        assert rep.two_sided == H.basis_element(0)
        assert rep.left.unique and rep.right.unique

    def test_star_H_left_only(self):
        rep = find_units(SH)
        assert rep.has_left and not rep.has_right
        assert rep.two_sided is None
        assert list(rep.left.particular) == [Fraction(1), Fraction(0),
                                             Fraction(0), Fraction(0)]

    def test_double_star_H_none(self):
        rep = find_units(DH)
        assert not rep.has_left and not rep.has_right

    def test_zero_algebra_none(self):
        rep = find_units(zero_algebra())
        assert rep.left is None and rep.right is None


class TestEvalFreePoly:
    def test_star_H_associator(self):
        i = SH.basis_element(1)
        val = eval_free_poly(SH, pqr_associator(1, 1, 1), {"x": i})
        assert val == i.scale(2)

    def test_quaternion_associator_zero(self):
        x = H.element([Fraction(1), Fraction(-2), Fraction(3), Fraction(5)])
        assert eval_free_poly(H, pqr_associator(1, 1, 1), {"x": x}).is_zero()

    def test_star_H_square_first(self):
        i = SH.basis_element(1)
        val = eval_free_poly(SH, pqr_associator(2, 1, 1), {"x": i})
        assert val.is_zero()

    def test_unit_leaf(self):
        got = eval_free_poly(H, FreePoly.unit() * FreePoly.var("x"),
                             {"x": H.basis_element(2)})
        assert got == H.basis_element(2)
        with pytest.raises(ValueError):
            eval_free_poly(SH, FreePoly.unit(), {})


class TestIdentityHolds:
    def test_quaternions_associative(self):
        assert identity_holds(H, pqr_associator(1, 1, 1)).holds

    def test_star_H_fails_with_witness(self):
        res = identity_holds(SH, pqr_associator(1, 1, 1))
        assert not res.holds
        assert res.witness["x"] == SH.basis_element(1)
        # the witness really violates the identity
        val = eval_free_poly(SH, pqr_associator(1, 1, 1), res.witness)
        assert not val.is_zero()

    def test_star_H_squares_hold(self):
        for backend in ("symbolic", "multilinear"):
            assert identity_holds(SH, pqr_associator(2, 2, 2), backend).holds

    def test_multilinear_witness(self):
        res = identity_holds(SH, pqr_associator(1, 1, 1), "multilinear")
        assert not res.holds
        assert "x_tuple" in res.witness

    def test_backend_agreement_two_var(self):
        x, y = FreePoly.var("x"), FreePoly.var("y")
        flex = associator(x, y, x)
        for A in (H, SH, DH):
            s = identity_holds(A, flex, "symbolic").holds
            m = identity_holds(A, flex, "multilinear").holds
            assert s == m

    def test_zero_poly(self):
        assert identity_holds(H, FreePoly.zero()).holds

    def test_unknown_backend(self):
        with pytest.raises(ValueError):
            identity_holds(H, pqr_associator(1, 1, 1), "numeric")


class TestSubalgebra:
    def test_unit_generates_line(self):
        R = classical("R").algebra
        res = subalgebra_generated(R, R.basis_element(0))
        assert res.dim == 1

    def test_quaternion_generic(self):
        res = subalgebra_generated(H, H.generic_element())
        assert res.dim == 2

    def test_zero_algebra(self):
        Z = zero_algebra()
        res = subalgebra_generated(Z, Z.element([Fraction(1), Fraction(1)]))
        assert res.dim == 1

    def test_zero_element(self):
        assert subalgebra_generated(H, H.zero()).dim == 0

    def test_concrete_quaternion(self):
        x = H.element([Fraction(1), Fraction(2), Fraction(0), Fraction(1)])
        res = subalgebra_generated(H, x)
        assert res.dim == 2

    def test_closure_property_generic(self):
        """Products of the returned generic basis lie in its span."""
        res = subalgebra_generated(H, H.generic_element())
        rows = [list(b.coords) for b in res.basis]
        base_rank = poly_rank(rows)
        assert base_rank == res.dim
        for u in res.basis:
            for v in res.basis:
                prod = multiply(H, u, v)
                assert poly_rank(rows + [list(prod.coords)]) == base_rank

    def test_closure_property_concrete(self):
        x = SH.element([Fraction(1), Fraction(1), Fraction(-2), Fraction(3)])
        res = subalgebra_generated(SH, x)
        from nalab.exactmath import span_membership
        gens = [list(b.coords) for b in res.basis]
        for u in res.basis:
            for v in res.basis:
                inside, _ = span_membership(
                    list(multiply(SH, u, v).coords), gens)
                assert inside


class TestDegree:
    def test_classical_degrees(self):
        assert degree(classical("R").algebra) == 1
        assert degree(C) == 2
        assert degree(H) == 2

    def test_star_H(self):
        assert degree(SH) == 2

    def test_degree_bounded_by_dim(self):
        for A in (H, SH, DH):
            assert degree(A) <= A.dim

    def test_sampled_cross_check(self):
        assert degree_sampled(H, trials=10, seed=1) == degree(H)

    def test_full_degree_algebra(self):
        """An associative algebra generated by one element has full degree."""
        # K[t]/(t^3): basis 1, t, t^2
        n = 3
        consts = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i + j < n:
                    consts[i][j][i + j] = Fraction(1)
        A = StructureAlgebra("K[t]/t^3", n, FIELD_Q, consts)
        assert degree(A) == 3

    def test_degree_dominates_samples_on_random_algebras(self):
        import random as _random
        for seed in (2, 5, 8):
            rng = _random.Random(seed)
            n = 4
            consts = [[[Fraction(rng.randint(-2, 2)) for _ in range(n)]
                       for _ in range(n)] for _ in range(n)]
            A = StructureAlgebra(f"rnd{seed}", n, FIELD_Q, consts)
            d = degree(A)
            assert degree_sampled(A, trials=8, seed=seed) <= d <= n


class TestLargeDimFallback:
    def test_two_variable_identity_beyond_packed_keys(self):
        """dim 9 with two variables exceeds 64-bit exponent packing, so the
        symbolic backend falls back to direct MultiPoly evaluation."""
        n = 9
        consts = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            consts[i][i][i] = Fraction(1)  # diagonal, commutative-associative
        A = StructureAlgebra("diag9", n, FIELD_Q, consts)
        from nalab.freealg import associator as fassoc
        x, y = FreePoly.var("x"), FreePoly.var("y")
        assert identity_holds(A, fassoc(x, y, x)).holds
        comm = x * y - y * x
        assert identity_holds(A, comm).holds


class TestNonUniqueUnits:
    def test_left_unit_affine_set(self):
        # b_0 acts as left identity, b_1 annihilates: left units form the
        # affine line (1, t)
        n = 2
        consts = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        consts[0][0][0] = Fraction(1)
        consts[0][1][1] = Fraction(1)
        A = StructureAlgebra("leftline", n, FIELD_Q, consts)
        rep = find_units(A)
        assert rep.has_left and not rep.left.unique
        assert len(rep.left.homogeneous) == 1
        # any point on the line really is a left unit
        part = rep.left.particular
        hom = rep.left.homogeneous[0]
        e = A.element([p + 5 * h for p, h in zip(part, hom)])
        for j in range(n):
            assert multiply(A, e, A.basis_element(j)) == A.basis_element(j)
        assert not rep.has_right


class TestDivision:
    def test_quaternions(self):
        rep = division_sampled(H, trials=100, seed=0)
        assert rep.all_invertible and rep.failing_witness is None

    def test_zero_algebra(self):
        rep = division_sampled(zero_algebra(), trials=1, seed=0)
        assert not rep.all_invertible
        assert rep.failing_witness is not None

    def test_deterministic(self):
        r1 = division_sampled(H, trials=10, seed=5)
        r2 = division_sampled(H, trials=10, seed=5)
        assert r1 == r2

    def test_trials_validation(self):
        with pytest.raises(ValueError):
            division_sampled(H, trials=0)
