"""Predicate suite, statement verifications and hierarchy consistency."""

from fractions import Fraction

import pytest

from nalab.catalog import catalog_algebra
from nalab.identities import (ALL_TRIPLES, HIERARCHY_EDGES, check_pqr,
                              hierarchy_report, predicate, verify_instances,
                              verify_prop1, verify_prop2)

H = catalog_algebra("H")
O = catalog_algebra("O")
SH = catalog_algebra("*H")
DH = catalog_algebra("**H")
P = catalog_algebra("P")


class TestCheckPqr:
    def test_quaternions_all_triples(self):
        for (p, q, r) in ALL_TRIPLES:
            assert check_pqr(H, p, q, r).holds

    def test_star_O_222(self):
        assert check_pqr(catalog_algebra("*O"), 2, 2, 2).holds

    def test_star_H_111_fails_at_i(self):
        res = check_pqr(SH, 1, 1, 1)
        assert not res.holds
        assert res.witness["x"] == SH.basis_element(1)

    def test_backends_agree_on_star_H(self):
        for (p, q, r) in ALL_TRIPLES:
            s = check_pqr(SH, p, q, r, "symbolic").holds
            m = check_pqr(SH, p, q, r, "multilinear").holds
            assert s == m, (p, q, r)

    def test_star_family_squares(self):
        # Left isotopes satisfy exactly the identities with p = 2
        for base in ("C", "H"):
            A = catalog_algebra("*" + base)
            for (p, q, r) in ALL_TRIPLES:
                expected = (p == 2)
                assert check_pqr(A, p, q, r).holds == expected, (base, p, q, r)


class TestPredicates:
    def test_octonions_alternative(self):
        assert predicate(O, "alternative").value

    def test_associative_multilinear_route(self):
        # basis-triple scan agrees with the generic-element proof
        for name in ("C", "H"):
            A = catalog_algebra(name)
            res = predicate(A, "associative", backend="multilinear")
            assert res.value and res.mode == "multilinear-proof"
        res = predicate(O, "associative", backend="multilinear")
        assert not res.value and res.witness is not None

    def test_okubo_not_power_associative_with_witness(self):
        res = predicate(P, "power_associative")
        assert not res.value and res.witness is not None

    def test_quaternions_quadratic(self):
        assert predicate(H, "quadratic").value

    def test_okubo_quadratic_false(self):
        assert not predicate(P, "quadratic").value  # no unit

    def test_star_H_not_quadratic(self):
        assert not predicate(SH, "quadratic").value

    def test_unit_predicates(self):
        assert predicate(H, "has_unit").value
        assert predicate(SH, "has_left_unit").value
        assert not predicate(SH, "has_right_unit").value
        assert not predicate(P, "has_unit").value

    def test_power_commutative_modes(self):
        res = predicate(P, "power_commutative", bound=4)
        assert res.value and res.mode == "bounded(4)"

    def test_star_H_not_power_commutative(self):
        res = predicate(SH, "power_commutative")
        assert not res.value
        assert res.witness is not None

    def test_double_star_C_power_associative_false(self):
        assert not predicate(catalog_algebra("**C"),
                             "power_associative").value

    def test_unknown_property(self):
        with pytest.raises(ValueError):
            predicate(H, "commutative")

    def test_flexible_implies_x_x2_x_instances(self):
        for name in ("**C", "**H", "P"):
            A = catalog_algebra(name)
            assert predicate(A, "flexible").value
            assert predicate(A, "x_x2_x").value


class TestProp1:
    def test_membership(self):
        res = verify_prop1()
        assert res["member"]
        assert res["coefficients"] == [Fraction(-1, 2), Fraction(-1, 2),
                                       Fraction(1, 2)]
        assert res["word_space_dim"] == 5


class TestProp2:
    EXPECTED = {
        (1, 1, 2): Fraction(2), (1, 2, 1): Fraction(2),
        (2, 1, 1): Fraction(2), (1, 2, 2): Fraction(4),
        (2, 1, 2): Fraction(4), (2, 2, 1): Fraction(4),
        (2, 2, 2): Fraction(8),
    }

    def test_constants(self):
        for (p, q, r), c in self.EXPECTED.items():
            res = verify_prop2(p, q, r)
            assert res["constant"] == c
            assert res["m"] == p + q + r - 3

    def test_all_nonzero(self):
        for (p, q, r) in ALL_TRIPLES:
            if (p, q, r) == (1, 1, 1):
                continue
            assert verify_prop2(p, q, r)["constant"] != 0

    def test_excluded_triple(self):
        with pytest.raises(ValueError):
            verify_prop2(1, 1, 1)


class TestInstances:
    def test_quaternions_all_consistent(self):
        checks = verify_instances(H, trials=50)
        assert all(c.consistent for c in checks)
        thm2 = next(c for c in checks
                    if c.statement.startswith("thm2"))
        assert thm2.hypothesis_satisfied and thm2.conclusion_holds

    def test_star_H_thm2_vacuous(self):
        checks = verify_instances(SH, trials=50)
        thm2 = next(c for c in checks if c.statement.startswith("thm2"))
        assert not thm2.hypothesis_satisfied
        assert thm2.consistent

    def test_okubo_thm3_vacuous(self):
        checks = verify_instances(P, trials=50)
        thm3 = next(c for c in checks if c.statement.startswith("thm3"))
        assert not thm3.hypothesis_satisfied  # no left unit
        assert thm3.consistent

    def test_star_H_thm3_applicable(self):
        checks = verify_instances(SH, trials=50)
        thm3 = next(c for c in checks if c.statement.startswith("thm3"))
        assert thm3.hypothesis_satisfied
        assert thm3.consistent

    def test_degree8_open_question_flag(self):
        """Q[t]/(t^8 - 2) is a commutative field extension: unital, TPA,
        degree 8, invertible over Q, so the open-question flag appears.
        (Over the reals it splits, which is exactly why the flag stresses
        that the division evidence is field-relative.)"""
        from fractions import Fraction as F
        from nalab.algebra import FIELD_Q, StructureAlgebra
        n = 8
        consts = [[[F(0)] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i + j < n:
                    consts[i][j][i + j] = F(1)
                else:
                    consts[i][j][i + j - n] = F(2)
        A = StructureAlgebra("Q(2^(1/8))", n, FIELD_Q, consts)
        checks = verify_instances(A, trials=30)
        flags = [c for c in checks if c.statement.startswith("open_question")]
        assert len(flags) == 1 and flags[0].consistent
        # the quadratic conclusion fails while the sampled division evidence
        # passes: the real-division statement degrades to unresolved, never
        # to violated (the algebra splits over the reals)
        thm1 = next(c for c in checks if c.statement.startswith("thm1"))
        assert thm1.verdict == "unresolved"
        assert all(c.consistent for c in checks)

    def test_no_flag_on_catalog(self):
        for name in ("O", "P"):
            checks = verify_instances(catalog_algebra(name), trials=30)
            assert not any(c.statement.startswith("open_question")
                           for c in checks)


class TestHierarchy:
    def test_edge_set(self):
        assert ("power_commutative", "TPA") in HIERARCHY_EDGES
        assert ("TPA", "x_x2_x") in HIERARCHY_EDGES
        assert ("TPA", "x2_x2_x2") in HIERARCHY_EDGES
        assert len(HIERARCHY_EDGES) == 8

    def test_okubo_chain(self):
        rep, verdicts, ok = hierarchy_report(P)
        assert ok
        assert rep.value("flexible") and rep.value("power_commutative")
        assert rep.value("TPA") and rep.value("x_x2_x")
        assert rep.value("x2_x2_x2")
        flex_edge = next(v for v in verdicts
                         if (v.premise, v.conclusion) ==
                         ("flexible", "power_commutative"))
        assert flex_edge.applicable
        assert "bounded" in flex_edge.verdict

    def test_octonions(self):
        rep, verdicts, ok = hierarchy_report(O)
        assert ok
        assert rep.value("alternative")
        assert rep.value("flexible") and rep.value("power_associative")

    def test_double_star_H_no_violation(self):
        rep, verdicts, ok = hierarchy_report(DH)
        assert ok
        assert rep.value("flexible")
        assert not rep.value("power_associative")

    def test_instance_tpa_implies_x_x2_x(self):
        for name in ("R", "C", "H", "O", "**C", "**H", "P"):
            A = catalog_algebra(name)
            if predicate(A, "TPA").value:
                assert predicate(A, "x_x2_x").value, name

    def test_quadratic_implies_all_identities(self):
        for name in ("H", "O"):
            A = catalog_algebra(name)
            assert predicate(A, "quadratic").value
            for (p, q, r) in ALL_TRIPLES:
                assert check_pqr(A, p, q, r).holds

    def test_unital_single_identity_implies_tpa(self):
        # instance form of the unital substitution statement
        for name in ("R", "C", "H", "O"):
            A = catalog_algebra(name)
            if any(check_pqr(A, p, q, r).holds for (p, q, r) in ALL_TRIPLES):
                assert predicate(A, "TPA").value
