from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homnambu.catalog import catalog_build, catalog_list
from homnambu.cochains import cochain_induced_bracket
from homnambu.core import Element, GradedLinearMap, eval_bracket
from homnambu.iterated import iterated_bracket
from homnambu.rotabaxter import (
    RotaBaxterOperator,
    check_inverse_derivation_equiv,
    check_phi_rb_kernel_condition,
    check_rb_binary,
    check_rb_nary,
)


def algebra_of(name, **params):
    return catalog_build(name, **params).algebra


def diag(space, values, parity=0):
    d = space.dim
    rows = [[values[i] if i == j else 0 for j in range(d)] for i in range(d)]
    return GradedLinearMap.from_matrix(space, rows, parity=parity)


def binary_entries():
    return [e for e in catalog_list()]


class TestBinary:
    def test_zero_operator(self):
        for entry in binary_entries():
            alg = entry.build().algebra
            rb = RotaBaxterOperator(GradedLinearMap.zero(alg.space), F(0))
            assert check_rb_binary(rb, alg).passed

    def test_identity_at_weight_minus_one(self):
        for entry in binary_entries():
            alg = entry.build().algebra
            rb = RotaBaxterOperator(GradedLinearMap.identity(alg.space), F(-1))
            assert check_rb_binary(rb, alg).passed

    def test_g5_halving_operator(self):
        g5 = algebra_of("g5_1_1", a=2)
        rb = RotaBaxterOperator(diag(g5.space, [F(1, 2), 1]), F(0))
        assert check_rb_binary(rb, g5).passed

    def test_identity_weight_zero_fails_on_nonzero_bracket(self):
        g3 = algebra_of("g3_1_1", a=2)
        rb = RotaBaxterOperator(GradedLinearMap.identity(g3.space), F(0))
        report = check_rb_binary(rb, g3)
        assert not report.passed

    def test_twist_commutation_required(self):
        osp = algebra_of("osp12", **{"lambda": 2})
        # swaps X and Y, does not commute with the diagonal twist
        rows = [[0, 1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 1, 0, 0],
                [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
        rb = RotaBaxterOperator(GradedLinearMap.from_matrix(osp.space, rows), F(0))
        report = check_rb_binary(rb, osp)
        assert any(c.note == "twist commutation" for c in report.counterexamples)

    def test_odd_operator_rejected(self):
        g3 = algebra_of("g3_1_1", a=2)
        odd = GradedLinearMap(
            g3.space, 1, {"e0": Element({"e1": 1}), "e1": Element({"e0": 1})}
        )
        with pytest.raises(ValueError):
            RotaBaxterOperator(odd, F(0))

    @given(
        st.fractions(
            min_value=F(-6), max_value=F(6), max_denominator=5
        ).filter(lambda q: q != 0)
    )
    @settings(max_examples=30, deadline=None)
    def test_weight_homogeneity(self, mu):
        """If R is Rota-Baxter of weight w then mu*R has weight mu*w."""
        g5 = algebra_of("g5_1_1", a=2)
        scaled_identity = RotaBaxterOperator(
            GradedLinearMap.identity(g5.space).scale(mu), mu * F(-1)
        )
        assert check_rb_binary(scaled_identity, g5).passed
        halving = diag(g5.space, [F(1, 2), 1])
        scaled = RotaBaxterOperator(halving.scale(mu), mu * F(0))
        assert check_rb_binary(scaled, g5).passed


def ternary_L1(a=1, b=3):
    bundle = catalog_build("L1", a=a, b=b)
    return cochain_induced_bracket(bundle.cochains[0], bundle.algebra, 3)


class TestNary:
    def test_zero_operator(self):
        tern = ternary_L1()
        rb = RotaBaxterOperator(GradedLinearMap.zero(tern.space), F(0))
        assert check_rb_nary(rb, tern).passed

    def test_transfer_from_binary(self):
        g5 = algebra_of("g5_1_1", a=2)
        rb = RotaBaxterOperator(diag(g5.space, [F(1, 2), 1]), F(0))
        assert check_rb_binary(rb, g5).passed
        for n in (3, 4):
            assert check_rb_nary(rb, iterated_bracket(g5, n)).passed

    def test_identity_weight_zero_fails_on_nonzero_ternary(self):
        tern = ternary_L1()
        rb = RotaBaxterOperator(GradedLinearMap.identity(tern.space), F(0))
        report = check_rb_nary(rb, tern)
        assert not report.passed

    def test_projection_on_induced_ternary(self):
        bundle = catalog_build("L1", a=1, b=3)
        tern = cochain_induced_bracket(bundle.cochains[0], bundle.algebra, 3)
        rb = RotaBaxterOperator(bundle.operators[0].map, F(0))
        assert check_rb_nary(rb, tern).passed


def seven_term_reference(rb, alg, args):
    """The printed ternary expansion, written out term by term."""
    w = rb.weight
    space = alg.space
    r = [rb.map.apply_basis(a) for a in args]
    x = [space.basis_element(a) for a in args]
    total = (
        eval_bracket(alg, [r[0], r[1], x[2]])
        + eval_bracket(alg, [r[0], x[1], r[2]])
        + eval_bracket(alg, [x[0], r[1], r[2]])
        + eval_bracket(alg, [r[0], x[1], x[2]]).scale(w)
        + eval_bracket(alg, [x[0], r[1], x[2]]).scale(w)
        + eval_bracket(alg, [x[0], x[1], r[2]]).scale(w)
        + eval_bracket(alg, [x[0], x[1], x[2]]).scale(w * w)
    )
    return rb.map.apply(total)


class TestSubsetSumExpansion:
    @pytest.mark.parametrize("weight", [F(0), F(1), F(-1), F(2)])
    def test_matches_seven_terms(self, weight):
        """Subset-sum right side equals the printed 7-term expansion for any
        even operator, Rota-Baxter or not, at each probed weight."""
        from homnambu.rotabaxter import _subset_sum

        tern = ternary_L1(a=2, b=3)
        arbitrary = diag(tern.space, [1, 2, 3])
        rb = RotaBaxterOperator(arbitrary, weight)
        for args in tern.space.tuples(3):
            args_elems = [rb.map.apply_basis(a) for a in args]
            base_elems = [tern.space.basis_element(a) for a in args]
            assert _subset_sum(rb, tern, args_elems, base_elems, 3) == seven_term_reference(
                rb, tern, args
            )

    def test_subset_count_for_arity_four(self):
        g5 = algebra_of("g5_1_1", a=2)
        four = iterated_bracket(g5, 4)
        rb = RotaBaxterOperator(GradedLinearMap.zero(four.space), F(3))
        assert check_rb_nary(rb, four).passed  # exercises all 15 subsets


class TestInverseDerivationEquivalence:
    def test_g5_both_true(self):
        g5 = algebra_of("g5_1_1", a=2)
        report = check_inverse_derivation_equiv(diag(g5.space, [F(1, 2), 1]), g5)
        assert report.rb.passed and report.inverse_derivation.passed
        assert report.agree and report.passed

    def test_identity_on_nonzero_bracket_both_false(self):
        g3 = algebra_of("g3_1_1", a=2)
        report = check_inverse_derivation_equiv(GradedLinearMap.identity(g3.space), g3)
        assert not report.rb.passed
        assert not report.inverse_derivation.passed
        assert report.agree

    def test_abelian_any_commuting_invertible(self):
        g1 = algebra_of("g1_0_2", a=2)
        report = check_inverse_derivation_equiv(diag(g1.space, [3, F(-1, 2)]), g1)
        assert report.rb.passed and report.inverse_derivation.passed

    def test_ternary_algebra_route(self):
        tern = ternary_L1(a=1, b=3)
        report = check_inverse_derivation_equiv(diag(tern.space, [F(1, 3), 1, 1]), tern)
        assert report.rb.passed and report.inverse_derivation.passed

    def test_singular_rejected(self):
        g3 = algebra_of("g3_1_1", a=2)
        with pytest.raises(ValueError):
            check_inverse_derivation_equiv(diag(g3.space, [1, 0]), g3)


class TestKernelCondition:
    @pytest.mark.parametrize("which", ["zero", "identity", "projection"])
    def test_verdicts_agree_on_catalog_pair(self, which):
        bundle = catalog_build("L1", a=1, b=3)
        alg, phi = bundle.algebra, bundle.cochains[0]
        if which == "zero":
            R = GradedLinearMap.zero(alg.space)
            expect = True
        elif which == "identity":
            R = GradedLinearMap.identity(alg.space)
            expect = False
        else:
            R = bundle.operators[0].map
            expect = True
        report = check_phi_rb_kernel_condition(R, phi, alg, 3)
        assert report.kernel.passed is expect
        assert report.nary.passed is expect
        assert report.agree and report.passed

    def test_second_parameter_point(self):
        bundle = catalog_build("L1", a=2, b=5)
        alg, phi = bundle.algebra, bundle.cochains[0]
        report = check_phi_rb_kernel_condition(
            bundle.operators[0].map, phi, alg, 3
        )
        assert report.agree and report.kernel.passed
