"""Rota-Baxter operators of arbitrary weight on binary and n-ary brackets.

Operators are verified, never solved for (the defining identity is quadratic
in the operator).  The n-ary identity sums over all nonempty subsets I of the
argument slots, replacing the operator by the identity inside I and weighting
by weight^(|I|-1); for ternary brackets this is the familiar 7-term expansion,
which is recomputed verbatim as an internal cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .axioms import CheckReport, _Collector, DEFAULT_COUNTEREXAMPLE_CAP
from .cochains import SuperCochain, cochain_induced_bracket
from .core import (
    Element,
    GradedLinearMap,
    HomSuperAlgebra,
    ZERO,
    eval_bracket,
    pair_extraction_sign,
    scalar,
)
from .derivations import DerivationCandidate, check_derivation
from .linalg import invert_map


@dataclass(frozen=True)
class RotaBaxterOperator:
    map: GradedLinearMap
    weight: Fraction

    def __post_init__(self):
        if self.map.parity != 0:
            raise ValueError("Rota-Baxter operators must be even")
        object.__setattr__(self, "weight", scalar(self.weight))


def _twist_commutation(col, R: GradedLinearMap, alg: HomSuperAlgebra):
    for twist in dict.fromkeys(alg.twists):
        for label in alg.space.labels:
            col.tick()
            lhs = R.apply(twist.apply_basis(label))
            rhs = twist.apply(R.apply_basis(label))
            if lhs != rhs:
                col.fail((label,), lhs, rhs, note="twist commutation")


def check_rb_binary(
    rb: RotaBaxterOperator, alg: HomSuperAlgebra, cap: int = DEFAULT_COUNTEREXAMPLE_CAP
) -> CheckReport:
    """R(x).R(y) = R(R(x).y + x.R(y) + weight * x.y) over all basis pairs."""
    if alg.arity != 2:
        raise ValueError("binary check needs a binary algebra")
    R = rb.map
    col = _Collector(f"rota-baxter(weight={rb.weight})", cap)
    _twist_commutation(col, R, alg)
    space = alg.space
    r_cols = {l: R.apply_basis(l) for l in space.labels}
    for x, y in space.tuples(2):
        col.tick()
        lhs = eval_bracket(alg, [r_cols[x], r_cols[y]])
        ex, ey = space.basis_element(x), space.basis_element(y)
        inner = (
            eval_bracket(alg, [r_cols[x], ey])
            + eval_bracket(alg, [ex, r_cols[y]])
            + alg.bracket.value((x, y)).scale(rb.weight)
        )
        rhs = R.apply(inner)
        if lhs != rhs:
            col.fail((x, y), lhs, rhs)
    return col.report()


def _subset_sum(rb, alg, args_elems, base_elems, n):
    total = Element()
    for bits in range(1, 2 ** n):
        size = bin(bits).count("1")
        term_args = [
            base_elems[i] if bits & (1 << i) else args_elems[i] for i in range(n)
        ]
        term = eval_bracket(alg, term_args)
        if size > 1:
            term = term.scale(rb.weight ** (size - 1))
        total = total + term
    return rb.map.apply(total)


def _ternary_seven_terms(rb, alg, args_elems, base_elems):
    w = rb.weight
    rx, ry, rz = args_elems
    x, y, z = base_elems
    total = (
        eval_bracket(alg, [rx, ry, z])
        + eval_bracket(alg, [rx, y, rz])
        + eval_bracket(alg, [x, ry, rz])
        + eval_bracket(alg, [rx, y, z]).scale(w)
        + eval_bracket(alg, [x, ry, z]).scale(w)
        + eval_bracket(alg, [x, y, rz]).scale(w)
        + eval_bracket(alg, [x, y, z]).scale(w * w)
    )
    return rb.map.apply(total)


def check_rb_nary(
    rb: RotaBaxterOperator, alg: HomSuperAlgebra, cap: int = DEFAULT_COUNTEREXAMPLE_CAP
) -> CheckReport:
    """Subset-sum Rota-Baxter identity for arity n, with exact weight powers."""
    n = alg.arity
    R = rb.map
    col = _Collector(f"rota-baxter-nary(weight={rb.weight})", cap)
    _twist_commutation(col, R, alg)
    space = alg.space
    r_cols = {l: R.apply_basis(l) for l in space.labels}
    for args in space.tuples(n):
        col.tick()
        args_elems = [r_cols[a] for a in args]
        base_elems = [space.basis_element(a) for a in args]
        lhs = eval_bracket(alg, args_elems)
        rhs = _subset_sum(rb, alg, args_elems, base_elems, n)
        if n == 3:
            expanded = _ternary_seven_terms(rb, alg, args_elems, base_elems)
            if expanded != rhs:  # subset enumeration must match the 7-term form
                raise AssertionError(
                    f"ternary expansion mismatch at {args}: {expanded!r} vs {rhs!r}"
                )
        if lhs != rhs:
            col.fail(args, lhs, rhs)
    return col.report()


def check_rb(rb: RotaBaxterOperator, alg: HomSuperAlgebra, cap: int = DEFAULT_COUNTEREXAMPLE_CAP) -> CheckReport:
    if alg.arity == 2:
        return check_rb_binary(rb, alg, cap)
    return check_rb_nary(rb, alg, cap)


@dataclass(frozen=True)
class EquivalenceReport:
    """Weight-0 verdict for R against the derivation verdict for its inverse."""

    rb: CheckReport
    inverse_derivation: CheckReport

    @property
    def agree(self) -> bool:
        return self.rb.passed == self.inverse_derivation.passed

    @property
    def passed(self) -> bool:
        return self.agree

    def summary(self) -> str:
        return (
            f"weight-0 operator: {'PASS' if self.rb.passed else 'FAIL'}; "
            f"inverse is derivation: {'PASS' if self.inverse_derivation.passed else 'FAIL'}; "
            f"verdicts {'agree' if self.agree else 'DISAGREE'}"
        )


def check_inverse_derivation_equiv(
    R: GradedLinearMap, alg: HomSuperAlgebra, cap: int = DEFAULT_COUNTEREXAMPLE_CAP
) -> EquivalenceReport:
    """R is weight-0 Rota-Baxter exactly when R^{-1} is an even plain derivation.

    The derivation side is tested at power 0 (identity spectators); singular
    R raises ValueError.
    """
    inverse = invert_map(R)
    rb_report = check_rb(RotaBaxterOperator(R, ZERO), alg, cap)
    deriv_report = check_derivation(DerivationCandidate(inverse, 0), alg, cap)
    return EquivalenceReport(rb_report, deriv_report)


@dataclass(frozen=True)
class KernelConditionReport:
    """Kernel-membership sum versus the n-ary verdict on the induced bracket."""

    kernel: CheckReport
    nary: CheckReport

    @property
    def agree(self) -> bool:
        return self.kernel.passed == self.nary.passed

    @property
    def passed(self) -> bool:
        return self.agree


def check_phi_rb_kernel_condition(
    R: GradedLinearMap,
    phi: SuperCochain,
    alg: HomSuperAlgebra,
    n: int,
    cap: int = DEFAULT_COUNTEREXAMPLE_CAP,
) -> KernelConditionReport:
    """Two routes to 'R is weight-0 Rota-Baxter on the induced n-ary bracket'.

    Route one evaluates, for every basis n-tuple, the signed sum in which one
    slot stays untwisted, two slots are bracketed through R and all remaining
    slots feed phi through R, and tests that R kills the total.  Route two runs
    the subset-sum check directly on the induced algebra.  The verdicts agree
    when the hypotheses of the displayed equivalence hold; the report records
    both so the equivalence itself is exercised.
    """
    if alg.arity != 2:
        raise ValueError("kernel condition starts from a binary algebra")
    space = alg.space
    r_cols = {l: R.apply_basis(l) for l in space.labels}
    kernel_col = _Collector("rb-kernel-condition", cap)
    for args in space.tuples(n):
        kernel_col.tick()
        parities = [space.parity(a) for a in args]
        total = Element()
        for i in range(1, n + 1):
            for k in range(1, n + 1):
                if k == i:
                    continue
                for l in range(k + 1, n + 1):
                    if l == i:
                        continue
                    pair = eval_bracket(
                        alg, [r_cols[args[k - 1]], r_cols[args[l - 1]]]
                    )
                    if pair.is_zero():
                        continue
                    phi_args = []
                    for m in range(1, n + 1):
                        if m in (k, l):
                            continue
                        if m == i:
                            phi_args.append(space.basis_element(args[m - 1]))
                        else:
                            phi_args.append(r_cols[args[m - 1]])
                    weight = phi.eval(phi_args)
                    if weight == 0:
                        continue
                    sign = pair_extraction_sign(parities, k, l)
                    if (k + l + 1) % 2:
                        sign = -sign
                    total = total + pair.scale(sign * weight)
        image = R.apply(total)
        if not image.is_zero():
            kernel_col.fail(args, image, Element(), note="sum escapes ker(R)")
    induced = cochain_induced_bracket(phi, alg, n)
    nary = check_rb_nary(RotaBaxterOperator(R, ZERO), induced, cap)
    return KernelConditionReport(kernel_col.report(), nary)
