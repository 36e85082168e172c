"""Twisted derivations: checking, solving, inner/quasi/generalized variants.

A power-k derivation candidate D of a multiplicative algebra with twist a must
commute with a and satisfy the graded Leibniz rule in which every spectator
argument is twisted by a^k and moving D past the first i-1 arguments costs
(-1)^(|D| * (p_1 + .. + p_{i-1})).

The solver sets the matrix entries of an unknown parity-homogeneous map as
variables, assembles the commutation and Leibniz constraints row by row and
returns the exact nullspace basis.  One parity class is solved at a time since
the Leibniz sign depends on the parity of the unknown map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .axioms import CheckReport, _Collector, DEFAULT_COUNTEREXAMPLE_CAP
from .core import (
    Element,
    FixedPointViolation,
    GradedLinearMap,
    HomSuperAlgebra,
    eval_bracket,
    map_power,
    supercommutator_maps,
)
from . import linalg


@dataclass(frozen=True)
class DerivationCandidate:
    map: GradedLinearMap
    power: int

    def __post_init__(self):
        if self.power < 0:
            raise ValueError("power must be nonnegative")


@dataclass(frozen=True)
class QuasiPair:
    d: GradedLinearMap
    dprime: GradedLinearMap
    power: int

    def __post_init__(self):
        if self.d.parity != self.dprime.parity and not (
            self.d.is_zero() or self.dprime.is_zero()
        ):
            raise ValueError("quasi-pair maps must share a parity")


@dataclass(frozen=True)
class GeneralizedTuple:
    """n maps acting one per argument slot plus one map on the output."""

    maps: tuple[GradedLinearMap, ...]
    power: int

    def __post_init__(self):
        parities = {m.parity for m in self.maps if not m.is_zero()}
        if len(parities) > 1:
            raise ValueError("all maps of a generalized tuple must share a parity")


def _shared_twist(alg: HomSuperAlgebra) -> GradedLinearMap:
    alpha = alg.twists[0]
    if any(t != alpha for t in alg.twists[1:]):
        raise ValueError("operation requires a single shared twist")
    return alpha


def check_derivation(
    cand: DerivationCandidate,
    alg: HomSuperAlgebra,
    cap: int = DEFAULT_COUNTEREXAMPLE_CAP,
    spectator: GradedLinearMap | None = None,
) -> CheckReport:
    """Twist commutation plus the graded Leibniz rule over all basis tuples.

    ``spectator`` overrides the map applied to untouched arguments; by default
    it is the algebra twist raised to ``cand.power``.
    """
    alpha = _shared_twist(alg)
    d = cand.map
    if spectator is None:
        spectator = map_power(alpha, cand.power)
    col = _Collector(f"derivation(power={cand.power})", cap)
    for label in alg.space.labels:
        col.tick()
        lhs = d.apply(alpha.apply_basis(label))
        rhs = alpha.apply(d.apply_basis(label))
        if lhs != rhs:
            col.fail((label,), lhs, rhs, note="twist commutation")
    n = alg.arity
    space = alg.space
    spec_cols = {l: spectator.apply_basis(l) for l in space.labels}
    d_cols = {l: d.apply_basis(l) for l in space.labels}
    for args in space.tuples(n):
        col.tick()
        lhs = d.apply(alg.bracket.value(args))
        rhs = Element()
        running = 0
        for i in range(n):
            if i > 0:
                running = (running + space.parity(args[i - 1])) % 2
            term_args = [spec_cols[a] for a in args]
            term_args[i] = d_cols[args[i]]
            term = eval_bracket(alg, term_args)
            if d.parity and running:
                term = term.scale(-1)
            rhs = rhs + term
        if lhs != rhs:
            col.fail(args, lhs, rhs)
    return col.report()


def inner_derivation(alg: HomSuperAlgebra, xs, k: int) -> DerivationCandidate:
    """ad^k on a fixed tuple: y -> [x_1, .., x_{n-1}, a^k(y)], a power-(k+1) derivation.

    The defining tuple must be fixed pointwise by the twist; anything else
    raises :class:`FixedPointViolation` rather than silently generalizing.
    """
    alpha = _shared_twist(alg)
    space = alg.space
    elems = [space.basis_element(x) if isinstance(x, str) else x for x in xs]
    if len(elems) != alg.arity - 1:
        raise ValueError(f"inner derivation needs {alg.arity - 1} arguments")
    for e in elems:
        if alpha.apply(e) != e:
            raise FixedPointViolation(f"twist does not fix {e!r}")
    parity = 0
    for e in elems:
        p = e.parity_in(space)
        if p is None:
            raise ValueError("inner derivation arguments must be homogeneous")
        parity = (parity + p) % 2
    ak = map_power(alpha, k)
    columns = {
        l: eval_bracket(alg, elems + [ak.apply_basis(l)]) for l in space.labels
    }
    return DerivationCandidate(GradedLinearMap(space, parity, columns), k + 1)


def check_quasi_derivation(
    pair: QuasiPair, alg: HomSuperAlgebra, cap: int = DEFAULT_COUNTEREXAMPLE_CAP
) -> CheckReport:
    """Leibniz sum of d absorbed by dprime applied to the whole bracket."""
    alpha = _shared_twist(alg)
    spectator = map_power(alpha, pair.power)
    col = _Collector(f"quasi-derivation(power={pair.power})", cap)
    space = alg.space
    spec_cols = {l: spectator.apply_basis(l) for l in space.labels}
    d_cols = {l: pair.d.apply_basis(l) for l in space.labels}
    for args in space.tuples(alg.arity):
        col.tick()
        lhs = Element()
        running = 0
        for i in range(alg.arity):
            if i > 0:
                running = (running + space.parity(args[i - 1])) % 2
            term_args = [spec_cols[a] for a in args]
            term_args[i] = d_cols[args[i]]
            term = eval_bracket(alg, term_args)
            if pair.d.parity and running:
                term = term.scale(-1)
            lhs = lhs + term
        rhs = pair.dprime.apply(alg.bracket.value(args))
        if lhs != rhs:
            col.fail(args, lhs, rhs)
    return col.report()


def check_generalized_derivation(
    tup: GeneralizedTuple,
    alg: HomSuperAlgebra,
    cap: int = DEFAULT_COUNTEREXAMPLE_CAP,
    spectator: GradedLinearMap | None = None,
) -> CheckReport:
    """Slot-wise maps with one output map: the (n+1)-ary twisted Leibniz rule."""
    alpha = _shared_twist(alg)
    n = alg.arity
    if len(tup.maps) != n + 1:
        raise ValueError(f"generalized tuple needs {n + 1} maps for arity {n}")
    if spectator is None:
        spectator = map_power(alpha, tup.power)
    slot_maps, out_map = tup.maps[:n], tup.maps[n]
    col = _Collector(f"generalized-derivation(power={tup.power})", cap)
    space = alg.space
    spec_cols = {l: spectator.apply_basis(l) for l in space.labels}
    for args in space.tuples(n):
        col.tick()
        lhs = out_map.apply(alg.bracket.value(args))
        rhs = Element()
        running = 0
        for i in range(n):
            if i > 0:
                running = (running + space.parity(args[i - 1])) % 2
            term_args = [spec_cols[a] for a in args]
            term_args[i] = slot_maps[i].apply_basis(args[i])
            term = eval_bracket(alg, term_args)
            if slot_maps[i].parity and running:
                term = term.scale(-1)
            rhs = rhs + term
        if lhs != rhs:
            col.fail(args, lhs, rhs)
    return col.report()


def check_derivation_closure(
    c1: DerivationCandidate,
    c2: DerivationCandidate,
    alg: HomSuperAlgebra,
    cap: int = DEFAULT_COUNTEREXAMPLE_CAP,
) -> CheckReport:
    """Supercommutator of two verified derivations at the summed power."""
    for c in (c1, c2):
        if not check_derivation(c, alg).passed:
            raise ValueError("closure check requires verified derivations")
    comm = supercommutator_maps(c1.map, c2.map)
    return check_derivation(DerivationCandidate(comm, c1.power + c2.power), alg, cap)


# ---------------------------------------------------------------------------
# Exact solver
# ---------------------------------------------------------------------------

def derivation_variables(space, parity: int) -> list[tuple[str, str]]:
    """(row, column) matrix positions a parity-homogeneous map may populate.

    Column-major order; this fixes the coordinates used by the solver and the
    canonical form of its output.
    """
    out = []
    for c in space.labels:
        for r in space.labels:
            if (space.parity(r) + space.parity(c)) % 2 == parity:
                out.append((r, c))
    return out


def derivation_constraints(
    alg: HomSuperAlgebra, k: int, parity: int
) -> tuple[list[list[Fraction]], list[tuple[str, str]]]:
    """Constraint matrix over the unknown entries of a parity-``parity`` map."""
    alpha = _shared_twist(alg)
    space = alg.space
    variables = derivation_variables(space, parity)
    var_index = {v: i for i, v in enumerate(variables)}
    nvars = len(variables)
    spectator = map_power(alpha, k)
    spec_cols = {l: spectator.apply_basis(l) for l in space.labels}
    rows = []

    # D(alpha(c)) = alpha(D(c)), coordinate by coordinate
    for c in space.labels:
        alpha_c = alpha.apply_basis(c)
        for rho in space.labels:
            row = [Fraction(0)] * nvars
            for w, coeff in alpha_c.coeffs.items():
                idx = var_index.get((rho, w))
                if idx is not None:
                    row[idx] += coeff
            for r in space.labels:
                idx = var_index.get((r, c))
                if idx is not None:
                    row[idx] -= alpha.apply_basis(r).coeffs.get(rho, Fraction(0))
            if any(row):
                rows.append(row)

    # Leibniz rule on every basis tuple, coordinate by coordinate
    n = alg.arity
    for args in space.tuples(n):
        bracket_value = alg.bracket.value(args)
        contributions: dict[tuple[str, str], Element] = {}
        for b, coeff in bracket_value.coeffs.items():
            for r in space.labels:
                if var_index.get((r, b)) is not None:
                    cur = contributions.get((r, b), Element())
                    contributions[(r, b)] = cur + space.basis_element(r).scale(coeff)
        running = 0
        for i in range(n):
            if i > 0:
                running = (running + space.parity(args[i - 1])) % 2
            sign = -1 if parity and running else 1
            for r in space.labels:
                if var_index.get((r, args[i])) is None:
                    continue
                term_args = [spec_cols[a] for a in args]
                term_args[i] = space.basis_element(r)
                image = eval_bracket(alg, term_args).scale(-sign)
                if not image.is_zero():
                    cur = contributions.get((r, args[i]), Element())
                    contributions[(r, args[i])] = cur + image
        if not contributions:
            continue
        for rho in space.labels:
            row = [Fraction(0)] * nvars
            touched = False
            for (r, c), image in contributions.items():
                coeff = image.coeffs.get(rho)
                if coeff:
                    row[var_index[(r, c)]] += coeff
                    touched = True
            if touched:
                rows.append(row)
    return rows, variables


def solve_derivation_space(alg: HomSuperAlgebra, k: int, parity: int) -> list[GradedLinearMap]:
    """Exact basis of the power-k derivations of declared parity.

    Vectors come from the reduced echelon form of the constraint system with
    one free variable set to 1 each, so the result is canonical and
    deterministic; an empty list means only the zero derivation exists.
    """
    rows, variables = derivation_constraints(alg, k, parity)
    vectors = linalg.nullspace(rows, ncols=len(variables))
    space = alg.space
    maps = []
    for vec in vectors:
        cols: dict[str, dict[str, Fraction]] = {l: {} for l in space.labels}
        for (r, c), value in zip(variables, vec):
            if value:
                cols[c][r] = value
        maps.append(
            GradedLinearMap(space, parity, {c: Element(d) for c, d in cols.items()})
        )
    return maps
