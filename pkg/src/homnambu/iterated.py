"""Left-nested n-fold brackets built from a binary multiplicative algebra.

The n-ary bracket nests the binary one to the left, twisting the j-th argument
by alpha^(j-2):

    [x_1, .., x_n] = [[ .. [[x_1, x_2], a(x_3)], .. ], a^(n-2)(x_n)]

and the resulting n-ary algebra carries the twist a^(n-1).  The recursion
[x_1..x_n] = [[x_1..x_{n-1}], a^(n-2)(x_n)] is the ground truth for values at
every arity; tests pin golden values to it.

Derivation-transfer checks on the n-ary algebra keep the base twist in the
spectator slots (a^k, not (a^(n-1))^k): that is the rule the transferred
Leibniz identity actually satisfies.
"""

from __future__ import annotations

from .axioms import CheckReport, _Collector, DEFAULT_COUNTEREXAMPLE_CAP
from .core import (
    Element,
    GradedLinearMap,
    HomSuperAlgebra,
    NaryBracket,
    eval_bracket,
    map_power,
    multiplicative_algebra,
)
from .derivations import (
    DerivationCandidate,
    GeneralizedTuple,
    QuasiPair,
    check_derivation,
    check_generalized_derivation,
    check_quasi_derivation,
)


def _require_binary_multiplicative(alg: HomSuperAlgebra):
    if alg.arity != 2:
        raise ValueError("iterated brackets start from a binary algebra")
    if not alg.multiplicative_flag:
        raise ValueError("iterated brackets need a multiplicative algebra")


def iterated_bracket(alg: HomSuperAlgebra, n: int) -> HomSuperAlgebra:
    """Build the arity-n nested bracket; returns the algebra with twist a^(n-1)."""
    _require_binary_multiplicative(alg)
    if n < 2:
        raise ValueError("arity must be at least 2")
    alpha = alg.twist
    space = alg.space
    entries = dict(alg.bracket.entries)
    for m in range(3, n + 1):
        twist_cols = {l: map_power(alpha, m - 2).apply_basis(l) for l in space.labels}
        extended = {}
        for args, value in entries.items():
            for b in space.labels:
                img = twist_cols[b]
                if img.is_zero():
                    continue
                out = eval_bracket(alg, [value, img])
                if not out.is_zero():
                    extended[args + (b,)] = out
        entries = extended
    if n == 2:
        return alg
    return multiplicative_algebra(space, NaryBracket(n, entries), map_power(alpha, n - 1))


def iterated_eval(alg: HomSuperAlgebra, elems: list[Element], n: int) -> Element:
    """Direct recursive evaluation, independent of the tensor construction."""
    _require_binary_multiplicative(alg)
    if len(elems) != n:
        raise ValueError(f"expected {n} arguments")
    alpha = alg.twist
    value = eval_bracket(alg, [elems[0], elems[1]])
    for j in range(3, n + 1):
        value = eval_bracket(alg, [value, map_power(alpha, j - 2).apply(elems[j - 1])])
    return value


def check_adjoint_expansion(
    alg: HomSuperAlgebra,
    n: int,
    x: str | None = None,
    ys: tuple[str, ...] | None = None,
    cap: int = DEFAULT_COUNTEREXAMPLE_CAP,
) -> CheckReport:
    """Bracketing with a^(n-1)(x) expands slotwise over the nested bracket:

        [a^(n-1)(x), [y_1..y_n]] = sum_k (-1)^(|x| |Y|^{k-1})
                                   [a(y_1), .., [x, y_k], .., a(y_n)]

    With explicit ``x`` and ``ys`` only that instance is checked; otherwise the
    identity is verified exhaustively over the basis.
    """
    _require_binary_multiplicative(alg)
    alpha = alg.twist
    space = alg.space
    nested = iterated_bracket(alg, n)
    col = _Collector(f"adjoint-expansion(n={n})", cap)
    power = map_power(alpha, n - 1)
    xs = [x] if x is not None else list(space.labels)
    all_ys = [tuple(ys)] if ys is not None else list(space.tuples(n))
    for xv in xs:
        x_parity = space.parity(xv)
        for yt in all_ys:
            col.tick()
            lhs = eval_bracket(
                alg, [power.apply_basis(xv), nested.bracket.value(yt)]
            )
            rhs = Element()
            running = 0
            for k in range(n):
                if k > 0:
                    running = (running + space.parity(yt[k - 1])) % 2
                inner = alg.bracket.value((xv, yt[k]))
                if inner.is_zero():
                    continue
                args = [alpha.apply_basis(y) for y in yt]
                args[k] = inner
                term = eval_bracket(nested, args)
                if x_parity and running:
                    term = term.scale(-1)
                rhs = rhs + term
            if lhs != rhs:
                col.fail((xv,) + yt, lhs, rhs)
    return col.report()


def iterated_transfer_derivation(
    cand: DerivationCandidate,
    alg: HomSuperAlgebra,
    n: int,
    cap: int = DEFAULT_COUNTEREXAMPLE_CAP,
) -> CheckReport:
    """A verified base derivation obeys the n-ary Leibniz rule with a^k spectators."""
    _require_binary_multiplicative(alg)
    if not check_derivation(cand, alg).passed:
        raise ValueError("transfer requires a verified derivation of the base algebra")
    nested = iterated_bracket(alg, n)
    spectator = map_power(alg.twist, cand.power)
    return check_derivation(cand, nested, cap, spectator=spectator)


def iterated_generalized_tuple(
    chain: list[GradedLinearMap],
    alg: HomSuperAlgebra,
    k: int,
    n: int,
    cap: int = DEFAULT_COUNTEREXAMPLE_CAP,
) -> CheckReport:
    """A chain of quasi-derivations acts slotwise on the nested bracket.

    ``chain`` lists D^(0) .. D^(n-1) where each consecutive pair is a verified
    quasi-derivation pair; the tuple tested has D^(0) in the first two slots,
    then the chain, with D^(n-1) on the output.
    """
    _require_binary_multiplicative(alg)
    if len(chain) != n:
        raise ValueError(f"need a chain of {n} maps for arity {n}")
    for d, dprime in zip(chain, chain[1:]):
        if not check_quasi_derivation(QuasiPair(d, dprime, k), alg).passed:
            raise ValueError("chain entries must be verified quasi-derivation pairs")
    nested = iterated_bracket(alg, n)
    maps = (chain[0],) + tuple(chain[: n - 1]) + (chain[n - 1],)
    spectator = map_power(alg.twist, k)
    return check_generalized_derivation(
        GeneralizedTuple(maps, k), nested, cap, spectator=spectator
    )
