"""Exact substrate for Z2-graded n-ary algebras given by structure constants.

Everything is computed over arbitrary-precision rationals (``fractions.Fraction``),
so equality of algebraic expressions is decidable and all identity checks in the
sibling modules are exact.  All values are immutable after construction; the
functions here are pure and safe to call concurrently.

Conventions:

* a parity is the int 0 (even) or 1 (odd), added mod 2;
* sign-returning helpers take 1-based positions, matching the usual way
  transpositions "at position i" are written in the algebra literature;
* a linear map acts on column vectors: ``columns[label]`` is the image of the
  basis vector ``label``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(value) -> Fraction:
    """Coerce ints, 'p/q' strings and Fractions to a reduced exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_scalar(value: Fraction) -> str:
    """Render as 'p' or 'p/q' with q > 0 and gcd(p, q) = 1."""
    return str(Fraction(value))


class OrbitConflict(ValueError):
    """A partial tensor forces two different values on one index tuple."""

    def __init__(self, args, expected, found):
        self.args_tuple = tuple(args)
        self.expected = expected
        self.found = found
        super().__init__(
            f"inconsistent values on {self.args_tuple}: "
            f"orbit forces {expected}, found {found}"
        )


class FixedPointViolation(ValueError):
    """An argument tuple required to be fixed by the twist is not."""


# ---------------------------------------------------------------------------
# Graded spaces and elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuperSpace:
    """Finite ordered homogeneous basis with Z2 parities."""

    labels: tuple[str, ...]
    parities: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.parities):
            raise ValueError("labels and parities must have equal length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be unique")
        if any(p not in (0, 1) for p in self.parities):
            raise ValueError("parities must be 0 or 1")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]]) -> "SuperSpace":
        pairs = list(pairs)
        return cls(tuple(l for l, _ in pairs), tuple(int(p) for _, p in pairs))

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def dim0(self) -> int:
        return self.parities.count(0)

    @property
    def dim1(self) -> int:
        return self.parities.count(1)

    def parity(self, label: str) -> int:
        return self.parities[self.index(label)]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def __contains__(self, label: str) -> bool:
        return label in self.labels

    def tuples(self, k: int):
        """All k-tuples of basis labels in lexicographic (basis) order."""
        return itertools.product(self.labels, repeat=k)

    def basis_element(self, label: str) -> "Element":
        self.index(label)
        return Element({label: ONE})

    def sort_key(self, args: Sequence[str]) -> tuple[int, ...]:
        return tuple(self.index(a) for a in args)


class Element:
    """Sparse vector: map from basis label to nonzero Scalar coefficient.

    Treated as immutable; arithmetic returns new instances and zero
    coefficients are never stored.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[str, Fraction] | None = None):
        clean = {}
        if coeffs:
            for label, c in coeffs.items():
                c = scalar(c)
                if c != 0:
                    clean[label] = c
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *a):  # pragma: no cover - guards against mutation
        raise AttributeError("Element is immutable")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.coeffs)
        for label, c in other.coeffs.items():
            s = out.get(label, ZERO) + c
            if s:
                out[label] = s
            else:
                out.pop(label, None)
        return Element(out)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element({l: -c for l, c in self.coeffs.items()})

    def scale(self, a) -> "Element":
        a = scalar(a)
        if a == 0:
            return Element()
        return Element({l: a * c for l, c in self.coeffs.items()})

    def parity_in(self, space: SuperSpace) -> int | None:
        """Parity if homogeneous (zero counts as either; reported as 0), else None."""
        seen = {space.parity(l) for l in self.coeffs}
        if not seen:
            return 0
        if len(seen) == 1:
            return seen.pop()
        return None

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({format_scalar(c)})*{l}" for l, c in sorted(self.coeffs.items()))


def zero_element() -> Element:
    return Element()


# ---------------------------------------------------------------------------
# Koszul sign calculus
# ---------------------------------------------------------------------------

def adjacent_transposition_sign(parities: Sequence[int], i: int) -> int:
    """Sign -(-1)^(p_i * p_{i+1}) picked up when swapping slots i, i+1 (1-based)."""
    if not 1 <= i < len(parities):
        raise IndexError(f"position {i} out of range for {len(parities)} slots")
    return 1 if parities[i - 1] * parities[i] else -1


def prefix_degree(parities: Sequence[int], i: int) -> int:
    """Mod-2 sum of the first i parities; i = 0 gives 0."""
    if not 0 <= i <= len(parities):
        raise IndexError(f"prefix length {i} out of range")
    return sum(parities[:i]) % 2


def segment_degree(parities: Sequence[int], i: int, j: int) -> int:
    """Mod-2 sum of parities at 1-based positions i..j inclusive (empty if i > j)."""
    if i > j:
        return 0
    return sum(parities[i - 1 : j]) % 2


def pair_extraction_sign(parities: Sequence[int], i: int, j: int) -> int:
    """Koszul sign for pulling slots i < j (1-based) out of a graded tuple.

    The exponent is |X|_{j+1..n} * (p_i + p_j) + p_i * |X|_{i+1..j-1}, i.e. the
    parity crossings made when slot j moves past the tail and slot i past the
    span between them.
    """
    n = len(parities)
    if not (1 <= i < j <= n):
        raise IndexError(f"need 1 <= i < j <= {n}, got ({i}, {j})")
    tail = segment_degree(parities, j + 1, n)
    between = segment_degree(parities, i + 1, j - 1)
    exponent = tail * (parities[i - 1] + parities[j - 1]) + parities[i - 1] * between
    return -1 if exponent % 2 else 1


def nonadjacent_swap_sign(parities: Sequence[int], i: int, j: int) -> int:
    """Sign relating a tuple to the one with slots i < j (1-based) exchanged."""
    n = len(parities)
    if not (1 <= i < j <= n):
        raise IndexError(f"need 1 <= i < j <= {n}, got ({i}, {j})")
    between = segment_degree(parities, i + 1, j - 1)
    exponent = between * (parities[i - 1] + parities[j - 1]) + parities[i - 1] * parities[j - 1]
    return 1 if exponent % 2 else -1


def permutation_sign(parities: Sequence[int], perm: Sequence[int]) -> int:
    """Koszul sign of applying ``perm`` to a homogeneous tuple, by inversion count.

    ``perm[k]`` is the source position (0-based) of the element landing in slot
    k.  Each inversion contributes -(-1)^(p_a * p_b).  Serves as the
    path-independent oracle for signs accumulated by adjacent swaps.
    """
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign *= -1 if parities[perm[b]] * parities[perm[a]] == 0 else 1
    return sign


# ---------------------------------------------------------------------------
# Graded linear maps
# ---------------------------------------------------------------------------

class GradedLinearMap:
    """Linear endomorphism with a declared parity.

    Even maps preserve the grading, odd maps flip it; construction rejects
    images violating the declared parity.
    """

    __slots__ = ("space", "parity", "columns")

    def __init__(self, space: SuperSpace, parity: int, columns: Mapping[str, Element]):
        if parity not in (0, 1):
            raise ValueError("parity must be 0 or 1")
        cols = {}
        for label in space.labels:
            img = columns.get(label, Element())
            if not isinstance(img, Element):
                img = Element(img)
            want = (space.parity(label) + parity) % 2
            for out_label in img.coeffs:
                if space.parity(out_label) != want:
                    raise ValueError(
                        f"map declared parity {parity} but {label} "
                        f"(parity {space.parity(label)}) hits {out_label} "
                        f"(parity {space.parity(out_label)})"
                    )
            cols[label] = img
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "parity", parity)
        object.__setattr__(self, "columns", cols)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("GradedLinearMap is immutable")

    @classmethod
    def from_matrix(cls, space: SuperSpace, rows, parity: int | None = None) -> "GradedLinearMap":
        """Build from a dense row-major matrix: rows[i][j] = <e_i | M e_j>."""
        d = space.dim
        if len(rows) != d or any(len(r) != d for r in rows):
            raise ValueError(f"matrix must be {d}x{d}")
        cols = {}
        for j, label in enumerate(space.labels):
            cols[label] = Element(
                {space.labels[i]: scalar(rows[i][j]) for i in range(d)}
            )
        if parity is None:
            parity = _infer_parity(space, cols)
        return cls(space, parity, cols)

    @classmethod
    def identity(cls, space: SuperSpace) -> "GradedLinearMap":
        return cls(space, 0, {l: space.basis_element(l) for l in space.labels})

    @classmethod
    def zero(cls, space: SuperSpace, parity: int = 0) -> "GradedLinearMap":
        return cls(space, parity, {})

    def matrix(self) -> list[list[Fraction]]:
        d = self.space.dim
        rows = [[ZERO] * d for _ in range(d)]
        for j, label in enumerate(self.space.labels):
            for out_label, c in self.columns[label].coeffs.items():
                rows[self.space.index(out_label)][j] = c
        return rows

    def apply(self, elem: Element) -> Element:
        out = Element()
        for label, c in elem.coeffs.items():
            out = out + self.columns[label].scale(c)
        return out

    def apply_basis(self, label: str) -> Element:
        return self.columns[label]

    def is_zero(self) -> bool:
        return all(col.is_zero() for col in self.columns.values())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedLinearMap)
            and self.space == other.space
            and self.columns == other.columns
        )

    def __hash__(self):
        return hash((self.space, frozenset((l, e) for l, e in self.columns.items())))

    def __add__(self, other: "GradedLinearMap") -> "GradedLinearMap":
        _same_space(self, other)
        if self.parity != other.parity and not (self.is_zero() or other.is_zero()):
            raise ValueError("cannot add maps of different parity")
        parity = other.parity if self.is_zero() else self.parity
        return GradedLinearMap(
            self.space,
            parity,
            {l: self.columns[l] + other.columns[l] for l in self.space.labels},
        )

    def __sub__(self, other: "GradedLinearMap") -> "GradedLinearMap":
        return self + other.scale(-1)

    def scale(self, a) -> "GradedLinearMap":
        a = scalar(a)
        return GradedLinearMap(
            self.space, self.parity, {l: col.scale(a) for l, col in self.columns.items()}
        )

    def __repr__(self):
        entries = ", ".join(
            f"{l} -> {self.columns[l]!r}" for l in self.space.labels if not self.columns[l].is_zero()
        )
        return f"GradedLinearMap(parity={self.parity}, {entries or '0'})"


def _infer_parity(space: SuperSpace, cols: Mapping[str, Element]) -> int:
    for label, img in cols.items():
        for out_label in img.coeffs:
            return (space.parity(out_label) - space.parity(label)) % 2
    return 0


def _same_space(f: GradedLinearMap, g: GradedLinearMap):
    if f.space != g.space:
        raise ValueError("maps live on different spaces")


def map_compose(f: GradedLinearMap, g: GradedLinearMap) -> GradedLinearMap:
    """f after g; parities add mod 2."""
    _same_space(f, g)
    return GradedLinearMap(
        f.space,
        (f.parity + g.parity) % 2,
        {l: f.apply(g.columns[l]) for l in f.space.labels},
    )


def map_power(f: GradedLinearMap, k: int) -> GradedLinearMap:
    if k < 0:
        raise ValueError("negative powers are not defined here")
    out = GradedLinearMap.identity(f.space)
    for _ in range(k):
        out = map_compose(f, out)
    return out


def supercommutator_maps(d1: GradedLinearMap, d2: GradedLinearMap) -> GradedLinearMap:
    """d1 o d2 - (-1)^(|d1||d2|) d2 o d1."""
    _same_space(d1, d2)
    sign = -1 if d1.parity * d2.parity else 1
    return map_compose(d1, d2) - map_compose(d2, d1).scale(sign)


def maps_commute(f: GradedLinearMap, g: GradedLinearMap) -> bool:
    return map_compose(f, g) == map_compose(g, f)


# ---------------------------------------------------------------------------
# Structure-constant brackets
# ---------------------------------------------------------------------------

class NaryBracket:
    """Arity-n multilinear product stored as a sparse structure-constant tensor.

    Index tuples absent from ``entries`` evaluate to zero.  Graded-evenness is
    a property verified by the axioms module, not forced at construction, so
    deliberately broken tensors can be built and diagnosed.
    """

    __slots__ = ("arity", "entries")

    def __init__(self, arity: int, entries: Mapping[tuple[str, ...], Element] | None = None):
        if arity < 2:
            raise ValueError("arity must be at least 2")
        clean = {}
        if entries:
            for args, value in entries.items():
                args = tuple(args)
                if len(args) != arity:
                    raise ValueError(f"entry {args} does not have arity {arity}")
                if not isinstance(value, Element):
                    value = Element(value)
                if not value.is_zero():
                    clean[args] = value
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "entries", clean)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("NaryBracket is immutable")

    def value(self, args: Sequence[str]) -> Element:
        return self.entries.get(tuple(args), Element())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NaryBracket)
            and self.arity == other.arity
            and self.entries == other.entries
        )

    def is_zero(self) -> bool:
        return not self.entries


@dataclass(frozen=True)
class HomSuperAlgebra:
    """A graded space, an n-bracket and the family of n-1 even twist maps."""

    space: SuperSpace
    bracket: NaryBracket
    twists: tuple[GradedLinearMap, ...]
    multiplicative_flag: bool = False

    def __post_init__(self):
        if len(self.twists) != self.bracket.arity - 1:
            raise ValueError(
                f"arity {self.bracket.arity} needs {self.bracket.arity - 1} twists, "
                f"got {len(self.twists)}"
            )
        for t in self.twists:
            if t.parity != 0:
                raise ValueError("twist maps must be even")
            if t.space != self.space:
                raise ValueError("twist map on a different space")
        if self.multiplicative_flag and len(set(id(t) for t in self.twists)) > 1:
            if any(t != self.twists[0] for t in self.twists[1:]):
                raise ValueError("multiplicative algebras carry one shared twist")

    @property
    def arity(self) -> int:
        return self.bracket.arity

    @property
    def twist(self) -> GradedLinearMap:
        """The shared twist of a multiplicative algebra."""
        if not self.multiplicative_flag:
            raise ValueError("algebra does not declare a single shared twist")
        return self.twists[0]

    def parity_tuple(self, args: Sequence[str]) -> tuple[int, ...]:
        return tuple(self.space.parity(a) for a in args)


def multiplicative_algebra(
    space: SuperSpace, bracket: NaryBracket, alpha: GradedLinearMap
) -> HomSuperAlgebra:
    return HomSuperAlgebra(
        space, bracket, (alpha,) * (bracket.arity - 1), multiplicative_flag=True
    )


def eval_tensor(tensor: "NaryBracket", space: SuperSpace, args: Sequence[Element]) -> Element:
    """Multilinear extension of a structure-constant tensor to arbitrary elements."""
    if len(args) != tensor.arity:
        raise ValueError(f"expected {tensor.arity} arguments, got {len(args)}")
    for e in args:
        for label in e.coeffs:
            if label not in space:
                raise KeyError(f"unknown basis label {label!r}")
    out = {}
    entries = tensor.entries
    supports = [list(e.coeffs.items()) for e in args]
    if any(not s for s in supports):
        return Element()
    for combo in itertools.product(*supports):
        key = tuple(label for label, _ in combo)
        base = entries.get(key)
        if base is None:
            continue
        coeff = ONE
        for _, c in combo:
            coeff *= c
        for label, c in base.coeffs.items():
            s = out.get(label, ZERO) + coeff * c
            if s:
                out[label] = s
            else:
                del out[label]
    return Element(out)


def eval_bracket(alg: HomSuperAlgebra, args: Sequence[Element]) -> Element:
    """Multilinear extension of the algebra's structure constants."""
    return eval_tensor(alg.bracket, alg.space, args)


def eval_bracket_basis(alg: HomSuperAlgebra, args: Sequence[str]) -> Element:
    return alg.bracket.value(args)


# ---------------------------------------------------------------------------
# Skew-orbit completion
# ---------------------------------------------------------------------------

def complete_skew_orbit(
    arity: int,
    generators: Mapping[tuple[str, ...], Element],
    space: SuperSpace,
) -> dict[tuple[str, ...], Element]:
    """Extend generating structure constants to all permuted index tuples.

    Adjacent transpositions propagate values with the Koszul skew sign; a tuple
    whose orbit forces v = -v with v nonzero, or two generators disagreeing on
    one orbit, raise :class:`OrbitConflict`.
    """
    table: dict[tuple[str, ...], Element] = {}
    worklist = []
    for args, value in generators.items():
        args = tuple(args)
        if not isinstance(value, Element):
            value = Element(value)
        _orbit_insert(table, worklist, args, value)
    while worklist:
        args, value = worklist.pop()
        parities = [space.parity(a) for a in args]
        for i in range(1, arity):
            sign = adjacent_transposition_sign(parities, i)
            swapped = args[: i - 1] + (args[i], args[i - 1]) + args[i + 1 :]
            _orbit_insert(table, worklist, swapped, value.scale(sign))
    return {args: v for args, v in table.items() if not v.is_zero()}


def _orbit_insert(table, worklist, args, value):
    existing = table.get(args)
    if existing is None:
        table[args] = value
        worklist.append((args, value))
    elif existing != value:
        raise OrbitConflict(args, existing, value)


def complete_skew_orbit_scalars(
    degree: int,
    generators: Mapping[tuple[str, ...], Fraction],
    space: SuperSpace,
) -> dict[tuple[str, ...], Fraction]:
    """Orbit completion for scalar-valued super-skew forms (cochains)."""
    table: dict[tuple[str, ...], Fraction] = {}
    worklist = []

    def insert(args, value):
        existing = table.get(args)
        if existing is None:
            table[args] = value
            worklist.append((args, value))
        elif existing != value:
            raise OrbitConflict(args, existing, value)

    for args, value in generators.items():
        insert(tuple(args), scalar(value))
    while worklist:
        args, value = worklist.pop()
        parities = [space.parity(a) for a in args]
        for i in range(1, degree):
            sign = adjacent_transposition_sign(parities, i)
            swapped = args[: i - 1] + (args[i], args[i - 1]) + args[i + 1 :]
            insert(swapped, sign * value)
    return {args: v for args, v in table.items() if v != 0}
