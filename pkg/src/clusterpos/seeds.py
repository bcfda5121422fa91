"""Seeds attached to reduced words, quiver mutation and evaluation.

Cluster variables are kept as expression trees over generalized minors so
that they can be evaluated at numeric points of any supported type; the
polynomial closed form is produced on demand by :func:`symbolic_seed`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import (
    DivisionByZeroPoly,
    FrozenVertex,
    InexactDivision,
    SingularEvaluation,
    TooLarge,
    UnknownVertex,
    UnsupportedType,
)
from .exactalg import MultiPoly, exact_quotient, is_zero
from .repmat import GroupElement, MinorLabel, generalized_minor
from .rootsys import RootSystem, WordIndexing, check_word, word_indexing


# cluster variable expressions ---------------------------------------------

class ClusterVar:
    """Node of a cluster-variable expression tree.

    Sums and products are stored with their operands in canonical order, so
    structural equality is insensitive to commutativity.
    """

    __slots__ = ("_hash",)
    _tag = 0

    def children(self) -> tuple["ClusterVar", ...]:
        return ()

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._same(other)

    def leaves(self) -> set[MinorLabel]:
        out, stack, seen = set(), [self], set()
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            if isinstance(node, MinorLeaf):
                out.add(node.label)
            stack.extend(node.children())
        return out

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children())


class MinorLeaf(ClusterVar):
    __slots__ = ("label",)
    _tag = 1

    def __init__(self, label: MinorLabel):
        self.label = label
        self._hash = hash((self._tag, label))

    def _same(self, other):
        return self.label == other.label

    def __str__(self):
        return self.label.display

    def __repr__(self):
        return f"MinorLeaf({self.label.display})"


class ProductNode(ClusterVar):
    __slots__ = ("factors",)
    _tag = 2

    def __init__(self, factors: Iterable[ClusterVar]):
        self.factors = tuple(sorted(factors, key=hash))
        self._hash = hash((self._tag,) + self.factors)

    def children(self):
        return self.factors

    def _same(self, other):
        return self.factors == other.factors

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(sorted(_wrap(f) for f in self.factors))


class SumNode(ClusterVar):
    __slots__ = ("terms",)
    _tag = 3

    def __init__(self, terms: Iterable[ClusterVar]):
        self.terms = tuple(sorted(terms, key=hash))
        self._hash = hash((self._tag,) + self.terms)

    def children(self):
        return self.terms

    def _same(self, other):
        return self.terms == other.terms

    def __str__(self):
        return " + ".join(sorted(str(t) for t in self.terms))


class QuotientNode(ClusterVar):
    __slots__ = ("num", "den")
    _tag = 4

    def __init__(self, num: ClusterVar, den: ClusterVar):
        self.num, self.den = num, den
        self._hash = hash((self._tag, num, den))

    def children(self):
        return (self.num, self.den)

    def _same(self, other):
        return self.num == other.num and self.den == other.den

    def __str__(self):
        return f"({self.num})/({self.den})"


def _wrap(node: ClusterVar) -> str:
    s = str(node)
    return f"({s})" if isinstance(node, SumNode) else s


def product(factors: Iterable[ClusterVar]) -> ClusterVar:
    factors = list(factors)
    return factors[0] if len(factors) == 1 else ProductNode(factors)


def quotient(num: ClusterVar, den: ClusterVar) -> ClusterVar:
    # P / (P / x) = x: this is what makes mutation an involution on expressions
    if isinstance(den, QuotientNode) and den.num == num:
        return den.den
    return QuotientNode(num, den)


def evaluate(var: ClusterVar, leaf_value: Callable[[MinorLabel], object],
             cache: Optional[dict] = None):
    """Evaluate an expression with exact arithmetic; ``cache`` maps nodes to values."""
    cache = {} if cache is None else cache
    stack = [(var, False)]
    while stack:
        node, ready = stack.pop()
        if node in cache:
            continue
        kids = node.children()
        if not ready and kids:
            stack.append((node, True))
            stack.extend((c, False) for c in kids if c not in cache)
            continue
        if isinstance(node, MinorLeaf):
            value = leaf_value(node.label)
        elif isinstance(node, ProductNode):
            value = 1
            for f in node.factors:
                value = value * cache[f]
        elif isinstance(node, SumNode):
            value = 0
            for t in node.terms:
                value = value + cache[t]
        else:
            den = cache[node.den]
            if is_zero(den):
                raise SingularEvaluation(
                    f"denominator {node.den} vanishes at this point; try symbolic mode"
                )
            try:
                value = exact_quotient(cache[node.num], den)
            except DivisionByZeroPoly as exc:
                raise SingularEvaluation(str(exc)) from exc
        if isinstance(value, Fraction) and value.denominator == 1:
            value = value.numerator
        cache[node] = value
    return cache[var]


# quivers --------------------------------------------------------------------

@dataclass(frozen=True)
class Quiver:
    """Vertices, frozen subset and arrows ``(a, b, m)`` meaning ``m`` arrows a -> b."""

    vertices: tuple[int, ...]
    frozen: frozenset[int]
    arrows: frozenset[tuple[int, int, int]]

    @classmethod
    def from_arrows(cls, vertices: Iterable[int], frozen: Iterable[int],
                    arrows: Iterable[tuple[int, int]]) -> "Quiver":
        vertices = tuple(sorted(set(vertices)))
        b: dict[tuple[int, int], int] = {}
        for a, c in arrows:
            if a == c:
                raise ValueError(f"loop at {a}")
            if a not in vertices or c not in vertices:
                continue
            b[(a, c)] = b.get((a, c), 0) + 1
            b[(c, a)] = b.get((c, a), 0) - 1
        return cls(vertices, frozenset(frozen), _arrows_from_b(b))

    def b(self, a: int, c: int) -> int:
        """Signed arrow count: arrows a -> c minus arrows c -> a."""
        return self._matrix.get((a, c), 0)

    @property
    def _matrix(self) -> dict[tuple[int, int], int]:
        m = {}
        for a, c, k in self.arrows:
            m[(a, c)] = k
            m[(c, a)] = -k
        return m

    @property
    def mutable(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if v not in self.frozen)

    def incoming(self, k: int) -> list[tuple[int, int]]:
        return sorted((a, m) for a, c, m in self.arrows if c == k)

    def outgoing(self, k: int) -> list[tuple[int, int]]:
        return sorted((c, m) for a, c, m in self.arrows if a == k)

    def mutate(self, k: int) -> "Quiver":
        b = self._matrix
        new = {}
        for i in self.vertices:
            for j in self.vertices:
                if i == j:
                    continue
                if k in (i, j):
                    v = -b.get((i, j), 0)
                else:
                    bik, bkj = b.get((i, k), 0), b.get((k, j), 0)
                    v = b.get((i, j), 0) + (abs(bik) * bkj + bik * abs(bkj)) // 2
                if v:
                    new[(i, j)] = v
        return Quiver(self.vertices, self.frozen, _arrows_from_b(new))

    def induced(self, keep: Iterable[int], frozen: Iterable[int]) -> "Quiver":
        keep = set(keep)
        return Quiver(
            tuple(v for v in self.vertices if v in keep),
            frozenset(frozen),
            frozenset(a for a in self.arrows if a[0] in keep and a[1] in keep),
        )


def _arrows_from_b(b: Mapping[tuple[int, int], int]) -> frozenset:
    return frozenset((a, c, m) for (a, c), m in b.items() if m > 0)


def rule_r_arrows(rs: RootSystem, ix: WordIndexing) -> list[tuple[int, int]]:
    """Arrows of the initial quiver on ``-I ∪ e(i)``, read off the extended word.

    Virtual positions ``-n, ..., -1`` carrying letters ``n, ..., 1`` are put in
    front of the word.  A position is a vertex when its letter occurs again
    later.  Same-letter arrows point from the next occurrence back to the
    earlier one; for adjacent letters there is an arrow ``m -> m'`` whenever
    ``m < m' < m+ < m'+`` in the extended word.
    """
    order = list(range(-rs.rank, 0)) + list(range(1, ix.r + 1))
    pos = {m: k for k, m in enumerate(order)}
    plus: dict[int, int] = {}
    for k, m in enumerate(order):
        c = ix.letter(m)
        nxt = next((x for x in order[k + 1:] if ix.letter(x) == c), None)
        if nxt is not None:
            plus[m] = nxt
    arrows = []
    for m, mp in plus.items():
        if mp in plus:
            arrows.append((mp, m))
    for m in plus:
        for m2 in plus:
            if rs.cartan[ix.letter(m) - 1][ix.letter(m2) - 1] != -1:
                continue
            if pos[m] < pos[m2] < pos[plus[m]] < pos[plus[m2]]:
                arrows.append((m, m2))
    return arrows


# seeds ----------------------------------------------------------------------

@dataclass(frozen=True)
class Seed:
    rs: RootSystem
    quiver: Quiver
    variables: Mapping[int, ClusterVar] = field(hash=False)
    word: tuple[int, ...]
    K: frozenset[int]
    history: tuple[int, ...] = ()

    @property
    def vertices(self) -> tuple[int, ...]:
        """Frozen vertices first, then mutable ones, each ascending."""
        frozen = sorted(v for v in self.quiver.vertices if v in self.quiver.frozen)
        return tuple(frozen) + self.quiver.mutable

    @property
    def frozen(self) -> tuple[int, ...]:
        return tuple(sorted(self.quiver.frozen))

    @property
    def mutable(self) -> tuple[int, ...]:
        return self.quiver.mutable

    def __getitem__(self, v: int) -> ClusterVar:
        try:
            return self.variables[v]
        except KeyError:
            raise UnknownVertex(f"no vertex {v} in this seed") from None

    def same_as(self, other: "Seed") -> bool:
        """Equality of quiver and cluster, ignoring provenance."""
        return (self.quiver == other.quiver
                and all(self.variables[v] == other.variables[v] for v in self.quiver.vertices))

    def mutate(self, k: int) -> "Seed":
        return mutate(self, k)


def initial_seed(rs: RootSystem, word: Sequence[int], K: Iterable[int] = (),
                 quiver_rule: Callable[[RootSystem, WordIndexing], list] = rule_r_arrows) -> Seed:
    """The seed on ``I_K ∪ e_K(i)`` (all of ``-I ∪ e(i)`` when K is empty)."""
    if rs.family == "E":
        raise UnsupportedType("seeds need generalized minors, unavailable in type E")
    word = check_word(rs, word)
    ix = word_indexing(rs, word, K)
    full_vertices = sorted(set(-j for j in rs.index_set) | ix.mutable)
    full = Quiver.from_arrows(full_vertices, (), quiver_rule(rs, ix))
    if ix.K:
        keep, frozen = ix.kept, ix.I_K
    else:
        keep, frozen = set(full_vertices), {-j for j in rs.index_set}
    quiver = full.induced(keep, frozen)
    variables = {}
    for m in quiver.vertices:
        i = ix.letter(m)
        prefix = word[:m] if m > 0 else ()
        variables[m] = MinorLeaf(MinorLabel.make(rs, i, prefix, word))
    return Seed(rs, quiver, variables, word, ix.K)


def exchange_terms(seed: Seed, k: int) -> tuple[ClusterVar, ClusterVar]:
    """Products over arrows into and out of ``k``."""
    q = seed.quiver
    into = [seed.variables[a] for a, m in q.incoming(k) for _ in range(m)]
    out = [seed.variables[c] for c, m in q.outgoing(k) for _ in range(m)]
    return product(into), product(out)


def mutate(seed: Seed, k: int) -> Seed:
    if k not in seed.quiver.vertices:
        raise UnknownVertex(f"no vertex {k} in this seed")
    if k in seed.quiver.frozen:
        raise FrozenVertex(f"vertex {k} is frozen")
    into, out = exchange_terms(seed, k)
    new_var = quotient(SumNode((into, out)), seed.variables[k])
    variables = dict(seed.variables)
    variables[k] = new_var
    return Seed(seed.rs, seed.quiver.mutate(k), variables, seed.word, seed.K,
                seed.history + (k,))


def mutate_sequence(seed: Seed, ks: Iterable[int]) -> Seed:
    for k in ks:
        seed = mutate(seed, k)
    return seed


def evaluate_seed(seed: Seed, g: GroupElement, cache: Optional[dict] = None) -> list[tuple[int, object]]:
    """Exact values of every cluster variable at ``g``, in vertex order."""
    cache = {} if cache is None else cache
    leaf = lambda label: generalized_minor(g, label)
    return [(v, evaluate(seed.variables[v], leaf, cache)) for v in seed.vertices]


def symbolic_seed(seed: Seed, coordinates: GroupElement, max_terms: Optional[int] = 20000,
                  cache: Optional[dict] = None) -> list[tuple[int, MultiPoly]]:
    """Every cluster variable as a polynomial in the coordinates of ``coordinates``.

    Exchange quotients are divided exactly; a failed division means the
    quiver is wrong and raises :class:`InexactDivision`.
    """
    cache = {} if cache is None else cache
    leaf = lambda label: generalized_minor(coordinates, label)
    out = []
    for v in seed.vertices:
        try:
            p = evaluate(seed.variables[v], leaf, cache)
        except InexactDivision as exc:
            raise InexactDivision(
                f"seed defect: exchange relation at vertex {v} is not an exact division "
                f"(history {seed.history})", remainder=exc.remainder
            ) from exc
        if isinstance(p, MultiPoly) and max_terms is not None and p.nterms > max_terms:
            raise TooLarge(f"vertex {v}: {p.nterms} terms exceeds cap {max_terms}")
        out.append((v, p))
    return out
