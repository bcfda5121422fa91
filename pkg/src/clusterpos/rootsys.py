"""Simply-laced root systems, Weyl group words and their index combinatorics.

Weights are integer vectors in the fundamental-weight basis, so the simple
reflection ``s_i`` acts by ``lam - lam[i] * alpha_i`` where ``alpha_i`` is
row ``i`` of the Cartan matrix.  Roots (when needed as roots) are stored in
the simple-root basis.

Letters of words and vertex indices are 1-based throughout, as in the
mathematical literature; Python containers are indexed from 0 internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import IndexOutOfRange, NotAdapted, NotReduced, UnsupportedType

Weight = tuple[int, ...]
WeylWord = tuple[int, ...]


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def index_set(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    @property
    def longest_length(self) -> int:
        return len(self.positive_roots)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def simple_root(self, i: int) -> Weight:
        """``alpha_i`` in fundamental-weight coordinates."""
        _check_index(self, i)
        return self.cartan[i - 1]

    def fundamental_weight(self, i: int) -> Weight:
        _check_index(self, i)
        return tuple(int(j == i) for j in self.index_set)

    def neighbours(self, i: int) -> tuple[int, ...]:
        return tuple(j for j in self.index_set if j != i and self.cartan[i - 1][j - 1] != 0)


def _edges(family: str, rank: int) -> list[tuple[int, int]]:
    if family == "A" and rank >= 1:
        return [(j, j + 1) for j in range(1, rank)]
    if family == "D" and rank >= 4:
        # two spin leaves 1, 2 on the branch node 3, then the chain 3-4-...-n
        return [(1, 3), (2, 3)] + [(j, j + 1) for j in range(3, rank)]
    if family == "E" and rank in (6, 7, 8):
        return [(1, 3), (3, 4), (2, 4)] + [(j, j + 1) for j in range(4, rank)]
    raise UnsupportedType(
        f"unsupported root system {family}{rank}: expected A_n (n>=1), D_n (n>=4), E6, E7 or E8"
    )


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    family = str(family).upper()
    rank = int(rank)
    edges = _edges(family, rank)
    cartan = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for a, b in edges:
        cartan[a - 1][b - 1] = cartan[b - 1][a - 1] = -1
    cartan_t = tuple(tuple(row) for row in cartan)

    # close the simple roots under simple reflections, keeping positive ones
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(rank):
                pairing = sum(cartan_t[i][j] * beta[j] for j in range(rank))
                gamma = tuple(beta[j] - pairing * (j == i) for j in range(rank))
                if all(c >= 0 for c in gamma) and any(gamma) and gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    roots = tuple(sorted(seen, key=lambda b: (sum(b), tuple(-c for c in b))))
    return RootSystem(family, rank, cartan_t, roots)


def _check_index(rs: RootSystem, i: int) -> None:
    if not isinstance(i, int) or not 1 <= i <= rs.rank:
        raise IndexOutOfRange(f"index {i!r} outside 1..{rs.rank} for {rs.name}")


def check_word(rs: RootSystem, word: Iterable[int]) -> WeylWord:
    word = tuple(int(c) for c in word)
    for c in word:
        _check_index(rs, c)
    return word


def reflect(rs: RootSystem, i: int, lam: Sequence[int]) -> Weight:
    _check_index(rs, i)
    if len(lam) != rs.rank:
        raise IndexOutOfRange(f"weight of length {len(lam)} for rank {rs.rank}")
    alpha = rs.cartan[i - 1]
    c = lam[i - 1]
    return tuple(x - c * a for x, a in zip(lam, alpha))


def apply_word(rs: RootSystem, word: Iterable[int], lam: Sequence[int]) -> Weight:
    """Return ``s_{i_1}(s_{i_2}(...s_{i_m}(lam)))``."""
    word = check_word(rs, word)
    lam = tuple(lam)
    for c in reversed(word):
        lam = reflect(rs, c, lam)
    return lam


def _reflect_root(rs: RootSystem, i: int, beta: Sequence[int]) -> tuple[int, ...]:
    row = rs.cartan[i - 1]
    pairing = sum(a * b for a, b in zip(row, beta))
    return tuple(b - pairing * (j == i - 1) for j, b in enumerate(beta))


def word_status(rs: RootSystem, word: Iterable[int]) -> tuple[int, bool]:
    """Length of the product of ``word`` and whether ``word`` is reduced."""
    word = check_word(rs, word)
    length = 0
    for beta in rs.positive_roots:
        for c in reversed(word):
            beta = _reflect_root(rs, c, beta)
        if all(x <= 0 for x in beta):
            length += 1
    return length, length == len(word)


def _rho(rs: RootSystem) -> Weight:
    return (1,) * rs.rank


def _descend(rs: RootSystem, mu: Weight, allowed: Optional[set[int]] = None) -> list[int]:
    # mu = w(rho); peel left descents, which are the negative coordinates of mu
    word = []
    while True:
        for i in rs.index_set:
            if mu[i - 1] < 0 and (allowed is None or i in allowed):
                word.append(i)
                mu = reflect(rs, i, mu)
                break
        else:
            return word


def word_to_weight(rs: RootSystem, i: int, mu: Sequence[int]) -> WeylWord:
    """A reduced word for the shortest ``w`` with ``w(varpi_i) = mu``.

    Raises ``ValueError`` when ``mu`` is not in the Weyl orbit of ``varpi_i``.
    """
    top = rs.fundamental_weight(i)
    mu = tuple(mu)
    word = []
    while mu != top:
        j = next((j for j in rs.index_set if mu[j - 1] < 0), None)
        if j is None:
            raise ValueError(f"{mu} is not in the orbit of varpi_{i}")
        word.append(j)
        mu = reflect(rs, j, mu)
    return tuple(word)


def parabolic_longest_word(rs: RootSystem, K: Iterable[int]) -> WeylWord:
    """A reduced word for the longest element of the parabolic subgroup ``W_K``."""
    K = set(K)
    for k in K:
        _check_index(rs, k)
    mu = _rho(rs)
    grown = []
    while True:
        for k in sorted(K):
            if mu[k - 1] > 0:
                mu = reflect(rs, k, mu)
                grown.append(k)
                break
        else:
            break
    # mu = s_{grown[-1]} ... s_{grown[0]} rho
    return tuple(reversed(grown))


def longest_word(rs: RootSystem) -> WeylWord:
    return parabolic_longest_word(rs, rs.index_set)


def adapted_longest_word(rs: RootSystem, K: Iterable[int] = ()) -> WeylWord:
    """A reduced word for ``w0`` whose prefix is a reduced word for ``w0^K``."""
    prefix = parabolic_longest_word(rs, K)
    # (w0^K)^{-1} w0 rho = w0^K (-rho)
    mu = apply_word(rs, prefix, tuple(-1 for _ in range(rs.rank)))
    suffix = _descend(rs, mu)
    return prefix + tuple(suffix)


def is_adapted(rs: RootSystem, word: Sequence[int], K: Iterable[int]) -> bool:
    K = set(K)
    word = check_word(rs, word)
    rK = len(parabolic_longest_word(rs, K))
    length, reduced = word_status(rs, word)
    if not reduced or length != rs.longest_length:
        return False
    prefix = word[:rK]
    return all(c in K for c in prefix) and word_status(rs, prefix)[1]


@dataclass(frozen=True)
class WordIndexing:
    """Index combinatorics attached to a reduced word of ``w0`` (and a subset K).

    ``k_plus[k]`` is ``None`` when position ``k`` is the last occurrence of
    its letter.  ``k_minus`` follows the negative convention for first
    occurrences: ``k_minus[k] = -i_k`` there.
    """

    word: WeylWord
    r: int
    last: dict[int, int]
    mutable: frozenset[int]
    k_minus: dict[int, int]
    k_plus: dict[int, Optional[int]]
    K: frozenset[int] = frozenset()
    r_K: int = 0
    t_K: dict[int, int] = field(default_factory=dict)
    I_K: frozenset[int] = frozenset()
    e_K: frozenset[int] = frozenset()

    def letter(self, m: int) -> int:
        """Letter carried by position ``m``; virtual position ``-j`` carries ``j``."""
        return -m if m < 0 else self.word[m - 1]

    @property
    def kept(self) -> frozenset[int]:
        return self.I_K | self.e_K


def word_indexing(rs: RootSystem, word: Sequence[int], K: Iterable[int] = ()) -> WordIndexing:
    word = check_word(rs, word)
    K = frozenset(int(k) for k in K)
    for k in K:
        _check_index(rs, k)
    length, reduced = word_status(rs, word)
    if not reduced or length != rs.longest_length:
        raise NotReduced(f"{word} is not a reduced word for w0 in {rs.name}")
    if K and not is_adapted(rs, word, K):
        raise NotAdapted(f"{word} is not adapted to K={sorted(K)}")

    r = len(word)
    last = {}
    for pos, c in enumerate(word, start=1):
        last[c] = pos
    mutable = frozenset(range(1, r + 1)) - set(last.values())

    k_minus, k_plus = {}, {}
    previous: dict[int, int] = {}
    for pos, c in enumerate(word, start=1):
        k_minus[pos] = previous.get(c, -c)
        previous[c] = pos
    for pos, c in enumerate(word, start=1):
        k_plus[pos] = next((q for q in range(pos + 1, r + 1) if word[q - 1] == c), None)

    rK = len(parabolic_longest_word(rs, K))
    t_K = {}
    for i in rs.index_set:
        if i in K:
            t_K[i] = max(t for t in range(1, rK + 1) if word[t - 1] == i)
        else:
            t_K[i] = -i
    I_K = frozenset(t_K.values())
    e_K = frozenset(m for m in mutable if m > rK)
    return WordIndexing(word, r, last, mutable, k_minus, k_plus, K, rK, t_K, I_K, e_K)


def type_a_permutation(rs: RootSystem, word: Iterable[int]) -> tuple[int, ...]:
    """Images ``w(1), ..., w(n+1)`` of the permutation of a type A word."""
    if rs.family != "A":
        raise UnsupportedType("permutation model only exists in type A")
    word = check_word(rs, word)
    images = []
    for x in range(1, rs.rank + 2):
        for c in reversed(word):
            if x == c:
                x = c + 1
            elif x == c + 1:
                x = c
        images.append(x)
    return tuple(images)
