"""Fundamental representations, one-parameter subgroups and generalized minors.

Every fundamental representation is either *minuscule* (all of type A's
natural representation, type D's vector and two half-spin representations)
or an exterior power of a minuscule one (type A's higher fundamentals and
type D's middle nodes).  Minuscule representations are built on the Weyl
orbit of their highest weight, where ``e_j`` sends the basis vector of weight
``mu`` to the one of weight ``mu + alpha_j`` whenever ``mu(h_j) = -1``.

Bases are sorted by depth below the highest weight, so ``e_j`` is strictly
upper triangular and elements of ``N`` are upper unitriangular.

Group elements keep one exact matrix per *minuscule* representation; the
entries of an exterior power are minors of the underlying matrix and are
computed on demand.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import LengthMismatch, NotReduced, NotUnitriangular, UnsupportedType
from .exactalg import ExactMatrix, MultiPoly, PolyRing, det, is_zero, parse_rational
from .rootsys import (
    RootSystem,
    Weight,
    WeylWord,
    apply_word,
    check_word,
    longest_word,
    type_a_permutation,
    word_status,
    word_to_weight,
)


@dataclass(frozen=True, eq=False)
class Representation:
    rs: RootSystem
    index: int
    weights: tuple[Weight, ...]
    E: tuple[np.ndarray, ...] = field(repr=False)
    F: tuple[np.ndarray, ...] = field(repr=False)
    depth: tuple[int, ...] = field(repr=False)
    highest: int = 0
    base: Optional["Representation"] = field(default=None, repr=False)
    subsets: Optional[tuple[tuple[int, ...], ...]] = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def minuscule(self) -> bool:
        return self.base is None

    @property
    def highest_weight(self) -> Weight:
        return self.weights[self.highest]

    def generator(self, j: int, lower: bool = False) -> np.ndarray:
        return (self.F if lower else self.E)[j - 1]

    def nonzeros(self, j: int, lower: bool = False) -> tuple[tuple[int, int, int], ...]:
        return _nonzeros(self, j, lower)


@lru_cache(maxsize=None)
def _nonzeros(rep: Representation, j: int, lower: bool):
    m = rep.generator(j, lower)
    rows, cols = np.nonzero(m)
    return tuple((int(p), int(q), int(m[p, q])) for p, q in zip(rows, cols))


def _minuscule_rep(rs: RootSystem, i: int) -> Representation:
    top = rs.fundamental_weight(i)
    depth_of = {top: 0}
    order = [top]
    frontier = [top]
    while frontier:
        nxt = []
        for mu in frontier:
            for j in rs.index_set:
                if mu[j - 1] == 1:
                    nu = tuple(a - b for a, b in zip(mu, rs.simple_root(j)))
                    if nu not in depth_of:
                        depth_of[nu] = depth_of[mu] + 1
                        nxt.append(nu)
        frontier = sorted(nxt, reverse=True)
        order.extend(frontier)
    if any(abs(c) > 1 for mu in order for c in mu):
        raise UnsupportedType(f"fundamental weight {i} of {rs.name} is not minuscule")
    pos = {mu: k for k, mu in enumerate(order)}
    d = len(order)
    E, F = [], []
    for j in rs.index_set:
        e = np.zeros((d, d), dtype=np.int64)
        for mu, k in pos.items():
            if mu[j - 1] == -1:
                up = tuple(a + b for a, b in zip(mu, rs.simple_root(j)))
                e[pos[up], k] = 1
        E.append(e)
        F.append(e.T.copy())
    return Representation(rs, i, tuple(order), tuple(E), tuple(F),
                          tuple(depth_of[mu] for mu in order))


def _wedge_coeff(target: list[int], position: int, replacement: int) -> tuple[int, tuple[int, ...]]:
    # replace target[position] by replacement and sort, returning the sign
    new = list(target)
    new[position] = replacement
    if len(set(new)) < len(new):
        return 0, ()
    perm = sorted(range(len(new)), key=lambda k: new[k])
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return (-1) ** inversions, tuple(sorted(new))


def _exterior_power(base: Representation, k: int, index: int) -> Representation:
    rs = base.rs
    subsets = list(itertools.combinations(range(base.dim), k))
    subsets.sort(key=lambda s: (sum(base.depth[x] for x in s), s))
    pos = {s: n for n, s in enumerate(subsets)}
    d = len(subsets)
    top_depth = sum(base.depth[x] for x in subsets[0])
    weights = tuple(
        tuple(sum(base.weights[x][c] for x in s) for c in range(rs.rank)) for s in subsets
    )

    def lift(j, lower):
        out = np.zeros((d, d), dtype=np.int64)
        for (p, q, v) in base.nonzeros(j, lower):
            for s in subsets:
                if q not in s:
                    continue
                sign, t = _wedge_coeff(list(s), s.index(q), p)
                if sign:
                    out[pos[t], pos[s]] += sign * v
        return out

    E = tuple(lift(j, False) for j in rs.index_set)
    F = tuple(lift(j, True) for j in rs.index_set)
    depth = tuple(sum(base.depth[x] for x in s) - top_depth for s in subsets)
    rep = Representation(rs, index, weights, E, F, depth, 0, base, tuple(subsets))
    if rep.highest_weight != rs.fundamental_weight(index):
        raise AssertionError(f"exterior power has highest weight {rep.highest_weight}")
    return rep


@lru_cache(maxsize=None)
def build_rep(rs: RootSystem, i: int) -> Representation:
    """The fundamental representation ``L(varpi_i)`` of ``rs``."""
    if rs.family == "E":
        raise UnsupportedType(
            "representation matrices are not available for type E; "
            "only root-system combinatorics (rootsys) supports E"
        )
    rs.fundamental_weight(i)
    if rs.family == "A":
        natural = _minuscule_rep(rs, 1)
        return natural if i == 1 else _exterior_power(natural, i, i)
    if rs.family == "D":
        n = rs.rank
        if i in (1, 2, n):
            return _minuscule_rep(rs, i)
        # node i sits at distance n - i from the vector node n
        return _exterior_power(build_rep(rs, n), n + 1 - i, i)
    raise UnsupportedType(f"no representations for {rs.name}")


def expected_dimension(rs: RootSystem, i: int) -> int:
    n = rs.rank
    if rs.family == "A":
        return comb(n + 1, i)
    if rs.family == "D":
        if i in (1, 2):
            return 2 ** (n - 1)
        return comb(2 * n, n + 1 - i)
    raise UnsupportedType(rs.name)


def check_representation(rep: Representation) -> list[str]:
    """Exact check of the Chevalley relations; returns the list of failures."""
    rs = rep.rs
    problems = []
    d = rep.dim
    if d != expected_dimension(rs, rep.index):
        problems.append(f"dimension {d} != {expected_dimension(rs, rep.index)}")
    for j in rs.index_set:
        e, f = rep.generator(j), rep.generator(j, True)
        if np.any(np.tril(e)):
            problems.append(f"E{j} not strictly upper triangular")
        if not np.array_equal(f, e.T):
            problems.append(f"F{j} is not the transpose of E{j}")
        for k in rs.index_set:
            comm = e @ rep.generator(k, True) - rep.generator(k, True) @ e
            if j == k:
                want = np.diag([mu[j - 1] for mu in rep.weights])
            else:
                want = np.zeros((d, d), dtype=np.int64)
            if not np.array_equal(comm, want):
                problems.append(f"[E{j},F{k}] wrong")
            if j != k:
                power = 1 - rs.cartan[j - 1][k - 1]
                for lower in (False, True):
                    x = rep.generator(j, lower)
                    y = rep.generator(k, lower)
                    for _ in range(power):
                        y = x @ y - y @ x
                    if np.any(y):
                        problems.append(f"Serre ({j},{k}) fails for {'F' if lower else 'E'}")
        # weight bookkeeping: E_j shifts weights by alpha_j
        for p, q, _ in rep.nonzeros(j):
            shifted = tuple(a + b for a, b in zip(rep.weights[q], rs.simple_root(j)))
            if rep.weights[p] != shifted:
                problems.append(f"E{j} breaks weight grading at ({p},{q})")
    if rep.highest_weight != rs.fundamental_weight(rep.index):
        problems.append("highest weight is not the fundamental weight")
    stacked = np.vstack([rep.generator(j) for j in rs.index_set])
    kernel = d - _exact_rank(stacked)
    if kernel != 1:
        problems.append(f"highest-weight space has dimension {kernel}")
    elif np.any(stacked[:, rep.highest]):
        problems.append("highest-weight vector is not killed by all E_j")
    return problems


def _exact_rank(m: np.ndarray) -> int:
    rows = [[Fraction(int(x)) for x in r] for r in m if np.any(r)]
    rank = 0
    ncols = m.shape[1]
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


# one-parameter subgroups and Weyl representatives -------------------------

def one_param(rep: Representation, i: int, t, sign: int = 1) -> ExactMatrix:
    """``x_i(t) = exp(t e_i)`` (sign=+1) or ``y_i(t) = exp(t f_i)`` (sign=-1)."""
    gen = rep.generator(i, lower=sign < 0)
    d = rep.dim
    out = [[int(p == q) for q in range(d)] for p in range(d)]
    power = np.eye(d, dtype=np.int64)
    k = 0
    while True:
        k += 1
        power = power @ gen
        if not np.any(power):
            break
        coeff = Fraction(1, factorial(k))
        tk = t ** k
        for p, q in zip(*np.nonzero(power)):
            out[p][q] = out[p][q] + tk * (coeff * int(power[p, q]))
    return ExactMatrix(out)


@lru_cache(maxsize=None)
def weyl_reps(rep: Representation, i: int) -> tuple[ExactMatrix, ExactMatrix]:
    """``(s_i underline, s_i double-underline)`` as matrices of ``rep``."""
    x_m, x_p = one_param(rep, i, -1), one_param(rep, i, 1)
    y_p, y_m = one_param(rep, i, 1, -1), one_param(rep, i, -1, -1)
    return x_m @ y_p @ x_m, x_p @ y_m @ x_p


def weyl_rep_word(rep: Representation, word: Sequence[int], double: bool = False) -> ExactMatrix:
    out = ExactMatrix.identity(rep.dim)
    for c in check_word(rep.rs, word):
        out = out @ weyl_reps(rep, c)[1 if double else 0]
    return out


def _exp_act(rep: Representation, j: int, t: int, vec: dict, lower: bool, row: bool) -> dict:
    # exp(t X) acting on a sparse column vector (row=False) or row vector (row=True)
    nz = rep.nonzeros(j, lower)
    out = dict(vec)
    term = dict(vec)
    k = 0
    while term:
        k += 1
        nxt: dict = {}
        for p, q, v in nz:
            src, dst = (p, q) if row else (q, p)
            if src in term:
                nxt[dst] = nxt.get(dst, 0) + term[src] * v
        term = {a: Fraction(b) * t / k for a, b in nxt.items() if b != 0}
        for a, b in term.items():
            out[a] = out.get(a, 0) + b
    return {a: b for a, b in out.items() if b != 0}


def _bar_column(rep: Representation, word: WeylWord) -> dict:
    """``w underline`` applied to the highest-weight vector."""
    vec = {rep.highest: Fraction(1)}
    for c in reversed(word):
        vec = _exp_act(rep, c, -1, vec, False, False)
        vec = _exp_act(rep, c, 1, vec, True, False)
        vec = _exp_act(rep, c, -1, vec, False, False)
    return vec


def _dbar_inverse_row(rep: Representation, word: WeylWord) -> dict:
    """Highest-weight row vector times ``(u^{-1}) double-underline``."""
    vec = {rep.highest: Fraction(1)}
    for c in reversed(word):
        vec = _exp_act(rep, c, 1, vec, False, True)
        vec = _exp_act(rep, c, -1, vec, True, True)
        vec = _exp_act(rep, c, 1, vec, False, True)
    return vec


@lru_cache(maxsize=None)
def _minor_vectors(rep: Representation, u_word: WeylWord, v_word: WeylWord):
    row = _dbar_inverse_row(rep, u_word)
    col = _bar_column(rep, v_word)
    return tuple(sorted(row.items())), tuple(sorted(col.items()))


# minor labels ---------------------------------------------------------------

@dataclass(frozen=True)
class MinorLabel:
    """The generalized minor ``Delta_{u(varpi_i), v(varpi_i)}``.

    Equality only looks at ``(i, u(varpi_i), v(varpi_i))``: the minor does not
    depend on the reduced words chosen for ``u`` and ``v``.
    """

    rs: RootSystem = field(compare=False, repr=False)
    i: int
    u_word: WeylWord = field(compare=False)
    v_word: WeylWord = field(compare=False)
    u_weight: Weight = field(repr=False)
    v_weight: Weight = field(repr=False)

    @classmethod
    def make(cls, rs: RootSystem, i: int, u_word: Iterable[int] = (), v_word: Iterable[int] = ()):
        u_word, v_word = check_word(rs, u_word), check_word(rs, v_word)
        for w in (u_word, v_word):
            if not word_status(rs, w)[1]:
                raise NotReduced(f"minor labels need reduced words, got {w}")
        top = rs.fundamental_weight(i)
        return cls(rs, i, u_word, v_word, apply_word(rs, u_word, top), apply_word(rs, v_word, top))

    @classmethod
    def from_weights(cls, rs: RootSystem, i: int, u_weight: Iterable[int], v_weight: Iterable[int]):
        return cls.make(rs, i, word_to_weight(rs, i, u_weight), word_to_weight(rs, i, v_weight))

    @classmethod
    def from_sets(cls, rs: RootSystem, rows: Iterable[int], cols: Iterable[int]):
        """Type A classical minor with the given row and column sets."""
        rows, cols = sorted(rows), sorted(cols)
        if rs.family != "A" or len(rows) != len(cols) or not rows:
            raise UnsupportedType("row/column sets describe type A minors of equal size")

        def weight(subset):
            return tuple(int(j in subset) - int(j + 1 in subset) for j in rs.index_set)

        return cls.from_weights(rs, len(rows), weight(rows), weight(cols))

    def row_col_sets(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Row and column sets of the classical minor (type A only)."""
        u = type_a_permutation(self.rs, self.u_word)
        v = type_a_permutation(self.rs, self.v_word)
        return tuple(sorted(u[:self.i])), tuple(sorted(v[:self.i]))

    @property
    def display(self) -> str:
        if self.rs.family == "A":
            rows, cols = self.row_col_sets()
            sep = "," if self.rs.rank + 1 > 9 else ""
            return f"D_{{{sep.join(map(str, rows))};{sep.join(map(str, cols))}}}"
        def fmt(word):
            if len(word) == self.rs.longest_length:
                return "w0"
            return "e" if not word else "s" + ".".join(map(str, word))
        return f"D_{{{fmt(self.u_word)}(w{self.i});{fmt(self.v_word)}(w{self.i})}}"

    def __str__(self):
        return self.display


# group elements ---------------------------------------------------------------

class GroupElement:
    """A point of ``N`` known through its minuscule-representation matrices.

    Built either from factorization parameters (``x_{i_1}(t_1)...x_{i_k}(t_k)``,
    materialized lazily per representation) or, in type A, from an explicit
    natural-representation matrix.
    """

    def __init__(self, rs: RootSystem, word: Sequence[int] = (), params: Sequence = (),
                 matrices: Optional[Mapping[int, ExactMatrix]] = None):
        if len(word) != len(params):
            raise LengthMismatch(f"{len(word)} letters but {len(params)} parameters")
        self.rs = rs
        self.word = check_word(rs, word)
        self.params = tuple(params)
        self._given = dict(matrices or {})
        self._cache: dict[int, ExactMatrix] = {}
        self._lock = threading.Lock()

    def matrix(self, rep: Representation) -> ExactMatrix:
        if not rep.minuscule:
            rep = rep.base
        key = rep.index
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        if key in self._given:
            m = self._given[key]
        elif self._given:
            raise UnsupportedType(
                f"element was given by explicit matrices; no data for representation {key}"
            )
        else:
            m = _product(rep, self.word, self.params)
        with self._lock:
            self._cache.setdefault(key, m)
        return m

    def entry(self, rep: Representation, p: int, q: int):
        m = self.matrix(rep)
        if rep.minuscule:
            return m[p, q]
        return det(m.submatrix(rep.subsets[p], rep.subsets[q]))

    def left_multiply(self, k: int, t) -> "GroupElement":
        """The element ``x_k(t) * self``."""
        if self._given:
            mats = {key: one_param(build_rep(self.rs, key), k, t) @ m for key, m in self._given.items()}
            return GroupElement(self.rs, matrices=mats)
        return GroupElement(self.rs, (k,) + self.word, (t,) + self.params)

    def __repr__(self):
        if self._given:
            return f"GroupElement({self.rs.name}, explicit)"
        return f"GroupElement({self.rs.name}, word={self.word})"


def _product(rep: Representation, word: WeylWord, params: Sequence) -> ExactMatrix:
    d = rep.dim
    rows = [[int(p == q) for q in range(d)] for p in range(d)]
    for c, t in zip(word, params):
        nz = rep.nonzeros(c)
        # minuscule generators square to zero, so x_c(t) = 1 + t E_c
        old = [[row[p] for p, _, _ in nz] for row in rows]
        for r, row in enumerate(rows):
            for (p, q, v), src in zip(nz, old[r]):
                if not is_zero(src):
                    row[q] = row[q] + src * t * v
    return ExactMatrix(rows)


def element_from_params(rs: RootSystem, word: Sequence[int], t_list: Sequence) -> GroupElement:
    """``x_{i_1}(t_1) ... x_{i_k}(t_k)``; entries of ``t_list`` may be rationals,
    rational strings or polynomials."""
    if rs.family == "E":
        raise UnsupportedType("type E group elements need representation matrices")
    ts = [parse_rational(t) if isinstance(t, str) else t for t in t_list]
    ts = [Fraction(t) if isinstance(t, int) else t for t in ts]
    return GroupElement(rs, word, ts)


def symbolic_params(word: Sequence[int], prefix: str = "t") -> tuple[PolyRing, tuple[MultiPoly, ...]]:
    ring = PolyRing(f"{prefix}{k}" for k in range(1, len(word) + 1))
    return ring, ring.gens()


def element_from_matrix(rs: RootSystem, matrix) -> GroupElement:
    """A type A element of ``N`` from its natural-representation matrix."""
    if rs.family != "A":
        raise UnsupportedType("explicit matrices are only accepted in type A")
    m = matrix if isinstance(matrix, ExactMatrix) else ExactMatrix(
        [[parse_rational(x) if isinstance(x, str) else x for x in row] for row in matrix]
    )
    n = rs.rank + 1
    if m.shape != (n, n):
        raise NotUnitriangular(f"expected a {n}x{n} matrix, got {m.shape[0]}x{m.shape[1]}")
    if not m.is_unitriangular():
        raise NotUnitriangular("matrix is not upper unitriangular")
    return GroupElement(rs, matrices={1: m})


def unipotent_coordinates(rs: RootSystem, K: Iterable[int] = (),
                          extra: Sequence[str] = ()) -> tuple[PolyRing, GroupElement]:
    """Generic element of the unipotent radical ``N_K`` in matrix coordinates (type A).

    Entry ``(a, b)`` is a variable unless ``a`` and ``b`` fall in the same
    diagonal block of the Levi factor of ``K``.  Names in ``extra`` are
    appended to the ring as additional variables.
    """
    if rs.family != "A":
        raise UnsupportedType("matrix coordinates only exist in type A")
    K = set(K)
    n = rs.rank + 1
    block = [0] * (n + 1)
    for a in range(2, n + 1):
        block[a] = block[a - 1] + (0 if (a - 1) in K else 1)
    sep = "_" if n > 9 else ""
    names = [f"n{a}{sep}{b}" for a in range(1, n + 1) for b in range(a + 1, n + 1)
             if block[a] != block[b]]
    ring = PolyRing(list(names) + list(extra))
    rows = []
    for a in range(1, n + 1):
        row = []
        for b in range(1, n + 1):
            name = f"n{a}{sep}{b}"
            row.append(1 if a == b else (ring.var(name) if name in names else 0))
        rows.append(row)
    return ring, GroupElement(rs, matrices={1: ExactMatrix(rows)})


def generalized_minor(g: GroupElement, label: MinorLabel):
    """Highest-weight matrix coefficient of ``(u^{-1})(double bar) g (v bar)``."""
    rep = build_rep(g.rs, label.i)
    row, col = _minor_vectors(rep, label.u_word, label.v_word)
    total = 0
    for p, bp in row:
        for q, aq in col:
            x = g.entry(rep, p, q)
            if not is_zero(x):
                total = total + x * (bp * aq)
    if isinstance(total, Fraction) and total.denominator == 1:
        return total.numerator
    return total


def w0_label(rs: RootSystem, i: int, u_word: Iterable[int] = ()) -> MinorLabel:
    return MinorLabel.make(rs, i, u_word, longest_word(rs))
