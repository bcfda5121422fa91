"""Acceptance suites shared by ``clusterpos selfcheck`` and the test-suite.

Each suite returns a :class:`SuiteResult`; nothing here prints.  Suites that
build seeds take a ``quiver_rule`` so a deliberately broken rule can be
swapped in as a negative control.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable, Optional

from .exactalg import det, poly_arith
from .flagpos import (
    ACCEPTED,
    REJECTED,
    full_flag_test,
    invariance_check,
    invariance_symbolic,
    partial_flag_seed,
    random_nonzero_params,
    random_positive_params,
    seed_test,
    symbolic_criterion,
    tp_element,
)
from .repmat import (
    MinorLabel,
    build_rep,
    check_representation,
    element_from_matrix,
    element_from_params,
    expected_dimension,
    generalized_minor,
    symbolic_params,
    unipotent_coordinates,
)
from .rootsys import (
    adapted_longest_word,
    build_root_system,
    longest_word,
    type_a_permutation,
    word_indexing,
    word_status,
)
from .seeds import (
    MinorLeaf,
    ProductNode,
    evaluate,
    exchange_terms,
    initial_seed,
    mutate_sequence,
    rule_r_arrows,
    symbolic_seed,
)

A3_WORD = (2, 1, 3, 2, 1, 3)
A3_K = (2,)
D4_WORD = (1, 2, 3, 1, 2, 3, 4, 3, 2, 1, 3, 4)
D4_K = (1, 2, 3)
COUNTEREXAMPLE = [[1, 1, 1, 2], [0, 1, 0, -1], [0, 0, 1, 1], [0, 0, 0, 1]]


@dataclass(frozen=True)
class SuiteResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    @property
    def within_budget(self) -> bool:
        return self.seconds <= self.budget

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        over = "" if self.within_budget else f" (over budget {self.budget:g}s)"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} [{self.seconds:.2f}s]{over}"


def drop_inclined_arrows(rs, ix):
    """Broken quiver rule keeping only same-letter arrows (negative control)."""
    return [(a, b) for a, b in rule_r_arrows(rs, ix) if ix.letter(a) == ix.letter(b)]


def _a3():
    return build_root_system("A", 3)


def _d4():
    return build_root_system("D", 4)


# 1 -------------------------------------------------------------------------

def suite_golden_criterion(quiver_rule=rule_r_arrows) -> tuple[bool, str]:
    ring, _ = unipotent_coordinates(_a3(), A3_K)
    n = {name: ring.var(name) for name in ring.names}
    golden = {
        n["n34"], n["n12"], n["n14"],
        n["n13"] * n["n34"] - n["n14"],
        n["n14"] - n["n13"] * n["n34"] - n["n12"] * n["n24"],
    }
    got = [p for _, p in symbolic_criterion(_a3(), A3_WORD, A3_K, (), quiver_rule)]
    ok = len(got) == 5 and set(got) == golden
    return ok, "five polynomials match" if ok else f"got {sorted(map(str, got))}"


# 2 -------------------------------------------------------------------------

PLUCKER_SETS = [((1,), (2,)), ((1,), (3,)), ((1,), (4,)),
                ((1, 2, 3), (1, 2, 4)), ((1, 2, 3), (1, 3, 4)), ((1, 2, 3), (2, 3, 4))]


def suite_counterexample(quiver_rule=rule_r_arrows) -> tuple[bool, str]:
    rs = _a3()
    g = element_from_matrix(rs, COUNTEREXAMPLE)
    plucker = [generalized_minor(g, MinorLabel.from_sets(rs, r, c)) for r, c in PLUCKER_SETS]
    seed = partial_flag_seed(rs, A3_WORD, A3_K, (), quiver_rule)
    report = seed_test(seed, g)
    w = report.witness
    ring, coords = unipotent_coordinates(rs, A3_K)
    n = {name: ring.var(name) for name in ring.names}
    target = n["n13"] * n["n34"] - n["n14"]
    polys = dict(symbolic_seed(seed, coords))
    ok = (all(x > 0 for x in plucker) and report.verdict == REJECTED and w is not None
          and w.value == -1 and polys.get(w.vertex) == target)
    return ok, f"Plucker values {plucker}, verdict {report.verdict}, witness {w and w.to_dict()}"


# 3 -------------------------------------------------------------------------

# flag minors of the 8-dimensional representation at node 4 that the two
# exchanges must produce: D_{varpi_4, mu} for these extremal weights mu
D4_NEW_WEIGHTS = {7: (0, 0, -1, 1), 8: (-1, -1, 1, 0)}
D4_EXCHANGE = {7: ({6}, {-4}), 8: ({4, 5}, {6})}


def _leaf_vertices(seed, node) -> set[int]:
    parts = node.factors if isinstance(node, ProductNode) else (node,)
    out = set()
    for p in parts:
        if not isinstance(p, MinorLeaf):
            return {None}
        out |= {v for v in seed.vertices if seed.variables[v] == p}
    return out


def suite_d4_relations(quiver_rule=rule_r_arrows, points: int = 50,
                       rng: Optional[random.Random] = None) -> tuple[bool, str]:
    rs = _d4()
    rng = rng or random.Random(92)
    seed = initial_seed(rs, D4_WORD, D4_K, quiver_rule)
    hw = build_rep(rs, 4).highest_weight
    oracle = {k: MinorLabel.from_weights(rs, 4, hw, mu) for k, mu in D4_NEW_WEIGHTS.items()}
    problems = []

    # the two sides of each exchange relation
    for k, (want_in, want_out) in D4_EXCHANGE.items():
        if k not in seed.mutable:
            problems.append(f"vertex {k} is not mutable")
            continue
        sides = {frozenset(_leaf_vertices(seed, t)) for t in exchange_terms(seed, k)}
        if sides != {frozenset(want_in), frozenset(want_out)}:
            problems.append(f"exchange at {k} uses monomials {sorted(map(sorted, sides))}")
    if problems:
        return False, "; ".join(problems)

    # symbolically, in the parameters of the seed word
    ring, ts = symbolic_params(D4_WORD)
    g = element_from_params(rs, D4_WORD, ts)
    for k in D4_EXCHANGE:
        new = dict(symbolic_seed(seed.mutate(k), g))[k]
        if new != generalized_minor(g, oracle[k]):
            problems.append(f"symbolic new variable at {k} is {new}")

    # numerically, at points from an unrelated reduced word, against the oracle minors
    other = longest_word(rs)
    for _ in range(points):
        x = element_from_params(rs, other, random_nonzero_params(rng, len(other)))
        val = lambda v: evaluate(seed.variables[v], lambda lab: generalized_minor(x, lab))
        lhs7 = val(7) * generalized_minor(x, oracle[7])
        lhs8 = val(8) * generalized_minor(x, oracle[8])
        if lhs7 != val(6) + val(-4) or lhs8 != val(6) + val(4) * val(5):
            problems.append(f"numeric relation fails at params {x.params}")
            break
    ok = not problems
    return ok, f"both relations hold symbolically and at {points} points" if ok else "; ".join(problems)


# 4 -------------------------------------------------------------------------

def suite_index_goldens() -> tuple[bool, str]:
    a = word_indexing(_a3(), A3_WORD, A3_K)
    d = word_indexing(_d4(), D4_WORD, D4_K)
    checks = {
        "A3 e": set(a.mutable) == {1, 2, 3},
        "A3 I_K": set(a.I_K) == {-1, 1, -3},
        "A3 e_K": set(a.e_K) == {2, 3},
        "D4 e": set(d.mutable) == set(range(1, 9)),
        "D4 I_K": set(d.I_K) == {-4, 4, 5, 6},
        "D4 e_K": set(d.e_K) == {7, 8},
    }
    bad = [k for k, v in checks.items() if not v]
    return not bad, "all six sets match" if not bad else f"mismatch in {bad}"


# 5 -------------------------------------------------------------------------

SOUNDNESS_CASES = [("A", 2, ()), ("A", 3, ()), ("A", 4, ()), ("A", 3, A3_K), ("D", 4, D4_K)]


def _case_word(family, rank, K):
    if (family, rank, K) == ("A", 3, A3_K):
        return A3_WORD
    if (family, rank, K) == ("D", 4, D4_K):
        return D4_WORD
    return adapted_longest_word(build_root_system(family, rank), K)


def suite_soundness(points: int = 50, max_len: int = 8, quiver_rule=rule_r_arrows,
                    rng: Optional[random.Random] = None) -> tuple[bool, str]:
    rng = rng or random.Random(5)
    checked = 0
    for family, rank, K in SOUNDNESS_CASES:
        rs = build_root_system(family, rank)
        word = _case_word(family, rank, K)
        seed0 = initial_seed(rs, word, K, quiver_rule)
        point_words = [word, longest_word(rs), tuple(reversed(longest_word(rs)))]
        for _ in range(points):
            pw = rng.choice(point_words)
            point = tp_element(rs, pw, random_positive_params(rng, len(pw)))
            if not point.certified_tp:
                return False, f"{rs.name}: test point on {pw} is not certified"
            if not K:
                report = full_flag_test(rs, word, point)
                if report.verdict != ACCEPTED:
                    return False, f"{rs.name}: chamber test rejected {point.params}"
            cache: dict = {}
            seed = seed0
            steps = [rng.choice(seed0.mutable) for _ in range(rng.randint(0, max_len))] if seed0.mutable else []
            for step in [None] + steps:
                if step is not None:
                    seed = seed.mutate(step)
                report = seed_test(seed, point, cache)
                checked += 1
                if report.verdict != ACCEPTED:
                    return False, (f"{rs.name} K={list(K)}: seed after {list(seed.history)} rejected "
                                   f"params {[str(t) for t in point.params]}")
    return True, f"{checked} seed evaluations over {len(SOUNDNESS_CASES) * points} TP points accepted"


# 6 -------------------------------------------------------------------------

def suite_representations() -> tuple[bool, str]:
    cases = [("A", n) for n in range(1, 5)] + [("D", 4)]
    problems = []
    count = 0
    for family, rank in cases:
        rs = build_root_system(family, rank)
        for i in rs.index_set:
            rep = build_rep(rs, i)
            count += 1
            if rep.dim != expected_dimension(rs, i):
                problems.append(f"{rs.name} node {i}: dim {rep.dim}")
            problems += [f"{rs.name} node {i}: {p}" for p in check_representation(rep)]
    d4_dims = [build_rep(_d4(), i).dim for i in _d4().index_set]
    if d4_dims != [8, 8, 28, 8]:
        problems.append(f"D4 dimensions {d4_dims}")
    ok = not problems
    return ok, f"{count} representations pass" if ok else "; ".join(problems[:5])


# 7 -------------------------------------------------------------------------

def random_reduced_word(rs, rng: random.Random, attempts: int = 8) -> tuple[int, ...]:
    word: tuple[int, ...] = ()
    for _ in range(rng.randint(0, attempts)):
        longer = word + (rng.randint(1, rs.rank),)
        if word_status(rs, longer)[1]:
            word = longer
    return word


def suite_minor_crosscheck(instances: int = 100, rng: Optional[random.Random] = None) -> tuple[bool, str]:
    rng = rng or random.Random(7)
    for trial in range(instances):
        rs = build_root_system("A", rng.randint(2, 4))
        length = rng.randint(0, 2 * rs.longest_length)
        word = tuple(rng.randint(1, rs.rank) for _ in range(length))
        g = element_from_params(rs, word, random_nonzero_params(rng, length))
        i = rng.randint(1, rs.rank)
        u = random_reduced_word(rs, rng)
        v = random_reduced_word(rs, rng)
        rows = sorted(type_a_permutation(rs, u)[:i])
        cols = sorted(type_a_permutation(rs, v)[:i])
        m = g.matrix(build_rep(rs, 1))
        classical = det(m.submatrix([r - 1 for r in rows], [c - 1 for c in cols]))
        ours = generalized_minor(g, MinorLabel.make(rs, i, u, v))
        if classical != ours:
            return False, f"{rs.name} i={i} u={u} v={v}: {ours} != {classical}"
    return True, f"{instances} instances agree"


# 8 -------------------------------------------------------------------------

def _criterion_functions(rs, word, K, quiver_rule=rule_r_arrows):
    seed = initial_seed(rs, word, K, quiver_rule)
    funcs = [(f"{v}", seed.variables[v]) for v in seed.vertices]
    funcs += [(f"{k}'", seed.mutate(k).variables[k]) for k in seed.mutable]
    return funcs


def suite_invariance(trials: int = 30, rng: Optional[random.Random] = None) -> tuple[bool, str]:
    rng = rng or random.Random(8)
    total = 0
    for rs, word, K in ((_a3(), A3_WORD, A3_K), (_d4(), D4_WORD, D4_K)):
        for name, f in _criterion_functions(rs, word, K):
            res = invariance_check(rs, word, K, f, trials, rng)
            total += 1
            if not res.passed:
                return False, f"{rs.name} function {name}: {res.counterexample}"
            if rs.family == "A":
                sym = invariance_symbolic(rs, K, f)
                if not sym.passed:
                    return False, f"{rs.name} function {name} symbolic: {sym.counterexample}"
    return True, f"{total} functions invariant ({trials} trials each, A3 also symbolically)"


# 9 -------------------------------------------------------------------------

def suite_regularity(max_len: int = 6, quiver_rule=rule_r_arrows) -> tuple[bool, str]:
    cases = []
    rs = _a3()
    cases.append((initial_seed(rs, A3_WORD, A3_K, quiver_rule), unipotent_coordinates(rs)[1]))
    rs = _d4()
    other = longest_word(rs)
    cases.append((initial_seed(rs, D4_WORD, D4_K, quiver_rule),
                  element_from_params(rs, other, symbolic_params(other)[1])))
    sequences = 0
    for seed0, coords in cases:
        cache: dict = {}
        for length in range(max_len + 1):
            for seq in itertools.product(seed0.mutable, repeat=length):
                try:
                    symbolic_seed(mutate_sequence(seed0, seq), coords, cache=cache)
                except Exception as exc:  # any failure here is a seed defect
                    return False, f"{seed0.rs.name} sequence {seq}: {type(exc).__name__}: {exc}"
                sequences += 1
    return True, f"{sequences} mutation sequences divide exactly"


# 10 ------------------------------------------------------------------------

def suite_mutation_goldens(quiver_rule=rule_r_arrows) -> tuple[bool, str]:
    rs = _a3()
    ring, coords = unipotent_coordinates(rs, A3_K)
    n = {name: ring.var(name) for name in ring.names}
    golden = {2: n["n13"], 3: -n["n24"]}
    seed = initial_seed(rs, A3_WORD, A3_K, quiver_rule)
    leaf = lambda lab: generalized_minor(coords, lab)
    problems = []
    for k, want in golden.items():
        # brute force: the golden must satisfy old * new = in + out as polynomials
        into, out = exchange_terms(seed, k)
        old = evaluate(seed.variables[k], leaf)
        rhs = poly_arith("add", evaluate(into, leaf), evaluate(out, leaf))
        if old * want != rhs:
            problems.append(f"oracle rejects golden at {k}")
        got = dict(symbolic_seed(seed.mutate(k), coords))[k]
        if got != want:
            problems.append(f"mutation at {k} gives {got}")
    ok = not problems
    return ok, "new variables n13 and -n24" if ok else "; ".join(problems)


# runner --------------------------------------------------------------------

SUITES: list[tuple[int, str, float, Callable, bool]] = [
    # number, name, budget in seconds, function, takes quiver_rule
    (1, "golden criterion A3 K={2}", 1.0, suite_golden_criterion, True),
    (2, "Plucker-positive counterexample rejected", 1.0, suite_counterexample, True),
    (3, "D4 exchange relations", 60.0, suite_d4_relations, True),
    (4, "index combinatorics goldens", 1.0, suite_index_goldens, False),
    (5, "soundness sweep on TP points", 300.0, suite_soundness, True),
    (6, "representation invariants", 30.0, suite_representations, False),
    (7, "minors vs classical determinants", 30.0, suite_minor_crosscheck, False),
    (8, "invariance under x_k(t), k in K", 60.0, suite_invariance, False),
    (9, "exact divisions along mutation sequences", 300.0, suite_regularity, True),
    (10, "mutation goldens n13 and -n24", 5.0, suite_mutation_goldens, True),
]


def run_suite(number: int, quiver_rule=rule_r_arrows) -> SuiteResult:
    num, name, budget, fn, takes_rule = next(s for s in SUITES if s[0] == number)
    start = time.perf_counter()
    try:
        passed, detail = fn(quiver_rule=quiver_rule) if takes_rule else fn()
    except Exception as exc:
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    return SuiteResult(num, name, passed, detail, time.perf_counter() - start, budget)


def run_all(numbers=None, quiver_rule=rule_r_arrows) -> list[SuiteResult]:
    numbers = [s[0] for s in SUITES] if numbers is None else list(numbers)
    return [run_suite(k, quiver_rule) for k in numbers]
