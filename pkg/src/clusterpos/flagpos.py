"""Total positivity tests for ``N`` and for partial flag varieties.

A point of a partial flag variety is handed over as any lift ``n`` in ``N``:
all criterion functions are invariant under left multiplication by the
one-parameter subgroups ``x_k``, ``k`` in ``K``, so the values do not depend
on the lift.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import LengthMismatch, SingularEvaluation, UnsupportedType
from .exactalg import MultiPoly, format_rational, parse_rational
from .repmat import (
    GroupElement,
    MinorLabel,
    element_from_params,
    generalized_minor,
    symbolic_params,
    unipotent_coordinates,
)
from .rootsys import RootSystem, check_word, word_indexing, word_status
from .seeds import (
    ClusterVar,
    MinorLeaf,
    Seed,
    evaluate,
    initial_seed,
    mutate_sequence,
    rule_r_arrows,
    symbolic_seed,
)

ACCEPTED, REJECTED, SINGULAR = "accepted", "rejected", "singular"


@dataclass(frozen=True)
class FunctionRecord:
    vertex: Optional[int]
    label: str
    value: Optional[Fraction]
    positive: bool

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "label": self.label,
            "value": None if self.value is None else format_rational(self.value),
            "positive": self.positive,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FunctionRecord":
        value = d.get("value")
        return cls(d.get("vertex"), d["label"],
                   None if value is None else parse_rational(value), bool(d["positive"]))


@dataclass(frozen=True)
class CriterionReport:
    verdict: str
    functions: tuple[FunctionRecord, ...]
    witness: Optional[FunctionRecord]
    provenance: dict = field(default_factory=dict, hash=False)

    @property
    def accepted(self) -> bool:
        return self.verdict == ACCEPTED

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "functions": [f.to_dict() for f in self.functions],
            "witness": None if self.witness is None else self.witness.to_dict(),
            "provenance": dict(self.provenance),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CriterionReport":
        witness = d.get("witness")
        return cls(
            d["verdict"],
            tuple(FunctionRecord.from_dict(f) for f in d["functions"]),
            None if witness is None else FunctionRecord.from_dict(witness),
            dict(d.get("provenance", {})),
        )


def make_report(records: Sequence[FunctionRecord], provenance: dict) -> CriterionReport:
    witness = next((r for r in records if not r.positive), None)
    verdict = ACCEPTED if witness is None else REJECTED
    return CriterionReport(verdict, tuple(records), witness, provenance)


def singular_report(message: str, provenance: dict) -> CriterionReport:
    prov = dict(provenance)
    prov["error"] = message
    return CriterionReport(SINGULAR, (), None, prov)


@dataclass(frozen=True)
class TPTestPoint:
    element: GroupElement
    source: str
    word: tuple[int, ...] = ()
    params: tuple = ()
    certified_tp: bool = False


def tp_element(rs: RootSystem, word: Sequence[int], t_list: Sequence) -> TPTestPoint:
    """``x_{i_1}(t_1)...x_{i_r}(t_r)``, flagged totally positive when ``word``
    is reduced for ``w0`` and every parameter is positive."""
    word = check_word(rs, word)
    if len(word) != len(t_list):
        raise LengthMismatch(f"{len(word)} letters but {len(t_list)} parameters")
    ts = tuple(parse_rational(t) if isinstance(t, (str, int)) else Fraction(t) for t in t_list)
    length, reduced = word_status(rs, word)
    certified = reduced and length == rs.longest_length and all(t > 0 for t in ts)
    return TPTestPoint(element_from_params(rs, word, ts), "params", word, ts, certified)


def _element(point: Union[TPTestPoint, GroupElement]) -> GroupElement:
    return point.element if isinstance(point, TPTestPoint) else point


def random_positive_params(rng: random.Random, count: int, bound: int = 9) -> list[Fraction]:
    return [Fraction(rng.randint(1, bound), rng.randint(1, bound)) for _ in range(count)]


def random_nonzero_params(rng: random.Random, count: int, bound: int = 9) -> list[Fraction]:
    return [Fraction(rng.choice((-1, 1)) * rng.randint(1, bound), rng.randint(1, bound))
            for _ in range(count)]


def chamber_functions(rs: RootSystem, word: Sequence[int]) -> list[tuple[int, MinorLabel]]:
    """The ``r`` chamber minors of ``word``, keyed like seed vertices.

    Key ``-i`` holds ``D_{varpi_i, w0 varpi_i}``; key ``k`` in ``e(i)`` holds
    ``D_{varpi_{i_k}, s_{i_r}...s_{i_{k+1}} varpi_{i_k}}``.
    """
    word = check_word(rs, word)
    ix = word_indexing(rs, word)
    out = [(-i, MinorLabel.make(rs, i, (), word)) for i in reversed(rs.index_set)]
    for k in sorted(ix.mutable):
        out.append((k, MinorLabel.make(rs, word[k - 1], (), tuple(reversed(word[k:])))))
    return out


def _record(vertex, display, value) -> FunctionRecord:
    if isinstance(value, MultiPoly):
        raise TypeError("criterion tests need a numeric point")
    value = Fraction(value)
    return FunctionRecord(vertex, display, value, value > 0)


def full_flag_test(rs: RootSystem, word: Sequence[int], point) -> CriterionReport:
    if rs.family == "E":
        raise UnsupportedType("type E points cannot be evaluated")
    g = _element(point)
    records = [_record(k, lab.display, generalized_minor(g, lab))
               for k, lab in chamber_functions(rs, word)]
    return make_report(records, {"test": "chamber", "family": rs.family, "rank": rs.rank,
                                 "word": list(word)})


def partial_flag_seed(rs: RootSystem, word: Sequence[int], K: Iterable[int] = (),
                      mutation_seq: Iterable[int] = (), quiver_rule=rule_r_arrows) -> Seed:
    return mutate_sequence(initial_seed(rs, word, K, quiver_rule), mutation_seq)


def partial_flag_criterion(rs: RootSystem, word: Sequence[int], K: Iterable[int] = (),
                           mutation_seq: Iterable[int] = ()) -> list[tuple[int, ClusterVar]]:
    seed = partial_flag_seed(rs, word, K, mutation_seq)
    return [(v, seed.variables[v]) for v in seed.vertices]


def seed_test(seed: Seed, point, cache: Optional[dict] = None) -> CriterionReport:
    g = _element(point)
    cache = {} if cache is None else cache
    leaf = lambda label: generalized_minor(g, label)
    records = [_record(v, str(seed.variables[v]), evaluate(seed.variables[v], leaf, cache))
               for v in seed.vertices]
    return make_report(records, {
        "test": "seed", "family": seed.rs.family, "rank": seed.rs.rank,
        "word": list(seed.word), "K": sorted(seed.K), "mutations": list(seed.history),
    })


def partial_flag_test(rs: RootSystem, word: Sequence[int], K: Iterable[int], mutation_seq: Iterable[int],
                      point) -> CriterionReport:
    return seed_test(partial_flag_seed(rs, word, K, mutation_seq), point)


@dataclass(frozen=True)
class InvarianceResult:
    passed: bool
    trials: int
    counterexample: Optional[dict] = None


def _as_var(function) -> ClusterVar:
    return MinorLeaf(function) if isinstance(function, MinorLabel) else function


def invariance_check(rs: RootSystem, word: Sequence[int], K: Iterable[int], function,
                     trials: int = 30, rng: Optional[random.Random] = None) -> InvarianceResult:
    """Compare ``f(x_k(t) n)`` with ``f(n)`` at random ``k`` in ``K``, ``t`` and ``n``."""
    rng = rng or random.Random(0)
    K = sorted(K)
    var = _as_var(function)
    if not K:
        return InvarianceResult(True, 0)
    trial = skipped = 0
    while trial < trials:
        k = rng.choice(K)
        t = random_nonzero_params(rng, 1)[0]
        n = element_from_params(rs, word, random_nonzero_params(rng, len(word)))
        try:
            before = evaluate(var, lambda lab: generalized_minor(n, lab))
            moved = n.left_multiply(k, t)
            after = evaluate(var, lambda lab: generalized_minor(moved, lab))
        except SingularEvaluation:
            # a denominator vanished at this point; draw another one
            skipped += 1
            if skipped > 10 * trials:
                raise
            continue
        trial += 1
        if before != after:
            return InvarianceResult(False, trial, {
                "k": k, "t": format_rational(t), "params": [format_rational(x) for x in n.params],
                "before": format_rational(before), "after": format_rational(after),
            })
    return InvarianceResult(True, trials)


def invariance_symbolic(rs: RootSystem, K: Iterable[int], function) -> InvarianceResult:
    """Polynomial identity ``f(x_k(t) n) = f(n)`` on all of ``N`` (type A)."""
    if rs.family != "A":
        raise UnsupportedType("symbolic invariance is only available in type A")
    var = _as_var(function)
    ring, n = unipotent_coordinates(rs, (), extra=("t",))
    t = ring.var("t")
    base = evaluate(var, lambda lab: generalized_minor(n, lab))
    for k in sorted(K):
        moved = n.left_multiply(k, t)
        value = evaluate(var, lambda lab: generalized_minor(moved, lab))
        if value != base:
            return InvarianceResult(False, 1, {"k": k, "before": str(base), "after": str(value)})
    return InvarianceResult(True, len(list(K)))


def symbolic_coordinates(rs: RootSystem, word: Sequence[int], K: Iterable[int] = ()):
    """Coordinates in which criteria are printed symbolically.

    Type A uses the entries of a generic element of ``N_K``; other types use
    the factorization parameters ``t1, ..., tr`` of ``word``.
    """
    if rs.family == "A":
        return unipotent_coordinates(rs, K)
    ring, ts = symbolic_params(word)
    return ring, element_from_params(rs, word, ts)


def symbolic_criterion(rs: RootSystem, word: Sequence[int], K: Iterable[int] = (),
                       mutation_seq: Iterable[int] = (), quiver_rule=rule_r_arrows,
                       max_terms: Optional[int] = 20000) -> list[tuple[int, MultiPoly]]:
    seed = partial_flag_seed(rs, word, K, mutation_seq, quiver_rule)
    _, coords = symbolic_coordinates(rs, seed.word, seed.K)
    return symbolic_seed(seed, coords, max_terms)
