import json
import random
from fractions import Fraction

import pytest

from clusterpos.errors import LengthMismatch, SingularEvaluation
from clusterpos.flagpos import (
    ACCEPTED,
    REJECTED,
    CriterionReport,
    chamber_functions,
    full_flag_test,
    invariance_check,
    invariance_symbolic,
    partial_flag_criterion,
    partial_flag_seed,
    partial_flag_test,
    seed_test,
    tp_element,
)
from clusterpos.repmat import MinorLabel, build_rep, element_from_matrix, element_from_params
from clusterpos.rootsys import build_root_system, longest_word
from clusterpos.seeds import MinorLeaf, QuotientNode, SumNode, evaluate

A3_WORD = (2, 1, 3, 2, 1, 3)
D4_WORD = (1, 2, 3, 1, 2, 3, 4, 3, 2, 1, 3, 4)
COUNTER = [["1", "1", "1", "2"], ["0", "1", "0", "-1"], ["0", "0", "1", "1"], ["0", "0", "0", "1"]]


def test_a2_chamber_functions_and_tp_point():
    a2 = build_root_system("A", 2)
    labels = [(k, lab.display) for k, lab in chamber_functions(a2, (1, 2, 1))]
    assert labels == [(-2, "D_{12;23}"), (-1, "D_{1;3}"), (1, "D_{1;2}")]
    point = tp_element(a2, (1, 2, 1), [1, 1, 1])
    assert point.certified_tp
    report = full_flag_test(a2, (1, 2, 1), point)
    assert report.verdict == ACCEPTED
    assert [f.value for f in report.functions] == [1, 1, 2]


def test_zero_value_is_a_rejection():
    a2 = build_root_system("A", 2)
    g = element_from_matrix(a2, [[1, 1, 1], [0, 1, 1], [0, 0, 1]])  # D_{12;23} = 0
    report = full_flag_test(a2, (1, 2, 1), g)
    assert report.verdict == REJECTED and report.witness.value == 0


def test_tp_element_length_check():
    with pytest.raises(LengthMismatch):
        tp_element(build_root_system("A", 2), (1, 2, 1), [1, 1])


def test_counterexample_rejected_with_and_without_mutation():
    a3 = build_root_system("A", 3)
    g = element_from_matrix(a3, COUNTER)
    for seq in ((), (2,)):
        report = partial_flag_test(a3, A3_WORD, {2}, seq, g)
        assert report.verdict == REJECTED
        assert report.witness.vertex == 1 and report.witness.value == -1


def test_criterion_function_lists():
    a3 = build_root_system("A", 3)
    funcs = partial_flag_criterion(a3, A3_WORD, {2}, ())
    assert [v for v, _ in funcs] == [-3, -1, 1, 2, 3]
    d4 = build_root_system("D", 4)
    funcs = dict(partial_flag_criterion(d4, D4_WORD, {1, 2, 3}, ()))
    assert len(funcs) == 6
    # phi at vertex 6 is D_{u varpi_3, w0 varpi_3}, not a minor of a node-4 flag
    assert isinstance(funcs[6], MinorLeaf) and funcs[6].label.i == 3


def test_report_json_round_trip():
    a3 = build_root_system("A", 3)
    report = partial_flag_test(a3, A3_WORD, {2}, (), element_from_matrix(a3, COUNTER))
    text = json.dumps(report.to_dict())
    back = CriterionReport.from_dict(json.loads(text))
    assert back == report and back.to_dict() == report.to_dict()


def test_singular_evaluation_is_distinct():
    a3 = build_root_system("A", 3)
    # n34 = 0 kills the denominator of the variable created at vertex 2
    g = element_from_matrix(a3, [[1, 1, 1, 2], [0, 1, 0, -1], [0, 0, 1, 0], [0, 0, 0, 1]])
    seed = partial_flag_seed(a3, A3_WORD, {2}, (2,))
    assert isinstance(seed[2], QuotientNode)
    with pytest.raises(SingularEvaluation):
        seed_test(seed, g)


def _perturb(rng, g, rs):
    m = g.matrix(build_rep(rs, 1)).tolist()
    i = rng.randrange(rs.rank)
    j = rng.randrange(i + 1, rs.rank + 1)
    m[i][j] = m[i][j] - rng.randint(1, 30)
    return element_from_matrix(rs, m)


def test_full_flag_seed_agrees_with_chamber_test():
    rng = random.Random(6)
    rs = build_root_system("A", 3)
    w = longest_word(rs)
    seed = partial_flag_seed(rs, w)
    verdicts = {ACCEPTED: 0, REJECTED: 0}
    for trial in range(100):
        g = element_from_params(rs, w, [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in w])
        if trial % 2:
            g = _perturb(rng, g, rs)
        chamber = full_flag_test(rs, w, g).verdict
        assert seed_test(seed, g).verdict == chamber
        verdicts[chamber] += 1
    assert verdicts[ACCEPTED] and verdicts[REJECTED]


def test_invariance_of_seed_functions():
    a3 = build_root_system("A", 3)
    seed = partial_flag_seed(a3, A3_WORD, {2})
    for v in seed.vertices:
        assert invariance_symbolic(a3, {2}, seed[v]).passed
        assert invariance_check(a3, A3_WORD, {2}, seed[v], trials=10).passed
    d4 = build_root_system("D", 4)
    seed = partial_flag_seed(d4, D4_WORD, {1, 2, 3})
    for v in seed.vertices:
        assert invariance_check(d4, D4_WORD, {1, 2, 3}, seed[v], trials=10).passed


def test_invariance_detects_a_non_invariant_function():
    a3 = build_root_system("A", 3)
    # x_1(t) adds t times row 2 to row 1, so D_{1;3} = n13 moves
    lab = MinorLabel.from_sets(a3, (1,), (3,))
    assert not invariance_symbolic(a3, {1}, lab).passed
    assert not invariance_check(a3, longest_word(a3), {1}, lab, trials=30).passed


def test_sum_node_evaluates():
    a2 = build_root_system("A", 2)
    lab = MinorLabel.from_sets(a2, (1,), (2,))
    assert evaluate(SumNode((MinorLeaf(lab), MinorLeaf(lab))), lambda l: 2) == 4
