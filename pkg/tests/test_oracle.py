import random
from pathlib import Path

import pytest

from corpus import random_framework
from wadf import build_framework, make_structure, parse_framework
from wadf.formula import evaluate
from wadf.oracle import ClassicalADF, check_embedding, classical_gamma, classical_semantics

DATA = Path(__file__).parent / "data"
CL = make_structure("classical")
MUTUAL = parse_framework((DATA / "mutual.wadf").read_text())


def adf(pairs):
    return ClassicalADF.from_framework(build_framework(CL, pairs))


def test_gamma_on_mutual_attack():
    a = ClassicalADF.from_framework(MUTUAL)
    assert classical_gamma(a, ("t", "u")) == ("t", "f")


def test_tautology_gap_classically_closes():
    a = adf([("a", "a"), ("b", "a | !a")])
    assert classical_gamma(a, ("u", "u")) == ("u", "t")
    assert classical_semantics(a)["grounded"] == {("u", "t")}


def test_total_input_is_plain_evaluation():
    rng = random.Random(1)
    for _ in range(50):
        fw = random_framework(rng, CL, max_n=4)
        a = ClassicalADF.from_framework(fw)
        w = {s: rng.choice("tf") for s in fw.statements}
        want = tuple(evaluate(fw.acceptance[s], CL, w) for s in fw.statements)
        assert classical_gamma(a, tuple(w[s] for s in fw.statements)) == want


def test_mutual_attack_sets():
    sets = classical_semantics(ClassicalADF.from_framework(MUTUAL))
    assert sets["admissible"] == {("u", "u"), ("t", "u"), ("t", "f"), ("f", "t")}
    assert sets["complete"] == {("u", "u"), ("t", "f"), ("f", "t")}
    assert sets["preferred"] == {("t", "f"), ("f", "t")}


def test_self_attack():
    sets = classical_semantics(adf([("a", "!a")]))
    assert sets["complete"] == {("u",)}
    assert sets["model"] == set()


def test_constant_true_is_stable():
    sets = classical_semantics(adf([("a", "t")]))
    assert sets["model"] == {("t",)} and sets["stable"] == {("t",)}


def test_self_support_model_is_not_stable():
    sets = classical_semantics(adf([("a", "a")]))
    assert sets["model"] == {("t",), ("f",)}
    assert sets["stable"] == {("f",)}


def test_grounded_is_iterated_gamma():
    rng = random.Random(2)
    for _ in range(100):
        a = ClassicalADF.from_framework(random_framework(rng, CL, max_n=5))
        v = ("u",) * a.n
        while classical_gamma(a, v) != v:
            v = classical_gamma(a, v)
        assert classical_semantics(a)["grounded"] == {v}


def test_embedding_on_examples():
    assert check_embedding(MUTUAL).ok
    assert check_embedding(build_framework(CL, [("a", "a"), ("b", "a | !a")])).ok


def test_embedding_on_random_four_statement_adfs():
    rng = random.Random(4)
    for _ in range(100):
        fw = random_framework(rng, CL, max_n=4)
        report = check_embedding(fw)
        assert report.ok, report.mismatches


def test_unit_constants_need_a_truth_map():
    fw = build_framework(make_structure("unit-flat"), [("a", "!a | 1")])
    with pytest.raises(ValueError):
        ClassicalADF.from_framework(fw)
    a = ClassicalADF.from_framework(fw, truth=lambda c: c == 1)
    assert classical_gamma(a, ("u",)) == ("t",)


def test_size_limit():
    names = [f"s{i}" for i in range(13)]
    a = adf([(s, s) for s in names])
    with pytest.raises(ValueError):
        a.tables()
