import itertools
import random
from fractions import Fraction as Q
from pathlib import Path

import pytest

from corpus import EIGHTHS, finite_structures, random_extension, random_framework, random_interpretation
from wadf import (
    U,
    BudgetExceeded,
    Grounded,
    NotConverged,
    UnsupportedError,
    ValidationError,
    build_framework,
    gamma,
    gamma_at,
    interpretation,
    kleene_iterate,
    leq_interp,
    make_structure,
    parse_framework,
)
from wadf.formula import evaluate
from wadf.operator import (
    Interpretation,
    all_undefined,
    completion_count,
    completions,
    dump_interpretation,
    load_interpretation,
    parent_completions,
)
from wadf.semantics import enumerate_semantics
from wadf.valuation import INFINITE, ValueRange

DATA = Path(__file__).parent / "data"


def load(name):
    return parse_framework((DATA / name).read_text())


MUTUAL = load("mutual.wadf")
FLAT4 = load("flat4.wadf")
TAUT = load("tautology.wadf")
REFINED4 = load("refined4.wadf")
REVIEW = load("review.wadf")


def iv(fw, *values):
    return interpretation(fw, [fw.structure.parse_partial(x) if isinstance(x, str) else x for x in values])


def test_leq_interp():
    v1, v3, v4 = iv(MUTUAL, "u", "u"), iv(MUTUAL, "t", "f"), iv(MUTUAL, "f", "t")
    assert leq_interp(MUTUAL, v1, v3)
    assert not leq_interp(MUTUAL, v3, v4) and not leq_interp(MUTUAL, v4, v3)
    assert leq_interp(MUTUAL, v3, v3)


def test_leq_interp_domain_mismatch():
    with pytest.raises(ValidationError):
        leq_interp(MUTUAL, iv(MUTUAL, "u", "u"), all_undefined(FLAT4))


def test_interpretation_domain_checked():
    with pytest.raises(ValidationError):
        interpretation(MUTUAL, {"a": "t"})
    with pytest.raises(ValidationError):
        interpretation(MUTUAL, {"a": "t", "b": "x"})


def test_review_completion_count():
    v = interpretation(REVIEW, {"a": "tendency_accept", "s": "accept", "m": "borderline"})
    assert completion_count(REVIEW, v) == 3
    assert {w["a"] for w in completions(REVIEW, v)} == {"tendency_accept", "accept", "borderline"}


def test_unit_box_for_parent_completions():
    v = iv(FLAT4, "0.8", "u", "u", "u")
    box = parent_completions(FLAT4, v, "c")
    assert box == {"a": ValueRange(Q(4, 5), Q(4, 5)), "b": ValueRange(Q(0), Q(1))}
    assert completion_count(FLAT4, v) == INFINITE


def test_total_interpretation_has_one_completion():
    v = iv(MUTUAL, "t", "f")
    assert completion_count(MUTUAL, v) == 1
    assert list(completions(MUTUAL, v)) == [v]


def test_gamma_examples():
    assert gamma(FLAT4, all_undefined(FLAT4)) == iv(FLAT4, "0.8", "u", "u", "u")
    assert gamma(REFINED4, all_undefined(REFINED4)) == iv(REFINED4, "0.8", "0.5", "0.5", "0.6")
    assert gamma(TAUT, all_undefined(TAUT))["b"] is U
    assert gamma(MUTUAL, iv(MUTUAL, "t", "u")) == iv(MUTUAL, "t", "f")


def test_gamma_at():
    v5 = iv(FLAT4, "0.8", "u", "u", "u")
    assert gamma_at(FLAT4, v5, "d") is U
    assert gamma_at(REFINED4, iv(REFINED4, "0.8", "u", "u", "u"), "d") == Q(3, 5)
    assert gamma_at(FLAT4, iv(FLAT4, "0.1", "0.2", "0.3", "0.4"), "a") == Q(4, 5)
    with pytest.raises(ValidationError):
        gamma_at(FLAT4, v5, "z")


def test_kleene_examples():
    out = kleene_iterate(FLAT4)
    assert isinstance(out, Grounded)
    assert out.interpretation == iv(FLAT4, "0.8", "u", "u", "u") and out.steps <= 2
    out = kleene_iterate(REFINED4)
    assert out.interpretation == iv(REFINED4, "0.8", "0.5", "0.5", "0.6") and out.steps <= 2
    out = kleene_iterate(MUTUAL)
    assert out.interpretation == iv(MUTUAL, "u", "u") and out.steps == 1


def test_kleene_step_guard():
    out = kleene_iterate(FLAT4, max_steps=1)
    assert isinstance(out, NotConverged)
    assert out.interpretation == iv(FLAT4, "0.8", "u", "u", "u")
    with pytest.raises(ValueError):
        kleene_iterate(FLAT4, max_steps=0)


def test_engine_selection():
    with pytest.raises(UnsupportedError):
        gamma(FLAT4, all_undefined(FLAT4), engine="finite")
    with pytest.raises(UnsupportedError):
        gamma(MUTUAL, all_undefined(MUTUAL), engine="unit")
    assert gamma(MUTUAL, all_undefined(MUTUAL), engine="finite") == gamma(MUTUAL, all_undefined(MUTUAL))


def test_budget_exceeded():
    fw = build_framework(make_structure("belnap"), [("a", "a & b & c"), ("b", "b"), ("c", "c")])
    with pytest.raises(BudgetExceeded) as info:
        gamma(fw, all_undefined(fw), budget=10)
    assert info.value.exit_code == 4
    # N is the least defined Belnap value, so the meet of everything is N
    assert gamma(fw, all_undefined(fw), budget=1000)["a"] == "N"


def test_interpretation_files():
    v = load_interpretation(FLAT4, '{"a": "0.8", "b": "u", "c": "u", "d": "1/3"}')
    assert v == iv(FLAT4, "0.8", "u", "u", Q(1, 3))
    assert dump_interpretation(FLAT4, v) == {"a": "0.8", "b": "u", "c": "u", "d": "1/3"}
    grid = build_framework(make_structure("interval-grid", 5), [("a", "[0.25,0.5]")])
    g = load_interpretation(grid, '{"a": "[0.25,0.5]"}')
    assert dump_interpretation(grid, g) == {"a": "[0.25,0.5]"}
    with pytest.raises(ValidationError):
        load_interpretation(FLAT4, '{"a": 0.8, "b": "u", "c": "u", "d": "u"}')
    with pytest.raises(ValidationError):
        load_interpretation(FLAT4, '["a"]')


# -- properties ------------------------------------------------------------

def all_interpretations(fw):
    vals = [U] + list(fw.structure.values())
    for combo in itertools.product(vals, repeat=len(fw.statements)):
        yield Interpretation(fw.statements, combo, fw.index)


def tiny_corpus(seed, count, max_n=2):
    rng = random.Random(seed)
    structures = finite_structures()
    return [random_framework(rng, structures[k % len(structures)], max_n=max_n) for k in range(count)]


def test_monotonicity_exhaustive_on_tiny_instances():
    for fw in tiny_corpus(11, 40):
        vs = list(all_interpretations(fw))
        images = {v: gamma(fw, v) for v in vs}
        for v in vs:
            for w in vs:
                if leq_interp(fw, v, w):
                    assert leq_interp(fw, images[v], images[w])


@pytest.mark.parametrize("kind", ["unit-flat", "unit-refined"])
def test_monotonicity_sampled_on_unit_instances(kind):
    rng = random.Random(5)
    structure = make_structure(kind)
    for _ in range(150):
        fw = random_framework(rng, structure, max_n=4, consts=EIGHTHS)
        v = Interpretation(fw.statements,
                           [U if rng.random() < 0.5 else rng.choice(EIGHTHS) for _ in fw.statements], fw.index)
        # a random refinement: undefined slots get values, refined slots move outward from 0.5
        out = []
        for x in v.values:
            if x is U:
                out.append(rng.choice([U] + EIGHTHS))
            elif kind == "unit-refined" and rng.random() < 0.5:
                out.append(rng.choice([y for y in EIGHTHS if structure.leq(x, y)]))
            else:
                out.append(x)
        w = Interpretation(fw.statements, out, fw.index)
        assert leq_interp(fw, v, w)
        assert leq_interp(fw, gamma(fw, v), gamma(fw, w))


def test_restriction_to_parents_is_sound():
    for fw in tiny_corpus(12, 40, max_n=3):
        rng = random.Random(len(fw.statements))
        for _ in range(10):
            v = random_interpretation(rng, fw)
            g = gamma(fw, v)
            for s in fw.statements:
                evals = [evaluate(fw.acceptance[s], fw.structure, w) for w in completions(fw, v)]
                assert fw.structure.glb(evals) == g[s]


def test_grounded_is_least_fixpoint():
    for fw in tiny_corpus(13, 60, max_n=3):
        out = kleene_iterate(fw)
        assert isinstance(out, Grounded)
        g = out.interpretation
        assert gamma(fw, g) == g
        for c in enumerate_semantics(fw, "complete"):
            assert leq_interp(fw, g, c)


def test_random_extension_helper_is_an_extension():
    rng = random.Random(3)
    for fw in tiny_corpus(14, 20, max_n=4):
        v = random_interpretation(rng, fw)
        assert leq_interp(fw, v, random_extension(rng, fw, v))
