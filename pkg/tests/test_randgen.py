from __future__ import annotations

import pytest

from hermrank.coeffmatrix import rank_of
from hermrank.jets import nonzero_at, value_at
from hermrank.normalform import FORM1, FORM2, FORM3, classify_linear_form
from hermrank.poly import bidegree, evaluate, translate
from hermrank.randgen import SHAPES, random_instance
from hermrank.verify import HOLDS, verify_theorem


def test_seed_one_full_normal_form_holds():
    inst = random_instance(1, 2, 2, "full-normal-form-with-tail")
    rep = verify_theorem(inst.P, inst.Q, inst.d, inst.point)
    assert rep.verdict == HOLDS


def test_seed_two_general_classifies():
    inst = random_instance(2, 2, 2, "general-bidegree-11")
    P0 = translate(inst.P, inst.point.p, inst.point.q)
    rep = classify_linear_form(P0)
    assert rep.form in (FORM1, FORM2, FORM3)
    assert rank_of(rep.P) == rank_of(P0)


@pytest.mark.parametrize("shape", SHAPES)
def test_deterministic(shape):
    a = random_instance(5, 3, 1, shape)
    b = random_instance(5, 3, 1, shape)
    assert a == b
    assert random_instance(6, 3, 1, shape) != a


@pytest.mark.parametrize("shape", SHAPES)
def test_shape_guarantees(shape):
    for seed in range(15):
        n = 1 + seed % 3
        inst = random_instance(seed, n, 2, shape)
        assert bidegree(inst.P) in ((1, 1), (1, 0), (0, 1))
        assert evaluate(inst.P, inst.point) == 0
        assert nonzero_at(inst.Q, inst.point)
        if shape != "with-jet-Q":   # exp values are not exact scalars
            assert value_at(inst.Q, inst.point) != 0
        if shape == "full-normal-form-with-tail":
            assert rank_of(inst.P) == n + 1


def test_bad_arguments():
    with pytest.raises(ValueError):
        random_instance(0, 2, 2, "nope")
    with pytest.raises(ValueError):
        random_instance(0, 0, 2, "general-bidegree-11")
