from fractions import Fraction

import numpy as np
import pytest

from chebgruss.bounds import Family, HolderPair, evaluate_all
from chebgruss.functional import chebyshev_direct
from chebgruss.harness.ensemble import generate_integer_instance
from chebgruss.harness.oracle import OracleError, exact_oracle, oracle_target
from chebgruss.space import Instance, NormDescriptor


def test_worked_exact():
    res = exact_oracle(weights=[1, 1, 1], scalars=[1, 2, 3], vectors=[1, 4, 9])
    assert res.t == (Fraction(24),)
    assert res.t_unweighted == (Fraction(8, 3),)
    assert res.dets == [3, 3]
    assert res.kernel == [[2, 1], [1, 2]]
    assert res.lemma_discrepancy == 0
    assert res.bounds["thm31_max_sum"] == 24
    assert res.bounds["thm33_branch1"] == 39
    assert res.bounds["closing_maxmax"] == Fraction(10, 3)
    assert res.bounds["baseline_maxmax"] is None


def test_hypotheses_reported_as_none():
    res = exact_oracle(weights=[1, -1, 1], scalars=[1, 2, 3], vectors=[1, 4, 9])
    assert res.evaluators["identity2"] is None
    assert res.evaluators["identity3"] is None
    assert res.bounds["thm33_branch1"] is None
    assert res.evaluators["identity1"] == res.t


def test_rejects_inexact_inputs():
    with pytest.raises(OracleError):
        exact_oracle(weights=[1, 1], scalars=[1, 2], vectors=[1, 2], norm_kind="lp:2")
    with pytest.raises(OracleError):
        exact_oracle(Instance([1.0, 1.0], [1.0, 2.0], [[1.0, 0.0], [0.0, 1.0]], NormDescriptor.lp(2.0, 2)))


@pytest.mark.parametrize("norm", [NormDescriptor.l1(2), NormDescriptor.linf(3), NormDescriptor.real_abs()])
def test_integer_instances_agree_with_float_path(rng, norm):
    for _ in range(40):
        inst = generate_integer_instance(rng, int(rng.integers(2, 9)), norm.dimension, norm)
        res = exact_oracle(inst)
        for name, value in res.evaluators.items():
            if value is not None:
                assert value == res.t, name
        assert res.lemma_discrepancy == 0
        np.testing.assert_array_equal(chebyshev_direct(inst), [float(c) for c in res.t])


def test_exact_bounds_hold_and_match_floats(rng):
    norm = NormDescriptor.l1(2)
    for _ in range(60):
        n = int(rng.integers(2, 8))
        inst = generate_integer_instance(rng, n, 2, norm)
        inst = Instance(np.abs(inst.weights) + 1, inst.scalars, inst.vectors, norm)
        res = exact_oracle(inst, holder_p=2.0)
        rep = evaluate_all(inst, HolderPair.from_p(2.0))
        for fam in Family:
            exact = res.bounds[fam.value]
            if exact is None or fam.value.startswith(("cor", "closing", "thm34_uniform", "baseline")):
                continue
            assert float(exact) >= float(oracle_target(fam.value, res)) * (1 - 1e-12), fam
            assert rep[fam].bound.value == pytest.approx(float(exact), rel=1e-10, abs=1e-12), fam


def test_unweighted_bounds_hold_exactly(rng):
    for _ in range(60):
        n = int(rng.integers(2, 9))
        a = [int(v) for v in rng.integers(-5, 6, n)]
        x = [int(v) for v in rng.integers(-5, 6, n)]
        res = exact_oracle(weights=[1] * n, scalars=a, vectors=x)
        for name, value in res.bounds.items():
            if value is None or not name.startswith(("cor", "closing", "thm34_uniform")):
                continue
            assert float(value) >= float(res.t_unweighted_norm) * (1 - 1e-12), name


@pytest.mark.parametrize("n", range(2, 12))
def test_k_one_through_oracle(n):
    e = list(range(1, n + 1))
    res = exact_oracle(weights=[Fraction(1, n)] * n, scalars=e, vectors=e)
    assert res.t == (Fraction(n * n - 1, 12),)
