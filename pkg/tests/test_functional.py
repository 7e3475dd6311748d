from fractions import Fraction

import numpy as np
import pytest

from chebgruss.functional import aggregates, chebyshev_direct, chebyshev_unweighted, magnitude, ordered_sum
from chebgruss.harness.oracle import chebyshev_exact
from chebgruss.space import Instance, NormDescriptor, norm

from .conftest import random_instance


def test_aggregates_worked(worked):
    agg = aggregates(worked)
    np.testing.assert_array_equal(agg.P, [1, 2, 3])
    np.testing.assert_array_equal(agg.A, [1, 3, 6])
    np.testing.assert_array_equal(agg.Pbar, [2, 1])
    np.testing.assert_array_equal(agg.Abar, [5, 3])
    np.testing.assert_array_equal(agg.dA, [1, 1])
    np.testing.assert_array_equal(agg.dX, [[3], [5]])


def test_aggregates_signed_weights():
    agg = aggregates(Instance([1.0, 0.0, -1.0], [1.0, 2.0, 3.0], [0.0, 0.0, 0.0]))
    np.testing.assert_array_equal(agg.P, [1, 1, 0])
    np.testing.assert_array_equal(agg.Pbar, [-1, -1])


def test_aggregates_constant_scalars():
    agg = aggregates(Instance([1.0, 2.0, 3.0], [4.0, 4.0, 4.0], [1.0, 2.0, 3.0]))
    np.testing.assert_array_equal(agg.dA, [0, 0])


def test_aggregate_invariants(rng):
    for _ in range(50):
        inst = random_instance(rng, weights="signed", complex_scalars=bool(rng.integers(2)))
        agg = aggregates(inst)
        eps = np.finfo(float).eps
        scale = np.sum(np.abs(inst.weights))
        assert abs(agg.P[-1] - (agg.P[-2] + inst.weights[-1])) <= 4 * eps * scale
        np.testing.assert_allclose(agg.P[:-1] + agg.Pbar, agg.Pn, rtol=0, atol=4 * eps * scale)
        ascale = np.sum(np.abs(inst.weights * inst.scalars))
        np.testing.assert_allclose(agg.A[:-1] + agg.Abar, agg.An, rtol=0, atol=4 * eps * ascale)
        assert abs(agg.dA.sum() - (inst.scalars[-1] - inst.scalars[0])) <= 4 * eps * np.abs(inst.scalars).sum()
        np.testing.assert_allclose(agg.dX.sum(axis=0), inst.vectors[-1] - inst.vectors[0], atol=1e-14)


def test_direct_worked(worked):
    # 3 * 36 - 6 * 14
    np.testing.assert_array_equal(chebyshev_direct(worked), [24.0])


def test_direct_constant_scalars_is_zero(rng):
    inst = random_instance(rng, n=7)
    const = Instance(inst.weights, np.full(7, 0.3), inst.vectors, inst.norm)
    assert norm(chebyshev_direct(const), const.norm) <= 1e-12 * const.scale()


def test_direct_two_points():
    inst = Instance([1.0, 1.0], [0.0, 1.0], [0.0, 1.0])
    np.testing.assert_array_equal(chebyshev_direct(inst), [1.0])
    # p1 p2 (a2 - a1)(x2 - x1)
    inst = Instance([0.25, 3.0], [2.0, -1.0], [[1.0, 2.0], [5.0, 0.0]], NormDescriptor.l1(2))
    np.testing.assert_allclose(chebyshev_direct(inst), 0.25 * 3.0 * (-3.0) * np.array([4.0, -2.0]))


def test_unweighted_worked():
    # (1/3) 36 - 2 (14/3) = 8/3
    assert chebyshev_unweighted([1, 2, 3], [1, 4, 9])[0] == pytest.approx(8 / 3, rel=1e-15)


def test_unweighted_constant_vectors():
    np.testing.assert_array_equal(chebyshev_unweighted([1, 5, -2], [2, 2, 2]), [0.0])


def test_unweighted_matches_uniform_direct(rng):
    for _ in range(30):
        inst = random_instance(rng, weights="uniform")
        np.testing.assert_allclose(
            chebyshev_unweighted(inst.scalars, inst.vectors, inst.norm),
            chebyshev_direct(inst),
            rtol=1e-12,
            atol=1e-12 * magnitude(inst),
        )


def test_complex_scalars_promote_vectors():
    inst = Instance([1.0, 1.0], [0.0, 1j], [[0.0], [1.0]], NormDescriptor.l1(1))
    t = chebyshev_direct(inst)
    assert np.iscomplexobj(t)
    np.testing.assert_allclose(t, [1j])
    assert norm(t, inst.norm) == pytest.approx(1.0)


def test_direct_matches_exact_on_integers(rng):
    for _ in range(40):
        n = int(rng.integers(2, 9))
        p = rng.integers(-5, 6, n)
        a = rng.integers(-5, 6, n)
        x = rng.integers(-5, 6, (n, 2))
        exact = chebyshev_exact(
            [Fraction(int(v)) for v in p], [Fraction(int(v)) for v in a], [tuple(Fraction(int(c)) for c in r) for r in x]
        )
        got = chebyshev_direct(Instance(p, a, x, NormDescriptor.l1(2)))
        np.testing.assert_array_equal(got, [float(c) for c in exact])


class TestProperties:
    def test_linear_in_scalars(self, rng):
        for _ in range(30):
            inst = random_instance(rng)
            b = rng.uniform(-1, 1, inst.n)
            lam, mu = rng.uniform(-2, 2, 2)
            combo = Instance(inst.weights, lam * inst.scalars + mu * b, inst.vectors, inst.norm)
            other = Instance(inst.weights, b, inst.vectors, inst.norm)
            lhs = chebyshev_direct(combo)
            rhs = lam * chebyshev_direct(inst) + mu * chebyshev_direct(other)
            scale = magnitude(inst) + magnitude(other) + magnitude(combo)
            assert norm(lhs - rhs, inst.norm) <= 1e-10 * scale

    def test_linear_in_vectors(self, rng):
        for _ in range(30):
            inst = random_instance(rng)
            y = rng.uniform(-1, 1, inst.vectors.shape)
            lam, mu = rng.uniform(-2, 2, 2)
            combo = Instance(inst.weights, inst.scalars, lam * inst.vectors + mu * y, inst.norm)
            other = Instance(inst.weights, inst.scalars, y, inst.norm)
            lhs = chebyshev_direct(combo)
            rhs = lam * chebyshev_direct(inst) + mu * chebyshev_direct(other)
            scale = magnitude(inst) + magnitude(other) + magnitude(combo)
            assert norm(lhs - rhs, inst.norm) <= 1e-10 * scale

    def test_shift_invariance(self, rng):
        for _ in range(30):
            inst = random_instance(rng, weights="signed")
            c = rng.uniform(-3, 3)
            v = rng.uniform(-3, 3, inst.dimension)
            base = chebyshev_direct(inst)
            shifted_a = chebyshev_direct(Instance(inst.weights, inst.scalars + c, inst.vectors, inst.norm))
            shifted_x = chebyshev_direct(Instance(inst.weights, inst.scalars, inst.vectors + v, inst.norm))
            scale = magnitude(inst) * (1 + abs(c) + np.abs(v).sum())
            assert norm(base - shifted_a, inst.norm) <= 1e-10 * scale
            assert norm(base - shifted_x, inst.norm) <= 1e-10 * scale

    def test_constant_sequences_vanish(self, rng):
        for _ in range(30):
            inst = random_instance(rng, weights="signed")
            ca = Instance(inst.weights, np.full(inst.n, rng.uniform(-1, 1)), inst.vectors, inst.norm)
            cx = Instance(inst.weights, inst.scalars, np.tile(inst.vectors[0], (inst.n, 1)), inst.norm)
            for c in (ca, cx):
                assert norm(chebyshev_direct(c), c.norm) <= 1e-12 * max(c.scale(), 1.0)

    def test_weight_scaling_is_quadratic(self, rng):
        for _ in range(30):
            inst = random_instance(rng, weights="signed")
            lam = rng.uniform(0.1, 5)
            scaled = Instance(lam * inst.weights, inst.scalars, inst.vectors, inst.norm)
            base = chebyshev_direct(inst)
            assert norm(chebyshev_direct(scaled) - lam**2 * base, inst.norm) <= 1e-12 * lam**2 * magnitude(inst) * 10


def test_ordered_sum_is_left_to_right():
    vals = np.array([1e16, 1.0, -1e16, 1.0])
    # ((1e16 + 1) - 1e16) + 1 = 1 in sequential double arithmetic
    assert ordered_sum(vals) == 1.0
