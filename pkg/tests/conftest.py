from __future__ import annotations

import numpy as np
import pytest

from chebgruss.space import Instance, NormDescriptor

_acceptance: list[tuple[str, str]] = []


@pytest.fixture
def worked():
    """The 3-point instance p=(1,1,1), a=(1,2,3), x=(1,4,9) on the real line."""
    return Instance([1.0, 1.0, 1.0], [1.0, 2.0, 3.0], [1.0, 4.0, 9.0], NormDescriptor.real_abs())


@pytest.fixture
def rng():
    return np.random.default_rng(20031303)


def random_instance(rng, n=None, d=None, norm=None, weights="positive", complex_scalars=False):
    n = n if n is not None else int(rng.integers(2, 13))
    if norm is None:
        d = d if d is not None else int(rng.choice([1, 3]))
        norm = NormDescriptor.lp(float(rng.choice([1.0, 2.0, np.inf, 3.5])), d)
    d = norm.dimension
    if weights == "uniform":
        p = np.full(n, 1.0 / n)
    elif weights == "positive":
        p = rng.uniform(0.05, 1.0, n)
    elif weights == "simplex":
        p = rng.dirichlet(np.ones(n))
        p = p / p.sum()
    else:
        p = rng.uniform(-1.0, 1.0, n)
    a = rng.uniform(-1, 1, n)
    if complex_scalars:
        a = a + 1j * rng.uniform(-1, 1, n)
    x = rng.uniform(-1, 1, (n, d))
    if norm.is_complex_space:
        x = x + 1j * rng.uniform(-1, 1, (n, d))
    return Instance(p, a, x, norm)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    _acceptance.append((name, "PASS" if report.outcome == "passed" else report.outcome.upper()))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{outcome:5s} {name}")
