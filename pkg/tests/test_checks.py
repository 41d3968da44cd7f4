"""Smoke tests for the self-check suites; the acceptance suite reruns them
at their full stated sample counts."""

import random

import pytest

from gcohom.checks import (SUITES, random_equivariant_cocycle, run_suite,
                           suite_corner, suite_differentials,
                           suite_equivariantize, suite_homotopy, suite_snf)
from gcohom.cochains import differential, is_equivariant
from gcohom.errors import ValidationError
from gcohom.groups import make_cyclic
from gcohom.modules import trivial_module


def test_registry_and_unknown_suite():
    assert set(SUITES) == {"differentials", "homotopy", "equivariantize",
                           "corner", "snf", "signs"}
    with pytest.raises(ValidationError):
        run_suite("nonesuch")


def test_run_all_concatenates():
    results = run_suite("all", seed=3, samples=4, max_order=3)
    assert {r.suite for r in results} == set(SUITES)
    assert all(r.passed for r in results)


def test_differentials_small():
    results = suite_differentials(seed=5, samples=12, max_order=4)
    assert [r.name for r in results] == [
        "d o d = 0", "d_h o d_h = 0", "d_v o d_v = 0",
        "d_h d_v + d_v d_h = 0", "D o D = 0"]
    assert all(r.passed for r in results)


def test_homotopy_small():
    assert all(r.passed for r in suite_homotopy(seed=5, samples=4))


def test_equivariantize_small():
    assert all(r.passed for r in suite_equivariantize(seed=5, samples=10))


def test_corner_small():
    results = suite_corner(seed=5, samples=6, max_order=3)
    assert all(r.passed for r in results)
    assert "exhaustive" in results[0].name


def test_snf_small():
    assert all(r.passed for r in suite_snf(seed=5, samples=10))


def test_random_cocycle_generator():
    rng = random.Random(11)
    group = make_cyclic(4)
    module = trivial_module(group, 0, (2,))
    seen_nonzero = False
    for _ in range(8):
        f = random_equivariant_cocycle(rng, group, module, 2)
        assert is_equivariant(f)
        assert differential(f).is_zero()
        seen_nonzero = seen_nonzero or not f.is_zero()
    assert seen_nonzero
