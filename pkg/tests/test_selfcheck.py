from __future__ import annotations

import json

import pytest

from uur import selfcheck


def test_run_all_passes_with_small_trial_count():
    results = selfcheck.run_all(seed=42, trials=10)
    assert len(results) == 13
    names = [r.name for r in results]
    assert len(set(names)) == len(names)
    for r in results:
        assert r.failures == 0, f"{r.name}: {r.counterexample}"
        assert r.trials > 0


def test_run_all_is_deterministic():
    a = selfcheck.run_all(seed=7, trials=8)
    b = selfcheck.run_all(seed=7, trials=8)
    assert [(r.name, r.trials, r.failures, r.worst) for r in a] == \
           [(r.name, r.trials, r.failures, r.worst) for r in b]


def test_corruption_is_caught_with_counterexample():
    results = selfcheck.run_all(seed=3, trials=10, corrupt="k_m")
    bad = [r for r in results if r.failures]
    assert bad, "the corrupted split bound must trip the chain suite"
    assert bad[0].name == "pair_chain"
    ce = bad[0].counterexample
    # The counterexample must be enough to replay the instance.
    assert {"suite", "trial", "violation", "state", "operators"} <= set(ce)
    json.dumps(ce)  # serializable as emitted by the CLI


def test_unknown_corruption_target_rejected():
    with pytest.raises(ValueError):
        selfcheck.run_all(seed=3, trials=2, corrupt="everything")
