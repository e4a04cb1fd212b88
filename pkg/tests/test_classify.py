import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monadlab import MonadShape, conjecture_predicate, decide, explore_conjecture, verify_monad, witness_search
from monadlab import classify
from monadlab.classify import Decision, TheoremViolation, binom_nonneg, conjecture_shape, syzygy_system
from monadlab.io import dumps, search_report_to_json


def test_decide_examples():
    d = decide(MonadShape(1, 4, 1, 3))
    assert d.exists and d.condition_1 and d.expected_codim == 3
    d = decide(MonadShape(2, 5, 2, 3))
    assert not d.exists and not d.condition_1 and not d.condition_2


@pytest.mark.parametrize("k,threshold", [(2, 2), (3, 3), (4, 4)])
def test_intro_family_thresholds(k, threshold):
    for n in range(1, 11):
        for r in range(max(0, 2 - n), 12):
            assert decide(MonadShape(n + r - 2, 2 * n + r - 1, n, k)).exists == (r >= threshold)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 8), st.integers(0, 14), st.integers(0, 8), st.integers(1, 5))
def test_decide_monotone(a, b, c, k):
    here = decide(MonadShape(a, b, c, k)).exists
    if here:
        assert decide(MonadShape(a, b + 1, c, k)).exists
    else:
        assert not decide(MonadShape(a, b, c, k + 1)).exists


def test_syzygy_system_matches_product():
    rng = np.random.default_rng(0)
    q, c, b, V = 5, 2, 4, 3
    B = rng.integers(0, q, size=(c, b, V))
    u = rng.integers(0, q, size=b * V)
    E = syzygy_system(B).astype(np.int64)
    # B*u as quadrics, by direct expansion
    U = u.reshape(b, V)
    direct = np.einsum("ilv,lw->ivw", B, U)
    sym = direct + direct.transpose(0, 2, 1) - np.einsum("ivv->iv", direct)[:, :, None] * np.eye(V, dtype=int)
    iu = np.triu_indices(V)
    assert np.array_equal((E @ u) % q, (sym[:, iu[0], iu[1]].reshape(-1)) % q)


def test_no_witness_for_excluded_shape():
    rep = witness_search(MonadShape(1, 3, 1, 3), 3, 300, seed=0)
    assert rep.witnesses == [] and not rep.decision.exists
    assert sum(rep.rejection_stats.values()) == rep.trials_run == 300


def test_witness_for_admissible_shape():
    rep = witness_search(MonadShape(1, 4, 1, 3), 3, 100, seed=1)
    assert len(rep.witnesses) == 1
    assert verify_monad(rep.witnesses[0], [3]).is_monad


def test_witness_boundary_a_zero():
    rep = witness_search(MonadShape(0, 3, 1, 2), 3, 50, seed=0)
    assert rep.witnesses and rep.witnesses[0].A.shape == (3, 0)


def test_search_reproducible():
    runs = [dumps(search_report_to_json(witness_search(MonadShape(1, 4, 1, 2), 5, 40, seed=3, max_witnesses=3)))
            for _ in range(2)]
    assert runs[0] == runs[1]
    assert json.loads(runs[0])["witnesses"]


def test_violation_raises(monkeypatch):
    # pretend the criterion excludes a shape that plainly exists: the first witness must abort the search
    monkeypatch.setattr(classify, "decide", lambda s: Decision(False, False, False, s.expected_codim))
    with pytest.raises(TheoremViolation):
        classify.witness_search(MonadShape(0, 2, 1, 1), 3, 20, seed=0)


def test_binom_convention():
    assert binom_nonneg(3, 2) == 3 and binom_nonneg(1, 2) == 0 and binom_nonneg(-1, 2) == 0


def test_predicate_examples():
    assert conjecture_predicate(2, 1, 1)
    assert not conjecture_predicate(3, 1, 1)
    assert conjecture_predicate(2, 2, 3)
    assert not conjecture_predicate(2, -1, 0)
    assert conjecture_shape(2, 2, 3).as_tuple() == (6, 8, 3, 2)


def test_explorer_k2_r1():
    rep = explore_conjecture(2, 1, 1, q=3, trials=200, seed=0)
    assert rep.extra["predicate"] is True
    assert len(rep.witnesses) == 1
    assert rep.extra["estimates"][0]["status"] in ("estimated", "empty_over_tested_fields")
