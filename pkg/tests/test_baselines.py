import numpy as np
import pytest

from conesel import oracles
from conesel.baselines import baseline1_select, baseline2_select, slack_feasible
from conesel.constraints import Configuration, ConstraintSet
from conesel.errors import HardInfeasibleError

TOY = ConstraintSet([[1.0, -1.0, 1.0]], [1.0, 0.0, -2.0], n_hard=1)


def _instances(rng, n):
    done = 0
    while done < n:
        cs = oracles.random_instance(rng, hard_feasible=True, c_range=(3, 12))
        if oracles.oracle_feasible(cs, cs.hard_only()):
            done += 1
            yield cs


def test_slack_total_matches_oracle():
    rng = np.random.default_rng(0)
    for cs in _instances(rng, 500):
        P = oracles.random_config(rng, cs)
        rep = slack_feasible(cs, P)
        # hard rows carry no slack here, so compare with the oracle restricted
        # to enforced rows only when nothing hard is enforced
        if cs.n_hard == 0:
            assert rep.total_slack == pytest.approx(
                oracles.slack_lp_optimum(cs.A[:, P.bits], cs.B[P.bits]), abs=1e-7)
        assert rep.feasible == oracles.oracle_feasible(cs, P)
        assert np.all(rep.slacks[~P.bits] == 0) and np.all(rep.slacks[: cs.n_hard] == 0)


def test_slack_hard_infeasible():
    cs = ConstraintSet([[1.0, -1.0]], [-1.0, -1.0], n_hard=2)
    with pytest.raises(HardInfeasibleError):
        slack_feasible(cs, cs.all_ones())


def test_baseline1_toy():
    P = baseline1_select(TOY)
    assert P.bits[0] and P.bits[1:].sum() == 1
    assert oracles.oracle_feasible(TOY, P)


def test_baselines_feasible_and_keep_hard():
    rng = np.random.default_rng(1)
    for cs in _instances(rng, 400):
        P1 = baseline1_select(cs)
        assert P1.respects(cs) and oracles.oracle_feasible(cs, P1)
        P_prev = oracles.random_config(rng, cs)
        lm = rng.uniform(0, 1, cs.c)
        P2, lm2 = baseline2_select(cs, P_prev, lm)
        assert P2.respects(cs) and oracles.oracle_feasible(cs, P2)
        assert lm2.shape == (cs.c,) and np.all(lm2 >= -1e-9)


def test_baseline2_drops_by_multiplier():
    # u >= 0.5 against u <= 0.2 and u <= 0.1
    cs = ConstraintSet([[-1.0, 1.0, 1.0]], [-0.5, 0.2, 0.1])
    P, _ = baseline2_select(cs, cs.all_ones(), np.array([0.0, 1.0, 5.0]))
    assert P == Configuration([1, 0, 0])
    P, _ = baseline2_select(cs, cs.all_ones(), np.array([5.0, 1.0, 0.0]))
    assert P == Configuration([0, 1, 1])
    # a previously disregarded constraint counts as multiplier zero, so the
    # order becomes 1, 0, 2 and two drops are needed
    P, _ = baseline2_select(cs, Configuration([0, 1, 1]), np.array([5.0, 1.0, 0.0]))
    assert P == Configuration([0, 0, 1])
