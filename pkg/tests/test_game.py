"""Episodes, batches, the evaluation matrix, and the adaptive attacker."""

import math
import random
from dataclasses import replace

import pytest

from phishgame import game, scenarios
from phishgame.errors import ConfigurationError
from phishgame.game import (
    best_response,
    default_config,
    evaluate_matrix,
    run_batch,
    run_episode,
    separation_index,
    split_seed,
    wilson_interval,
)
from phishgame.users import FULL_ATTENTION

FAKE_DIALOG = scenarios.make_strategy("fake_dialog_div")
PLAIN = scenarios.make_strategy("plain_phish_page")


def test_genuine_secret_checker_always_accepts():
    cfg = default_config(policy_name="secret_checker", strategy=FAKE_DIALOG, p_genuine=1.0, seed=11)
    transcript = run_episode(cfg)
    assert transcript.decision == "enter"
    assert not transcript.credentials_captured


def test_replay_byte_identical():
    cfg = default_config(strategy=FAKE_DIALOG, seed=1234)
    assert run_episode(cfg).to_json() == run_episode(cfg).to_json()


def test_illegal_config_rejected_before_draws():
    with pytest.raises(ConfigurationError):
        default_config(strategy=scenarios.make_strategy("secret_thief"), seed=0)


def test_fake_dialog_capture_rate_matches_analytic_oracle():
    """Monte Carlo at N = 100,000 vs the 1/U analytic value, 3 sigma."""
    n = 100_000
    cfg = default_config(policy_name="secret_checker", strategy=FAKE_DIALOG, seed=2024)
    stats = run_batch(cfg, n)
    p = 1 / 128
    sigma = math.sqrt(p * (1 - p) / n)
    assert abs(stats.attack_success_rate - p) <= 3 * sigma
    # every capture is a guess collision, nothing else
    assert stats.captures == stats.collisions


def test_batch_of_one_is_binary():
    cfg = default_config(strategy=FAKE_DIALOG, seed=5)
    stats = run_batch(cfg, 1)
    assert stats.attack_success_rate in (0.0, 1.0)


def test_batch_deterministic():
    cfg = default_config(strategy=FAKE_DIALOG, seed=99, p_genuine=0.5)
    assert run_batch(cfg, 500) == run_batch(cfg, 500)


def test_plain_phish_vs_secret_checker_exact_zero():
    # PlainPhishPage offers only in-page login fields, which the secret
    # checker rejects categorically; zero is exact at any n.
    cfg = default_config(policy_name="secret_checker", strategy=PLAIN, seed=17)
    assert run_batch(cfg, 2000).attack_success_rate == 0.0


def test_wilson_interval_contains_point_estimate():
    for successes, n in ((0, 10), (1, 100), (50, 100), (100, 100)):
        low, high = wilson_interval(successes, n)
        assert low <= successes / n <= high
        assert 0.0 <= low <= high <= 1.0


def test_seed_splitting_spreads():
    children = {split_seed(42, i) for i in range(1000)}
    assert len(children) == 1000
    assert split_seed(42, 0) != split_seed(43, 0)


def test_matrix_shape():
    strategies = scenarios.all_strategies()
    policies = ["oblivious", "padlock_checker", "cert_inspector", "warning_sensitive", "secret_checker"]
    result = evaluate_matrix(strategies, policies, n_per_cell=50, base_seed=7)
    assert len(result.cells) == 35
    assert len(result.baselines) == 5


def test_oblivious_accepts_plain_phish_fully():
    result = evaluate_matrix([PLAIN], ["oblivious"], n_per_cell=200, base_seed=3)
    assert result.cells[("plain_phish_page", "oblivious")].attack_success_rate == 1.0


def test_payoff_conservation():
    rows = {
        "credentials_to_mallory": (-1.0, 1.0),
        "credentials_to_bob": (1.0, 0.0),
        "backaway_from_bob": (-0.1, 0.0),
        "backaway_from_mallory": (0.0, 0.0),
    }
    cfg = default_config(policy_name="padlock_checker", strategy=FAKE_DIALOG, p_genuine=0.5, seed=31)
    for i in range(200):
        t = run_episode(replace(cfg, seed=split_seed(cfg.seed, i)))
        assert (t.user_payoff, t.attacker_payoff) == rows[t.payoff_row]


# --- separation index -----------------------------------------------------------


def test_separation_secret_checker_near_one():
    strategies = [s for s in scenarios.all_strategies() if s.name != "secret_thief"]
    index = separation_index("secret_checker", FULL_ATTENTION, strategies, n=2000, base_seed=2)
    # analytic: 1 - 1/U plus Monte Carlo noise on the max over strategies
    assert index >= 1 - 1 / 128 - 0.01


def test_separation_oblivious_zero():
    assert separation_index("oblivious", FULL_ATTENTION, [PLAIN], n=500, base_seed=2) == 0.0


def test_separation_padlock_vs_fullscreen_zero():
    from phishgame.users import AttentionProfile, SignalKind

    blind = AttentionProfile("b", {SignalKind.FULLSCREEN_WARNING: 0.0})
    fc = scenarios.make_strategy("fullscreen_counterfeit")
    assert separation_index("padlock_checker", blind, [fc], n=500, base_seed=2) == 0.0


# --- adaptive best response -------------------------------------------------------


def test_best_response_empty_history_tiebreak():
    strategies = scenarios.all_strategies()[:3]
    assert best_response([], strategies, exploration=0.0) == strategies[0]


def test_best_response_argmax():
    strategies = [scenarios.make_strategy(n) for n in ("fake_dialog_div", "plain_phish_page")]
    history = [("fake_dialog_div", False)] * 10 + [("plain_phish_page", True)] * 3 + [
        ("plain_phish_page", False)
    ] * 7
    assert best_response(history, strategies, exploration=0.0).name == "plain_phish_page"


def test_best_response_laplace_values():
    # (0+1)/(10+2) vs (3+1)/(10+2)
    assert (0 + 1) / (10 + 2) == pytest.approx(0.0833, abs=1e-4)
    assert (3 + 1) / (10 + 2) == pytest.approx(0.3333, abs=1e-4)


def test_best_response_exploration_draws():
    strategies = scenarios.all_strategies()[:4]
    rng = random.Random(0)
    seen = {best_response([], strategies, exploration=1.0, rng=rng).name for _ in range(100)}
    assert len(seen) == 4


def test_ordering_invariant_in_transcripts():
    cfg = default_config(policy_name="oblivious", strategy=FAKE_DIALOG, p_genuine=1.0, seed=8)

    def check(t):
        ticks = {name: tick for tick, name, _ in t.events}
        if "enter_credentials" in ticks and "page_created" in ticks:
            assert ticks["page_created"] > ticks["enter_credentials"]

    run_batch(cfg, 200, on_transcript=check)
