"""Attack plans: shapes, capability confinement, guess statistics."""

import json
import random

import pytest
from scipy import stats as scipy_stats

from phishgame import attacks, game, scenarios, vmachine
from phishgame.attacks import (
    AttackerStrategy,
    StrategyKind,
    apply_attack,
    best_guess_success_probability,
    plan_attack,
)
from phishgame.errors import DomainError, IllegalStrategyError
from phishgame.scenarios import BROWSER_PROFILES, MALLORY_ORIGIN, WORLD
from phishgame.secretstore import mark_compromised, provision_secret
from phishgame.vmachine import (
    CounterfeitDesktop,
    FakeDialogImage,
    LoginFormInPage,
    project_visible,
    visible_screen_to_dict,
)

U = 128


@pytest.fixture
def store():
    return provision_secret(random.Random(99), U)


@pytest.fixture
def ctx(store):
    return scenarios.attack_context(store)


def _plan(name, rng_seed=0, store=None, fidelity="realistic"):
    store = store or provision_secret(random.Random(99), U)
    strategy = scenarios.make_strategy(name, fidelity)
    return plan_attack(strategy, random.Random(rng_seed), U, scenarios.attack_context(store))


def _apply(name, store, rng_seed=0, fidelity="realistic"):
    session = vmachine.begin_session(BROWSER_PROFILES["chrome"], store, WORLD.registry)
    strategy = scenarios.make_strategy(name, fidelity)
    plan = plan_attack(strategy, random.Random(rng_seed), U, scenarios.attack_context(store))
    return apply_attack(session, plan), plan


def test_fake_dialog_plan_has_no_window_icon():
    plan = _plan("fake_dialog_div")
    dialogs = [
        step.content
        for step in plan.steps
        if isinstance(step, attacks.PlaceSurfaceStep)
        and isinstance(step.content, FakeDialogImage)
    ]
    assert dialogs and all(not d.has_window_icon for d in dialogs)


def test_fullscreen_plan_starts_with_user_gesture():
    plan = _plan("fullscreen_counterfeit")
    fullscreen_steps = [
        s for s in plan.steps if isinstance(s, attacks.RequestFullscreenStep)
    ]
    assert fullscreen_steps and fullscreen_steps[0].trigger == "user_gesture"


def test_guess_uniformity_chi_square():
    """10,000 seeded fake-dialog guesses are uniform over the universe."""
    rng = random.Random(12345)
    store = provision_secret(random.Random(99), U)
    ctx = scenarios.attack_context(store)
    strategy = scenarios.make_strategy("fake_dialog_div")
    counts = [0] * U
    for _ in range(10_000):
        plan = plan_attack(strategy, rng, U, ctx)
        counts[plan.guessed_secret_id] += 1
    result = scipy_stats.chisquare(counts)
    assert result.pvalue > 1e-3


def test_plain_phish_apply(store):
    session, _ = _apply("plain_phish_page", store)
    assert any(isinstance(s.content, LoginFormInPage) for s in session.screen.canvas)
    assert not session.screen.chrome_bar.padlock


def test_fullscreen_apply_warns_on_chrome_profile(store):
    session, _ = _apply("fullscreen_counterfeit", store)
    assert session.screen.fullscreen
    assert session.screen.warning.style == "transient"


def test_undecorated_popup_overlay(store):
    session, _ = _apply("undecorated_popup", store)
    visible = project_visible(session.screen)
    assert visible.overlay_address_bar == MALLORY_ORIGIN


def test_cert_bearing_mallory_yields_genuine_dialog(store):
    session, _ = _apply("cert_bearing_mallory", store)
    dialog = session.screen.modal
    assert dialog is not None  # honest dialog...
    assert dialog.identity == scenarios.MALLORY_IDENTITY  # ...with Mallory's identity
    assert dialog.secret == store.secret  # ...and the true secret


def test_secret_thief_requires_compromise(store):
    with pytest.raises(IllegalStrategyError):
        _plan("secret_thief", store=store)
    stolen = _plan("secret_thief", store=mark_compromised(store))
    assert stolen.guessed_secret_id == store.secret.secret_id


def test_secret_thief_displays_true_secret(store):
    compromised = mark_compromised(store)
    session, _ = _apply("secret_thief", compromised)
    visible = project_visible(session.screen)
    assert visible.dialog.secret_id == store.secret.secret_id


def test_no_plan_mutates_store(store):
    for name in ("plain_phish_page", "fake_dialog_div", "undecorated_popup",
                 "fullscreen_counterfeit", "cookie_as_password", "cert_bearing_mallory"):
        session, _ = _apply(name, store)
        assert session.store == store


def test_non_thief_screens_never_leak_secret(store):
    """Exhaustive scan: over strategies x 1,000 seeds, every secret value on
    an attacker screen is the attacker's own guess; guess collisions with the
    installed secret occur at the expected 1/U rate."""
    names = [k.value for k in StrategyKind if k != StrategyKind.SECRET_THIEF]
    collisions = 0
    guessing_runs = 0
    for name in names:
        for seed in range(1000):
            session, plan = _apply(name, store, rng_seed=seed)
            visible = visible_screen_to_dict(project_visible(session.screen))
            shown = visible["dialog"]["secret_id"] if visible["dialog"] else None
            if name == "cert_bearing_mallory":
                # genuine (honest) dialog: true secret, Mallory identity
                assert shown == store.secret.secret_id
                continue
            assert shown == plan.guessed_secret_id
            if plan.guessed_secret_id is not None:
                guessing_runs += 1
                collisions += plan.guessed_secret_id == store.secret.secret_id
    expected = guessing_runs / U
    sigma = (guessing_runs * (1 / U) * (1 - 1 / U)) ** 0.5
    assert abs(collisions - expected) <= 4 * sigma


def test_best_guess_analytic():
    fake = scenarios.make_strategy("fake_dialog_div")
    thief = scenarios.make_strategy("secret_thief")
    plain = scenarios.make_strategy("plain_phish_page")
    assert best_guess_success_probability(fake, "secret_checker", 128) == 1 / 128
    assert best_guess_success_probability(fake, "secret_checker", 2) == 0.5
    assert best_guess_success_probability(thief, "secret_checker", 128) == 1.0
    with pytest.raises(DomainError):
        best_guess_success_probability(plain, "secret_checker", 128)
    with pytest.raises(DomainError):
        best_guess_success_probability(fake, "oblivious", 128)
