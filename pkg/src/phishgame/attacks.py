"""Mallory's strategy catalog.

Each strategy compiles to an ordered plan of engine actions that only use
the sandboxed-page vocabulary (navigate without a trusted cert, draw
surfaces, open popups, request fullscreen). The two exceptions the model
allows: CertBearingMallory presents a certificate validly issued to
Mallory's own identity, and SecretThief reads a store the scenario has
already marked compromised.

Category coverage of installed-software behaviour:
  1 drawing outside the canvas      -> FullscreenCounterfeit's desktop takeover
  2 modal windows                   -> FakeDialogDiv, UndecoratedPopup
  3 file manipulation / cookies     -> CookieAsPassword
  4 local data (the defense itself) -> VisitedLinkStyling spoof
  5 UAC-style modal blanking        -> fake greyed backdrop in FullscreenCounterfeit
  6 TLS certificate inspection      -> fake padlock/green-bar/identity chrome
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from . import vmachine
from .errors import DomainError, IllegalStrategyError
from .pki import Certificate, IdentityCredentials
from .secretstore import CAPABILITY_DENIED, SecretStore, read_secret, steal_secret
from .vmachine import (
    CounterfeitDesktop,
    FakeDialogImage,
    LoginFormInPage,
    REALISTIC,
    Session,
    VisitedLinkStyling,
)


class StrategyKind(Enum):
    PLAIN_PHISH_PAGE = "plain_phish_page"
    FAKE_DIALOG_DIV = "fake_dialog_div"
    UNDECORATED_POPUP = "undecorated_popup"
    FULLSCREEN_COUNTERFEIT = "fullscreen_counterfeit"
    COOKIE_AS_PASSWORD = "cookie_as_password"
    CERT_BEARING_MALLORY = "cert_bearing_mallory"
    SECRET_THIEF = "secret_thief"


STRATEGY_NAMES = {kind.value: kind for kind in StrategyKind}

# Strategies whose plan displays a guessed (or stolen) secret image.
SECRET_SHOWING = {
    StrategyKind.FAKE_DIALOG_DIV,
    StrategyKind.UNDECORATED_POPUP,
    StrategyKind.FULLSCREEN_COUNTERFEIT,
    StrategyKind.SECRET_THIEF,
}


@dataclass(frozen=True, slots=True)
class AttackerStrategy:
    kind: StrategyKind
    target_identity: IdentityCredentials  # Bob's public credentials, copyable text
    fidelity: str = REALISTIC  # fullscreen counterfeits only

    @property
    def name(self) -> str:
        return self.kind.value


@dataclass(frozen=True, slots=True)
class AttackContext:
    """Public knowledge plus the attacker's own assets for one scenario.

    The attacker knows every public string (Bob's identity text, the Trent
    display name, chrome appearances) and owns mallory_origin. It never holds
    a Trent secret; the store is readable only when compromised.
    """

    target_origin: str
    attacker_origin: str
    trent_display_name: str
    mallory_certificate: Optional[Certificate]
    store: SecretStore


# Plan steps: the sandbox action vocabulary.


@dataclass(frozen=True, slots=True)
class NavigateStep:
    origin: str
    cert: Optional[Certificate] = None


@dataclass(frozen=True, slots=True)
class PlaceSurfaceStep:
    content: object
    in_popup: bool = False


@dataclass(frozen=True, slots=True)
class OpenPopupStep:
    origin: str
    undecorated_requested: bool = True


@dataclass(frozen=True, slots=True)
class RequestFullscreenStep:
    origin: str
    trigger: str = "user_gesture"


@dataclass(frozen=True, slots=True)
class AttemptSecretReadStep:
    """A sandboxed attempt to read the secret store; always denied."""

    origin: str


@dataclass(frozen=True, slots=True)
class AttackPlan:
    strategy: AttackerStrategy
    steps: tuple
    guessed_secret_id: Optional[int] = None


def _fake_dialog(strategy: AttackerStrategy, ctx: AttackContext, secret_id: int) -> FakeDialogImage:
    return FakeDialogImage(
        identity_text=strategy.target_identity.display_text(),
        trent_text=ctx.trent_display_name,
        shown_secret_id=secret_id,
    )


def plan_attack(
    strategy: AttackerStrategy,
    rng: random.Random,
    universe_size: int,
    ctx: AttackContext,
) -> AttackPlan:
    """Compile a strategy into engine actions, drawing any secret guess from rng."""
    here = ctx.attacker_origin
    kind = strategy.kind

    if kind == StrategyKind.PLAIN_PHISH_PAGE:
        return AttackPlan(strategy, (NavigateStep(here), PlaceSurfaceStep(LoginFormInPage())))

    if kind == StrategyKind.FAKE_DIALOG_DIV:
        guess = rng.randrange(universe_size)
        return AttackPlan(
            strategy,
            (NavigateStep(here), PlaceSurfaceStep(_fake_dialog(strategy, ctx, guess))),
            guessed_secret_id=guess,
        )

    if kind == StrategyKind.UNDECORATED_POPUP:
        guess = rng.randrange(universe_size)
        return AttackPlan(
            strategy,
            (
                NavigateStep(here),
                OpenPopupStep(here, undecorated_requested=True),
                PlaceSurfaceStep(_fake_dialog(strategy, ctx, guess), in_popup=True),
            ),
            guessed_secret_id=guess,
        )

    if kind == StrategyKind.FULLSCREEN_COUNTERFEIT:
        guess = rng.randrange(universe_size)
        desktop = CounterfeitDesktop(
            fidelity=strategy.fidelity,
            fake_address=ctx.target_origin,
            fake_padlock=True,
            fake_green_bar=True,
            fake_greyed=True,
            embedded=(
                vmachine.Surface(vmachine.sandbox(here), _fake_dialog(strategy, ctx, guess)),
            ),
        )
        return AttackPlan(
            strategy,
            (
                NavigateStep(here),
                RequestFullscreenStep(here, trigger="user_gesture"),
                PlaceSurfaceStep(desktop),
            ),
            guessed_secret_id=guess,
        )

    if kind == StrategyKind.COOKIE_AS_PASSWORD:
        # Phish at the cookie-creation (enrollment) page, then at login; both
        # are plain webpage forms, indistinguishable from PlainPhishPage to
        # the user.
        return AttackPlan(
            strategy,
            (
                NavigateStep(here),
                PlaceSurfaceStep(LoginFormInPage("cookie-enrollment-form")),
                PlaceSurfaceStep(LoginFormInPage("login-form")),
            ),
        )

    if kind == StrategyKind.CERT_BEARING_MALLORY:
        if ctx.mallory_certificate is None:
            raise IllegalStrategyError("cert_bearing_mallory needs Mallory's certificate")
        return AttackPlan(strategy, (NavigateStep(here, cert=ctx.mallory_certificate),))

    if kind == StrategyKind.SECRET_THIEF:
        stolen = steal_secret(ctx.store)  # raises unless the store is compromised
        return AttackPlan(
            strategy,
            (
                NavigateStep(here),
                PlaceSurfaceStep(_fake_dialog(strategy, ctx, stolen.secret_id)),
            ),
            guessed_secret_id=stolen.secret_id,
        )

    raise IllegalStrategyError(f"unknown strategy kind {kind!r}")


def apply_attack(session: Session, plan: AttackPlan) -> Session:
    """Run a plan through the engine; capability checks happen in vmachine.

    Steps that attempt chrome-only actions are recorded as violations and
    skipped rather than aborting the episode.
    """
    for step in plan.steps:
        if isinstance(step, NavigateStep):
            session = vmachine.navigate(session, step.origin, step.cert)
        elif isinstance(step, OpenPopupStep):
            session = vmachine.open_popup(session, step.origin, step.undecorated_requested)
        elif isinstance(step, RequestFullscreenStep):
            session = vmachine.request_fullscreen(session, step.origin, step.trigger)
        elif isinstance(step, PlaceSurfaceStep):
            session = vmachine.place_surface(
                session, _plan_origin(plan), step.content, step.in_popup
            )
        elif isinstance(step, AttemptSecretReadStep):
            got = read_secret(session.store, vmachine.sandbox(step.origin))
            if got is CAPABILITY_DENIED:
                session = _record_violation(session, "secret_read_denied")
            else:  # unreachable on an uncompromised model; defensive
                session = vmachine.place_surface(
                    session,
                    step.origin,
                    FakeDialogImage("stolen", "stolen", got.secret_id),
                )
        else:
            raise IllegalStrategyError(f"unknown plan step {step!r}")
    return session


def _plan_origin(plan: AttackPlan) -> str:
    for step in plan.steps:
        if isinstance(step, NavigateStep):
            return step.origin
    raise IllegalStrategyError("plan has no navigation step")


def _record_violation(session: Session, detail: str) -> Session:
    return replace(
        session, events=session.events + ((session.screen.now, "capability_violation", detail),)
    )


def best_guess_success_probability(
    strategy: AttackerStrategy, policy_kind: str, universe_size: int
) -> float:
    """Analytic probability that the displayed secret matches the user's.

    Defined only for strategies that show a secret and policies that check
    it; used as the oracle against Monte Carlo estimates.
    """
    if strategy.kind not in SECRET_SHOWING:
        raise DomainError(f"{strategy.name} shows no secret image")
    if policy_kind != "secret_checker":
        raise DomainError(f"policy {policy_kind!r} does not check the secret")
    if strategy.kind == StrategyKind.SECRET_THIEF:
        return 1.0
    return 1.0 / universe_size
