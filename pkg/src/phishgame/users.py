"""Alice-Human models: signal perception under imperfect attention, and
decision policies embodying candidate screening strategies.

All randomness lives in `perceive`; `decide` is a pure function of the
perceived signal set. Counterfeit chrome emits the same signal kinds as
genuine chrome — that is the attack — except the structurally honest ones:
the true secret id (absent theft or a lucky guess), a dialog window icon,
and the popup overlay address bar.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .vmachine import ScreenState, VisibleScreen, project_visible, CRAYON

ENTER = "enter"
BACK_AWAY = "back_away"


class SignalKind(Enum):
    PADLOCK_VISIBLE = "padlock_visible"
    GREEN_BAR_VISIBLE = "green_bar_visible"
    IDENTITY_SHOWN = "identity_shown"
    TRENT_NAME_SHOWN = "trent_name_shown"
    SECRET_SHOWN = "secret_shown"
    DIALOG_HAS_WINDOW_ICON = "dialog_has_window_icon"
    SCREEN_GREYED = "screen_greyed"
    FULLSCREEN_WARNING = "fullscreen_warning"
    OVERLAY_ADDRESS_BAR = "overlay_address_bar"
    LOGIN_FIELDS_IN_WEBPAGE = "login_fields_in_webpage"
    FULLSCREEN_ACTIVE = "fullscreen_active"


@dataclass(frozen=True, slots=True)
class Signal:
    kind: SignalKind
    value: object = None


@dataclass(frozen=True, slots=True)
class AttentionProfile:
    name: str
    p_notice: dict  # SignalKind -> probability; unlisted kinds default to 1.0
    fidelity_penalty: float = 1.0  # chance a crayon-grade fake is spotted outright

    def prob(self, kind: SignalKind) -> float:
        return self.p_notice.get(kind, 1.0)


FULL_ATTENTION = AttentionProfile("full", {}, fidelity_penalty=1.0)

# Illustrative probabilities, not calibrated against human data.
CASUAL_ATTENTION = AttentionProfile(
    "casual",
    {
        SignalKind.FULLSCREEN_WARNING: 0.3,
        SignalKind.DIALOG_HAS_WINDOW_ICON: 0.2,
        SignalKind.IDENTITY_SHOWN: 0.5,
        SignalKind.SECRET_SHOWN: 1.0,
    },
    fidelity_penalty=0.9,
)

ATTENTION_PRESETS = {"full": FULL_ATTENTION, "casual": CASUAL_ATTENTION}


@dataclass(frozen=True, slots=True)
class Perception:
    """What the user took in: noticed signals plus structural affordances.

    The affordances (is there anything to type into?) are not attention
    gated — you cannot overlook the box you are typing in — while every
    informational signal is.
    """

    signals: frozenset  # of Signal
    dialog_affordance: bool
    page_form_affordance: bool
    recognized_fake: bool = False

    def has(self, kind: SignalKind) -> bool:
        return any(s.kind == kind for s in self.signals)

    def value_of(self, kind: SignalKind):
        for s in self.signals:
            if s.kind == kind:
                return s.value
        return None


def candidate_signals(visible: VisibleScreen) -> tuple:
    """Every signal the screen offers, in fixed order (for deterministic draws)."""
    out = []
    if visible.padlock:
        out.append(Signal(SignalKind.PADLOCK_VISIBLE))
    if visible.green_bar:
        out.append(Signal(SignalKind.GREEN_BAR_VISIBLE))
    if visible.dialog is not None:
        d = visible.dialog
        out.append(Signal(SignalKind.IDENTITY_SHOWN, d.identity_text))
        out.append(Signal(SignalKind.TRENT_NAME_SHOWN, d.trent_name))
        out.append(Signal(SignalKind.SECRET_SHOWN, d.secret_id))
        out.append(Signal(SignalKind.DIALOG_HAS_WINDOW_ICON, d.has_window_icon))
    if visible.greyed:
        out.append(Signal(SignalKind.SCREEN_GREYED))
    if visible.warning_style is not None:
        out.append(Signal(SignalKind.FULLSCREEN_WARNING, visible.warning_style))
    if visible.overlay_address_bar is not None:
        out.append(Signal(SignalKind.OVERLAY_ADDRESS_BAR, visible.overlay_address_bar))
    if visible.login_form_in_page:
        out.append(Signal(SignalKind.LOGIN_FIELDS_IN_WEBPAGE))
    if visible.fullscreen:
        out.append(Signal(SignalKind.FULLSCREEN_ACTIVE))
    return tuple(out)


def perceive(screen: ScreenState, attention: AttentionProfile, rng: random.Random) -> Perception:
    visible = project_visible(screen)

    recognized_fake = False
    if visible.asset_style == CRAYON:
        recognized_fake = rng.random() < attention.fidelity_penalty

    noticed = []
    for signal in candidate_signals(visible):
        p = attention.prob(signal.kind)
        if p >= 1.0 or rng.random() < p:
            noticed.append(signal)

    return Perception(
        signals=frozenset(noticed),
        dialog_affordance=visible.dialog is not None,
        page_form_affordance=visible.login_form_in_page,
        recognized_fake=recognized_fake,
    )


class PolicyKind(Enum):
    OBLIVIOUS = "oblivious"
    PADLOCK_CHECKER = "padlock_checker"
    CERT_INSPECTOR = "cert_inspector"
    WARNING_SENSITIVE = "warning_sensitive"
    SECRET_CHECKER = "secret_checker"


POLICY_NAMES = {kind.value: kind for kind in PolicyKind}


@dataclass(frozen=True, slots=True)
class UserPolicy:
    kind: PolicyKind
    expected_secret_id: Optional[int] = None
    known_identities: frozenset = frozenset()
    known_trents: frozenset = frozenset()
    known_origins: frozenset = frozenset()

    @property
    def name(self) -> str:
        return self.kind.value


def decide(policy: UserPolicy, perception: Perception) -> str:
    """Map a perceived signal set to enter-credentials or back-away."""
    if perception.recognized_fake:
        return BACK_AWAY

    any_affordance = perception.dialog_affordance or perception.page_form_affordance
    if not any_affordance:
        return BACK_AWAY

    kind = policy.kind
    if kind == PolicyKind.OBLIVIOUS:
        return ENTER

    if kind == PolicyKind.PADLOCK_CHECKER:
        ok = perception.has(SignalKind.PADLOCK_VISIBLE) or perception.has(
            SignalKind.GREEN_BAR_VISIBLE
        )
        return ENTER if ok else BACK_AWAY

    if kind == PolicyKind.CERT_INSPECTOR:
        identity = perception.value_of(SignalKind.IDENTITY_SHOWN)
        return ENTER if identity in policy.known_identities else BACK_AWAY

    if kind == PolicyKind.WARNING_SENSITIVE:
        if perception.has(SignalKind.FULLSCREEN_WARNING):
            return BACK_AWAY
        ok = perception.has(SignalKind.PADLOCK_VISIBLE) or perception.has(
            SignalKind.GREEN_BAR_VISIBLE
        )
        return ENTER if ok else BACK_AWAY

    if kind == PolicyKind.SECRET_CHECKER:
        # Credentials go only into a dialog; a page whose sole login path is
        # an in-page form is treated as hostile.
        if not perception.dialog_affordance:
            return BACK_AWAY
        overlay = perception.value_of(SignalKind.OVERLAY_ADDRESS_BAR)
        if overlay is not None and overlay not in policy.known_origins:
            return BACK_AWAY
        secret = perception.value_of(SignalKind.SECRET_SHOWN)
        identity = perception.value_of(SignalKind.IDENTITY_SHOWN)
        trent = perception.value_of(SignalKind.TRENT_NAME_SHOWN)
        if (
            secret is not None
            and secret == policy.expected_secret_id
            and identity in policy.known_identities
            and trent in policy.known_trents
        ):
            return ENTER
        return BACK_AWAY

    raise ValueError(f"unknown policy kind {kind!r}")
