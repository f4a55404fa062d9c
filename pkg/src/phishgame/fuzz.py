"""Capability-soundness fuzzing.

Random attacker action sequences run against fresh sessions with
uncompromised secret stores. Soundness means two things hold on every
resulting screen: no trusted dialog exists, and every secret value shown on
an attacker surface is one the attacker generated itself (so nothing flowed
out of the store). Guess values are tracked per sequence, which makes the
check exact even when a random guess happens to collide with the installed
secret.

The vocabulary includes deliberately hostile steps — direct store reads
under a sandbox capability and an attempt to place a hand-built
TrustedDialog value — to exercise the engine's denials.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import scenarios, vmachine
from .secretstore import CAPABILITY_DENIED, SharedSecret, read_secret
from .vmachine import (
    CounterfeitDesktop,
    FakeDialogImage,
    LoginFormInPage,
    REALISTIC,
    CRAYON,
    TrustedDialog,
    VisitedLinkStyling,
    project_visible,
)


@dataclass(frozen=True, slots=True)
class FuzzReport:
    actions_run: int
    sequences_run: int
    violations: tuple  # (sequence_index, description)

    @property
    def ok(self) -> bool:
        return not self.violations


def _random_content(rng: random.Random, universe_size: int, guesses: set):
    roll = rng.randrange(5)
    if roll == 0:
        return LoginFormInPage()
    if roll == 1:
        guess = rng.randrange(universe_size)
        guesses.add(guess)
        return FakeDialogImage("Example Bank plc", "Some Trent", guess)
    if roll == 2:
        guess = rng.randrange(universe_size)
        guesses.add(guess)
        inner = vmachine.Surface(
            vmachine.sandbox(scenarios.MALLORY_ORIGIN),
            FakeDialogImage("Example Bank plc", "Some Trent", guess),
        )
        return CounterfeitDesktop(
            fidelity=rng.choice((REALISTIC, CRAYON)),
            fake_address=scenarios.BOB_ORIGIN,
            fake_padlock=True,
            fake_green_bar=bool(rng.randrange(2)),
            fake_greyed=True,
            embedded=(inner,),
        )
    if roll == 3:
        return VisitedLinkStyling(rng.randrange(1, 50))
    # Hostile: hand-built trusted-dialog value with a guessed secret.
    guess = rng.randrange(universe_size)
    guesses.add(guess)
    return TrustedDialog(
        identity=scenarios.BOB_IDENTITY,
        trent_display_name=scenarios.TRENT_DISPLAY_NAME,
        secret=SharedSecret(guess),
    )


def _shown_secret_ids(screen) -> set:
    shown = set()
    for content in vmachine._iter_contents(screen):
        if isinstance(content, FakeDialogImage):
            shown.add(content.shown_secret_id)
        if isinstance(content, TrustedDialog):
            shown.add(content.secret.secret_id)
    visible = project_visible(screen)
    if visible.dialog is not None:
        shown.add(visible.dialog.secret_id)
    return shown


def fuzz_capability_soundness(
    n_actions: int, seed: int, universe_size: int = 128, max_steps: int = 8
) -> FuzzReport:
    rng = random.Random(seed)
    violations = []
    actions = 0
    sequences = 0

    while actions < n_actions:
        sequences += 1
        store = scenarios.provision_store(rng, universe_size, compromised=False)
        session = vmachine.begin_session(
            scenarios.BROWSER_PROFILES[rng.choice(("chrome", "firefox", "edge"))],
            store,
            scenarios.WORLD.registry,
        )
        session = vmachine.navigate(session, scenarios.MALLORY_ORIGIN)
        actions += 1
        guesses: set = set()

        for _ in range(rng.randrange(1, max_steps + 1)):
            actions += 1
            roll = rng.randrange(4)
            if roll == 0:
                session = vmachine.place_surface(
                    session,
                    scenarios.MALLORY_ORIGIN,
                    _random_content(rng, universe_size, guesses),
                )
            elif roll == 1:
                session = vmachine.open_popup(
                    session, scenarios.MALLORY_ORIGIN, undecorated_requested=True
                )
            elif roll == 2:
                session = vmachine.request_fullscreen(
                    session,
                    scenarios.MALLORY_ORIGIN,
                    rng.choice(("user_gesture", "page_load")),
                )
            else:
                got = read_secret(store, vmachine.sandbox(scenarios.MALLORY_ORIGIN))
                if got is not CAPABILITY_DENIED:
                    violations.append((sequences, "sandbox read returned the secret"))

        screen = session.screen
        if screen.modal is not None:
            violations.append((sequences, "attacker actions produced a trusted dialog"))
        if any(
            isinstance(c, TrustedDialog) for c in vmachine._iter_contents(screen)
        ):
            violations.append((sequences, "trusted dialog value reached the canvas"))
        visible = project_visible(screen)
        if visible.dialog is not None and visible.dialog.has_window_icon:
            violations.append((sequences, "attacker dialog acquired a window icon"))
        leaked = _shown_secret_ids(screen) - guesses
        if leaked:
            violations.append((sequences, f"non-attacker secret values shown: {leaked}"))

    return FuzzReport(actions_run=actions, sequences_run=sequences, violations=tuple(violations))
