"""Canonical scenario fixtures: Bob, Mallory, the Trent, browser profiles.

These are the named entries scenario configs and the service API refer to.
The Trent's display name is deliberately one the public would recognise (a
central bank), and its signing secret never leaves this module's authority
object.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import pki
from .attacks import AttackContext, AttackerStrategy, StrategyKind
from .secretstore import SecretStore, mark_compromised, provision_secret
from .users import PolicyKind, UserPolicy
from .vmachine import PERSISTENT, REALISTIC, TRANSIENT, BrowserProfile

BOB_ORIGIN = "bank.example"
MALLORY_ORIGIN = "bank-login.example"

BOB_IDENTITY = pki.IdentityCredentials(
    subject_name="Example Bank plc",
    organization="Example Bank plc",
    jurisdiction="Exampleland",
)

MALLORY_IDENTITY = pki.IdentityCredentials(
    subject_name="Bank-Login Services Ltd",
    organization="Bank-Login Services Ltd",
    jurisdiction="Elsewhere",
)

TRENT_NAME = "central-bank-trent"
TRENT_DISPLAY_NAME = "Central Bank of Exampleland"

VALIDITY = (0, 1_000_000)

BROWSER_PROFILES = {
    "chrome": BrowserProfile("chrome", TRANSIENT, warning_duration=3),
    "firefox": BrowserProfile("firefox", TRANSIENT, warning_duration=3),
    "edge": BrowserProfile("edge", PERSISTENT),
}


@dataclass(frozen=True, slots=True)
class World:
    registry: pki.TrentRegistry
    bob_certificate: pki.Certificate
    mallory_certificate: pki.Certificate


def _build_world() -> World:
    authority = pki.TrentAuthority(
        TRENT_NAME, TRENT_DISPLAY_NAME, secret=b"trent-signing-secret/central-bank"
    )
    bob_cert = pki.issue_certificate(
        authority, BOB_IDENTITY, *VALIDITY, wants_login_dialog=True
    )
    # Mallory buys a certificate too; issuance binds her true identity.
    mallory_cert = pki.issue_certificate(
        authority, MALLORY_IDENTITY, *VALIDITY, wants_login_dialog=True
    )
    return World(pki.make_registry(authority), bob_cert, mallory_cert)


WORLD = _build_world()


def provision_store(rng: random.Random, universe_size: int, compromised: bool = False) -> SecretStore:
    store = provision_secret(rng, universe_size)
    return mark_compromised(store) if compromised else store


def make_strategy(name: str, fidelity: str = REALISTIC) -> AttackerStrategy:
    from .attacks import STRATEGY_NAMES

    kind = STRATEGY_NAMES.get(name)
    if kind is None:
        raise KeyError(f"unknown strategy {name!r}")
    return AttackerStrategy(kind=kind, target_identity=BOB_IDENTITY, fidelity=fidelity)


def all_strategies(fidelity: str = REALISTIC) -> list:
    return [make_strategy(kind.value, fidelity) for kind in StrategyKind]


def attack_context(store: SecretStore) -> AttackContext:
    return AttackContext(
        target_origin=BOB_ORIGIN,
        attacker_origin=MALLORY_ORIGIN,
        trent_display_name=TRENT_DISPLAY_NAME,
        mallory_certificate=WORLD.mallory_certificate,
        store=store,
    )


def make_policy(name: str, store: SecretStore) -> UserPolicy:
    from .users import POLICY_NAMES

    kind = POLICY_NAMES.get(name)
    if kind is None:
        raise KeyError(f"unknown policy {name!r}")
    return UserPolicy(
        kind=kind,
        expected_secret_id=store.secret.secret_id,
        known_identities=frozenset({BOB_IDENTITY.display_text()}),
        known_trents=frozenset({TRENT_DISPLAY_NAME}),
        known_origins=frozenset({BOB_ORIGIN}),
    )
