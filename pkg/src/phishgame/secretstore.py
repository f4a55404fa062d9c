"""The user-browser shared secret store.

The secret is an identifier into a public image universe of size U; the
security property is that sandboxed pages do not know which image it is.
Reads require the chrome-process capability; sandboxed pages get a denial
value, never the secret.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Union

from .errors import ConfigurationError, IllegalStrategyError


@dataclass(frozen=True, slots=True)
class SharedSecret:
    secret_id: int
    label: str = "shared-secret-image"


@dataclass(frozen=True, slots=True)
class SecretStore:
    secret: SharedSecret
    universe_size: int
    compromised: bool = False


@dataclass(frozen=True, slots=True)
class CapabilityDenied:
    """Normal denial value for sandbox-originated reads."""


CAPABILITY_DENIED = CapabilityDenied()


def provision_secret(rng: random.Random, universe_size: int) -> SecretStore:
    """Draw the installation's secret uniformly from [0, U)."""
    if universe_size < 2:
        raise ConfigurationError("secret universe must hold at least 2 images")
    secret_id = rng.randrange(universe_size)
    return SecretStore(SharedSecret(secret_id), universe_size)


def read_secret(store: SecretStore, cap) -> Union[SharedSecret, CapabilityDenied]:
    """Return the secret iff the caller holds the chrome-process capability.

    `cap` is a vmachine.Capability; the sandbox kind is denied regardless of
    origin. Denial is a value, not an exception: it is the expected outcome
    for every sandboxed read attempt.
    """
    if cap.kind == "chrome":
        return store.secret
    return CAPABILITY_DENIED


def mark_compromised(store: SecretStore) -> SecretStore:
    """Model a hacked installation; idempotent."""
    return replace(store, compromised=True)


def steal_secret(store: SecretStore) -> SharedSecret:
    """Secret read available only to the thief strategy on a compromised store."""
    if not store.compromised:
        raise IllegalStrategyError("secret theft requires a compromised store")
    return store.secret
