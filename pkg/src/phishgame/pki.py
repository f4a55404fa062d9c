"""Toy certificate authority (Trent), issuance, and verification.

Certificates carry a keyed tag: a SHA-256 digest over the issuing Trent's
secret concatenated with the canonical payload encoding. Attacker code never
holds a Trent secret, so any certificate not produced by `issue_certificate`
under a registered Trent fails verification. Time is an integer tick.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

TAG_LENGTH = 32


@dataclass(frozen=True, slots=True)
class IdentityCredentials:
    subject_name: str
    organization: str
    jurisdiction: str

    def __post_init__(self):
        if not self.subject_name:
            raise ValueError("subject_name must be nonempty")
        for field in (self.subject_name, self.organization, self.jurisdiction):
            if not field.isprintable() and field != "":
                raise ValueError("identity fields must be printable text")

    def display_text(self) -> str:
        """The copyable public text a dialog (real or fake) shows for this identity."""
        return f"{self.subject_name} — {self.organization}, {self.jurisdiction}"


@dataclass(frozen=True, slots=True)
class Certificate:
    subject: IdentityCredentials
    trent_name: str
    serial: int
    not_before: int
    not_after: int
    wants_login_dialog: bool
    tag: bytes

    def __post_init__(self):
        if self.not_before > self.not_after:
            raise ValueError("not_before must not exceed not_after")
        if len(self.tag) != TAG_LENGTH:
            raise ValueError(f"tag must be exactly {TAG_LENGTH} bytes")


class RejectReason(Enum):
    TAG_MISMATCH = "tag_mismatch"
    EXPIRED = "expired"
    NOT_YET_VALID = "not_yet_valid"
    UNKNOWN_ISSUER = "unknown_issuer"


@dataclass(frozen=True, slots=True)
class VerificationResult:
    verified: bool
    reason: Optional[RejectReason] = None


VERIFIED = VerificationResult(True)


def _rejected(reason: RejectReason) -> VerificationResult:
    return VerificationResult(False, reason)


def _encode_text(value: str) -> bytes:
    raw = value.encode("utf-8")
    return struct.pack(">I", len(raw)) + raw


def _encode_int(value: int) -> bytes:
    return struct.pack(">Q", value)


def canonical_encode(cert: Certificate) -> bytes:
    """Injective, deterministic encoding of every field except the tag.

    Text fields: 4-byte big-endian length then UTF-8 bytes. Integers (and the
    dialog flag, as 0/1): 8-byte big-endian. Fields in declaration order.
    """
    return b"".join(
        (
            _encode_text(cert.subject.subject_name),
            _encode_text(cert.subject.organization),
            _encode_text(cert.subject.jurisdiction),
            _encode_text(cert.trent_name),
            _encode_int(cert.serial),
            _encode_int(cert.not_before),
            _encode_int(cert.not_after),
            _encode_int(1 if cert.wants_login_dialog else 0),
        )
    )


class TagVerifier:
    """Verification capability for one Trent: checks tags, signs nothing."""

    def __init__(self, secret: bytes):
        self._secret = secret

    def matches(self, payload: bytes, tag: bytes) -> bool:
        expected = hashlib.sha256(self._secret + payload).digest()
        return expected == tag


class TrentAuthority:
    """Signing capability: holds the Trent secret and a serial counter.

    Only issuance code touches this object; attack code receives at most the
    registry of verifiers.
    """

    def __init__(self, name: str, display_name: str, secret: bytes):
        self.name = name
        self.display_name = display_name
        self._secret = secret
        self._next_serial = 0

    def tag_for(self, payload: bytes) -> bytes:
        return hashlib.sha256(self._secret + payload).digest()

    def allocate_serial(self) -> int:
        serial = self._next_serial
        self._next_serial += 1
        return serial

    def verifier(self) -> TagVerifier:
        return TagVerifier(self._secret)


@dataclass(frozen=True, slots=True)
class TrentRegistry:
    entries: dict  # trent_name -> TagVerifier
    display_names: dict  # trent_name -> public display text

    def __post_init__(self):
        missing = set(self.display_names) - set(self.entries)
        if missing:
            raise ValueError(f"display names without verifier entries: {missing}")


def make_registry(*authorities: TrentAuthority) -> TrentRegistry:
    return TrentRegistry(
        entries={a.name: a.verifier() for a in authorities},
        display_names={a.name: a.display_name for a in authorities},
    )


def issue_certificate(
    authority: TrentAuthority,
    subject: IdentityCredentials,
    not_before: int,
    not_after: int,
    wants_login_dialog: bool = True,
) -> Certificate:
    """Issue a certificate binding the requester's true identity.

    Issuance never lies about the subject: a certificate bought by Mallory
    names Mallory. CA misissuance is out of scope.
    """
    if not_before > not_after:
        raise ValueError("validity range is empty")
    unsigned = Certificate(
        subject=subject,
        trent_name=authority.name,
        serial=authority.allocate_serial(),
        not_before=not_before,
        not_after=not_after,
        wants_login_dialog=wants_login_dialog,
        tag=bytes(TAG_LENGTH),
    )
    tag = authority.tag_for(canonical_encode(unsigned))
    return replace(unsigned, tag=tag)


def verify_certificate(cert: Certificate, registry: TrentRegistry, now: int) -> VerificationResult:
    """Pure verification gate for the trusted dialog.

    Reason precedence when multiple reasons apply:
    TagMismatch > UnknownIssuer > NotYetValid > Expired. An unknown issuer
    makes the tag uncheckable, so UnknownIssuer is reported in that case.
    """
    verifier = registry.entries.get(cert.trent_name)
    if verifier is None:
        return _rejected(RejectReason.UNKNOWN_ISSUER)
    if not verifier.matches(canonical_encode(cert), cert.tag):
        return _rejected(RejectReason.TAG_MISMATCH)
    if now < cert.not_before:
        return _rejected(RejectReason.NOT_YET_VALID)
    if now > cert.not_after:
        return _rejected(RejectReason.EXPIRED)
    return VERIFIED


def certificate_to_dict(cert: Certificate) -> dict:
    """Scenario-config serialization of a certificate."""
    return {
        "subject": {
            "subject_name": cert.subject.subject_name,
            "organization": cert.subject.organization,
            "jurisdiction": cert.subject.jurisdiction,
        },
        "trent_name": cert.trent_name,
        "serial": cert.serial,
        "not_before": cert.not_before,
        "not_after": cert.not_after,
        "wants_login_dialog": cert.wants_login_dialog,
        "tag": cert.tag.hex(),
    }


def certificate_from_dict(data: dict) -> Certificate:
    return Certificate(
        subject=IdentityCredentials(**data["subject"]),
        trent_name=data["trent_name"],
        serial=data["serial"],
        not_before=data["not_before"],
        not_after=data["not_after"],
        wants_login_dialog=data["wants_login_dialog"],
        tag=bytes.fromhex(data["tag"]),
    )
