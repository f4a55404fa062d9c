"""Certificate issuance, canonical encoding, and verification."""

import random
import struct

import pytest
from hypothesis import given, settings, strategies as st

from phishgame import pki
from phishgame.pki import (
    Certificate,
    IdentityCredentials,
    RejectReason,
    TrentAuthority,
    canonical_encode,
    issue_certificate,
    make_registry,
    verify_certificate,
)

BOB = IdentityCredentials("Example Bank plc", "Example Bank plc", "Exampleland")
MALLORY = IdentityCredentials("Bank-Login Services Ltd", "Bank-Login Services Ltd", "Elsewhere")


@pytest.fixture
def authority():
    return TrentAuthority("central-bank", "Central Bank", secret=b"test-trent-secret")


@pytest.fixture
def registry(authority):
    return make_registry(authority)


# --- canonical encoding ----------------------------------------------------


def decode_canonical(blob: bytes) -> dict:
    """Independent decoder used as the round-trip oracle."""
    offset = 0
    fields = {}

    def take_text():
        nonlocal offset
        (length,) = struct.unpack_from(">I", blob, offset)
        offset += 4
        value = blob[offset : offset + length].decode("utf-8")
        offset += length
        return value

    def take_int():
        nonlocal offset
        (value,) = struct.unpack_from(">Q", blob, offset)
        offset += 8
        return value

    fields["subject_name"] = take_text()
    fields["organization"] = take_text()
    fields["jurisdiction"] = take_text()
    fields["trent_name"] = take_text()
    fields["serial"] = take_int()
    fields["not_before"] = take_int()
    fields["not_after"] = take_int()
    fields["wants_login_dialog"] = bool(take_int())
    assert offset == len(blob), "trailing bytes"
    return fields


def _cert(subject=BOB, trent="central-bank", serial=0, nb=0, na=100, dialog=True):
    return Certificate(subject, trent, serial, nb, na, dialog, bytes(32))


def test_encoding_deterministic():
    cert = _cert()
    assert canonical_encode(cert) == canonical_encode(cert)


def test_encoding_injective_on_serial():
    assert canonical_encode(_cert(serial=1)) != canonical_encode(_cert(serial=2))


def test_empty_organization_roundtrips():
    subject = IdentityCredentials("Bob", "", "Nowhere")
    blob = canonical_encode(_cert(subject=subject))
    decoded = decode_canonical(blob)
    assert decoded["organization"] == ""
    rebuilt = _cert(
        subject=IdentityCredentials(
            decoded["subject_name"], decoded["organization"], decoded["jurisdiction"]
        ),
        trent=decoded["trent_name"],
        serial=decoded["serial"],
        nb=decoded["not_before"],
        na=decoded["not_after"],
        dialog=decoded["wants_login_dialog"],
    )
    assert canonical_encode(rebuilt) == blob


@given(
    name=st.text(min_size=1, max_size=30).filter(str.isprintable),
    org=st.text(max_size=30).filter(str.isprintable),
    juris=st.text(max_size=30).filter(str.isprintable),
    serial=st.integers(min_value=0, max_value=2**63),
    nb=st.integers(min_value=0, max_value=1000),
    span=st.integers(min_value=0, max_value=1000),
    dialog=st.booleans(),
)
@settings(max_examples=100)
def test_encoding_roundtrip_property(name, org, juris, serial, nb, span, dialog):
    cert = _cert(IdentityCredentials(name, org, juris), serial=serial, nb=nb, na=nb + span, dialog=dialog)
    decoded = decode_canonical(canonical_encode(cert))
    assert decoded["subject_name"] == name
    assert decoded["organization"] == org
    assert decoded["serial"] == serial
    assert decoded["wants_login_dialog"] == dialog


# --- issuance and verification ----------------------------------------------


def test_issue_then_verify(authority, registry):
    cert = issue_certificate(authority, BOB, 10, 20)
    assert verify_certificate(cert, registry, 15).verified


def test_issuance_binds_requester_identity(authority):
    cert = issue_certificate(authority, MALLORY, 0, 100)
    assert cert.subject == MALLORY
    assert cert.subject != BOB


def test_expired(authority, registry):
    cert = issue_certificate(authority, BOB, 10, 20)
    result = verify_certificate(cert, registry, 25)
    assert result.reason == RejectReason.EXPIRED


def test_not_yet_valid(authority, registry):
    cert = issue_certificate(authority, BOB, 10, 20)
    assert verify_certificate(cert, registry, 5).reason == RejectReason.NOT_YET_VALID


def test_tampered_subject_rejected(authority, registry):
    cert = issue_certificate(authority, BOB, 0, 100)
    flipped = BOB.subject_name[:-1] + ("X" if BOB.subject_name[-1] != "X" else "Y")
    from dataclasses import replace

    tampered = replace(cert, subject=replace(cert.subject, subject_name=flipped))
    assert verify_certificate(tampered, registry, 50).reason == RejectReason.TAG_MISMATCH


def test_unknown_issuer(authority):
    other = TrentAuthority("other", "Other", secret=b"different-secret")
    cert = issue_certificate(other, BOB, 0, 100)
    registry = make_registry(authority)
    assert verify_certificate(cert, registry, 50).reason == RejectReason.UNKNOWN_ISSUER


def test_tag_mismatch_beats_expiry(authority, registry):
    # Precedence: a forged, expired certificate reports the forgery.
    cert = issue_certificate(authority, BOB, 10, 20)
    from dataclasses import replace

    forged = replace(cert, tag=bytes(32))
    assert verify_certificate(forged, registry, 999).reason == RejectReason.TAG_MISMATCH


def test_verification_is_pure(authority, registry):
    cert = issue_certificate(authority, BOB, 0, 100)
    assert verify_certificate(cert, registry, 50) == verify_certificate(cert, registry, 50)


def test_serials_unique_per_trent(authority):
    serials = {issue_certificate(authority, BOB, 0, 100).serial for _ in range(50)}
    assert len(serials) == 50


def test_unforgeability_fuzz(authority, registry):
    """10,000 mutated/random certificates: zero false Verified."""
    rng = random.Random(0)
    honest = issue_certificate(authority, BOB, 0, 100)
    verified = 0
    for _ in range(10_000):
        mode = rng.randrange(3)
        from dataclasses import replace

        if mode == 0:  # random tag
            cert = replace(honest, tag=rng.randbytes(32))
        elif mode == 1:  # mutated payload, honest tag kept
            cert = replace(honest, serial=rng.randrange(1, 2**32))
        else:  # random payload and tag
            cert = Certificate(
                IdentityCredentials(f"s{rng.randrange(2**30)}", "o", "j"),
                rng.choice(["central-bank", "nobody"]),
                rng.randrange(2**32),
                0,
                100,
                bool(rng.randrange(2)),
                rng.randbytes(32),
            )
        verified += verify_certificate(cert, registry, 50).verified
    assert verified == 0


def test_roundtrip_serialization(authority):
    cert = issue_certificate(authority, MALLORY, 3, 9, wants_login_dialog=False)
    assert pki.certificate_from_dict(pki.certificate_to_dict(cert)) == cert
