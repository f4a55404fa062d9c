"""Browser VM: navigation, the trusted dialog, fullscreen warnings, popups,
login ordering, and tick advancement."""

import random

import pytest

from phishgame import scenarios, vmachine
from phishgame.errors import ProtocolOrderError
from phishgame.scenarios import BOB_ORIGIN, BROWSER_PROFILES, WORLD
from phishgame.secretstore import provision_secret
from phishgame.vmachine import (
    PERSISTENT,
    TRANSIENT,
    advance_tick,
    begin_session,
    navigate,
    open_popup,
    project_visible,
    request_fullscreen,
    submit_login,
)


@pytest.fixture
def store():
    return provision_secret(random.Random(1), 128)


@pytest.fixture
def session(store):
    return begin_session(BROWSER_PROFILES["chrome"], store, WORLD.registry)


def test_begin_session_blank(session):
    assert session.pages == ()
    assert session.screen.modal is None
    assert session.screen.warning is None
    assert session.phase == "navigating"
    assert session.process_count() == 1


def test_begin_session_deterministic(store):
    a = begin_session(BROWSER_PROFILES["chrome"], store, WORLD.registry)
    b = begin_session(BROWSER_PROFILES["chrome"], store, WORLD.registry)
    assert a == b


def test_navigate_verified_shows_dialog(session, store):
    session = navigate(session, BOB_ORIGIN, WORLD.bob_certificate)
    assert session.phase == "dialog_shown"
    dialog = session.screen.modal
    assert dialog is not None
    assert dialog.identity == scenarios.BOB_IDENTITY
    assert dialog.secret == store.secret
    assert dialog.has_window_icon
    assert session.screen.greyed
    # No sandboxed page until credentials are entered.
    assert session.pages == ()


def test_navigate_mallory_cert_shows_honest_dialog(session, store):
    session = navigate(session, scenarios.MALLORY_ORIGIN, WORLD.mallory_certificate)
    dialog = session.screen.modal
    assert dialog.identity == scenarios.MALLORY_IDENTITY
    assert dialog.secret == store.secret  # genuine dialog, true secret


def test_tampered_cert_blocks_navigation(session):
    from dataclasses import replace

    bad = replace(WORLD.bob_certificate, tag=bytes(32))
    session = navigate(session, BOB_ORIGIN, bad)
    assert session.phase == "navigating"
    assert session.screen.modal is None
    assert session.pages == ()
    assert any(name == "navigation_blocked" for _, name, _ in session.events)


def test_navigate_no_cert_plain_page(session):
    session = navigate(session, "plain.example")
    assert len(session.pages) == 1
    assert not session.screen.chrome_bar.padlock
    assert session.screen.modal is None


def test_navigate_wrong_phase(session):
    session = navigate(session, BOB_ORIGIN, WORLD.bob_certificate)
    with pytest.raises(ProtocolOrderError):
        navigate(session, "another.example")


def test_login_creates_page_only_after_enter(session):
    session = navigate(session, BOB_ORIGIN, WORLD.bob_certificate)
    enter_tick = session.screen.now
    session = submit_login(session, "enter")
    assert session.phase == "logged_in"
    assert len(session.pages) == 1
    ticks = {name: tick for tick, name, _ in session.events}
    assert ticks["page_created"] > ticks["enter_credentials"] == enter_tick


def test_back_away_creates_no_page(session):
    session = navigate(session, BOB_ORIGIN, WORLD.bob_certificate)
    session = submit_login(session, "back_away")
    assert session.phase == "backed_away"
    assert session.pages == ()
    assert session.screen.modal is None


def test_submit_without_dialog(session):
    with pytest.raises(ProtocolOrderError):
        submit_login(session, "enter")


def test_wants_no_dialog_skips_login(store):
    from phishgame import pki

    authority = pki.TrentAuthority("t", "T", b"s")
    cert = pki.issue_certificate(authority, scenarios.BOB_IDENTITY, 0, 100, wants_login_dialog=False)
    session = begin_session(BROWSER_PROFILES["chrome"], store, pki.make_registry(authority))
    session = navigate(session, BOB_ORIGIN, cert)
    assert session.phase == "logged_in"
    assert session.screen.modal is None
    assert len(session.pages) == 1


# --- fullscreen warning semantics -------------------------------------------


def _fullscreen(profile_name, store, entries=1, origin="evil.example"):
    session = begin_session(BROWSER_PROFILES[profile_name], store, WORLD.registry)
    session = navigate(session, origin)
    for _ in range(entries):
        session = request_fullscreen(session, origin, "user_gesture")
    return session


@pytest.mark.parametrize(
    "profile,entries,expect_style",
    [
        ("chrome", 1, TRANSIENT),
        ("chrome", 2, TRANSIENT),  # warns every time
        ("firefox", 3, TRANSIENT),
        ("edge", 1, PERSISTENT),
        ("edge", 2, None),  # same origin, second entry: silent
    ],
)
def test_warning_table(profile, entries, expect_style, store):
    session = _fullscreen(profile, store, entries=entries)
    warning = session.screen.warning
    if expect_style is None:
        assert warning is None
    else:
        assert warning.style == expect_style


def test_persistent_warning_dismiss(store):
    session = _fullscreen("edge", store)
    assert session.screen.warning.style == PERSISTENT
    session = vmachine.dismiss_warning(session)
    assert session.screen.warning is None


def test_page_load_fullscreen_denied(store):
    session = begin_session(BROWSER_PROFILES["chrome"], store, WORLD.registry)
    session = navigate(session, "evil.example")
    after = request_fullscreen(session, "evil.example", "page_load")
    assert after == session


def test_fullscreen_without_page(session):
    with pytest.raises(ProtocolOrderError):
        request_fullscreen(session, "nowhere.example", "user_gesture")


def test_transient_warning_expires(store):
    session = _fullscreen("chrome", store)
    assert session.screen.warning is not None
    for _ in range(2):
        session = advance_tick(session)
        assert session.screen.warning is not None
    session = advance_tick(session)  # third advance, duration 3
    assert session.screen.warning is None


def test_persistent_warning_survives_ticks(store):
    session = _fullscreen("edge", store)
    for _ in range(100):
        session = advance_tick(session)
    assert session.screen.warning.style == PERSISTENT


def test_advance_is_identity_except_tick(session):
    after = advance_tick(session)
    assert after.screen.now == session.screen.now + 1
    from dataclasses import replace

    assert replace(after, screen=replace(after.screen, now=session.screen.now)) == session


# --- popups and window icons -------------------------------------------------


def test_popup_overlay_forced_true_origin(store):
    session = begin_session(BROWSER_PROFILES["chrome"], store, WORLD.registry)
    session = navigate(session, "evil.example")
    session = open_popup(session, "evil.example", undecorated_requested=True)
    popup = session.screen.canvas[-1]
    assert popup.overlay_address_bar == "evil.example"


def test_window_icon_counting(store):
    session = begin_session(BROWSER_PROFILES["chrome"], store, WORLD.registry)
    assert session.screen.os_chrome.window_icons == 1  # the browser window
    session = navigate(session, "evil.example")
    session = open_popup(session, "evil.example", undecorated_requested=True)
    assert session.screen.os_chrome.window_icons == 2
    session = open_popup(session, "evil.example", undecorated_requested=False)
    assert session.screen.os_chrome.window_icons == 3


def test_dialog_counts_as_window_icon(session):
    session = navigate(session, BOB_ORIGIN, WORLD.bob_certificate)
    assert session.screen.os_chrome.window_icons == 2


def test_process_accounting(store):
    session = begin_session(BROWSER_PROFILES["chrome"], store, WORLD.registry)
    session = navigate(session, "a.example")
    assert session.process_count() == len(session.pages) + 1 == 2


# --- projection ----------------------------------------------------------------


def test_fullscreen_hides_chrome_in_projection(store):
    session = begin_session(BROWSER_PROFILES["chrome"], store, WORLD.registry)
    session = navigate(session, "evil.example")
    before = project_visible(session.screen)
    assert before.taskbar_visible
    session = request_fullscreen(session, "evil.example", "user_gesture")
    visible = project_visible(session.screen)
    assert visible.fullscreen
    assert not visible.padlock
    assert visible.address == ""


def test_genuine_dialog_projection(session, store):
    session = navigate(session, BOB_ORIGIN, WORLD.bob_certificate)
    visible = project_visible(session.screen)
    assert visible.dialog.secret_id == store.secret.secret_id
    assert visible.dialog.has_window_icon
    assert visible.greyed
