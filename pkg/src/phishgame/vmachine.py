"""The browser virtual machine.

A browser session holds N sandboxed page processes plus one chrome process
(N + 1 personalities). All transitions are pure functions old-session ->
new-session so that episodes replay exactly. The trusted login dialog is
constructible only through `render_trusted_dialog`, which reads the secret
store with the chrome capability; no surface the sandbox vocabulary can
express contains a TrustedDialog.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Union

from . import pki
from .errors import ProtocolOrderError
from .secretstore import CAPABILITY_DENIED, SecretStore, SharedSecret, read_secret

# ---------------------------------------------------------------------------
# Capabilities


@dataclass(frozen=True, slots=True)
class Capability:
    kind: str  # "chrome" | "sandbox"
    origin: Optional[str] = None

    def __post_init__(self):
        if self.kind == "sandbox" and not self.origin:
            raise ValueError("sandboxed capability must carry its origin")


CHROME = Capability("chrome")


def sandbox(origin: str) -> Capability:
    return Capability("sandbox", origin)


# ---------------------------------------------------------------------------
# Browser profiles

CRAYON = "crayon"
REALISTIC = "realistic"

TRANSIENT = "transient"
PERSISTENT = "persistent"


@dataclass(frozen=True, slots=True)
class BrowserProfile:
    name: str
    warning_style: str  # TRANSIENT: warn on every entry; PERSISTENT: once per origin
    warning_duration: int = 3  # ticks a transient warning stays up

    def __post_init__(self):
        if self.warning_style == TRANSIENT and self.warning_duration < 1:
            raise ValueError("transient warning duration must be >= 1 tick")


# ---------------------------------------------------------------------------
# Surface contents


@dataclass(frozen=True, slots=True)
class PageContent:
    descriptor: str = "page"


@dataclass(frozen=True, slots=True)
class LoginFormInPage:
    descriptor: str = "login-form"


@dataclass(frozen=True, slots=True)
class FakeDialogImage:
    """A picture of a dialog drawn inside a webpage. No window icon, ever."""

    identity_text: str
    trent_text: str
    shown_secret_id: int
    has_window_icon: bool = False

    def __post_init__(self):
        if self.has_window_icon:
            raise ValueError("a fake dialog image never has a window icon")


@dataclass(frozen=True, slots=True)
class VisitedLinkStyling:
    shown_visit_count: int = 1


@dataclass(frozen=True, slots=True)
class CounterfeitDesktop:
    """Fullscreen canvas takeover: fake chrome, fake desktop, optional fake dialog."""

    fidelity: str  # CRAYON | REALISTIC
    fake_address: str
    fake_padlock: bool
    fake_green_bar: bool
    fake_greyed: bool
    embedded: tuple = ()  # inner Surface values (fake dialog, fake forms, ...)


SurfaceContent = Union[
    PageContent, LoginFormInPage, FakeDialogImage, VisitedLinkStyling, CounterfeitDesktop
]


@dataclass(frozen=True, slots=True)
class Surface:
    origin_cap: Capability
    content: object
    overlay_address_bar: Optional[str] = None  # set (truthfully) on popup windows
    in_popup: bool = False

    def __post_init__(self):
        if self.origin_cap.kind == "sandbox" and isinstance(self.content, TrustedDialog):
            raise ValueError("a sandboxed surface can never contain a trusted dialog")


@dataclass(frozen=True, slots=True)
class TrustedDialog:
    """The chrome-rendered modal login dialog.

    Produced only by `render_trusted_dialog` under the chrome capability; the
    attack action vocabulary has no step that yields one.
    """

    identity: pki.IdentityCredentials
    trent_display_name: str
    secret: SharedSecret
    has_window_icon: bool = True


# ---------------------------------------------------------------------------
# Screen state


@dataclass(frozen=True, slots=True)
class ChromeBar:
    address: str = ""
    padlock: bool = False
    green_bar: bool = False


@dataclass(frozen=True, slots=True)
class FullscreenWarning:
    style: str  # TRANSIENT | PERSISTENT
    expires_at: Optional[int] = None

    def __post_init__(self):
        if self.style == TRANSIENT and self.expires_at is None:
            raise ValueError("transient warnings carry an expiry tick")


@dataclass(frozen=True, slots=True)
class OsChrome:
    window_icons: int
    taskbar_visible: bool


@dataclass(frozen=True, slots=True)
class ScreenState:
    chrome_bar: ChromeBar
    canvas: tuple  # of Surface
    modal: Optional[TrustedDialog]
    greyed: bool
    fullscreen: bool
    warning: Optional[FullscreenWarning]
    os_chrome: OsChrome
    now: int

    def __post_init__(self):
        if self.modal is not None and not self.greyed:
            raise ValueError("a modal dialog always greys the rest of the screen")


@dataclass(frozen=True, slots=True)
class Session:
    profile: BrowserProfile
    store: SecretStore
    registry: pki.TrentRegistry
    pages: tuple  # sandboxed page Surfaces, one per process
    screen: ScreenState
    fullscreen_warned_origins: frozenset
    phase: str  # "navigating" | "dialog_shown" | "logged_in" | "backed_away"
    pending_origin: Optional[str] = None  # origin awaiting login while the dialog is up
    events: tuple = ()  # append-only (tick, name, detail) log

    def process_count(self) -> int:
        return len(self.pages) + 1  # N sandboxes + the chrome process


def _os_chrome(canvas: tuple, modal: Optional[TrustedDialog], fullscreen: bool) -> OsChrome:
    popups = sum(1 for s in canvas if s.overlay_address_bar is not None)
    icons = 1 + popups + (1 if modal is not None else 0)
    return OsChrome(window_icons=icons, taskbar_visible=not fullscreen)


def _log(session: Session, name: str, detail: str = "") -> tuple:
    return session.events + ((session.screen.now, name, detail),)


def _with_screen(session: Session, **changes) -> Session:
    screen = replace(session.screen, **changes)
    screen = replace(
        screen, os_chrome=_os_chrome(screen.canvas, screen.modal, screen.fullscreen)
    )
    return replace(session, screen=screen)


def begin_session(
    profile: BrowserProfile, store: SecretStore, registry: pki.TrentRegistry
) -> Session:
    screen = ScreenState(
        chrome_bar=ChromeBar(),
        canvas=(),
        modal=None,
        greyed=False,
        fullscreen=False,
        warning=None,
        os_chrome=OsChrome(window_icons=1, taskbar_visible=True),
        now=0,
    )
    return Session(
        profile=profile,
        store=store,
        registry=registry,
        pages=(),
        screen=screen,
        fullscreen_warned_origins=frozenset(),
        phase="navigating",
    )


def render_trusted_dialog(
    cert: pki.Certificate, store: SecretStore, registry: pki.TrentRegistry
) -> TrustedDialog:
    """Build the trusted dialog for an already-verified certificate.

    Runs with the chrome capability: it is the one code path that reads the
    shared secret on behalf of a display surface.
    """
    secret = read_secret(store, CHROME)
    assert secret is not CAPABILITY_DENIED
    return TrustedDialog(
        identity=cert.subject,
        trent_display_name=registry.display_names[cert.trent_name],
        secret=secret,
    )


def _create_page(session: Session, origin: str) -> Session:
    page = Surface(sandbox(origin), PageContent())
    session = replace(session, pages=session.pages + (page,))
    return _with_screen(session, canvas=session.screen.canvas + (page,))


def navigate(
    session: Session, origin: str, presented_cert: Optional[pki.Certificate] = None
) -> Session:
    if session.phase != "navigating":
        raise ProtocolOrderError(f"cannot navigate while phase is {session.phase!r}")

    if presented_cert is None:
        session = _with_screen(session, chrome_bar=ChromeBar(address=origin))
        session = _create_page(session, origin)
        return replace(session, events=_log(session, "navigate_plain", origin))

    result = pki.verify_certificate(presented_cert, session.registry, session.screen.now)
    if not result.verified:
        interstitial = Surface(CHROME, PageContent(f"interstitial:{result.reason.value}"))
        session = _with_screen(
            session,
            chrome_bar=ChromeBar(address=origin),
            canvas=session.screen.canvas + (interstitial,),
        )
        return replace(
            session, events=_log(session, "navigation_blocked", result.reason.value)
        )

    bar = ChromeBar(address=origin, padlock=True)
    if presented_cert.wants_login_dialog:
        dialog = render_trusted_dialog(presented_cert, session.store, session.registry)
        session = _with_screen(session, chrome_bar=bar, modal=dialog, greyed=True)
        session = replace(session, phase="dialog_shown", pending_origin=origin)
        return replace(session, events=_log(session, "dialog_shown", origin))

    session = _with_screen(session, chrome_bar=bar)
    session = _create_page(session, origin)
    session = replace(session, phase="logged_in")
    return replace(session, events=_log(session, "page_created", origin))


def _has_page(session: Session, origin: str) -> bool:
    return any(p.origin_cap.origin == origin for p in session.pages)


def request_fullscreen(session: Session, requesting_origin: str, trigger: str) -> Session:
    """Enter fullscreen on a user gesture; page-load requests are denied."""
    if not _has_page(session, requesting_origin):
        raise ProtocolOrderError(f"no sandboxed page for origin {requesting_origin!r}")
    if trigger == "page_load":
        return session
    if trigger != "user_gesture":
        raise ValueError(f"unknown fullscreen trigger {trigger!r}")

    now = session.screen.now
    warned = session.fullscreen_warned_origins
    if session.profile.warning_style == TRANSIENT:
        warning = FullscreenWarning(TRANSIENT, now + session.profile.warning_duration)
    else:
        if requesting_origin in warned:
            warning = None  # already acknowledged once for this origin: silent
        else:
            warning = FullscreenWarning(PERSISTENT)
            warned = warned | {requesting_origin}

    session = _with_screen(session, fullscreen=True, warning=warning)
    session = replace(session, fullscreen_warned_origins=warned)
    return replace(session, events=_log(session, "fullscreen_entered", requesting_origin))


def open_popup(session: Session, origin: str, undecorated_requested: bool) -> Session:
    """Open a popup window. The overlay address bar always shows the true origin."""
    if not _has_page(session, origin):
        raise ProtocolOrderError(f"no sandboxed page for origin {origin!r}")
    popup = Surface(
        sandbox(origin),
        PageContent("popup"),
        overlay_address_bar=origin,  # forced, regardless of undecorated_requested
    )
    session = _with_screen(session, canvas=session.screen.canvas + (popup,))
    return replace(session, events=_log(session, "popup_opened", origin))


def place_surface(session: Session, origin: str, content, in_popup: bool = False) -> Session:
    """Draw attacker-controllable content on an existing page's canvas.

    This is the sandbox vocabulary's drawing primitive. A TrustedDialog is
    rejected here (and cannot be constructed honestly by sandbox code at
    all); the attempt is logged as a capability violation and skipped.
    """
    if not _has_page(session, origin):
        raise ProtocolOrderError(f"no sandboxed page for origin {origin!r}")
    if isinstance(content, TrustedDialog):
        return replace(
            session, events=_log(session, "capability_violation", "trusted_dialog_forgery")
        )
    surface = Surface(sandbox(origin), content, in_popup=in_popup)
    session = _with_screen(session, canvas=session.screen.canvas + (surface,))
    return replace(session, events=_log(session, "surface_placed", type(content).__name__))


def _counterfeit_affordance(session: Session) -> bool:
    for surface in session.screen.canvas:
        content = surface.content
        if isinstance(content, (FakeDialogImage, LoginFormInPage)):
            return True
        if isinstance(content, CounterfeitDesktop):
            if any(
                isinstance(inner.content, (FakeDialogImage, LoginFormInPage))
                for inner in content.embedded
            ):
                return True
    return False


def submit_login(session: Session, decision: str) -> Session:
    """Resolve the user's move: "enter" or "back_away".

    On the genuine dialog, entering dismisses the modal and only then creates
    the sandboxed page (the login-before-sandbox ordering). On a counterfeit,
    entered credentials are captured by the attacker; that fact lives in the
    event log, not in the session phase.
    """
    if decision not in ("enter", "back_away"):
        raise ValueError(f"unknown decision {decision!r}")

    if session.phase == "dialog_shown":
        if decision == "back_away":
            session = _with_screen(session, modal=None, greyed=False)
            session = replace(session, phase="backed_away", pending_origin=None)
            return replace(session, events=_log(session, "backed_away", "from_dialog"))
        origin = session.pending_origin
        session = replace(session, events=_log(session, "enter_credentials", origin))
        session = _with_screen(session, modal=None, greyed=False, now=session.screen.now + 1)
        session = _create_page(session, origin)
        session = replace(session, phase="logged_in", pending_origin=None)
        return replace(session, events=_log(session, "page_created", origin))

    if _counterfeit_affordance(session):
        if decision == "back_away":
            session = replace(session, phase="backed_away")
            return replace(session, events=_log(session, "backed_away", "from_counterfeit"))
        return replace(
            session, events=_log(session, "credentials_captured_by_attacker", "")
        )

    raise ProtocolOrderError("no login dialog or counterfeit affordance on screen")


def advance_tick(session: Session) -> Session:
    now = session.screen.now + 1
    warning = session.screen.warning
    if warning is not None and warning.style == TRANSIENT and warning.expires_at <= now:
        warning = None
    return _with_screen(session, now=now, warning=warning)


def dismiss_warning(session: Session) -> Session:
    """Explicitly dismiss a persistent warning (transients expire on their own)."""
    if session.screen.warning is None:
        return session
    return _with_screen(session, warning=None)


# ---------------------------------------------------------------------------
# The user-visible projection of a screen.
#
# Both scripted perception (users module) and the session-service JSON
# serialization are built from this single projection, so a human at the UI
# and a scripted user face exactly the same observable surface.


@dataclass(frozen=True, slots=True)
class VisibleDialog:
    identity_text: str
    trent_name: str
    secret_id: int
    has_window_icon: bool


@dataclass(frozen=True, slots=True)
class VisibleScreen:
    address: str
    padlock: bool
    green_bar: bool
    overlay_address_bar: Optional[str]
    fullscreen: bool
    greyed: bool
    warning_style: Optional[str]
    dialog: Optional[VisibleDialog]
    login_form_in_page: bool
    window_icons: int
    taskbar_visible: bool
    asset_style: str  # REALISTIC for genuine chrome; counterfeit fidelity otherwise
    tick: int


def _find_counterfeit(screen: ScreenState) -> Optional[CounterfeitDesktop]:
    for surface in screen.canvas:
        if isinstance(surface.content, CounterfeitDesktop):
            return surface.content
    return None


def _iter_contents(screen: ScreenState):
    for surface in screen.canvas:
        yield surface.content
        if isinstance(surface.content, CounterfeitDesktop):
            for inner in surface.content.embedded:
                yield inner.content


def project_visible(screen: ScreenState) -> VisibleScreen:
    """Collapse a screen into exactly what a user (or the UI) can observe.

    Fullscreen hides the genuine chrome bar and taskbar; a counterfeit
    desktop substitutes its fakes. The overlay address bar and a genuine
    dialog's window icon are structurally truthful and survive projection.
    """
    counterfeit = _find_counterfeit(screen) if screen.fullscreen else None

    if counterfeit is not None:
        address = counterfeit.fake_address
        padlock = counterfeit.fake_padlock
        green_bar = counterfeit.fake_green_bar
        greyed = counterfeit.fake_greyed
        taskbar_visible = True  # the fake desktop draws a fake taskbar
        window_icons = 1
        asset_style = counterfeit.fidelity
    elif screen.fullscreen:
        address, padlock, green_bar = "", False, False
        greyed = screen.greyed
        taskbar_visible = False
        window_icons = 0
        asset_style = REALISTIC
    else:
        bar = screen.chrome_bar
        address, padlock, green_bar = bar.address, bar.padlock, bar.green_bar
        greyed = screen.greyed
        taskbar_visible = True
        window_icons = screen.os_chrome.window_icons
        asset_style = REALISTIC

    dialog = None
    if screen.modal is not None:
        dialog = VisibleDialog(
            identity_text=screen.modal.identity.display_text(),
            trent_name=screen.modal.trent_display_name,
            secret_id=screen.modal.secret.secret_id,
            has_window_icon=True,
        )
    else:
        for content in _iter_contents(screen):
            if isinstance(content, FakeDialogImage):
                dialog = VisibleDialog(
                    identity_text=content.identity_text,
                    trent_name=content.trent_text,
                    secret_id=content.shown_secret_id,
                    has_window_icon=False,
                )
                break

    overlay = None
    for surface in screen.canvas:
        if surface.overlay_address_bar is not None:
            overlay = surface.overlay_address_bar
            break

    login_form = any(isinstance(c, LoginFormInPage) for c in _iter_contents(screen))
    warning_style = screen.warning.style if screen.warning is not None else None

    return VisibleScreen(
        address=address,
        padlock=padlock,
        green_bar=green_bar,
        overlay_address_bar=overlay,
        fullscreen=screen.fullscreen,
        greyed=greyed,
        warning_style=warning_style,
        dialog=dialog,
        login_form_in_page=login_form,
        window_icons=window_icons,
        taskbar_visible=taskbar_visible,
        asset_style=asset_style,
        tick=screen.now,
    )


def visible_screen_to_dict(visible: VisibleScreen) -> dict:
    """Fixed-key JSON form of a projected screen (the service wire format)."""
    return {
        "address": visible.address,
        "padlock": visible.padlock,
        "green_bar": visible.green_bar,
        "overlay_address_bar": visible.overlay_address_bar,
        "fullscreen": visible.fullscreen,
        "greyed": visible.greyed,
        "warning": None if visible.warning_style is None else {"style": visible.warning_style},
        "dialog": None
        if visible.dialog is None
        else {
            "identity_text": visible.dialog.identity_text,
            "trent_name": visible.dialog.trent_name,
            "secret_id": visible.dialog.secret_id,
            "has_window_icon": visible.dialog.has_window_icon,
        },
        "login_form_in_page": visible.login_form_in_page,
        "window_icons": visible.window_icons,
        "taskbar_visible": visible.taskbar_visible,
        "asset_style": visible.asset_style,
        "tick": visible.tick,
    }
