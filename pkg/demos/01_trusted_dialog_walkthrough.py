"""
The login ceremony, step by step
================================

Walk one genuine login from a blank browser session to a logged-in page,
printing what the user sees at every step: the dialog only appears after
the site's certificate verifies, the shared-secret image is drawn by the
browser (pages can't read it), and the page process is created strictly
after credentials are entered.
"""

import random

from phishgame import vmachine
from phishgame.scenarios import BOB_ORIGIN, BROWSER_PROFILES, WORLD
from phishgame.secretstore import CAPABILITY_DENIED, provision_secret, read_secret

rng = random.Random(7)
store = provision_secret(rng, universe_size=128)
print(f"browser holds secret image #{store.secret.secret_id} ({store.secret.label})")

session = vmachine.begin_session(BROWSER_PROFILES["chrome"], store, WORLD.registry)
print(f"blank session: {session.process_count()} process, phase={session.phase!r}")

# navigate to the genuine bank; its certificate asks for the login dialog
session = vmachine.navigate(session, BOB_ORIGIN, WORLD.bob_certificate)
dialog = session.screen.modal
print("\nafter navigation the trusted dialog is up and the page does NOT exist yet:")
print(f"  identity : {dialog.identity.display_text()}")
print(f"  issuer   : {dialog.trent_display_name}")
print(f"  secret   : image #{dialog.secret.secret_id}")
print(f"  processes: {session.process_count()} (still just the chrome)")

# the sandboxed page can never have produced that secret
cap = vmachine.sandbox(BOB_ORIGIN)
assert read_secret(store, cap) is CAPABILITY_DENIED
print("\na sandboxed page asking for the secret gets CAPABILITY_DENIED")

# only now does the user type; only after that is the page created
session = vmachine.submit_login(session, "enter")
print(f"\nafter login: phase={session.phase!r}, processes={session.process_count()}")
for tick, event, detail in session.events:
    print(f"  t={tick}: {event} {detail}")
