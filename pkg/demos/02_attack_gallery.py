"""
A gallery of counterfeits
=========================

Render each attacker strategy against a fresh browser session and print the
screen exactly as the user-facing projection serializes it. The point to
notice: every field here is something a human could see — nothing in the
projection says "this is an attack".
"""

import json
import random

from phishgame import scenarios, vmachine
from phishgame.attacks import apply_attack, plan_attack
from phishgame.secretstore import mark_compromised, provision_secret
from phishgame.vmachine import project_visible, visible_screen_to_dict

U = 128
rng = random.Random(42)

for strategy in scenarios.all_strategies():
    store = provision_secret(random.Random(3), U)
    if strategy.name == "secret_thief":
        store = mark_compromised(store)  # the thief needs a compromised store
    session = vmachine.begin_session(
        scenarios.BROWSER_PROFILES["chrome"], store, scenarios.WORLD.registry
    )
    plan = plan_attack(strategy, rng, U, scenarios.attack_context(store))
    session = apply_attack(session, plan)
    screen = visible_screen_to_dict(project_visible(session.screen))

    print(f"\n=== {strategy.name} ===")
    print(f"true secret #{store.secret.secret_id}, attacker shows", end=" ")
    print(f"#{plan.guessed_secret_id}" if plan.guessed_secret_id is not None else "no secret")
    print(json.dumps(screen, indent=2))
