"""
The attacker learns, and it doesn't help
========================================

Pit an adaptive attacker (Laplace-smoothed best response over its own
capture history, with a little exploration) against a secret-checking user
for 3,000 rounds. Watch the strategy distribution: nothing the attacker can
switch to beats the 1/U guessing floor, so the empirical capture rate stays
pinned there no matter what it plays.
"""

import random
from collections import Counter

from phishgame import scenarios
from phishgame.game import best_response, default_config, run_episode, split_seed

U = 128
ROUNDS = 3_000
rng = random.Random(0)

strategies = [s for s in scenarios.all_strategies() if s.name != "secret_thief"]
history = []
captures = 0
played = Counter()

for i in range(ROUNDS):
    strategy = best_response(history, strategies, exploration=0.1, rng=rng)
    config = default_config(
        policy_name="secret_checker", strategy=strategy, seed=split_seed(99, i), universe_size=U
    )
    transcript = run_episode(config)
    captured = transcript.credentials_captured
    history.append((strategy.name, captured))
    captures += captured
    played[strategy.name] += 1

print(f"{ROUNDS} rounds vs secret_checker, exploration 0.1\n")
print("strategy mix the attacker settled on:")
for name, count in played.most_common():
    wins = sum(1 for s, c in history if s == name and c)
    print(f"  {name.ljust(24)} played {count:5d}  captures {wins}")

print(f"\noverall capture rate {captures / ROUNDS:.4f} vs guessing floor {1 / U:.4f}")
