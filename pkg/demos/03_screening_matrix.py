"""
Who catches what: the strategy x policy matrix
==============================================

Monte-Carlo every attacker strategy against every user policy and print the
attack success rates with 95% Wilson intervals. The secret-checking column
is the story: every attack either fails exactly (structural mismatch) or
succeeds only at the 1/U guess-collision rate — except the thief who has
already stolen the secret from a compromised store.
"""

from phishgame import scenarios
from phishgame.game import evaluate_matrix
from phishgame.users import POLICY_NAMES

N = 2_000
U = 128

result = evaluate_matrix(
    scenarios.all_strategies(), list(POLICY_NAMES), n_per_cell=N, base_seed=1, universe_size=U
)

width = max(len(name) for name in POLICY_NAMES) + 2
header = "strategy".ljust(26) + "".join(p.ljust(width) for p in POLICY_NAMES)
print(header)
print("-" * len(header))
for strategy in scenarios.all_strategies():
    row = strategy.name.ljust(26)
    for policy in POLICY_NAMES:
        cell = result.cells[(strategy.name, policy)]
        row += f"{cell.attack_success_rate:.4f}".ljust(width)
    print(row)

print(f"\nguess-collision floor 1/U = {1 / U:.4f}")
print("\ngenuine-traffic acceptance (no attack in the world):")
for policy in POLICY_NAMES:
    base = result.baselines[policy]
    low, high = base.wilson_low, base.wilson_high
    print(f"  {policy.ljust(20)} accept={base.accept_given_genuine:.4f}")

checker = result.cells[("fake_dialog_div", "secret_checker")]
print(
    f"\nsecret_checker vs fake_dialog_div: {checker.captures} captures in {N}, "
    f"all {checker.collisions} of them guess collisions, "
    f"95% CI [{checker.wilson_low:.4f}, {checker.wilson_high:.4f}]"
)
