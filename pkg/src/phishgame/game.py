"""The incomplete-information game engine.

One episode: draw the world type (genuine Bob or a phishing strategy), run
the navigation through the browser engine, let the user model perceive and
decide, then score against the payoff table. Episodes are fully determined
by (config, seed); batches split the base seed with a SplitMix64-style
integer mix so cells are reproducible and order independent.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from . import scenarios, users, vmachine
from .attacks import AttackerStrategy, StrategyKind, apply_attack, plan_attack
from .errors import ConfigurationError
from .users import AttentionProfile, FULL_ATTENTION, UserPolicy, decide, perceive
from .vmachine import BrowserProfile, Session

_MASK64 = (1 << 64) - 1


def split_seed(base: int, index: int) -> int:
    """Child seed for episode `index` of a batch (SplitMix64 finalizer)."""
    z = (base + 0x9E3779B97F4A7C15 * (index + 1)) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True, slots=True)
class PayoffRow:
    user: float
    attacker: float


@dataclass(frozen=True, slots=True)
class PayoffTable:
    credentials_to_mallory: PayoffRow = PayoffRow(-1.0, 1.0)
    credentials_to_bob: PayoffRow = PayoffRow(1.0, 0.0)
    backaway_from_bob: PayoffRow = PayoffRow(-0.1, 0.0)
    backaway_from_mallory: PayoffRow = PayoffRow(0.0, 0.0)

    def row_for(self, genuine: bool, entered: bool) -> tuple:
        if entered:
            row = self.credentials_to_bob if genuine else self.credentials_to_mallory
            name = "credentials_to_bob" if genuine else "credentials_to_mallory"
        else:
            row = self.backaway_from_bob if genuine else self.backaway_from_mallory
            name = "backaway_from_bob" if genuine else "backaway_from_mallory"
        return name, row


DEFAULT_PAYOFFS = PayoffTable()


@dataclass(frozen=True, slots=True)
class EpisodeConfig:
    p_genuine: float
    strategy: Optional[AttackerStrategy]
    policy_name: str
    attention: AttentionProfile
    profile: BrowserProfile
    universe_size: int
    payoffs: PayoffTable
    seed: int
    secret_compromised: bool = False
    # Pre-seed the attacker origin as already-fullscreened (Edge second-entry
    # episodes).
    attacker_origin_previously_fullscreened: bool = False

    def __post_init__(self):
        if not 0.0 <= self.p_genuine <= 1.0:
            raise ConfigurationError("p_genuine must lie in [0, 1]")
        if self.p_genuine < 1.0 and self.strategy is None:
            raise ConfigurationError("a phish-capable config needs a strategy")
        if (
            self.strategy is not None
            and self.strategy.kind == StrategyKind.SECRET_THIEF
            and not self.secret_compromised
        ):
            raise ConfigurationError("secret_thief requires a compromised store")


@dataclass(frozen=True, slots=True)
class EpisodeTranscript:
    seed: int
    world_draw: str  # "genuine" or the strategy name
    events: tuple  # (tick, name, detail) engine log
    signals: tuple  # sorted perceived signal kinds
    decision: str
    credentials_captured: bool
    guess_collision: bool
    payoff_row: str
    user_payoff: float
    attacker_payoff: float

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "world_draw": self.world_draw,
            "events": [list(e) for e in self.events],
            "signals": list(self.signals),
            "decision": self.decision,
            "credentials_captured": self.credentials_captured,
            "guess_collision": self.guess_collision,
            "payoff_row": self.payoff_row,
            "user_payoff": self.user_payoff,
            "attacker_payoff": self.attacker_payoff,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True, slots=True)
class PreparedEpisode:
    """A world drawn and a screen composed, awaiting the user's decision."""

    genuine: bool
    strategy: Optional[AttackerStrategy]
    session: Session
    guessed_secret_id: Optional[int]
    store: object


def prepare_episode(config: EpisodeConfig, rng: random.Random, store=None) -> PreparedEpisode:
    """Draw the world and run it up to the point of the user's decision.

    An existing store may be passed (the service keeps one secret per live
    session); otherwise one is provisioned from the episode rng.
    """
    if store is None:
        store = scenarios.provision_store(
            rng, config.universe_size, compromised=config.secret_compromised
        )
    genuine = rng.random() < config.p_genuine

    session = vmachine.begin_session(config.profile, store, scenarios.WORLD.registry)
    if config.attacker_origin_previously_fullscreened:
        session = replace(
            session, fullscreen_warned_origins=frozenset({scenarios.MALLORY_ORIGIN})
        )

    if genuine:
        session = vmachine.navigate(session, scenarios.BOB_ORIGIN, scenarios.WORLD.bob_certificate)
        return PreparedEpisode(True, None, session, None, store)

    ctx = scenarios.attack_context(store)
    plan = plan_attack(config.strategy, rng, config.universe_size, ctx)
    session = apply_attack(session, plan)
    return PreparedEpisode(False, config.strategy, session, plan.guessed_secret_id, store)


@dataclass(frozen=True, slots=True)
class ResolvedEpisode:
    session: Session
    credentials_captured: bool
    guess_collision: bool
    payoff_row: str
    user_payoff: float
    attacker_payoff: float


def resolve_decision(prep: PreparedEpisode, decision: str, payoffs: PayoffTable) -> ResolvedEpisode:
    session = vmachine.submit_login(prep.session, decision)
    entered = decision == users.ENTER
    captured = entered and not prep.genuine
    collision = (
        not prep.genuine
        and prep.strategy is not None
        and prep.strategy.kind != StrategyKind.SECRET_THIEF
        and prep.guessed_secret_id is not None
        and prep.guessed_secret_id == prep.store.secret.secret_id
    )
    row_name, row = payoffs.row_for(prep.genuine, entered)
    return ResolvedEpisode(session, captured, collision, row_name, row.user, row.attacker)


def run_episode(config: EpisodeConfig) -> EpisodeTranscript:
    rng = random.Random(config.seed)
    prep = prepare_episode(config, rng)
    policy = scenarios.make_policy(config.policy_name, prep.store)
    perception = perceive(prep.session.screen, config.attention, rng)
    decision = decide(policy, perception)
    resolved = resolve_decision(prep, decision, config.payoffs)
    return EpisodeTranscript(
        seed=config.seed,
        world_draw="genuine" if prep.genuine else prep.strategy.name,
        events=resolved.session.events,
        signals=tuple(sorted(s.kind.value for s in perception.signals)),
        decision=decision,
        credentials_captured=resolved.credentials_captured,
        guess_collision=resolved.guess_collision,
        payoff_row=resolved.payoff_row,
        user_payoff=resolved.user_payoff,
        attacker_payoff=resolved.attacker_payoff,
    )


def wilson_interval(successes: int, n: int, z: float = 1.959964) -> tuple:
    """95% Wilson score interval; well behaved at rates near zero."""
    if n == 0:
        return (0.0, 1.0)
    phat = successes / n
    denom = 1.0 + z * z / n
    centre = phat + z * z / (2 * n)
    spread = z * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n))
    return (max(0.0, (centre - spread) / denom), min(1.0, (centre + spread) / denom))


@dataclass(frozen=True, slots=True)
class AggregateStats:
    n: int
    n_genuine: int
    n_phish: int
    captures: int
    collisions: int
    attack_success_rate: Optional[float]
    accept_given_genuine: Optional[float]
    accept_given_phish: Optional[float]
    wilson_low: float
    wilson_high: float
    mean_user_payoff: float
    mean_attacker_payoff: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "n_genuine": self.n_genuine,
            "n_phish": self.n_phish,
            "captures": self.captures,
            "collisions": self.collisions,
            "attack_success_rate": self.attack_success_rate,
            "accept_given_genuine": self.accept_given_genuine,
            "accept_given_phish": self.accept_given_phish,
            "wilson_low": self.wilson_low,
            "wilson_high": self.wilson_high,
            "mean_user_payoff": self.mean_user_payoff,
            "mean_attacker_payoff": self.mean_attacker_payoff,
        }


def run_batch(
    config: EpisodeConfig,
    n: int,
    on_transcript: Optional[Callable[[EpisodeTranscript], None]] = None,
) -> AggregateStats:
    """Run n independently seeded episodes and aggregate from exact counts."""
    if n < 1:
        raise ConfigurationError("batch size must be at least 1")
    n_genuine = n_phish = captures = collisions = 0
    accept_genuine = accept_phish = 0
    user_total = attacker_total = 0.0
    for i in range(n):
        transcript = run_episode(replace(config, seed=split_seed(config.seed, i)))
        if on_transcript is not None:
            on_transcript(transcript)
        entered = transcript.decision == users.ENTER
        if transcript.world_draw == "genuine":
            n_genuine += 1
            accept_genuine += entered
        else:
            n_phish += 1
            accept_phish += entered
            captures += transcript.credentials_captured
            collisions += transcript.guess_collision
        user_total += transcript.user_payoff
        attacker_total += transcript.attacker_payoff

    low, high = wilson_interval(captures, n_phish) if n_phish else (0.0, 1.0)
    return AggregateStats(
        n=n,
        n_genuine=n_genuine,
        n_phish=n_phish,
        captures=captures,
        collisions=collisions,
        attack_success_rate=captures / n_phish if n_phish else None,
        accept_given_genuine=accept_genuine / n_genuine if n_genuine else None,
        accept_given_phish=accept_phish / n_phish if n_phish else None,
        wilson_low=low,
        wilson_high=high,
        mean_user_payoff=user_total / n,
        mean_attacker_payoff=attacker_total / n,
    )


def default_config(
    policy_name: str = "secret_checker",
    strategy: Optional[AttackerStrategy] = None,
    p_genuine: float = 0.0,
    seed: int = 0,
    universe_size: int = 128,
    attention: AttentionProfile = FULL_ATTENTION,
    profile_name: str = "chrome",
    payoffs: PayoffTable = DEFAULT_PAYOFFS,
    secret_compromised: bool = False,
    attacker_origin_previously_fullscreened: bool = False,
) -> EpisodeConfig:
    return EpisodeConfig(
        p_genuine=p_genuine,
        strategy=strategy,
        policy_name=policy_name,
        attention=attention,
        profile=scenarios.BROWSER_PROFILES[profile_name],
        universe_size=universe_size,
        payoffs=payoffs,
        seed=seed,
        secret_compromised=secret_compromised,
        attacker_origin_previously_fullscreened=attacker_origin_previously_fullscreened,
    )


@dataclass(frozen=True, slots=True)
class MatrixResult:
    cells: dict  # (strategy_name, policy_name) -> AggregateStats
    baselines: dict  # policy_name -> AggregateStats (genuine traffic only)


def evaluate_matrix(
    strategies: list,
    policies: list,
    n_per_cell: int,
    base_seed: int = 0,
    universe_size: int = 128,
    attention: AttentionProfile = FULL_ATTENTION,
    profile_name: str = "chrome",
    payoffs: PayoffTable = DEFAULT_PAYOFFS,
    on_transcript: Optional[Callable] = None,
) -> MatrixResult:
    """Strategy x policy grid at p_genuine=0, plus a genuine baseline per policy."""
    if not strategies or not policies:
        raise ConfigurationError("strategy and policy lists must be nonempty")
    cells = {}
    cell_index = 0
    for strategy in strategies:
        for policy_name in policies:
            config = default_config(
                policy_name=policy_name,
                strategy=strategy,
                p_genuine=0.0,
                seed=split_seed(base_seed, cell_index),
                universe_size=universe_size,
                attention=attention,
                profile_name=profile_name,
                payoffs=payoffs,
                secret_compromised=strategy.kind == StrategyKind.SECRET_THIEF,
            )
            cells[(strategy.name, policy_name)] = run_batch(config, n_per_cell, on_transcript)
            cell_index += 1
    baselines = {}
    for policy_name in policies:
        config = default_config(
            policy_name=policy_name,
            strategy=None,
            p_genuine=1.0,
            seed=split_seed(base_seed, cell_index),
            universe_size=universe_size,
            attention=attention,
            profile_name=profile_name,
            payoffs=payoffs,
        )
        baselines[policy_name] = run_batch(config, n_per_cell, on_transcript)
        cell_index += 1
    return MatrixResult(cells, baselines)


def separation_index(
    policy_name: str,
    attention: AttentionProfile,
    strategies: list,
    n: int,
    base_seed: int = 0,
    universe_size: int = 128,
    profile_name: str = "chrome",
) -> float:
    """P(accept | genuine) minus the best attack's P(accept | phish)."""
    genuine = run_batch(
        default_config(
            policy_name=policy_name,
            p_genuine=1.0,
            seed=split_seed(base_seed, 10_000_019),
            universe_size=universe_size,
            attention=attention,
            profile_name=profile_name,
        ),
        n,
    )
    worst = 0.0
    for i, strategy in enumerate(strategies):
        stats = run_batch(
            default_config(
                policy_name=policy_name,
                strategy=strategy,
                p_genuine=0.0,
                seed=split_seed(base_seed, i),
                universe_size=universe_size,
                attention=attention,
                profile_name=profile_name,
                secret_compromised=strategy.kind == StrategyKind.SECRET_THIEF,
            ),
            n,
        )
        worst = max(worst, stats.accept_given_phish or 0.0)
    return (genuine.accept_given_genuine or 0.0) - worst


def best_response(
    history: list,
    strategies: list,
    exploration: float,
    rng: Optional[random.Random] = None,
) -> AttackerStrategy:
    """Adaptive attacker move: explore, else argmax of Laplace-smoothed success.

    `history` holds (strategy_name, succeeded) pairs. Ties break toward the
    lowest strategy index, so the choice is deterministic at exploration 0.
    """
    if not strategies:
        raise ConfigurationError("best_response needs a nonempty strategy list")
    if exploration > 0.0:
        if rng is None:
            raise ConfigurationError("exploration requires an rng")
        if rng.random() < exploration:
            return strategies[rng.randrange(len(strategies))]
    best = strategies[0]
    best_rate = -1.0
    for strategy in strategies:
        successes = sum(1 for name, ok in history if name == strategy.name and ok)
        trials = sum(1 for name, _ in history if name == strategy.name)
        rate = (successes + 1) / (trials + 2)  # add-one smoothing
        if rate > best_rate:
            best, best_rate = strategy, rate
    return best
