"""Deterministic simulator for trusted-dialog anti-phishing screening strategies.

The library models a browser as a virtual machine with capability-separated
processes, a chrome-rendered trusted login dialog backed by a user-browser
shared secret, a catalog of counterfeiting attacks, and scripted users, then
measures which screening strategies separate genuine sites from phishing.
"""

from .attacks import AttackerStrategy, AttackPlan, StrategyKind, plan_attack, apply_attack
from .game import (
    AggregateStats,
    EpisodeConfig,
    EpisodeTranscript,
    PayoffRow,
    PayoffTable,
    best_response,
    default_config,
    evaluate_matrix,
    run_batch,
    run_episode,
    separation_index,
)
from .pki import (
    Certificate,
    IdentityCredentials,
    TrentAuthority,
    TrentRegistry,
    issue_certificate,
    verify_certificate,
)
from .secretstore import SecretStore, SharedSecret, mark_compromised, provision_secret, read_secret
from .users import AttentionProfile, PolicyKind, UserPolicy, decide, perceive
from .vmachine import BrowserProfile, ScreenState, Session, begin_session, navigate, submit_login

__version__ = "0.1.0"
