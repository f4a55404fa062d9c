"""Session-oriented HTTP facade for the interactive phishing game.

A live session keeps one secret store (the human memorises the secret image
once, at creation), an adaptive attacker, and a running score. Screens are
served through the same user-visible projection the scripted user models
consume, so no response before the decision carries the world type or the
strategy identity.
"""

from __future__ import annotations

import random
import secrets as _secrets
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import game, scenarios, users
from .attacks import StrategyKind
from .game import DEFAULT_PAYOFFS, EpisodeConfig, PreparedEpisode, best_response, split_seed
from .vmachine import project_visible, visible_screen_to_dict

SCREEN_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "/schema/v1/screen",
    "type": "object",
    "additionalProperties": False,
    "required": [
        "address",
        "padlock",
        "green_bar",
        "overlay_address_bar",
        "fullscreen",
        "greyed",
        "warning",
        "dialog",
        "login_form_in_page",
        "window_icons",
        "taskbar_visible",
        "asset_style",
        "tick",
    ],
    "properties": {
        "address": {"type": "string"},
        "padlock": {"type": "boolean"},
        "green_bar": {"type": "boolean"},
        "overlay_address_bar": {"type": ["string", "null"]},
        "fullscreen": {"type": "boolean"},
        "greyed": {"type": "boolean"},
        "warning": {
            "type": ["object", "null"],
            "additionalProperties": False,
            "required": ["style"],
            "properties": {"style": {"enum": ["transient", "persistent"]}},
        },
        "dialog": {
            "type": ["object", "null"],
            "additionalProperties": False,
            "required": ["identity_text", "trent_name", "secret_id", "has_window_icon"],
            "properties": {
                "identity_text": {"type": "string"},
                "trent_name": {"type": "string"},
                "secret_id": {"type": "integer", "minimum": 0},
                "has_window_icon": {"type": "boolean"},
            },
        },
        "login_form_in_page": {"type": "boolean"},
        "window_icons": {"type": "integer", "minimum": 0},
        "taskbar_visible": {"type": "boolean"},
        "asset_style": {"enum": ["realistic", "crayon"]},
        "tick": {"type": "integer", "minimum": 0},
    },
}


class CreateSessionRequest(BaseModel):
    profile_name: str = "chrome"
    universe_size: int = Field(default=128, ge=2)
    p_genuine: float = Field(default=0.5, ge=0.0, le=1.0)
    strategies: list[str] = Field(
        default_factory=lambda: [
            "plain_phish_page",
            "fake_dialog_div",
            "undecorated_popup",
            "fullscreen_counterfeit",
            "cookie_as_password",
            "cert_bearing_mallory",
        ]
    )
    exploration: float = Field(default=0.1, ge=0.0, le=1.0)
    seed: int = Field(default=0, ge=0)
    fullscreen_fidelity: str = "realistic"


class DecisionRequest(BaseModel):
    episode: int
    decision: str  # "enter" | "back_away"


@dataclass
class LiveSession:
    session_id: str
    rng: random.Random
    store: object
    p_genuine: float
    profile_name: str
    universe_size: int
    strategies: list
    exploration: float
    episode_index: int = 0
    prepared: Optional[PreparedEpisode] = None
    history: list = field(default_factory=list)  # (strategy_name, captured)
    transcript_log: list = field(default_factory=list)
    human_points: float = 0.0
    attacker_points: float = 0.0
    episodes_played: int = 0
    last_resolution: Optional[dict] = None  # {"episode", "decision", "response"}
    lock: threading.Lock = field(default_factory=threading.Lock)


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def _teaching_signal(prep: PreparedEpisode) -> Optional[str]:
    """Which observable signal would have exposed this episode's counterfeit."""
    if prep.genuine:
        return None
    kind = prep.strategy.kind
    if kind in (StrategyKind.PLAIN_PHISH_PAGE, StrategyKind.COOKIE_AS_PASSWORD):
        return "login_fields_in_webpage"
    if kind == StrategyKind.UNDECORATED_POPUP:
        return "overlay_address_bar"
    if kind == StrategyKind.CERT_BEARING_MALLORY:
        return "identity_shown"
    if kind == StrategyKind.SECRET_THIEF:
        return "none_secret_was_stolen"
    if prep.guessed_secret_id == prep.store.secret.secret_id:
        return "none_lucky_secret_guess"
    return "secret_shown"


def create_app(ui_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="phishgame session service", version="1")
    sessions: dict[str, LiveSession] = {}

    def _episode_config(live: LiveSession, strategy) -> EpisodeConfig:
        return game.default_config(
            policy_name="secret_checker",  # placeholder; the human decides
            strategy=strategy,
            p_genuine=live.p_genuine,
            seed=0,
            universe_size=live.universe_size,
            profile_name=live.profile_name,
        )

    def _prepare_next(live: LiveSession) -> None:
        strategy = best_response(live.history, live.strategies, live.exploration, live.rng)
        config = _episode_config(live, strategy)
        live.prepared = game.prepare_episode(config, live.rng, store=live.store)
        live.episode_index += 1

    @app.post("/sessions", status_code=201)
    def create_session(request: CreateSessionRequest):
        if request.profile_name not in scenarios.BROWSER_PROFILES:
            return _error(400, "UNKNOWN_PROFILE", f"unknown profile {request.profile_name!r}")
        try:
            strategies = [
                scenarios.make_strategy(name, request.fullscreen_fidelity)
                for name in request.strategies
            ]
        except KeyError as exc:
            return _error(400, "UNKNOWN_STRATEGY", str(exc))
        if not strategies:
            return _error(400, "EMPTY_STRATEGY_LIST", "at least one strategy required")
        if any(s.kind == StrategyKind.SECRET_THIEF for s in strategies):
            return _error(
                400, "ILLEGAL_STRATEGY", "secret_thief is not playable against a live human"
            )

        rng = random.Random(split_seed(request.seed, 0))
        store = scenarios.provision_store(rng, request.universe_size)
        live = LiveSession(
            session_id=_secrets.token_hex(16),
            rng=rng,
            store=store,
            p_genuine=request.p_genuine,
            profile_name=request.profile_name,
            universe_size=request.universe_size,
            strategies=strategies,
            exploration=request.exploration,
        )
        _prepare_next(live)
        sessions[live.session_id] = live
        # The one and only disclosure of the secret: the human memorises it.
        return {
            "session_id": live.session_id,
            "secret_id": store.secret.secret_id,
            "universe_size": request.universe_size,
            "intended": {
                "identity_text": scenarios.BOB_IDENTITY.display_text(),
                "origin": scenarios.BOB_ORIGIN,
                "trent_name": scenarios.TRENT_DISPLAY_NAME,
            },
        }

    @app.get("/sessions/{session_id}/screen")
    def get_screen(session_id: str):
        live = sessions.get(session_id)
        if live is None:
            return _error(404, "UNKNOWN_SESSION", "no such session")
        with live.lock:
            if live.prepared is None:
                return _error(409, "WRONG_PHASE", "no episode awaiting a decision")
            screen = visible_screen_to_dict(project_visible(live.prepared.session.screen))
            return {"episode": live.episode_index, "screen": screen}

    @app.post("/sessions/{session_id}/decision")
    def post_decision(session_id: str, request: DecisionRequest):
        live = sessions.get(session_id)
        if live is None:
            return _error(404, "UNKNOWN_SESSION", "no such session")
        if request.decision not in (users.ENTER, users.BACK_AWAY):
            return _error(400, "BAD_DECISION", f"unknown decision {request.decision!r}")
        with live.lock:
            last = live.last_resolution
            if last is not None and request.episode == last["episode"]:
                if request.decision == last["decision"]:
                    return last["response"]  # idempotent retry
                return _error(409, "ALREADY_RESOLVED", "episode resolved with a different decision")
            if live.prepared is None or request.episode != live.episode_index:
                return _error(409, "WRONG_PHASE", "decision does not match the live episode")

            prep = live.prepared
            resolved = game.resolve_decision(prep, request.decision, DEFAULT_PAYOFFS)
            live.human_points += resolved.user_payoff
            live.attacker_points += resolved.attacker_payoff
            live.episodes_played += 1
            strategy_name = None if prep.genuine else prep.strategy.name
            if not prep.genuine:
                live.history.append((strategy_name, resolved.credentials_captured))
            live.transcript_log.append(
                {
                    "episode": request.episode,
                    "genuine": prep.genuine,
                    "strategy": strategy_name,
                    "decision": request.decision,
                    "captured": resolved.credentials_captured,
                    "user_payoff": resolved.user_payoff,
                    "attacker_payoff": resolved.attacker_payoff,
                }
            )
            response = {
                "reveal": {
                    "world": "genuine" if prep.genuine else "phish",
                    "strategy": strategy_name,
                    "exposing_signal": _teaching_signal(prep),
                },
                "payoffs": {
                    "user": resolved.user_payoff,
                    "attacker": resolved.attacker_payoff,
                },
                "score": {
                    "human_points": live.human_points,
                    "attacker_points": live.attacker_points,
                    "episodes_played": live.episodes_played,
                },
                "episode": request.episode,
                "next_episode_ready": True,
            }
            live.last_resolution = {
                "episode": request.episode,
                "decision": request.decision,
                "response": response,
            }
            _prepare_next(live)
            return response

    @app.get("/sessions/{session_id}/stats")
    def get_stats(session_id: str):
        live = sessions.get(session_id)
        if live is None:
            return _error(404, "UNKNOWN_SESSION", "no such session")
        with live.lock:
            log = live.transcript_log
            n = len(log)
            phish = [t for t in log if not t["genuine"]]
            genuine = [t for t in log if t["genuine"]]
            captures = sum(t["captured"] for t in phish)
            low, high = game.wilson_interval(captures, len(phish)) if phish else (0.0, 1.0)
            per_strategy = {}
            for strategy in live.strategies:
                trials = [t for t in phish if t["strategy"] == strategy.name]
                per_strategy[strategy.name] = {
                    "trials": len(trials),
                    "successes": sum(t["captured"] for t in trials),
                }
            return {
                "n": n,
                "n_genuine": len(genuine),
                "n_phish": len(phish),
                "captures": captures,
                "attack_success_rate": captures / len(phish) if phish else None,
                "accept_given_genuine": (
                    sum(t["decision"] == users.ENTER for t in genuine) / len(genuine)
                    if genuine
                    else None
                ),
                "accept_given_phish": (
                    sum(t["decision"] == users.ENTER for t in phish) / len(phish)
                    if phish
                    else None
                ),
                "wilson_low": low,
                "wilson_high": high,
                "mean_user_payoff": sum(t["user_payoff"] for t in log) / n if n else 0.0,
                "mean_attacker_payoff": (
                    sum(t["attacker_payoff"] for t in log) / n if n else 0.0
                ),
                "per_strategy": per_strategy,
            }

    @app.get("/schema/v1/screen")
    def get_screen_schema():
        return SCREEN_SCHEMA

    ui_path = Path(ui_dir) if ui_dir else Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if ui_path.is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_path), html=True), name="ui")

    return app
