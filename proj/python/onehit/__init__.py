"""Exact hit/stand solver for one-hit blackjack.

Rational results come back as fractions.Fraction. Variant keywords shared by
most calls: visibility ("two-up", "one-up", "no-up"), decks ("1", "6",
"inf"), dealer ("S15".."H18", "always-hit", "always-stand"), payout ("3:2"
or "6:5") and peek.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import _onehit
from ._onehit import InfeasibleDeal, UnreachableObservable

__all__ = [
    "InfeasibleDeal",
    "UnreachableObservable",
    "cell",
    "export_table",
    "overall",
    "rule_sweep",
    "simulate",
    "stage1",
    "strategy_table",
    "sweep_decks",
    "verify_fixtures",
]

_RATIONAL_KEYS = {"win", "tie", "loss", "ev", "ev_hit", "ev_stand", "mass", "weight"}


def _fractions(obj):
    if isinstance(obj, dict):
        return {
            k: Fraction(v) if k in _RATIONAL_KEYS and isinstance(v, str) else _fractions(v)
            for k, v in obj.items()
        }
    if isinstance(obj, list):
        return [_fractions(v) for v in obj]
    return obj


def _variant(kw):
    kw = dict(kw)
    if "decks" in kw:
        kw["decks"] = str(kw["decks"])
    return kw


def overall(**variant) -> dict:
    """Overall P(W), P(T), P(L) and E[X] under the optimal strategy."""
    return _fractions(_onehit.overall(**_variant(variant)))


def strategy_table(**variant) -> list[dict]:
    return _fractions(_onehit.strategy_table(**_variant(variant)))


def export_table(format: str = "markdown", precision: int = 6, **variant) -> str:
    return _onehit.export_table(format, precision, **_variant(variant))


def cell(player: str, dealer_state: str = "none", **variant) -> dict:
    """One decision cell, e.g. cell("soft13", "hard14") or cell("hard16", "10", visibility="one-up")."""
    return _fractions(_onehit.cell(player, dealer_state, **_variant(variant)))


def stage1(player: str, dealer: str, decks="1", dealer_rule: str = "H17") -> dict:
    """Both layouts known, e.g. stage1("A,2", "6,8")."""
    return _fractions(_onehit.stage1(player, dealer, decks=str(decks), dealer_rule=dealer_rule))


def rule_sweep(**variant) -> list[dict]:
    return _fractions(_onehit.rule_sweep(**_variant(variant)))


def sweep_decks(decks, **variant) -> dict:
    return json.loads(_onehit.sweep_decks_json(list(decks), **variant))


def simulate(trials: int = 1_000_000, seed: int = 1, chunks: int = 16, threads: int = 0, **variant) -> dict:
    return json.loads(_onehit.simulate_json(trials, seed, chunks, threads, **_variant(variant)))


def verify_fixtures(path: str, suite: str | None = None) -> list[dict]:
    return _onehit.verify_fixtures(path, suite)
