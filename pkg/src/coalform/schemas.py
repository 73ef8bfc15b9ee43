"""Published JSON schemas (draft 2020-12) for ``--format json`` output.

Report schema version: ``coalform.report/1``.  Game-spec documents have
their own ``format_version`` and schema.
"""
from __future__ import annotations

from .reports import SCHEMA

EXACT = {"anyOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}]}
NUMBER = {"anyOf": [EXACT, {"type": "number"}]}
PARTITION = {"type": "string", "minLength": 1}
VECTOR = {"type": "array", "items": NUMBER}
PROFILE = {
    "type": "object",
    "additionalProperties": {"type": "object", "additionalProperties": NUMBER, "minProperties": 1},
}

GAMESPEC = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "coalform game spec, format_version 1",
    "type": "object",
    "required": ["format_version", "players", "payoffs"],
    "additionalProperties": False,
    "properties": {
        "format_version": {"const": 1},
        "name": {"type": "string"},
        "notes": {"type": "string"},
        "players": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "actions": {"type": "array", "items": {"type": "array", "items": {"type": "string"}, "minItems": 1}},
        "default_payoff": {"type": "array", "items": EXACT},
        "payoffs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["partition", "payoff"],
                "additionalProperties": False,
                "properties": {
                    "partition": PARTITION,
                    "actions": {"type": "array", "items": {"type": "string"}},
                    "payoff": {"type": "array", "items": EXACT},
                    "note": {"type": "string"},
                },
            },
        },
    },
}

GAME = {
    "type": "object",
    "required": ["spec", "k"],
    "properties": {"spec": GAMESPEC, "k": {"type": "integer", "minimum": 1}},
}

MIXED = {
    "type": "object",
    "required": ["profile", "max_regret", "method", "payoff"],
    "properties": {"profile": PROFILE, "max_regret": NUMBER, "method": {"type": "string"}, "payoff": VECTOR},
}


def _report(kind: str, required: list[str], properties: dict) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": f"{SCHEMA} {kind}",
        "type": "object",
        "required": ["schema", "kind", *required],
        "properties": {"schema": {"const": SCHEMA}, "kind": {"const": kind},
                       "title": {"type": "string"}, **properties},
    }


REPORT_SCHEMAS = {
    "partitions": _report("partitions", ["players", "k", "count", "partitions"], {
        "players": {"type": "array", "items": {"type": "string"}},
        "k": {"type": "integer", "minimum": 1},
        "count": {"type": "integer", "minimum": 0},
        "partitions": {"type": "array", "items": PARTITION},
    }),
    "equilibrium": _report("equilibrium", [
        "game", "tolerance", "pure_equilibria", "mixed_equilibria", "rejected_candidates",
        "equilibrium_partitions", "elimination_trace", "notes"], {
        "game": GAME,
        "tolerance": NUMBER,
        "pure_equilibria": {"type": "array", "items": {
            "type": "object", "required": ["profile", "partition", "payoff", "strong"],
            "properties": {"profile": {"type": "array", "items": {"type": "string"}},
                           "partition": PARTITION, "payoff": VECTOR, "strong": {"type": "boolean"}}}},
        "mixed_equilibria": {"type": "array", "items": MIXED},
        "rejected_candidates": {"type": "array", "items": MIXED},
        "equilibrium_partitions": {"type": "array", "items": PARTITION},
        "elimination_trace": {"oneOf": [{"type": "null"}, {"type": "array", "items": {
            "type": "object", "additionalProperties": {"type": "array", "items": {"type": "string"}}}}]},
        "notes": {"type": "array", "items": {"type": "string"}},
    }),
    "cooperation": _report("cooperation", [
        "game", "profile", "coalition", "ex_ante", "ex_post_1", "ex_post_2", "complete",
        "max_regret", "witnesses"], {
        "game": GAME, "profile": PROFILE, "coalition": {"type": "string"},
        "ex_ante": {"type": "boolean"}, "ex_post_1": {"type": "boolean"},
        "ex_post_2": {"type": "boolean"}, "complete": {"type": "boolean"},
        "max_regret": NUMBER,
        "witnesses": {"type": "object", "additionalProperties": False, "properties": {
            "ex_ante": {"type": "object", "required": ["player", "strategy"]},
            "ex_post_1": {"type": "object", "required": ["partition"]},
            "ex_post_2": {"type": "object", "required": ["max_regret"]},
        }},
    }),
    "stability": _report("stability", [
        "game", "base_profile", "k0", "k_star", "policy", "refine", "base_payoff", "per_k"], {
        "game": GAME, "base_profile": PROFILE,
        "k0": {"type": "integer", "minimum": 1}, "k_star": {"type": "integer", "minimum": 1},
        "policy": {"enum": ["forall", "exists"]}, "refine": {"type": "boolean"},
        "base_payoff": VECTOR,
        "per_k": {"type": "array", "items": {
            "type": "object",
            "required": ["k", "passed", "base_is_equilibrium", "base_regret", "domain_equal",
                         "payoff_ok", "examined", "carried_over", "violators"],
            "properties": {
                "k": {"type": "integer"}, "passed": {"type": "boolean"},
                "base_is_equilibrium": {"type": "boolean"}, "base_regret": NUMBER,
                "domain_equal": {"type": "boolean"},
                "payoff_ok": {"type": "array", "items": {"type": "boolean"}},
                "examined": {"type": "array", "items": PROFILE},
                "carried_over": {"type": "integer", "minimum": 0},
                "violators": {"type": "array", "items": {
                    "type": "object", "required": ["profile", "payoff"],
                    "properties": {"profile": PROFILE, "payoff": VECTOR}}},
            }}},
    }),
    "simulation": _report("simulation", ["game", "seed", "steps", "profile", "frequencies", "states"], {
        "game": GAME, "seed": {"type": "integer"}, "steps": {"type": "integer", "minimum": 1},
        "profile": PROFILE,
        "frequencies": {"type": "array", "items": {
            "type": "object",
            "required": ["partition", "count", "frequency", "probability", "standard_error"],
            "properties": {"partition": PARTITION, "count": {"type": "integer"},
                           "frequency": {"type": "number"}, "probability": NUMBER,
                           "standard_error": {"type": "number"}}}},
        "states": {"type": "array", "items": PARTITION},
    }),
    "coop-theory": _report("coop-theory", ["players", "convention", "values", "core", "core_error", "shapley"], {
        "players": {"type": "array", "items": {"type": "string"}},
        "convention": {"enum": ["optimistic", "pessimistic"]},
        "values": {"type": "object", "additionalProperties": EXACT},
        "core": {"oneOf": [{"type": "null"}, {
            "type": "object", "required": ["empty", "core_point", "certificate", "verified"],
            "properties": {"empty": {"type": "boolean"},
                           "core_point": {"oneOf": [{"type": "null"}, VECTOR]},
                           "certificate": {"oneOf": [{"type": "null"},
                                                     {"type": "object", "additionalProperties": EXACT}]},
                           "verified": {"type": "boolean"}}}]},
        "core_error": {"oneOf": [{"type": "null"}, {"type": "string"}]},
        "shapley": VECTOR,
    }),
}


def schema_for(data: dict) -> dict:
    """Schema matching a JSON document emitted by the CLI."""
    if "kind" in data:
        return REPORT_SCHEMAS[data["kind"]]
    return GAMESPEC
