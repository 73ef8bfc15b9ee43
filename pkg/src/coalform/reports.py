"""Text and JSON rendering of analysis reports.

JSON reports carry ``"schema": "coalform.report/1"`` and a ``"kind"``; the
game they refer to is embedded as a game-spec document plus ``k`` so that a
report can be parsed back without outside context.  Exact numbers are
written as integers or ``"p/q"`` strings, inexact ones as JSON floats.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .analysis import CooperationReport, StabilityReport, StabilityRow, TrajectorySample
from .cooperative import CharacteristicFunction, CoreResult
from .equilibrium import EquilibriumReport, MixedEquilibrium
from .game import Game, MixedProfile, build_game, expected_payoff, realized_distribution
from .gamespec import (
    GameSpecDocument,
    document_from_data,
    document_to_data,
    format_number,
)
from .partitions import PlayerSet, canonical_string, parse_partition

SCHEMA = "coalform.report/1"


@dataclass
class PartitionListing:
    players: PlayerSet
    k: int
    partitions: list


@dataclass
class CoopTheoryReport:
    characteristic: CharacteristicFunction
    core: CoreResult | None
    shapley: tuple
    core_error: str | None = None


@dataclass
class SimulationReport:
    sample: TrajectorySample
    expected: dict = field(default_factory=dict)

    @property
    def steps(self) -> int:
        return len(self.sample.states)

    def rows(self):
        """(partition, count, frequency, expected probability, standard error)."""
        counts = self.sample.frequencies()
        parts = sorted(set(counts) | set(self.expected))
        out = []
        for p in parts:
            prob = self.expected.get(p, Fraction(0))
            se = math.sqrt(float(prob) * (1 - float(prob)) / self.steps)
            out.append((p, counts.get(p, 0), counts.get(p, 0) / self.steps, prob, se))
        return out


# -- number and profile encoding ------------------------------------------------

def num(x):
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return format_number(Fraction(x))
    return float(x)


def read_num(x):
    if isinstance(x, float):
        return x
    return Fraction(x)


def fmt(x) -> str:
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    return f"{x:.6g}"


def fmt_vec(v) -> str:
    return "(" + ",".join(fmt(x) for x in v) + ")"


def profile_to_data(g: Game, m: MixedProfile) -> dict:
    return {
        g.players.labels[i]: {g.strategy_str(s): num(p) for s, p in m[i].items()}
        for i in range(g.n)
    }


def profile_from_data(g: Game, data: dict) -> MixedProfile:
    """Read ``{"A": {"A,B|C|D": "1/3", ...}, ...}``; every player must appear."""
    if not isinstance(data, dict):
        raise ValueError("profile must be an object keyed by player label")
    unknown = set(data) - set(g.players.labels)
    if unknown:
        raise ValueError(f"unknown player {sorted(unknown)[0]!r} in profile")
    dists = []
    for i, lab in enumerate(g.players.labels):
        if lab not in data or not isinstance(data[lab], dict):
            raise ValueError(f"profile has no distribution for player {lab!r}")
        dists.append({g.parse_strategy(t, i): read_num(p) for t, p in data[lab].items()})
    return MixedProfile(dists)


def _game_data(g: Game) -> dict:
    return {"spec": document_to_data(GameSpecDocument(g.spec)), "k": g.k}


def _game_from(data: dict) -> Game:
    return build_game(document_from_data(data["spec"]).spec, data["k"])


def _pure_str(g: Game, prof) -> list[str]:
    return [g.strategy_str(s) for s in prof]


# -- to data -------------------------------------------------------------------

def report_to_data(report) -> dict:
    if isinstance(report, EquilibriumReport):
        g = report.game
        ps = g.players
        return {
            "schema": SCHEMA, "kind": "equilibrium", "game": _game_data(g),
            "tolerance": num(report.tolerance),
            "pure_equilibria": [
                {"profile": _pure_str(g, p),
                 "partition": canonical_string(g.realized(p), ps),
                 "payoff": [num(x) for x in g.payoff(p)],
                 "strong": strong}
                for p, strong in zip(report.pure_equilibria, report.strong)
            ],
            "mixed_equilibria": [_mixed_data(g, e) for e in report.mixed_equilibria],
            "rejected_candidates": [_mixed_data(g, e) for e in report.rejected_candidates],
            "equilibrium_partitions": [canonical_string(p, ps) for p in report.equilibrium_partitions],
            "elimination_trace": None if report.elimination_trace is None else [
                {ps.labels[i]: [g.strategy_str(s) for s in gone] for i, gone in rnd.items()}
                for rnd in report.elimination_trace
            ],
            "notes": list(report.notes),
        }
    if isinstance(report, CooperationReport):
        raise TypeError("cooperation reports need their game; use cooperation_to_data")
    if isinstance(report, StabilityReport):
        raise TypeError("stability reports need their spec; use stability_to_data")
    if isinstance(report, PartitionListing):
        return {"schema": SCHEMA, "kind": "partitions", "players": list(report.players.labels),
                "k": report.k, "count": len(report.partitions),
                "partitions": [canonical_string(p, report.players) for p in report.partitions]}
    if isinstance(report, CoopTheoryReport):
        cf = report.characteristic
        ps = cf.players
        core = None
        if report.core is not None:
            core = {"empty": report.core.empty,
                    "core_point": None if report.core.core_point is None
                    else [num(x) for x in report.core.core_point],
                    "certificate": None if report.core.certificate is None
                    else {ps.coalition_str(c): num(w) for c, w in report.core.certificate.items()},
                    "verified": report.core.verify(cf)}
        return {"schema": SCHEMA, "kind": "coop-theory", "players": list(ps.labels),
                "convention": cf.convention,
                "values": {ps.coalition_str(c): num(cf.values[c]) for c in cf.coalitions()},
                "core": core, "core_error": report.core_error,
                "shapley": [num(x) for x in report.shapley]}
    if isinstance(report, SimulationReport):
        g = report.sample.game
        ps = g.players
        return {"schema": SCHEMA, "kind": "simulation", "game": _game_data(g),
                "seed": report.sample.seed, "steps": report.steps,
                "profile": profile_to_data(g, report.sample.profile),
                "frequencies": [
                    {"partition": canonical_string(p, ps), "count": c, "frequency": f,
                     "probability": num(prob), "standard_error": se}
                    for p, c, f, prob, se in report.rows()
                ],
                "states": [canonical_string(p, ps) for p in report.sample.states]}
    raise TypeError(f"cannot render {type(report).__name__}")


def _mixed_data(g: Game, e: MixedEquilibrium) -> dict:
    return {"profile": profile_to_data(g, e.profile), "max_regret": num(e.max_regret),
            "method": e.method, "payoff": [num(x) for x in expected_payoff(g, e.profile)]}


def cooperation_to_data(report: CooperationReport, g: Game, m: MixedProfile) -> dict:
    ps = g.players
    wit = {}
    if "ex_ante" in report.witnesses:
        i, s = report.witnesses["ex_ante"]
        wit["ex_ante"] = {"player": ps.labels[i], "strategy": g.strategy_str(s)}
    if "ex_post_1" in report.witnesses:
        wit["ex_post_1"] = {"partition": canonical_string(report.witnesses["ex_post_1"], ps)}
    if "ex_post_2" in report.witnesses:
        wit["ex_post_2"] = {"max_regret": num(report.witnesses["ex_post_2"])}
    return {"schema": SCHEMA, "kind": "cooperation", "game": _game_data(g),
            "profile": profile_to_data(g, m), "coalition": ps.coalition_str(report.coalition),
            "ex_ante": report.ex_ante, "ex_post_1": report.ex_post_1, "ex_post_2": report.ex_post_2,
            "complete": report.complete, "max_regret": num(report.max_regret), "witnesses": wit}


def stability_to_data(report: StabilityReport, g0: Game, base: MixedProfile) -> dict:
    games = {row.k: build_game(g0.spec, row.k) for row in report.per_k}
    return {"schema": SCHEMA, "kind": "stability", "game": _game_data(g0),
            "base_profile": profile_to_data(g0, base), "k0": report.k0, "k_star": report.k_star,
            "policy": report.policy, "refine": report.refine,
            "base_payoff": [num(x) for x in report.base_payoff],
            "per_k": [
                {"k": r.k, "passed": r.passed, "base_is_equilibrium": r.base_is_equilibrium,
                 "base_regret": num(r.base_regret), "domain_equal": r.domain_equal,
                 "payoff_ok": list(r.payoff_ok),
                 "examined": [profile_to_data(games[r.k], m) for m in r.examined],
                 "carried_over": r.carried_over,
                 "violators": [{"profile": profile_to_data(games[r.k], m), "payoff": [num(x) for x in u]}
                               for m, u in r.violators]}
                for r in report.per_k
            ]}


# -- from data -----------------------------------------------------------------

def report_from_data(data: dict):
    """Inverse of the ``*_to_data`` functions; returns the report object."""
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unsupported report schema {data.get('schema')!r}")
    kind = data.get("kind")
    if kind == "equilibrium":
        g = _game_from(data["game"])
        ps = g.players
        rep = EquilibriumReport(g, read_num(data["tolerance"]))
        for e in data["pure_equilibria"]:
            rep.pure_equilibria.append(tuple(g.parse_strategy(t, i) for i, t in enumerate(e["profile"])))
            rep.strong.append(e["strong"])
        for key, target in (("mixed_equilibria", rep.mixed_equilibria),
                            ("rejected_candidates", rep.rejected_candidates)):
            for e in data[key]:
                target.append(MixedEquilibrium(profile_from_data(g, e["profile"]),
                                               read_num(e["max_regret"]), e["method"]))
        if data["elimination_trace"] is not None:
            rep.elimination_trace = [
                {ps.index(lab): [g.parse_strategy(t, ps.index(lab)) for t in gone] for lab, gone in rnd.items()}
                for rnd in data["elimination_trace"]
            ]
        rep.notes = list(data["notes"])
        return rep
    if kind == "partitions":
        ps = PlayerSet(tuple(data["players"]))
        return PartitionListing(ps, data["k"], [parse_partition(t, ps) for t in data["partitions"]])
    if kind == "coop-theory":
        ps = PlayerSet(tuple(data["players"]))
        cf = CharacteristicFunction(ps, {ps.coalition(c): read_num(v) for c, v in data["values"].items()},
                                    data["convention"])
        core = None
        if data["core"] is not None:
            c = data["core"]
            core = CoreResult(
                c["empty"],
                None if c["core_point"] is None else tuple(read_num(x) for x in c["core_point"]),
                None if c["certificate"] is None
                else {ps.coalition(k): read_num(w) for k, w in c["certificate"].items()},
            )
        return CoopTheoryReport(cf, core, tuple(read_num(x) for x in data["shapley"]), data["core_error"])
    if kind == "cooperation":
        g = _game_from(data["game"])
        ps = g.players
        wit: dict = {}
        w = data["witnesses"]
        if "ex_ante" in w:
            i = ps.index(w["ex_ante"]["player"])
            wit["ex_ante"] = (i, g.parse_strategy(w["ex_ante"]["strategy"], i))
        if "ex_post_1" in w:
            wit["ex_post_1"] = parse_partition(w["ex_post_1"]["partition"], ps)
        if "ex_post_2" in w:
            wit["ex_post_2"] = read_num(w["ex_post_2"]["max_regret"])
        return CooperationReport(ps.coalition(data["coalition"]), data["ex_ante"], data["ex_post_1"],
                                 data["ex_post_2"], read_num(data["max_regret"]), wit)
    if kind == "stability":
        g0 = _game_from(data["game"])
        rows = []
        for r in data["per_k"]:
            gk = build_game(g0.spec, r["k"])
            rows.append(StabilityRow(
                r["k"], r["passed"], r["base_is_equilibrium"], read_num(r["base_regret"]),
                r["domain_equal"], list(r["payoff_ok"]),
                [profile_from_data(gk, m) for m in r["examined"]], r["carried_over"],
                [(profile_from_data(gk, v["profile"]), tuple(read_num(x) for x in v["payoff"]))
                 for v in r["violators"]],
            ))
        return StabilityReport(data["k0"], data["k_star"], data["policy"],
                               tuple(read_num(x) for x in data["base_payoff"]), rows, data["refine"])
    if kind == "simulation":
        g = _game_from(data["game"])
        m = profile_from_data(g, data["profile"])
        states = [parse_partition(t, g.players) for t in data["states"]]
        expected = {parse_partition(f["partition"], g.players): read_num(f["probability"])
                    for f in data["frequencies"] if read_num(f["probability"]) != 0}
        return SimulationReport(TrajectorySample(states, data["seed"], g, m), expected)
    raise ValueError(f"unknown report kind {kind!r}")


def parse_report(text: str):
    return report_from_data(json.loads(text))


# -- text ----------------------------------------------------------------------

def table(headers: list[str], rows: list[list[str]], indent: str = "  ") -> str:
    widths = [len(h) for h in headers]
    for r in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, r)]
    line = lambda cells: indent + "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(headers), indent + "  ".join("-" * w for w in widths)]
    out += [line(r) for r in rows]
    return "\n".join(out)


def _profile_text(g: Game, m: MixedProfile) -> str:
    parts = []
    for i in range(g.n):
        inner = ", ".join(f"{g.strategy_str(s)}: {fmt(p)}" for s, p in m[i].items())
        parts.append(f"{g.players.labels[i]}[{inner}]")
    return " ".join(parts)


def _equilibrium_text(r: EquilibriumReport, title: str) -> str:
    g = r.game
    ps = g.players
    lines = [f"{title}  k={g.k}  tolerance={fmt(r.tolerance)}"]
    if r.elimination_trace is not None:
        lines.append("weakly dominated strategy classes removed:")
        if not r.elimination_trace:
            lines.append("  none")
        for n_round, rnd in enumerate(r.elimination_trace, 1):
            for i, gone in rnd.items():
                lines.append(f"  round {n_round}  {ps.labels[i]}: " + ", ".join(g.strategy_str(s) for s in gone))
    lines.append(f"pure equilibria: {len(r.pure_equilibria)} profiles, "
                 f"{len(r.outcome_classes())} outcome classes")
    rows = []
    for part, acts, pay in r.outcome_classes():
        members = [j for j, p in enumerate(r.pure_equilibria)
                   if (g.realized(p), tuple(s.action for s in p), g.payoff(p)) == (part, acts, pay)]
        action_text = ",".join(acts) if g.spec.has_actions else "-"
        strong = "yes" if all(r.strong[j] for j in members) else ("some" if any(r.strong[j] for j in members) else "no")
        rows.append([canonical_string(part, ps), action_text, fmt_vec(pay), str(len(members)), strong])
    if rows:
        lines.append(table(["partition", "actions", "payoff", "profiles", "strong"], rows))
    lines.append(f"mixed equilibria: {len(r.mixed_equilibria)}")
    for j, e in enumerate(r.mixed_equilibria, 1):
        lines.append(f"  [{j}] {e.method}  max_regret={fmt(e.max_regret)}  "
                     f"EU={fmt_vec(expected_payoff(g, e.profile))}")
        lines.append(f"      {_profile_text(g, e.profile)}")
    for e in r.rejected_candidates:
        lines.append(f"  rejected candidate  max_regret={fmt(e.max_regret)}")
        lines.append(f"      {_profile_text(g, e.profile)}")
    parts = r.equilibrium_partitions
    lines.append(f"equilibrium partitions ({len(parts)}): " + ", ".join(canonical_string(p, ps) for p in parts))
    for note in r.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)


def render_report(report, fmt_: str = "text", title: str = "", **context) -> str:
    """Render any report; cooperation and stability reports need ``game``/``profile`` context."""
    if fmt_ == "json":
        if isinstance(report, CooperationReport):
            data = cooperation_to_data(report, context["game"], context["profile"])
        elif isinstance(report, StabilityReport):
            data = stability_to_data(report, context["game"], context["profile"])
        else:
            data = report_to_data(report)
        if title:
            data["title"] = title
        return json.dumps(data, indent=2) + "\n"
    if fmt_ != "text":
        raise ValueError(f"unknown format {fmt_!r}")
    if isinstance(report, EquilibriumReport):
        text = _equilibrium_text(report, title or "equilibria")
    elif isinstance(report, PartitionListing):
        text = "\n".join(canonical_string(p, report.players) for p in report.partitions)
        text += f"\ncount: {len(report.partitions)}"
    elif isinstance(report, CooperationReport):
        g = context["game"]
        ps = g.players
        yn = lambda b: "true" if b else "false"
        lines = [f"coalition {ps.coalition_str(report.coalition)}  k={g.k}",
                 table(["condition", "holds", "witness"], [
                     ["ex ante", yn(report.ex_ante), _witness(g, report, "ex_ante")],
                     ["ex post 1", yn(report.ex_post_1), _witness(g, report, "ex_post_1")],
                     ["ex post 2", yn(report.ex_post_2), f"max regret {fmt(report.max_regret)}"],
                 ]),
                 f"complete = {yn(report.complete)}"]
        text = "\n".join(lines)
    elif isinstance(report, StabilityReport):
        rows = []
        for r in report.per_k:
            rows.append([str(r.k), "pass" if r.passed else "fail", "yes" if r.base_is_equilibrium else "no",
                         "yes" if r.domain_equal else "no",
                         "".join("+" if ok else "-" for ok in r.payoff_ok),
                         str(len(r.examined)), str(r.carried_over),
                         "; ".join(fmt_vec(u) for _, u in r.violators[:3]) or "-"])
        text = "\n".join([
            f"stability from k0={report.k0}  policy={report.policy}  refine={'on' if report.refine else 'off'}",
            f"base payoff {fmt_vec(report.base_payoff)}",
            table(["k", "verdict", "base eq", "same domain", "payoff ok", "compared", "carried",
                   "beating payoffs"], rows),
            f"K* = {report.k_star}",
        ])
    elif isinstance(report, CoopTheoryReport):
        cf = report.characteristic
        rows = [[cf.players.coalition_str(c), fmt(cf.values[c])] for c in cf.coalitions()]
        lines = [f"characteristic function ({cf.convention})", table(["coalition", "v"], rows)]
        if report.core is None:
            lines.append(f"core: not computed ({report.core_error})")
        elif report.core.empty:
            cert = ", ".join(f"{fmt(w)}*v({cf.players.coalition_str(c)})" for c, w in report.core.certificate.items())
            total = sum(w * cf(c) for c, w in report.core.certificate.items())
            lines.append("core: empty")
            lines.append(f"  certificate: balanced weights {cert} = {fmt(total)} > v(N) = "
                         f"{fmt(cf(tuple(range(cf.n))))}  verified={report.core.verify(cf)}")
        else:
            lines.append(f"core: nonempty, point {fmt_vec(report.core.core_point)}  verified={report.core.verify(cf)}")
        lines.append(f"shapley value: {fmt_vec(report.shapley)}")
        text = "\n".join(lines)
    elif isinstance(report, SimulationReport):
        s = report.sample
        g = s.game
        ps = g.players
        rows = [[canonical_string(p, ps), str(c), f"{f:.5f}", fmt(prob), f"{se:.5f}",
                 f"{(f - float(prob)) / se:+.2f}" if se > 0 else "-"]
                for p, c, f, prob, se in report.rows()]
        head = " ".join(canonical_string(p, ps) for p in s.states[:10])
        text = "\n".join([
            f"simulation  k={g.k}  steps={report.steps}  seed={s.seed}",
            f"first states: {head}{' ...' if report.steps > 10 else ''}",
            table(["partition", "count", "frequency", "probability", "std err", "z"], rows),
        ])
    else:
        raise TypeError(f"cannot render {type(report).__name__}")
    return text + "\n"


def _witness(g: Game, r: CooperationReport, key: str) -> str:
    if key not in r.witnesses:
        return "-"
    w = r.witnesses[key]
    if key == "ex_ante":
        i, s = w
        return f"{g.players.labels[i]} plays {g.strategy_str(s)}"
    return f"realized {canonical_string(w, g.players)}"


def simulation_report(sample: TrajectorySample) -> SimulationReport:
    return SimulationReport(sample, realized_distribution(sample.game, sample.profile))
