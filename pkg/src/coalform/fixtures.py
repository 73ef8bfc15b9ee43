"""The four worked games, encoded cell-for-cell as game-spec documents.

Each fixture also carries its documented equilibrium profiles, so that
analyses can run without hand-written candidates.
"""
from __future__ import annotations

from fractions import Fraction

from .game import Game, MixedProfile
from .gamespec import GameSpecDocument, document_from_data, format_number

FIXTURES = ("dinner", "lunch", "bos", "staghare")

LUNCH_COMPLETIONS = {
    # two 2-player coalitions pay everybody the all-alone payoff
    "singleton": (3, 3, 3, 3),
    "zero": (0, 0, 0, 0),
}


class FixtureError(ValueError):
    pass


def _dinner() -> dict:
    rows = [
        ("A,B|C1|C2", (10, 10, 3, 3), "row 1"),
        ("A,B|C1,C2", (8, 8, 5, 5), "row 2 (equilibrium)"),
        ("A,C1|B,C2", (3, 5, 10, 5), "row 3"),
        ("A,C1|B|C2", (3, 3, 10, 3), "row 4"),
        ("A,C2|B,C1", (3, 5, 5, 10), "row 5"),
        ("A,C2|B|C1", (3, 3, 3, 10), "row 6"),
        ("*", (1, 1, 1, 1), "row 7: all other partitions"),
    ]
    return {
        "format_version": 1,
        "name": "dinner",
        "notes": "Corporate dinner game; payoffs (U_A, U_B, U_C1, U_C2).",
        "players": ["A", "B", "C1", "C2"],
        "payoffs": [{"partition": p, "payoff": list(v), "note": note} for p, v, note in rows],
    }


def _lunch(completion: str) -> dict:
    if completion not in LUNCH_COMPLETIONS:
        raise FixtureError(f"unknown lunch completion {completion!r}; choose from {sorted(LUNCH_COMPLETIONS)}")
    rows = [
        ("A,B|C|D", (10, 10, 3, 3), "row 1"),
        ("A,C|B|D", (10, 3, 10, 3), "row 2"),
        ("A,D|B|C", (10, 3, 3, 10), "row 3"),
        ("A|B|C,D", (3, 3, 10, 10), "row 4"),
        ("A|B,C|D", (3, 10, 10, 3), "row 5"),
        ("A|B,D|C", (3, 10, 3, 10), "row 6"),
        ("A|B|C|D", (3, 3, 3, 3), "row 7"),
    ]
    two_pairs = ["A,B|C,D", "A,C|B,D", "A,D|B,C"]
    payoffs = [{"partition": p, "payoff": list(v), "note": note} for p, v, note in rows]
    payoffs += [
        {"partition": p, "payoff": list(LUNCH_COMPLETIONS[completion]),
         "note": f"two-pair completion ({completion})"}
        for p in two_pairs
    ]
    payoffs.append({"partition": "*", "payoff": [0, 0, 0, 0], "note": "row 8: all other (blocks of 3 or 4)"})
    return {
        "format_version": 1,
        "name": "lunch",
        "notes": "Office lunch game with identical players; two-pair partitions are not "
                 f"tabulated and use the '{completion}' completion.",
        "players": ["A", "B", "C", "D"],
        "payoffs": payoffs,
    }


def _bos(epsilon: Fraction, miscoordination: str) -> dict:
    if epsilon < 0:
        raise FixtureError(f"epsilon must be nonnegative, got {epsilon}")
    if miscoordination not in ("epsilon", "zero"):
        raise FixtureError("miscoordination must be 'epsilon' or 'zero'")
    e = epsilon
    miss = e if miscoordination == "epsilon" else Fraction(0)
    sep = {("B", "B"): (2, 1), ("B", "O"): (0, 0), ("O", "B"): (0, 0), ("O", "O"): (1, 2)}
    joint = {("B", "B"): (2 + e, 1 + e), ("B", "O"): (miss, miss),
             ("O", "B"): (miss, miss), ("O", "O"): (1 + e, 2 + e)}
    payoffs = []
    for part, table, label in (("1|2", sep, "separate"), ("1,2", joint, "joint")):
        for acts, v in table.items():
            payoffs.append({"partition": part, "actions": list(acts),
                            "payoff": [format_number(Fraction(x)) for x in v],
                            "note": f"{label}, Ann {acts[0]}, Bob {acts[1]}"})
    return {
        "format_version": 1,
        "name": "bos" if miscoordination == "epsilon" else "bos-zero-miscoordination",
        "notes": f"Battle of the sexes over coalition structures; player 1 is Ann, 2 is Bob; "
                 f"B = Box, O = Opera; epsilon = {format_number(e)}.",
        "players": ["1", "2"],
        "actions": [["B", "O"], ["B", "O"]],
        "payoffs": payoffs,
    }


def _staghare() -> dict:
    sep = {("hare", "hare"): (8, 8), ("hare", "stag"): (8, 0),
           ("stag", "hare"): (0, 8), ("stag", "stag"): (0, 0)}
    joint = {("hare", "hare"): (4, 4), ("hare", "stag"): (8, 0),
             ("stag", "hare"): (0, 8), ("stag", "stag"): (100, 100)}
    payoffs = []
    for part, table, label in (("1|2", sep, "separate"), ("1,2", joint, "joint")):
        for acts, v in table.items():
            payoffs.append({"partition": part, "actions": list(acts), "payoff": list(v),
                            "note": f"{label}, {acts[0]} vs {acts[1]}"})
    return {
        "format_version": 1,
        "name": "staghare",
        "notes": "Expanded stag and hare game for two hunters.",
        "players": ["1", "2"],
        "actions": [["hare", "stag"], ["hare", "stag"]],
        "payoffs": payoffs,
    }


def fixture(name: str, epsilon=Fraction(0), completion: str = "singleton",
            miscoordination: str = "epsilon") -> GameSpecDocument:
    """Build a fixture document.

    ``epsilon`` and ``miscoordination`` only apply to ``bos``; ``completion``
    only to ``lunch``.
    """
    if name == "dinner":
        data = _dinner()
    elif name == "lunch":
        data = _lunch(completion)
    elif name == "bos":
        data = _bos(Fraction(epsilon), miscoordination)
    elif name == "staghare":
        data = _staghare()
    else:
        raise FixtureError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return document_from_data(data)


def _profile(g: Game, spec: list[dict[str, Fraction]]) -> MixedProfile:
    return MixedProfile([
        {g.parse_strategy(text, i): Fraction(p) for text, p in d.items()} for i, d in enumerate(spec)
    ])


def documented_equilibrium(name: str, g: Game, epsilon=Fraction(0)) -> MixedProfile | None:
    """The documented equilibrium of the fixture, embedded in ``g``.

    Returns None when the fixture documents no equilibrium available at ``g.k``.
    """
    half, third = Fraction(1, 2), Fraction(1, 3)
    if name == "dinner" and g.k >= 2:
        ab = {"A,B|C1|C2": half, "A,B|C1,C2": half}
        return _profile(g, [ab, ab, {"A,B|C1,C2": 1}, {"A,B|C1,C2": 1}])
    if name == "lunch" and g.k >= 2:
        return _profile(g, [
            {"A,B|C|D": third, "A,C|B|D": third, "A,D|B|C": third},
            {"A,B|C|D": third, "A|B,C|D": third, "A|B,D|C": third},
            {"A,C|B|D": third, "A|B,C|D": third, "A|B|C,D": third},
            {"A,D|B|C": third, "A|B,D|C": third, "A|B|C,D": third},
        ])
    if name == "staghare":
        if g.k == 1:
            return _profile(g, [{"1|2@hare": 1}, {"1|2@hare": 1}])
        return _profile(g, [{"1,2@stag": 1}, {"1,2@stag": 1}])
    if name == "bos":
        two, one = Fraction(2, 3), Fraction(1, 3)
        part = "1|2" if g.k == 1 else "1,2"
        return _profile(g, [{f"{part}@B": two, f"{part}@O": one}, {f"{part}@B": one, f"{part}@O": two}])
    return None


def printed_bos_profile(g: Game, epsilon) -> MixedProfile:
    """The joint-coalition mixture printed for the BoS variant.

    The printed expression (1+e)/(3+2e) is the Box probability that makes
    Ann indifferent, i.e. Bob's mixture; Ann's Box probability is the
    complementary (2+e)/(3+2e).
    """
    e = Fraction(epsilon)
    low = (1 + e) / (3 + 2 * e)
    high = (2 + e) / (3 + 2 * e)
    return _profile(g, [{"1,2@B": high, "1,2@O": 1 - high}, {"1,2@B": low, "1,2@O": 1 - low}])
