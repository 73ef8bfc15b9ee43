"""Command-line interface.

Exit codes: 0 success, 2 usage or parse error, 3 resource limit,
4 analysis precondition failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .analysis import PreconditionError, cooperation_check, simulate, stability_k_star
from .cooperative import (
    CoreSizeError,
    core_empty,
    extract_characteristic,
    shapley_value,
)
from .equilibrium import (
    DEFAULT_PROFILE_CAP,
    ResourceLimitError,
    solve,
    verify_candidate,
)
from .fixtures import (
    FIXTURES,
    LUNCH_COMPLETIONS,
    FixtureError,
    documented_equilibrium,
    fixture,
    printed_bos_profile,
)
from .game import GameSpecError, MixedProfile, build_game, expected_payoff
from .gamespec import SpecSyntaxError, load_gamespec, serialize_gamespec
from .partitions import PartitionError, canonical_string, enumerate_partitions
from .reports import (
    CoopTheoryReport,
    PartitionListing,
    fmt,
    fmt_vec,
    profile_from_data,
    render_report,
    simulation_report,
)

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_PRECONDITION = 0, 2, 3, 4


class UsageError(Exception):
    pass


class Precondition(Exception):
    pass


def fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 1/10, got {text!r}")


def bool_arg(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    source = argparse.ArgumentParser(add_help=False)
    src = source.add_mutually_exclusive_group(required=True)
    src.add_argument("--fixture", choices=FIXTURES, help="built-in game")
    src.add_argument("--spec", metavar="PATH", help="game-spec JSON file")
    source.add_argument("--epsilon", type=fraction_arg, default=Fraction(0), metavar="P/Q",
                        help="bos joint-coalition bonus (default 0)")
    source.add_argument("--miscoordination", choices=("epsilon", "zero"), default="epsilon",
                        help="bos joint miscoordination payoff")
    source.add_argument("--completion", choices=sorted(LUNCH_COMPLETIONS), default="singleton",
                        help="lunch payoff for two-pair partitions")
    source.add_argument("--format", choices=("text", "json"), default="text")

    profile = argparse.ArgumentParser(add_help=False)
    profile.add_argument("--candidate", metavar="PATH",
                         help='profile JSON: {"A": {"A,B|C|D": "1/3", ...}, ...}')
    profile.add_argument("--select", type=positive_int, metavar="N",
                         help="pick the N-th equilibrium when no candidate is given and several exist")

    p = argparse.ArgumentParser(prog="coalform", description="Coalition-structure formation games.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("partitions", parents=[source], help="list partitions with blocks of size <= k")
    c.add_argument("--k", type=int)

    c = sub.add_parser("solve", parents=[source], help="find and verify equilibria")
    c.add_argument("--k", type=int)
    c.add_argument("--reduce", type=bool_arg, default=True, metavar="BOOL",
                   help="sweep one representative per strategy class (default true)")
    c.add_argument("--eliminate-dominated", action="store_true",
                   help="iterate weak-dominance elimination before sweeping")
    c.add_argument("--candidate", action="append", default=[], metavar="PATH",
                   help="extra profile to verify (repeatable)")
    c.add_argument("--max-support", type=positive_int)
    c.add_argument("--tolerance", type=fraction_arg, default=Fraction(0), metavar="P/Q")
    c.add_argument("--cap", type=positive_int, default=DEFAULT_PROFILE_CAP,
                   help="maximum number of pure profiles to sweep")

    c = sub.add_parser("cooperate", parents=[source, profile], help="complete-cooperation test")
    c.add_argument("--k", type=int)
    c.add_argument("--coalition", required=True)

    c = sub.add_parser("stability", parents=[source, profile], help="partition stability bound K*")
    c.add_argument("--k0", type=int, required=True)
    c.add_argument("--policy", choices=("forall", "exists"), default="forall")
    c.add_argument("--refine", type=bool_arg, default=True, metavar="BOOL",
                   help="compare equilibria of the weakly undominated subgame (default true)")

    c = sub.add_parser("simulate", parents=[source, profile], help="sample realized partitions")
    c.add_argument("--k", type=int)
    c.add_argument("--steps", type=int, default=1000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--show-states", action="store_true", help="list every state in text output")

    c = sub.add_parser("coop-theory", parents=[source], help="characteristic function, core, Shapley value")
    c.add_argument("--convention", choices=("optimistic", "pessimistic"), default="optimistic")

    c = sub.add_parser("fixture", help="print a built-in game spec as JSON")
    c.add_argument("name", nargs="?", choices=FIXTURES)
    c.add_argument("--fixture", dest="fixture_flag", choices=FIXTURES)
    c.add_argument("--epsilon", type=fraction_arg, default=Fraction(0), metavar="P/Q")
    c.add_argument("--miscoordination", choices=("epsilon", "zero"), default="epsilon")
    c.add_argument("--completion", choices=sorted(LUNCH_COMPLETIONS), default="singleton")
    return p


# -- helpers ---------------------------------------------------------------------

def load_source(args):
    if args.fixture:
        return fixture(args.fixture, args.epsilon, args.completion, args.miscoordination)
    return load_gamespec(args.spec)


def check_k(k, n: int, flag: str = "--k") -> int:
    if k is None:
        return n
    if not 1 <= k <= n:
        raise UsageError(f"{flag} must be between 1 and {n}, got {k}")
    return k


def read_profile(path: str, g) -> MixedProfile:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read candidate {path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}:{e.lineno}:{e.colno}: {e.msg}")
    try:
        return profile_from_data(g, data)
    except (ValueError, KeyError) as e:
        raise UsageError(f"{path}: {e}")


def resolve_profile(args, g) -> MixedProfile:
    """Candidate file, else the fixture's documented equilibrium, else a unique solved one."""
    if args.candidate:
        return read_profile(args.candidate, g)
    if args.fixture:
        m = documented_equilibrium(args.fixture, g, args.epsilon)
        if m is not None and verify_candidate(g, m)[0]:
            return m
    rep = solve(g)
    found = [MixedProfile.pure(p) for p in rep.pure_equilibria] + [e.profile for e in rep.mixed_equilibria]
    if args.select is not None:
        if args.select > len(found):
            raise UsageError(f"--select {args.select} but only {len(found)} equilibria were found")
        return found[args.select - 1]
    if len(found) == 1:
        return found[0]
    lines = [f"base equilibrium is ambiguous at k={g.k}: {len(found)} candidates; "
             "pass --candidate PATH or --select N"]
    for j, m in enumerate(found, 1):
        lines.append(f"  [{j}] EU={fmt_vec(expected_payoff(g, m))}  "
                     + " ".join(f"{g.players.labels[i]}:" + "+".join(g.strategy_str(s) for s in m.support(i))
                                for i in range(g.n)))
    raise Precondition("\n".join(lines))


def _fixture_notes(args, g, rep) -> None:
    """Attach fixture-specific discrepancy notes to a solve report."""
    if args.fixture == "dinner" and g.k >= 2:
        classes = rep.outcome_classes()
        strong = {cls for cls, s in zip(
            [(g.realized(p), tuple(x.action for x in p), g.payoff(p)) for p in rep.pure_equilibria],
            rep.strong) if s}
        if len(classes) != 1:
            how = "after weak-dominance elimination" if rep.elimination_trace is not None else "without refinement"
            rep.notes.append(
                f"documented uniqueness claim does not hold {how}: {len(classes)} pure outcome classes; "
                f"strong-Nash classes: " + ", ".join(
                    f"{fmt_vec(c[2])}" for c in classes if c in strong))
    if args.fixture == "lunch" and g.k >= 2 and rep.pure_equilibria:
        rep.notes.append(
            f"documented claim of no pure equilibrium does not hold: {len(rep.pure_equilibria)} pure "
            f"equilibria found with the '{args.completion}' two-pair completion")
    if args.fixture == "bos" and g.k >= 2 and args.miscoordination == "epsilon":
        m = printed_bos_profile(g, args.epsilon)
        ok, worst = verify_candidate(g, m)
        if ok:
            rep.notes.append("documented joint-coalition mixture (1+e)/(3+2e) verifies at this epsilon")
        else:
            rep.notes.append(f"documented joint-coalition mixture (1+e)/(3+2e) fails verification: "
                             f"max regret {fmt(worst)}; the joint-coalition mixture is 2/3, 1/3 for every epsilon")
    if args.fixture == "bos" and g.k >= 2 and args.miscoordination == "zero":
        m = printed_bos_profile(g, args.epsilon)
        ok, worst = verify_candidate(g, m)
        rep.notes.append(f"documented joint-coalition mixture (1+e)/(3+2e) "
                         f"{'verifies' if ok else 'fails'} with max regret {fmt(worst)}")


def _fixture_candidates(args, g) -> list[MixedProfile]:
    if not args.fixture:
        return []
    if args.fixture == "bos" and g.k >= 2:
        return [printed_bos_profile(g, args.epsilon)]
    if g.n > 2:
        m = documented_equilibrium(args.fixture, g, args.epsilon)
        return [] if m is None else [m]
    return []


# -- commands ----------------------------------------------------------------

def cmd_partitions(args, out):
    doc = load_source(args)
    k = check_k(args.k, doc.spec.n)
    listing = PartitionListing(doc.spec.players, k, enumerate_partitions(doc.spec.n, k))
    out.write(render_report(listing, args.format))


def cmd_solve(args, out):
    doc = load_source(args)
    g = build_game(doc.spec, check_k(args.k, doc.spec.n))
    cands = [read_profile(path, g) for path in args.candidate] or _fixture_candidates(args, g)
    rep = solve(g, reduce=args.reduce, eliminate=args.eliminate_dominated, max_support=args.max_support,
                candidates=cands, cap=args.cap, tol=args.tolerance)
    _fixture_notes(args, g, rep)
    parts = rep.equilibrium_partitions
    rep.notes.append(f"stochastic: {'yes' if len(parts) >= 2 else 'no'} "
                     f"({len(parts)} equilibrium partitions; two or more counts as stochastic)")
    out.write(render_report(rep, args.format, title=f"equilibria of {doc.name or 'game'}"))


def cmd_cooperate(args, out):
    doc = load_source(args)
    g = build_game(doc.spec, check_k(args.k, doc.spec.n))
    try:
        coal = g.players.coalition(args.coalition)
    except PartitionError as e:
        raise UsageError(str(e))
    m = resolve_profile(args, g)
    rep = cooperation_check(g, m, coal)
    out.write(render_report(rep, args.format, game=g, profile=m))
    if not rep.ex_post_2:
        raise Precondition(f"profile is not an equilibrium: max regret {fmt(rep.max_regret)}")


def cmd_stability(args, out):
    doc = load_source(args)
    k0 = check_k(args.k0, doc.spec.n, "--k0")
    g0 = build_game(doc.spec, k0)
    base = resolve_profile(args, g0)
    rep = stability_k_star(doc.spec, k0, base, args.policy, args.refine)
    out.write(render_report(rep, args.format, game=g0, profile=base))


def cmd_simulate(args, out):
    if args.steps < 1:
        raise UsageError(f"--steps must be at least 1, got {args.steps}")
    doc = load_source(args)
    g = build_game(doc.spec, check_k(args.k, doc.spec.n))
    m = resolve_profile(args, g)
    ok, worst = verify_candidate(g, m)
    if not ok:
        raise Precondition(f"profile is not an equilibrium: max regret {fmt(worst)}")
    rep = simulation_report(simulate(g, m, args.steps, args.seed))
    text = render_report(rep, args.format)
    if args.format == "text" and args.show_states:
        names = [f"{t} {canonical_string(p, g.players)}" for t, p in enumerate(rep.sample.states)]
        text += "\n".join(names) + "\n"
    out.write(text)


def cmd_coop_theory(args, out):
    doc = load_source(args)
    cf = extract_characteristic(doc.spec, args.convention)
    try:
        core, err = core_empty(cf), None
    except CoreSizeError as e:
        core, err = None, str(e)
    rep = CoopTheoryReport(cf, core, shapley_value(cf), err)
    out.write(render_report(rep, args.format))
    if err is not None:
        raise ResourceLimitError(err)


def cmd_fixture(args, out):
    name = args.name or args.fixture_flag
    if name is None:
        raise UsageError("fixture: give a fixture name")
    out.write(serialize_gamespec(fixture(name, args.epsilon, args.completion, args.miscoordination)))


COMMANDS = {
    "partitions": cmd_partitions,
    "solve": cmd_solve,
    "cooperate": cmd_cooperate,
    "stability": cmd_stability,
    "simulate": cmd_simulate,
    "coop-theory": cmd_coop_theory,
    "fixture": cmd_fixture,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        COMMANDS[args.command](args, out)
    except (UsageError, FixtureError, PartitionError, GameSpecError, SpecSyntaxError) as e:
        err.write(f"coalform: error: {e}\n")
        return EXIT_USAGE
    except (ResourceLimitError, CoreSizeError, MemoryError) as e:
        err.write(f"coalform: resource limit: {e}\n")
        return EXIT_RESOURCE
    except (Precondition, PreconditionError) as e:
        msg = str(e)
        if getattr(e, "max_regret", None) is not None:
            msg += f" (max regret {fmt(e.max_regret)})"
        err.write(f"coalform: precondition failed: {msg}\n")
        return EXIT_PRECONDITION
    except (ValueError, OSError) as e:
        err.write(f"coalform: error: {e}\n")
        return EXIT_USAGE
    return EXIT_OK


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
