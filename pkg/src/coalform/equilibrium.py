"""Equilibrium computation and verification.

Exact rational arithmetic is used everywhere except inside
:func:`solve_indifference`, whose floating-point iterate is snapped back to
rationals and re-verified exactly before being returned.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import optimize

from .exact import solve_unique
from .game import (
    Game,
    MixedProfile,
    Partition,
    PureProfile,
    Strategy,
    realized_distribution,
)

log = logging.getLogger(__name__)

DEFAULT_PROFILE_CAP = 10**7
FLOAT_TOL = 1e-9
MAX_2P_STRATEGIES = 30


class ResourceLimitError(RuntimeError):
    """A sweep would exceed its configured size cap."""


class ArityError(ValueError):
    pass


@dataclass(frozen=True)
class MixedEquilibrium:
    profile: MixedProfile
    max_regret: Fraction | float
    method: str  # support-enum | indifference-solve | verified-candidate


@dataclass
class EquilibriumReport:
    game: Game
    tolerance: Fraction | float
    pure_equilibria: list[PureProfile] = field(default_factory=list)
    mixed_equilibria: list[MixedEquilibrium] = field(default_factory=list)
    rejected_candidates: list[MixedEquilibrium] = field(default_factory=list)
    elimination_trace: list[dict[int, list[Strategy]]] | None = None
    strong: list[bool] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def equilibrium_partitions(self) -> list[Partition]:
        parts = {self.game.realized(p) for p in self.pure_equilibria}
        for eq in self.mixed_equilibria:
            parts.update(realized_distribution(self.game, eq.profile))
        return sorted(parts)

    def outcome_classes(self) -> list[tuple[Partition, tuple[str, ...], tuple]]:
        """Distinct (realized partition, actions, payoff) among the pure equilibria."""
        seen = {}
        for p in self.pure_equilibria:
            key = (self.game.realized(p), tuple(s.action for s in p), self.game.payoff(p))
            seen.setdefault(key, None)
        return list(seen)


def _sizes_product(lists) -> int:
    total = 1
    for s in lists:
        total *= len(s)
    return total


def payoff_tensor(g: Game, strategy_lists: Sequence[Sequence[Strategy]]) -> np.ndarray:
    """Object array of shape ``(n, |S_1|, ..., |S_n|)`` holding exact payoffs."""
    shape = tuple(len(s) for s in strategy_lists)
    out = np.empty((g.n,) + shape, dtype=object)
    for idx in itertools.product(*(range(k) for k in shape)):
        u = g.payoff([strategy_lists[i][j] for i, j in enumerate(idx)])
        for i in range(g.n):
            out[(i,) + idx] = u[i]
    return out


def deviation_payoffs(g: Game, m: MixedProfile, i: int, candidates: Sequence[Strategy]) -> list:
    """Expected payoff to player i of each candidate strategy against ``m_{-i}``."""
    others = [list(m[j].items()) if j != i else [(None, 1)] for j in range(g.n)]
    exact = m.is_exact
    totals = [Fraction(0) if exact else 0.0 for _ in candidates]
    for combo in itertools.product(*others):
        w = Fraction(1) if exact else 1.0
        for _, p in combo:
            w *= p
        prof = [s for s, _ in combo]
        for c, s in enumerate(candidates):
            prof[i] = s
            totals[c] += w * g.payoff(prof)[i]
    return totals


def regret(g: Game, m: MixedProfile, i: int):
    """Best pure deviation payoff minus current expected payoff for player i."""
    m.check_for(g)
    reps = list(g.representatives[i])
    dev = deviation_payoffs(g, m, i, reps + list(m.support(i)))
    current = sum(m[i][s] * dev[len(reps) + c] for c, s in enumerate(m.support(i)))
    return max(dev[: len(reps)]) - current


def verify_candidate(g: Game, m: MixedProfile, tol=None) -> tuple[bool, Fraction | float]:
    if tol is None:
        tol = Fraction(0) if m.is_exact else FLOAT_TOL
    worst = max(regret(g, m, i) for i in range(g.n))
    return worst <= tol, worst


def pure_nash(g: Game, reduce: bool = True, cap: int = DEFAULT_PROFILE_CAP) -> list[PureProfile]:
    """Every pure profile with no strictly improving unilateral deviation.

    With ``reduce`` one representative per outcome-equivalence class is
    swept, which loses no equilibrium outcome.
    """
    lists = g.representatives if reduce else g.strategy_sets
    total = _sizes_product(lists)
    if total > cap:
        raise ResourceLimitError(
            f"{total} pure profiles exceed the cap of {cap}; use reduce=True or a smaller k"
        )
    U = payoff_tensor(g, lists)
    ok = np.ones(U.shape[1:], dtype=bool)
    for i in range(g.n):
        best = np.max(U[i], axis=i, keepdims=True)
        ok &= (U[i] == best).astype(bool)
    return [tuple(lists[i][j] for i, j in enumerate(idx)) for idx in zip(*np.nonzero(ok))]


def eliminate_weakly_dominated(g: Game) -> tuple[Game, list[dict[int, list[Strategy]]]]:
    """Iterated simultaneous removal of weakly dominated strategies.

    Each round removes, for every player at once, each strategy class that
    another surviving class weakly dominates against all surviving opponent
    classes.  Equivalent strategies never dominate each other, so classes
    are removed whole.  The trace lists the removed representatives per round.
    """
    reps = g.representatives
    U = payoff_tensor(g, reps)
    alive = [list(range(len(r))) for r in reps]
    trace = []
    while True:
        removed: dict[int, list[int]] = {}
        for i in range(g.n):
            sub = U[i][np.ix_(*alive)]
            rows = np.moveaxis(sub, i, 0).reshape(len(alive[i]), -1)
            gone = []
            for a in range(len(alive[i])):
                for b in range(len(alive[i])):
                    if a == b:
                        continue
                    ge = rows[b] >= rows[a]
                    if all(ge) and any(rows[b] > rows[a]):
                        gone.append(a)
                        break
            if gone:
                removed[i] = gone
        if not removed:
            break
        trace.append({i: [reps[i][alive[i][a]] for a in gone] for i, gone in removed.items()})
        for i, gone in removed.items():
            alive[i] = [x for a, x in enumerate(alive[i]) if a not in gone]
    keep = [{g.strategy_class(reps[i][x], i) for x in alive[i]} for i in range(g.n)]
    sets = [[s for s in g.strategy_sets[i] if g.strategy_class(s, i) in keep[i]] for i in range(g.n)]
    return g.restrict(sets), trace


def _solve_side(M, rows, cols):
    """Probabilities on ``cols`` making every row in ``rows`` earn the same value."""
    k = len(cols)
    a = [[M[r][c] for c in cols] + [-1] for r in rows]
    a.append([1] * k + [0])
    b = [0] * len(rows) + [1]
    sol = solve_unique(a, b)
    if sol is None:
        return None
    probs, value = sol[:k], sol[k]
    if any(p <= 0 for p in probs):
        return None
    return probs, value


def mixed_support_2p(g: Game, max_support: int | None = None) -> list[tuple[MixedProfile, bool]]:
    """Support enumeration for two-player games, exact over the rationals.

    Runs on outcome-equivalence representatives.  Support pairs whose
    indifference systems are singular are skipped, so continua of
    equilibria in degenerate games are only represented by their vertices.
    """
    if g.n != 2:
        raise ArityError(f"support enumeration needs exactly 2 players, game has {g.n}")
    r1, r2 = g.representatives
    if max(len(r1), len(r2)) > MAX_2P_STRATEGIES:
        raise ResourceLimitError(f"more than {MAX_2P_STRATEGIES} strategy classes per player")
    U = payoff_tensor(g, (r1, r2))
    A, B = U[0], U[1]
    BT = B.T
    ms = max_support or max(len(r1), len(r2))
    found: list[tuple[MixedProfile, bool]] = []
    seen = set()
    for s1 in range(1, min(ms, len(r1)) + 1):
        for I in itertools.combinations(range(len(r1)), s1):
            for s2 in range(1, min(ms, len(r2)) + 1):
                for J in itertools.combinations(range(len(r2)), s2):
                    ys = _solve_side(A, I, J)
                    if ys is None:
                        continue
                    xs = _solve_side(BT, J, I)
                    if xs is None:
                        continue
                    (y, v), (x, u) = ys, xs
                    if any(sum(A[r][c] * p for c, p in zip(J, y)) > v for r in range(len(r1))):
                        continue
                    if any(sum(BT[c][r] * p for r, p in zip(I, x)) > u for c in range(len(r2))):
                        continue
                    key = (tuple(zip(I, x)), tuple(zip(J, y)))
                    if key in seen:
                        continue
                    seen.add(key)
                    m = MixedProfile([{r1[a]: p for a, p in zip(I, x)}, {r2[b]: p for b, p in zip(J, y)}])
                    found.append((m, True))
    return found


def _snap(values, denominator: int = 10**6) -> list[Fraction] | None:
    fr = [Fraction(float(v)).limit_denominator(denominator) for v in values[:-1]]
    fr.append(1 - sum(fr))
    if any(p < 0 for p in fr):
        return None
    return fr


def solve_indifference(
    g: Game,
    supports: Sequence[Sequence[Strategy]],
    tol=Fraction(0),
    max_iter: int = 200,
) -> MixedProfile | None:
    """Find a profile supported on ``supports`` that equalizes payoffs on each support.

    The indifference system is solved in floating point by Powell's hybrid
    (damped Newton/dogleg) method starting from uniform mixtures.  The
    result is snapped to nearby rationals and accepted only if its exact
    regret, off-support deviations included, is at most ``tol``.  None means
    no verified profile was reached, not that none exists.
    """
    if len(supports) != g.n or any(not s for s in supports):
        raise ValueError("need a nonempty support for every player")
    sizes = [len(s) for s in supports]
    U = payoff_tensor(g, supports).astype(float)
    splits = np.cumsum(sizes)[:-1]

    def residual(z):
        xs = np.split(z, splits)
        out = []
        for i in range(g.n):
            t = U[i]
            for j in reversed(range(g.n)):
                if j != i:
                    t = np.tensordot(t, xs[j], axes=([j], [0]))
            out.extend(t[1:] - t[0])
            out.append(xs[i].sum() - 1)
        return np.array(out)

    z0 = np.concatenate([np.full(k, 1.0 / k) for k in sizes])
    sol = optimize.root(residual, z0, method="hybr", options={"maxfev": max_iter * (len(z0) + 1)})
    z = sol.x
    if not sol.success:
        log.info("indifference solve did not converge: %s (residual %.3g)", sol.message,
                 float(np.abs(residual(z)).max()))
    xs = np.split(z, splits)
    candidates = []
    snapped = [_snap(x) for x in xs]
    if all(s is not None for s in snapped):
        candidates.append(MixedProfile([dict(zip(sup, p)) for sup, p in zip(supports, snapped)]))
    if tol > 0 and all((x >= 0).all() for x in xs):
        raw = [[Fraction(float(p)) for p in x] for x in xs]
        raw = [r[:-1] + [1 - sum(r[:-1])] for r in raw]
        if all(p >= 0 for r in raw for p in r):
            candidates.append(MixedProfile([dict(zip(sup, p)) for sup, p in zip(supports, raw)]))
    for m in candidates:
        if any(len(m[i]) != sizes[i] for i in range(g.n)):
            continue
        ok, worst = verify_candidate(g, m, tol)
        if ok:
            return m
        log.info("indifference candidate rejected, exact regret %s", worst)
    return None


def strong_nash_check(g: Game, p: Sequence[Strategy], max_coalition: int | None = None):
    """Is there a coalition whose joint pure deviation strictly helps every member?

    Returns ``(True, None)`` or ``(False, (coalition, deviation, new_payoff))``.
    """
    p = tuple(p)
    base = g.payoff(p)
    top = g.n if max_coalition is None else max_coalition
    reps = g.representatives
    for size in range(1, top + 1):
        for coal in itertools.combinations(range(g.n), size):
            for dev in itertools.product(*(reps[i] for i in coal)):
                prof = list(p)
                for i, s in zip(coal, dev):
                    prof[i] = s
                u = g.payoff(prof)
                if all(u[i] > base[i] for i in coal):
                    return False, (coal, tuple(dev), u)
    return True, None


def solve(
    g: Game,
    reduce: bool = True,
    eliminate: bool = False,
    max_support: int | None = None,
    candidates: Sequence[MixedProfile] = (),
    cap: int = DEFAULT_PROFILE_CAP,
    tol=Fraction(0),
) -> EquilibriumReport:
    """Pure sweep, two-player support enumeration and candidate verification in one report.

    With ``eliminate`` the sweeps run on the weakly undominated subgame, but
    every reported profile is re-verified against the full game.
    """
    full = g
    report = EquilibriumReport(full, tol)
    if eliminate:
        g, report.elimination_trace = eliminate_weakly_dominated(full)
    for prof in pure_nash(g, reduce=reduce, cap=cap):
        ok, _ = verify_candidate(full, MixedProfile.pure(prof))
        if ok:
            report.pure_equilibria.append(prof)
        else:
            report.notes.append("a pure equilibrium of the reduced game fails in the full game")
    report.strong = [strong_nash_check(full, p)[0] for p in report.pure_equilibria]
    if g.n == 2:
        for m, _ in mixed_support_2p(g, max_support):
            if m.is_pure:
                continue
            ok, worst = verify_candidate(full, m)
            if ok:
                report.mixed_equilibria.append(MixedEquilibrium(m, worst, "support-enum"))
    for m in candidates:
        ok, worst = verify_candidate(full, m, tol if m.is_exact else max(tol, FLOAT_TOL))
        entry = MixedEquilibrium(m, worst, "verified-candidate")
        (report.mixed_equilibria if ok else report.rejected_candidates).append(entry)
    return report
