"""Precoding scheme constructions and exact decodability checking.

A scheme is a multi-slot precoder: stacked per-slot beamforming blocks for
each message.  Decodability of a precoder against a channel draw is a pure
rank computation: at each receiver the image of its own messages must have
full column rank and must be independent of the interference image.  Because
channels and beams are exact integer matrices, a passing trial is a proof
for that draw, and almost-sure claims become "all trials pass" statements.

The two-phase degraded-message construction under delayed CSI from the weak
receiver is the one genuinely multi-slot scheme here.  Phase 1 spends
N1 - N2 slots sending fresh private symbols on min(M, N1 + N2) antennas.
What the weak receiver overhears in phase 1 is known to the transmitter one
slot later, so phase 2 retransmits those overheard combinations, one group
per slot, alongside fresh common symbols.  The retransmissions complete the
strong receiver's equation count while being subtractable interference at
the weak receiver.  Overheard combinations enter the precoder as rows of
past weak-receiver channel blocks, which is what makes the construction
causal: no slot's blocks depend on present or future channel state.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Sequence, Union

from .catalog import (
    Corner, SchemeKind, bc_cm_region, bc_pm_region, catalog_region, corner_catalog,
)
from .core import (
    D0, D1, D2, AntennaConfig, CsitModel, DofPoint, Halfspace, MessageSet,
    ORIGIN, Region, as_fraction, sorted_points,
)
from .linalg import (
    LiftedChannel, Matrix, hstack, lift_channels, sample_generic, spawn_seed,
)

__all__ = [
    "Precoder", "SchemeTrace", "TimeSharePlan", "TimeShareComponent",
    "CornerTask", "SimulationReport", "InfeasiblePointError",
    "UnsupportedSchemeError", "check_decodability", "scheme_pp",
    "scheme_np_pm", "scheme_dp_np_corner", "dm_nd_parameters",
    "scheme_dm_nd_precoder", "scheme_dm_nd", "scheme_trivial",
    "achieve_point", "build_corner_precoder", "simulate", "simulate_corner",
    "simulate_plan", "simulate_precoder",
]


class InfeasiblePointError(ValueError):
    """Requested DoF point lies outside the region (or is not integral)."""

    def __init__(self, message: str, halfspace: Halfspace | str | None = None):
        super().__init__(message)
        self.halfspace = halfspace


class UnsupportedSchemeError(RuntimeError):
    """The corner is only achievable by a scheme from cited prior work."""


@dataclass(frozen=True)
class Precoder:
    """Stacked per-slot beamformers for the three messages.

    ``v1``, ``v2``, ``v0`` have M*T rows; column counts are the symbol
    counts m1, m2, m0.  ``causal`` marks constructions whose slot-t blocks
    depend only on channel state of slots before t.
    """

    M: int
    T: int
    v1: Matrix
    v2: Matrix
    v0: Matrix
    causal: bool = False

    def __post_init__(self):
        for name in ("v1", "v2", "v0"):
            m = getattr(self, name)
            if m.rows != self.M * self.T:
                raise ValueError(f"{name} must have M*T = {self.M * self.T} rows")

    @property
    def m1(self) -> int:
        return self.v1.cols

    @property
    def m2(self) -> int:
        return self.v2.cols

    @property
    def m0(self) -> int:
        return self.v0.cols

    @property
    def symbol_counts(self) -> tuple[int, int, int]:
        return (self.m1, self.m2, self.m0)

    def dof(self) -> DofPoint:
        return DofPoint(Fraction(self.m1, self.T), Fraction(self.m2, self.T),
                        Fraction(self.m0, self.T))


@dataclass
class SchemeTrace:
    """Rank ledger of one decodability check."""

    cfg: AntennaConfig
    csit: CsitModel | None
    message_set: MessageSet | None
    target: DofPoint | None
    T: int
    ranks: dict
    verdict: bool


def check_decodability(h1: LiftedChannel, h2: LiftedChannel, p: Precoder, *,
                       cfg: AntennaConfig | None = None,
                       csit: CsitModel | None = None,
                       message_set: MessageSet | None = None,
                       target: DofPoint | None = None) -> SchemeTrace:
    """Verify the linear decodability rank conditions at both receivers.

    Receiver r must see its own signal at full column rank (m_r + m0) and
    independent of the other private message's image.  With an empty V2 this
    reduces at receiver 2 to recovering the common symbols alone, which is
    exactly the degraded-message requirement: the overheard-equation
    subtraction step is the same statement as rank additivity of the
    interference and common subspaces.
    """
    if h1.T != p.T or h2.T != p.T or h1.m_antennas != p.M or h2.m_antennas != p.M:
        raise ValueError("channel/precoder shape mismatch")
    ranks: dict = {}
    verdict = True
    for r, chan in ((1, h1), (2, h2)):
        own = hstack(p.v1 if r == 1 else p.v2, p.v0)
        other = p.v2 if r == 1 else p.v1
        hd = chan.block_diag
        signal = (hd @ own).rank() if own.cols else 0
        interference = (hd @ other).rank() if other.cols else 0
        joint = (hd @ hstack(own, other)).rank() if own.cols + other.cols else 0
        required = (p.m1 if r == 1 else p.m2) + p.m0
        ok_signal = signal == required
        ok_split = joint == signal + interference
        ranks[f"r{r}"] = {
            "joint": joint, "signal": signal, "interference": interference,
            "required": required, "ok_signal": ok_signal, "ok_split": ok_split,
        }
        verdict = verdict and ok_signal and ok_split
    if cfg is None:
        cfg = AntennaConfig(p.M, h1.n_antennas, h2.n_antennas)
    return SchemeTrace(cfg, csit, message_set, target, p.T, ranks, verdict)


# -- one-shot zero-forcing constructions ------------------------------------


def _require_integral(d: DofPoint) -> tuple[int, int, int]:
    if not d.is_integral:
        raise InfeasiblePointError(f"one-shot schemes need integer DoF, got {d}")
    return (int(d.d1), int(d.d2), int(d.d0))


def _check_member(region: Region, d: DofPoint, what: str) -> None:
    if not region.contains(d):
        for h in region.halfspaces:
            if not h.holds(d):
                raise InfeasiblePointError(f"infeasible: violates {h}", h)
        raise InfeasiblePointError(f"infeasible: {what} requires nonnegative"
                                   " coordinates", "d >= 0")


def _zero_forced_columns(null_basis: Matrix, count: int, rng: random.Random) -> Matrix:
    if count == 0:
        return Matrix.empty(null_basis.rows)
    mix = sample_generic(null_basis.cols, count, rng)
    return null_basis @ mix


def scheme_pp(cfg: AntennaConfig, d: DofPoint, h1: LiftedChannel,
              h2: LiftedChannel, rng: random.Random) -> Precoder:
    """Full-CSIT one-shot scheme for any integer point of the three-message region.

    Each private message sends min(d_i, (M - N_other)+) symbols on beams from
    the other receiver's channel nullspace and the rest on random beams; the
    common message is always randomly beamformed.
    """
    region, _ = bc_cm_region(cfg, CsitModel("P", "P"))
    _check_member(region, d, "scheme_pp")
    d1, d2, d0 = _require_integral(d)
    M = cfg.M
    d1z = min(d1, max(M - cfg.N2, 0))
    d2z = min(d2, max(M - cfg.N1, 0))
    v1 = hstack(_zero_forced_columns(h2.slot(0).nullspace_basis(), d1z, rng),
                sample_generic(M, d1 - d1z, rng))
    v2 = hstack(_zero_forced_columns(h1.slot(0).nullspace_basis(), d2z, rng),
                sample_generic(M, d2 - d2z, rng))
    v0 = sample_generic(M, d0, rng)
    return Precoder(M, 1, v1, v2, v0)


def scheme_np_pm(cfg: AntennaConfig, d: DofPoint, h2: LiftedChannel,
                 rng: random.Random) -> Precoder:
    """One-shot private-message scheme with perfect CSI from receiver 2 only.

    Up to M - N2 of receiver 1's streams ride the nullspace of the second
    receiver's channel; everything else is random beamforming.  Receiver 2
    then sees at most N2 independent streams by the region's own accounting.
    """
    if cfg.N1 < cfg.N2:
        raise ValueError("scheme_np_pm expects a normalized configuration")
    region, _ = bc_pm_region(cfg, CsitModel("N", "P"))
    _check_member(region, d, "scheme_np_pm")
    d1, d2, d0 = _require_integral(d)
    if d0 != 0:
        raise InfeasiblePointError("private-message scheme cannot carry common DoF")
    M = cfg.M
    d1z = min(d1, max(M - cfg.N2, 0))
    v1 = hstack(_zero_forced_columns(h2.slot(0).nullspace_basis(), d1z, rng),
                sample_generic(M, d1 - d1z, rng))
    v2 = sample_generic(M, d2, rng)
    return Precoder(M, 1, v1, v2, Matrix.empty(M))


def scheme_dp_np_corner(cfg: AntennaConfig, h2: LiftedChannel,
                        rng: random.Random) -> Precoder:
    """Corner (min(M,N1) - min(M,N2), 0, min(M,N2)): common random beams plus
    private beams zero-forced at receiver 2.

    Feasible whenever CSIT includes perfect knowledge of receiver 2's
    channel, since min(M,N1) - min(M,N2) never exceeds (M - N2)+.
    """
    if cfg.N1 < cfg.N2:
        raise ValueError("scheme_dp_np_corner expects a normalized configuration")
    M = cfg.M
    n_zf = min(M, cfg.N1) - min(M, cfg.N2)
    m0 = min(M, cfg.N2)
    v1 = _zero_forced_columns(h2.slot(0).nullspace_basis(), n_zf, rng)
    return Precoder(M, 1, v1, Matrix.empty(M), sample_generic(M, m0, rng))


# -- two-phase degraded-message scheme ----------------------------------------


@dataclass(frozen=True)
class DmNdParameters:
    """Shape of the degraded-message scheme for one antenna configuration."""

    cfg: AntennaConfig
    case: int
    m_used: int
    T: int
    phase1_slots: int
    phase2_slots: int
    m1: int
    m0: int

    @property
    def corner(self) -> DofPoint:
        return DofPoint(Fraction(self.m1, self.T), Fraction(0),
                        Fraction(self.m0, self.T))


def dm_nd_parameters(cfg: AntennaConfig) -> DmNdParameters:
    """Case split on the antenna configuration (normalized internally).

    Case 1 (M <= N2) and case 2 (N2 < M < N1) need no retransmission: random
    beamforming reaches the boundary corner (min(M, N1), 0).  Cases 3 and 4
    share one two-phase construction on m_used = min(M, N1 + N2) antennas
    with T = m_used - N2 slots; case 4 simply never benefits from more than
    N1 + N2 transmit antennas.
    """
    ncfg, _ = cfg.normalized()
    M, n1, n2 = ncfg.as_tuple()
    if M <= n2:
        return DmNdParameters(ncfg, 1, M, 1, 0, 0, M, 0)
    if M < n1:
        return DmNdParameters(ncfg, 2, M, 1, 0, 0, M, 0)
    m_used = min(M, n1 + n2)
    case = 3 if M < n1 + n2 else 4
    t = m_used - n2
    p1 = n1 - n2
    p2 = m_used - n1
    return DmNdParameters(ncfg, case, m_used, t, p1, p2, m_used * p1, n2 * p2)


def scheme_dm_nd_precoder(params: DmNdParameters, h2: LiftedChannel,
                          rng: random.Random) -> Precoder:
    """Build the degraded-message precoder for a given channel draw.

    Phase 1 slots carry fresh private symbols on the first m_used antennas
    with an identity precoder.  Phase 2 slot s sends N2 fresh common symbols
    on antennas 0..N2-1 and, on antennas N2..N1-1, the overheard combination
    number s of each phase-1 slot: the row s of that slot's weak-receiver
    channel applied to its symbols.
    """
    cfg = params.cfg
    M, t_total = cfg.M, params.T
    if params.case in (1, 2):
        v1 = sample_generic(M, params.m1, rng)
        return Precoder(M, 1, v1, Matrix.empty(M), Matrix.empty(M), causal=True)
    mu, n2, p1 = params.m_used, cfg.N2, params.phase1_slots
    rows_v1 = [[0] * params.m1 for _ in range(M * t_total)]
    rows_v0 = [[0] * params.m0 for _ in range(M * t_total)]
    for t in range(p1):
        for i in range(mu):
            rows_v1[t * M + i][t * mu + i] = 1
    for s in range(params.phase2_slots):
        q = p1 + s
        for i in range(n2):
            rows_v0[q * M + i][s * n2 + i] = 1
        for j in range(p1):
            coeff_row = h2.slot(j).row(s)
            for i in range(mu):
                rows_v1[q * M + n2 + j][j * mu + i] = coeff_row[i]
    v1 = Matrix(rows_v1, rows=M * t_total, cols=params.m1)
    v0 = Matrix(rows_v0, rows=M * t_total, cols=params.m0)
    return Precoder(M, t_total, v1, Matrix.empty(M * t_total), v0, causal=True)


def scheme_dm_nd(cfg: AntennaConfig, seed: int) -> tuple[Precoder, SchemeTrace]:
    """Draw a channel, build the two-phase scheme, and check it."""
    params = dm_nd_parameters(cfg)
    h1, h2 = lift_channels(params.cfg, params.T, seed)
    rng = random.Random(spawn_seed(seed, "beam"))
    p = scheme_dm_nd_precoder(params, h2, rng)
    trace = check_decodability(h1, h2, p, cfg=params.cfg,
                               csit=CsitModel("N", "D"),
                               message_set=MessageSet.DM, target=params.corner)
    return p, trace


# -- time sharing -------------------------------------------------------------


@dataclass(frozen=True)
class TimeShareComponent:
    point: DofPoint
    weight: Fraction
    kind: SchemeKind
    name: str = ""

    @property
    def simulatable(self) -> bool:
        return self.kind.simulatable


@dataclass(frozen=True)
class TimeSharePlan:
    """Exact convex decomposition of a target point over corner schemes."""

    cfg: AntennaConfig
    message_set: MessageSet
    csit: CsitModel
    target: DofPoint
    components: tuple[TimeShareComponent, ...]

    def __post_init__(self):
        if not self.components:
            if self.target != ORIGIN:
                raise ValueError("empty plan must target the origin")
            return
        total = sum((c.weight for c in self.components), Fraction(0))
        if total != 1:
            raise ValueError("time-share weights must sum to 1")
        if any(c.weight < 0 for c in self.components):
            raise ValueError("time-share weights must be nonnegative")
        acc = ORIGIN
        for c in self.components:
            acc = acc.plus(c.point.scaled(c.weight))
        if acc != self.target:
            raise ValueError("time-share components do not reconstruct the target")


def scheme_trivial(cfg: AntennaConfig, message_set: MessageSet, csit: CsitModel,
                   d: DofPoint) -> TimeSharePlan:
    """Time division between single-message random-beamforming corners.

    Feasible exactly on the no-CSIT style region: each active message class
    gets the slot fraction its normalized DoF demands.
    """
    a = min(cfg.M, cfg.N1)
    b = min(cfg.M, cfg.N2)
    common_cap = min(cfg.M, cfg.N1, cfg.N2)
    if d == ORIGIN:
        return TimeSharePlan(cfg, message_set, csit, d, ())
    corners = {
        D1: DofPoint.of(a, 0, 0),
        D2: DofPoint.of(0, b, 0),
        D0: DofPoint.of(0, 0, common_cap),
    }
    pinned = message_set.pinned_coord
    if pinned is not None and d[pinned] != 0:
        raise InfeasiblePointError(
            f"{COORD_LABEL[pinned]} must be 0 for {message_set.value} scenarios")
    weights = {}
    total = Fraction(0)
    for coord, corner in corners.items():
        if d[coord] == 0:
            continue
        w = d[coord] / corner[coord]
        weights[coord] = w
        total += w
    if total > 1:
        raise InfeasiblePointError("infeasible: exceeds the time-division budget")
    comps = [TimeShareComponent(corners[c], w, SchemeKind.TRIVIAL_BEAMFORMING,
                                name={D1: "A1", D2: "B2", D0: "B0"}[c])
             for c, w in weights.items()]
    if total < 1:
        comps.append(TimeShareComponent(ORIGIN, 1 - total,
                                        SchemeKind.TRIVIAL_BEAMFORMING, name="O"))
    return TimeSharePlan(cfg, message_set, csit, d, tuple(comps))


COORD_LABEL = {D1: "d1", D2: "d2", D0: "d0"}


def achieve_point(cfg: AntennaConfig, message_set: MessageSet, csit: CsitModel,
                  d: DofPoint) -> TimeSharePlan:
    """Decompose any region point exactly over tagged corner schemes.

    Searches vertex subsets in increasing size and solves a small exact
    linear system per subset; by convexity an affinely independent subset of
    at most dim + 1 vertices always works.
    """
    region, _ = catalog_region(cfg, message_set, csit)
    _check_member(region, d, "achieve_point")
    corner_by_point = {c.point: c for c in corner_catalog(cfg, message_set, csit)}
    verts = sorted_points(corner_by_point)
    if d == ORIGIN and ORIGIN in corner_by_point:
        return TimeSharePlan(cfg, message_set, csit, d, ())
    free = region.free_coords
    target = [d[c] for c in free] + [Fraction(1)]
    for size in range(1, len(free) + 2):
        for subset in combinations(verts, size):
            weights = _convex_weights(subset, free, target)
            if weights is None:
                continue
            comps = tuple(
                TimeShareComponent(v, w, corner_by_point[v].kind,
                                   corner_by_point[v].name)
                for v, w in zip(subset, weights) if w != 0)
            if not comps:
                continue
            return TimeSharePlan(cfg, message_set, csit, d, comps)
    raise RuntimeError("no convex decomposition found for an inside point")


def _convex_weights(points: Sequence[DofPoint], free: Sequence[int],
                    target: list[Fraction]) -> list[Fraction] | None:
    n_eq = len(free) + 1
    cols = [[p[c] for c in free] + [Fraction(1)] for p in points]
    a = Matrix.from_columns(cols, n_eq)
    if a.rank() != len(points):
        return None
    aug = hstack(a, Matrix.from_columns([target], n_eq))
    red, pivots = aug.rref()
    if any(p >= len(points) for p in pivots):
        return None
    if len(pivots) < len(points):
        return None
    sol = [Fraction(red[i, len(points)]) for i in range(len(points))]
    # consistency of the remaining equations
    for i in range(len(pivots), n_eq):
        if red[i, len(points)] != 0:
            return None
    if any(w < 0 for w in sol):
        return None
    return sol


# -- simulation ---------------------------------------------------------------


@dataclass(frozen=True)
class CornerTask:
    """A corner point bound to its scenario, ready for repeated simulation."""

    cfg: AntennaConfig
    message_set: MessageSet
    csit: CsitModel
    point: DofPoint
    kind: SchemeKind
    name: str = ""


def build_corner_precoder(task: CornerTask, h1: LiftedChannel, h2: LiftedChannel,
                          rng: random.Random) -> Precoder:
    """Instantiate the scheme family of a corner for one channel draw."""
    kind, cfg, d = task.kind, task.cfg, task.point
    if kind is SchemeKind.CITED_EXTERNAL:
        raise UnsupportedSchemeError(
            f"corner {task.name or d} requires scheme of cited prior work")
    if kind is SchemeKind.TRIVIAL_BEAMFORMING:
        d1, d2, d0 = _require_integral(d)
        return Precoder(cfg.M, 1, sample_generic(cfg.M, d1, rng),
                        sample_generic(cfg.M, d2, rng),
                        sample_generic(cfg.M, d0, rng))
    if kind is SchemeKind.PP_ZERO_FORCING:
        return scheme_pp(cfg, d, h1, h2, rng)
    if kind is SchemeKind.NP_ZERO_FORCING:
        return scheme_np_pm(cfg, DofPoint(d.d1, d.d2, Fraction(0)), h2, rng)
    if kind is SchemeKind.DP_CORNER:
        return scheme_dp_np_corner(cfg, h2, rng)
    if kind is SchemeKind.DM_ND_TWO_PHASE:
        params = dm_nd_parameters(cfg)
        p = scheme_dm_nd_precoder(params, h2, rng)
        if task.message_set is MessageSet.PM:
            # reuse the common-message pipeline as a second private message:
            # dropping receiver 1's decoding requirement only weakens it
            p = replace(p, v2=p.v0, v0=Matrix.empty(p.M * p.T))
        return p
    raise UnsupportedSchemeError(f"no builder for scheme kind {kind}")


def _task_T(task: CornerTask) -> int:
    if task.kind is SchemeKind.DM_ND_TWO_PHASE:
        return dm_nd_parameters(task.cfg).T
    return 1


@dataclass
class SimulationReport:
    """Deterministic record of a batch of exact decodability trials."""

    kind: str
    scenario: dict
    trials: int
    passes: int
    seed: int
    achieved: DofPoint | None
    ledger_sample: dict | None = None
    first_failure: dict | None = None
    components: list["SimulationReport"] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        own = self.passes == self.trials
        return own and all(c.all_passed for c in self.components)


def _normalized_task(task: CornerTask) -> tuple[CornerTask, bool]:
    ncfg, swapped = task.cfg.normalized()
    if not swapped or task.message_set is MessageSet.DM:
        return task, False
    return CornerTask(ncfg, task.message_set, task.csit.swapped(),
                      DofPoint(task.point.d2, task.point.d1, task.point.d0),
                      task.kind, task.name), True


def simulate_corner(task: CornerTask, trials: int, seed: int) -> SimulationReport:
    """Run ``trials`` independent channel draws against a corner's scheme."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    run_task, swapped = _normalized_task(task)
    t_slots = _task_T(run_task)
    passes = 0
    first_failure = None
    sample = None
    achieved = None
    for i in range(trials):
        trial_seed = spawn_seed(seed, "trial", i)
        h1, h2 = lift_channels(run_task.cfg, t_slots, trial_seed)
        rng = random.Random(spawn_seed(trial_seed, "beam"))
        p = build_corner_precoder(run_task, h1, h2, rng)
        trace = check_decodability(h1, h2, p, cfg=run_task.cfg,
                                   csit=run_task.csit,
                                   message_set=run_task.message_set,
                                   target=run_task.point)
        if sample is None:
            sample = trace.ranks
            dof = p.dof()
            achieved = DofPoint(dof.d2, dof.d1, dof.d0) if swapped else dof
        if trace.verdict:
            passes += 1
        elif first_failure is None:
            first_failure = {"trial": i, "ranks": trace.ranks}
    scenario = {"M": task.cfg.M, "N1": task.cfg.N1, "N2": task.cfg.N2,
                "csit": task.csit.name, "message_set": task.message_set.value,
                "corner": task.name, "kind": task.kind.value,
                "T": t_slots, "receivers_swapped": swapped}
    return SimulationReport("corner", scenario, trials, passes, seed,
                            achieved, sample, first_failure)


def simulate_plan(plan: TimeSharePlan, trials: int, seed: int) -> SimulationReport:
    """Simulate every simulatable component of a time-share plan."""
    reports = []
    for idx, comp in enumerate(plan.components):
        if not comp.simulatable:
            continue
        if comp.point == ORIGIN:
            continue
        task = CornerTask(plan.cfg, plan.message_set, plan.csit, comp.point,
                          comp.kind, comp.name)
        reports.append(simulate_corner(task, trials, spawn_seed(seed, "comp", idx)))
    achieved = ORIGIN
    for comp in plan.components:
        achieved = achieved.plus(comp.point.scaled(comp.weight))
    scenario = {"M": plan.cfg.M, "N1": plan.cfg.N1, "N2": plan.cfg.N2,
                "csit": plan.csit.name, "message_set": plan.message_set.value,
                "n_components": len(plan.components),
                "skipped_external": sum(1 for c in plan.components
                                        if not c.simulatable)}
    total = sum(r.trials for r in reports)
    passes = sum(r.passes for r in reports)
    return SimulationReport("plan", scenario, total, passes, seed,
                            achieved if plan.components else ORIGIN,
                            components=reports)


def simulate_precoder(p: Precoder, cfg: AntennaConfig, trials: int,
                      seed: int) -> SimulationReport:
    """Re-check one fixed precoder against fresh channel draws.

    Meaningful for channel-independent constructions (random beamforming or
    deliberately overloaded precoders); channel-dependent schemes must be
    rebuilt per draw via ``simulate_corner``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    passes = 0
    sample = None
    first_failure = None
    for i in range(trials):
        h1, h2 = lift_channels(cfg, p.T, spawn_seed(seed, "trial", i))
        trace = check_decodability(h1, h2, p, cfg=cfg)
        if sample is None:
            sample = trace.ranks
        if trace.verdict:
            passes += 1
        elif first_failure is None:
            first_failure = {"trial": i, "ranks": trace.ranks}
    scenario = {"M": cfg.M, "N1": cfg.N1, "N2": cfg.N2, "T": p.T,
                "symbols": list(p.symbol_counts)}
    return SimulationReport("precoder", scenario, trials, passes, seed,
                            p.dof(), sample, first_failure)


def simulate(target: Union[CornerTask, TimeSharePlan, Precoder], trials: int,
             seed: int, *, cfg: AntennaConfig | None = None) -> SimulationReport:
    if isinstance(target, CornerTask):
        return simulate_corner(target, trials, seed)
    if isinstance(target, TimeSharePlan):
        return simulate_plan(target, trials, seed)
    if isinstance(target, Precoder):
        if cfg is None:
            raise ValueError("simulating a bare precoder needs cfg")
        return simulate_precoder(target, cfg, trials, seed)
    raise TypeError(f"cannot simulate {type(target)!r}")
