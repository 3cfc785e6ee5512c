"""Constructive rank-bound verification for block-diagonal channels.

The converse arguments for one-sided-unknown CSIT rest on a canonical form:
any private-message precoder that is decodable at receiver 1 can be
transformed, slot by slot, into a block-diagonal one that is still decodable
there while its image at receiver 2 never gains rank.  Per slot the
transform (i) re-bases the columns so that only a full-rank leading group
touches the slot, (ii) splits that group into columns visible at receiver 1
and columns falling in the slot channel's nullspace, and (iii) zeroes the
invisible part in this slot and the visible part in all later slots.  On the
block-diagonal form the per-slot rank ratio between the receivers is bounded
by min(M, N1) / N2, which is the whole content of the weighted converse.

This module implements that transform exactly and provides seeded
Monte-Carlo checkers for the rank-ratio bound, the block-matrix rank
inequality behind step (iii), and the full converse chain.  Almost-sure
statements are asserted as "no violation in any exact-integer trial".
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .core import AntennaConfig, CsitModel, DofPoint, MessageSet
from .linalg import (
    LiftedChannel, Matrix, hstack, lift_channels, sample_generic, spawn_seed,
)
from .schemes import Precoder, check_decodability

__all__ = [
    "SlotRecord", "CanonicalizationLog", "canonicalize",
    "RatioReport", "FamilyResult", "rank_ratio_check", "PRECODER_FAMILIES",
    "BlockPreset", "BLOCK_PRESETS", "BlockRankReport", "block_rank_check",
    "ConverseReport", "converse_chain_check",
]


# -- canonicalization ---------------------------------------------------------


@dataclass
class SlotRecord:
    """Per-slot bookkeeping of the canonicalization."""

    slot: int
    incoming_width: int          # columns with a nonzero block in this slot
    nulled: int                  # of those, columns inside the slot nullspace
    kept_width: int              # surviving diagonal block width m1(t)
    h2_rank_after_step1: int
    h2_rank_after_step2: int
    h2_rank_after_step3: int


@dataclass
class CanonicalizationLog:
    slots: list[SlotRecord]
    h1_rank_in: int
    h2_rank_in: int
    h1_rank_out: int
    h2_rank_out: int
    precoder: Matrix

    @property
    def slot_widths(self) -> list[int]:
        return [s.kept_width for s in self.slots]

    @property
    def h2_rank_sequence(self) -> list[int]:
        seq = [self.h2_rank_in]
        for s in self.slots:
            seq.extend([s.h2_rank_after_step1, s.h2_rank_after_step2,
                        s.h2_rank_after_step3])
        return seq


def _columns(m: Matrix) -> list[tuple]:
    return [m.column(j) for j in range(m.cols)]


def _col_block(col: Sequence, lo: int, hi: int) -> tuple:
    return tuple(col[lo:hi])


def _solve_coeffs(basis_block: Matrix, target: Sequence) -> list[Fraction]:
    """Coefficients expressing ``target`` in the full-column-rank basis block."""
    aug = hstack(basis_block, Matrix.from_columns([list(target)], basis_block.rows))
    red, pivots = aug.rref()
    n = basis_block.cols
    if any(p >= n for p in pivots):
        raise ValueError("target not in basis span")
    coeffs = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        coeffs[p] = Fraction(red[r, n])
    return coeffs


def _combine(cols: list[tuple], coeffs: Sequence[Fraction]) -> tuple:
    n = len(cols[0])
    acc = [Fraction(0)] * n
    for col, w in zip(cols, coeffs):
        if w == 0:
            continue
        for i, x in enumerate(col):
            if x != 0:
                acc[i] += w * x
    return tuple(acc)


def canonicalize(v1: Matrix, h1: LiftedChannel, h2: LiftedChannel
                 ) -> tuple[Matrix, CanonicalizationLog]:
    """Block-diagonalize a receiver-1-decodable precoder, slot by slot.

    Preserves decodability at receiver 1 exactly; the receiver-2 image rank
    is non-increasing at every step (almost surely over generic channels).
    Raises ValueError when the input is not decodable at receiver 1.
    """
    if h1.T != h2.T or h1.m_antennas != h2.m_antennas:
        raise ValueError("channel lift mismatch")
    T, M = h1.T, h1.m_antennas
    if v1.rows != M * T:
        raise ValueError("precoder height must be M*T")
    m1 = v1.cols
    hd1, hd2 = h1.block_diag, h2.block_diag
    h1_in = (hd1 @ v1).rank()
    if h1_in != m1:
        raise ValueError("input not decodable at receiver 1: "
                         f"rank {h1_in} < {m1} columns")
    h2_in = (hd2 @ v1).rank()

    finalized: list[tuple] = []
    current = _columns(v1)
    records: list[SlotRecord] = []

    def assembled_h2_rank() -> int:
        cols = finalized + current
        if not cols:
            return 0
        return (hd2 @ Matrix.from_columns(cols, M * T)).rank()

    for t in range(T):
        lo, hi = t * M, (t + 1) * M
        if not current:
            records.append(SlotRecord(t, 0, 0, 0, *([assembled_h2_rank()] * 3)))
            continue
        # step 1: re-base so only a leading full-rank group touches this slot
        slot_view = Matrix.from_columns([_col_block(c, lo, hi) for c in current], M)
        pivots = slot_view.pivot_columns()
        a = len(pivots)
        basis = [current[j] for j in pivots]
        basis_block = Matrix.from_columns([_col_block(c, lo, hi) for c in basis], M)
        rest = []
        pivot_set = set(pivots)
        for j, col in enumerate(current):
            if j in pivot_set:
                continue
            blk = _col_block(col, lo, hi)
            if all(x == 0 for x in blk):
                rest.append(col)
                continue
            coeffs = _solve_coeffs(basis_block, blk)
            adjust = _combine(basis, [-w for w in coeffs])
            rest.append(tuple(x + y for x, y in zip(col, adjust)))
        current = basis + rest
        r1 = assembled_h2_rank()

        # step 2: split the leading group against the slot channel nullspace,
        # pairing columns of the concatenated nullspace exactly
        null_h = h1.slot(t).nullspace_basis()
        n1 = 0
        group_c, group_d = basis, []
        if null_h.cols and a:
            paired = hstack(basis_block, -null_h).nullspace_basis()
            mix_null = paired.block(0, a, 0, paired.cols)
            n1 = mix_null.cols
            if n1:
                chosen: list[list] = [mix_null.column(j) for j in range(n1)]
                completion: list[list] = []
                base_rank = Matrix.from_columns(chosen, a).rank()
                for i in range(a):
                    if len(completion) == a - n1:
                        break
                    e = [1 if k == i else 0 for k in range(a)]
                    trial = Matrix.from_columns(chosen + completion + [e], a)
                    if trial.rank() > base_rank + len(completion):
                        completion.append(e)
                group_c = [_combine(basis, e) for e in completion]
                group_d = [_combine(basis, x) for x in chosen]
        current = group_c + group_d + rest
        r2 = assembled_h2_rank()

        # step 3: keep only this slot's block of the visible group, zero the
        # nulled group inside this slot
        kept = []
        for col in group_c:
            kept.append(tuple(col[i] if lo <= i < hi else 0 for i in range(M * T)))
        finalized.extend(kept)
        passed_on = [tuple(0 if lo <= i < hi else col[i] for i in range(M * T))
                     for col in group_d]
        current = passed_on + rest
        r3 = assembled_h2_rank()
        records.append(SlotRecord(t, a, n1, a - n1, r1, r2, r3))

    for col in current:
        if any(x != 0 for x in col):
            raise AssertionError("nonzero column survived all slots")
    out = Matrix.from_columns(finalized, M * T) if finalized else Matrix.empty(M * T)
    h1_out = (hd1 @ out).rank() if out.cols else 0
    h2_out = (hd2 @ out).rank() if out.cols else 0
    if h1_out != m1:
        raise AssertionError("canonical form lost receiver-1 decodability")
    log = CanonicalizationLog(records, h1_in, h2_in, h1_out, h2_out, out)
    return out, log


# -- decodable precoder families ----------------------------------------------


FamilySampler = Callable[[AntennaConfig, int, LiftedChannel, random.Random], Matrix]


def _family_generic(cfg: AntennaConfig, T: int, h1: LiftedChannel,
                    rng: random.Random) -> Matrix:
    m1 = rng.randint(1, min(cfg.M, cfg.N1) * T)
    return sample_generic(cfg.M * T, m1, rng)


def _block_columns(cfg: AntennaConfig, widths: Sequence[int],
                   rng: random.Random) -> Matrix:
    M, T = cfg.M, len(widths)
    cols = []
    for t, w in enumerate(widths):
        block = sample_generic(M, w, rng)
        for j in range(w):
            col = [0] * (M * T)
            for i in range(M):
                col[t * M + i] = block[i, j]
            cols.append(col)
    return Matrix.from_columns(cols, M * T)


def _family_block_diag(cfg: AntennaConfig, T: int, h1: LiftedChannel,
                       rng: random.Random) -> Matrix:
    cap = min(cfg.M, cfg.N1)
    widths = [rng.randint(0, cap) for _ in range(T)]
    if not any(widths):
        widths[rng.randrange(T)] = 1
    return _block_columns(cfg, widths, rng)


def _family_block_full(cfg: AntennaConfig, T: int, h1: LiftedChannel,
                       rng: random.Random) -> Matrix:
    return _block_columns(cfg, [min(cfg.M, cfg.N1)] * T, rng)


def _family_zf_mix(cfg: AntennaConfig, T: int, h1: LiftedChannel,
                   rng: random.Random) -> Matrix:
    """Channel-aware columns: the transmitter may exploit receiver 1's CSI.

    Some columns are consciously placed in nullspaces of row subsets of the
    slot channel, which is the adversarial shape a perfect-CSIT transmitter
    could choose; fully generic columns are mixed in.
    """
    M, N1 = cfg.M, cfg.N1
    m1 = rng.randint(1, min(M, N1) * T)
    cols = []
    for _ in range(m1):
        if rng.random() < 0.5:
            cols.append([sample_generic(1, 1, rng)[0, 0] for _ in range(M * T)])
            continue
        t = rng.randrange(T)
        max_rows = min(N1, M - 1)
        k = rng.randint(1, max_rows) if max_rows >= 1 else 0
        col = [0] * (M * T)
        if k == 0:
            block = sample_generic(M, 1, rng)
            for i in range(M):
                col[t * M + i] = block[i, 0]
        else:
            rows = sorted(rng.sample(range(N1), k))
            sub = Matrix([h1.slot(t).row(r) for r in rows])
            basis = sub.nullspace_basis()
            mix = sample_generic(basis.cols, 1, rng)
            beam = basis @ mix
            for i in range(M):
                col[t * M + i] = beam[i, 0]
        cols.append(col)
    return Matrix.from_columns(cols, M * T)


PRECODER_FAMILIES: dict[str, FamilySampler] = {
    "generic": _family_generic,
    "block_diag": _family_block_diag,
    "block_full": _family_block_full,
    "zf_mix": _family_zf_mix,
}


def draw_decodable(cfg: AntennaConfig, T: int, h1: LiftedChannel,
                   rng: random.Random, sampler: FamilySampler,
                   max_tries: int = 50) -> Matrix:
    """Sample from a family until receiver-1 decodability holds."""
    hd1 = h1.block_diag
    for _ in range(max_tries):
        v1 = sampler(cfg, T, h1, rng)
        if (hd1 @ v1).rank() == v1.cols:
            return v1
    raise RuntimeError("could not draw a decodable precoder")


# -- rank-ratio check -----------------------------------------


@dataclass
class FamilyResult:
    family: str
    trials: int
    max_ratio: Fraction
    min_ratio: Fraction
    violations: int
    bound_attained: bool


@dataclass
class RatioReport:
    cfg: AntennaConfig
    max_T: int
    bound: Fraction | None            # None in the receiver-2-stronger regime
    expect_unit_ratio: bool
    families: dict[str, FamilyResult]
    seed: int

    @property
    def passed(self) -> bool:
        return all(f.violations == 0 for f in self.families.values())

    @property
    def max_ratio(self) -> Fraction:
        return max(f.max_ratio for f in self.families.values())

    def to_dict(self) -> dict:
        return {
            "M": self.cfg.M, "N1": self.cfg.N1, "N2": self.cfg.N2,
            "max_T": self.max_T,
            "bound": None if self.bound is None else str(self.bound),
            "expect_unit_ratio": self.expect_unit_ratio,
            "passed": self.passed,
            "families": {
                name: {"trials": f.trials, "max_ratio": str(f.max_ratio),
                       "min_ratio": str(f.min_ratio), "violations": f.violations,
                       "bound_attained": f.bound_attained}
                for name, f in self.families.items()},
        }


def rank_ratio_check(cfg: AntennaConfig, max_T: int, trials: int, seed: int,
                     families: Sequence[str] | None = None) -> RatioReport:
    """Check the per-precoder rank ratio between the receivers.

    For N2 <= min(M, N1) the ratio rank(H1 V1) / rank(H2 V1) of any
    receiver-1-decodable private precoder stays within min(M, N1) / N2; when
    receiver 2 is the stronger one the ratio is exactly 1 in every trial.
    Only the W1 precoder exists here, matching the bound's hypothesis.
    """
    a = min(cfg.M, cfg.N1)
    unit_regime = cfg.N2 > a
    bound = None if unit_regime else Fraction(a, cfg.N2)
    chosen = list(families) if families else list(PRECODER_FAMILIES)
    results: dict[str, FamilyResult] = {}
    for fam in chosen:
        sampler = PRECODER_FAMILIES[fam]
        max_ratio = Fraction(0)
        min_ratio = None
        violations = 0
        for i in range(trials):
            t = 1 + (i % max_T)
            trial_seed = spawn_seed(seed, fam, i)
            h1, h2 = lift_channels(cfg, t, trial_seed)
            rng = random.Random(spawn_seed(trial_seed, "v1"))
            v1 = draw_decodable(cfg, t, h1, rng, sampler)
            r1 = (h1.block_diag @ v1).rank()
            r2 = (h2.block_diag @ v1).rank()
            ratio = Fraction(r1, r2)
            max_ratio = max(max_ratio, ratio)
            min_ratio = ratio if min_ratio is None else min(min_ratio, ratio)
            if unit_regime:
                if ratio != 1:
                    violations += 1
            elif ratio > bound:
                violations += 1
        results[fam] = FamilyResult(fam, trials, max_ratio, min_ratio or Fraction(0),
                                    violations, bound is not None and max_ratio == bound)
    return RatioReport(cfg, max_T, bound, unit_regime, results, seed)


# -- block-matrix rank inequality ----------------------------------------------


@dataclass(frozen=True)
class BlockPreset:
    """Shapes for the mixed-block rank inequality trial.

    ``grid`` is an n x n arrangement of blocks with shared row heights and
    column widths; each block row i gets its own generic left factor H_i.
    The stacked block matrix X must admit full column rank.
    """

    name: str
    row_heights: tuple[int, ...]
    col_widths: tuple[int, ...]
    h_rows: tuple[int, ...]
    zero_blocks: tuple[tuple[int, int], ...] = ()

    @property
    def n(self) -> int:
        return len(self.row_heights)

    def feasible(self) -> bool:
        return sum(self.row_heights) >= sum(self.col_widths)


BLOCK_PRESETS: dict[str, BlockPreset] = {
    # equality case: off-diagonal blocks vanish
    "zero_off_diagonal": BlockPreset("zero_off_diagonal", (4, 3), (2, 2), (2, 2),
                                     zero_blocks=((0, 1), (1, 0))),
    "rect_2x2": BlockPreset("rect_2x2", (4, 3), (2, 2), (2, 2)),
    "grid_3x3": BlockPreset("grid_3x3", (3, 3, 3), (1, 1, 1), (2, 2, 2)),
}


@dataclass
class BlockRankReport:
    preset: str
    trials: int
    violations_lower_bound: int
    violations_split: int | None
    seed: int

    @property
    def passed(self) -> bool:
        ok = self.violations_lower_bound == 0
        if self.violations_split is not None:
            ok = ok and self.violations_split == 0
        return ok

    def to_dict(self) -> dict:
        return {"preset": self.preset, "trials": self.trials,
                "violations_lower_bound": self.violations_lower_bound,
                "violations_split": self.violations_split,
                "passed": self.passed}


def block_rank_check(preset: BlockPreset | str, trials: int, seed: int
                     ) -> BlockRankReport:
    """Monte-Carlo check that mixing in off-diagonal blocks never loses rank.

    With X = [[A, B], [C, D]] of full column rank and independent generic
    H1, H2, the matrix [[H1 A, H1 B], [H2 C, H2 D]] has rank at least
    rank(H1 A) + rank(H2 D); for the 2 x 2 case the exact split
    rank = rank([H1 A; H2 C]) + rank([H1 B; H2 D]) is checked as well.
    """
    p = BLOCK_PRESETS[preset] if isinstance(preset, str) else preset
    if not p.feasible():
        raise ValueError(f"infeasible dims: preset {p.name} cannot have full"
                         " column rank")
    n = p.n
    viol_lb = 0
    viol_split = 0 if n == 2 else None
    for i in range(trials):
        rng = random.Random(spawn_seed(seed, p.name, i))
        while True:
            blocks = [[sample_generic(p.row_heights[r], p.col_widths[c], rng)
                       for c in range(n)] for r in range(n)]
            for (zr, zc) in p.zero_blocks:
                blocks[zr][zc] = Matrix.zeros(p.row_heights[zr], p.col_widths[zc])
            x = vstack_rows([hstack(*row) for row in blocks])
            if x.rank() == sum(p.col_widths):
                break
        hs = [sample_generic(p.h_rows[r], p.row_heights[r], rng) for r in range(n)]
        mixed_rows = [hstack(*(hs[r] @ blocks[r][c] for c in range(n)))
                      for r in range(n)]
        mixed = vstack_rows(mixed_rows)
        # block-diagonal comparison point: keep (0,0) and the trailing
        # (n-1) x (n-1) block square, zero the borders
        lead = (hs[0] @ blocks[0][0]).rank()
        trailing = vstack_rows([
            hstack(*(hs[r] @ blocks[r][c] for c in range(1, n)))
            for r in range(1, n)])
        lower = lead + trailing.rank()
        if mixed.rank() < lower:
            viol_lb += 1
        if n == 2:
            left = vstack_rows([hs[0] @ blocks[0][0], hs[1] @ blocks[1][0]])
            right = vstack_rows([hs[0] @ blocks[0][1], hs[1] @ blocks[1][1]])
            if mixed.rank() != left.rank() + right.rank():
                viol_split += 1
    return BlockRankReport(p.name, trials, viol_lb, viol_split, seed)


def vstack_rows(ms: Sequence[Matrix]) -> Matrix:
    from .linalg import vstack
    return vstack(*ms)


# -- converse chain -------------------------------------------------------------


@dataclass
class ConverseReport:
    cfg: AntennaConfig
    T: int
    trials: int
    violations: dict
    corner_saturated: bool
    seed: int

    @property
    def passed(self) -> bool:
        return all(v == 0 for v in self.violations.values()) and self.corner_saturated

    def to_dict(self) -> dict:
        return {"M": self.cfg.M, "N1": self.cfg.N1, "N2": self.cfg.N2,
                "T": self.T, "trials": self.trials,
                "violations": dict(self.violations),
                "corner_saturated": self.corner_saturated,
                "passed": self.passed}


def _draw_decodable_pair(cfg: AntennaConfig, T: int, h1: LiftedChannel,
                         h2: LiftedChannel, rng: random.Random,
                         force_empty_v2: bool) -> Precoder | None:
    """A private-message pair decodable at both receivers, no CSI from receiver 2.

    Per slot either one message transmits at full budget or both share the
    weak receiver's dimension count; receiver-1-aware zero-forcing columns
    are allowed for W1 since its CSIT may be perfect.
    """
    M, N1, N2 = cfg.as_tuple()
    a, b = min(M, N1), min(M, N2)
    v1_cols: list[list] = []
    v2_cols: list[list] = []
    for t in range(T):
        mode = "w1" if force_empty_v2 else rng.choice(("w1", "w2", "mixed"))
        if mode == "w1":
            m1t, m2t = rng.randint(0, a), 0
        elif mode == "w2":
            m1t, m2t = 0, rng.randint(0, b)
        else:
            m1t = rng.randint(0, b)
            m2t = rng.randint(0, b - m1t)
        for _ in range(m1t):
            col = [0] * (M * T)
            if rng.random() < 0.3 and M >= 2:
                k = rng.randint(1, min(N1, M - 1))
                sub = Matrix([h1.slot(t).row(r)
                              for r in sorted(rng.sample(range(N1), k))])
                beam = sub.nullspace_basis() @ sample_generic(
                    sub.nullspace_basis().cols, 1, rng)
            else:
                beam = sample_generic(M, 1, rng)
            for i in range(M):
                col[t * M + i] = beam[i, 0]
            v1_cols.append(col)
        for _ in range(m2t):
            col = [0] * (M * T)
            beam = sample_generic(M, 1, rng)
            for i in range(M):
                col[t * M + i] = beam[i, 0]
            v2_cols.append(col)
    if not v1_cols and not v2_cols:
        return None
    p = Precoder(M, T, Matrix.from_columns(v1_cols, M * T),
                 Matrix.from_columns(v2_cols, M * T), Matrix.empty(M * T))
    trace = check_decodability(h1, h2, p)
    return p if trace.verdict else None


def converse_chain_check(cfg: AntennaConfig, T: int, trials: int,
                         seed: int) -> ConverseReport:
    """Verify the rank chain behind the weighted private-message bound.

    Per decodable pair: the two interference images at receiver 2 fit in its
    T * N2 dimensions, each message's own image has full column rank, and
    m1 / min(M, N1) + m2 / N2 <= T.  With an empty W2 the chain reduces to
    the rank-ratio lower bound on the receiver-2 image of V1.  A
    time-division corner construction must meet the weighted bound with
    equality.
    """
    M, N1, N2 = cfg.as_tuple()
    if M <= N2:
        raise ValueError("converse chain is nontrivial only for M > N2")
    a = min(M, N1)
    violations = {"receiver2_budget": 0, "signal_rank_1": 0, "signal_rank_2": 0,
                  "weighted_bound": 0, "v1_only_lower_bound": 0}
    for i in range(trials):
        trial_seed = spawn_seed(seed, "pair", i)
        h1, h2 = lift_channels(cfg, T, trial_seed)
        rng = random.Random(spawn_seed(trial_seed, "draw"))
        force_empty = i % 5 == 0
        p = None
        for _ in range(50):
            p = _draw_decodable_pair(cfg, T, h1, h2, rng, force_empty)
            if p is not None:
                break
        if p is None:
            raise RuntimeError("failed to draw a decodable pair")
        hd1, hd2 = h1.block_diag, h2.block_diag
        r_h2v1 = (hd2 @ p.v1).rank() if p.m1 else 0
        r_h2v2 = (hd2 @ p.v2).rank() if p.m2 else 0
        r_h1v1 = (hd1 @ p.v1).rank() if p.m1 else 0
        if r_h2v1 + r_h2v2 > T * N2:
            violations["receiver2_budget"] += 1
        if r_h1v1 != p.m1:
            violations["signal_rank_1"] += 1
        if r_h2v2 != p.m2:
            violations["signal_rank_2"] += 1
        if Fraction(p.m1, a) + Fraction(p.m2, N2) > T:
            violations["weighted_bound"] += 1
        if p.m2 == 0 and p.m1 and r_h2v1 < Fraction(p.m1 * N2, a):
            violations["v1_only_lower_bound"] += 1
    corner_ok = _corner_saturates(cfg, T, seed)
    return ConverseReport(cfg, T, trials, violations, corner_ok, seed)


def _corner_saturates(cfg: AntennaConfig, T: int, seed: int) -> bool:
    """Time-division corners: T' full-W1 slots then full-W2 slots, exact equality."""
    M, N1, N2 = cfg.as_tuple()
    a, b = min(M, N1), min(M, N2)
    for t_first in range(1, T):
        m1, m2 = a * t_first, b * (T - t_first)
        h1, h2 = lift_channels(cfg, T, spawn_seed(seed, "corner", t_first))
        rng = random.Random(spawn_seed(seed, "corner-beams", t_first))
        v1_cols, v2_cols = [], []
        for t in range(T):
            count = a if t < t_first else 0
            for _ in range(count):
                col = [0] * (M * T)
                beam = sample_generic(M, 1, rng)
                for i in range(M):
                    col[t * M + i] = beam[i, 0]
                v1_cols.append(col)
            count = b if t >= t_first else 0
            for _ in range(count):
                col = [0] * (M * T)
                beam = sample_generic(M, 1, rng)
                for i in range(M):
                    col[t * M + i] = beam[i, 0]
                v2_cols.append(col)
        p = Precoder(M, T, Matrix.from_columns(v1_cols, M * T),
                     Matrix.from_columns(v2_cols, M * T), Matrix.empty(M * T))
        if not check_decodability(h1, h2, p).verdict:
            return False
        if Fraction(m1, a) + Fraction(m2, N2) != T:
            return False
    return True
