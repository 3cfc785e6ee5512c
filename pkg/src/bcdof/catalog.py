"""Region formulas for all nine hybrid CSIT models and three message sets.

Every region is expressed through the three quantities

    a = min(M, N1),   b = min(M, N2),   K = min(M, N1 + N2),

for a normalized configuration (N1 >= N2).  Non-normalized inputs are served
by building the normalized region and relabeling the receivers, which also
swaps the CSIT letters.  The degraded message set is special: its private
message is tied to receiver 1, so when receiver 2 has strictly more antennas
the region collapses to d1 + d0 <= min(M, N1) and no relabeling applies.

``devolve_outer`` rebuilds each three-message region mechanically from the
private-message one: fold the common DoF into receiver 1's private DoF for
one constraint group, into receiver 2's for the other, intersect, and drop
redundant rows.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .core import (
    D0, D1, D2, ALL_CSIT, AntennaConfig, CsitModel, DofPoint, Halfspace,
    MessageSet, Region, sorted_points,
)

__all__ = [
    "RegionLabel", "SchemeKind", "Corner",
    "bc_pm_region", "bc_cm_region", "bc_dm_region", "catalog_region",
    "devolve_outer", "corner_catalog", "ALL_CSIT",
]


@dataclass(frozen=True)
class RegionLabel:
    """Provenance tag for a catalog region.

    ``status`` is "LDoF" when the formula is only known to be exact under
    linear encoding (the one-sided-unknown CSIT models), "DoF" otherwise.
    ``derived`` marks degraded-message regions obtained by slicing the
    three-message region rather than stated directly.
    """

    message_set: MessageSet
    csit: CsitModel
    status: str
    derived: bool = False

    @property
    def is_ldof_only(self) -> bool:
        return self.status == "LDoF"


def _mins(cfg: AntennaConfig) -> tuple[int, int, int]:
    return (min(cfg.M, cfg.N1), min(cfg.M, cfg.N2), min(cfg.M, cfg.N1 + cfg.N2))


def _pm_rows(cfg: AntennaConfig, csit: CsitModel) -> tuple[Halfspace, ...]:
    M = cfg.M
    a, b, K = _mins(cfg)
    fa, fb, fK = Fraction(1, a), Fraction(1, b), Fraction(1, K)
    name = csit.name
    if name == "PP":
        return (Halfspace(1, 0, 0, cfg.N1),
                Halfspace(0, 1, 0, cfg.N2),
                Halfspace(1, 1, 0, M))
    if name == "PD":
        return (Halfspace(fa, 0, 0, 1), Halfspace(fK, fb, 0, 1))
    if name == "DP":
        return (Halfspace(fa, fK, 0, 1), Halfspace(0, fb, 0, 1))
    if name == "DD":
        return (Halfspace(fK, fb, 0, 1), Halfspace(fa, fK, 0, 1))
    if name == "NP":
        return (Halfspace(fa, fa, 0, 1), Halfspace(0, fb, 0, 1))
    if name == "ND":
        return (Halfspace(fa, fa, 0, 1), Halfspace(fK, fb, 0, 1))
    # PN, DN and NN share one formula: CSI from the stronger receiver alone
    # does not enlarge the linearly achievable set.
    return (Halfspace(fa, fb, 0, 1),)


def _cm_rows(cfg: AntennaConfig, csit: CsitModel) -> tuple[Halfspace, ...]:
    M = cfg.M
    a, b, K = _mins(cfg)
    fa, fb, fK = Fraction(1, a), Fraction(1, b), Fraction(1, K)
    name = csit.name
    if name == "PP":
        return (Halfspace(1, 0, 1, cfg.N1),
                Halfspace(0, 1, 1, cfg.N2),
                Halfspace(1, 1, 1, M))
    if name == "PD":
        return (Halfspace(fa, 0, fa, 1), Halfspace(fK, fb, fb, 1))
    if name == "DP":
        return (Halfspace(fa, fK, fa, 1), Halfspace(0, fb, fb, 1))
    if name == "DD":
        return (Halfspace(fK, fb, fb, 1), Halfspace(fa, fK, fa, 1))
    if name == "NP":
        return (Halfspace(fa, fa, fa, 1), Halfspace(0, fb, fb, 1))
    if name == "ND":
        return (Halfspace(fa, fa, fa, 1), Halfspace(fK, fb, fb, 1))
    return (Halfspace(fa, fb, fb, 1),)


def _status(csit: CsitModel) -> str:
    return "LDoF" if csit.csit_type == 2 else "DoF"


@functools.lru_cache(maxsize=None)
def bc_pm_region(cfg: AntennaConfig, csit: CsitModel) -> tuple[Region, RegionLabel]:
    """Private-message region, pinned to the d0 = 0 plane."""
    ncfg, swapped = cfg.normalized()
    rows = _pm_rows(ncfg, csit.swapped() if swapped else csit)
    region = Region(rows, pinned=((D0, Fraction(0)),))
    if swapped:
        region = region.swap_receivers()
    return region, RegionLabel(MessageSet.PM, csit, _status(csit))


@functools.lru_cache(maxsize=None)
def bc_cm_region(cfg: AntennaConfig, csit: CsitModel) -> tuple[Region, RegionLabel]:
    """Private-plus-common-message region in all three coordinates."""
    ncfg, swapped = cfg.normalized()
    rows = _cm_rows(ncfg, csit.swapped() if swapped else csit)
    region = Region(rows)
    if swapped:
        region = region.swap_receivers()
    return region, RegionLabel(MessageSet.CM, csit, _status(csit))


@functools.lru_cache(maxsize=None)
def bc_dm_region(cfg: AntennaConfig, csit: CsitModel) -> tuple[Region, RegionLabel]:
    """Degraded-message region (W1 for receiver 1, W0 for both), d2 pinned to 0.

    Receiver roles are fixed by the message structure, so no receiver
    relabeling happens here.  With N1 < N2 the second receiver decodes
    whatever the first can, and random beamforming is optimal regardless of
    CSIT: the region is d1 + d0 <= min(M, N1).
    """
    pin = ((D2, Fraction(0)),)
    if cfg.N1 < cfg.N2:
        region = Region((Halfspace(1, 0, 1, min(cfg.M, cfg.N1)),), pinned=pin)
        return region, RegionLabel(MessageSet.DM, csit, "DoF")
    a, b, K = _mins(cfg)
    if csit.name == "ND":
        rows = (Halfspace(Fraction(1, K), 0, Fraction(1, b), 1),
                Halfspace(Fraction(1, a), 0, Fraction(1, a), 1))
        return Region(rows, pinned=pin), RegionLabel(MessageSet.DM, csit, "DoF")
    cm, _ = bc_cm_region(cfg, csit)
    region = cm.slice(D2, 0)
    status = "DoF" if csit.csit_type == 1 else "LDoF"
    return region, RegionLabel(MessageSet.DM, csit, status, derived=True)


def catalog_region(cfg: AntennaConfig, message_set: MessageSet,
                   csit: CsitModel) -> tuple[Region, RegionLabel]:
    if message_set is MessageSet.PM:
        return bc_pm_region(cfg, csit)
    if message_set is MessageSet.DM:
        return bc_dm_region(cfg, csit)
    return bc_cm_region(cfg, csit)


def _fold_common_into(h: Halfspace, coord: int) -> Halfspace:
    """Substitute d_coord -> d_coord + d0, i.e. copy that coefficient onto d0."""
    coeffs = list(h.coeffs())
    return Halfspace(coeffs[D1], coeffs[D2], coeffs[coord], h.b)


def devolve_outer(cfg: AntennaConfig, csit: CsitModel) -> Region:
    """Outer bound for the three-message region built from the two-message one.

    Requiring only receiver 1 to decode the common message folds d0 into d1;
    requiring only receiver 2 folds it into d2.  The intersection of both
    constraint groups, after redundancy elimination, reproduces the catalog
    region exactly.
    """
    pm, _ = bc_pm_region(cfg, csit)
    seen = set()
    rows = []
    for h in pm.halfspaces:
        for folded in (_fold_common_into(h, D1), _fold_common_into(h, D2)):
            key = folded.canonical()
            if key not in seen:
                seen.add(key)
                rows.append(folded)
    return Region(tuple(rows)).eliminate_redundant()


class SchemeKind(Enum):
    """Which precoding construction achieves a corner point."""

    TRIVIAL_BEAMFORMING = "trivial-beamforming"
    PP_ZERO_FORCING = "pp-zero-forcing"
    NP_ZERO_FORCING = "np-zero-forcing"
    DP_CORNER = "dp-corner"
    DM_ND_TWO_PHASE = "dm-nd-two-phase"
    CITED_EXTERNAL = "cited-external"

    @property
    def simulatable(self) -> bool:
        return self is not SchemeKind.CITED_EXTERNAL


_EXTERNAL_DELAYED = "requires the delayed-CSIT private-message corner scheme of cited prior work"
_EXTERNAL_HYBRID = "requires the perfect/delayed hybrid-CSIT private-message corner scheme of cited prior work"


@dataclass(frozen=True)
class Corner:
    """A region vertex, its deterministic name, and its achieving scheme family."""

    name: str
    point: DofPoint
    kind: SchemeKind
    note: str = ""


def _axis_name(coord: int) -> str:
    return {D1: "A1", D2: "B2", D0: "B0"}[coord]


def _kind_for(message_set: MessageSet, csit: CsitModel, v: DofPoint
              ) -> tuple[SchemeKind, str]:
    nonzero = [c for c in (D1, D2, D0) if v[c] != 0]
    if len(nonzero) <= 1:
        return SchemeKind.TRIVIAL_BEAMFORMING, ""
    name = csit.name
    if message_set is MessageSet.CM:
        if name == "PP":
            return SchemeKind.PP_ZERO_FORCING, ""
        if v.d0 == 0:
            if name in ("PD", "DP", "DD"):
                note = _EXTERNAL_DELAYED if name == "DD" else _EXTERNAL_HYBRID
                return SchemeKind.CITED_EXTERNAL, note
            if name == "NP":
                return SchemeKind.NP_ZERO_FORCING, ""
            if name == "ND":
                return SchemeKind.DM_ND_TWO_PHASE, ""
        elif v.d2 == 0:
            if name in ("PD", "DD", "ND"):
                return SchemeKind.DM_ND_TWO_PHASE, ""
            if name in ("DP", "NP"):
                return SchemeKind.DP_CORNER, ""
    elif message_set is MessageSet.PM:
        if name == "PP":
            return SchemeKind.PP_ZERO_FORCING, ""
        if name == "DD":
            return SchemeKind.CITED_EXTERNAL, _EXTERNAL_DELAYED
        if name in ("PD", "DP"):
            return SchemeKind.CITED_EXTERNAL, _EXTERNAL_HYBRID
        if name == "NP":
            return SchemeKind.NP_ZERO_FORCING, ""
        if name == "ND":
            return SchemeKind.DM_ND_TWO_PHASE, ""
    else:
        if name == "PP":
            return SchemeKind.PP_ZERO_FORCING, ""
        if name in ("PD", "DD", "ND"):
            return SchemeKind.DM_ND_TWO_PHASE, ""
        if name in ("DP", "NP"):
            return SchemeKind.DP_CORNER, ""
    raise RuntimeError(
        f"no scheme mapping for vertex {v} of {message_set.value}/{name}")


def _named_vertices(region: Region) -> list[tuple[str, DofPoint]]:
    groups: dict[str, list[DofPoint]] = {}
    order = []
    pinned = {c for c, _ in region.pinned}
    for v in sorted_points(region.vertices()):
        nonzero = [c for c in (D1, D2, D0) if v[c] != 0]
        if not nonzero:
            base = "O"
        elif len(nonzero) == 1:
            base = _axis_name(nonzero[0])
        elif region.dim == 2:
            base = "P"
        else:
            zero = [c for c in (D1, D2, D0) if v[c] == 0 and c not in pinned]
            if not zero:
                base = "Q"
            else:
                base = {D0: "P1", D2: "P2", D1: "P3"}[zero[0]]
        groups.setdefault(base, []).append(v)
        order.append((base, v))
    names = []
    for base, v in order:
        group = groups[base]
        if len(group) == 1:
            names.append((base, v))
        else:
            suffix = "abcdefgh"[group.index(v)]
            names.append((f"{base}{suffix}", v))
    return names


def corner_catalog(cfg: AntennaConfig, message_set: MessageSet,
                   csit: CsitModel) -> list[Corner]:
    """Every vertex of the catalog region tagged with its achieving scheme.

    For non-normalized private or common message scenarios the tagging is
    done in the relabeled (receiver-1-strongest) orientation, where the
    scheme constructions live, and mapped back.
    """
    region, _ = catalog_region(cfg, message_set, csit)
    ncfg, swapped = cfg.normalized()
    corners = []
    for name, v in _named_vertices(region):
        if swapped and message_set is not MessageSet.DM:
            kind, note = _kind_for(message_set, csit.swapped(),
                                   DofPoint(v.d2, v.d1, v.d0))
        else:
            kind, note = _kind_for(message_set, csit, v)
        corners.append(Corner(name, v, kind, note))
    return corners
