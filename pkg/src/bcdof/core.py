"""Scenario types and exact halfspace algebra for DoF regions.

A region is a finite list of halfspaces a1*d1 + a2*d2 + a0*d0 <= b together
with implicit nonnegativity of all coordinates.  Two-message scenarios are
the same polytopes with one coordinate pinned to an exact value, so a single
three-coordinate engine serves every message configuration.  All arithmetic
is exact rational: region membership, vertex enumeration and equality tests
never involve tolerances.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction, str]

D1, D2, D0 = 0, 1, 2
COORD_NAMES = ("d1", "d2", "d0")


def as_fraction(x: Rational) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected exact rational, got {type(x)!r}")


@dataclass(frozen=True)
class AntennaConfig:
    """Antenna counts at the transmitter and the two receivers."""

    M: int
    N1: int
    N2: int

    def __post_init__(self):
        for name in ("M", "N1", "N2"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    @property
    def is_normalized(self) -> bool:
        return self.N1 >= self.N2

    def normalized(self) -> tuple["AntennaConfig", bool]:
        """Receiver-1-strongest view; the flag records whether a swap happened."""
        if self.is_normalized:
            return self, False
        return AntennaConfig(self.M, self.N2, self.N1), True

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.M, self.N1, self.N2)


_CSIT_LETTERS = frozenset("PDN")


@dataclass(frozen=True)
class CsitModel:
    """Per-receiver channel knowledge at the transmitter: P, D or N."""

    letter1: str
    letter2: str

    def __post_init__(self):
        for letter in (self.letter1, self.letter2):
            if letter not in _CSIT_LETTERS:
                raise ValueError(f"CSIT letter must be one of P, D, N, got {letter!r}")

    @classmethod
    def parse(cls, text: str) -> "CsitModel":
        text = text.strip().upper()
        if len(text) != 2:
            raise ValueError(f"CSIT model must be two letters, got {text!r}")
        return cls(text[0], text[1])

    @property
    def name(self) -> str:
        return self.letter1 + self.letter2

    def swapped(self) -> "CsitModel":
        return CsitModel(self.letter2, self.letter1)

    @property
    def csit_type(self) -> int:
        """Type II when exactly one receiver's channel is unknown, else Type I."""
        return 2 if (self.letter1 == "N") != (self.letter2 == "N") else 1


ALL_CSIT = tuple(CsitModel(a, b) for a in "PDN" for b in "PDN")


class MessageSet(Enum):
    """Which messages exist: two private, degraded (W1 plus common), or all three."""

    PM = "pm"
    DM = "dm"
    CM = "cm"

    @classmethod
    def parse(cls, text: str) -> "MessageSet":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"message set must be pm, dm or cm, got {text!r}") from None

    @property
    def pinned_coord(self) -> int | None:
        if self is MessageSet.PM:
            return D0
        if self is MessageSet.DM:
            return D2
        return None


@dataclass(frozen=True)
class DofPoint:
    """A DoF triple (d1, d2, d0) with exact rational coordinates."""

    d1: Fraction
    d2: Fraction
    d0: Fraction

    def __post_init__(self):
        object.__setattr__(self, "d1", as_fraction(self.d1))
        object.__setattr__(self, "d2", as_fraction(self.d2))
        object.__setattr__(self, "d0", as_fraction(self.d0))

    @classmethod
    def of(cls, d1: Rational, d2: Rational = 0, d0: Rational = 0) -> "DofPoint":
        return cls(as_fraction(d1), as_fraction(d2), as_fraction(d0))

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.d1, self.d2, self.d0)

    def __iter__(self):
        return iter(self.as_tuple())

    def __getitem__(self, i: int) -> Fraction:
        return self.as_tuple()[i]

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self)

    @property
    def zero_coords(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self) if c == 0)

    def scaled(self, w: Fraction) -> "DofPoint":
        return DofPoint(self.d1 * w, self.d2 * w, self.d0 * w)

    def plus(self, other: "DofPoint") -> "DofPoint":
        return DofPoint(self.d1 + other.d1, self.d2 + other.d2, self.d0 + other.d0)


ORIGIN = DofPoint(Fraction(0), Fraction(0), Fraction(0))


def _coeff_term(c: Fraction, name: str) -> str:
    if c == 1:
        return name
    if c.denominator == 1:
        return f"{c.numerator}*{name}"
    if c.numerator == 1:
        return f"{name}/{c.denominator}"
    return f"({c.numerator}/{c.denominator})*{name}"


@dataclass(frozen=True)
class Halfspace:
    """The inequality a1*d1 + a2*d2 + a0*d0 <= b."""

    a1: Fraction
    a2: Fraction
    a0: Fraction
    b: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a0", "b"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.a1 == 0 and self.a2 == 0 and self.a0 == 0:
            raise ValueError("halfspace needs at least one nonzero coefficient")

    def coeffs(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a1, self.a2, self.a0)

    def evaluate(self, p: Sequence[Fraction] | DofPoint) -> Fraction:
        c = p.as_tuple() if isinstance(p, DofPoint) else p
        return self.a1 * c[0] + self.a2 * c[1] + self.a0 * c[2]

    def holds(self, p) -> bool:
        return self.evaluate(p) <= self.b

    def is_active(self, p) -> bool:
        return self.evaluate(p) == self.b

    def canonical(self) -> tuple[int, int, int, int]:
        """Integer form with gcd 1; equal halfspaces share one canonical tuple."""
        scale = math.lcm(self.a1.denominator, self.a2.denominator,
                         self.a0.denominator, self.b.denominator)
        ints = [int(v * scale) for v in (self.a1, self.a2, self.a0, self.b)]
        g = math.gcd(*(abs(v) for v in ints))
        return tuple(v // g for v in ints)  # type: ignore[return-value]

    def __str__(self) -> str:
        parts = []
        for c, name in zip(self.coeffs(), COORD_NAMES):
            if c == 0:
                continue
            term = _coeff_term(abs(c), name)
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        rhs = self.b.numerator if self.b.denominator == 1 else f"{self.b.numerator}/{self.b.denominator}"
        return f"{' '.join(parts)} <= {rhs}"


class RegionUnboundedError(ValueError):
    """Raised when a vertex enumeration is requested for an unbounded region."""


def _integerized(rows: list[tuple[tuple[Fraction, ...], Fraction]]
                 ) -> list[tuple[tuple[int, ...], int]]:
    out = []
    for coeffs, rhs in rows:
        scale = math.lcm(rhs.denominator, *(c.denominator for c in coeffs))
        out.append((tuple(int(c * scale) for c in coeffs), int(rhs * scale)))
    return out


def _solve_small(rows: list[tuple[tuple[Fraction, ...], Fraction]]
                 ) -> tuple[Fraction, ...] | None:
    """Cramer solve of a k x k system for k in {1, 2, 3}; None when singular."""
    k = len(rows)
    sys_ = _integerized(rows)
    if k == 1:
        (a,), b = sys_[0]
        return None if a == 0 else (Fraction(b, a),)
    if k == 2:
        (a, b), r1 = sys_[0]
        (c, d), r2 = sys_[1]
        det = a * d - b * c
        if det == 0:
            return None
        return (Fraction(r1 * d - b * r2, det), Fraction(a * r2 - r1 * c, det))
    (a, b, c), r1 = sys_[0]
    (d, e, f), r2 = sys_[1]
    (g, h, i), r3 = sys_[2]
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if det == 0:
        return None
    dx = r1 * (e * i - f * h) - b * (r2 * i - f * r3) + c * (r2 * h - e * r3)
    dy = a * (r2 * i - f * r3) - r1 * (d * i - f * g) + c * (d * r3 - r2 * g)
    dz = a * (e * r3 - r2 * h) - b * (d * r3 - r2 * g) + r1 * (d * h - e * g)
    return (Fraction(dx, det), Fraction(dy, det), Fraction(dz, det))


@dataclass(frozen=True)
class Region:
    """An intersection of halfspaces with implicit nonnegativity.

    ``pinned`` lists coordinates held at an exact value (d0 = 0 for private
    message scenarios, d2 = 0 for degraded ones); the remaining coordinates
    are the region's effective dimensions.
    """

    halfspaces: tuple[Halfspace, ...]
    pinned: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "halfspaces", tuple(self.halfspaces))
        pins = tuple(sorted((c, as_fraction(v)) for c, v in self.pinned))
        coords = [c for c, _ in pins]
        if len(set(coords)) != len(coords):
            raise ValueError("duplicate pinned coordinate")
        object.__setattr__(self, "pinned", pins)

    @property
    def free_coords(self) -> tuple[int, ...]:
        pinned = {c for c, _ in self.pinned}
        return tuple(c for c in (D1, D2, D0) if c not in pinned)

    @property
    def dim(self) -> int:
        return len(self.free_coords)

    def pinned_value(self, coord: int) -> Fraction | None:
        for c, v in self.pinned:
            if c == coord:
                return v
        return None

    # -- membership ----------------------------------------------------------

    def contains(self, p: DofPoint) -> bool:
        """Exact membership; boundary points count as inside."""
        coords = p.as_tuple()
        if any(c < 0 for c in coords):
            return False
        for c, v in self.pinned:
            if coords[c] != v:
                return False
        return all(h.holds(coords) for h in self.halfspaces)

    # -- vertex enumeration ----------------------------------------------

    def _plane_rows(self) -> list[tuple[tuple[Fraction, ...], Fraction]]:
        free = self.free_coords
        pin = dict(self.pinned)
        rows = []
        for h in self.halfspaces:
            coeffs = h.coeffs()
            rhs = h.b - sum(coeffs[c] * v for c, v in pin.items())
            rows.append((tuple(coeffs[c] for c in free), rhs))
        return rows

    def _is_bounded(self) -> bool:
        free = self.free_coords
        k = len(free)
        if k == 0:
            return True
        cone = [row for row, _ in self._plane_rows()]
        # the region is unbounded iff some nonzero recession direction exists,
        # i.e. the cone {x >= 0, a.x <= 0} meets the simplex sum(x) = 1
        ones = tuple(Fraction(1) for _ in range(k))
        planes: list[tuple[Fraction, ...]] = [tuple(row) for row in cone]
        for i in range(k):
            planes.append(tuple(Fraction(1 if j == i else 0) for j in range(k)))
        for combo in combinations(range(len(planes)), k - 1):
            rows = [(planes[i], Fraction(0)) for i in combo]
            rows.append((ones, Fraction(1)))
            sol = _solve_small(rows)
            if sol is None:
                continue
            if all(x >= 0 for x in sol) and all(
                    sum(a * x for a, x in zip(row, sol)) <= 0 for row in cone):
                return False
        return True

    def vertices(self) -> frozenset[DofPoint]:
        """Exact vertex set, by solving every subset of potentially active planes."""
        return _vertices_cached(self)

    def _compute_vertices(self) -> frozenset[DofPoint]:
        free = self.free_coords
        k = len(free)
        pin = dict(self.pinned)

        def assemble(sol: Sequence[Fraction]) -> DofPoint:
            coords = [Fraction(0)] * 3
            for c, v in pin.items():
                coords[c] = v
            for c, v in zip(free, sol):
                coords[c] = v
            return DofPoint(*coords)

        if k == 0:
            p = assemble(())
            return frozenset({p} if self.contains(p) else ())
        if not self._is_bounded():
            raise RegionUnboundedError("unbounded")
        plane_rows = self._plane_rows()
        for i in range(k):
            axis = tuple(Fraction(1 if j == i else 0) for j in range(k))
            plane_rows.append((axis, Fraction(0)))
        found: set[DofPoint] = set()
        for combo in combinations(plane_rows, k):
            sol = _solve_small(list(combo))
            if sol is None:
                continue
            p = assemble(sol)
            if self.contains(p):
                found.add(p)
        return frozenset(found)

    # -- algebra ---------------------------------------------------------

    def eliminate_redundant(self) -> "Region":
        """Drop every halfspace whose removal leaves the vertex set unchanged."""
        base = self.vertices()
        hs = list(self.halfspaces)
        i = 0
        while i < len(hs):
            trial = Region(tuple(hs[:i] + hs[i + 1:]), self.pinned)
            try:
                same = trial.vertices() == base
            except RegionUnboundedError:
                same = False
            if same:
                del hs[i]
            else:
                i += 1
        return Region(tuple(hs), self.pinned)

    def equals(self, other: "Region") -> bool:
        """Point-set equality of bounded regions, by exact vertex comparison."""
        return self.vertices() == other.vertices()

    def slice(self, coord: int, value: Rational) -> "Region":
        """Intersect with the plane coord = value, folding coefficients out."""
        value = as_fraction(value)
        if value < 0:
            raise ValueError("slice value must be nonnegative")
        if self.pinned_value(coord) is not None:
            raise ValueError(f"coordinate {COORD_NAMES[coord]} already pinned")
        new_hs: list[Halfspace] = []
        infeasible = False
        for h in self.halfspaces:
            coeffs = list(h.coeffs())
            rhs = h.b - coeffs[coord] * value
            coeffs[coord] = Fraction(0)
            if all(c == 0 for c in coeffs):
                if rhs < 0:
                    infeasible = True
                continue
            new_hs.append(Halfspace(coeffs[D1], coeffs[D2], coeffs[D0], rhs))
        pinned = self.pinned + ((coord, value),)
        if infeasible:
            free = [c for c in (D1, D2, D0) if c not in dict(pinned)]
            marker = [Fraction(0)] * 3
            for c in free or [coord]:
                marker[c] = Fraction(1)
            if all(c == 0 for c in marker):
                marker[D1] = Fraction(1)
            return Region((Halfspace(marker[D1], marker[D2], marker[D0], Fraction(-1)),),
                          pinned)
        return Region(tuple(new_hs), pinned)

    def swap_receivers(self) -> "Region":
        """Relabel the two receivers: exchange the d1 and d2 roles."""
        hs = tuple(Halfspace(h.a2, h.a1, h.a0, h.b) for h in self.halfspaces)
        pinned = tuple((D2 if c == D1 else D1 if c == D2 else c, v)
                       for c, v in self.pinned)
        return Region(hs, pinned)

    def canonical_halfspaces(self) -> frozenset[tuple[int, int, int, int]]:
        return frozenset(h.canonical() for h in self.halfspaces)


@functools.lru_cache(maxsize=None)
def _vertices_cached(region: Region) -> frozenset[DofPoint]:
    return region._compute_vertices()


# Module-level operation aliases matching the documented API.

def contains(region: Region, p: DofPoint) -> bool:
    return region.contains(p)


def vertices(region: Region) -> frozenset[DofPoint]:
    return region.vertices()


def eliminate_redundant(region: Region) -> Region:
    return region.eliminate_redundant()


def region_equals(a: Region, b: Region) -> bool:
    return a.equals(b)


def slice_region(region: Region, coord: int, value: Rational) -> Region:
    return region.slice(coord, value)


def sorted_points(points: Iterable[DofPoint]) -> list[DofPoint]:
    return sorted(points, key=lambda p: p.as_tuple())
