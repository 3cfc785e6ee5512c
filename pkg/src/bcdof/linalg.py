"""Exact rational matrix arithmetic and generic channel sampling.

Matrix entries are Python ints or ``fractions.Fraction`` values, so every
rank, nullspace and product is computed without rounding.  Generic channels
(continuous distributions in the underlying model) are replaced by matrices
of large random integers: any fixed nonzero polynomial relation among the
entries survives integer sampling except with probability at most
degree / (range width), so almost-sure rank statements hold in all but a
vanishing fraction of trials.  A floating-point SVD rank is provided only as
a cross-check of the exact path.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

#: Default half-width of the integer sampling range for generic matrices.
#: Large enough that genericity failures are negligible, small enough that
#: fraction-free elimination stays fast.
DEFAULT_ENTRY_BOUND = 2**20

_U64 = (1 << 64) - 1


def spawn_seed(seed: int, *labels: object) -> int:
    """Derive a child seed from ``seed`` and a label path.

    Stable across runs and platforms, so schemes can re-derive any slot or
    receiver specific sample stream from the root seed alone.
    """
    text = repr((int(seed),) + tuple(labels)).encode("utf-8")
    return int.from_bytes(hashlib.sha256(text).digest()[:8], "big") & _U64


def _norm_entry(x: Rational) -> Rational:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    raise TypeError(f"matrix entries must be int or Fraction, got {type(x)!r}")


class Matrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("_data", "_rows", "_cols", "_rank")

    def __init__(self, data: Sequence[Sequence[Rational]], *, rows: int | None = None,
                 cols: int | None = None):
        body = tuple(tuple(_norm_entry(x) for x in row) for row in data)
        self._rows = len(body) if rows is None else rows
        if body:
            self._cols = len(body[0])
        else:
            self._cols = 0 if cols is None else cols
        if cols is not None and body and self._cols != cols:
            raise ValueError("explicit cols disagrees with data")
        if len(body) != self._rows:
            raise ValueError("explicit rows disagrees with data")
        for row in body:
            if len(row) != self._cols:
                raise ValueError("ragged rows")
        self._data = body
        self._rank: int | None = None

    # -- construction -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(tuple((0,) * cols for _ in range(rows)), rows=rows, cols=cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def empty(cls, rows: int) -> "Matrix":
        """A matrix with ``rows`` rows and no columns."""
        return cls(tuple(() for _ in range(rows)), rows=rows, cols=0)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Rational]], rows: int) -> "Matrix":
        if not columns:
            return cls.empty(rows)
        return cls(tuple(tuple(col[i] for col in columns) for i in range(rows)))

    # -- basic access ------------------------------------------------------

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._rows, self._cols)

    def __getitem__(self, key: tuple[int, int]) -> Rational:
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> tuple[Rational, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[Rational, ...]:
        return tuple(row[j] for row in self._data)

    def columns(self) -> list[tuple[Rational, ...]]:
        return [self.column(j) for j in range(self._cols)]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix(tuple(row[c0:c1] for row in self._data[r0:r1]),
                      rows=r1 - r0, cols=c1 - c0)

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(tuple(tuple(row[j] for j in idx) for row in self._data),
                      rows=self._rows, cols=len(idx))

    def transpose(self) -> "Matrix":
        return Matrix(tuple(self.column(j) for j in range(self._cols)),
                      rows=self._cols, cols=self._rows)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    def to_lists(self) -> list[list[Rational]]:
        return [list(row) for row in self._data]

    def to_float(self) -> list[list[float]]:
        return [[float(x) for x in row] for row in self._data]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(a == b for ra, rb in zip(self._data, other._data)
                   for a, b in zip(ra, rb))

    def __hash__(self) -> int:
        return hash((self._rows, self._cols, self._data))

    def __repr__(self) -> str:
        return f"Matrix({self._rows}x{self._cols})"

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self) -> "Matrix":
        return Matrix(tuple(tuple(-x for x in row) for row in self._data),
                      rows=self._rows, cols=self._cols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return Matrix(tuple(tuple(a + b for a, b in zip(ra, rb))
                            for ra, rb in zip(self._data, other._data)),
                      rows=self._rows, cols=self._cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self._cols != other._rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        ocols = other._cols
        out = []
        for arow in self._data:
            acc = [0] * ocols
            for k, a in enumerate(arow):
                if a == 0:
                    continue
                brow = other._data[k]
                if a == 1:
                    for j, b in enumerate(brow):
                        if b != 0:
                            acc[j] += b
                else:
                    for j, b in enumerate(brow):
                        if b != 0:
                            acc[j] += a * b
            out.append(tuple(acc))
        return Matrix(tuple(out), rows=self._rows, cols=ocols)

    # -- rank and nullspace ----------------------------------------------

    def _integer_rows(self) -> list[list[int]]:
        out = []
        for row in self._data:
            dens = [x.denominator for x in row if isinstance(x, Fraction)]
            if dens:
                m = math.lcm(*dens)
                out.append([int(x * m) for x in row])
            else:
                out.append(list(row))
        return out

    def rank(self) -> int:
        """Exact rank via fraction-free (Bareiss) elimination with full pivoting."""
        if self._rank is not None:
            return self._rank
        a = self._integer_rows()
        nr, nc = self._rows, self._cols
        r = 0
        prev = 1
        ncols_active = nc
        while r < nr and r < ncols_active:
            # full pivot search over the remaining submatrix, smallest |entry|
            best = None
            for i in range(r, nr):
                ai = a[i]
                for j in range(r, ncols_active):
                    v = ai[j]
                    if v != 0 and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != r:
                a[pi], a[r] = a[r], a[pi]
            if pj != r:
                for row in a:
                    row[pj], row[r] = row[r], row[pj]
            piv = a[r][r]
            arow = a[r]
            for i in range(r + 1, nr):
                ai = a[i]
                f = ai[r]
                if f == 0:
                    # the f-term vanishes but the piv/prev rescaling must still
                    # happen, or later exact divisions silently floor
                    for j in range(r + 1, ncols_active):
                        ai[j] = ai[j] * piv // prev
                else:
                    for j in range(r + 1, ncols_active):
                        ai[j] = (ai[j] * piv - f * arow[j]) // prev
                    ai[r] = 0
            prev = piv
            r += 1
        self._rank = r
        return r

    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form over the rationals, with pivot columns."""
        m = [[Fraction(x) for x in row] for row in self._data]
        pivots: list[int] = []
        r = 0
        for c in range(self._cols):
            pivot_row = None
            for i in range(r, self._rows):
                if m[i][c] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            pv = m[r][c]
            m[r] = [x / pv for x in m[r]]
            for i in range(self._rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self._rows:
                break
        return Matrix(m, rows=self._rows, cols=self._cols), pivots

    def pivot_columns(self) -> list[int]:
        """Indices of a maximal independent set of columns (echelon pivots)."""
        _, pivots = self.rref()
        return pivots

    def nullspace_basis(self) -> "Matrix":
        """Integer-scaled exact basis of the right nullspace, one column each.

        Column count always equals ``cols - rank``.
        """
        red, pivots = self.rref()
        free = [c for c in range(self._cols) if c not in pivots]
        columns = []
        for f in free:
            vec: list[Fraction] = [Fraction(0)] * self._cols
            vec[f] = Fraction(1)
            for r, pc in enumerate(pivots):
                vec[pc] = -Fraction(red[r, f])
            scale = math.lcm(*(v.denominator for v in vec))
            columns.append([int(v * scale) for v in vec])
        return Matrix.from_columns(columns, self._cols)


def rank(m: Matrix) -> int:
    return m.rank()


def nullspace_basis(m: Matrix) -> Matrix:
    return m.nullspace_basis()


def hstack(*matrices: Matrix) -> Matrix:
    ms = [m for m in matrices]
    if not ms:
        raise ValueError("hstack needs at least one matrix")
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise ValueError("hstack row mismatch")
    data = tuple(tuple(x for m in ms for x in m.row(i)) for i in range(rows))
    return Matrix(data, rows=rows, cols=sum(m.cols for m in ms))


def vstack(*matrices: Matrix) -> Matrix:
    ms = [m for m in matrices]
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise ValueError("vstack column mismatch")
    data = tuple(row for m in ms for row in (m.row(i) for i in range(m.rows)))
    return Matrix(data, rows=sum(m.rows for m in ms), cols=cols)


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    total_r = sum(b.rows for b in blocks)
    total_c = sum(b.cols for b in blocks)
    out = [[0] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            row = b.row(i)
            for j in range(b.cols):
                out[r0 + i][c0 + j] = row[j]
        r0 += b.rows
        c0 += b.cols
    return Matrix(out, rows=total_r, cols=total_c)


def solve_square(a: Matrix, b: Sequence[Rational]) -> tuple[Fraction, ...] | None:
    """Exact solution of a square system, or None when singular."""
    n = a.rows
    if a.cols != n or len(b) != n:
        raise ValueError("solve_square needs a square system")
    aug = hstack(a, Matrix.from_columns([list(b)], n))
    red, pivots = aug.rref()
    if len(pivots) != n or any(p >= n for p in pivots):
        return None
    return tuple(Fraction(red[i, n]) for i in range(n))


# -- generic sampling ---------------------------------------------------------


def _as_rng(seed: int | random.Random) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(int(seed))


def sample_generic(rows: int, cols: int, seed: int | random.Random, *,
                   bound: int = DEFAULT_ENTRY_BOUND) -> Matrix:
    """Draw a generic matrix with i.i.d. uniform integer entries in [-bound, bound]."""
    rng = _as_rng(seed)
    return Matrix(tuple(tuple(rng.randint(-bound, bound) for _ in range(cols))
                        for _ in range(rows)), rows=rows, cols=cols)


@dataclass(frozen=True)
class LiftedChannel:
    """A receiver's channel over T slots plus its block-diagonal lift."""

    receiver: int
    per_slot: tuple[Matrix, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    @property
    def T(self) -> int:
        return len(self.per_slot)

    @property
    def n_antennas(self) -> int:
        return self.per_slot[0].rows

    @property
    def m_antennas(self) -> int:
        return self.per_slot[0].cols

    def slot(self, t: int) -> Matrix:
        return self.per_slot[t]

    @property
    def block_diag(self) -> Matrix:
        if "bd" not in self._cache:
            self._cache["bd"] = block_diag(self.per_slot)
        return self._cache["bd"]

    def with_zeroed_slots(self, slots: Iterable[int]) -> "LiftedChannel":
        dead = set(slots)
        blocks = tuple(Matrix.zeros(b.rows, b.cols) if t in dead else b
                       for t, b in enumerate(self.per_slot))
        return LiftedChannel(self.receiver, blocks)


def lift_channels(cfg, T: int, seed: int, *,
                  bound: int = DEFAULT_ENTRY_BOUND) -> tuple[LiftedChannel, LiftedChannel]:
    """Draw T independent generic channel blocks for each receiver.

    Every block gets its own child seed keyed by (receiver, slot), so a
    scheme holding only the root seed can re-derive any past slot's channel.
    """
    if T < 1:
        raise ValueError("T must be at least 1")
    out = []
    for r, n in ((1, cfg.N1), (2, cfg.N2)):
        blocks = tuple(
            sample_generic(n, cfg.M, spawn_seed(seed, "H", r, t), bound=bound)
            for t in range(T))
        out.append(LiftedChannel(r, blocks))
    return out[0], out[1]


def float_rank(m, rel_tol: float = 2.0**-40) -> int:
    """Floating-point rank: singular values above sigma_max * max(dim) * rel_tol.

    Cross-check only; exact code paths never depend on this.
    """
    import numpy as np

    arr = np.asarray(m.to_float() if isinstance(m, Matrix) else m, dtype=float)
    if arr.size == 0:
        return 0
    sv = np.linalg.svd(arr, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    thresh = sv[0] * max(arr.shape) * rel_tol
    return int((sv > thresh).sum())
