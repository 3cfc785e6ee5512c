from fractions import Fraction
from itertools import combinations

import pytest
import sympy

from bcdof.core import (
    D0, D1, D2, AntennaConfig, CsitModel, DofPoint, Halfspace, MessageSet,
    Region, RegionUnboundedError, contains, eliminate_redundant, region_equals,
    slice_region, vertices,
)
from bcdof.catalog import bc_cm_region, bc_dm_region, bc_pm_region


def oracle_vertices(region: Region) -> set[tuple]:
    """Brute-force oracle built on sympy, independent of the library solver.

    Solves every subset of active planes (halfspace boundaries, nonnegativity
    planes and pinned equalities) and keeps the feasible solutions.
    """
    pinned = dict(region.pinned)
    planes = []
    for h in region.halfspaces:
        planes.append((h.coeffs(), h.b))
    for c in (D1, D2, D0):
        if c not in pinned:
            e = [0, 0, 0]
            e[c] = 1
            planes.append((tuple(e), 0))
    fixed = []
    for c, v in pinned.items():
        e = [0, 0, 0]
        e[c] = 1
        fixed.append((tuple(e), v))
    k = 3 - len(fixed)
    found = set()
    for combo in combinations(planes, k):
        rows = list(combo) + fixed
        a = sympy.Matrix([[sympy.Rational(x) for x in coeffs] for coeffs, _ in rows])
        b = sympy.Matrix([sympy.Rational(rhs) for _, rhs in rows])
        if a.det() == 0:
            continue
        sol = a.LUsolve(b)
        p = tuple(Fraction(sympy.Rational(x).p, sympy.Rational(x).q) for x in sol)
        if all(x >= 0 for x in p) and all(
                sum(c * x for c, x in zip(h.coeffs(), p)) <= h.b
                for h in region.halfspaces):
            found.add(p)
    return found


def points(*tuples):
    return frozenset(DofPoint.of(*t) for t in tuples)


DD_321_VERTICES = points(
    (0, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1),
    (Fraction(12, 7), Fraction(3, 7), 0), (Fraction(3, 2), 0, Fraction(1, 2)))


class TestContains:
    def test_pp_table_point(self):
        region, _ = bc_cm_region(AntennaConfig(5, 3, 2), CsitModel.parse("PP"))
        assert contains(region, DofPoint.of(3, 2, 0))

    def test_origin_always_inside(self):
        for csit in ("PP", "DD", "ND", "NN"):
            region, _ = bc_cm_region(AntennaConfig(3, 2, 2), CsitModel.parse(csit))
            assert contains(region, DofPoint.of(0, 0, 0))

    def test_pn_pm_boundary_violation(self):
        region, _ = bc_pm_region(AntennaConfig(2, 2, 1), CsitModel.parse("PN"))
        # d1/2 + d2 <= 1 fails at (2, 1/2): 1 + 1/2 > 1
        assert not contains(region, DofPoint.of(2, Fraction(1, 2), 0))
        assert contains(region, DofPoint.of(2, 0, 0))

    def test_boundary_counts_as_inside(self):
        region, _ = bc_pm_region(AntennaConfig(2, 2, 1), CsitModel.parse("PN"))
        assert contains(region, DofPoint.of(1, Fraction(1, 2), 0))

    def test_pinned_coordinate_enforced(self):
        region, _ = bc_pm_region(AntennaConfig(2, 2, 1), CsitModel.parse("PN"))
        assert not contains(region, DofPoint.of(1, 0, Fraction(1, 4)))


class TestVertices:
    def test_unit_simplex(self):
        region = Region((Halfspace(1, 1, 1, 1),))
        assert vertices(region) == points((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_dd_321_frozen_and_oracle(self):
        region, _ = bc_cm_region(AntennaConfig(3, 2, 1), CsitModel.parse("DD"))
        assert vertices(region) == DD_321_VERTICES
        assert oracle_vertices(region) == {v.as_tuple() for v in DD_321_VERTICES}

    def test_dm_nd_542_two_dimensional(self):
        region, _ = bc_dm_region(AntennaConfig(5, 4, 2), CsitModel.parse("ND"))
        assert vertices(region) == points(
            (0, 0, 0), (4, 0, 0), (0, 0, 2), (Fraction(10, 3), 0, Fraction(2, 3)))

    def test_matches_oracle_on_catalog_sample(self):
        for mnn in ((4, 3, 2), (5, 4, 2), (6, 3, 1), (2, 2, 2)):
            for csit in ("PP", "PD", "DP", "DD", "NP", "ND", "PN"):
                region, _ = bc_cm_region(AntennaConfig(*mnn), CsitModel.parse(csit))
                assert {v.as_tuple() for v in vertices(region)} == \
                    oracle_vertices(region), (mnn, csit)

    def test_unbounded_raises(self):
        region = Region((Halfspace(1, 0, 0, 2),))  # d2, d0 free
        with pytest.raises(RegionUnboundedError, match="unbounded"):
            vertices(region)

    def test_pinned_unbounded_raises(self):
        region = Region((Halfspace(0, 0, 1, 1),), pinned=((D2, Fraction(0)),))
        with pytest.raises(RegionUnboundedError):
            vertices(region)


class TestEliminateRedundant:
    def test_duplicate_removed(self):
        h = Halfspace(1, 1, 1, 2)
        region = Region((h, Halfspace(1, 1, 1, 2)))
        assert len(eliminate_redundant(region).halfspaces) == 1

    def test_dominated_constraint_removed(self):
        region = Region((Halfspace(1, 0, 0, 2), Halfspace(1, 0, 0, 3)),
                        pinned=((D2, Fraction(0)), (D0, Fraction(0))))
        out = eliminate_redundant(region)
        assert [str(h) for h in out.halfspaces] == ["d1 <= 2"]

    def test_idempotent(self):
        region, _ = bc_cm_region(AntennaConfig(4, 2, 1), CsitModel.parse("DD"))
        once = eliminate_redundant(region)
        assert eliminate_redundant(once).halfspaces == once.halfspaces

    def test_preserves_vertex_set(self):
        for mnn in ((4, 3, 2), (5, 3, 2), (6, 4, 1)):
            region, _ = bc_cm_region(AntennaConfig(*mnn), CsitModel.parse("PP"))
            padded = Region(region.halfspaces + (Halfspace(1, 1, 1, 100),),
                            region.pinned)
            assert vertices(eliminate_redundant(padded)) == vertices(region)


class TestRegionEquals:
    def test_pn_equals_nn_for_private_messages(self):
        cfg = AntennaConfig(4, 3, 2)
        pn, _ = bc_pm_region(cfg, CsitModel.parse("PN"))
        nn, _ = bc_pm_region(cfg, CsitModel.parse("NN"))
        assert region_equals(pn, nn)

    def test_pp_differs_from_nn(self):
        cfg = AntennaConfig(4, 3, 2)
        pp, _ = bc_pm_region(cfg, CsitModel.parse("PP"))
        nn, _ = bc_pm_region(cfg, CsitModel.parse("NN"))
        assert not region_equals(pp, nn)
        # witness: (3, 1) reachable with full CSIT, outside the no-CSIT region
        assert contains(pp, DofPoint.of(3, 1, 0))
        assert not contains(nn, DofPoint.of(3, 1, 0))

    def test_reflexive(self):
        region, _ = bc_cm_region(AntennaConfig(3, 2, 1), CsitModel.parse("DD"))
        assert region_equals(region, region)

    def test_equivalence_on_catalog_triples(self):
        cfg = AntennaConfig(4, 3, 3)
        a, _ = bc_pm_region(cfg, CsitModel.parse("PN"))
        b, _ = bc_pm_region(cfg, CsitModel.parse("DN"))
        c, _ = bc_pm_region(cfg, CsitModel.parse("NN"))
        assert region_equals(a, b) and region_equals(b, c) and region_equals(a, c)
        assert region_equals(b, a)


class TestSlice:
    def test_dd_321_at_d2_zero(self):
        region, _ = bc_cm_region(AntennaConfig(3, 2, 1), CsitModel.parse("DD"))
        sliced = slice_region(region, D2, 0)
        assert vertices(sliced) == points(
            (0, 0, 0), (2, 0, 0), (0, 0, 1), (Fraction(3, 2), 0, Fraction(1, 2)))

    def test_d0_slice_keeps_private_plane_vertices(self):
        region, _ = bc_cm_region(AntennaConfig(4, 3, 2), CsitModel.parse("PP"))
        sliced = slice_region(region, D0, 0)
        plane = {v for v in vertices(region) if v.d0 == 0}
        assert plane <= vertices(sliced)

    def test_infeasible_slice_is_empty(self):
        region, _ = bc_cm_region(AntennaConfig(3, 2, 1), CsitModel.parse("DD"))
        sliced = slice_region(region, D0, 5)
        assert vertices(sliced) == frozenset()
        assert not contains(sliced, DofPoint.of(0, 0, 5))

    def test_coefficients_folded_out(self):
        region, _ = bc_cm_region(AntennaConfig(3, 2, 1), CsitModel.parse("DD"))
        sliced = slice_region(region, D2, 0)
        assert all(h.a2 == 0 for h in sliced.halfspaces)

    def test_negative_value_rejected(self):
        region, _ = bc_cm_region(AntennaConfig(3, 2, 1), CsitModel.parse("DD"))
        with pytest.raises(ValueError):
            slice_region(region, D2, -1)


def hull_contains(verts: list[DofPoint], p: tuple) -> bool:
    """Exact convex hull membership by solving vertex subsets with sympy."""
    n_eq = 4
    for size in range(1, 5):
        for subset in combinations(verts, size):
            a = sympy.Matrix([[sympy.Rational(v[c]) for v in subset]
                              for c in range(3)] + [[1] * size])
            b = sympy.Matrix([sympy.Rational(x) for x in p] + [1])
            sol = sympy.linsolve((a, b))
            for s in sol:
                if not s.free_symbols and all(sympy.Rational(w) >= 0 for w in s):
                    return True
    return False


class TestHRepresentationRoundTrip:
    @pytest.mark.parametrize("mnn,csit", [
        ((3, 2, 1), "DD"), ((4, 3, 2), "PP"), ((4, 3, 2), "ND")])
    def test_halfspaces_and_hull_agree_on_grid(self, mnn, csit):
        region, _ = bc_cm_region(AntennaConfig(*mnn), CsitModel.parse(csit))
        verts = sorted(vertices(region), key=lambda v: v.as_tuple())
        m = mnn[0]
        step = Fraction(1, 4)
        pts = []
        i = Fraction(0)
        while i <= m:
            j = Fraction(0)
            while i + j <= m:
                k = Fraction(0)
                while i + j + k <= m:
                    pts.append((i, j, k))
                    k += 1
                j += 1
            i += step
        for p in pts:
            assert contains(region, DofPoint.of(*p)) == hull_contains(verts, p), p


class TestTypes:
    def test_antenna_validation(self):
        with pytest.raises(ValueError):
            AntennaConfig(0, 1, 1)
        with pytest.raises(ValueError):
            AntennaConfig(1, 1, -2)

    def test_normalization(self):
        cfg, swapped = AntennaConfig(2, 1, 3).normalized()
        assert cfg == AntennaConfig(2, 3, 1) and swapped
        cfg, swapped = AntennaConfig(2, 3, 1).normalized()
        assert not swapped

    def test_csit_parse_and_type(self):
        assert CsitModel.parse("pn").name == "PN"
        assert CsitModel.parse("PN").csit_type == 2
        assert CsitModel.parse("ND").csit_type == 2
        assert CsitModel.parse("DD").csit_type == 1
        assert CsitModel.parse("NN").csit_type == 1
        with pytest.raises(ValueError):
            CsitModel.parse("PX")

    def test_message_set(self):
        assert MessageSet.parse("cm") is MessageSet.CM
        assert MessageSet.PM.pinned_coord == D0
        assert MessageSet.DM.pinned_coord == D2
        assert MessageSet.CM.pinned_coord is None

    def test_dof_point_coercion(self):
        p = DofPoint.of("10/3", 0, "2/3")
        assert p.d1 == Fraction(10, 3) and not p.is_integral
        assert DofPoint.of(1, 2, 0).is_integral

    def test_halfspace_string(self):
        h = Halfspace(Fraction(1, 3), 1, 1, 1)
        assert str(h) == "d1/3 + d2 + d0 <= 1"
        h2 = Halfspace(Fraction(1, 2), 0, Fraction(1, 2), 1)
        assert str(h2) == "d1/2 + d0/2 <= 1"

    def test_halfspace_rejects_all_zero(self):
        with pytest.raises(ValueError):
            Halfspace(0, 0, 0, 1)
