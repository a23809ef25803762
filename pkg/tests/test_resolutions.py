"""Tests for homotopy strings, complexes and resolutions."""

import math

import pytest

from gentlecalc.exceptions import InvalidWalkError
from gentlecalc.resolutions import (
    INFINITE,
    band_complex_of,
    cohomology_completion,
    complex_of,
    d_squared_zero,
    endpoint_co_weights,
    endpoint_weights,
    finitistic_dimension,
    format_complex,
    global_dimension,
    homology_completion,
    homotopy_band,
    injective_dimension,
    minimal_injective_resolution,
    minimal_projective_resolution,
    projective_dimension,
    segments_of,
    structured_complex,
)
from gentlecalc.strings_bands import BandDatum, Walk, parse_walk


class TestHomologyCompletion:
    """Test completion of strings to homotopy strings."""

    def test_alpha(self, worked, alpha):
        hs = homology_completion(worked, alpha)
        assert str(hs) == "(a10^-)(a5)(a7^-)(a6 a5)(a4)(a3)(a2)(a1)"
        assert hs.vertices == ["10", "6", "5", "7", "5", "4", "3", "2", "1"]
        assert hs.degrees() == [-1, 0, -1, 0, -1, -2, -3, -4, -5]
        assert hs.is_finite

    def test_simple_with_two_branches(self, worked):
        """Test that a simple at a vertex with two outgoing arrows opens both ways."""
        hs = homology_completion(worked, Walk("6", "6"))
        assert str(hs) == "(a1^-)(a2^-)(a3^-)(a4^-)(a5^-)(a10)"
        assert hs.vertices == ["1", "2", "3", "4", "5", "6", "10"]
        assert hs.degrees() == [-5, -4, -3, -2, -1, 0, -1]

    def test_extends_by_one_arrow(self, a4_linear):
        """Test that a direct string is completed by a single continuation arrow."""
        hs = homology_completion(a4_linear, parse_walk(a4_linear, "a"))
        assert str(hs) == "(a b)"
        assert hs.anchor == "1"
        assert hs.degrees() == [0, -1]

    def test_projective_needs_nothing(self, cyclic3):
        """Test that a projective string completes to itself."""
        hs = homology_completion(cyclic3, parse_walk(cyclic3, "z"))
        assert hs.segments == ()
        assert hs.anchor == "3"
        assert hs.is_finite

    def test_periodic_tail(self, cyclic3):
        hs = homology_completion(cyclic3, Walk("1", "1"))
        assert not hs.is_finite
        assert hs.left_cycle == ("x", "y", "z")
        assert hs.right_cycle == ()

    def test_not_a_string(self, worked):
        with pytest.raises(InvalidWalkError):
            homology_completion(worked, parse_walk(worked, "a5 a4"))

    def test_segments(self, worked, alpha):
        segments = segments_of(worked, alpha)
        assert [s.inverse for s in segments] == [False, True, False]
        assert [s.path.arrows for s in segments] == [("a5",), ("a7",), ("a6",)]

    def test_cohomology_completion(self, worked, alpha):
        assert str(cohomology_completion(worked, alpha)) == "(a8)(a6 a5)(a7^-)(a6)"


class TestComplexes:
    """Test complexes of projectives built from homotopy strings."""

    def test_alpha_resolution(self, worked, alpha):
        cx = minimal_projective_resolution(worked, alpha)
        assert cx.degrees == [0, -1, -2, -3, -4, -5]
        assert cx.multiset(0) == ["6", "7"]
        assert cx.multiset(-1) == ["10", "5", "5"]
        assert [cx.multiset(d) for d in (-2, -3, -4, -5)] == [["4"], ["3"], ["2"], ["1"]]
        assert cx.length == 5
        assert d_squared_zero(worked, cx)

    def test_alpha_matrix(self, worked, alpha):
        """Test the differential out of degree -1 and the printout."""
        cx = minimal_projective_resolution(worked, alpha)
        grid = cx.matrix(-1)
        assert len(grid) == 3 and len(grid[0]) == 2
        assert [e.path.arrows for e in grid[0][0]] == [("a10",)]
        assert [e.path.arrows for e in grid[2][1]] == [("a6", "a5")]
        assert grid[0][1] == []
        lines = format_complex(cx)
        assert lines[0] == "deg 0: P6 + P7"
        assert lines[1] == "deg -1: P10 + P5 + P5"
        assert structured_complex(cx)[0] == "term degree=0 summands=6,7"

    def test_linear_resolution(self, a4_linear):
        cx = minimal_projective_resolution(a4_linear, parse_walk(a4_linear, "a"))
        assert cx.multiset(0) == ["1"]
        assert cx.multiset(-1) == ["3"]
        assert [str(e.path) for e in cx.entries] == ["a*b"]

    def test_periodic_resolution(self, cyclic3):
        cx = minimal_projective_resolution(cyclic3, Walk("1", "1"))
        assert cx.length == INFINITE
        assert cx.depth == 6
        assert [cx.multiset(-k) for k in range(7)] == [
            ["1"],
            ["2"],
            ["3"],
            ["1"],
            ["2"],
            ["3"],
            ["1"],
        ]
        assert cx.periods[0].start == -1
        assert cx.periods[0].length == 3
        assert format_complex(cx)[-1] == "period: start=-1 len=3"
        assert d_squared_zero(cyclic3, cx)

    def test_explicit_depth(self, cyclic3):
        cx = complex_of(cyclic3, homology_completion(cyclic3, Walk("1", "1")), depth=2)
        assert cx.degrees == [0, -1, -2]

    def test_shift(self, worked, alpha):
        cx = minimal_projective_resolution(worked, alpha).shift(2)
        assert cx.degrees == [-2, -3, -4, -5, -6, -7]
        assert cx.multiset(-2) == ["6", "7"]

    def test_injective_resolution(self, worked, alpha):
        cx = minimal_injective_resolution(worked, alpha)
        assert cx.injective
        assert cx.multiset(0) == ["5", "6"]
        assert cx.multiset(1) == ["7", "7"]
        assert cx.multiset(2) == ["8"]
        assert cx.length == 2
        assert format_complex(cx)[0] == "deg 2: I8"


class TestBandComplexes:
    """Test two-term complexes of band modules."""

    def test_kronecker_band(self, kronecker):
        band = BandDatum(parse_walk(kronecker, "a b^-"), 1, 2)
        cx = minimal_projective_resolution(kronecker, band)
        assert cx.multiset(0) == ["1"]
        assert cx.multiset(-1) == ["2"]
        assert sorted(e.tag for e in cx.entries) == ["I", "J"]
        assert "d(-1) = [b+a[J(2,1)]]" in format_complex(cx)
        assert d_squared_zero(kronecker, cx)

    def test_band_multiplicity(self, kronecker):
        band = BandDatum(parse_walk(kronecker, "a b^-"), 3, 5)
        cx = band_complex_of(kronecker, band)
        assert all(s.mult == 3 for _, summands in cx.terms for s in summands)
        assert cx.band == (3, 5)
        assert format_complex(cx)[0] == "deg 0: P1^3"

    def test_homotopy_band_rotation(self, kronecker):
        w, segments = homotopy_band(kronecker, parse_walk(kronecker, "a b^-"))
        assert str(w) == "b^- a"
        assert [s.inverse for s in segments] == [True, False]

    def test_not_a_band(self, worked):
        with pytest.raises(InvalidWalkError):
            homotopy_band(worked, parse_walk(worked, "a5"))

    def test_band_dimensions(self, kronecker):
        band = BandDatum(parse_walk(kronecker, "a b^-"))
        assert projective_dimension(kronecker, band) == 1
        assert injective_dimension(kronecker, band) == 1


class TestDimensions:
    """Test homological dimensions read off endpoints and polygons."""

    def test_alpha_weights(self, worked, alpha):
        assert endpoint_weights(worked, alpha) == [1, 5]
        assert endpoint_co_weights(worked, alpha) == [2, 0]
        assert projective_dimension(worked, alpha) == 5
        assert injective_dimension(worked, alpha) == 2

    def test_weights_match_resolutions(self, worked):
        """Test that endpoint weights agree with resolution lengths on every simple."""
        for v in worked.vertices:
            w = Walk(v, v)
            projective = minimal_projective_resolution(worked, w)
            injective = minimal_injective_resolution(worked, w)
            assert projective_dimension(worked, w) == projective.length
            assert injective_dimension(worked, w) == injective.length

    def test_puncture_gives_infinity(self, cyclic3):
        assert projective_dimension(cyclic3, Walk("1", "1")) == INFINITE
        assert math.isinf(global_dimension(cyclic3))

    def test_global_dimension(self, worked, a3_rad, a4_linear):
        assert global_dimension(worked) == 5
        assert global_dimension(a3_rad) == 2
        assert global_dimension(a4_linear) == 1

    def test_finitistic_worked(self, worked):
        report = finitistic_dimension(worked)
        assert report.value == 5
        assert report.injective_witness == "6"
        assert report.chain_witness == ("a5", "a4", "a3", "a2", "a1")
        assert report.polygon_witness == "P1"

    def test_finitistic_self_injective(self, cyclic3):
        """Test that a punctured disk has finitistic dimension 0."""
        report = finitistic_dimension(cyclic3)
        assert report.value == 0
        assert report.chain_witness == ()
        assert report.polygon_witness == "P2"
