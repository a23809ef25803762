"""Tests for Ext spaces, intersection data and Yoneda sequences."""

import pytest

from gentlecalc.algebra_core import isomorphic
from gentlecalc.config import Settings
from gentlecalc.exceptions import GentleCalcError, UnsupportedProductError
from gentlecalc.ext_yoneda import (
    BOUNDARY,
    INTERIOR,
    PUNCTURE_KIND,
    IntersectionDatum,
    clockwise_order,
    euler_defect,
    ext_dimension,
    ext_space,
    ext_table,
    factor_chain,
    format_ext_table,
    hom_dimension,
    projective_arc_algebra,
    yoneda_extension,
    yoneda_polygon,
    yoneda_product,
)
from gentlecalc.linalg_oracle import verify_ext
from gentlecalc.strings_bands import BandDatum, Walk, parse_walk
from gentlecalc.surface_model import curve_to_string, string_to_curve, surface_of_algebra

S1 = Walk("1", "1")


@pytest.fixture
def weight5(worked, alpha):
    """The boundary datum from alpha to the simple at 1."""
    (datum,) = ext_space(worked, alpha, S1, 5).data
    return datum


class TestIntersectionDatum:
    """Test datum validation and weight membership."""

    def test_validation(self, worked_surface, alpha):
        c = string_to_curve(worked_surface, alpha)
        with pytest.raises(ValueError):
            IntersectionDatum(BOUNDARY, "P1", c, c, -1)
        with pytest.raises(ValueError):
            IntersectionDatum(INTERIOR, "x0/3", c, c, 2)
        with pytest.raises(ValueError):
            IntersectionDatum(PUNCTURE_KIND, "P1", c, c, 1)

    def test_family_weights(self, worked_surface, alpha):
        c = string_to_curve(worked_surface, alpha)
        family = IntersectionDatum(PUNCTURE_KIND, "P1", c, c, 1, period=3)
        assert family.weights(2) == [1, 4, 7]
        assert family.has_weight(7)
        assert not family.has_weight(5)
        assert str(family) == "(puncture@P1, 1+3m)"

    def test_clockwise_order_identical(self, worked_surface, alpha):
        c = string_to_curve(worked_surface, alpha)
        assert clockwise_order(c, c) == 0


class TestExtSpaces:
    """Test Ext dimensions read off the surface."""

    def test_boundary_extension(self, worked, alpha, weight5):
        assert [ext_dimension(worked, alpha, S1, w) for w in range(7)] == [0, 0, 0, 0, 0, 1, 0]
        assert weight5.kind == BOUNDARY
        assert weight5.location == "P1"
        assert (weight5.source_edge, weight5.target_edge) == (1, 6)

    def test_endomorphisms(self, worked, alpha):
        """Test that alpha has the identity and one interior endomorphism."""
        space = ext_space(worked, alpha, alpha, 0)
        assert space.dimension == 2
        assert space.corrections == ("identity",)
        assert [d.kind for d in space.data] == [INTERIOR]
        assert hom_dimension(worked, alpha, alpha) == 2

    def test_interior_self_extension(self, worked, alpha):
        space = ext_space(worked, alpha, alpha, 1)
        assert [(d.kind, d.weight) for d in space.data] == [(INTERIOR, 1)]

    def test_negative_degree(self, worked, alpha):
        with pytest.raises(ValueError):
            ext_space(worked, alpha, alpha, -1)

    def test_band_with_itself(self, kronecker):
        """Test that a band of a homogeneous tube has one endomorphism and one self-extension."""
        band = BandDatum(parse_walk(kronecker, "a b^-"), 1, 2)
        assert ext_space(kronecker, band, band, 0).labels == ["identity"]
        assert ext_space(kronecker, band, band, 1).labels == ["ar-sequence"]
        assert ext_dimension(kronecker, band, band, 2) == 0

    def test_bands_with_different_parameters(self, kronecker):
        w = parse_walk(kronecker, "a b^-")
        first, second = BandDatum(w, 1, 2), BandDatum(w, 1, 3)
        assert ext_dimension(kronecker, first, second, 0) == 0
        assert ext_dimension(kronecker, first, second, 1) == 0

    def test_band_multiplicity_rejected(self, kronecker):
        band = BandDatum(parse_walk(kronecker, "a b^-"), 2, 2)
        with pytest.raises(GentleCalcError):
            ext_dimension(kronecker, band, band, 0)

    def test_puncture_family(self, cyclic3):
        """Test that simples around a puncture extend periodically."""
        s1, s2 = Walk("1", "1"), Walk("2", "2")
        assert [ext_dimension(cyclic3, s1, s2, w) for w in range(8)] == [0, 1, 0, 0, 1, 0, 0, 1]
        assert [ext_dimension(cyclic3, s1, s1, w) for w in range(7)] == [1, 0, 0, 1, 0, 0, 1]
        (datum,) = ext_space(cyclic3, s1, s2, 4).data
        assert (datum.kind, datum.weight, datum.period) == (PUNCTURE_KIND, 1, 3)

    def test_puncture_family_against_oracle(self, cyclic3):
        s1, s2 = Walk("1", "1"), Walk("2", "2")
        for w in range(5):
            assert verify_ext(cyclic3, s1, s2, w, ext_dimension(cyclic3, s1, s2, w))

    def test_boundary_against_oracle(self, worked, alpha):
        for w in (0, 4, 5):
            assert verify_ext(worked, alpha, S1, w, ext_dimension(worked, alpha, S1, w))

    def test_table(self, worked, alpha):
        table = ext_table(worked, alpha, S1, 5, Settings(max_workers=2))
        assert sorted(table) == [0, 1, 2, 3, 4, 5]
        rows = format_ext_table(table)
        assert rows[0] == "ext^0 = 0  []"
        assert rows[5] == "ext^5 = 1  [(boundary@P1, 5)]"


class TestYoneda:
    """Test Yoneda sequences, products and factorizations."""

    def test_extension_terms(self, worked, worked_surface, weight5):
        seq = yoneda_extension(worked_surface, weight5)
        assert [str(w) for w in seq.terms] == [
            "e1",
            "a1",
            "a2",
            "a3",
            "a4",
            "a5 a7^- a6 a5",
            "a5 a7^- a6",
        ]
        assert len(seq.maps) == 6
        assert len(seq.middle) == 5
        assert euler_defect(worked, seq) == {}

    def test_polygon(self, worked_surface, weight5):
        polygon = yoneda_polygon(worked_surface, weight5)
        assert len(polygon) == 7
        assert polygon[0] == weight5.target
        assert polygon[-1] == weight5.source

    def test_factor_chain(self, worked_surface, weight5):
        chain = factor_chain(worked_surface, weight5)
        assert [d.weight for d in chain] == [1, 1, 1, 1, 1]
        middle = [d.target.arcs for d in chain[:-1]]
        assert middle == [("5",), ("4",), ("3",), ("2",)]
        assert chain[0].source == weight5.source
        assert chain[-1].target == weight5.target

    def test_product_of_chain_links(self, worked_surface, weight5):
        chain = factor_chain(worked_surface, weight5)
        product = yoneda_product(worked_surface, chain[0], chain[1])
        assert product.datum.weight == 2
        walks = [str(curve_to_string(worked_surface, c)) for c in product.polygon]
        assert walks == ["e4", "a4", "a5 a7^- a6 a5", "a5 a7^- a6"]

    def test_product_needs_common_curve(self, worked_surface, weight5):
        chain = factor_chain(worked_surface, weight5)
        with pytest.raises(UnsupportedProductError):
            yoneda_product(worked_surface, chain[0], chain[2])

    def test_interior_has_no_polygon(self, worked, worked_surface, alpha):
        (datum,) = ext_space(worked, alpha, alpha, 1).data
        with pytest.raises(UnsupportedProductError):
            yoneda_extension(worked_surface, datum)
        with pytest.raises(UnsupportedProductError):
            factor_chain(worked_surface, datum)

    def test_puncture_extension(self, cyclic3):
        """Test the short exact sequence 0 -> S2 -> P1 -> S1 -> 0 around the puncture."""
        pc = surface_of_algebra(cyclic3)
        (datum,) = ext_space(cyclic3, Walk("1", "1"), Walk("2", "2"), 1).data
        seq = yoneda_extension(pc, datum)
        assert [str(w) for w in seq.terms] == ["e2", "x", "e1"]
        assert euler_defect(cyclic3, seq) == {}
        with pytest.raises(UnsupportedProductError):
            yoneda_extension(pc, datum, omega=2)


class TestProjectiveArcAlgebra:
    """Test the algebra read off the projective arcs against the coordinate algebra."""

    @pytest.mark.parametrize(
        "name", ["worked", "kronecker", "cyclic3", "a2", "a3_rad", "a4_linear"]
    )
    def test_isomorphic_to_coordinate_algebra(self, request, name):
        algebra = request.getfixturevalue(name)
        assert isomorphic(projective_arc_algebra(surface_of_algebra(algebra)), algebra)

    def test_radical_square_zero_line(self, a3_rad):
        """Test that the two arrows sit at different points and compose to zero."""
        quiver = projective_arc_algebra(surface_of_algebra(a3_rad))
        assert [(a.name, a.source, a.target) for a in quiver.arrows] == [
            ("P3.1", "1", "2"),
            ("P4.1", "2", "3"),
        ]
        assert quiver.relations == (("P3.1", "P4.1"),)

    def test_line_without_relations(self, a4_linear):
        """Test that all projective arcs share one point and paths compose."""
        quiver = projective_arc_algebra(surface_of_algebra(a4_linear))
        assert len(quiver.arrows) == 3
        assert len({a.name.split(".")[0] for a in quiver.arrows}) == 1
        assert quiver.relations == ()
