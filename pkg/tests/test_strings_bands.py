"""Tests for walks, strings and bands."""

import random

import pytest

from gentlecalc.exceptions import InvalidWalkError, ParseError, UnknownReferenceError
from gentlecalc.strings_bands import (
    BandDatum,
    Letter,
    Walk,
    band_dimension_vector,
    canonical_band,
    canonical_string,
    checked_band,
    enumerate_bands,
    enumerate_strings,
    injective_string,
    is_band,
    is_string,
    least_rotation,
    make_walk,
    parse_string,
    parse_walk,
    projective_string,
    rotate,
    string_dimension_vector,
    walk_vertices,
)


class TestParseWalk:
    """Test the walk text syntax."""

    def test_mixed_walk(self, worked):
        w = parse_walk(worked, "a5 a7^- a6")
        assert w.letters == (Letter("a5"), Letter("a7", True), Letter("a6"))
        assert (w.start, w.end) == ("6", "6")
        assert str(w) == "a5 a7^- a6"

    def test_inverse_spellings(self, worked):
        """Test that ^-, ^-1 and ^{-1} all mean the formal inverse."""
        for text in ("a7^-", "a7^-1", "a7^{-1}"):
            assert parse_walk(worked, text).letters == (Letter("a7", True),)

    def test_trivial_walk(self, worked):
        w = parse_walk(worked, "e10")
        assert w.is_trivial
        assert (w.start, w.end) == ("10", "10")

    def test_empty(self, worked):
        with pytest.raises(ParseError):
            parse_walk(worked, "   ")

    def test_unknown_arrow(self, worked):
        with pytest.raises(UnknownReferenceError):
            parse_walk(worked, "a5 a99")

    def test_letters_must_meet(self, worked):
        with pytest.raises(InvalidWalkError):
            parse_walk(worked, "a5 a6")

    def test_no_backtracking(self, worked):
        with pytest.raises(InvalidWalkError):
            parse_walk(worked, "a5 a5^-")

    def test_parse_string_rejects_relation(self, worked):
        """Test that a walk through a relation is a walk but not a string."""
        assert not is_string(worked, parse_walk(worked, "a5 a4"))
        with pytest.raises(InvalidWalkError):
            parse_string(worked, "a5 a4")


class TestStringsAndBands:
    """Test the string and band predicates."""

    def test_inverse_relation_is_not_string(self, worked):
        """Test that a relation read backwards is also forbidden."""
        assert not is_string(worked, parse_walk(worked, "a4^- a5^-"))

    def test_closed_string_is_band(self, worked, alpha):
        """Test that a5 a7^- a6 is a string and also closes up to a band."""
        assert is_string(worked, alpha)
        assert is_band(worked, alpha)

    def test_direct_cycle_is_not_band(self, cyclic3):
        w = parse_walk(cyclic3, "x")
        assert not is_band(cyclic3, w)

    def test_kronecker_band(self, kronecker):
        w = parse_walk(kronecker, "a b^-")
        assert is_band(kronecker, w)
        assert not is_band(kronecker, make_walk(kronecker, w.letters + w.letters))

    def test_rotate(self, kronecker):
        w = parse_walk(kronecker, "a b^-")
        assert str(rotate(kronecker, w, 1)) == "b^- a"
        with pytest.raises(InvalidWalkError):
            rotate(kronecker, parse_walk(kronecker, "a"), 1)

    def test_walk_vertices(self, worked, alpha):
        assert walk_vertices(worked, alpha) == ["6", "5", "7", "6"]

    def test_checked_band(self, kronecker, worked):
        band = checked_band(kronecker, parse_walk(kronecker, "a b^-"), m=2, lam=3)
        assert band.m == 2
        with pytest.raises(InvalidWalkError):
            checked_band(worked, parse_walk(worked, "a5"))

    def test_band_datum_validation(self, kronecker):
        w = parse_walk(kronecker, "a b^-")
        with pytest.raises(ValueError):
            BandDatum(w, m=0)
        with pytest.raises(ValueError):
            BandDatum(w, lam=0)


class TestCanonicalForms:
    """Test canonical representatives."""

    def test_canonical_string_picks_smaller_direction(self, worked):
        w = parse_walk(worked, "a6^- a7")
        assert canonical_string(worked, w) == canonical_string(worked, w.inverse())

    def test_least_rotation(self):
        assert least_rotation([3, 1, 2]) == 1
        assert least_rotation([1, 1, 1]) == 0
        assert least_rotation([2, 1, 2, 1, 1]) == 3

    def test_canonical_band_invariant(self, kronecker):
        """Test that rotations and inversion give one canonical band."""
        w = parse_walk(kronecker, "a b^-")
        forms = {
            canonical_band(kronecker, w),
            canonical_band(kronecker, rotate(kronecker, w, 1)),
            canonical_band(kronecker, w.inverse()),
        }
        assert len(forms) == 1
        assert str(forms.pop()) == "a b^-"


class TestEnumeration:
    """Test string and band enumeration."""

    def test_kronecker_strings(self, kronecker):
        walks = [str(w) for w in enumerate_strings(kronecker, 2)]
        assert walks == ["e1", "e2", "a", "b", "a b^-", "a^- b"]

    def test_kronecker_bands(self, kronecker):
        assert [str(w) for w in enumerate_bands(kronecker, 4)] == ["a b^-"]

    def test_a2_strings(self, a2):
        assert len(enumerate_strings(a2, 5)) == 3

    def test_negative_length(self, a2):
        with pytest.raises(ValueError):
            enumerate_strings(a2, -1)

    def test_strings_are_canonical_and_distinct(self, worked):
        walks = enumerate_strings(worked, 4)
        assert len(set(walks)) == len(walks)
        for w in walks:
            assert is_string(worked, w)
            assert canonical_string(worked, w) == w

    def test_random_walks_classified(self, worked):
        """Test that random strings land in the enumeration up to inversion."""
        rng = random.Random(7)
        known = set(enumerate_strings(worked, 3))
        for _ in range(50):
            v = rng.choice(worked.vertices)
            w = Walk(v, v)
            for _ in range(rng.randint(0, 3)):
                options = [Letter(a) for a in worked.out_arrows(w.end)]
                options += [Letter(a, True) for a in worked.in_arrows(w.end)]
                options = [
                    l
                    for l in options
                    if is_string(worked, Walk(w.start, l.target(worked), w.letters + (l,)))
                ]
                if not options:
                    break
                l = rng.choice(options)
                w = Walk(w.start, l.target(worked), w.letters + (l,))
            assert canonical_string(worked, w) in known


class TestProjectivesAndInjectives:
    """Test the strings of indecomposable projectives and injectives."""

    def test_projective_string(self, worked):
        w = projective_string(worked, "7")
        assert str(w) == "a5^- a6^- a7 a4"
        assert string_dimension_vector(worked, w) == {"4": 1, "5": 2, "6": 1, "7": 1}

    def test_uniserial_projective(self, worked):
        assert str(projective_string(worked, "9")) == "a9 a8 a7 a4"

    def test_simple_projective(self, worked):
        assert projective_string(worked, "1").is_trivial

    def test_injective_string(self, worked):
        assert str(injective_string(worked, "6")) == "a6"
        assert str(injective_string(worked, "1")) == "a1"

    def test_band_dimension_vector(self, kronecker):
        w = parse_walk(kronecker, "a b^-")
        assert band_dimension_vector(kronecker, w) == {"1": 1, "2": 1}
        assert band_dimension_vector(kronecker, w, m=3) == {"1": 3, "2": 3}
