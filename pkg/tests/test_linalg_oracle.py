"""Tests for the prime-field linear-algebra oracle."""

import numpy as np
import pytest

from gentlecalc.config import Settings
from gentlecalc.exceptions import InsufficientDepthError, OracleMismatchError
from gentlecalc.linalg_oracle import (
    Representation,
    direct_sum,
    ext_dim_linalg,
    finitistic_dimension_linalg,
    hom_dim,
    homology_dimension,
    injective_module,
    inv_mod_scalar,
    is_exact_sequence,
    jordan_block,
    nullspace_mod,
    projective_cover,
    projective_module,
    rank_mod,
    representation_of,
    resolution_linalg,
    resolution_steps,
    socle_dimension_vector,
    solve_mod,
    syzygy,
    top_dimension_vector,
    verify_ext,
    verify_finitistic,
    verify_many,
    verify_resolution,
    zero_representation,
)
from gentlecalc.resolutions import minimal_projective_resolution
from gentlecalc.strings_bands import BandDatum, Walk, parse_walk


class TestFieldKernels:
    """Test linear algebra over F_p."""

    def test_rank(self):
        assert rank_mod(np.array([[1, 2], [2, 4]]), 7) == 1
        assert rank_mod(np.array([[1, 2], [2, 4]]), 3) == 1
        assert rank_mod(np.array([[1, 1], [1, 3]]), 2) == 1
        assert rank_mod(np.zeros((0, 3), dtype=np.int64), 5) == 0

    def test_nullspace(self):
        a = np.array([[1, 1]])
        basis = nullspace_mod(a, 5)
        assert basis.tolist() == [[4], [1]]
        assert not np.any((a @ basis) % 5)

    def test_solve(self):
        x = solve_mod(np.array([[1, 0], [0, 2]]), np.array([[3], [4]]), 7)
        assert x[:, 0].tolist() == [3, 2]

    def test_solve_inconsistent(self):
        with pytest.raises(OracleMismatchError):
            solve_mod(np.array([[1], [1]]), np.array([[0], [1]]), 7)

    def test_inverse_and_jordan(self):
        assert inv_mod_scalar(3, 7) == 5
        assert jordan_block(2, 3, 7).tolist() == [[2, 1, 0], [0, 2, 1], [0, 0, 2]]

    def test_exact_sequence(self):
        f = np.array([[1], [0]])
        assert is_exact_sequence([f, np.array([[0, 1]])], 5)
        assert not is_exact_sequence([f, np.array([[1, 0]])], 5)
        with pytest.raises(ValueError):
            is_exact_sequence([f, np.array([[1]])], 5)


class TestRepresentations:
    """Test explicit representations of string, band and path modules."""

    def test_relation_must_vanish(self, a3_rad):
        one = np.array([[1]])
        with pytest.raises(ValueError):
            Representation(a3_rad, {"1": 1, "2": 1, "3": 1}, {"a": one, "b": one})

    def test_shape_checked(self, a2):
        with pytest.raises(ValueError):
            Representation(a2, {"1": 1, "2": 1}, {"a": np.zeros((2, 1), dtype=np.int64)})

    def test_string_module(self, worked, alpha):
        rep = representation_of(worked, alpha)
        assert rep.dimension_vector() == {"5": 1, "6": 2, "7": 1}
        assert top_dimension_vector(rep) == {"6": 1, "7": 1}
        assert socle_dimension_vector(rep) == {"5": 1, "6": 1}

    def test_band_module(self, kronecker):
        band = BandDatum(parse_walk(kronecker, "a b^-"), 2, 3)
        rep = representation_of(kronecker, band)
        assert rep.dimension_vector() == {"1": 2, "2": 2}
        assert top_dimension_vector(rep) == {"1": 2}

    def test_band_parameter(self, kronecker):
        w = parse_walk(kronecker, "a b^-")
        with pytest.raises(ValueError):
            representation_of(kronecker, BandDatum(w))
        with pytest.raises(ValueError):
            representation_of(kronecker, BandDatum(w, 1, 7), prime=7)

    def test_path_modules(self, worked):
        """Test projectives and injectives built from path bases."""
        p7 = projective_module(worked, "7")
        assert p7.dimension_vector() == {"4": 1, "5": 2, "6": 1, "7": 1}
        assert top_dimension_vector(p7) == {"7": 1}
        i5 = injective_module(worked, "5")
        assert i5.total_dim == 6
        assert socle_dimension_vector(i5) == {"5": 1}

    def test_direct_sum(self, a2):
        rep = direct_sum([projective_module(a2, "1"), projective_module(a2, "2")])
        assert rep.dimension_vector() == {"1": 1, "2": 2}
        assert zero_representation(a2).is_zero


class TestCoversAndResolutions:
    """Test projective covers, syzygies and resolutions by linear algebra."""

    def test_alpha_resolution(self, worked, alpha):
        found = resolution_linalg(representation_of(worked, alpha), 5)
        assert found == [["6", "7"], ["10", "5", "5"], ["4"], ["3"], ["2"], ["1"]]

    def test_cover(self, worked, alpha):
        cover = projective_cover(representation_of(worked, alpha))
        assert sorted(cover.summands) == ["6", "7"]
        assert cover.module.total_dim == 8

    def test_zero_has_no_cover(self, a2):
        with pytest.raises(ValueError):
            projective_cover(zero_representation(a2))

    def test_projective_syzygy(self, worked):
        assert syzygy(projective_module(worked, "7")).is_zero

    def test_steps_after_vanishing(self, a2):
        steps = resolution_steps(representation_of(a2, Walk("1", "1")), 3)
        assert [s.summands for s in steps] == [["1"], ["2"], [], []]
        with pytest.raises(ValueError):
            resolution_steps(zero_representation(a2), -1)

    def test_kronecker_band_resolution(self, kronecker):
        band = BandDatum(parse_walk(kronecker, "a b^-"), 1, 2)
        assert resolution_linalg(representation_of(kronecker, band), 2) == [["1"], ["2"], []]
        cx = minimal_projective_resolution(kronecker, band)
        assert homology_dimension(kronecker, cx, lam=2) == {0: 2, -1: 0}

    def test_verify_resolution(self, worked, alpha, kronecker, cyclic3):
        assert verify_resolution(worked, alpha)
        assert verify_resolution(kronecker, BandDatum(parse_walk(kronecker, "a b^-"), 1, 2))
        assert verify_resolution(cyclic3, Walk("1", "1"))

    def test_verify_resolution_mismatch(self, worked, alpha):
        """Test that a resolution of the wrong module is caught."""
        wrong = minimal_projective_resolution(worked, Walk("6", "6"))
        with pytest.raises(OracleMismatchError):
            verify_resolution(worked, alpha, wrong)

    def test_verify_resolution_to_depth(self, worked, alpha, cyclic3):
        """Test that periodic tails unroll and finite complexes stay zero to the depth."""
        assert verify_resolution(cyclic3, Walk("1", "1"), depth=6)
        assert verify_resolution(worked, alpha, depth=8)


class TestFinitistic:
    """Test the finitistic dimension from iterated covers of injectives."""

    def test_worked(self, worked):
        assert finitistic_dimension_linalg(worked) == 5

    def test_self_injective(self, cyclic3):
        assert finitistic_dimension_linalg(cyclic3) == 0

    def test_hereditary(self, a4_linear):
        assert finitistic_dimension_linalg(a4_linear) == 1

    def test_verify(self, worked):
        assert verify_finitistic(worked, 5)
        with pytest.raises(OracleMismatchError, match="finitistic"):
            verify_finitistic(worked, 4)


class TestHomAndExt:
    """Test Hom and Ext dimensions."""

    def test_hom_from_projective(self, worked, alpha):
        """Test that Hom(P_v, M) has the dimension of M at v."""
        rep = representation_of(worked, alpha)
        assert hom_dim(projective_module(worked, "6"), rep) == 2
        assert hom_dim(rep, injective_module(worked, "5")) == 1

    def test_ext_a2(self, a2):
        s1 = representation_of(a2, Walk("1", "1"))
        s2 = representation_of(a2, Walk("2", "2"))
        assert ext_dim_linalg(s1, s2, 1) == 1
        assert ext_dim_linalg(s2, s1, 1) == 0
        assert ext_dim_linalg(s1, s1, 0) == 1

    def test_ext_alpha_simple(self, worked, alpha):
        rep = representation_of(worked, alpha)
        s1 = representation_of(worked, Walk("1", "1"))
        assert [ext_dim_linalg(rep, s1, k) for k in range(6)] == [0, 0, 0, 0, 0, 1]

    def test_depth_checked(self, a2):
        s1 = representation_of(a2, Walk("1", "1"))
        with pytest.raises(InsufficientDepthError):
            ext_dim_linalg(s1, s1, -1)
        with pytest.raises(InsufficientDepthError):
            ext_dim_linalg(s1, s1, 3, depth=2)

    def test_verify_ext(self, a2):
        s1, s2 = Walk("1", "1"), Walk("2", "2")
        assert verify_ext(a2, s1, s2, 1, 1)
        with pytest.raises(OracleMismatchError):
            verify_ext(a2, s1, s2, 1, 0)

    def test_verify_many_keeps_order(self):
        results = verify_many([lambda k=k: k * k for k in range(6)], Settings(max_workers=2))
        assert results == [0, 1, 4, 9, 16, 25]
