"""Shared fixtures: the bundled worked example and a few small algebras."""

from importlib import resources

import pytest

from gentlecalc.algebra_core import GentleAlgebra, parse_algebra
from gentlecalc.hearts import parse_dissection
from gentlecalc.strings_bands import parse_walk
from gentlecalc.surface_model import surface_of_algebra


def bundled(name: str) -> str:
    return resources.files("gentlecalc").joinpath("data", name).read_text(encoding="utf-8")


@pytest.fixture
def worked():
    """Ten-vertex algebra with finitistic dimension 5."""
    return parse_algebra(bundled("worked_example.txt"), source="worked_example.txt")


@pytest.fixture
def worked_surface(worked):
    return surface_of_algebra(worked)


@pytest.fixture
def alpha(worked):
    """The string a5 a7^- a6 (tops at 6 and 7)."""
    return parse_walk(worked, "a5 a7^- a6")


@pytest.fixture
def kronecker():
    return parse_algebra(bundled("kronecker.txt"), source="kronecker.txt")


@pytest.fixture
def a2():
    return GentleAlgebra.checked(["1", "2"], [("a", "1", "2")])


@pytest.fixture
def a3_rad():
    """1 -> 2 -> 3 with the composite zero."""
    return GentleAlgebra.checked(
        ["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")], [("a", "b")]
    )


@pytest.fixture
def a4_linear():
    """1 -> 2 -> 3 -> 4 without relations."""
    return GentleAlgebra.checked(
        ["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")]
    )


@pytest.fixture
def cyclic3():
    """Oriented 3-cycle with all length-two relations: a once-punctured disk."""
    return GentleAlgebra.checked(
        ["1", "2", "3"],
        [("x", "1", "2"), ("y", "2", "3"), ("z", "3", "1")],
        [("x", "y"), ("y", "z"), ("z", "x")],
    )


@pytest.fixture
def heart(worked):
    """Graded dissection with the simple at 5 shifted and the module 5/4 in place of S4."""
    return parse_dissection(bundled("heart_example.txt"), worked, source="heart_example.txt")


@pytest.fixture
def heart_text():
    return bundled("heart_example.txt")
