"""Tests for the gentle-calculus package."""
