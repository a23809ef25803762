"""
Setup script for gentle-calculus package.
Modern Python projects use pyproject.toml, but setup.py is kept for compatibility.
"""
from setuptools import setup

# Configuration is in pyproject.toml
setup()
