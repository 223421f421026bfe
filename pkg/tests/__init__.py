"""
Tests package for the linear-logic semantics workbench.
"""

# This file makes the tests directory a Python package
