"""Exact computations with lattices over integral group rings."""
