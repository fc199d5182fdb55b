"""Cohomology, Massey products and homotopy ranks of moment-angle complexes."""
