"""Exact algebra: group elements, measures, subgroups and sparse polynomials."""
