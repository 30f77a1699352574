"""Analyses built on the exact algebra: Fréchet tests, polarization, varieties."""
