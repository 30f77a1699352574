"""Version string recorded in every command report."""

__version__ = "0.1.0"
