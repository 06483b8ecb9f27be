"""MATLANG expressions and graph indistinguishability deciders."""

__version__ = "0.1.0"
