"""Exact, certificate-producing checks for factorization properties of
integral domains built to separate atomic-type and Furstenberg-type classes."""

__version__ = "0.1.0"
