"""Symmetric quotients of group algebras over cyclotomic discrete valuation rings."""

__version__ = "0.1.0"
