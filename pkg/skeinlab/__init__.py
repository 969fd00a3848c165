"""Exact skein theory for group-action tensor-network models."""

__version__ = "0.1.0"
