"""Clustered-graph drawing toolkit: constructions with certified crossing
ledgers and a region-region-only feasibility test."""

__all__ = ["model", "embedding", "constraints", "spqr", "rr", "draw", "generators"]
