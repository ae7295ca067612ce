"""Exact group cohomology for Kleinian groups."""
