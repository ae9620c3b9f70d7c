"""Computational services for Myers Verify."""
