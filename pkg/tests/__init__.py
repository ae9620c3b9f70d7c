"""Test suite for Myers Verify."""
