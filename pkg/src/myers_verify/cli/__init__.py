"""Command-line interface for Myers Verify."""
