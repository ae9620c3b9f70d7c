"""Workers module for Myers Verify."""
