"""Unit test package for qlab."""
