"""Test suite for reeskit."""
