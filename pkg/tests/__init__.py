"""Test suite for routefront."""
