"""Test suite for bergman-regularity."""
