"""Tests for progrand."""
