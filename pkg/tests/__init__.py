"""Test suite for asmgrid."""
