"""Tests package for corpus app."""
