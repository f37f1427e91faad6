"""Test suite for the mmrilp package."""
