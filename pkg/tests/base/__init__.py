"""Tests for the base package."""
