"""Tests for klucas."""
