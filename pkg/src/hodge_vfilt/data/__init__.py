"""Bundled data files (the self-test corpus)."""
