"""Exact b-functions, V-filtrations, higher multiplier ideals and Hodge ideals.

The package computes, for a polynomial hypersurface D = div(f), the
Bernstein-Sato polynomial of f, membership in the Kashiwara-Malgrange
V-filtration of the graph pushforward, the higher multiplier ideals and
Hodge ideals of αD inside finite degree windows, and the flat family over
P^1 whose fiber at infinity recovers the higher multiplier ideal.
"""

__version__ = "0.1.0"
