"""Domination in Cartesian products of graphs."""
