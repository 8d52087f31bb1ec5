"""Exact algebra: integer linear algebra, posets, character tables, towers and sandpiles."""
