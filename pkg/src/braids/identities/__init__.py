"""Executable identity checks over free groups, braid groups and their group rings."""
