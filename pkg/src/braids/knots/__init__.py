"""Closures, diagrams, equivalence witnesses and knot invariants."""
