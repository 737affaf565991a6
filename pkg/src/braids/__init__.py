"""Exact braid-group computation, certified series elements and knot invariants."""
