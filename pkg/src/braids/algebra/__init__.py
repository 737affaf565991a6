"""Braid-group algebra: words, normal forms, certified series elements and the group ring."""
