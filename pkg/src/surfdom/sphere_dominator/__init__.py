"""Dominating sets of sphere triangulations: grid pullback and cylinder recursion."""
