"""Exact likelihood orders of class-function random walks on S_n."""
