"""Exact p-adic computation of unconventional limit sets of contractive maps on Z_p."""
