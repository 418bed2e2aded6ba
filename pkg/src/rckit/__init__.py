"""rckit: exact tools for range-compatible additive maps on matrix spaces.

The package decides, for linear subspaces of symmetric or alternating matrix
spaces over small finite fields, which additive maps into column vectors are
range-compatible (F(s) always lands in the column space of s), which of those
are evaluations at a fixed vector, and which extend to the full matrix space.
Exhaustive verification suites and counterexample builders sit on top.
"""

from __future__ import annotations

__version__ = "0.1.0"
