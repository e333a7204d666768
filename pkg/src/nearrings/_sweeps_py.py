"""Pure-Python (numpy) sweep kernels; fallback for the compiled extension.

Counterexamples are reported first in rank-lexicographic (x, y, z) order,
identical to the compiled kernels.
"""

from __future__ import annotations

import numpy as np


def assoc_counterexample(mul: np.ndarray):
    """First (x, y, z) in rank-lex order with (xy)z != x(yz), or None."""
    n = mul.shape[0]
    for x in range(n):
        lhs = mul[mul[x], :]   # [y, z] -> mul[mul[x,y], z]
        rhs = mul[x][mul]      # [y, z] -> mul[x, mul[y,z]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            y, z = bad[0]
            return (x, int(y), int(z))
    return None


def ldist_counterexample(mul: np.ndarray, add: np.ndarray):
    """First (x, y, z) with x(y+z) != xy + xz, or None."""
    n = mul.shape[0]
    for x in range(n):
        mx = mul[x]
        lhs = mx[add]                            # [y, z] -> mul[x, add[y,z]]
        rhs = add[mx[:, None], mx[None, :]]      # [y, z] -> add[mul[x,y], mul[x,z]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            y, z = bad[0]
            return (x, int(y), int(z))
    return None
