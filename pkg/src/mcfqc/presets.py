"""Built-in example inputs used by the demo subcommands."""

from __future__ import annotations

import numpy as np

# 5-core crosstalk table for the heatmap demo: rows are input cores, columns
# output cores, every row sums to 1.
DEMO_CROSSTALK_5 = np.array(
    [
        [0.7, 0.1, 0.1, 0.1, 0.0],
        [0.2, 0.5, 0.1, 0.1, 0.1],
        [0.0, 0.3, 0.3, 0.3, 0.1],
        [0.1, 0.2, 0.0, 0.6, 0.1],
        [0.1, 0.1, 0.1, 0.1, 0.6],
    ]
)

# Uniform dephasing values swept by the heatmap demo. The last one leaves the
# completely positive window for this crosstalk table; the demo evaluates the
# map formula regardless and marks the result unphysical.
DEMO_ALPHA_GRID = (0.0, -0.8, -1.0, -1.2)

# Circulant 6 x 6 pair-weight matrix, first row (1/3, 1/4, 1/12, 0, 1/12, 1/4)
# scaled by 1/6. It is doubly nonnegative (eigenvalues 1/6, 1/12, 1/12, 0, 0, 0)
# with every row and column summing to 1/6, yet no entrywise-nonnegative
# factorization exists, so the Dicke-diagonal state it encodes is a
# PPT-entangled (bound entangled) two-qudit state reachable through a
# trace-preserving fibre channel.
BOUND6_M = (
    np.array(
        [
            [4, 3, 1, 0, 1, 3],
            [3, 4, 3, 1, 0, 1],
            [1, 3, 4, 3, 1, 0],
            [0, 1, 3, 4, 3, 1],
            [1, 0, 1, 3, 4, 3],
            [3, 1, 0, 1, 3, 4],
        ],
        dtype=float,
    )
    / 72.0
)
