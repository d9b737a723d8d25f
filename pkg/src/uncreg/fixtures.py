"""Published example data and the estimates reported for it.

All distributions are linear ``L(a, b)``. Observation numbers in the
published tables are one-based; index lists here are zero-based.
"""

from __future__ import annotations

from .regress import Dataset
from .udist import Linear

# (y, x) bounds, 15 observations
TABLE1 = (
    ((2, 3), (0, 1)),
    ((23, 24), (7, 8)),
    ((25, 26), (7, 8)),
    ((7, 8), (1, 2)),
    ((13, 14), (3, 4)),
    ((20, 21), (6, 7)),
    ((31, 32), (9, 10)),
    ((46, 47), (15, 16)),
    ((56, 57), (18, 19)),
    ((74, 75), (24, 25)),
    ((92, 93), (30, 31)),
    ((95, 96), (31, 32)),
    ((38, 39), (12, 13)),
    ((59, 60), (19, 20)),
    ((82, 83), (27, 28)),
)

# responses shared by the three models of Table 2
TABLE2_Y = ((10, 12), (14, 16), (18, 20), (22, 24), (26, 28), (30, 32), (34, 36), (38, 40), (42, 44), (46, 48))

TABLE2_X = {
    1: ((0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11), (12, 13), (14, 15), (16, 17), (18, 19)),
    2: ((0, 1), (5, 6), (4, 5), (6, 7), (8, 9), (10, 11), (12, 13), (14, 15), (6, 7), (18, 19)),
    3: ((0, 1), (2, 3), (20, 21), (6, 7), (8, 9), (10, 11), (12, 13), (14, 15), (16, 17), (8, 9)),
}

# observations flagged as outliers (zero-based)
OUTLIERS = {2: (1, 8), 3: (2, 9)}
# model 3 deletion as literally worded in the deletion step (3rd and 9th)
MODEL3_LITERAL_DELETION = (2, 8)

TABLE1_LAD_BETA = (2.4016, 2.9344)
TABLE1_E_HAT = -0.0548
TABLE1_SIGMA2_HAT = 1.3689
TABLE1_NEW_X = (5, 6)
TABLE1_MU = 18.485
TABLE1_LEVEL = 0.90
TABLE1_B = 3.2198
TABLE1_INTERVAL = (15.2652, 21.7948)

TABLE3 = {
    # model: (LAD, LS)
    1: ((10.0, 2.0), (10.0479, 1.995)),
    2: ((10.0, 2.0), (12.3695, 1.8898)),
    3: ((10.0, 2.0), (19.5837, 0.9323)),
}

TABLE4 = {
    2: ((10.0, 2.0), (10.1089, 1.9885)),
    3: ((10.16, 1.9821), (10.1078, 1.9880)),
}


def _pairs(rows):
    return Dataset.from_pairs([(Linear(*y), Linear(*x)) for y, x in rows])


def table1() -> Dataset:
    return _pairs(TABLE1)


def table2(model: int) -> Dataset:
    return _pairs(zip(TABLE2_Y, TABLE2_X[model]))
