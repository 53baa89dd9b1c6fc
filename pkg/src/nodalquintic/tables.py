"""Published reference values that the computations are checked against."""
from __future__ import annotations

# p -> (a_p, a_{p^2})
TRACE_TABLE = {
    7: (0, -140), 11: (-116, 1444), 13: (0, 5980), 17: (0, -340), 19: (-20, 6404),
    23: (0, 6900), 29: (60, -95116), 31: (24, -82876), 37: (0, -59940), 41: (-316, -51516),
    47: (0, 187060), 53: (0, -471700), 59: (-1160, -146156), 61: (-1116, -131436),
    67: (0, -907180), 71: (-156, -814316), 73: (0, 27740), 79: (-460, -1520396),
}

IDEAL_THETA_XIS = ("1", "2", "2+w", "3-w", "3", "3+w", "4-w", "4", "4+w", "4+2w", "5", "10")
IDEAL_THETA = {
    1: (2, 0, 0, 0, 0, 4, 4, 2, 0, 0, 10, 20),
    2: (0, 0, 10, 10, 0, 2, 2, 0, 4, 2, 18, 0),
    3: (0, 2, 0, 0, 2, 0, 0, 0, 0, 0, 20, 10),
    4: (0, 0, 2, 2, 0, 2, 2, 0, 4, 10, 0, 18),
    5: (0, 0, 2, 2, 0, 2, 2, 0, 4, 0, 10, 18),
    6: (0, 0, 0, 0, 0, 2, 2, 0, 4, 2, 18, 10),
    7: (0, 0, 0, 0, 0, 2, 2, 0, 4, 2, 18, 10),
    8: (0, 0, 0, 0, 0, 2, 2, 0, 4, 2, 18, 10),
    9: (0, 0, 2, 2, 0, 2, 2, 0, 4, 0, 10, 18),
    10: (0, 0, 2, 2, 0, 2, 2, 0, 4, 0, 10, 18),
    11: (0, 0, 0, 0, 0, 2, 2, 0, 4, 2, 18, 10),
    12: (0, 0, 2, 2, 0, 2, 2, 0, 4, 0, 10, 18),
}

ORDER_THETA_XIS = ("1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11",
                   "11+w", "12-w", "13+w")
_TYPE_A = (2, 0, 0, 2, 10, 2, 20, 0, 2, 20, 28, 4, 4, 44)
_TYPE_B = (2, 0, 0, 2, 26, 0, 8, 0, 2, 0, 20, 14, 16, 20)
_TYPE_C = (2, 0, 0, 2, 26, 0, 8, 0, 2, 0, 20, 16, 14, 16)
ORDER_THETA = {
    1: _TYPE_A, 2: _TYPE_A, 3: _TYPE_A, 4: _TYPE_A,
    5: _TYPE_B, 6: _TYPE_C, 7: _TYPE_C, 8: _TYPE_C,
    9: _TYPE_B, 10: _TYPE_C, 11: _TYPE_B, 12: _TYPE_B,
}

# the printed right-order table lists the rows of O8 and O9 the other way round;
# both right-order computations and the ideal table agree on the computed order
KNOWN_ROW_SWAPS = {"orders": ((8, 9),)}

# Hodge-side decompositions (multiplicities of chi_1..chi_5)
MONOMIAL_DECOMP = (27, 9, 23, 7, 30)
NODE_DECOMP = (27, 13, 17, 7, 28)
JACOBIAN_DECOMP = (5, 1, 6, 1, 6)
KERNEL_DECOMP = (5, 1, 7, 1, 6)
COKERNEL_DECOMP = (5, 5, 1, 1, 4)
HODGE = {"h3_resolved": 4, "h2_resolved": 141, "euler_resolved": 280, "h3_nodal": 104,
         "h4_nodal": 21, "h30": 1, "h21": 1, "defect": 20}

FE_DERIVATIVE = 2.83811389801282
