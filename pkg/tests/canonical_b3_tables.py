"""Expected canonical-basis coefficient tables for B_3 (21 rows each).

Column order per group: V = (g1_a1, g12_a1, g2_a1, g21_a1),
W = (g1_a2, g12_a2, g2_a2, g21_a2); rows are the symmetrized KL pairs
(i, j), i <= j, in the reduced-word order.  Entries built from the repeated
factors: b = 1+q, s = q^2+q+1, u = q^2+4q+1, f5 = 5q^2+6q+5,
f6 = q^2+6q+1, g = q^4+3q^3+8q^2+3q+1, v = q^4+5q^3+12q^2+5q+1,
w = 3q^4+6q^3+14q^2+6q+3.
"""

from qkron.coeffs import RatFuncQ

P = RatFuncQ.from_q_coeffs
E = RatFuncQ.from_int
qp, h = P([0, 1]), RatFuncQ.q_power(1)
b, s, u = P([1, 1]), P([1, 1, 1]), P([1, 4, 1])
f5, f6 = P([5, 6, 5]), P([1, 6, 1])
g, v, w = P([1, 3, 8, 3, 1]), P([1, 5, 12, 5, 1]), P([3, 6, 14, 6, 3])

SIGMA_COLUMN = [
    4 * s ** 2 * b ** 4 / qp ** 4, 4 * s * b ** 5 / (qp ** 3 * h),
    4 * s * b ** 4 / qp ** 3, 4 * s * b ** 3 / (qp ** 2 * h),
    4 * s * b ** 5 / (qp ** 3 * h), 4 * s * b ** 4 / qp ** 3,
    6 * b ** 6 / qp ** 3, 6 * b ** 5 / (qp ** 2 * h), 6 * b ** 4 / qp ** 2,
    2 * P([2, 1]) * P([1, 2]) * b ** 4 / qp ** 3, 6 * b ** 5 / (qp ** 2 * h),
    2 * u * b ** 4 / qp ** 3, 2 * u * b ** 3 / (qp ** 2 * h),
    6 * b ** 5 / (qp ** 2 * h), 6 * b ** 4 / qp ** 2,
    4 * u * b ** 2 / qp ** 2, 6 * b ** 4 / qp ** 2,
    2 * u * b ** 3 / (qp ** 2 * h), 6 * b ** 6 / qp ** 3,
    6 * b ** 5 / (qp ** 2 * h), 2 * u * b ** 4 / qp ** 3,
]

V_TABLE = [
    [4 * s * b ** 2 / qp ** 2, 4 * s * b ** 4 / qp ** 3,
     4 * s * b ** 2 / qp ** 2, 4 * s * b ** 4 / qp ** 3],
    [b * f5 / (qp * h), f5 * b ** 3 / (qp ** 2 * h),
     b ** 5 / (qp ** 2 * h), f5 * b ** 3 / (qp ** 2 * h)],
    [b ** 4 / qp ** 2, f5 * b ** 2 / qp ** 2, b ** 4 / qp ** 2,
     b ** 6 / qp ** 3],
    [b ** 3 / (qp * h), b ** 5 / (qp ** 2 * h), b ** 3 / (qp * h),
     b ** 5 / (qp ** 2 * h)],
    [b ** 5 / (qp ** 2 * h), f5 * b ** 3 / (qp ** 2 * h),
     b * f5 / (qp * h), f5 * b ** 3 / (qp ** 2 * h)],
    [b ** 4 / qp ** 2, b ** 6 / qp ** 3, b ** 4 / qp ** 2,
     f5 * b ** 2 / qp ** 2],
    [8 * b ** 2 / qp, 8 * b ** 4 / qp ** 2, 2 * b ** 4 / qp ** 2,
     8 * b ** 4 / qp ** 2],
    [b * f6 / (qp * h), 8 * b ** 3 / (qp * h), 2 * b ** 3 / (qp * h),
     f6 * b ** 3 / (qp ** 2 * h)],
    [E(8), f6 * b ** 2 / qp ** 2, 2 * b ** 2 / qp, f6 * b ** 2 / qp ** 2],
    [u * b ** 2 / qp ** 2, 6 * b ** 4 / qp ** 2, u * b ** 2 / qp ** 2,
     6 * b ** 4 / qp ** 2],
    [b * f6 / (qp * h), f6 * b ** 3 / (qp ** 2 * h), 2 * b ** 3 / (qp * h),
     8 * b ** 3 / (qp * h)],
    [4 * b ** 2 / qp, 2 * f6 * b ** 2 / qp ** 2, 4 * b ** 2 / qp,
     4 * b ** 4 / qp ** 2],
    [4 * b / h, 4 * b ** 3 / (qp * h), 4 * b / h, 4 * b ** 3 / (qp * h)],
    [2 * b ** 3 / (qp * h), 8 * b ** 3 / (qp * h), b * f6 / (qp * h),
     f6 * b ** 3 / (qp ** 2 * h)],
    [2 * b ** 2 / qp, f6 * b ** 2 / qp ** 2, 2 * b ** 2 / qp,
     f6 * b ** 2 / qp ** 2],
    [E(8), 8 * b ** 2 / qp, E(8), 8 * b ** 2 / qp],
    [2 * b ** 2 / qp, f6 * b ** 2 / qp ** 2, E(8), f6 * b ** 2 / qp ** 2],
    [4 * b / h, 4 * b ** 3 / (qp * h), 4 * b / h, 4 * b ** 3 / (qp * h)],
    [2 * b ** 4 / qp ** 2, 8 * b ** 4 / qp ** 2, 8 * b ** 2 / qp,
     8 * b ** 4 / qp ** 2],
    [2 * b ** 3 / (qp * h), f6 * b ** 3 / (qp ** 2 * h), b * f6 / (qp * h),
     8 * b ** 3 / (qp * h)],
    [4 * b ** 2 / qp, 4 * b ** 4 / qp ** 2, 4 * b ** 2 / qp,
     2 * f6 * b ** 2 / qp ** 2],
]

W_TABLE = [
    [s * b ** 4 / qp ** 3, s * b ** 6 / qp ** 4, s * b ** 4 / qp ** 3,
     s * b ** 6 / qp ** 4],
    [b ** 5 / (qp ** 2 * h), b ** 7 / (qp ** 3 * h),
     b ** 5 / (qp ** 2 * h), b ** 7 / (qp ** 3 * h)],
    [b ** 4 / qp ** 2, b ** 6 / qp ** 3, b ** 4 / qp ** 2, b ** 6 / qp ** 3],
    [b ** 3 / (qp * h), b ** 5 / (qp ** 2 * h), b ** 3 / (qp * h),
     b ** 5 / (qp ** 2 * h)],
    [b ** 5 / (qp ** 2 * h), b ** 7 / (qp ** 3 * h),
     b ** 5 / (qp ** 2 * h), b ** 7 / (qp ** 3 * h)],
    [b ** 4 / qp ** 2, b ** 6 / qp ** 3, b ** 4 / qp ** 2, b ** 6 / qp ** 3],
    [2 * g / qp ** 2, 2 * g * b ** 2 / qp ** 3, 2 * b ** 4 / qp ** 2,
     2 * g * b ** 2 / qp ** 3],
    [b * f6 / (qp * h), 2 * b * g / (qp ** 2 * h), 2 * b ** 3 / (qp * h),
     f6 * b ** 3 / (qp ** 2 * h)],
    [E(8), f6 * b ** 2 / qp ** 2, 2 * b ** 2 / qp, f6 * b ** 2 / qp ** 2],
    [u * b ** 2 / qp ** 2, v * b ** 2 / qp ** 3, u * b ** 2 / qp ** 2,
     v * b ** 2 / qp ** 3],
    [b * f6 / (qp * h), f6 * b ** 3 / (qp ** 2 * h), 2 * b ** 3 / (qp * h),
     2 * b * g / (qp ** 2 * h)],
    [4 * b ** 2 / qp, 2 * w / qp ** 2, 4 * b ** 2 / qp, 4 * b ** 4 / qp ** 2],
    [4 * b / h, 4 * b ** 3 / (qp * h), 4 * b / h, 4 * b ** 3 / (qp * h)],
    [2 * b ** 3 / (qp * h), 2 * b * g / (qp ** 2 * h), b * f6 / (qp * h),
     f6 * b ** 3 / (qp ** 2 * h)],
    [2 * b ** 2 / qp, f6 * b ** 2 / qp ** 2, 2 * b ** 2 / qp,
     f6 * b ** 2 / qp ** 2],
    [E(8), 8 * b ** 2 / qp, E(8), 8 * b ** 2 / qp],
    [2 * b ** 2 / qp, f6 * b ** 2 / qp ** 2, E(8), f6 * b ** 2 / qp ** 2],
    [4 * b / h, 4 * b ** 3 / (qp * h), 4 * b / h, 4 * b ** 3 / (qp * h)],
    [2 * b ** 4 / qp ** 2, 2 * g * b ** 2 / qp ** 3, 2 * g / qp ** 2,
     2 * g * b ** 2 / qp ** 3],
    [2 * b ** 3 / (qp * h), f6 * b ** 3 / (qp ** 2 * h), b * f6 / (qp * h),
     2 * b * g / (qp ** 2 * h)],
    [4 * b ** 2 / qp, 4 * b ** 4 / qp ** 2, 4 * b ** 2 / qp,
     2 * w / qp ** 2],
]
