"""Independent float64 oracles for the frozen constants in tests/unit.

Uses numpy SVD on explicitly formed products; shares no code with the library.
"""
import itertools
import math

import numpy as np

A = [np.array(m, dtype=float) for m in (
    [[1, 1, 1], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [1, 1, 1], [0, 0, 1]],
    [[1, 0, 0], [0, 1, 0], [1, 1, 1]],
)]
PAIRS = [(0, 1), (0, 2), (1, 2), (1, 0), (2, 1), (2, 0)]


def gamma(N, eps=0.2):
    M = np.array([[1, -eps, -eps], [-eps, 1, -eps], [-eps, -eps, 1]])
    Mi = np.linalg.inv(M)
    return [Mi @ np.linalg.matrix_power(A[i], n) @ A[j] @ M for n in range(1, N + 1) for i, j in PAIRS]


def phi(sv, s):
    a1, a2, a3 = sv
    if s <= 1:
        return (a2 / a1) ** s
    if s <= 2:
        return (a2 / a1) * (a3 / a1) ** (s - 1)
    return (a2 * a3 / a1 ** 2) ** (s / 2)


def level_svs(letters, n):
    prods = [np.eye(3)]
    for _ in range(n):
        prods = [p @ a for p in prods for a in letters]
    return np.linalg.svd(np.array(prods), compute_uv=False)


def log_sum(letters, n, s):
    svs = level_svs(letters, n)
    return math.log(sum(phi(sv, s) for sv in svs))


def raw_root(letters, n, tol=1e-12):
    svs = level_svs(letters, n)
    f = lambda s: math.log(sum(phi(sv, s) for sv in svs)) / n
    lo, hi = 0.0, 2.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if f(mid) > 0 else (lo, mid)
    return 0.5 * (lo + hi)


if __name__ == "__main__":
    g1, g10 = gamma(1), gamma(10)
    print("gamma1_logsum_s1.5_n3 %.15g" % log_sum(g1, 3, 1.5))
    print("gamma1_logsum_s0.6_n4 %.15g" % log_sum(g1, 4, 0.6))
    print("gamma10_logsum_s1.5_n2 %.15g" % log_sum(g10, 2, 1.5))
    print("gamma10_logsum_s1.5_n3 %.15g" % log_sum(g10, 3, 1.5))
    print("rauzy_logsum_s1.2_n6 %.15g" % log_sum(A, 6, 1.2))
    print("gamma1_root_n4 %.15g" % raw_root(g1, 4))
    print("gamma5_root_n2 %.15g" % raw_root(gamma(5), 2))
    print("gamma1_zeta_s1.5_n4 %.15g" % sum(math.exp(log_sum(g1, n, 1.5)) for n in range(1, 5)))
    w = A[0] @ A[1] @ A[1] @ A[2] @ A[0]
    print("word_01120_sv %.15g %.15g %.15g" % tuple(np.linalg.svd(w, compute_uv=False)))
