"""Rooted trees and B-series order conditions for one-step and two-step RK methods.

A tree is a sorted tuple of child trees; the single-node tree is ().
"""
from functools import lru_cache
from math import prod

import numpy as np


@lru_cache(maxsize=None)
def trees_of_order(n):
    if n == 1:
        return ((),)
    out = set()
    for forest in _forests(n - 1, n - 1):
        out.add(tuple(sorted(forest)))
    return tuple(sorted(out))


def _forests(total, max_part):
    # multisets of trees whose orders sum to total, parts non-increasing
    if total == 0:
        yield ()
        return
    for k in range(min(total, max_part), 0, -1):
        for t in trees_of_order(k):
            for rest in _forests(total - k, k):
                if rest and order(rest[0]) == k and rest[0] < t:
                    continue
                yield (t,) + rest


@lru_cache(maxsize=None)
def order(t):
    return 1 + sum(order(c) for c in t)


@lru_cache(maxsize=None)
def density(t):
    return order(t) * prod(density(c) for c in t)


def all_trees(p):
    return [t for n in range(1, p + 1) for t in trees_of_order(n)]


def rk_residuals(A, b, p):
    """Sum_i b_i Phi_i(t) - 1/gamma(t) for every tree with |t| <= p."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    cache = {}

    def g(t):  # derivative weights per stage
        if t not in cache:
            v = np.ones(len(b))
            for c in t:
                v = v * (A @ g(c))
            cache[t] = v
        return cache[t]

    return np.array([b @ g(t) - 1.0 / density(t) for t in all_trees(p)])


def tsrk_residuals(d, theta, ahat, A, bhat, b, p):
    """Order residuals of a Type II two-step RK method.

    y_i = d_i u^{n-1} + (1-d_i) u^n + tau ahat_i F(u^{n-1}) + tau sum_j A_ij F(y_j)
    u^{n+1} = theta u^{n-1} + (1-theta) u^n + tau bhat F(u^{n-1}) + tau sum_j b_j F(y_j)
    with u^{n-1} taken as the exact solution one step back.
    """
    d = np.asarray(d, dtype=float)
    ahat = np.asarray(ahat, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)

    def past(t):
        return (-1.0) ** order(t) / density(t)

    def past_deriv(t):
        return prod(past(c) for c in t)

    ycache, gcache = {}, {}

    def g(t):
        if t not in gcache:
            v = np.ones(len(b))
            for c in t:
                v = v * y(c)
            gcache[t] = v
        return gcache[t]

    def y(t):
        if t not in ycache:
            ycache[t] = d * past(t) + ahat * past_deriv(t) + A @ g(t)
        return ycache[t]

    return np.array([theta * past(t) + bhat * past_deriv(t) + b @ g(t) - 1.0 / density(t)
                     for t in all_trees(p)])


if __name__ == "__main__":
    print([len(trees_of_order(n)) for n in range(1, 9)])
