"""Solve the order conditions of an explicit s-stage Runge-Kutta method.

Used for the classical (non-SSP) high-order tableaux: the abscissae c are
fixed up front and the remaining coefficients are found by least squares,
with the row-sum condition A 1 = c imposed as extra residuals.

Usage: python3 design_rk.py STAGES ORDER --c c2,c3,...,cs [--seed N]
"""
import argparse
import sys

import jax
import jax.numpy as jnp
import numpy as np
from scipy.optimize import least_squares

import trees

jax.config.update("jax_enable_x64", True)


def make_residuals(s, p, c):
    tlist = trees.all_trees(p)
    index = {t: k for k, t in enumerate(tlist)}
    sched = [(tuple(index[ch] for ch in t), 1.0 / trees.density(t)) for t in tlist]
    li, lj = np.tril_indices(s, -1)
    c = jnp.asarray(c)

    def fun(z):
        A = jnp.zeros((s, s)).at[li, lj].set(z[:len(li)])
        b = z[len(li):]
        ys, out = [], []
        for children, inv_gamma in sched:
            g = jnp.ones(s)
            for ch in children:
                g = g * ys[ch]
            ys.append(A @ g)
            out.append(b @ g - inv_gamma)
        return jnp.concatenate([jnp.stack(out), A.sum(axis=1) - c])

    f = jax.jit(fun)
    J = jax.jit(jax.jacfwd(fun))
    return (lambda z: np.asarray(f(z))), (lambda z: np.asarray(J(z))), (li, lj)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("stages", type=int)
    ap.add_argument("order", type=int)
    ap.add_argument("--c", required=True)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--starts", type=int, default=200)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    s = args.stages
    c = np.array([0.0] + [float(v) for v in args.c.split(",")])
    assert len(c) == s
    f, J, (li, lj) = make_residuals(s, args.order, c)
    rng = np.random.default_rng(args.seed)
    best = None
    for k in range(args.starts):
        z0 = rng.normal(scale=0.5, size=len(li) + s)
        sol = least_squares(f, z0, jac=J, method="lm", xtol=3e-16, ftol=3e-16, gtol=3e-16,
                            max_nfev=3000)
        res = np.max(np.abs(sol.fun))
        size = np.max(np.abs(sol.x))
        if best is None or (res, size) < (best[0], best[1]):
            best = (res, size, sol.x)
        print(f"start {k}: residual {res:.3e}, max |coef| {size:.2f}", flush=True)
        if res < 1e-14 and size < 50:
            break
    res, size, z = best
    if res > 1e-14:
        sys.exit(f"no solution found (best residual {res:.2e})")
    # pin entries that converged to zero, then polish the rest
    active = np.abs(z) > 1e-9
    z = np.where(active, z, 0.0)
    for _ in range(50):
        F = f(z)
        if np.max(np.abs(F)) < 2e-16:
            break
        step = np.linalg.lstsq(J(z)[:, active], -F, rcond=None)[0]
        z[active] += step
    A = np.zeros((s, s))
    A[li, lj] = z[:len(li)]
    b = z[len(li):]
    print("order residual", np.max(np.abs(trees.rk_residuals(A, b, args.order))))
    if args.out:
        np.savez(args.out, A=A, b=b)


if __name__ == "__main__":
    main()
