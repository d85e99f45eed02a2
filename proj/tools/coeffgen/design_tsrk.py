"""Search for SSP two-step Runge-Kutta methods (Type II) of given stages/order.

The method is parametrised in its canonical convex (Shu-Osher) form at a fixed
radius r:

    w = P x + R (w + tau/r F(w)),   x = (u^{n-1}, u^n),
    w = (u^{n-1}, u^n = y_1, y_2, ..., y_s, u^{n+1}),

with P, R >= 0 and unit row sums, so that any method found is SSP with
coefficient >= r by construction. The order conditions are solved in a
bounded least-squares sense, and r is pushed upward by bisection.

Usage: python3 design_tsrk.py STAGES ORDER [--rlo R] [--rhi R] [--seed N]
"""
import argparse
import sys

import jax
import jax.numpy as jnp
import numpy as np
from scipy.optimize import least_squares

import trees

jax.config.update("jax_enable_x64", True)


class Layout:
    def __init__(self, s):
        self.s = s
        self.nw = s + 2  # u^{n-1}, y_1..y_s, u^{n+1}
        # free rows: w index 2..s+1; row i has P (2 entries) and R[i, 0..i-1]
        self.rows = list(range(2, s + 2))
        self.size = sum(2 + i for i in self.rows)

    def unpack(self, z):
        s = self.s
        P = np.zeros((self.nw, 2))
        R = np.zeros((self.nw, self.nw))
        P[0, 0] = 1.0
        P[1, 1] = 1.0
        k = 0
        for i in self.rows:
            P[i, :] = z[k:k + 2]
            R[i, :i] = z[k + 2:k + 2 + i]
            k += 2 + i
        return P, R


def to_tsrk(P, R, r, s):
    """Canonical form -> (d, theta, ahat, A, bhat, b)."""
    nw = s + 2
    M = np.linalg.inv(np.eye(nw) - R)
    S = M @ P
    T = M @ R / r
    # rows 1..s are y_1..y_s, row s+1 is u^{n+1}; column 0 of T is F(u^{n-1})
    d = S[1:s + 1, 0]
    ahat = T[1:s + 1, 0]
    A = T[1:s + 1, 1:s + 1]
    theta = S[s + 1, 0]
    bhat = T[s + 1, 0]
    b = T[s + 1, 1:s + 1]
    return d, theta, ahat, A, bhat, b


def make_residuals(lay, p, stage_order=1):
    """Jitted residual and Jacobian of (order conditions, row sums) in z."""
    s, nw = lay.s, lay.nw
    tlist = trees.all_trees(p)
    index = {t: k for k, t in enumerate(tlist)}
    sched = [(tuple(index[c] for c in t),
              (-1.0) ** trees.order(t) / trees.density(t),
              float(np.prod([(-1.0) ** trees.order(c) / trees.density(c) for c in t])),
              1.0 / trees.density(t)) for t in tlist]
    pidx, ridx = [], []
    k = 0
    for i in lay.rows:
        pidx += [(i, 0, k), (i, 1, k + 1)]
        ridx += [(i, j, k + 2 + j) for j in range(i)]
        k += 2 + i
    pi, pj, pk = map(np.array, zip(*pidx))
    ri, rj, rk = map(np.array, zip(*ridx))

    def fun(z, r):
        P = jnp.zeros((nw, 2)).at[0, 0].set(1.0).at[1, 1].set(1.0).at[pi, pj].set(z[pk])
        R = jnp.zeros((nw, nw)).at[ri, rj].set(z[rk])
        rowsum = P.sum(axis=1) + R.sum(axis=1) - 1.0
        M = jnp.linalg.inv(jnp.eye(nw) - R)
        S = M @ P
        T = M @ R / r
        d, ahat, A = S[1:s + 1, 0], T[1:s + 1, 0], T[1:s + 1, 1:s + 1]
        theta, bhat, b = S[s + 1, 0], T[s + 1, 0], T[s + 1, 1:s + 1]
        ys, out = [], []
        for children, past, pd, inv_gamma in sched:
            g = jnp.ones(s)
            for c in children:
                g = g * ys[c]
            ys.append(d * past + ahat * pd + A @ g)
            out.append(theta * past + bhat * pd + b @ g - inv_gamma)
        parts = [jnp.stack(out), 10.0 * rowsum[2:]]
        if stage_order >= 2:
            # y_i = u(t_n + c_i tau) + O(tau^3)
            parts.append(ys[1] - ys[0] ** 2 / 2)
        return jnp.concatenate(parts)

    f = jax.jit(fun)
    J = jax.jit(jax.jacfwd(fun))
    return (lambda z, r: np.asarray(f(z, r))), (lambda z, r: np.asarray(J(z, r)))


def feasible(lay, fj, r, rng, starts, z0=None):
    best = None
    guesses = ([z0] if z0 is not None else []) + [rng.random(lay.size) for _ in range(starts)]
    for g in guesses:
        g = g.copy()
        sol = least_squares(fj[0], g, jac=fj[1], bounds=(0.0, np.inf), args=(r,),
                            xtol=3e-16, ftol=3e-16, gtol=3e-16, max_nfev=500)
        res = np.max(np.abs(sol.fun))
        if best is None or res < best[0]:
            best = (res, sol.x)
        if res < 1e-13:
            break
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("stages", type=int)
    ap.add_argument("order", type=int)
    ap.add_argument("--rlo", type=float, default=0.0)
    ap.add_argument("--rhi", type=float, default=2.0)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--starts", type=int, default=20)
    ap.add_argument("--iters", type=int, default=14)
    ap.add_argument("--stage-order", type=int, default=1)
    ap.add_argument("--rfinal", type=float, default=None)
    ap.add_argument("--init", default=None, help="warm start (.npy of z) for the bisection")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    lay = Layout(args.stages)
    fj = make_residuals(lay, args.order, args.stage_order)
    rng = np.random.default_rng(args.seed)
    lo, hi = args.rlo, args.rhi
    z_lo = np.load(args.init) if args.init else None
    if lo > 0 and z_lo is None:
        res, z = feasible(lay, fj, lo, rng, args.starts * 3)
        if res > 1e-13:
            sys.exit(f"lower radius {lo} not feasible (residual {res:.2e})")
        z_lo = z
    for _ in range(args.iters):
        mid = 0.5 * (lo + hi)
        res, z = feasible(lay, fj, mid, rng, args.starts, z_lo)
        print(f"r={mid:.6f} residual={res:.3e}", flush=True)
        if res < 1e-13:
            lo, z_lo = mid, z
        else:
            hi = mid
    if z_lo is None:
        sys.exit("no feasible method found")
    # back off slightly from the boundary, then polish the active entries with
    # Gauss-Newton while pinning the zero entries
    r_final = args.rfinal if args.rfinal else lo * (1.0 - 1e-5)
    res, z = feasible(lay, fj, r_final, rng, args.starts, z_lo)
    # the polish runs on the plain order conditions; entries that go negative
    # are pinned to zero and the remaining ones re-solved
    fj = make_residuals(lay, args.order, 1)
    active = z > 1e-9
    z = np.where(active, z, 0.0)
    for _ in range(20):
        for _ in range(50):
            F = fj[0](z, r_final)
            if np.max(np.abs(F)) < 2e-16:
                break
            Jm = fj[1](z, r_final)[:, active]
            z[active] += np.linalg.lstsq(Jm, -F, rcond=None)[0]
        negative = z < 0.0
        if not negative.any():
            break
        active &= ~negative
        z = np.where(active, z, 0.0)
    if np.max(np.abs(fj[0](z, r_final))) > 1e-15:
        sys.exit("polish did not converge")
    lo = r_final
    P, R = lay.unpack(z)
    oc = trees.tsrk_residuals(*to_tsrk(P, R, lo, lay.s), args.order)
    print(f"accepted r={lo:.8f} (effective {lo / lay.s:.8f}), max order residual {np.max(np.abs(oc)):.3e}")
    if args.out:
        np.savez(args.out, P=P, R=R, r=lo, s=lay.s, p=args.order)


if __name__ == "__main__":
    main()
