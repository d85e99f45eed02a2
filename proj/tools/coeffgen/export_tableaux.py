"""Write the integrator tableaux in stage-row form to data/tableaux/*.txt.

Every method is stored as

    w_i = sum_j alpha[i][j] w_j + tau * sum_j beta[i][j] F(w_j),

where the first `inputs` rows are given (u^n, or u^{n-1}, u^n for two-step
methods) and the last row is the new solution.

Usage: python3 export_tableaux.py OUTDIR --tsrk5 FILE --tsrk7 FILE --rk7 FILE
"""
import argparse
import os

import numpy as np
from nodepy import runge_kutta_method as rkm

import trees


def fnv1a64(text):
    h = 0xcbf29ce484222325
    for byte in text.encode():
        h ^= byte
        h = (h * 0x100000001b3) & 0xffffffffffffffff
    return f"{h:016x}"


def butcher_rows(A, b):
    """Butcher tableau with c_1 = 0 -> stage rows (one input)."""
    s = len(b)
    A = np.asarray(A, dtype=float)
    if np.any(A[0] != 0):
        raise ValueError("first stage must be explicit u^n")
    alpha = np.zeros((s + 1, s + 1))
    beta = np.zeros((s + 1, s + 1))
    for i in range(1, s + 1):
        alpha[i, 0] = 1.0
        coeffs = A[i] if i < s else np.asarray(b, dtype=float)
        beta[i, :s] = coeffs
    return alpha, beta


def canonical_rows(P, R, r):
    """Two-step canonical form -> stage rows (two inputs)."""
    alpha = R.copy()
    alpha[:, :2] += P
    alpha[:2] = 0.0
    beta = R / r
    beta[:2] = 0.0
    return alpha, beta


def write(path, name, kind, order, stages, radius, cfl, alpha, beta):
    lines = [f"name {name}", f"kind {kind}", f"order {order}", f"stages {stages}",
             f"ssp_radius {radius:.17g}", f"cfl_constant {cfl:.17g}"]
    inputs = 1 if kind == "one-step" else 2
    for i in range(inputs, alpha.shape[0]):
        for j in range(i):
            if alpha[i, j] != 0.0:
                lines.append(f"alpha {i} {j} {alpha[i, j]:.17g}")
            if beta[i, j] != 0.0:
                lines.append(f"beta {i} {j} {beta[i, j]:.17g}")
    body = "\n".join(lines)
    with open(path, "w") as fh:
        fh.write(f"# {name}: stage rows w_i = sum alpha w_j + tau sum beta F(w_j)\n")
        fh.write(body + "\n")
        fh.write(f"checksum fnv1a64 {fnv1a64(body)}\n")


def check_rows(alpha, beta, inputs):
    assert np.all(np.abs(alpha[inputs:].sum(axis=1) - 1.0) < 1e-14), "row sums"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir")
    ap.add_argument("--tsrk5", required=True)
    ap.add_argument("--tsrk7", required=True)
    ap.add_argument("--rk7", required=True)
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    out = lambda n: os.path.join(args.outdir, n + ".txt")

    alpha, beta = butcher_rows([[0]], [1])
    write(out("euler"), "euler", "one-step", 1, 1, 1.0, 1.0, alpha, beta)

    # Shu-Osher third-order TVD scheme
    alpha = np.zeros((4, 4))
    beta = np.zeros((4, 4))
    alpha[1, 0], beta[1, 0] = 1.0, 1.0
    alpha[2, 0], alpha[2, 1], beta[2, 1] = 0.75, 0.25, 0.25
    alpha[3, 0], alpha[3, 2], beta[3, 2] = 1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0
    write(out("tvdrk3"), "tvdrk3", "one-step", 3, 3, 1.0, 1.0, alpha, beta)

    m = rkm.loadRKM("BuRK65")
    assert m.order() == 5
    alpha, beta = butcher_rows(np.array(m.A, dtype=float), np.array(m.b, dtype=float))
    write(out("rk5"), "rk5", "one-step", 5, 6, 0.0, 0.0, alpha, beta)

    d = np.load(args.rk7)
    assert np.max(np.abs(trees.rk_residuals(d["A"], d["b"], 7))) < 1e-14
    alpha, beta = butcher_rows(d["A"], d["b"])
    write(out("rk7"), "rk7", "one-step", 7, 9, 0.0, 0.0, alpha, beta)

    m = rkm.loadRKM("SSP54")
    r = float(m.absolute_monotonicity_radius())
    r_form = r * (1.0 - 1e-9)
    # w = d u^n + P (w + tau/r F(w)), row 0 being u^n itself
    dvec, Pmat = m.canonical_shu_osher_form(r_form)
    Pmat = np.array(Pmat, dtype=float)
    alpha_so = Pmat.copy()
    alpha_so[:, 0] += np.array(dvec, dtype=float)
    beta_so = Pmat / r_form
    alpha_so[0] = 0.0
    beta_so[0] = 0.0
    assert alpha_so.min() >= -1e-15 and beta_so.min() >= -1e-15
    alpha_so = np.maximum(alpha_so, 0.0)
    beta_so = np.maximum(beta_so, 0.0)
    alpha_so[np.abs(alpha_so) < 1e-15] = 0.0
    beta_so[np.abs(beta_so) < 1e-15] = 0.0
    check_rows(alpha_so, beta_so, 1)
    write(out("ssprk54"), "ssprk54", "one-step", 4, 5, r_form, r_form, alpha_so, beta_so)

    for name, path, order, cfl in (("tsrk5", args.tsrk5, 5, 0.21354), ("tsrk7", args.tsrk7, 7, 0.12444)):
        d = np.load(path)
        P, R, r, s = d["P"], d["R"], float(d["r"]), int(d["s"])
        alpha, beta = canonical_rows(P, R, r)
        check_rows(alpha, beta, 2)
        assert alpha.min() >= 0.0 and beta.min() >= 0.0
        write(out(name), name, "two-step", order, s, r, cfl, alpha, beta)


if __name__ == "__main__":
    main()
