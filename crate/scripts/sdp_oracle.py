#!/usr/bin/env python3
"""External-solver check of an exported `.dat-s` tester SDP.

    sdp_oracle.py file    INSTANCE.dat-s   # solve the file exactly as written
    sdp_oracle.py reduced INSTANCE.dat-s   # qubit instances too large for `file`

`file` parses the SDPA sparse instance (maximize F0.Y s.t. Fi.Y = ci, Y >= 0
blockwise) and hands it to CLARABEL unchanged.

`reduced` reads the hypotheses F_r back out of the objective blocks and solves
the same SDP after three exact reductions, each lossless for d = 2:
  * covariance: every F_r commutes with (U (x) U*)^{(x)n}, so optimal testers
    can be taken block diagonal over total spin j; only the highest-weight
    space of each spin block is kept, with multiplicity 2j+1;
  * realness: the F_r are real, so averaging with the complex conjugate gives
    a real symmetric optimum;
  * facial reduction: tr(T_r F_s) = 0 with both sides PSD forces T_r onto
    ker sum_{s != r} F_s, so zero-error constraints become a change of basis.
T_? is eliminated into the LMI  1_out (x) sigma - sum_r T_r >= 0.

Prints one JSON object: {"mode", "status", "optimum", "expected", "seconds"}.
"""

import itertools
import json
import re
import sys
import time

import cvxpy as cp
import numpy as np
import scipy.sparse as sp


def read_sdpa(path):
    comments, body = [], []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line[0] in "*\"":
                comments.append(line)
            else:
                body.append(line)
    m = int(body[0].split()[0])
    nblocks = int(body[1].split()[0])
    sizes = [abs(int(x)) for x in re.split(r"[\s,{}()]+", body[2]) if x][:nblocks]
    c = np.array([float(x) for x in re.split(r"[\s,{}()]+", body[3]) if x][:m])
    raw = np.array([[float(x) for x in line.split()] for line in body[4:]])
    entries = {
        "con": raw[:, 0].astype(int),
        "blk": raw[:, 1].astype(int) - 1,
        "i": raw[:, 2].astype(int) - 1,
        "j": raw[:, 3].astype(int) - 1,
        "v": raw[:, 4],
    }
    return comments, sizes, c, entries


def expected_optimum(comments):
    for line in comments:
        hit = re.search(r"expected optimum: \S+ = ([0-9.eE+-]+)", line)
        if hit:
            return float(hit.group(1))
    return None


def instance_params(comments):
    hit = re.search(r"n=(\d+) k=(\d+) d=(\d+)", " ".join(comments))
    return tuple(int(x) for x in hit.groups())


def symmetric_block(entries, mask, size):
    """Full symmetric matrix from the upper-triangle entries selected by `mask`."""
    i, j, v = entries["i"][mask], entries["j"][mask], entries["v"][mask]
    a = sp.coo_matrix((v, (i, j)), shape=(size, size)).toarray()
    return a + a.T - np.diag(np.diag(a))


def solve_file(path):
    comments, sizes, c, e = read_sdpa(path)
    ys = [cp.Variable((s, s), symmetric=True) for s in sizes]
    m = len(c)
    # rows: constraint index; columns: Fortran-order vec of each block
    exprs = []
    for b, (y, s) in enumerate(zip(ys, sizes)):
        mask = e["blk"] == b
        con, i, j, v = e["con"][mask], e["i"][mask], e["j"][mask], e["v"][mask]
        off = i != j
        rows = np.concatenate([con, con[off]])
        cols = np.concatenate([j * s + i, (i * s + j)[off]])
        vals = np.concatenate([v, v[off]])
        a = sp.csr_matrix((vals, (rows, cols)), shape=(m + 1, s * s))
        exprs.append(a @ cp.vec(y, order="F"))
    total = sum(exprs)
    cons = [y >> 0 for y in ys] + [total[1:] == c]
    prob = cp.Problem(cp.Maximize(total[0]), cons)
    prob.solve(solver="CLARABEL")
    return prob, expected_optimum(comments)


def kron_all(ms):
    out = np.eye(1)
    for m in ms:
        out = np.kron(out, m)
    return out


def solve_reduced(path):
    comments, sizes, _, e = read_sdpa(path)
    n, _, d = instance_params(comments)
    if d != 2:
        raise SystemExit("reduced mode uses SU(2) spin blocks and needs d = 2")
    count = len(sizes) - 2
    dim = sizes[0] // 2
    obj = e["con"] == 0
    # F0 block r holds (1/2)(F_r^T / N)^R, so F_r^T = 2N * (top-left block)
    ft = []
    for r in range(count):
        full = symmetric_block(e, obj & (e["blk"] == r), 2 * dim)
        if np.abs(full[:dim, dim:]).max() > 1e-12:
            raise SystemExit("reduced mode expects real hypotheses")
        ft.append(2 * count * full[:dim, :dim])

    half = [np.array([[0, 1], [1, 0]]) / 2, np.array([[0, -1j], [1j, 0]]) / 2, np.diag([0.5, -0.5])]

    def site(op, pos):
        ops = [np.eye(2)] * (2 * n)
        ops[pos] = op
        return kron_all(ops)

    # in-legs carry U, out-legs U*, whose generator is -S^T
    spin = [sum(site(s, 2 * j) + site(-s.T, 2 * j + 1) for j in range(n)) for s in half]
    casimir = sum(s @ s for s in spin).real
    jz = spin[2].real
    highest = {}
    for j in range(n + 1):
        a = casimir - j * (j + 1) * np.eye(dim)
        b = jz - j * np.eye(dim)
        w, v = np.linalg.eigh(a.T @ a + b.T @ b)
        highest[j] = v[:, w < 1e-8]

    def perm_op(p):
        m = np.zeros((d**n, d**n))
        for idx in itertools.product(range(d), repeat=n):
            new = [idx[p.index(a)] for a in range(n)]
            m[np.ravel_multi_index(new, [d] * n), np.ravel_multi_index(idx, [d] * n)] = 1
        return m

    def out_identity_times(sig):
        t = np.kron(sig, np.eye(d**n)).reshape([d] * (4 * n))
        order = [x for j in range(n) for x in (j, n + j)]
        return t.transpose(order + [2 * n + x for x in order]).reshape(dim, dim)

    # real symmetric part of the permutation commutant
    sym = [perm_op(list(p)) + perm_op(list(p)).T for p in itertools.permutations(range(n))]
    _, sv, vt = np.linalg.svd(np.array([s.ravel() for s in sym]), full_matrices=False)
    basis = [row.reshape(d**n, d**n) for row in vt[: int((sv > 1e-9 * sv[0]).sum())]]

    fb = {(r, j): v.T @ ft[r] @ v for r in range(count) for j, v in highest.items()}
    coeff = cp.Variable(len(basis))
    cons, t = [], {}
    for r in range(count):
        for j, v in highest.items():
            size = v.shape[1]
            g = sum(fb[s, j] for s in range(count) if s != r)
            w, u = np.linalg.eigh(g)
            ker = u[:, w < 1e-9 * max(1.0, np.abs(w).max())]
            if ker.shape[1] == 0:
                t[r, j] = np.zeros((size, size))
                continue
            x = cp.Variable((ker.shape[1],) * 2, symmetric=True)
            cons.append(x >> 0)
            t[r, j] = ker @ x @ ker.T
    for j, v in highest.items():
        sig = sum(coeff[i] * (v.T @ out_identity_times(b) @ v) for i, b in enumerate(basis))
        slack = sig - sum(t[r, j] for r in range(count))
        cons.append((slack + slack.T) / 2 >> 0)
    cons.append(sum(coeff[i] * np.trace(b) for i, b in enumerate(basis)) == 1)
    value = sum((2 * j + 1) * cp.trace(t[r, j] @ fb[r, j]) for r in range(count) for j in highest) / count
    prob = cp.Problem(cp.Maximize(value), cons)
    prob.solve(solver="CLARABEL")
    return prob, expected_optimum(comments)


def main():
    if len(sys.argv) != 3 or sys.argv[1] not in ("file", "reduced"):
        raise SystemExit(__doc__)
    start = time.time()
    prob, expected = (solve_file if sys.argv[1] == "file" else solve_reduced)(sys.argv[2])
    print(
        json.dumps(
            {
                "mode": sys.argv[1],
                "status": prob.status,
                "optimum": prob.value,
                "expected": expected,
                "seconds": round(time.time() - start, 3),
            }
        )
    )


if __name__ == "__main__":
    main()
