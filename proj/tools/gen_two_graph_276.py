#!/usr/bin/env python3
"""Generate the Seidel matrix of the regular two-graph on 276 vertices.

The 276 equiangular lines in R^23 come from the Leech lattice: fix a
vector w of type 3 (norm 48 in the usual sqrt(8)-scaled coordinates). The
type-2 vectors x (norm 32) with <x, w> = 24 come in 276 pairs {x, w - x},
and the vectors x - w/2 span 276 lines in the 23-dimensional space w-perp
with pairwise |cos| = 1/5. The Seidel matrix is the sign pattern of their
Gram matrix.

The lattice is built from the extended binary Golay code (quadratic residue
code of length 23 plus a parity bit). Only numpy is required.

Usage: gen_two_graph_276.py [OUTPUT]   (default: data/seidel_276.txt)
"""

import itertools
import sys

import numpy as np


def gf2_basis(rows):
    basis, pivots = [], []
    for r in rows:
        r = r.copy()
        for b, p in zip(basis, pivots):
            if r[p]:
                r ^= b
        if r.any():
            basis.append(r)
            pivots.append(int(np.argmax(r)))
    return basis


def golay_codewords():
    q = sorted({(i * i) % 23 for i in range(1, 23)})
    base = np.zeros(23, dtype=np.uint8)
    base[q] = 1
    base[0] = 1
    # Cyclic shifts of 1 + x^Q span the length-23 Golay code only together
    # with the all-ones word.
    rows = [np.roll(base, s) for s in range(23)] + [np.ones(23, dtype=np.uint8)]
    basis = gf2_basis(rows)
    assert len(basis) == 12, len(basis)
    gen = np.array([np.append(b, b.sum() % 2) for b in basis], dtype=np.uint8)
    words = []
    for coeffs in itertools.product((0, 1), repeat=12):
        words.append((np.array(coeffs, dtype=np.uint8) @ gen) % 2)
    words = np.array(words, dtype=np.uint8)
    weights = words.sum(axis=1)
    assert sorted(set(weights.tolist())) == [0, 8, 12, 16, 24]
    assert (weights == 8).sum() == 759
    return words


def leech_minimal_vectors(words):
    vecs = []
    # (+-4, +-4, 0^22)
    for i, j in itertools.combinations(range(24), 2):
        for si, sj in itertools.product((4, -4), repeat=2):
            v = np.zeros(24, dtype=np.int64)
            v[i], v[j] = si, sj
            vecs.append(v)
    # (+-2^8, 0^16) on octads, even number of minus signs
    for w in words[words.sum(axis=1) == 8]:
        supp = np.flatnonzero(w)
        for signs in itertools.product((1, -1), repeat=8):
            if signs.count(-1) % 2:
                continue
            v = np.zeros(24, dtype=np.int64)
            v[supp] = 2 * np.array(signs)
            vecs.append(v)
    # (-3, 1^23) with signs flipped on a Golay codeword, then one coordinate
    # of the flipped vector moved by 4.
    for w in words:
        base = np.where(w == 1, -1, 1).astype(np.int64)
        for i in range(24):
            v = base.copy()
            v[i] -= 4 * base[i]
            vecs.append(v)
    vecs = np.array(vecs)
    assert len(vecs) == 196560, len(vecs)
    assert np.all((vecs * vecs).sum(axis=1) == 32)
    return vecs


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "data/seidel_276.txt"
    words = golay_codewords()
    vecs = leech_minimal_vectors(words)
    # Any sum of two minimal vectors with inner product -8 has norm 48.
    x0 = vecs[0]
    ips = vecs @ x0
    w = x0 + vecs[np.flatnonzero(ips == -8)[0]]
    assert w @ w == 48
    sel = vecs[(vecs @ w) == 24]
    assert len(sel) == 552, len(sel)
    # Keep one vector from each pair {x, w - x}.
    keep = []
    seen = set()
    for x in sel:
        key = tuple(x)
        if key in seen:
            continue
        seen.add(tuple(w - x))
        keep.append(x)
    assert len(keep) == 276
    y = np.array(keep, dtype=np.float64) - w / 2.0
    g = y @ y.T
    assert np.allclose(np.diag(g), 20.0)
    off = g[~np.eye(276, dtype=bool)]
    assert np.allclose(np.abs(off), 4.0)
    s = np.sign(g).astype(int)
    np.fill_diagonal(s, 0)
    with open(out, "w") as fh:
        fh.write("# regular two-graph on 276 vertices (equiangular lines in R^23)\n")
        fh.write("seidel 276\n")
        for row in s:
            fh.write(" ".join(str(int(e)) for e in row) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
