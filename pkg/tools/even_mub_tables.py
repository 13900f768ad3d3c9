"""Generate the embedded MUB phase tables for dimensions 4 and 8.

Each non-computational basis is the joint eigenbasis of one class of commuting
multi-qubit Pauli operators X(u) Z(M_a u), u != 0, where M_a is the Gram matrix
of the bilinear form (x, y) -> tr(a x y) on GF(2^k) in the polynomial basis.
A random real combination of the (Hermitian) class members is diagonalised;
after fixing the phase of component 0 every amplitude is i^e / sqrt(q), and
the table stores the integer exponents e.

    python tools/even_mub_tables.py > src/mubkit/data/mub_even.json
"""

import json
import sys

import numpy as np

from mubkit.gf import galois_field


def pauli(u: int, v: int, k: int) -> np.ndarray:
    q = 2**k
    m = np.zeros((q, q), dtype=complex)
    for x in range(q):
        m[x ^ u, x] = (-1) ** bin(v & x).count("1")
    return m


def trace_form(gf, a: int) -> list[int]:
    """Rows of M_a as bit masks (bit j of row i is tr(a x^i x^j))."""
    k = gf.k
    basis = [gf.power(2, i) if k > 1 else 1 for i in range(k)]  # x^i, element 2 is x
    rows = []
    for i in range(k):
        mask = 0
        for j in range(k):
            if gf.trace(gf.mul(a, gf.mul(basis[i], basis[j]))):
                mask |= 1 << j
        rows.append(mask)
    return rows


def apply(rows: list[int], u: int) -> int:
    out = 0
    for i, row in enumerate(rows):
        if bin(row & u).count("1") % 2:
            out |= 1 << i
    return out


def pauli_partition_bases(k: int, seed: int = 7) -> list[np.ndarray]:
    """q bases (rows are vectors) for q = 2**k, excluding the computational one."""
    gf = galois_field(2**k)
    q = gf.order
    rng = np.random.default_rng(seed)
    bases = []
    for a in range(q):
        rows = trace_form(gf, a)
        h = np.zeros((q, q), dtype=complex)
        for u in range(1, q):
            v = apply(rows, u)
            op = pauli(u, v, k)
            if bin(u & v).count("1") % 2:
                op = 1j * op
            h += rng.standard_normal() * op
        _, vecs = np.linalg.eigh(h)
        bases.append(vecs.T.copy())
    return bases


def phase_exponents(basis: np.ndarray) -> list[list[int]]:
    q = basis.shape[0]
    out = []
    for vec in basis:
        vec = vec / (vec[0] / abs(vec[0]))
        e = np.rint(np.angle(vec * np.sqrt(q)) / (np.pi / 2)).astype(int) % 4
        if np.max(np.abs(vec * np.sqrt(q) - 1j**e)) > 1e-9:
            raise RuntimeError("amplitude is not a fourth root of unity")
        out.append([int(x) for x in e])
    return sorted(out)


def main() -> None:
    tables = {str(2**k): [phase_exponents(b) for b in pauli_partition_bases(k)] for k in (2, 3)}
    json.dump(tables, sys.stdout, separators=(",", ":"))
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
