"""Shared test utilities: seeded generators and small oracles."""

import numpy as np

from qmarginal import PortableRng, random_density, random_unitary


def random_hermitian(dim, rng):
    g = rng.complex_normal((dim, dim))
    return (g + g.conj().T) / 2.0


def random_prob_vector(size, rng, sorted_desc=True):
    v = rng.uniform(size)
    v = v / v.sum()
    return np.sort(v)[::-1] if sorted_desc else v


def t_transform_mix(y, rng, steps=None):
    """Vector majorized by y: repeated Robin-Hood transfers between pairs."""
    x = np.asarray(y, dtype=float).copy()
    steps = steps if steps is not None else max(2, x.size)
    for _ in range(steps):
        i = rng.index(x.size)
        j = rng.index(x.size)
        if i == j:
            continue
        hi, lo = (i, j) if x[i] >= x[j] else (j, i)
        t = 0.5 * rng.uniform(1)[0]
        shift = t * (x[hi] - x[lo])
        x[hi] -= shift
        x[lo] += shift
    return np.sort(x)[::-1]


def sigma_corpus(max_n=6, seed=1234):
    """One random density matrix per (dim, rank) with dim <= max_n."""
    out = []
    seed_i = seed
    for n in range(2, max_n + 1):
        for r in range(1, n + 1):
            out.append(random_density(n, r, seed_i))
            seed_i += 1
    return out


def haar_unitary(dim, seed):
    return random_unitary(dim, PortableRng(seed))
