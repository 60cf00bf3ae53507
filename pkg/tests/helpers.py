"""Sampling of valid crossed systems for property tests."""

from functools import lru_cache

import numpy as np

from leibniz_lab.algebra import LeibnizAlgebra, leibniz_defect_array
from leibniz_lab.classify.coflag import coflag_data, coflag_to_datum
from leibniz_lab.crossed import crossed_product, default_section, induce_from_section
from leibniz_lab.equivalence import twist
from leibniz_lab.field import GF, all_vectors, kernel_basis


@lru_cache(maxsize=None)
def leibniz_tensors(p, m):
    """Every Leibniz bracket on GF(p)^m (m <= 2), as a tuple of algebras."""
    F = GF(p)
    digits = all_vectors(m**3, F, p ** (m**3))
    c = digits.reshape(-1, m, m, m)
    ok = ~np.any(leibniz_defect_array(c, F).reshape(len(c), -1) != 0, axis=1)
    return tuple(LeibnizAlgebra._trusted(t, F) for t in c[ok])


def random_coflag(rng, L):
    fams = coflag_data(L)
    fam = fams[rng.integers(len(fams))]
    fld = L.field
    k = fam.cocycles.shape[0]
    f = fld.reduce(fld.random(rng, k) @ fam.cocycles) if k else fld.zeros(L.dim * L.dim)
    return coflag_to_datum(fam.datum(f))


def random_system(rng, p, m, n):
    """A valid system of a random m-dimensional L by an n-dimensional g (n in {1, 2}).

    n = 1 comes straight from the co-flag solver.  n = 2 stacks two
    one-dimensional extensions and reads the composite back through a
    random section, so the kernel bracket can be non-abelian.  Either way
    the result is twisted by a random r.
    """
    F = GF(p)
    algs = leibniz_tensors(p, m)
    L = algs[rng.integers(len(algs))]
    if n == 1:
        d = random_coflag(rng, L)
    elif n == 2:
        E1 = crossed_product(random_coflag(rng, L))
        E2 = crossed_product(random_coflag(rng, E1))
        N = E2.dim
        pi = np.concatenate([F.zeros((m, 2)), F.eye(m)], axis=1)
        s0 = default_section(pi, F)
        K = np.stack(kernel_basis(pi, F), axis=1)
        s = F.reduce(s0 + K @ F.random(rng, (K.shape[1], m)))
        d = induce_from_section(E2, pi, L, s).datum
        assert N == m + 2
    else:
        raise ValueError("n must be 1 or 2")
    return twist(d, F.random(rng, (n, m)))


@lru_cache(maxsize=None)
def _valid_over_k0(p, gb_index):
    """All valid (left, right, f) of k_0 by the gb_index-th 2-dim Leibniz algebra over GF(p)."""
    from leibniz_lab.algebra import abelian
    from leibniz_lab.crossed import PreCrossedDatum, valid_mask

    F = GF(p)
    L = abelian(1, F)
    gb = leibniz_tensors(p, 2)[gb_index]
    D = all_vectors(10, F)
    left = D[:, :4].reshape(-1, 2, 1, 2)
    right = D[:, 4:8].reshape(-1, 1, 2, 2)
    f = D[:, 8:].reshape(-1, 1, 1, 2)
    idx = np.flatnonzero(valid_mask(L.c, gb.c, left, right, f, F))
    return tuple(PreCrossedDatum(L, 2, left[i], right[i], f[i], gb) for i in idx)


def nonabelian_samples(rng, p, count, brackets=4):
    """`count` valid systems of k_0 by a non-abelian 2-dim g over GF(p), from exhaustive lists."""
    algs = leibniz_tensors(p, 2)
    nonzero = [i for i, a in enumerate(algs) if not a.is_zero()]
    chosen = rng.choice(nonzero, size=min(brackets, len(nonzero)), replace=False)
    pool = [d for i in chosen for d in _valid_over_k0(p, int(i))]
    return [pool[i] for i in rng.integers(len(pool), size=count)]
