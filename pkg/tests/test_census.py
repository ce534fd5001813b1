import itertools
import math

import pytest

from histfit.boolfn import TruthTable, hamming_distance
from histfit.census import census, enumerate_balanced


def affine_functions(n):
    size = 1 << n
    out = []
    for a in range(size):
        lin = [bin(a & x).count("1") & 1 for x in range(size)]
        out += [TruthTable(lin, n), TruthTable([1 - v for v in lin], n)]
    return out


def brute_force_distribution(n):
    """nl by minimum distance to affine functions, over all tables filtered for balance."""
    size = 1 << n
    affine = affine_functions(n)
    dist = {}
    for bits in itertools.product((0, 1), repeat=size):
        if 2 * sum(bits) != size:
            continue
        t = TruthTable(bits, n)
        nl = min(hamming_distance(t, g) for g in affine)
        dist[nl] = dist.get(nl, 0) + 1
    return dist


@pytest.mark.parametrize("n, count", [(1, 2), (2, 6), (3, 70), (4, 12870)])
def test_enumeration_counts(n, count):
    tables = list(enumerate_balanced(n))
    assert len(tables) == count == math.comb(1 << n, 1 << (n - 1))
    assert len(set(tables)) == count
    assert all(t.is_balanced() for t in tables)


def test_enumeration_order():
    first = [t.bits.tolist() for t in enumerate_balanced(2)]
    assert first == [[1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1]]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_census_matches_brute_force(n):
    report = census(n)
    assert report.nl_distribution == brute_force_distribution(n)
    assert report.total_balanced == sum(report.nl_distribution.values())


def test_census_fixtures():
    assert census(2).nl_distribution == {0: 6}
    r3 = census(3)
    assert (r3.total_balanced, r3.max_nl) == (70, 2)
    assert r3.nl_distribution == {0: 14, 2: 56}
    r4 = census(4)
    assert (r4.total_balanced, r4.max_nl) == (12870, 4)
    assert r4.nl_distribution == {0: 30, 2: 1920, 4: 10920}


@pytest.mark.parametrize("n", [0, 5, 9])
def test_census_refuses_large_n(n):
    with pytest.raises(ValueError):
        census(n)
    with pytest.raises(ValueError):
        next(enumerate_balanced(n))


def test_n4_distribution_by_vectorised_distances():
    import numpy as np

    ints = np.arange(1 << 16)
    tables = ((ints[:, None] >> np.arange(16)) & 1).astype(np.int8)
    tables = tables[tables.sum(axis=1) == 8]
    affine = np.stack([g.bits for g in affine_functions(4)]).astype(np.int8)
    distances = (tables[:, None, :] != affine[None, :, :]).sum(axis=2)
    nls, counts = np.unique(distances.min(axis=1), return_counts=True)
    assert dict(zip(nls.tolist(), counts.tolist())) == census(4).nl_distribution
