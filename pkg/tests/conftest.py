"""Shared fixtures and small independent oracles for the test suite."""

import pytest

from char2uni import flags, gf2, harness
from char2uni.class_labels import CycleType
from char2uni.gf2 import BitMatrix


def generate_group(gens):
    """Closure of a generating set under multiplication (small groups only)."""
    group = set(gens)
    frontier = list(gens)
    while frontier:
        new = []
        for g in frontier:
            for t in gens:
                h = g * t
                if h not in group:
                    group.add(h)
                    new.append(h)
        frontier = new
    return group


def symplectic_group(space):
    gens = [gf2.transvection(space, a) for a in range(1, 1 << space.dim)]
    return generate_group(gens)


def random_invertible(n, rng):
    while True:
        m = BitMatrix([rng.randrange(1 << n) for _ in range(n)], n)
        try:
            gf2.inverse(m)
        except ValueError:
            continue
        return m


def random_isometry(space, rng, length=8):
    """A product of random transvections (Q-preserving ones when Q exists)."""
    g = BitMatrix.identity(space.dim)
    count = 0
    while count < length:
        a = rng.randrange(1, 1 << space.dim)
        if space.has_q and space.q(a) != 1:
            continue
        g = g * gf2.transvection(space, a)
        count += 1
    return g


def unipotent_block_matrix(parts):
    """Block-diagonal unipotent matrix with Jordan blocks of the given sizes."""
    n = sum(parts)
    rows = []
    off = 0
    for p in parts:
        for r in range(p):
            row = 1 << (off + r)
            if r + 1 < p:
                row |= 1 << (off + r + 1)
            rows.append(row)
        off += p
    return BitMatrix(rows, n)


def quadratic_vanishes_exhaustive(m, space, sub):
    """Oracle for the basis-pair test: sweep all 2^dim subspace vectors."""
    return all(space.form(m.apply(x), x) == 0 for x in sub.vectors())


@pytest.fixture(scope="session")
def sp4_space():
    return flags.standard_space(2, False)


@pytest.fixture(scope="session")
def sp4_group(sp4_space):
    group = symplectic_group(sp4_space)
    assert len(group) == 720  # |Sp_4(F_2)|
    return sorted(group, key=lambda g: g.rows)


@pytest.fixture(scope="session")
def sp4_unipotents(sp4_space, sp4_group):
    return [g for g in sp4_group if gf2.is_unipotent(g)]


@pytest.fixture(scope="session")
def reports():
    """Session-wide cache of harness reports keyed by (cycles, form)."""
    cache = {}

    def get(parts, form):
        key = (tuple(sorted(parts, reverse=True)), form)
        if key not in cache:
            cache[key] = harness.adapted_classes(CycleType(parts), form)
        return cache[key]

    return get
