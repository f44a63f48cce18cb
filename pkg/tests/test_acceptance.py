"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Everything here is exact GF(2)/integer arithmetic, so every tolerance is
zero: assertions are plain equalities.  Run with `pytest tests/test_acceptance.py -v -s`
to see the lines as they go.
"""

import itertools
import random
import time
from contextlib import contextmanager

import pytest

from conftest import quadratic_vanishes_exhaustive
from char2uni import flags as flags_mod
from char2uni.class_labels import (
    CycleType,
    SpLabel,
    closure_leq,
    enumerate_sp_labels,
)
from char2uni.gf2 import (
    BitMatrix,
    is_unipotent,
    jordan_type,
    kernel,
    quadratic_vanishes_on,
    sp_label_of,
    span,
)
from char2uni.harness import adapted_classes
from char2uni.partitions import (
    Partition,
    dominance_leq,
    enumerate_partitions,
    nilpotent_power_rank,
)

# criterion quantifier bounds, as stated
C1_SINGLE_TOTAL = 12
C1_INDEX = 12
C1_PAIR_TOTAL = 12
C1_LEMMA_TOTAL = 10
C3_MAX_NN = 12
C4_MAX_N = 4
C8_RANDOM_SUBSPACES = 1000
C8_MAX_DIM = 12


@contextmanager
def criterion(num, desc):
    t0 = time.time()
    try:
        yield
    except BaseException:
        print("ACCEPTANCE criterion %d (%s): FAIL [%.1fs]" % (num, desc, time.time() - t0))
        raise
    print("ACCEPTANCE criterion %d (%s): PASS [%.1fs]" % (num, desc, time.time() - t0))


def even_sigma(ct):
    return ct.sigma % 2 == 0


def all_cycle_types(n):
    return [CycleType(p.parts) for p in enumerate_partitions(n)]


def test_criterion_1_partition_lemmas():
    with criterion(1, "partition lemma suite"):
        # single-partition identities
        for total in range(C1_SINGLE_TOTAL + 1):
            for c in enumerate_partitions(total):
                cstar = c.conjugate()
                for i in range(1, C1_INDEX + 1):
                    # splitting the diagram at column i
                    assert nilpotent_power_rank(c, i) + cstar.prefix_sum(i) == total
                    for j in range(1, C1_INDEX + 1):
                        assert (i <= c.part(j)) == (j <= cstar.part(i))

        # two-partition equivalences
        for total in range(C1_PAIR_TOTAL + 1):
            parts = enumerate_partitions(total)
            pre = []
            for c in parts:
                cstar = c.conjugate()
                pre.append((
                    [cstar.prefix_sum(i) for i in range(C1_INDEX + 1)],
                    [nilpotent_power_rank(c, i) for i in range(1, C1_INDEX + 1)],
                ))
            for a in range(len(parts)):
                for b in range(len(parts)):
                    sums_a, ranks_a = pre[a]
                    sums_b, ranks_b = pre[b]
                    for i in range(1, C1_INDEX + 1):
                        assert (sums_a[i] == sums_b[i]) == (ranks_a[i - 1] == ranks_b[i - 1])
                        assert (sums_a[i] >= sums_b[i]) == (ranks_a[i - 1] <= ranks_b[i - 1])

        # exchange lemma
        for total in range(C1_LEMMA_TOTAL + 1):
            parts = enumerate_partitions(total)
            for c in parts:
                cstar = c.conjugate()
                for cp in parts:
                    if not dominance_leq(c, cp):
                        continue
                    cpstar = cp.conjugate()
                    for i in range(1, total + 2):
                        if cstar.prefix_sum(i) != cpstar.prefix_sum(i):
                            continue
                        if c.multiplicity(i) == 0:
                            continue
                        assert cstar.part(i) <= cpstar.part(i)
                        assert cp.multiplicity(i) > 0


def test_criterion_2_parametrization_realized(sp4_space, sp4_unipotents):
    with criterion(2, "Sp_4(F_2) label bijection"):
        image = {sp_label_of(g, sp4_space) for g in sp4_unipotents}
        assert image == set(enumerate_sp_labels(4))
        assert len(image) == 5
        eps_seen = {
            lab.eps[2]
            for lab in (sp_label_of(g, sp4_space) for g in sp4_unipotents)
            if lab.jordan == Partition([2, 2])
        }
        assert eps_seen == {0, 1}


def test_criterion_3_closure_order_sanity():
    with criterion(3, "closure order is a partial order, nn <= %d" % C3_MAX_NN):
        for nn in range(2, C3_MAX_NN + 1, 2):
            labels = enumerate_sp_labels(nn)
            m = len(labels)
            up = [0] * m
            for i in range(m):
                for j in range(m):
                    if closure_leq(labels[i], labels[j]):
                        up[i] |= 1 << j
            for i in range(m):
                assert (up[i] >> i) & 1  # reflexive
                t = up[i]
                while t:
                    j = (t & -t).bit_length() - 1
                    t &= t - 1
                    if i != j:
                        assert not (up[j] >> i) & 1  # antisymmetric
                        assert dominance_leq(labels[i].jordan, labels[j].jordan)
                    assert up[j] & ~up[i] == 0  # transitive
            full = (1 << m) - 1
            minima = [i for i in range(m) if up[i] == full]
            maxima = [i for i in range(m) if all((up[j] >> i) & 1 for j in range(m))]
            assert [labels[i] for i in minima] == [SpLabel([1] * nn, {})]
            assert [labels[i] for i in maxima] == [SpLabel([nn], {nn: 1})]


def test_criterion_4_theorem_at_desk_scale(reports):
    with criterion(4, "doubled-type label adapted and closure-minimal, n <= %d" % C4_MAX_N):
        for n in range(2, C4_MAX_N + 1):
            for ct in all_cycle_types(n):
                rep = reports(ct.parts, "sp")
                ok, bad = rep.theorem_holds()
                assert ok, "sp %r: violations %r" % (ct.parts, [x.pretty() for x in bad])
                if even_sigma(ct):
                    rep = reports(ct.parts, "so")
                    ok, bad = rep.theorem_holds()
                    assert ok, "so %r: violations %r" % (ct.parts, [x.pretty() for x in bad])


def test_criterion_5_unique_minimum(reports):
    with criterion(5, "unique minimum of the adapted set, n <= %d" % C4_MAX_N):
        for n in range(2, C4_MAX_N + 1):
            for ct in all_cycle_types(n):
                assert reports(ct.parts, "sp").unique_min_holds(), "sp %r" % (ct.parts,)
                if even_sigma(ct):
                    assert reports(ct.parts, "so").unique_min_holds(), "so %r" % (ct.parts,)


def test_criterion_6_epsilon_forcing_probe(reports):
    with criterion(6, "eps forced at equal conjugate prefix sums, n <= 3"):
        for n in range(2, 4):
            for ct in all_cycle_types(n):
                assert reports(ct.parts, "sp").epsilon_forcing_holds(), "sp %r" % (ct.parts,)


def test_criterion_7_coset_size_oracle(reports):
    with criterion(7, "coset sizes 2^(n^2) and 2^(n(n-1)), n in {2, 3}"):
        for n in (2, 3):
            for ct in all_cycle_types(n):
                assert reports(ct.parts, "sp").coset_size == 1 << (n * n)
                if even_sigma(ct):
                    assert reports(ct.parts, "so").coset_size == 1 << (n * (n - 1))


def test_criterion_8_quadratic_vanishing_oracle(sp4_space, sp4_unipotents):
    with criterion(8, "basis-pair vanishing test vs exhaustive sweep"):
        # every kernel subspace arising while classifying Sp_4(F_2)
        for g in sp4_unipotents:
            big = g + BitMatrix.identity(4)
            c = jordan_type(g)
            for i in set(c.parts):
                if i % 2 == 1:
                    continue
                sub = kernel(big ** i)
                m = big ** (i - 1)
                assert quadratic_vanishes_on(m, sp4_space, sub) == \
                    quadratic_vanishes_exhaustive(m, sp4_space, sub)
        # random subspaces of dimension <= 12; every fifth matrix comes from
        # the vanishing family (multiples of the identity: (x, x) = 0 for an
        # alternating form), so the exhaustive sweep runs to completion there
        rng = random.Random(2024)
        ambient = C8_MAX_DIM
        space = flags_mod.standard_space(ambient // 2, False)
        vanish_hits = 0
        for k in range(C8_RANDOM_SUBSPACES):
            if k % 5 == 0:
                m = BitMatrix.identity(ambient) if k % 10 else BitMatrix.zeros(ambient, ambient)
            else:
                m = BitMatrix([rng.randrange(1 << ambient) for _ in range(ambient)], ambient)
            d = rng.randrange(0, C8_MAX_DIM + 1)
            sub = span([rng.randrange(1 << ambient) for _ in range(d)], ambient)
            assert sub.dim <= C8_MAX_DIM
            fast = quadratic_vanishes_on(m, space, sub)
            assert fast == quadratic_vanishes_exhaustive(m, space, sub)
            vanish_hits += fast
        assert vanish_hits >= C8_RANDOM_SUBSPACES // 5  # both answers exercised


def test_criterion_9_thread_determinism():
    with criterion(9, "reports byte-identical across 1 vs 4 workers, n = 3"):
        for ct in all_cycle_types(3):
            serial = adapted_classes(ct, "sp", threads=1).to_json_str()
            parallel = adapted_classes(ct, "sp", threads=4).to_json_str()
            assert serial == parallel
