import random

import pytest

from conftest import random_isometry
from char2uni.class_labels import CycleType
from char2uni.flags import (
    Flag,
    FlagPair,
    build_flag_pair,
    check_flag_conditions,
    standard_flag,
    standard_space,
)
from char2uni.gf2 import BitMatrix, Subspace, image_under, rank, span
from char2uni.partitions import enumerate_partitions

BUILD_MAX_N = 5


def test_standard_space_shape():
    sp = standard_space(2, False)
    assert sp.dim == 4 and not sp.has_q
    assert sp.gram.to_json() == [
        [0, 0, 0, 1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [1, 0, 0, 0],
    ]
    so = standard_space(2, True)
    assert so.gram == sp.gram and so.q_values == (0, 0, 0, 0)
    for n in (2, 3, 4):
        assert rank(standard_space(n, False).gram) == 2 * n
    with pytest.raises(ValueError):
        standard_space(1, False)


def test_standard_flag():
    sp = standard_space(2, False)
    fl = standard_flag(sp)
    assert fl.steps[1] == span([0b0001], 4)          # e1
    assert fl.steps[3] == span([0b0001, 0b0010, 0b0100], 4)  # perp of e1
    assert fl.is_valid()
    for n in (2, 3):
        for with_q in (False, True):
            assert standard_flag(standard_space(n, with_q)).is_valid()


def test_flag_prefix_completion():
    sp = standard_space(2, False)
    good = [span([1 << j for j in range(i)], 4) for i in range(3)]
    fl = Flag.from_isotropic_prefix(sp, good)
    assert fl == standard_flag(sp)
    # a non-isotropic prefix must be rejected: (e1, f1) = 1
    bad = [Subspace(4), span([0b0001], 4), span([0b0001, 0b1000], 4)]
    with pytest.raises(ValueError):
        Flag.from_isotropic_prefix(sp, bad)


def test_checker_small_case_requirements():
    # cycles (1,1) at n=2: the first step of the second flag must avoid the
    # perp hyperplane of e1, meeting it in dimension 0 and the whole space
    # in dimension 1
    ct = CycleType([1, 1])
    pair = build_flag_pair(ct, False)
    dims = pair.intersection_dims()
    assert dims[1][3] == 0 and dims[1][4] == 1
    assert dims[2][2] == 0 and dims[2][3] == 1


def test_checker_rejects_equal_flags():
    for n in (2, 3):
        sp = standard_space(n, False)
        fl = standard_flag(sp)
        pair = FlagPair(fl, fl, CycleType([n]))
        assert not check_flag_conditions(pair)


def test_build_flag_pair_all_small_cycle_types():
    for n in range(2, BUILD_MAX_N + 1):
        for p in enumerate_partitions(n):
            ct = CycleType(p.parts)
            forms = [False] + ([True] if ct.sigma % 2 == 0 else [])
            for with_q in forms:
                pair = build_flag_pair(ct, with_q)
                assert pair.a.is_valid()
                assert pair.b.is_valid()
                assert check_flag_conditions(pair)
    with pytest.raises(ValueError):
        build_flag_pair(CycleType([1, 1, 1]), True)  # odd number of cycles


def test_pair_dims_monotone_with_unit_steps():
    for parts in ([2], [1, 1], [2, 1], [3]):
        pair = build_flag_pair(CycleType(parts), False)
        dims = pair.intersection_dims()
        nn = pair.space.dim
        for j in range(nn + 1):
            for i in range(nn + 1):
                if i:
                    assert dims[j][i] - dims[j][i - 1] in (0, 1)
                if j:
                    assert dims[j][i] - dims[j - 1][i] in (0, 1)
        assert dims[nn][nn] == nn and dims[0][0] == 0


def test_intersection_pattern_is_isometry_invariant():
    rng = random.Random(47)
    for parts in ([2, 1], [1, 1, 1], [3]):
        ct = CycleType(parts)
        pair = build_flag_pair(ct, False)
        base = pair.intersection_dims()
        sp = pair.space
        for _ in range(3):
            g = random_isometry(sp, rng)
            moved = FlagPair(
                Flag(sp, [image_under(g, s) for s in pair.a.steps]),
                Flag(sp, [image_under(g, s) for s in pair.b.steps]),
                ct,
            )
            assert moved.intersection_dims() == base
            assert check_flag_conditions(moved)


def test_pair_to_dict():
    pair = build_flag_pair(CycleType([1, 1]), False)
    obj = pair.to_dict()
    assert obj["form"] == "sp" and obj["cycles"] == [1, 1]
    assert obj["b_step_indices"][0] == []
    assert len(obj["b_step_indices"]) == 5
    assert len(obj["intersection_dims"]) == 5
    assert obj["intersection_dims"][4][4] == 4
