"""Chern-class calculus on small parameter spaces and the curve-count
scenario catalog."""
import random
from fractions import Fraction

import pytest

from cgquantum.intersection import (EXPECTED, SCENARIO_IDS, FormalBundle,
                                    UnknownScenario, UnsupportedRank,
                                    product_of_lines, projective_space,
                                    run_all_scenarios, run_scenario,
                                    verify_scenarios)


def test_dual_of_line_bundle():
    space = projective_space(1)
    h = space.gen("h")
    line = FormalBundle.from_total_chern(space, 1, space.constant(1) + h)
    assert line.dual().c(1) == -h


def test_dual_of_trivial_is_trivial():
    space = projective_space(2)
    t = FormalBundle.trivial(space, 3)
    assert t.dual().chern == t.chern


def test_dual_sign_rule_rank_2():
    space = projective_space(2)
    h = space.gen("h")
    b = FormalBundle.from_total_chern(space, 2,
                                      space.constant(1) + h + h * h)
    d = b.dual()
    assert d.c(1) == -h
    assert d.c(2) == h * h


def test_exterior_square_of_split_rank_3():
    # roots 0, h, hp: the pairwise sums are h, hp, h + hp
    space = product_of_lines(("h", "hp"))
    h, hp = space.gen("h"), space.gen("hp")
    one = space.constant(1)
    b = FormalBundle.from_total_chern(space, 3,
                                      ((one + h) * (one + hp)).truncate(2))
    got = b.exterior_square()
    want = ((one + h) * (one + hp) * (one + h + hp)).truncate(2)
    assert got.chern == want


def test_exterior_square_of_trivial():
    space = projective_space(3)
    t = FormalBundle.trivial(space, 3)
    assert t.exterior_square().chern == space.constant(1)
    assert t.exterior_square().rank == 3


def test_exterior_square_with_only_c1():
    space = projective_space(3)
    h = space.gen("h")
    b = FormalBundle.from_total_chern(space, 3, space.constant(1) + h)
    got = b.exterior_square()
    assert got.c(1) == 2 * h
    assert got.c(2) == h * h  # c1^2 + c2 with c2 = 0


def test_exterior_square_of_rank_2_is_determinant():
    space = projective_space(2)
    h = space.gen("h")
    b = FormalBundle.from_total_chern(space, 2,
                                      space.constant(1) + h + 3 * h * h)
    sq = b.exterior_square()
    assert sq.rank == 1
    assert sq.c(1) == h


def test_exterior_square_rank_limit():
    space = projective_space(4)
    with pytest.raises(UnsupportedRank):
        FormalBundle.trivial(space, 4).exterior_square()


def test_twist_shifts_roots():
    space = product_of_lines(("h1", "h2"))
    h1, h2 = space.gen("h1"), space.gen("h2")
    one = space.constant(1)
    # roots 0, h2, h2 (rank 3, c = (1 + h2)^2 truncated)
    b = FormalBundle.from_total_chern(space, 3,
                                      ((one + h2) * (one + h2)).truncate(2))
    got = b.twist_by_line(h1)
    want = ((one + h1) * (one + h1 + h2) * (one + h1 + h2)).truncate(2)
    assert got.chern == want


def test_twist_by_zero_is_identity():
    space = projective_space(2)
    h = space.gen("h")
    b = FormalBundle.from_total_chern(space, 2,
                                      space.constant(1) + h + h * h)
    assert b.twist_by_line(space.ring.zero()).chern == b.chern


def test_twist_line_bundle():
    space = product_of_lines(("x", "y"))
    x, y = space.gen("x"), space.gen("y")
    b = FormalBundle.from_total_chern(space, 1, space.constant(1) + x)
    assert b.twist_by_line(y).c(1) == x + y


def test_whitney_sum_and_difference():
    rng = random.Random(3)
    space = product_of_lines(("u", "v", "w"))
    gens = [space.gen(n) for n in ("u", "v", "w")]
    one = space.constant(1)
    for _ in range(10):
        a = one
        b = one
        for g in gens:
            a = a * (one + rng.randint(-2, 2) * g)
            b = b * (one + rng.randint(-2, 2) * g)
        ba = FormalBundle.from_total_chern(space, 3, a.truncate(3))
        bb = FormalBundle.from_total_chern(space, 3, b.truncate(3))
        total = ba.plus(bb)
        assert total.chern == (ba.chern * bb.chern).truncate(3)
        assert total.minus(bb).chern == ba.chern


def test_projective_space_integration():
    for n in (1, 2, 3, 5):
        space = projective_space(n)
        h = space.gen("h")
        assert space.integrate(h ** n) == 1
        if n > 1:
            assert space.integrate(h ** (n - 1)) == 0


def test_triple_product_count():
    space = product_of_lines(("h1", "h2", "h3"))
    h1, h2, h3 = (space.gen(n) for n in ("h1", "h2", "h3"))
    cls = (h1 + h3) * (h2 + h3) * (h1 + h2 + h3)
    assert space.integrate(cls) == 3


def test_scenario_catalog_values():
    for sid, (main, correction) in EXPECTED.items():
        res = run_scenario(sid)
        assert res.main == main, sid
        assert res.correction == correction, sid
        assert res.value == main - correction


def test_scenario_with_correction():
    res = run_scenario("4.1.8")
    assert (res.main, res.correction, res.value) == (7, 1, 6)


def test_unknown_scenario_rejected():
    with pytest.raises(UnknownScenario):
        run_scenario("9.9.9")


def test_run_all_covers_catalog():
    results = run_all_scenarios()
    assert set(results) == set(SCENARIO_IDS) == set(EXPECTED)
    assert len(results) == 12


def test_verification_report_passes():
    report = verify_scenarios()
    assert report.ok
