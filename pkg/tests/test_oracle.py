"""The structure-constant algebra, radical filtration and the
fixed-point arrow-count oracle."""

import random
from dataclasses import replace

import pytest

from eiquiver.errors import OracleMismatch
from eiquiver.oracle import (build_algebra, check_against_quiver,
                             ext_quiver_oracle, radical_report)
from eiquiver.quiveralg import QuiverArrow, build_quiver
from randcats import random_free_category, random_nonfree_category


def test_algebra_dimensions(categories):
    assert build_algebra(categories["two_object_c2_s3"]).dim == 14
    assert build_algebra(categories["one_object_c2"]).dim == 2
    cat = categories["four_object_mixed"]
    assert build_algebra(cat).dim == cat.morphism_count()


def test_group_algebra_table(categories):
    cat = categories["one_object_c2"]
    alg = build_algebra(cat)
    g = cat.groups["x"]
    for i in range(2):
        for j in range(2):
            assert alg.prod[i][j] == g.mul(alg.basis[i].index,
                                           alg.basis[j].index)


def test_algebra_associativity(categories):
    alg = build_algebra(categories["fork_merge_free"])
    n = alg.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                jk = alg.prod[j][k]
                ij = alg.prod[i][j]
                lhs = alg.prod[i][jk] if jk >= 0 else -1
                rhs = alg.prod[ij][k] if ij >= 0 else -1
                assert lhs == rhs


def test_radical_two_object(categories):
    report = radical_report(build_algebra(categories["two_object_c2_s3"]))
    assert len(report.rad_positions) == 6
    assert len(report.rad_sq_positions) == 0
    assert len(report.unfact_positions) == 6
    assert report.nilpotency_degree == 2


def test_radical_one_object(categories):
    report = radical_report(build_algebra(categories["one_object_c2"]))
    assert report.rad_positions == ()
    assert report.nilpotency_degree == 1


def test_radical_mixed_chain(categories):
    cat = categories["four_object_mixed"]
    report = radical_report(build_algebra(cat))
    assert len(report.unfact_positions) == 2 + 6 + 1
    assert report.nilpotency_degree <= len(cat.objects)


def test_oracle_matches_quiver_on_fixtures(categories):
    for name, cat in categories.items():
        q = build_quiver(cat)
        oracle = check_against_quiver(q)
        assert oracle == {k: v % q.prime.p
                          for k, v in q.mult_map().items() if v % q.prime.p}


def test_oracle_line_adjacency(categories):
    cat = categories["line_quiver_free"]
    q = build_quiver(cat)
    oracle = ext_quiver_oracle(cat, q.prime, q.tables)
    assert oracle == {(("w", 0), ("x", 0)): 1,
                      (("x", 0), ("y", 0)): 1,
                      (("y", 0), ("z", 0)): 1}


def test_oracle_detects_tampered_multiplicity(categories):
    q = build_quiver(categories["two_object_c2_s3"])
    a = q.arrows[0]
    tampered = replace(q, arrows=(QuiverArrow(a.source, a.target,
                                              a.mult + 1, a.units),)
                       + q.arrows[1:])
    with pytest.raises(OracleMismatch):
        check_against_quiver(tampered)


def test_oracle_on_random_categories():
    rng = random.Random(88)
    for make in (random_free_category, random_nonfree_category):
        for _ in range(8):
            cat = make(rng, max_mor=150)
            q = build_quiver(cat)
            check_against_quiver(q)
