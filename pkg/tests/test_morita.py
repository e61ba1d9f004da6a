"""Canonical irreducible models, the functor to quiver representations
and its inverse, and hom-space dimensions."""

import random

import numpy as np
import pytest

from conftest import fixture_doc
from eiquiver import linalg
from eiquiver.chartab import certified_prime, character_table
from eiquiver.errors import SchemaError, ValidationError
from eiquiver.morita import (MoritaContext, QuiverRep, apply_functor,
                             build_catrep, catrep_document, check_group_rep,
                             expanded_arrows, hom_dim_cat, hom_dim_quiver,
                             intertwiner_basis, inverse_functor,
                             irreducible_model, load_catrep, load_quiverrep,
                             quiverrep_document, transport_hom)
from eiquiver.permgrp import named_group
from eiquiver.quiveralg import build_quiver


@pytest.fixture(scope="module")
def s3_table():
    g = named_group("S3")
    return g, character_table(g, certified_prime(13, [g]))


@pytest.fixture(scope="module")
def rep_setup(categories):
    cat = categories["two_object_c2_s3"]
    rep = load_catrep(cat, fixture_doc("two_object_c2_s3_rep"))
    ctx = MoritaContext(build_quiver(cat))
    return cat, rep, ctx


def test_irreducible_models_s3(s3_table):
    g, table = s3_table
    for i in range(len(table)):
        gens, elems = irreducible_model(g, table, i)
        d = table.dims[i]
        assert len(gens) == len(g.generators)
        assert len(elems) == len(g)
        assert all(m.shape == (d, d) for m in elems)
        for e in range(len(g)):
            assert int(np.trace(elems[e])) % 13 == table.rows[i][
                table.class_of[e]]


def test_check_group_rep_rejects_wrong_order():
    c2 = named_group("C2")
    with pytest.raises(ValidationError):
        check_group_rep(c2, [np.array([[2]])], 1, 13)


def test_intertwiner_schur(s3_table):
    g, table = s3_table
    models = [irreducible_model(g, table, i)[1] for i in range(len(table))]
    for i in range(len(table)):
        for j in range(len(table)):
            basis = intertwiner_basis(list(models[i]), list(models[j]), 13,
                                      table.dims[i], table.dims[j])
            assert len(basis) == (1 if i == j else 0)


def test_load_catrep_fixture(rep_setup):
    cat, rep, _ = rep_setup
    assert rep.dims == {"x": 3, "y": 6}
    assert rep.p == 13
    # each morphism matrix really is a matrix of the right shape
    for (x, y), mats in rep.mor_mats.items():
        assert all(m.shape == (rep.dims[y], rep.dims[x]) for m in mats)


def test_catrep_document_round_trip(rep_setup):
    cat, rep, _ = rep_setup
    doc = catrep_document(rep)
    again = load_catrep(cat, doc)
    assert catrep_document(again) == doc


def test_load_catrep_rejects_bad_document(rep_setup):
    cat, rep, _ = rep_setup
    doc = catrep_document(rep)
    broken = {**doc, "objects": doc["objects"][:1]}
    with pytest.raises(SchemaError):
        load_catrep(cat, broken)


def test_apply_functor_golden(rep_setup):
    cat, rep, ctx = rep_setup
    q = apply_functor(ctx, rep)
    labels = [v.label for v in ctx.built.vertices]
    assert labels == ["x:X0", "x:X1", "y:X0", "y:X1", "y:X2"]
    assert q.dims == (2, 1, 1, 1, 2)
    assert [m.shape for m in q.arrow_mats] == [(1, 2), (2, 2), (1, 1), (2, 1)]


def test_round_trip_through_inverse(rep_setup):
    cat, rep, ctx = rep_setup
    q = apply_functor(ctx, rep)
    back = inverse_functor(ctx, q)
    assert back.dims == rep.dims
    again = apply_functor(ctx, back)
    assert again.dims == q.dims
    for m1, m2 in zip(again.arrow_mats, q.arrow_mats):
        assert np.array_equal(m1, m2)


def test_zero_representative_gives_zero_arrows(rep_setup):
    cat, rep, ctx = rep_setup
    zero = build_catrep(cat, rep.p,
                        {x: rep.gen_mats[x] for x in cat.objects},
                        [linalg.zeros(rep.dims["y"], rep.dims["x"])],
                        rep.dims)
    q = apply_functor(ctx, zero)
    assert q.dims == (2, 1, 1, 1, 2)
    assert all(not np.any(m) for m in q.arrow_mats)


def _parity_sign(perm, p):
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign % p


def test_build_catrep_rejects_nonequivariant_representative(rep_setup):
    # trivial at the source, sign at the target: the only equivariant map
    # is zero, so a nonzero representative cannot extend to a functor
    cat, rep, _ = rep_setup
    p = rep.p
    gen_mats = {
        "x": tuple(np.array([[1]]) for _ in cat.groups["x"].generators),
        "y": tuple(np.array([[_parity_sign(g, p)]])
                   for g in cat.groups["y"].generators),
    }
    with pytest.raises(ValidationError) as exc:
        build_catrep(cat, p, gen_mats, [np.array([[1]])])
    assert exc.value.finding == "not-functorial"


def test_hom_dims_agree(rep_setup):
    cat, rep, ctx = rep_setup
    q = apply_functor(ctx, rep)
    assert hom_dim_cat(rep, rep) == hom_dim_quiver(q, q) == 2


def test_transport_hom_identity_and_zero(rep_setup):
    cat, rep, ctx = rep_setup
    ident = {x: linalg.eye(rep.dims[x]) for x in cat.objects}
    q = apply_functor(ctx, rep)
    out = transport_hom(ctx, rep, rep, ident)
    for idx, mat in out.items():
        assert np.array_equal(mat, linalg.eye(q.dims[idx]))
    zero = {x: linalg.zeros(rep.dims[x], rep.dims[x]) for x in cat.objects}
    out = transport_hom(ctx, rep, rep, zero)
    assert all(not np.any(m) for m in out.values())


def test_quiverrep_document_round_trip(rep_setup):
    cat, rep, ctx = rep_setup
    q = apply_functor(ctx, rep)
    doc = quiverrep_document(q)
    again = load_quiverrep(ctx.built, doc)
    assert again.dims == q.dims
    for m1, m2 in zip(again.arrow_mats, q.arrow_mats):
        assert np.array_equal(m1, m2)
    bad = {**doc, "vertices": doc["vertices"][:-1]}
    with pytest.raises(SchemaError):
        load_quiverrep(ctx.built, bad)


def _random_quiverrep(ctx, rng, max_dim=2):
    dims = tuple(rng.randrange(max_dim + 1) for _ in ctx.built.vertices)
    mats = []
    for ea in expanded_arrows(ctx.built):
        m = linalg.zeros(dims[ea.target], dims[ea.source])
        for i in range(m.shape[0]):
            for j in range(m.shape[1]):
                m[i, j] = rng.randrange(ctx.p)
        mats.append(m)
    return QuiverRep(ctx.built, ctx.p, dims, tuple(mats))


def test_random_quiver_reps_round_trip(rep_setup):
    cat, rep, ctx = rep_setup
    rng = random.Random(424)
    for _ in range(10):
        q = _random_quiverrep(ctx, rng)
        r = inverse_functor(ctx, q)
        again = apply_functor(ctx, r)
        assert again.dims == q.dims
        for m1, m2 in zip(again.arrow_mats, q.arrow_mats):
            assert np.array_equal(m1, m2)
        assert hom_dim_cat(r, r) == hom_dim_quiver(q, q)
