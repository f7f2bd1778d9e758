"""FI-module data: free modules, injections, shift, colimits, cokernels."""

import random

import pytest

from fihom import (
    CokernelTorsionError,
    FBData,
    FIModule,
    Matrix,
    QQ,
    ZZ,
    colim_compare,
    constant_module,
    direct_sum,
    fi_coker,
    free_basis_labels,
    free_fi_module,
    free_morphism,
    induced_injection_matrix,
    representable,
    representable_basis_injections,
    shift_module,
    truncate,
    validate,
    validate_fbdata,
    validate_morphism,
    zero_module,
)
from fihom.generate import random_fbdata


def fbdata_dims(ring, dims):
    return FBData(ring, len(dims) - 1, tuple(dims))


def same_structure(V, W):
    """Equality of the matrix data, ignoring the name field."""
    return (V.ring == W.ring and V.truncation == W.truncation
            and V.dims == W.dims and V.iota == W.iota and V.trans == W.trans)


# ---------------------------------------------------------------------------
# free modules


def test_free_dims_point_generator():
    V = free_fi_module(fbdata_dims(ZZ, (0, 1, 0, 0, 0)))
    assert V.dims == (0, 1, 2, 3, 4)


def test_free_dims_constant():
    V = free_fi_module(fbdata_dims(ZZ, (1,)))
    assert V.dims == (1,)
    V = free_fi_module(fbdata_dims(QQ, (1, 0, 0)))
    assert V.dims == (1, 1, 1)
    assert all(M == Matrix.identity(QQ, 1) for M in V.iota)


def test_free_dims_binomial():
    V = free_fi_module(fbdata_dims(ZZ, (1, 0, 1, 0)))
    assert V.dims == (1, 1, 2, 4)  # 1 + C(n, 2)


def test_free_dims_binomial_formula_random():
    from math import comb

    rng = random.Random("dims:0")
    for _ in range(20):
        trunc = rng.randint(1, 5)
        X = random_fbdata(rng, ZZ, trunc)
        V = free_fi_module(X)
        for n in range(trunc + 1):
            assert V.dims[n] == sum(comb(n, k) * X.dims[k] for k in range(n + 1))


def test_free_modules_validate():
    rng = random.Random("validate:0")
    for ring in (ZZ, QQ):
        for _ in range(5):
            X = random_fbdata(rng, ring, rng.randint(1, 4))
            assert validate(free_fi_module(X)) == []


def test_free_basis_labels_cover_dims():
    X = fbdata_dims(ZZ, (1, 0, 1))
    V = free_fi_module(X)
    for n in range(3):
        labels = free_basis_labels(X, n)
        assert len(labels) == V.dims[n]


def test_representable_dims_are_injection_counts():
    V = representable(2, 3, ZZ)
    assert V.dims == (0, 0, 2, 6)
    assert len(representable_basis_injections(2, 3)) == 6


# ---------------------------------------------------------------------------
# induced injections


def test_identity_injection_is_identity_matrix():
    V = representable(1, 3, ZZ)
    for a in range(4):
        f = tuple(range(a))
        assert induced_injection_matrix(V, f) == Matrix.identity(ZZ, V.dims[a])


def test_point_module_standard_inclusion():
    V = representable(1, 2, ZZ)
    M = induced_injection_matrix(V, (0,), a=1, b=2)
    assert M.to_rows() == [[1], [0]]


def test_injection_guards():
    V = representable(1, 2, ZZ)
    with pytest.raises(ValueError):
        induced_injection_matrix(V, (0, 0))  # not injective
    with pytest.raises(ValueError):
        induced_injection_matrix(V, (0,), a=1, b=5)  # past the truncation


def random_injection(rng, a, b):
    return tuple(rng.sample(range(b), a))


def test_injection_functoriality():
    rng = random.Random("compose:0")
    mods = [representable(2, 4, ZZ),
            free_fi_module(random_fbdata(rng, ZZ, 4)),
            free_fi_module(random_fbdata(rng, QQ, 4))]
    for V in mods:
        for _ in range(60):
            c = rng.randint(0, 4)
            b = rng.randint(0, c)
            a = rng.randint(0, b)
            f = random_injection(rng, a, b)
            g = random_injection(rng, b, c)
            gf = tuple(g[x] for x in f)
            lhs = induced_injection_matrix(V, gf, a=a, b=c)
            rhs = induced_injection_matrix(V, g, a=b, b=c) \
                @ induced_injection_matrix(V, f, a=a, b=b)
            assert lhs == rhs


# ---------------------------------------------------------------------------
# validation


def test_validate_reports_negated_transposition():
    V = representable(1, 3, ZZ)
    trans = list(list(t) for t in V.trans)
    trans[3][0] = trans[3][0].scale(-1)  # s_1 at the top level
    bad = validate(FIModule(V.ring, V.truncation, V.dims, V.iota,
                            tuple(tuple(t) for t in trans)))
    assert bad
    assert any("s_1" in msg for msg in bad)


def test_zero_iota_is_valid_module_data():
    z = Matrix.zeros(ZZ, 1, 1)
    V = FIModule(ZZ, 2, (1, 1, 1), (z, z), ((), (), (Matrix.identity(ZZ, 1),)))
    assert validate(V) == []


def test_validate_fbdata_catches_broken_involution():
    X = random_fbdata(random.Random("fb:1"), ZZ, 3)
    assert validate_fbdata(X) == []
    if X.trans is not None and X.dims[2] >= 1:
        bad_mat = Matrix.from_rows(ZZ, [[1] * X.dims[2]] * X.dims[2],
                                   ncols=X.dims[2])
        trans = list(list(t) for t in X.trans)
        trans[2] = [bad_mat]
        Y = FBData(X.ring, X.truncation, X.dims, tuple(tuple(t) for t in trans))
        if bad_mat @ bad_mat != Matrix.identity(ZZ, X.dims[2]):
            assert validate_fbdata(Y)


# ---------------------------------------------------------------------------
# sums, truncation, zero


def test_direct_sum_dims_add():
    A = representable(1, 3, ZZ)
    B = representable(2, 3, ZZ)
    S = direct_sum(A, B)
    assert S.dims == tuple(a + b for a, b in zip(A.dims, B.dims))
    assert validate(S) == []


def test_truncate_prefix():
    V = representable(1, 4, ZZ)
    W = truncate(V, 2)
    assert W.truncation == 2
    assert W.dims == V.dims[:3]
    assert validate(W) == []


def test_zero_module_is_zero():
    Z = zero_module(3, QQ)
    assert Z.dims == (0, 0, 0, 0)
    assert Z.is_zero()
    assert not constant_module(3, QQ).is_zero()


# ---------------------------------------------------------------------------
# shift


def test_shift_constant_is_constant_with_identity_map():
    sd = shift_module(constant_module(3, ZZ))
    assert same_structure(sd.module, constant_module(2, ZZ))
    assert all(m == Matrix.identity(ZZ, 1) for m in sd.natural.levels)


def test_shift_point_module_dims():
    sd = shift_module(representable(1, 4, ZZ))
    assert sd.module.dims == (1, 2, 3, 4)
    assert validate(sd.module) == []


def test_shift_natural_map_is_a_morphism():
    rng = random.Random("shiftnat:0")
    for _ in range(6):
        V = free_fi_module(random_fbdata(rng, QQ, rng.randint(1, 4)))
        sd = shift_module(V)
        assert validate(sd.module) == []
        assert validate_morphism(sd.natural) == []


def test_shift_needs_positive_truncation():
    with pytest.raises(ValueError):
        shift_module(constant_module(0, ZZ))


# ---------------------------------------------------------------------------
# colimit comparison


def test_colim_free_iso_at_generator_degree():
    X = fbdata_dims(ZZ, (1, 0, 1, 0))
    V = free_fi_module(X)
    for n in range(4):
        cls, iso = colim_compare(V, n, 2)
        assert iso
        assert cls.rank == V.dims[n]


def test_colim_point_module_misses_generators():
    V = representable(2, 3, QQ)
    cls, iso = colim_compare(V, 3, 1)
    assert not iso
    assert cls.is_zero()  # nothing below cardinality 2 to generate with


def test_colim_full_cutoff_always_iso():
    rng = random.Random("colim:0")
    for _ in range(4):
        V = free_fi_module(random_fbdata(rng, QQ, 3))
        for n in range(4):
            _, iso = colim_compare(V, n, n)
            assert iso


def test_colim_iso_monotone_in_cutoff():
    rng = random.Random("colim:1")
    for _ in range(4):
        V = free_fi_module(random_fbdata(rng, ZZ, 3))
        for n in range(4):
            flags = [colim_compare(V, n, K)[1] for K in range(n + 1)]
            assert all(b for a, b in zip(flags, flags[1:]) if a)


def test_colim_rejects_negative_cutoff():
    with pytest.raises(ValueError):
        colim_compare(constant_module(2, ZZ), 1, -1)


# ---------------------------------------------------------------------------
# morphisms and cokernels


def test_free_morphism_is_valid():
    target = representable(1, 3, QQ)
    f = free_morphism([0, 1], target, [[], [1]])  # target(0_) is 0-dimensional
    assert validate_morphism(f) == []
    assert f.source.dims == tuple(1 + d for d in target.dims)


def test_free_morphism_checks_image_dimension():
    with pytest.raises(ValueError):
        free_morphism([0], representable(1, 2, QQ), [[1, 2]])


def test_coker_of_identity_is_zero():
    V = representable(1, 3, QQ)
    ident = free_morphism([1], V, [[1]])
    C = fi_coker(ident)
    assert C.is_zero()


def test_coker_of_zero_map_is_target():
    target = constant_module(3, QQ)
    f = free_morphism([1], target, [[0]])
    C = fi_coker(f)
    assert same_structure(C, target)


def test_coker_of_augmentation_is_skyscraper():
    target = constant_module(3, QQ)
    f = free_morphism([1], target, [[1]])
    C = fi_coker(f)
    assert C.dims == (1, 0, 0, 0)
    assert validate(C) == []


def test_coker_validates_on_random_instances():
    rng = random.Random("coker:0")
    for _ in range(6):
        X = random_fbdata(rng, QQ, 3, top=2)
        target = free_fi_module(X)
        cards = [rng.randint(0, 2) for _ in range(rng.randint(1, 2))]
        images = [[rng.randint(-2, 2) for _ in range(target.dims[m])]
                  for m in cards]
        C = fi_coker(free_morphism(cards, target, images))
        assert validate(C) == []


def test_coker_torsion_over_z_raises():
    target = representable(0, 3, ZZ)
    doubling = free_morphism([0], target, [[2]])
    with pytest.raises(CokernelTorsionError):
        fi_coker(doubling)
