import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ranksd.field import (BinaryField, ExtensionField, FieldTower, gf2_is_irreducible, gf2_mod,
                          gf2_mulmod, ext_is_irreducible, lex_smallest_gf2, lex_smallest_ext)
from ranksd.params import GF2_MODULI, F256_EXT_MODULI, ETA_MODULI, F256_MODULUS, get_params

from helpers import rand_elems, rand_nonzero, all_elems, small_fields


def _towers():
    out = {}
    for name in ("ryde128-hyp-short", "ryde192-hyp-short", "ryde256-hyp-short",
                 "ryde128-thr-l3", "ryde192-thr-l3", "ryde256-thr-l3", "ryde128-thr-l1"):
        T = get_params(name).tower
        out["Fq(%d)" % T.q] = T.Fq
        out["Fqm(%d,%d)" % (T.q, T.m)] = T.Fqm
        if T.eta > 1:
            out["Fqme(%d,%d,%d)" % (T.q, T.m, T.eta)] = T.Fqme
    return out


FIELDS = _towers()
CASES = 1000


@pytest.fixture(params=sorted(FIELDS), ids=sorted(FIELDS))
def F(request):
    return FIELDS[request.param]


def test_ring_laws(F, rng):
    a, b, c = (rand_elems(F, CASES, rng) for _ in range(3))
    assert np.all(F.eq(F.mul(a, b), F.mul(b, a)))
    assert np.all(F.eq(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c))))
    assert np.all(F.eq(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c))))
    assert np.all(F.eq(F.add(a, a), F.zeros((CASES,))))
    assert np.all(F.eq(F.mul(a, F.one((CASES,))), a))
    assert np.all(F.eq(F.sqr(a), F.mul(a, a)))


def test_inverse(F, rng):
    a = rand_nonzero(F, CASES, rng)
    assert np.all(F.eq(F.mul(a, F.inv(a)), F.one((CASES,))))
    with pytest.raises(ZeroDivisionError):
        F.inv(F.zeros())


def test_frobenius(F, rng):
    a, b = rand_elems(F, CASES, rng), rand_elems(F, CASES, rng)
    # x -> x^q is a field automorphism of order [F : F_q]
    assert np.all(F.eq(F.frob(F.mul(a, b)), F.mul(F.frob(a), F.frob(b))))
    assert np.all(F.eq(F.frob(F.add(a, b)), F.add(F.frob(a), F.frob(b))))
    assert np.all(F.eq(F.frob(a, F.degree_over_q), a))
    assert np.all(F.eq(F.frob(a, 1), F.pow(a, F.q)))


def test_fermat(F, rng):
    a = rand_nonzero(F, 50, rng)
    assert np.all(F.eq(F.pow(a, F.order - 1), F.one((50,))))


def test_bits_roundtrip(F, rng):
    a = rand_elems(F, 200, rng)
    assert np.all(F.eq(F.from_bits(F.to_bits(a)), a))
    assert np.all(F.eq(F.from_coords(F.to_coords(a)), a))


# -- independent oracles ------------------------------------------------------


def test_quadratic_over_f4_matches_f16():
    """GF((2^2)^2) vs GF(2^4): an explicit map built from roots is a ring
    isomorphism, which pins down the extension multiplication."""
    F4, F16, E = (small_fields()[k] for k in ("F4", "F16", "F4^2"))
    ints = range(16)
    # image of the F4 generator w (w^2 = w + 1) and of the root t of X^2 + X + w
    w16 = next(v for v in ints if v > 1 and gf2_mulmod(v, v, 0b10011) ^ v == 1)
    psi = {0: 0, 1: 1, 2: w16, 3: w16 ^ 1}
    t16 = next(v for v in ints if gf2_mulmod(v, v, 0b10011) ^ v ^ psi[2] == 0)

    def phi(x):
        a0, a1 = int(x[0]), int(x[1])
        return psi[a0] ^ gf2_mulmod(psi[a1], t16, 0b10011)

    elems = all_elems(E)
    images = [phi(x) for x in elems]
    assert sorted(images) == list(range(16))
    for x, y in itertools.product(range(16), repeat=2):
        prod = E.mul(elems[x], elems[y])
        assert phi(prod) == gf2_mulmod(images[x], images[y], 0b10011)
        assert phi(E.add(elems[x], elems[y])) == images[x] ^ images[y]


def _irreducible_by_trial(f):
    d = f.bit_length() - 1
    return d >= 1 and all(gf2_mod(f, g) for g in range(2, 1 << (d // 2 + 1)))


def test_rabin_matches_trial_division():
    for f in range(2, 1 << 11):
        assert gf2_is_irreducible(f) == _irreducible_by_trial(f), bin(f)


@pytest.mark.parametrize("d", [2, 3])
def test_rabin_over_f4_matches_root_search(d):
    # degree 2 and 3 polynomials are reducible exactly when they have a root
    F4 = small_fields()["F4"]
    elems = all_elems(F4)
    for low in itertools.product(range(4), repeat=d):
        coeffs = list(low) + [1]
        has_root = False
        for x in range(4):
            acc, xp = 0, 1
            for c in coeffs:
                acc ^= int(F4.mul(np.uint8(c), np.uint8(xp)))
                xp = int(F4.mul(np.uint8(xp), elems[x]))
            has_root |= acc == 0
        assert ext_is_irreducible(F4, np.array(low, dtype=np.uint8)) == (not has_root)


def test_lex_smallest_gf2_brute_force():
    for d in range(2, 11):
        cands = []
        for f in range(1 << d, 1 << (d + 1)):
            if _irreducible_by_trial(f):
                cands.append((tuple((f >> i) & 1 for i in range(d)), f))
        assert lex_smallest_gf2(d) == min(cands)[1]


def test_pinned_moduli_are_lex_smallest():
    for m, f in GF2_MODULI.items():
        assert lex_smallest_gf2(m) == f
    F8 = BinaryField(8, F256_MODULUS, q=256)
    assert lex_smallest_gf2(8) == F256_MODULUS
    for m, low in F256_EXT_MODULI.items():
        assert tuple(lex_smallest_ext(F8, m)) == low
    for (q, m, eta), low in ETA_MODULI.items():
        base = FieldTower(q, m, 1, GF2_MODULI[m] if q == 2 else F256_EXT_MODULI[m],
                          mod_q=F256_MODULUS).Fqm
        assert tuple(lex_smallest_ext(base, eta)) == low


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        BinaryField(4, 0b10001)  # x^4 + 1 = (x + 1)^4
    F4 = small_fields()["F4"]
    with pytest.raises(ValueError):
        ExtensionField(F4, [0, 1])  # X^2 + X = X (X + 1)


@given(st.integers(0, (1 << 31) - 1), st.integers(0, (1 << 31) - 1))
def test_binary_mul_matches_int_reference(a, b):
    F = FIELDS["Fqm(2,31)"]
    got = F.mul(F.from_int(a), F.from_int(b))
    assert F.to_int(got) == gf2_mulmod(a, b, GF2_MODULI[31])


def test_tower_embedding(rng):
    T = get_params("ryde128-thr-l3").tower
    a, b = rand_elems(T.Fqm, 100, rng), rand_elems(T.Fqm, 100, rng)
    E = T.embed
    assert np.all(T.Fqme.eq(E(T.Fqm.mul(a, b)), T.Fqme.mul(E(a), E(b))))
    x = rand_elems(T.Fqme, 100, rng)
    assert np.all(T.Fqme.eq(T.mul_base(x, a), T.Fqme.mul(x, E(a))))
    # F_q scalars act like embedded elements
    s = rng.integers(0, 256, size=100, dtype=np.uint8)
    s_m = T.Fqm.zeros((100,))
    s_m[:, 0] = s
    assert np.all(T.Fqm.eq(T.scale(T.Fqm, s, a), T.Fqm.mul(s_m, a)))


def test_small_worked_examples():
    F8 = BinaryField(3, 0b1011)
    assert F8.to_int(F8.mul(F8.from_int(0b010), F8.from_int(0b100))) == 0b011
    assert F8.to_int(F8.frob(F8.from_int(0b010), 1)) == 0b100


def test_base_field_fixed_by_frobenius():
    T = get_params("ryde128-thr-l3").tower
    c = np.arange(256, dtype=np.uint8)
    cm = T.Fqm.zeros((256,))
    cm[:, 0] = c
    assert np.all(T.Fqm.eq(T.Fqm.frob(cm, 1), cm))


def test_eta_one_is_degenerate(rng):
    T = get_params("ryde128-hyp-short").tower
    a, b = rand_elems(T.Fqm, 200, rng), rand_elems(T.Fqm, 200, rng)
    Ea, Eb = T.embed(a), T.embed(b)
    assert np.array_equal(T.Fqme.to_bits(T.Fqme.mul(Ea, Eb)), T.Fqm.to_bits(T.Fqm.mul(a, b)))
    assert np.all(T.Fqme.eq(T.embed(T.Fqm.zeros()), T.Fqme.zeros()))
