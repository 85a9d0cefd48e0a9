"""Field construction, arithmetic and homomorphism enumeration."""

import numpy as np
import pytest

from bfgeo.errors import DegreeTooLarge, NotPrime
from bfgeo.fields import (FieldHom, canonical_modulus, enumerate_homs,
                          field_from_order, identity_hom, make_field,
                          parse_field_name)


def poly_mul_mod(a, b, mod, p):
    """Independent reference: multiply polynomials, reduce mod (mod, p)."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    while len(prod) >= len(mod):
        lead = prod[-1]
        shift = len(prod) - len(mod)
        for t, mt in enumerate(mod):
            prod[shift + t] = (prod[shift + t] - lead * mt) % p
        prod.pop()
    return prod


def test_gf4_canonical_modulus_is_unique_quadratic():
    # the only monic irreducible quadratic over GF(2)
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_prime_field_modulus_convention():
    F = make_field(5, 1)
    assert F.modulus == (0, 1)
    assert F.q == 5


def test_gf16_modulus_confirmed_irreducible_by_trial_division():
    F = make_field(2, 4)
    assert F.modulus == (1, 1, 0, 0, 1)
    # independent check: no monic divisor of degree 1 or 2 divides it
    coeffs = list(F.modulus)
    for d in (1, 2):
        for tail in range(2**d):
            div = [(tail >> i) & 1 for i in range(d)] + [1]
            rem = list(coeffs)
            while len(rem) >= len(div):
                if rem[-1]:
                    shift = len(rem) - len(div)
                    for t, mt in enumerate(div):
                        rem[shift + t] ^= mt
                rem.pop()
            assert any(rem), f"degree-{d} divisor found"


def test_construction_rejections():
    with pytest.raises(NotPrime):
        make_field(6, 1)
    with pytest.raises(DegreeTooLarge):
        make_field(2, 17)
    with pytest.raises(DegreeTooLarge):
        make_field(2, 0)


def test_gf4_alpha_squared():
    F = make_field(2, 2)
    alpha = 2  # class of x
    assert F.mul(alpha, alpha) == 3  # alpha + 1


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (3, 1), (2, 3), (5, 1), (3, 2)])
def test_field_axioms_exhaustive(p, k):
    F = make_field(p, k)
    q = F.q
    a = np.repeat(np.arange(q), q)
    b = np.tile(np.arange(q), q)
    # commutativity (both operations)
    assert np.array_equal(F.vadd(a, b), F.vadd(b, a))
    assert np.array_equal(F.vmul(a, b), F.vmul(b, a))
    # identities and inverses
    assert np.array_equal(F.vadd(np.arange(q), np.zeros(q, dtype=int)), np.arange(q))
    assert np.array_equal(F.vmul(np.arange(q), np.ones(q, dtype=int)), np.arange(q))
    assert not F.vadd(np.arange(q), F.vneg(np.arange(q))).any()
    nz = np.arange(1, q)
    assert np.array_equal(F.vmul(nz, F.vinv(nz)), np.ones(q - 1, dtype=int))
    # associativity and distributivity on all triples when affordable
    if q <= 16:
        t = np.arange(q)
        aa, bb, cc = np.meshgrid(t, t, t, indexing="ij")
        assert np.array_equal(F.vadd(F.vadd(aa, bb), cc), F.vadd(aa, F.vadd(bb, cc)))
        assert np.array_equal(F.vmul(F.vmul(aa, bb), cc), F.vmul(aa, F.vmul(bb, cc)))
        assert np.array_equal(F.vmul(aa, F.vadd(bb, cc)),
                              F.vadd(F.vmul(aa, bb), F.vmul(aa, cc)))


def test_scalar_arith_matches_reference_polynomials():
    F = make_field(3, 2)
    mod = list(F.modulus)
    for a in F.elements():
        for b in F.elements():
            ref = poly_mul_mod(list(F.coeffs(a)), list(F.coeffs(b)), mod, 3)
            ref_idx = sum(c * 3**i for i, c in enumerate(ref))
            assert F.mul(a, b) == ref_idx


def test_inv_and_div():
    F = make_field(2, 2)
    assert F.inv(1) == 1
    for a in F.nonzero_elements():
        assert F.mul(a, F.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_element_encoding_roundtrip():
    F = make_field(3, 3)
    for a in F.elements():
        assert F.element(F.coeffs(a)) == a


def test_field_serialization():
    F = make_field(2, 2)
    assert F.name == "2,2"
    assert parse_field_name("2,2") is F
    assert field_from_order(4) is F
    with pytest.raises(NotPrime):
        field_from_order(12)


# --- homomorphisms ------------------------------------------------------------

def test_enumerate_homs_counts():
    F4 = make_field(2, 2)
    F8 = make_field(2, 3)
    F16 = make_field(2, 4)
    assert len(enumerate_homs(F4, F4)) == 2
    assert enumerate_homs(F4, F8) == []
    assert len(enumerate_homs(F4, F16)) == 2
    assert enumerate_homs(F4, make_field(3, 2)) == []
    assert len(enumerate_homs(make_field(3, 1), make_field(3, 2))) == 1


def test_homs_sorted_by_generator_image():
    F4 = make_field(2, 2)
    homs = enumerate_homs(F4, F4)
    assert [h.generator_image for h in homs] == sorted(h.generator_image for h in homs)
    # identity comes first for GF(4) -> GF(4)
    assert np.array_equal(homs[0].table, np.arange(4))


def test_frobenius_on_gf4():
    F4 = make_field(2, 2)
    frob = enumerate_homs(F4, F4)[1]
    alpha = 2
    assert frob(alpha) == F4.mul(alpha, alpha) == 3
    assert frob(0) == 0 and frob(1) == 1


def test_hom_laws_exhaustive_and_injective():
    F4 = make_field(2, 2)
    F16 = make_field(2, 4)
    for h in enumerate_homs(F4, F16):
        for a in F4.elements():
            for b in F4.elements():
                assert h(F4.add(a, b)) == F16.add(h(a), h(b))
                assert h(F4.mul(a, b)) == F16.mul(h(a), h(b))
        images = {h(a) for a in F4.elements()}
        assert len(images) == F4.q


def test_galois_group_is_cyclic_of_order_k():
    F = make_field(2, 4)
    homs = enumerate_homs(F, F)
    assert len(homs) == 4
    frob_like = [h for h in homs if not np.array_equal(h.table, np.arange(F.q))]
    # some element generates the whole group by composition
    generated = False
    for g in frob_like:
        seen = {g}
        cur = g
        for _ in range(F.k - 1):
            cur = cur.compose(g)
            seen.add(cur)
        generated = generated or len(seen) == F.k
    assert generated


def test_invalid_hom_rejected():
    F4 = make_field(2, 2)
    F5 = make_field(5, 1)
    with pytest.raises(ValueError):
        FieldHom(F4, F4, [0, 1, 1, 2])  # not injective
    with pytest.raises(ValueError):
        FieldHom(F5, F5, [0, 1, 2, 4, 3])  # injective but breaks additivity


def test_identity_hom():
    F = make_field(5, 1)
    h = identity_hom(F)
    assert all(h(a) == a for a in F.elements())
