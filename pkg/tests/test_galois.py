import pytest
import sympy
from hypothesis import given, settings, strategies as st

from semisimp.algebra import IntPoly
from semisimp.algebra.numtheory import multiplicative_order
from semisimp.galois import (AutomorphismTable, FrobeniusUndefined, GaloisError, NumberFieldDesc,
                             automorphisms, frobenius, irreducibility_screen)
from semisimp.galois.field import normality_obstruction


def cyclotomic(m: int) -> IntPoly:
    x = sympy.Symbol("x")
    return IntPoly(tuple(int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs())))


def x_power_mod(k: int, f: IntPoly) -> IntPoly:
    return IntPoly((0,) * k + (1,)) % f


def as_int(g) -> IntPoly:
    assert g.denominator() == 1
    return IntPoly(tuple(int(c) for c in g.coeffs))


_tables = {}


def table_for(m: int, method: str = "auto") -> AutomorphismTable:
    if (m, method) not in _tables:
        _tables[m, method] = automorphisms(cyclotomic(m), method=method)
    return _tables[m, method]


@pytest.mark.parametrize("m,method", [(5, "descent"), (7, "descent"), (16, "descent"), (32, "descent"),
                                      (5, "lattice"), (7, "lattice"), (16, "lattice")])
def test_cyclotomic_automorphisms_are_x_powers(m, method):
    f = cyclotomic(m)
    T = table_for(m, method)
    got = {as_int(a.g) for a in T.autos}
    expect = {x_power_mod(k, f) for k in range(1, m) if sympy.gcd(k, m) == 1}
    assert got == expect
    assert as_int(T.autos[T.identity_index].g) == IntPoly((0, 1))


@pytest.mark.parametrize("m", [5, 7, 16, 32])
def test_cyclotomic_frobenius_is_x_to_the_t(m):
    f = cyclotomic(m)
    T = table_for(m)
    for t in sympy.primerange(3, 100):
        if m % t == 0:
            continue
        r = frobenius(T, t)
        assert as_int(T.autos[r.element].g) == x_power_mod(t % m, f)
        assert r.order == multiplicative_order(t, m)
        assert r.residue_degree == r.order


@settings(max_examples=30)
@given(st.sampled_from(list(sympy.primerange(3, 400))))
def test_frobenius_power_is_frobenius_of_power(t):
    # in an abelian field Frob(t)^k = sigma_{t^k}
    T = table_for(32)
    f = cyclotomic(32)
    r = frobenius(T, t)
    k = 3
    e = T.power(r.element, k)
    G = T.group()
    g = next(a.g for a in T.autos if G.index[a.perm] == e)
    assert as_int(g) == x_power_mod(pow(t, k, 32), f)


def test_ramified_prime_has_no_frobenius():
    with pytest.raises(FrobeniusUndefined):
        frobenius(table_for(16), 2)


def test_table_roundtrip():
    T = table_for(16)
    s = T.dumps()
    T2 = AutomorphismTable.loads(s)
    assert T2.dumps() == s
    assert frobenius(T2, 3).element == frobenius(T, 3).element


def test_biquadratic_frobenius_matches_legendre_symbols():
    f = IntPoly((1, 0, -10, 0, 1))                  # minimal polynomial of sqrt2 + sqrt3
    T = automorphisms(f)
    assert len(T.autos) == 4
    assert T.group().exponent() == 2
    for t in sympy.primerange(5, 200):
        split = sympy.legendre_symbol(2, t) == 1 and sympy.legendre_symbol(3, t) == 1
        assert frobenius(T, t).order == (1 if split else 2)


def test_nonabelian_splitting_field_of_cube_root_of_two():
    f = IntPoly((108, 0, 0, 0, 0, 0, 1))           # x^6 + 108 defines Q(zeta_3, 2^(1/3))
    T = automorphisms(f)
    G = T.group()
    assert G.order == 6 and not G.is_abelian()
    for t in sympy.primerange(5, 150):
        if t % 3 == 2:
            expect = 2
        else:
            expect = 1 if pow(2, (t - 1) // 3, t) == 1 else 3
        assert frobenius(T, t).order == expect


def test_non_galois_field_is_rejected():
    f = IntPoly((-2, 0, 0, 1))
    assert normality_obstruction(f) is not None
    with pytest.raises(GaloisError):
        automorphisms(f)


def test_reducible_and_bad_inputs():
    with pytest.raises(ValueError):
        NumberFieldDesc.from_poly(IntPoly((-1, 0, 1)))
    with pytest.raises(ValueError):
        NumberFieldDesc.from_poly(IntPoly((1, 2)) * 2)
    assert irreducibility_screen(cyclotomic(7))
    # x^8 + 1 is reducible modulo every prime; irreducibility can only be assumed
    assert not irreducibility_screen(cyclotomic(16))
    assert NumberFieldDesc.from_poly(cyclotomic(16)).irreducibility_assumed


def test_same_result_for_any_seed():
    a = automorphisms(cyclotomic(16), seed=0)
    b = automorphisms(cyclotomic(16), seed=5)
    assert {as_int(x.g) for x in a.autos} == {as_int(x.g) for x in b.autos}
