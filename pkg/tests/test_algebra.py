from fractions import Fraction

import flint
import pytest
import sympy
from hypothesis import given, strategies as st

from semisimp.algebra import (FFDesc, IntLatticeBasis, IntPoly, RatPoly, factor_mod_p, hensel_lift_roots,
                              lll_reduce)
from semisimp.algebra import gfp
from semisimp.algebra.finite_field import roots_in_extension
from semisimp.algebra.numtheory import (factor_int, is_prime, multiplicative_order, primes_between,
                                        rational_reconstruct)
from semisimp.algebra.poly import kron_mul, mulmod_monic, poly_mul, poly_rem_monic, vanishes_at_quotient

X = sympy.Symbol("X")
small_ints = st.integers(-50, 50)
coeff_lists = st.lists(small_ints, min_size=1, max_size=8)
big_lists = st.lists(st.integers(-10 ** 40, 10 ** 40), min_size=1, max_size=40)
small_primes = st.sampled_from([2, 3, 5, 7, 11, 13, 31])


def as_sympy(coeffs):
    return sympy.Poly(list(reversed(list(coeffs))) or [0], X)


def monic(coeffs):
    return list(coeffs) + [1]


# -- integers --------------------------------------------------------------------

@given(st.integers(-5, 10 ** 6))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


@given(st.integers(2, 10 ** 9))
def test_factor_int_matches_sympy(n):
    assert factor_int(n) == sympy.factorint(n)


@given(st.integers(2, 500), st.integers(1, 10 ** 6))
def test_multiplicative_order_matches_sympy(n, a):
    if sympy.gcd(a, n) != 1:
        return
    assert multiplicative_order(a, n) == sympy.n_order(a, n)


def test_primes_between():
    assert primes_between(10, 40) == [11, 13, 17, 19, 23, 29, 31, 37]


@given(st.integers(-1000, 1000), st.integers(1, 1000))
def test_rational_reconstruct_roundtrip(a, b):
    m = 10 ** 13 + 37          # prime, large enough for |a|, b <= 1000
    x = Fraction(a, b)
    r = a * pow(b, -1, m) % m
    assert rational_reconstruct(r, m) == x


# -- integer polynomials ------------------------------------------------------------

@given(coeff_lists, coeff_lists)
def test_intpoly_ring_ops_match_sympy(a, b):
    A, B = IntPoly(tuple(a)), IntPoly(tuple(b))
    assert as_sympy((A * B).coeffs) == as_sympy(a) * as_sympy(b)
    assert as_sympy((A + B).coeffs) == as_sympy(a) + as_sympy(b)
    assert as_sympy((A - B).coeffs) == as_sympy(a) - as_sympy(b)


@given(coeff_lists, st.lists(small_ints, min_size=0, max_size=4))
def test_compose_matches_sympy(a, b):
    A, B = IntPoly(tuple(a)), IntPoly(tuple(monic(b)))
    expect = as_sympy(a).compose(as_sympy(monic(b)))
    assert as_sympy(A.compose(B).coeffs) == expect


@given(coeff_lists, st.lists(small_ints, min_size=0, max_size=5))
def test_divmod_monic_matches_sympy(a, m):
    A, M = IntPoly(tuple(a)), IntPoly(tuple(monic(m)))
    q, r = A.divmod_monic(M)
    sq, sr = sympy.div(as_sympy(a), as_sympy(monic(m)))
    assert as_sympy(q.coeffs) == sq and as_sympy(r.coeffs) == sr


@given(coeff_lists, small_ints)
def test_eval_and_derivative(a, x):
    A = IntPoly(tuple(a))
    assert A(x) == as_sympy(a).eval(x)
    assert as_sympy(A.derivative().coeffs) == as_sympy(a).diff(X)


@given(big_lists, big_lists)
def test_kronecker_product_matches_schoolbook(a, b):
    assert kron_mul(a, b) == poly_mul(a, b)


@given(big_lists, st.lists(st.integers(-10 ** 30, 10 ** 30), min_size=1, max_size=10))
def test_rem_monic_matches_sympy(a, m):
    mm = monic(m)
    expect = sympy.rem(as_sympy(a), as_sympy(mm))
    assert as_sympy(poly_rem_monic(list(a), mm)) == expect
    assert as_sympy(mulmod_monic(a, a, mm)) == sympy.rem(as_sympy(a) ** 2, as_sympy(mm))


def test_vanishes_at_quotient_on_cyclotomic():
    f = IntPoly((1, 0, 0, 0, 1))            # x^4 + 1
    one = IntPoly((1,))
    assert vanishes_at_quotient(f, IntPoly((0, 0, 0, 1)), one)
    assert not vanishes_at_quotient(f, IntPoly((0, 0, 1)), one)


def test_ratpoly_reduce_and_records():
    g = RatPoly((Fraction(1, 3), Fraction(-2, 5), 1))
    assert g.denominator() == 15
    assert RatPoly.from_record(g.to_record()) == g
    assert list(g.reduce_mod(7)) == gfp.strip([pow(3, -1, 7), (-2 * pow(5, -1, 7)) % 7, 1])
    f = IntPoly((5, -3, 0, 1))
    assert IntPoly.loads(f.dumps()) == f


# -- finite fields ---------------------------------------------------------------

def _flint_factor(coeffs, p):
    unit, facs = flint.nmod_poly(list(coeffs), p).factor()
    return sorted((tuple(int(c) for c in g.coeffs()), e) for g, e in facs)


@given(st.lists(st.integers(0, 30), min_size=2, max_size=14), small_primes)
def test_factor_matches_flint(coeffs, p):
    red = gfp.from_ints(coeffs, p)
    if len(red) < 2:
        return
    ours = sorted((tuple(g), e) for g, e in gfp.factor(red, p))
    assert ours == _flint_factor(red, p)


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=10), small_primes)
def test_factor_mod_p_product(coeffs, p):
    f = IntPoly(tuple(coeffs))
    red = gfp.from_ints(f.coeffs, p)
    if len(red) < 2:
        return
    fac = factor_mod_p(f, FFDesc.of(p))
    prod = [fac.unit]
    for g, e in fac:
        assert gfp.is_irreducible(list(g.coeffs), p)
        for _ in range(e):
            prod = gfp.mul(prod, list(g.coeffs), p)
    assert prod == red


@pytest.mark.parametrize("p,d", [(2, 1), (2, 3), (3, 2), (5, 2), (7, 1)])
def test_finite_field_axioms(p, d):
    F = FFDesc.of(p, d)
    elems = list(F.elements())
    assert len(elems) == p ** d == F.size
    nz = [a for a in elems if not F.is_zero(a)]
    for a in nz[:12]:
        assert F.mul(a, F.inv(a)) == F.one
        assert F.pow(a, F.size - 1) == F.one
        for b in elems[:12]:
            assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    g = F.generator()
    assert len({F.pow(g, k) for k in range(F.size - 1)}) == F.size - 1


def test_roots_in_extension_are_roots():
    g = [1, 1, 0, 1]                       # x^3 + x + 1 over F_2
    F = FFDesc.of(2, 3)
    roots = roots_in_extension(g, F)
    assert len(roots) == 3
    for r in roots:
        acc = F.zero
        for c in reversed(g):
            acc = F.add(F.mul(acc, r), F.element(c))
        assert F.is_zero(acc)


# -- p-adic roots ------------------------------------------------------------------

@pytest.mark.parametrize("coeffs,q", [((1, 0, 0, 0, 1), 17), ((1, 0, 0, 0, 1), 3), ((-2, 0, 0, 1), 5),
                                      ((1, 1, 1, 1, 1), 11)])
def test_hensel_roots_vanish(coeffs, q):
    f = IntPoly(coeffs)
    rs = hensel_lift_roots(f, q, k=12)
    ring = rs.ring
    assert len(rs.roots) == f.degree
    assert len(set(rs.residues())) == f.degree
    for r in rs.roots:
        assert ring.reduce(ring.eval(f.coeffs, r)) == ring.zero()
    deeper = rs.relift(20)
    assert [ring.reduce(r) for r in deeper.roots] == list(rs.roots)


# -- lattices ----------------------------------------------------------------------

def _gso(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    star, mu = [], []
    for i, b in enumerate(rows):
        v = list(b)
        mrow = []
        for s in star:
            c = sum(x * y for x, y in zip(b, s)) / sum(y * y for y in s)
            mrow.append(c)
            v = [x - c * y for x, y in zip(v, s)]
        star.append(v)
        mu.append(mrow)
    return star, mu


square_bases = st.integers(2, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-60, 60), min_size=n, max_size=n), min_size=n, max_size=n))


@given(square_bases)
def test_lll_is_reduced_and_spans_same_lattice(rows):
    if sympy.Matrix(rows).det() == 0:
        return
    red = lll_reduce(IntLatticeBasis(tuple(map(tuple, rows))))
    # same lattice: identical Hermite normal forms (flint oracle)
    assert flint.fmpz_mat(list(map(list, red.rows))).hnf() == flint.fmpz_mat(rows).hnf()
    star, mu = _gso(red.rows)
    norm = [sum(x * x for x in s) for s in star]
    for i in range(len(rows)):
        for j in range(i):
            assert abs(mu[i][j]) <= Fraction(1, 2)
    for i in range(1, len(rows)):
        assert norm[i] >= (Fraction(3, 4) - mu[i][i - 1] ** 2) * norm[i - 1]


def test_gram_determinant_is_preserved():
    B = IntLatticeBasis(((1, 2, 3), (4, 5, 6), (7, 8, 10)))
    assert lll_reduce(B).gram_determinant() == B.gram_determinant() == 9
