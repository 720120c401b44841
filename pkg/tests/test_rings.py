import itertools
import random
from fractions import Fraction

import pytest

from pgaw.rings import (
    LaurentPoly,
    QuadRing,
    QuadScalar,
    RatFunc,
    RingMismatchError,
    SymbolicRing,
    evaluate_at_q,
    gaussian_binomial,
    q_bracket,
    ratfunc_reduce,
)

R2 = QuadRing(2)
SYM = SymbolicRing()


def s_poly(exp, coeff=1):
    return LaurentPoly.monomial(exp, coeff)


# ---------------------------------------------------------------------------
# Q(sqrt q)
# ---------------------------------------------------------------------------

def test_quad_mul_examples():
    s = R2.sqrt_q
    assert (1 + s) * (1 - s) == -1
    assert s * s == 2
    assert (2 + 3 * s) * (1 + s) == R2.quad(8, 5)


def test_quad_inv_examples():
    s = R2.sqrt_q
    assert s.inverse() == R2.quad(0, Fraction(1, 2))
    assert s * s.inverse() == 1
    assert (1 + s).inverse() == s - 1
    with pytest.raises(ZeroDivisionError):
        R2.inv(R2.zero)
    with pytest.raises(ZeroDivisionError):
        QuadScalar(0, 0, 2).inverse()


def test_quad_ring_mismatch():
    with pytest.raises(RingMismatchError):
        QuadRing(2).sqrt_q * QuadRing(3).sqrt_q
    with pytest.raises(RingMismatchError):
        QuadRing(2).sqrt_q + QuadRing(5).sqrt_q


def test_quad_ring_rejects_unsupported_q():
    for q in (1, 4, 6, 9, 11):
        with pytest.raises(ValueError):
            QuadRing(q)


def test_quad_demotes_to_rational():
    s = R2.sqrt_q
    v = s * s
    assert type(v) is int and v == 2
    v = (1 + s) - s
    assert type(v) is int and v == 1
    assert type(s * R2.quad(0, Fraction(1, 2))) is int


def _random_quad(rng, ring):
    return ring.quad(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                     Fraction(rng.randint(-9, 9), rng.randint(1, 9)))


def test_quad_field_axioms_random():
    rng = random.Random(20240817)
    for q in (2, 3, 5, 7):
        ring = QuadRing(q)
        for _ in range(40):
            x, y, z = (_random_quad(rng, ring) for _ in range(3))
            assert (x + y) + z == x + (y + z)
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            assert x * y == y * x
            if x:
                assert x * ring.inv(x) == 1


def test_quad_half_powers():
    assert R2.q_half(0) == 1
    assert R2.q_half(2) == 2
    assert R2.q_half(-2) == Fraction(1, 2)
    assert R2.q_half(1) == R2.sqrt_q
    assert R2.q_half(-1) * R2.q_half(1) == 1
    assert R2.q_half(3) == R2.quad(0, 2)
    for m in range(-6, 7):
        assert R2.q_half(m) * R2.q_half(-m) == 1


# ---------------------------------------------------------------------------
# Laurent polynomials and rational functions
# ---------------------------------------------------------------------------

def test_laurent_zero_is_empty():
    assert not LaurentPoly({0: 0, 3: 0})
    assert LaurentPoly({2: 1, 3: 0}).terms == {2: 1}


def test_ratfunc_reduce_examples():
    # (s^2 - 1)/(s - 1) -> s + 1
    num = LaurentPoly({2: 1, 0: -1})
    den = LaurentPoly({1: 1, 0: -1})
    out = ratfunc_reduce(num, den)
    assert out == RatFunc._from_poly(LaurentPoly({1: 1, 0: 1}))
    # 0/p -> 0
    assert ratfunc_reduce(LaurentPoly(), den) == 0
    # (s^4 - 1)/(s^2 - 1) -> s^2 + 1
    out = ratfunc_reduce(LaurentPoly({4: 1, 0: -1}), LaurentPoly({2: 1, 0: -1}))
    assert out == RatFunc._from_poly(LaurentPoly({2: 1, 0: 1}))
    with pytest.raises(ZeroDivisionError):
        ratfunc_reduce(num, LaurentPoly())


def test_ratfunc_reduction_idempotent():
    x = ratfunc_reduce(LaurentPoly({4: 1, 0: -1}), LaurentPoly({3: 2, 1: -2}))
    assert isinstance(x, RatFunc)
    again = ratfunc_reduce(x.num, x.den)
    assert again == x
    # canonical denominator: monic, minimal exponent 0
    assert x.den.min_exp() == 0
    assert x.den.lead_coeff() == 1


def test_ratfunc_constant_collapse():
    # (2s^2)/(s^2) is the constant 2 and must come back as an int
    out = ratfunc_reduce(LaurentPoly({2: 2}), LaurentPoly({2: 1}))
    assert type(out) is int and out == 2
    half = ratfunc_reduce(LaurentPoly({0: 1}), LaurentPoly({0: 2}))
    assert type(half) is Fraction and half == Fraction(1, 2)


def _random_poly(rng, max_terms=3):
    return LaurentPoly({rng.randint(-3, 4): Fraction(rng.randint(-5, 5))
                        for _ in range(rng.randint(0, max_terms))})


def _random_ratfunc(rng):
    num = _random_poly(rng)
    den = _random_poly(rng)
    while not den:
        den = _random_poly(rng)
    return ratfunc_reduce(num, den)


def test_ratfunc_field_axioms_random():
    rng = random.Random(7)
    for _ in range(60):
        x, y, z = (_random_ratfunc(rng) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        if x:
            assert x * SYM.inv(x) == 1


def _random_ratfunc_safe_den(rng):
    # denominators of the shape s^a (s^2-1)^e, which never vanish at sqrt(q):
    # the only denominators the verification formulas produce
    num = _random_poly(rng)
    den = LaurentPoly.monomial(rng.randint(-2, 2))
    for _ in range(rng.randint(0, 2)):
        den = den * LaurentPoly({2: 1, 0: -1})
    return ratfunc_reduce(num, den)


def test_ratfunc_evaluation_homomorphism_random():
    rng = random.Random(99)
    for q in (2, 3, 5, 7):
        ring = QuadRing(q)
        for _ in range(25):
            x, y = (_random_ratfunc_safe_den(rng) for _ in range(2))
            ex, ey = evaluate_at_q(x, ring), evaluate_at_q(y, ring)
            assert evaluate_at_q(x * y, ring) == ex * ey
            assert evaluate_at_q(x + y, ring) == ex + ey
            assert evaluate_at_q(x - y, ring) == ex - ey


def test_symbolic_half_powers_multiply():
    s = SYM.q_half(1)
    assert s * s == SYM.q_power(1)
    assert SYM.q_half(-3) * SYM.q_half(3) == 1
    assert SYM.q_half(2) == RatFunc._from_poly(LaurentPoly({2: 1}))


# ---------------------------------------------------------------------------
# q-integers and Gaussian binomials
# ---------------------------------------------------------------------------

def test_q_bracket_examples():
    assert q_bracket(0, R2) == 0
    assert q_bracket(3, R2) == 7
    assert q_bracket(2, SYM) == RatFunc._from_poly(LaurentPoly({0: 1, 2: 1}))


def test_q_bracket_recurrence_both_rings():
    for ring in (R2, QuadRing(3), SYM):
        q = ring.q_power(1)
        for m in range(0, 9):
            assert ring.bracket(m + 1) == q * ring.bracket(m) + 1


def test_q_bracket_negative():
    # [-1] = -1/q
    assert q_bracket(-1, R2) == Fraction(-1, 2)
    assert q_bracket(-1, SYM) == RatFunc._from_poly(LaurentPoly({-2: -1}))
    for ring in (R2, SYM):
        q = ring.q_power(1)
        for m in range(-5, 0):
            assert ring.bracket(m + 1) == q * ring.bracket(m) + 1


def _span(vectors, q, n):
    """All linear combinations of the given vectors (frozenset oracle)."""
    out = {(0,) * n}
    for v in vectors:
        new = set()
        for c in range(q):
            scaled = tuple((c * x) % q for x in v)
            for u in out:
                new.add(tuple((a + b) % q for a, b in zip(u, scaled)))
        out = new
    return frozenset(out)


def brute_force_subspace_count(n, k, q):
    """Count k-dim subspaces by deduplicating spans of k-subsets of vectors."""
    vectors = [v for v in itertools.product(range(q), repeat=n) if any(v)]
    spans = set()
    for combo in itertools.combinations(vectors, k) if k else [()]:
        sp = _span(combo, q, n)
        if len(sp) == q ** k:
            spans.add(sp)
    return len(spans)


def test_gaussian_binomial_against_enumeration_oracle():
    assert gaussian_binomial(3, 1, 2) == brute_force_subspace_count(3, 1, 2) == 7
    assert gaussian_binomial(4, 2, 2) == brute_force_subspace_count(4, 2, 2) == 35
    assert gaussian_binomial(2, 1, 3) == brute_force_subspace_count(2, 1, 3) == 4


def test_gaussian_binomial_edges_and_symmetry():
    for n in range(0, 7):
        assert gaussian_binomial(n, 0, 2) == 1
    assert gaussian_binomial(4, -1, 2) == 0
    assert gaussian_binomial(4, 5, 2) == 0
    for q in (2, 3, 5, 7):
        for n in range(0, 7):
            for k in range(0, n + 1):
                assert gaussian_binomial(n, k, q) == gaussian_binomial(n, n - k, q)
