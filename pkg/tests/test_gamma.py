import math
import random
from fractions import Fraction

import pytest

from pgamma import (
    PadicInt,
    PrecisionError,
    PrimeContext,
    binomial_ratio,
    closed_form_exponents,
    complement,
    exponents,
    factorial_via_gamma,
    from_integer,
    from_rational,
    functional_step,
    gamma_p,
    gamma_p_block,
    gamma_p_closed,
    gamma_p_nat,
    gamma_p_prime_power,
    gamma_q,
    gamma_q_closed,
    gamma_q_nat,
    gauss_legendre,
    lipschitz_probe,
    ota_gamma,
    roots_product,
    unit_pow,
)


def test_gamma_p_anchors():
    for p in (2, 3, 5, 7):
        assert [gamma_p_nat(n, p) for n in range(3)] == [1, -1, 1]
    assert gamma_p_nat(4, 3) == 2


def test_gamma_p_padic_examples():
    assert gamma_p(from_integer(4, 3, 5)) == PadicInt(3, 5, 2)
    assert gamma_p(from_rational(1, 2, 3, 2)).residue == 1
    assert gamma_p(from_integer(0, 5, 4)).residue == 1
    with pytest.raises(PrecisionError):
        gamma_p(from_integer(3, 2, 2))


def test_gamma_p_matches_nat_mod_large_inputs():
    rng = random.Random(1)
    for _ in range(30):
        p = rng.choice([2, 3, 5])
        n = rng.randint(0, 3000)
        assert gamma_p(from_integer(n, p, 10)).residue == gamma_p_nat(n, p) % p**10


def test_gamma_p_closed_forms():
    assert gamma_p_closed(3, 3) == 2
    assert gamma_p_closed(0, 5) == -1
    for p in (2, 3, 5):
        for n in range(60):
            assert gamma_p_closed(n, p) == gamma_p_nat(n + 1, p)
            m, k = divmod(n, p)
            assert gamma_p_block(m, k, p) == gamma_p_nat(n + 1, p)
        for k in (1, 2, 3):
            assert gamma_p_prime_power(k, p) == gamma_p_nat(p**k, p)


def test_factorial_via_gamma():
    assert factorial_via_gamma(1, 3) == 1
    assert factorial_via_gamma(5, 2) == 120
    assert factorial_via_gamma(9, 3) == 362880
    for p in (2, 3, 5, 7):
        for n in range(1, 150):
            assert factorial_via_gamma(n, p) == math.factorial(n)


def test_gamma_q_examples():
    ctx = PrimeContext(3, 2)
    assert gamma_q_nat(3, ctx) == gamma_q_nat(4, ctx) == 2
    assert gamma_q(from_integer(3, 3, 8), ctx) == PadicInt(3, 7, 2)
    assert gamma_q(from_integer(-1, 3, 12), PrimeContext(3, 1)).residue == 1
    assert gamma_q(from_integer(-1, 5, 8), PrimeContext(5, 2)).residue == 1
    with pytest.raises(PrecisionError):
        gamma_q(from_integer(1, 2, 3), PrimeContext(2, 2))


def test_gamma_q_coincides_for_t1():
    for p in (2, 3, 5):
        ctx = PrimeContext(p, 1)
        for n in range(200):
            assert gamma_q_nat(n, ctx) == gamma_p_nat(n, p)


def test_gamma_q_padic_matches_nat():
    for pt in [(2, 2), (3, 2), (5, 2), (2, 3)]:
        ctx = PrimeContext(*pt)
        for n in range(0, 300, 7):
            g = gamma_q(from_integer(n, ctx.p, 10), ctx)
            assert g.residue == gamma_q_nat(n, ctx) % g.modulus


def test_exponent_examples():
    e = exponents(3, PrimeContext(3, 2))
    assert (e.A, e.B) == (6, 1)
    e = exponents(5, PrimeContext(2, 2))
    assert (e.A, e.B) == (9, 1)
    assert ota_gamma(5, PrimeContext(2, 2)) == -15 == gamma_q_nat(6, PrimeContext(2, 2))
    assert ota_gamma(0, PrimeContext(5, 3)) == -1


@pytest.mark.parametrize("pt", [(2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)])
def test_closed_forms(pt):
    ctx = PrimeContext(*pt)
    for n in range(120):
        truth = gamma_q_nat(n + 1, ctx)
        assert ota_gamma(n, ctx) == truth
        assert gamma_q_closed(n, ctx) == truth
        assert gamma_q_closed(n, ctx, "mq+lambda") == truth
    for s in (1, 2):
        qs = ctx.q**s
        assert gamma_q_closed(qs - 1, ctx, "q^s-1") == gamma_q_nat(qs, ctx)
        assert gamma_q_closed(qs, ctx, "q^s") == gamma_q_nat(qs + 1, ctx)
        a0, b0, _ = closed_form_exponents(qs - 1, ctx, "q^s-1")
        a1, b1, _ = closed_form_exponents(qs, ctx, "q^s")
        assert (a1 - a0, b1 - b0) == (ctx.t, 0)


def test_closed_form_shape_errors():
    ctx = PrimeContext(3, 1)
    with pytest.raises(ValueError):
        gamma_q_closed(5, ctx, "q^s")
    with pytest.raises(ValueError):
        gamma_q_closed(5, ctx, "bogus")


def test_functional_examples():
    ctx = PrimeContext(3, 1)
    pred, branch = functional_step(from_integer(1, 3, 6), ctx)
    assert branch == "k=0" and pred.residue == 1
    pred, branch = functional_step(from_integer(3, 3, 6), ctx)
    assert branch == "qZp" and pred.residue == 2


@pytest.mark.parametrize("pt", [(2, 2), (2, 3), (3, 2), (5, 1), (5, 2)])
def test_functional_equation(pt):
    ctx = PrimeContext(*pt)
    rng = random.Random(3)
    xs = list(range(1, 80)) + [rng.randrange(ctx.p**8) for _ in range(40)]
    for x in xs:
        xp = from_integer(x, ctx.p, 8)
        pred, _ = functional_step(xp, ctx)
        assert pred.congruent(gamma_q(xp + 1, ctx))


@pytest.mark.parametrize("pt", [(3, 1), (3, 2), (5, 1), (5, 2), (2, 2), (2, 3)])
def test_complement(pt):
    ctx = PrimeContext(*pt)
    rng = random.Random(5)
    branches = set()
    for _ in range(150):
        c = complement(from_integer(rng.randrange(ctx.p**8), ctx.p, 8), ctx)
        branches.add(c.branch)
        assert c.holds
    if ctx.p == 2:
        assert branches == {"qZ2-or-unit", "other"}


def test_half_square_true_sign():
    # Gamma_q(1/2)^2 = (-1)^(t - 1 + R_t(1/2)) with R_t(1/2) = (q + 1)/2
    for p in (3, 5, 7):
        for t in (1, 2, 3):
            ctx = PrimeContext(p, t)
            g = gamma_q(from_rational(1, 2, p, 6 + t), ctx)
            assert (g * g).congruent((-1) ** (t - 1 + (ctx.q + 1) // 2))


def test_gauss_legendre_example():
    ctx = PrimeContext(3, 1)
    x = from_integer(ctx.q + 1, 3, 6)
    res = gauss_legendre(x, 2, ctx)
    assert res.holds
    assert res.rhs.congruent(pow(2, (ctx.q - 1) * 1, 3**6))


@pytest.mark.parametrize("pt", [(3, 1), (3, 2), (5, 1), (5, 2)])
def test_gauss_legendre(pt):
    ctx = PrimeContext(*pt)
    for n in (2, 4):
        for x in range(0, 30):
            assert gauss_legendre(from_integer(x, ctx.p, 8), n, ctx).holds


def test_gauss_legendre_printed_exponent_fails():
    # the variant with the extra factor x in the exponent disagrees with the computed lhs
    ctx = PrimeContext(3, 1)
    x = from_integer(7, 3, 8)
    res = gauss_legendre(x, 2, ctx)
    wrong = unit_pow(PadicInt(3, 8, pow(2, ctx.q - 1, 3**8)), from_integer(7 * 2, 3, 8)) * 2 ** (1 - 1)
    assert res.holds and not res.lhs.congruent(wrong)


def test_roots_product():
    for pt in [(3, 1), (3, 2), (5, 1)]:
        z, ok = roots_product(2, PrimeContext(*pt), 6)
        assert ok
    with pytest.raises(ValueError):
        roots_product(2, PrimeContext(2, 1), 6)


def test_binomial_ratio():
    for pt in [(2, 2), (3, 2), (5, 1)]:
        ctx = PrimeContext(*pt)
        for b in range(2, ctx.q - 1):
            for a in range(1, b):
                for r in (1, 2):
                    res = binomial_ratio(a, b, r, ctx, 8)
                    assert res.holds and res.second_holds
    with pytest.raises(ValueError):
        binomial_ratio(2, 1, 1, PrimeContext(5, 1))


def test_lipschitz_examples():
    ctx = PrimeContext(3, 1)
    x = from_integer(5, 3, 10)
    assert lipschitz_probe(x, x, ctx).distance_exact is False
    rep = lipschitz_probe(x, from_integer(6, 3, 10), ctx)
    assert rep.distance == 1 and rep.upper_clause
    rep = lipschitz_probe(x, from_integer(5 + 9, 3, 10), ctx)
    assert rep.distance == Fraction(1, 9)


def test_lipschitz_lower_bound_counterexample():
    # |x - y| = 3^-5 but |Gamma(x) - Gamma(y)| = 3^-7, so the lower bound fails here
    ctx = PrimeContext(3, 1)
    x, y = 2653, 3625
    assert math.gcd(x - y, 3**6) == 3**5
    diff = gamma_p_nat(x, 3) - gamma_p_nat(y, 3)
    assert (diff % 3**7 == 0) and (diff % 3**8 != 0)
    rep = lipschitz_probe(from_integer(x, 3, 12), from_integer(y, 3, 12), ctx)
    assert rep.distance == Fraction(1, 3**5) and rep.difference == Fraction(1, 3**7)
    assert rep.lower_clause is False
