"""Shared helpers for the test suite: seeded random element generators."""

from fractions import Fraction
from random import Random

from lndcalc import CommPoly, FreeElement, WeylElement, WeylSignature, aut_verify


def random_fraction(rng: Random) -> Fraction:
    num = rng.randint(-6, 6)
    if num == 0:
        num = 1
    return Fraction(num, rng.randint(1, 4))


def random_comm(
    rng: Random,
    num_vars: int,
    degree: int,
    terms: int = 4,
    laurent_mask: frozenset = frozenset(),
) -> CommPoly:
    """Random polynomial with up to `terms` monomials of total degree <= degree."""
    out = CommPoly.constant(num_vars, 0, laurent_mask)
    for _ in range(terms):
        alpha = [0] * num_vars
        for _ in range(rng.randint(0, degree)):
            alpha[rng.randrange(num_vars)] += 1
        out = out + CommPoly.monomial(
            num_vars, tuple(alpha), random_fraction(rng), laurent_mask
        )
    return out


def random_weyl(
    rng: Random, signature: WeylSignature, degree: int, terms: int = 4
) -> WeylElement:
    out = WeylElement.constant(signature, 0)
    for _ in range(terms):
        alpha = [0] * signature.s
        for _ in range(rng.randint(0, degree)):
            alpha[rng.randrange(signature.s)] += 1
        out = out + WeylElement.monomial(signature, tuple(alpha), random_fraction(rng))
    return out


def random_free(
    rng: Random, num_gens: int, length: int, terms: int = 4
) -> FreeElement:
    out = FreeElement.constant(num_gens, 0)
    for _ in range(terms):
        word = tuple(
            rng.randrange(num_gens) for _ in range(rng.randint(0, length))
        )
        out = out + FreeElement.word(num_gens, word, random_fraction(rng))
    return out


def random_unipotent_poly(rng: Random, sig: WeylSignature):
    """Verified triangular unipotent automorphism of P_m: x_i + stuff(x_{<i})."""
    images = []
    for i in range(sig.s):
        extra = WeylElement.constant(sig, rng.randint(-2, 2))
        for _ in range(rng.randint(0, 2)):
            alpha = [0] * sig.s
            for _ in range(rng.randint(1, 2)):
                if i == 0:
                    break
                alpha[rng.randrange(i)] += 1
            extra = extra + WeylElement.monomial(
                sig, tuple(alpha), Fraction(rng.randint(1, 3), rng.randint(1, 2))
            )
        images.append(WeylElement.generator(sig, i) + extra)
    return aut_verify(sig, images)


def random_triangular_a11(rng: Random):
    """Verified automorphism of A(1,1) with degree <= 3 images: scale the
    Weyl pair by reciprocal units and shift along the commuting directions."""
    sig = WeylSignature(1, 1)
    lam = Fraction(rng.choice([1, 2, 3]), rng.choice([1, 2]))
    mu = Fraction(rng.choice([1, 2, 3]), rng.choice([1, 2]))
    x1, x2, x3 = (WeylElement.generator(sig, i) for i in range(3))
    p = WeylElement.zero(sig)  # polynomial in x3 only, degree <= 3
    for k in range(rng.randint(0, 3)):
        p = p + WeylElement.monomial(sig, (0, 0, k), rng.randint(-2, 2))
    q = WeylElement.zero(sig)  # polynomial in x1, x3: commutes with x1
    for _ in range(rng.randint(0, 3)):
        a = rng.randint(0, 2)
        c = rng.randint(0, 2)
        if a + c > 3:
            continue
        q = q + WeylElement.monomial(sig, (a, 0, c), rng.randint(-2, 2))
    images = [
        x1.scale(lam) + p,
        x2.scale(1 / lam) + q,
        x3.scale(mu) + WeylElement.constant(sig, rng.randint(-3, 3)),
    ]
    return aut_verify(sig, images)
