"""Weyl algebra tensored with a polynomial part: A(n, m) = A_n (x) P_m.

Generators x1..xs with s = 2n + m: the first n are coordinates, the next n
their momenta ([x_{n+i}, x_i] = 1, all other pairs commute), the last m are
central.  Elements are kept in normal order, monomials x1^a1 * ... * xs^as
with the factors in generator order; the basis coefficient map is sparse.

The product of two normal monomials is closed form: for a single pair,
p^a q^b = sum_j j! C(a,j) C(b,j) q^(b-j) p^(a-j), and distinct pairs act
independently.  (An iterative single-swap rewriter reproducing this is kept
in the test suite as an oracle.)

n = 0 degenerates to the commutative polynomial algebra P_m, which is how
polynomial automorphisms are represented downstream.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .commpoly import CommPoly
from .errors import CapExceededError, LndError, SignatureMismatchError
from .formatting import render_terms
from .multiindex import MultiIndex, multi_factorial, term_order_key

#: Default bound on the total degree of any normal form produced by a product.
DEGREE_CAP = 64

Scalar = Fraction | int


@dataclass(frozen=True)
class WeylSignature:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise LndError("signature requires n >= 0 and m >= 0")
        if 2 * self.n + self.m < 1:
            raise LndError("signature requires at least one generator")

    @property
    def s(self) -> int:
        return 2 * self.n + self.m

    def is_central_index(self, i: int) -> bool:
        return i >= 2 * self.n

    def __str__(self) -> str:
        return f"A({self.n},{self.m})"


class WeylElement:
    __slots__ = ("signature", "terms")

    def __init__(self, signature: WeylSignature, terms: dict[MultiIndex, Scalar] | None = None):
        clean: dict[MultiIndex, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != signature.s:
                raise SignatureMismatchError(
                    f"monomial of length {len(exps)} in {signature}"
                )
            if any(e < 0 for e in exps):
                raise LndError("negative exponent in a Weyl monomial")
            c = Fraction(coeff)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("WeylElement is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, signature: WeylSignature) -> WeylElement:
        return cls(signature, {})

    @classmethod
    def constant(cls, signature: WeylSignature, value: Scalar) -> WeylElement:
        return cls(signature, {(0,) * signature.s: Fraction(value)})

    @classmethod
    def one(cls, signature: WeylSignature) -> WeylElement:
        return cls.constant(signature, 1)

    @classmethod
    def generator(cls, signature: WeylSignature, i: int) -> WeylElement:
        if not 0 <= i < signature.s:
            raise IndexError(f"generator index {i} out of range")
        exps = tuple(1 if j == i else 0 for j in range(signature.s))
        return cls(signature, {exps: Fraction(1)})

    @classmethod
    def monomial(
        cls, signature: WeylSignature, exponents: MultiIndex, coeff: Scalar = 1
    ) -> WeylElement:
        return cls(signature, {tuple(exponents): Fraction(coeff)})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.signature.s, Fraction(0))

    def is_central(self) -> bool:
        """True when only central generators occur."""
        nn = 2 * self.signature.n
        return all(not any(e[:nn]) for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def sorted_terms(self) -> list[tuple[MultiIndex, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: term_order_key(t[0]), reverse=True)

    def _check_compatible(self, other: WeylElement) -> None:
        if self.signature != other.signature:
            raise SignatureMismatchError(
                f"elements of {self.signature} and {other.signature}"
            )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: WeylElement) -> WeylElement:
        self._check_compatible(other)
        merged = dict(self.terms)
        for exps, c in other.terms.items():
            merged[exps] = merged.get(exps, Fraction(0)) + c
        return WeylElement(self.signature, merged)

    def __sub__(self, other: WeylElement) -> WeylElement:
        return self + (-other)

    def __neg__(self) -> WeylElement:
        return WeylElement(self.signature, {e: -c for e, c in self.terms.items()})

    def scale(self, factor: Scalar) -> WeylElement:
        f = Fraction(factor)
        return WeylElement(self.signature, {e: c * f for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return weyl_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> WeylElement:
        if k < 0:
            raise LndError("negative powers do not exist in a Weyl algebra")
        out = WeylElement.one(self.signature)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeylElement)
            and self.signature == other.signature
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.signature, frozenset(self.terms.items())))

    # -- calculus ----------------------------------------------------------

    def partial(self, i: int) -> WeylElement:
        """The i-th partial derivative.

        On normal monomials every partial acts by the power rule in the i-th
        exponent; for i < 2n this agrees with the inner derivations
        ad(x_{n+i}) resp. -ad(x_{i-n}) (the test suite asserts it).
        """
        if not 0 <= i < self.signature.s:
            raise IndexError(f"generator index {i} out of range")
        out: dict[MultiIndex, Fraction] = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            key = exps[:i] + (e - 1,) + exps[i + 1:]
            out[key] = out.get(key, Fraction(0)) + c * e
        return WeylElement(self.signature, out)

    def partial_via_ad(self, i: int) -> WeylElement:
        """Partial derivative computed from the defining inner derivations."""
        sig = self.signature
        if i < sig.n:
            return ad(WeylElement.generator(sig, sig.n + i), self)
        if i < 2 * sig.n:
            return -ad(WeylElement.generator(sig, i - sig.n), self)
        return self.partial(i)

    def multi_partial(self, alpha: MultiIndex, divide: bool = False) -> WeylElement:
        """Apply d^alpha = prod partial_i^alpha_i; optionally divide by alpha!."""
        if len(alpha) != self.signature.s:
            raise SignatureMismatchError("multi-index length does not match signature")
        out = self
        for i, a in enumerate(alpha):
            for _ in range(a):
                out = out.partial(i)
                if out.is_zero():
                    break
        if divide:
            out = out.scale(Fraction(1, multi_factorial(alpha)))
        return out

    # -- text --------------------------------------------------------------

    def _monomial_text(self, exps: MultiIndex) -> str:
        pieces = []
        for i, e in enumerate(exps):
            if e:
                pieces.append(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}")
        return "*".join(pieces)

    def __str__(self) -> str:
        return render_terms(
            [(self._monomial_text(e), c) for e, c in self.sorted_terms()]
        )

    def __repr__(self) -> str:
        return f"WeylElement({self.signature}, {str(self)!r})"


def weyl_mul(a: WeylElement, b: WeylElement, degree_cap: int | None = None) -> WeylElement:
    """Normal-ordered product.

    Raises CapExceededError when the normal form contains a term of total
    degree above the cap (default DEGREE_CAP).
    """
    a._check_compatible(b)
    sig = a.signature
    n = sig.n
    cap = DEGREE_CAP if degree_cap is None else degree_cap
    out: dict[MultiIndex, Fraction] = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            base = ca * cb
            swaps = [min(ea[n + i], eb[i]) for i in range(n)]
            if not any(swaps):
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = out.get(key, Fraction(0)) + base
                continue
            for k in itertools.product(*(range(v + 1) for v in swaps)):
                factor = base
                for i, ki in enumerate(k):
                    if ki:
                        factor *= (
                            math.factorial(ki)
                            * math.comb(ea[n + i], ki)
                            * math.comb(eb[i], ki)
                        )
                key = list(x + y for x, y in zip(ea, eb))
                for i, ki in enumerate(k):
                    key[i] -= ki
                    key[n + i] -= ki
                key = tuple(key)
                out[key] = out.get(key, Fraction(0)) + factor
    out = {e: c for e, c in out.items() if c}
    for exps in out:
        if sum(exps) > cap:
            raise CapExceededError(
                f"degree cap {cap} exceeded by a normal form of degree {sum(exps)}"
            )
    return WeylElement(sig, out)


def ad(u: WeylElement, a: WeylElement) -> WeylElement:
    """The inner derivation ad(u): a -> u*a - a*u."""
    return weyl_mul(u, a) - weyl_mul(a, u)


def weyl_ad(u: WeylElement, a: WeylElement) -> WeylElement:
    return ad(u, a)


def apply_pd_multi(a: WeylElement, alpha: MultiIndex, divide: bool = False) -> WeylElement:
    return a.multi_partial(alpha, divide=divide)


def central_to_commpoly(a: WeylElement) -> CommPoly:
    """Drop a central element to P_m (variables x1..xm)."""
    sig = a.signature
    if not a.is_central():
        raise LndError("element is not central")
    nn = 2 * sig.n
    return CommPoly(sig.m, {exps[nn:]: c for exps, c in a.terms.items()})


def commpoly_to_central(p: CommPoly, signature: WeylSignature) -> WeylElement:
    """Embed P_m into A(n, m) as the central subalgebra."""
    if p.num_vars != signature.m:
        raise SignatureMismatchError(
            f"polynomial in {p.num_vars} variables for central part of size {signature.m}"
        )
    if p.laurent_mask:
        raise LndError("Laurent variables cannot embed into a Weyl algebra")
    nn = 2 * signature.n
    return WeylElement(
        signature, {(0,) * nn + exps: c for exps, c in p.terms.items()}
    )
