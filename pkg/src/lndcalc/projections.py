"""Invariant projections and Taylor decompositions for commuting locally
nilpotent derivations.

An ``LndSystem`` packages a carrier algebra A (commutative polynomials, a
Weyl algebra A(n, m), or a free algebra) with derivations d1..ds and slice
elements t1..ts satisfying d_i(t_j) = delta_ij.  The joint kernel A^d is the
invariant subalgebra.  The two projections onto A^d are

    phi_i = sum_k (-1)^k (t_i^k / k!) d_i^k     (slice powers multiply left)
    psi_i = sum_k (-1)^k d_i^k(.) (t_i^k / k!)  (slice powers multiply right)

composed as phi = phi_s ... phi_1 and psi = psi_1 ... psi_s (rightmost factor
acts first).  Every element then decomposes uniquely as

    a = sum_alpha t^alpha * phi(d^alpha a / alpha!)
      = sum_alpha psi(d^alpha a / alpha!) * t^alpha

with invariant coefficients; ``taylor_decompose`` computes the left-handed
coefficient map and ``taylor_reconstruct`` resums it.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .commpoly import CommPoly
from .errors import CapExceededError, LndError, SignatureMismatchError
from .freealg import FreeElement
from .multiindex import MultiIndex, graded_lex_key, multi_factorial
from .weyl import WeylElement

Element = CommPoly | WeylElement | FreeElement

#: Default bound on iterated-derivative depth before declaring non-nilpotence.
NILPOTENCE_CAP = 256


def like_one(x: Element) -> Element:
    if isinstance(x, CommPoly):
        return CommPoly.one(x.num_vars, x.laurent_mask)
    if isinstance(x, WeylElement):
        return WeylElement.one(x.signature)
    return FreeElement.one(x.num_gens)


def like_zero(x: Element) -> Element:
    if isinstance(x, CommPoly):
        return CommPoly.zero(x.num_vars, x.laurent_mask)
    if isinstance(x, WeylElement):
        return WeylElement.zero(x.signature)
    return FreeElement.zero(x.num_gens)


def carrier_generators(x: Element) -> list[Element]:
    if isinstance(x, CommPoly):
        return [CommPoly.variable(x.num_vars, i, x.laurent_mask) for i in range(x.num_vars)]
    if isinstance(x, WeylElement):
        return [WeylElement.generator(x.signature, i) for i in range(x.signature.s)]
    return [FreeElement.generator(x.num_gens, i) for i in range(x.num_gens)]


# -- derivation descriptors -------------------------------------------------


class PartialDerivation:
    """The coordinate derivation partial_{index+1} of the carrier."""

    __slots__ = ("index",)

    def __init__(self, index: int):
        self.index = index

    def apply(self, a: Element) -> Element:
        return a.partial(self.index)

    def __repr__(self) -> str:
        return f"PartialDerivation({self.index})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PartialDerivation) and self.index == other.index

    def __hash__(self) -> int:
        return hash(("partial", self.index))


class InnerDerivation:
    """ad(u): a -> u*a - a*u for a fixed carrier element u."""

    __slots__ = ("element",)

    def __init__(self, element: Element):
        self.element = element

    def apply(self, a: Element) -> Element:
        return self.element * a - a * self.element

    def __repr__(self) -> str:
        return f"InnerDerivation({self.element!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, InnerDerivation) and self.element == other.element

    def __hash__(self) -> int:
        return hash(("inner", self.element))


class CombinationDerivation:
    """A finite combination sum_k c_k * D_k of descriptors.

    Coefficients are rationals or carrier elements acting by left
    multiplication; on a noncommutative carrier they must be central for the
    combination to remain a derivation (checked during system validation).
    """

    __slots__ = ("parts",)

    def __init__(self, parts: list[tuple[Element | Fraction | int, "DerivationDescriptor"]]):
        self.parts = tuple(parts)

    def apply(self, a: Element) -> Element:
        total = None
        for coeff, deriv in self.parts:
            piece = deriv.apply(a)
            piece = coeff * piece
            total = piece if total is None else total + piece
        return like_zero(a) if total is None else total

    def __repr__(self) -> str:
        return f"CombinationDerivation({list(self.parts)!r})"


DerivationDescriptor = PartialDerivation | InnerDerivation | CombinationDerivation


def _central_enough(coeff, probe: Element) -> bool:
    """Left-multiplier coefficients must commute with the carrier."""
    if isinstance(coeff, (int, Fraction)):
        return True
    if isinstance(probe, CommPoly):
        return True
    if isinstance(probe, WeylElement):
        return coeff.is_central()
    return coeff.is_constant()


# -- the system --------------------------------------------------------------


class LndSystem:
    """Commuting locally nilpotent derivations with slices.

    Construction validates, on a finite probe set (carrier generators, the
    slices, and pairwise slice products): d_i(t_j) = delta_ij, pairwise
    commutation, and local nilpotence under ``nilpotence_cap``.
    """

    __slots__ = ("derivations", "slices", "nilpotence_cap", "_one", "_zero")

    def __init__(
        self,
        derivations: list[DerivationDescriptor],
        slices: list[Element],
        nilpotence_cap: int = NILPOTENCE_CAP,
        check: bool = True,
    ):
        if not slices or len(derivations) != len(slices):
            raise LndError("need equally many derivations and slices, at least one")
        self.derivations = tuple(derivations)
        self.slices = tuple(slices)
        self.nilpotence_cap = nilpotence_cap
        self._one = like_one(slices[0])
        self._zero = like_zero(slices[0])
        if check:
            self._validate()

    @property
    def s(self) -> int:
        return len(self.derivations)

    def derive(self, i: int, a: Element) -> Element:
        return self.derivations[i].apply(a)

    def multi_derive(self, alpha: MultiIndex, a: Element, divide: bool = False) -> Element:
        if len(alpha) != self.s:
            raise SignatureMismatchError("multi-index length does not match the system")
        out = a
        for i, k in enumerate(alpha):
            for _ in range(k):
                out = self.derive(i, out)
                if out.is_zero():
                    break
        if divide:
            out = out * Fraction(1, multi_factorial(alpha))
        return out

    # -- validation --------------------------------------------------------

    def _validate(self) -> None:
        one = self._one
        for i in range(self.s):
            for j, t in enumerate(self.slices):
                got = self.derive(i, t)
                expect = one if i == j else self._zero
                if got != expect:
                    raise LndError(
                        f"derivation {i + 1} applied to slice {j + 1} gives {got}, "
                        f"expected {expect}"
                    )
        for deriv in self.derivations:
            if isinstance(deriv, CombinationDerivation):
                for coeff, _ in deriv.parts:
                    if not _central_enough(coeff, self._one):
                        raise LndError(
                            "combination coefficient is not central in the carrier"
                        )
        probes = carrier_generators(self._one) + list(self.slices)
        for a in range(self.s):
            for b in range(a, self.s):
                probes.append(self.slices[a] * self.slices[b])
        for i in range(self.s):
            for j in range(i + 1, self.s):
                for p in probes:
                    left = self.derive(i, self.derive(j, p))
                    right = self.derive(j, self.derive(i, p))
                    if left != right:
                        raise LndError(
                            f"derivations {i + 1} and {j + 1} do not commute on {p}"
                        )
        for i in range(self.s):
            for p in probes:
                cur = p
                for _ in range(self.nilpotence_cap + 1):
                    if cur.is_zero():
                        break
                    cur = self.derive(i, cur)
                else:
                    raise CapExceededError(
                        f"derivation {i + 1} not nilpotent on a probe within "
                        f"cap {self.nilpotence_cap}"
                    )

    # -- order ---------------------------------------------------------------

    def _layers(self, a: Element):
        """Yield (grade d, {alpha: d^alpha(a)}) with only nonzero values,
        stopping after the last nonzero layer."""
        zero_alpha = (0,) * self.s
        layer = {zero_alpha: a}
        d = 0
        while layer:
            yield d, layer
            if d >= self.nilpotence_cap:
                raise CapExceededError(
                    f"iterated derivatives of order beyond cap {self.nilpotence_cap}"
                )
            nxt: dict[MultiIndex, Element] = {}
            for alpha, val in layer.items():
                first = next((k for k, e in enumerate(alpha) if e), self.s)
                for i in range(min(first, self.s - 1) + 1):
                    derived = self.derive(i, val)
                    if not derived.is_zero():
                        beta = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]
                        nxt[beta] = derived
            layer = nxt
            d += 1

    def order(self, a: Element) -> int:
        """Largest |alpha| with d^alpha(a) != 0."""
        if a.is_zero():
            raise LndError("the zero element has no order")
        last = 0
        for d, _ in self._layers(a):
            last = d
        return last

    # -- projections ---------------------------------------------------------

    def _project_single(self, i: int, a: Element, left: bool) -> Element:
        total = a
        cur = a
        power = self._one
        k = 0
        while True:
            cur = self.derive(i, cur)
            if cur.is_zero():
                return total
            k += 1
            if k > self.nilpotence_cap:
                raise CapExceededError(
                    f"projection series for derivation {i + 1} exceeded cap"
                )
            power = power * self.slices[i]
            coeff = Fraction((-1) ** k, factorial(k))
            piece = power * cur if left else cur * power
            total = total + piece * coeff

    def phi(self, a: Element) -> Element:
        """Left projection onto A^d: phi = phi_s ... phi_1 (phi_1 first)."""
        out = a
        for i in range(self.s):
            out = self._project_single(i, out, left=True)
        return out

    def psi(self, a: Element) -> Element:
        """Right projection onto A^d: psi = psi_1 ... psi_s (psi_s first)."""
        out = a
        for i in reversed(range(self.s)):
            out = self._project_single(i, out, left=False)
        return out

    # -- Taylor decomposition -------------------------------------------------

    def taylor_decompose(self, a: Element) -> TaylorCoefficients:
        """The coefficient map alpha -> phi(d^alpha a / alpha!), zeros dropped."""
        coeffs: dict[MultiIndex, Element] = {}
        if not a.is_zero():
            for _, layer in self._layers(a):
                for alpha, val in layer.items():
                    c = self.phi(val) * Fraction(1, multi_factorial(alpha))
                    if not c.is_zero():
                        coeffs[alpha] = c
        return TaylorCoefficients(self.s, coeffs)

    def slice_monomial(self, alpha: MultiIndex) -> Element:
        """t^alpha = t_1^a1 * ... * ts^as, factors in system order."""
        out = self._one
        for i, k in enumerate(alpha):
            for _ in range(k):
                out = out * self.slices[i]
        return out

    def taylor_reconstruct(self, coeffs: TaylorCoefficients) -> Element:
        """Resum sum_alpha t^alpha * c_alpha; coefficients must be invariant."""
        if coeffs.s != self.s:
            raise SignatureMismatchError("coefficient map does not match the system")
        total = self._zero
        for alpha, c in coeffs.items():
            for i in range(self.s):
                if not self.derive(i, c).is_zero():
                    raise LndError(
                        f"coefficient at alpha={alpha} is not invariant"
                    )
            total = total + self.slice_monomial(alpha) * c
        return total


class TaylorCoefficients:
    """Finite map from multi-indices to invariant coefficients."""

    __slots__ = ("s", "coeffs")

    def __init__(self, s: int, coeffs: dict[MultiIndex, Element]):
        self.s = s
        clean = {}
        for alpha, c in coeffs.items():
            alpha = tuple(alpha)
            if len(alpha) != s:
                raise SignatureMismatchError("multi-index length does not match")
            if not c.is_zero():
                clean[alpha] = c
        self.coeffs = clean

    def items(self):
        return sorted(self.coeffs.items(), key=lambda t: graded_lex_key(t[0]))

    def __getitem__(self, alpha: MultiIndex) -> Element:
        return self.coeffs[tuple(alpha)]

    def __contains__(self, alpha: MultiIndex) -> bool:
        return tuple(alpha) in self.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TaylorCoefficients)
            and self.s == other.s
            and self.coeffs == other.coeffs
        )

    def __str__(self) -> str:
        lines = [
            f"alpha=({','.join(str(e) for e in alpha)}): {c}"
            for alpha, c in self.items()
        ]
        return "\n".join(lines) if lines else "alpha: none"

    def __repr__(self) -> str:
        return f"TaylorCoefficients({self.s}, {len(self.coeffs)} entries)"


def standard_system(
    carrier_one: Element, nilpotence_cap: int = NILPOTENCE_CAP
) -> LndSystem:
    """The full system of coordinate partials with the generators as slices.

    For a Weyl carrier the partials in the momentum directions have the
    momenta themselves as slices; all 2n + m directions are included.
    """
    gens = carrier_generators(carrier_one)
    derivs = [PartialDerivation(i) for i in range(len(gens))]
    return LndSystem(derivs, gens, nilpotence_cap=nilpotence_cap)
