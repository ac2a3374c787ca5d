"""Automorphisms of A(n, m), their inverses, logarithms and series forms.

An automorphism is stored by its generator images.  Verification checks the
defining relations ([s(x_{n+i}), s(x_j)] = delta_ij, all other generator
pairs commuting), centrality of the central images, and that the Jacobian
determinant Delta of the central polynomial system is a nonzero constant.
Injectivity or surjectivity is never assumed: ``invert`` runs the inversion
formula

    s^{-1}(a) = sum_alpha x^alpha phi'(d'^alpha a / alpha!)

over the twisted partials d'_i = ad(s(x_{n+i})), d'_{n+i} = -ad(s(x_i)),
d'_{2n+j} = Delta^{-1} * (cofactor row of the central Jacobian), with slices
s(x_i), and then certifies the result by composing back.

``log_aut`` and ``exp_der`` convert between unipotent automorphisms and
locally nilpotent derivations; ``aut_to_series`` / ``map_to_series`` express
polynomial automorphisms (and arbitrary tabulated linear maps) as
differential operator series  sum_alpha a_alpha d^alpha.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .commpoly import CommPoly, jacobian_det
from .errors import (
    CapExceededError,
    LndError,
    RelationError,
    JacobianError,
    SignatureMismatchError,
    UsageError,
)
from .multiindex import (
    MultiIndex,
    graded_lex_key,
    iter_upto,
    multi_factorial,
    multi_total,
)
from .projections import (
    NILPOTENCE_CAP,
    CombinationDerivation,
    DerivationDescriptor,
    InnerDerivation,
    LndSystem,
    PartialDerivation,
)
from .weyl import (
    WeylElement,
    WeylSignature,
    central_to_commpoly,
    commpoly_to_central,
    weyl_mul,
)


def _arrow_text(images) -> str:
    return "; ".join(f"x{i + 1} -> {img}" for i, img in enumerate(images))


class Automorphism:
    """Generator images of an endomorphism of A(n, m); ``verified`` records
    that the defining relations and the Jacobian condition were checked."""

    __slots__ = ("signature", "images", "verified", "delta")

    def __init__(
        self,
        signature: WeylSignature,
        images: list[WeylElement],
        verified: bool = False,
        delta: Fraction = Fraction(1),
    ):
        if len(images) != signature.s:
            raise SignatureMismatchError(
                f"{len(images)} images for signature {signature}"
            )
        for img in images:
            if img.signature != signature:
                raise SignatureMismatchError("image signature does not match")
        self.signature = signature
        self.images = tuple(images)
        self.verified = verified
        self.delta = delta

    @classmethod
    def identity(cls, signature: WeylSignature) -> Automorphism:
        images = [WeylElement.generator(signature, i) for i in range(signature.s)]
        return cls(signature, images, verified=True)

    def apply(self, a: WeylElement) -> WeylElement:
        """Image of an element: substitute generator images monomial-wise."""
        if not self.verified:
            raise UsageError("refusing to apply an unverified automorphism")
        if a.signature != self.signature:
            raise SignatureMismatchError("element signature does not match")
        powers: dict[tuple[int, int], WeylElement] = {}

        def powed(i: int, e: int) -> WeylElement:
            key = (i, e)
            if key not in powers:
                if e == 1:
                    powers[key] = self.images[i]
                else:
                    powers[key] = weyl_mul(powed(i, e - 1), self.images[i])
            return powers[key]

        total = WeylElement.zero(self.signature)
        for exps, c in a.terms.items():
            piece = WeylElement.constant(self.signature, c)
            for i, e in enumerate(exps):
                if e:
                    piece = weyl_mul(piece, powed(i, e))
            total = total + piece
        return total

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Automorphism)
            and self.signature == other.signature
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash((self.signature, self.images))

    def __str__(self) -> str:
        return _arrow_text(self.images)

    def __repr__(self) -> str:
        return f"Automorphism({self.signature}, {str(self)!r})"


def aut_verify(signature: WeylSignature, images: list[WeylElement]) -> Automorphism:
    """Check the relations and the Jacobian condition; return the verified
    automorphism (with Delta recorded)."""
    cand = Automorphism(signature, images)
    n, m = signature.n, signature.m
    one = WeylElement.one(signature)
    zero = WeylElement.zero(signature)
    imgs = cand.images

    def comm(a: WeylElement, b: WeylElement) -> WeylElement:
        return weyl_mul(a, b) - weyl_mul(b, a)

    for i in range(n):
        for j in range(n):
            got = comm(imgs[n + i], imgs[j])
            expect = one if i == j else zero
            if got != expect:
                raise RelationError(
                    f"[s(x{n + i + 1}),s(x{j + 1})] != {1 if i == j else 0}"
                )
    for i in range(n):
        for j in range(i + 1, n):
            if not comm(imgs[i], imgs[j]).is_zero():
                raise RelationError(f"[s(x{i + 1}),s(x{j + 1})] != 0")
            if not comm(imgs[n + i], imgs[n + j]).is_zero():
                raise RelationError(f"[s(x{n + i + 1}),s(x{n + j + 1})] != 0")
    for j in range(m):
        if not imgs[2 * n + j].is_central():
            raise RelationError(f"s(x{2 * n + j + 1}) not central")
    delta = Fraction(1)
    if m > 0:
        central = [central_to_commpoly(imgs[2 * n + j]) for j in range(m)]
        det = jacobian_det(central)
        if det.is_zero() or not det.is_constant():
            raise JacobianError(f"Delta = {det} is not a nonzero constant")
        delta = det.constant_term()
    return Automorphism(signature, list(imgs), verified=True, delta=delta)


def aut_apply(aut: Automorphism, a: WeylElement) -> WeylElement:
    return aut.apply(a)


def aut_compose(outer: Automorphism, inner: Automorphism) -> Automorphism:
    """(outer o inner)(x_i) = outer(inner(x_i)); the result is re-verified."""
    if outer.signature != inner.signature:
        raise SignatureMismatchError("automorphism signatures do not match")
    images = [outer.apply(img) for img in inner.images]
    return aut_verify(outer.signature, images)


# -- twisted partials and the inversion formula ------------------------------


def _central_minor(rows: list[list[CommPoly]], drop_row: int, drop_col: int, m: int) -> CommPoly:
    sub = [
        [rows[r][c] for c in range(m) if c != drop_col]
        for r in range(m)
        if r != drop_row
    ]
    if not sub:
        return CommPoly.one(m)
    from .commpoly import _det

    return _det(sub)


def _integrate_weyl(system: LndSystem, targets: list[WeylElement]) -> WeylElement:
    """Element u with ad(u)(t_k) = targets[k] for the 2n ad-direction system
    (derivations ad(t_{n+i}), -ad(t_i); slices t_1..t_2n); unique up to a
    central summand, normalized to have projection zero.

    Since ad(u)(t_{n+i}) = -ad(t_{n+i})(u) = -d'_i(u) and ad(u)(t_i) =
    d'_{n+i}(u), the conditions read d'_i(u) = -targets[n+i] and
    d'_{n+i}(u) = targets[i]; u is resummed from its Taylor coefficients
    over the system (each coefficient is central, so its placement in the
    monomial is immaterial)."""
    nn = system.s
    n = nn // 2
    derived = [-targets[n + i] for i in range(n)] + [targets[i] for i in range(n)]
    u = system._zero
    for k in range(nn):
        if derived[k].is_zero():
            continue
        coeffs = system.taylor_decompose(derived[k])
        for beta, c in coeffs.items():
            if any(beta[i] for i in range(k)):
                continue
            alpha = beta[:k] + (beta[k] + 1,) + beta[k + 1:]
            scaled = c * Fraction(multi_factorial(beta), multi_factorial(alpha))
            u = u + system.slice_monomial(alpha) * scaled
    return u


def twisted_partials(aut: Automorphism) -> list[DerivationDescriptor]:
    """The derivations d'_i = s d_i s^{-1}, i.e. d'_i(s(x_j)) = delta_ij.

    For i <= 2n these are ad(s(x_{n+i})) resp. -ad(s(x_i)).  In a central
    direction the Delta^{-1}-scaled cofactor expansion of the central
    Jacobian along the row of bare partials handles the center, but it need
    not vanish on the Weyl images (it fails to whenever those involve
    central variables, e.g. s(x1) = x1 + x3^2 in A(1,1)); the unique inner
    correction ad(u_j) restoring d'_{2n+j}(s(x_k)) = 0 is integrated from
    the ad-direction system, which never requires knowing s^{-1}."""
    if not aut.verified:
        raise UsageError("twisted partials need a verified automorphism")
    sig = aut.signature
    n, m = sig.n, sig.m
    out: list[DerivationDescriptor] = []
    for i in range(n):
        out.append(InnerDerivation(aut.images[n + i]))
    for i in range(n):
        out.append(CombinationDerivation([(Fraction(-1), InnerDerivation(aut.images[i]))]))
    if m:
        central = [central_to_commpoly(aut.images[2 * n + j]) for j in range(m)]
        jac = [[img.partial(l) for l in range(m)] for img in central]
        inv_delta = Fraction(1) / aut.delta
        weyl_system = None
        if n:
            weyl_system = LndSystem(list(out), list(aut.images[: 2 * n]))
        for j in range(m):
            parts = []
            for l in range(m):
                minor = _central_minor(jac, j, l, m)
                if minor.is_zero():
                    continue
                sign = -1 if (j + l) % 2 else 1
                coeff = commpoly_to_central(minor.scale(inv_delta * sign), sig)
                parts.append((coeff, PartialDerivation(2 * n + l)))
            combo = CombinationDerivation(parts)
            if weyl_system is not None:
                stray = [combo.apply(aut.images[k]) for k in range(2 * n)]
                if any(not w.is_zero() for w in stray):
                    u = _integrate_weyl(weyl_system, [-w for w in stray])
                    combo = CombinationDerivation(
                        [(Fraction(1), InnerDerivation(u))] + parts
                    )
            out.append(combo)
    return out


def twisted_system(aut: Automorphism, nilpotence_cap: int = NILPOTENCE_CAP) -> LndSystem:
    """LndSystem with the twisted partials and slices s(x_1)..s(x_s)."""
    return LndSystem(
        twisted_partials(aut), list(aut.images), nilpotence_cap=nilpotence_cap
    )


def invert(aut: Automorphism, nilpotence_cap: int = NILPOTENCE_CAP) -> Automorphism:
    """Inversion formula: s^{-1}(x_i) = sum_alpha x^alpha phi'(d'^alpha x_i / alpha!).

    Every coefficient must be a rational constant; the candidate inverse is
    verified and certified by composing with the input on both sides.
    """
    sig = aut.signature
    system = twisted_system(aut, nilpotence_cap=nilpotence_cap)
    images = []
    for i in range(sig.s):
        gen = WeylElement.generator(sig, i)
        coeffs = system.taylor_decompose(gen)
        terms: dict[MultiIndex, Fraction] = {}
        for alpha, c in coeffs.items():
            if not c.is_constant():
                raise LndError(
                    f"inversion coefficient at alpha={alpha} is not constant; "
                    "the images do not define an automorphism"
                )
            terms[alpha] = c.constant_term()
        images.append(WeylElement(sig, terms))
    inverse = aut_verify(sig, images)
    for i in range(sig.s):
        gen = WeylElement.generator(sig, i)
        if aut.apply(inverse.images[i]) != gen or inverse.apply(aut.images[i]) != gen:
            raise LndError(
                "inverse candidate fails to compose to the identity; "
                "the images do not define an automorphism"
            )
    return inverse


# -- derivations given by generator values -----------------------------------


class Derivation:
    """A derivation of A(n, m) given by its values on the generators and
    extended by the Leibniz rule.  Construction checks compatibility with the
    defining relations: [v_a, x_b] + [x_a, v_b] = 0 for all generator pairs."""

    __slots__ = ("signature", "values")

    def __init__(self, signature: WeylSignature, values: list[WeylElement], check: bool = True):
        if len(values) != signature.s:
            raise SignatureMismatchError(
                f"{len(values)} values for signature {signature}"
            )
        for v in values:
            if v.signature != signature:
                raise SignatureMismatchError("value signature does not match")
        self.signature = signature
        self.values = tuple(values)
        if check:
            self._validate()

    def _validate(self) -> None:
        sig = self.signature
        gens = [WeylElement.generator(sig, i) for i in range(sig.s)]
        for a in range(sig.s):
            for b in range(a + 1, sig.s):
                lhs = (
                    weyl_mul(self.values[a], gens[b])
                    - weyl_mul(gens[b], self.values[a])
                    + weyl_mul(gens[a], self.values[b])
                    - weyl_mul(self.values[b], gens[a])
                )
                if not lhs.is_zero():
                    raise LndError(
                        f"values are not relation-compatible on (x{a + 1}, x{b + 1})"
                    )

    def scale(self, factor: Fraction | int) -> Derivation:
        return Derivation(
            self.signature, [v * Fraction(factor) for v in self.values], check=False
        )

    def __neg__(self) -> Derivation:
        return self.scale(-1)

    def apply(self, a: WeylElement) -> WeylElement:
        """Leibniz extension to the whole algebra."""
        if a.signature != self.signature:
            raise SignatureMismatchError("element signature does not match")
        sig = self.signature
        gen_power: dict[tuple[int, int], WeylElement] = {}
        der_power: dict[tuple[int, int], WeylElement] = {}

        def xpow(i: int, e: int) -> WeylElement:
            key = (i, e)
            if key not in gen_power:
                exps = tuple(e if j == i else 0 for j in range(sig.s))
                gen_power[key] = WeylElement.monomial(sig, exps)
            return gen_power[key]

        def dxpow(i: int, e: int) -> WeylElement:
            # d(x_i^e) = sum_j x_i^j v_i x_i^(e-1-j)
            key = (i, e)
            if key not in der_power:
                total = WeylElement.zero(sig)
                for j in range(e):
                    piece = self.values[i]
                    if j:
                        piece = weyl_mul(xpow(i, j), piece)
                    if e - 1 - j:
                        piece = weyl_mul(piece, xpow(i, e - 1 - j))
                    total = total + piece
                der_power[key] = total
            return der_power[key]

        out = WeylElement.zero(sig)
        for exps, c in a.terms.items():
            value = WeylElement.one(sig)
            deriv = WeylElement.zero(sig)
            for i, e in enumerate(exps):
                if not e:
                    continue
                f = xpow(i, e)
                deriv = weyl_mul(deriv, f) + weyl_mul(value, dxpow(i, e))
                value = weyl_mul(value, f)
            out = out + deriv * c
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Derivation)
            and self.signature == other.signature
            and self.values == other.values
        )

    def __str__(self) -> str:
        return _arrow_text(self.values)

    def __repr__(self) -> str:
        return f"Derivation({self.signature}, {str(self)!r})"


def log_aut(aut: Automorphism, nilpotence_cap: int = NILPOTENCE_CAP) -> Derivation:
    """log of a unipotent automorphism:
    d(x_i) = sum_{k>=1} (-1)^(k+1) (s - id)^k (x_i) / k."""
    if not aut.verified:
        raise UsageError("log needs a verified automorphism")
    sig = aut.signature
    values = []
    for i in range(sig.s):
        total = WeylElement.zero(sig)
        cur = aut.images[i] - WeylElement.generator(sig, i)
        k = 1
        while not cur.is_zero():
            if k > nilpotence_cap:
                raise CapExceededError(
                    f"(s - id) is not nilpotent on x{i + 1} within cap {nilpotence_cap}"
                )
            total = total + cur * Fraction((-1) ** (k + 1), k)
            cur = aut.apply(cur) - cur
            k += 1
        values.append(total)
    return Derivation(sig, values)


def exp_der(deriv: Derivation, nilpotence_cap: int = NILPOTENCE_CAP) -> Automorphism:
    """exp of a locally nilpotent derivation: s(x_i) = sum_k d^k(x_i) / k!."""
    sig = deriv.signature
    images = []
    for i in range(sig.s):
        total = WeylElement.zero(sig)
        cur = WeylElement.generator(sig, i)
        k = 0
        while not cur.is_zero():
            if k > nilpotence_cap:
                raise CapExceededError(
                    f"derivation is not nilpotent on x{i + 1} within cap {nilpotence_cap}"
                )
            total = total + cur * Fraction(1, factorial(k))
            cur = deriv.apply(cur)
            k += 1
        images.append(total)
    return aut_verify(sig, images)


# -- differential operator series --------------------------------------------


class DiffOpSeries:
    """A truncated series sum_alpha a_alpha d^alpha with element coefficients."""

    __slots__ = ("signature", "max_order", "coeffs")

    def __init__(
        self,
        signature: WeylSignature,
        max_order: int,
        coeffs: dict[MultiIndex, WeylElement],
    ):
        clean: dict[MultiIndex, WeylElement] = {}
        for alpha, c in coeffs.items():
            alpha = tuple(alpha)
            if len(alpha) != signature.s:
                raise SignatureMismatchError("multi-index length does not match")
            if multi_total(alpha) > max_order:
                raise UsageError(f"coefficient at {alpha} beyond max order {max_order}")
            if not c.is_zero():
                clean[alpha] = c
        self.signature = signature
        self.max_order = max_order
        self.coeffs = clean

    def items(self):
        return sorted(self.coeffs.items(), key=lambda t: graded_lex_key(t[0]))

    def __getitem__(self, alpha: MultiIndex) -> WeylElement:
        return self.coeffs.get(tuple(alpha), WeylElement.zero(self.signature))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DiffOpSeries)
            and self.signature == other.signature
            and self.coeffs == other.coeffs
        )

    def __str__(self) -> str:
        lines = [
            f"d^({','.join(str(e) for e in alpha)}): {c}" for alpha, c in self.items()
        ]
        return "\n".join(lines) if lines else "0"

    def __repr__(self) -> str:
        return f"DiffOpSeries({self.signature}, order {self.max_order}, {len(self.coeffs)} terms)"


def aut_to_series(aut: Automorphism, max_order: int) -> DiffOpSeries:
    """s = sum_alpha (s(x) - x)^alpha / alpha! * d^alpha, truncated."""
    sig = aut.signature
    if sig.n != 0:
        raise UsageError("series form needs a polynomial signature (n = 0)")
    if not aut.verified:
        raise UsageError("series form needs a verified automorphism")
    diffs = [
        aut.images[i] - WeylElement.generator(sig, i) for i in range(sig.s)
    ]
    coeffs: dict[MultiIndex, WeylElement] = {}
    for alpha in iter_upto(sig.s, max_order):
        piece = WeylElement.one(sig)
        for i, e in enumerate(alpha):
            for _ in range(e):
                piece = weyl_mul(piece, diffs[i])
            if piece.is_zero():
                break
        piece = piece * Fraction(1, multi_factorial(alpha))
        if not piece.is_zero():
            coeffs[alpha] = piece
    return DiffOpSeries(sig, max_order, coeffs)


def series_apply(series: DiffOpSeries, a: WeylElement) -> WeylElement:
    """sum_alpha a_alpha * d^alpha(a).  Exact on elements whose degree is at
    most the truncation order of the series."""
    if a.signature != series.signature:
        raise SignatureMismatchError("element signature does not match the series")
    total = WeylElement.zero(series.signature)
    for alpha, c in series.coeffs.items():
        derived = a.multi_partial(alpha)
        if derived.is_zero():
            continue
        total = total + weyl_mul(c, derived)
    return total


LinearMapTable = dict[MultiIndex, WeylElement]


def linear_map_table(aut: Automorphism, max_order: int) -> LinearMapTable:
    """Tabulate a on all basis monomials x^alpha with |alpha| <= max_order."""
    sig = aut.signature
    return {
        alpha: aut.apply(WeylElement.monomial(sig, alpha))
        for alpha in iter_upto(sig.s, max_order)
    }


def _pd_of_monomial(sig: WeylSignature, alpha: MultiIndex, beta: MultiIndex) -> WeylElement:
    """d^beta(x^alpha) as a falling-factorial multiple of x^(alpha-beta)."""
    coeff = 1
    exps = []
    for a, b in zip(alpha, beta):
        if b > a:
            return WeylElement.zero(sig)
        coeff *= factorial(a) // factorial(a - b)
        exps.append(a - b)
    return WeylElement.monomial(sig, tuple(exps), coeff)


def map_to_series(
    signature: WeylSignature, table: LinearMapTable, max_order: int
) -> DiffOpSeries:
    """Unique series with f(x^alpha) = sum_beta a_beta d^beta(x^alpha) for all
    |alpha| <= max_order, solved layer by layer:

        f(x^alpha) = alpha! a_alpha + sum_{|beta| < |alpha|} a_beta d^beta(x^alpha).
    """
    table = {tuple(k): v for k, v in table.items()}
    solved: dict[MultiIndex, WeylElement] = {}
    for alpha in iter_upto(signature.s, max_order):
        if alpha not in table:
            raise UsageError(f"linear map table is missing the monomial {alpha}")
        rhs = table[alpha]
        for beta, a_beta in solved.items():
            pd = _pd_of_monomial(signature, alpha, beta)
            if not pd.is_zero():
                rhs = rhs - weyl_mul(a_beta, pd)
        solved[alpha] = rhs * Fraction(1, multi_factorial(alpha))
    return DiffOpSeries(signature, max_order, solved)
