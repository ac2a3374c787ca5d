"""Invariant-ring generators, a brute-force kernel oracle, and the
Weitzenboeck construction.

Given an LndSystem with slices t1..ts and a generating set y1..yr of the
carrier, the invariant subalgebra A^d is generated by the witnesses

    z_{w,alpha,i} = w( phi(d^alpha y_i / alpha!) )       alpha_j <= order(y_i)
    x_{w,j}       = w( t_j )                             1 <= len(w) <= bound

where w runs over words in the monoid generated by ad(t_1)..ad(t_s).  The
enumeration keeps nonzero values only, deduplicates equal values, and checks
kernel membership of everything it returns.

``graded_kernel_oracle`` independently computes the joint kernel on a single
homogeneous component by exact linear algebra, which is what the enumeration
is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .commpoly import CommPoly
from .errors import LndError, UsageError
from .freealg import FreeElement
from .linalg import nullspace, rank
from .multiindex import MultiIndex, graded_lex_key, iter_box, iter_layer
from .projections import (
    NILPOTENCE_CAP,
    CombinationDerivation,
    Element,
    LndSystem,
    PartialDerivation,
    like_one,
)
from .weyl import WeylElement


@dataclass(frozen=True)
class GeneratorWitness:
    """One enumerated invariant: value = word(base) where the word lists the
    ad(t_{k+1}) factors outermost first."""

    kind: str  # "z" (projected generator) or "x" (commutator of slices)
    word: tuple[int, ...]
    alpha: MultiIndex | None
    source: int
    value: Element

    def describe(self) -> str:
        word = "*".join(f"ad(x{k + 1})" for k in self.word) if self.word else "-"
        alpha = (
            f"({','.join(str(e) for e in self.alpha)})" if self.alpha is not None else "-"
        )
        base = f"y{self.source + 1}" if self.kind == "z" else f"x{self.source + 1}"
        return f"{self.kind} {word} {alpha} {base} : {self.value}"


def _sort_key(w: GeneratorWitness):
    return (
        len(w.word),
        w.word,
        w.kind,
        graded_lex_key(w.alpha) if w.alpha is not None else ((), ()),
        w.source,
    )


def enumerate_generators(
    system: LndSystem,
    generators: list[Element],
    word_bound: int,
    degree_bound: int,
) -> list[GeneratorWitness]:
    """All witnesses up to the word and value-degree bounds, deduplicated by
    value (distinct words frequently act identically), zeros dropped."""
    s = system.s
    witnesses: list[GeneratorWitness] = []
    seen: set[Element] = set()

    def push(kind: str, word: tuple[int, ...], alpha, source: int, value: Element):
        if value.is_zero() or value.total_degree() > degree_bound:
            return
        for i in range(s):
            if not system.derive(i, value).is_zero():
                raise LndError("enumerated witness is not invariant")
        if value in seen:
            return
        seen.add(value)
        witnesses.append(GeneratorWitness(kind, word, alpha, source, value))

    def extend_by_words(kind: str, alpha, source: int, base: Element, max_len: int, min_len: int):
        level = [((), base)]
        if min_len == 0:
            push(kind, (), alpha, source, base)
        for length in range(1, max_len + 1):
            nxt = []
            for word, val in level:
                for k in range(s):
                    t = system.slices[k]
                    new_val = t * val - val * t
                    if new_val.is_zero():
                        continue
                    new_word = (k,) + word
                    nxt.append((new_word, new_val))
                    if length >= min_len:
                        push(kind, new_word, alpha, source, new_val)
            level = nxt

    for idx, y in enumerate(generators):
        if y.is_zero():
            raise UsageError("generators must be nonzero")
        ord_y = system.order(y)
        for alpha in iter_box((ord_y,) * s):
            base = system.phi(system.multi_derive(alpha, y, divide=True))
            if base.is_zero():
                continue
            extend_by_words("z", alpha, idx, base, word_bound, 0)
    for j, t in enumerate(system.slices):
        extend_by_words("x", None, j, t, word_bound, 1)
    witnesses.sort(key=_sort_key)
    return witnesses


def relation_check(system: LndSystem, candidate: Element) -> bool:
    """True when the candidate collapses under phi, i.e. lies in the left
    ideal generated by the slices (the kernel of the projection)."""
    return system.phi(candidate).is_zero()


def commutative_invariant_images(system: LndSystem, generators: list[Element]) -> list[Element]:
    """phi images of a generating set; over a commutative carrier phi is an
    algebra epimorphism onto A^d, so these generate the invariant ring."""
    return [system.phi(y) for y in generators]


# -- brute-force graded kernel ------------------------------------------------


def _degree_basis(one: Element, degree: int) -> list[Element]:
    if isinstance(one, CommPoly):
        if one.laurent_mask:
            raise UsageError("kernel oracle needs a plain polynomial carrier")
        return [
            CommPoly.monomial(one.num_vars, alpha)
            for alpha in iter_layer(one.num_vars, degree)
        ]
    if isinstance(one, WeylElement):
        return [
            WeylElement.monomial(one.signature, alpha)
            for alpha in iter_layer(one.signature.s, degree)
        ]
    k = one.num_gens
    words: list[tuple[int, ...]] = [()]
    for _ in range(degree):
        words = [w + (g,) for w in words for g in range(k)]
    return [FreeElement.word(k, w) for w in words]


def _coordinates(values: list[Element]) -> tuple[list[dict], list]:
    keys = sorted({k for v in values for k in v.terms})
    return [v.terms for v in values], keys


def graded_kernel_oracle(system: LndSystem, degree: int) -> list[Element]:
    """Basis of the joint kernel of the system's derivations on the
    homogeneous component of the given degree, by exact elimination.

    Every derivation must map the component into the homogeneous component
    one degree lower (zero images are fine)."""
    if degree < 0:
        raise UsageError("degree must be non-negative")
    basis = _degree_basis(system._one, degree)
    images = [[system.derive(i, b) for b in basis] for i in range(system.s)]
    for per_deriv in images:
        for img in per_deriv:
            if not img.is_zero():
                if any(
                    (len(k) if isinstance(img, FreeElement) else sum(k)) != degree - 1
                    for k in img.terms
                ):
                    raise UsageError(
                        "derivation is not homogeneous of degree -1 on the component"
                    )
    rows: list[list[Fraction]] = []
    for per_deriv in images:
        terms, keys = _coordinates(per_deriv)
        index = {k: r for r, k in enumerate(keys)}
        block = [[Fraction(0)] * len(basis) for _ in keys]
        for col, t in enumerate(terms):
            for k, c in t.items():
                block[index[k]][col] = c
        rows.extend(block)
    vectors = nullspace(rows, len(basis))
    out = []
    for vec in vectors:
        total = None
        for c, b in zip(vec, basis):
            if c:
                piece = b * c
                total = piece if total is None else total + piece
        if total is not None:
            out.append(total)
    return out


def subalgebra_graded_dimension(values: list[Element], degree: int) -> int:
    """Dimension of the degree-d component of the unital subalgebra generated
    by homogeneous elements, by exact rank over the monomial basis."""
    positive = []
    for v in values:
        if v.is_zero() or v.is_constant():
            continue
        degs = {len(k) if isinstance(v, FreeElement) else sum(k) for k in v.terms}
        if len(degs) != 1:
            raise UsageError("subalgebra dimension helper needs homogeneous values")
        positive.append((v, degs.pop()))
    if degree == 0:
        return 1
    bucket: list[Element] = []
    frontier: list[tuple[Element, int]] = [(like_one(values[0]), 0)]
    while frontier:
        nxt = []
        for p, d in frontier:
            for w, wd in positive:
                nd = d + wd
                if nd > degree:
                    continue
                q = p * w
                if q.is_zero():
                    continue
                if nd == degree:
                    bucket.append(q)
                else:
                    nxt.append((q, nd))
        frontier = nxt
    if not bucket:
        return 0
    terms, keys = _coordinates(bucket)
    index = {k: c for c, k in enumerate(keys)}
    rows = []
    for t in terms:
        row = [Fraction(0)] * len(keys)
        for k, c in t.items():
            row[index[k]] = c
        rows.append(row)
    return rank(rows)


# -- the Weitzenboeck construction --------------------------------------------


def weitzenboeck_system(n: int, nilpotence_cap: int = NILPOTENCE_CAP) -> LndSystem:
    """d = x1 d2 + x2 d3 + ... + x_{n-1} d_n on K[x1, 1/x1][x2..xn], with the
    single slice x2/x1."""
    if n < 2:
        raise UsageError("the construction needs at least two variables")
    mask = frozenset({0})
    variables = [CommPoly.variable(n, i, mask) for i in range(n)]
    deriv = CombinationDerivation(
        [(variables[i - 1], PartialDerivation(i)) for i in range(1, n)]
    )
    slice_exps = (-1, 1) + (0,) * (n - 2)
    slice_elem = CommPoly.monomial(n, slice_exps, 1, mask)
    return LndSystem([deriv], [slice_elem], nilpotence_cap=nilpotence_cap)


def weitzenboeck_closed_form(n: int, i: int) -> CommPoly:
    """phi(x_i) = sum_{k=0}^{i-1} (-1)^k (x2/x1)^k x_{i-k} / k!  (i is 1-based)."""
    if not 2 <= i <= n:
        raise UsageError(f"index {i} out of range for {n} variables")
    mask = frozenset({0})
    slice_elem = CommPoly.monomial(n, (-1, 1) + (0,) * (n - 2), 1, mask)
    total = CommPoly.zero(n, mask)
    from math import factorial

    for k in range(i):
        piece = (slice_elem ** k) * CommPoly.variable(n, i - k - 1, mask)
        piece = piece.scale(Fraction((-1) ** k, factorial(k)))
        total = total + piece
    return total


def weitzenboeck_invariants(n: int) -> list[tuple[int, CommPoly]]:
    """(i, phi(x_i)) for i = 3..n; together with x1 these generate the
    invariant ring of the localized Weitzenboeck derivation.

    Each value is cross-checked against the closed form and against
    d(phi(x_i)) = 0 before it is returned."""
    system = weitzenboeck_system(n)
    out = []
    for i in range(3, n + 1):
        var = CommPoly.variable(n, i - 1, frozenset({0}))
        value = system.phi(var)
        if value != weitzenboeck_closed_form(n, i):
            raise LndError(f"phi(x{i}) disagrees with the closed form")
        if not system.derive(0, value).is_zero():
            raise LndError(f"phi(x{i}) is not invariant")
        out.append((i, value))
    return out
