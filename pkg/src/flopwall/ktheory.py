"""Equivariant K-theory in fixed-point restriction coordinates.

Classes are stored through their restrictions at the isolated torus-fixed
points, each restriction a finite integer combination of torus characters
(a virtual character).  The Fourier-Mukai transfer through the common
resolution is computed by localization; for the generator basis the
transfer simplifies exactly by multiset cancellation of binomial factors
and is cross-checked against the closed product formula.
"""

from __future__ import annotations

import cmath
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .flopgeom import (
    DegenerateWeightError,
    FixedPointLabel,
    FlopConfig,
    WeightVector,
    _vsub,
    _xvec,
    _zvec,
    fixed_point_deltas,
    tangent_weight_vectors,
    weight_complex,
    weight_value,
)
from .numkernel import TWO_PI_I


class VirtualCharacter:
    """Finite integer combination of torus characters on (C^*)^{2n}.

    Keys are weight vectors in Z^{2n} (first n entries pair with x, last n
    with z); values are integer multiplicities.  Always kept in canonical
    merged form with no zero coefficients, so equality is structural.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = int(nvars)
        clean: dict = {}
        for vec, c in (terms or {}).items():
            vec = tuple(int(v) for v in vec)
            if len(vec) != self.nvars:
                raise ValueError("weight vector length mismatch")
            c = int(c)
            if c:
                clean[vec] = clean.get(vec, 0) + c
        self.terms = {v: c for v, c in clean.items() if c}

    @classmethod
    def zero(cls, nvars: int) -> "VirtualCharacter":
        return cls(nvars)

    @classmethod
    def unit(cls, nvars: int) -> "VirtualCharacter":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def line(cls, vec: WeightVector) -> "VirtualCharacter":
        return cls(len(vec), {tuple(vec): 1})

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        terms = dict(self.terms)
        for v, c in other.terms.items():
            terms[v] = terms.get(v, 0) + c
        return VirtualCharacter(self.nvars, terms)

    def __neg__(self) -> "VirtualCharacter":
        return VirtualCharacter(self.nvars, {v: -c for v, c in self.terms.items()})

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        return self + (-other)

    def __mul__(self, other) -> "VirtualCharacter":
        if isinstance(other, int):
            return VirtualCharacter(self.nvars, {v: other * c for v, c in self.terms.items()})
        terms: dict = {}
        for v1, c1 in self.terms.items():
            for v2, c2 in other.terms.items():
                v = tuple(a + b for a, b in zip(v1, v2))
                terms[v] = terms.get(v, 0) + c1 * c2
        return VirtualCharacter(self.nvars, terms)

    __rmul__ = __mul__

    def dual(self) -> "VirtualCharacter":
        return VirtualCharacter(self.nvars, {tuple(-a for a in v): c for v, c in self.terms.items()})

    def rank(self) -> int:
        return sum(self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def is_effective(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, VirtualCharacter) and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def evaluate(self, xs: Sequence[complex], zs: Sequence[complex], scale: complex = 1.0) -> complex:
        """Chern-character value: sum of c * exp(scale * <w, (x, z)>)."""
        total = 0j
        for vec, c in self.terms.items():
            total += c * cmath.exp(scale * weight_complex(xs, zs, vec))
        return total

    def __repr__(self):
        if not self.terms:
            return "VirtualCharacter(0)"
        return f"VirtualCharacter({len(self.terms)} terms, rank {self.rank()})"


def wedge_dual_expand(base: VirtualCharacter) -> VirtualCharacter:
    """Exact expansion of the dualized alternating sum of exterior powers.

    For an effective character this is the product over its character lines
    of (1 - e^{-w}); the empty product is 1.
    """
    if not base.is_effective():
        raise ValueError("wedge_dual_expand needs an effective character")
    out = VirtualCharacter.unit(base.nvars)
    one = VirtualCharacter.unit(base.nvars)
    for vec, mult in sorted(base.terms.items()):
        factor = one - VirtualCharacter.line(tuple(-a for a in vec))
        for _ in range(mult):
            out = out * factor
    return out


@dataclass(frozen=True)
class LocalizedKClass:
    """K-class stored as one virtual character per fixed point of one side.

    ``factor_vectors``, when present, records that the restriction at each
    point is the product of (1 - e^w) over the listed weight vectors.  It
    is purely a numerical-evaluation hint: expanding the product and
    summing exponentials cancels catastrophically when the product is
    tiny, while the factored form keeps full relative accuracy.  Linear
    combinations drop the hint.
    """

    side: str
    restrictions: Mapping  # delta tuple -> VirtualCharacter
    factor_vectors: Mapping | None = None  # delta tuple -> tuple of weight vectors

    def restriction(self, delta) -> VirtualCharacter:
        return self.restrictions[tuple(delta)]

    def __add__(self, other: "LocalizedKClass") -> "LocalizedKClass":
        if other.side != self.side:
            raise ValueError("cannot add classes on different sides")
        return LocalizedKClass(
            self.side,
            {d: self.restrictions[d] + other.restrictions[d] for d in self.restrictions},
        )

    def scaled(self, k: int) -> "LocalizedKClass":
        return LocalizedKClass(self.side, {d: k * v for d, v in self.restrictions.items()})


def unit_class(config: FlopConfig, side: str) -> LocalizedKClass:
    one = VirtualCharacter.unit(2 * config.n)
    deltas = fixed_point_deltas(config)
    return LocalizedKClass(side, {d: one for d in deltas}, {d: () for d in deltas})


def zero_class(config: FlopConfig, side: str) -> LocalizedKClass:
    z = VirtualCharacter.zero(2 * config.n)
    return LocalizedKClass(side, {d: z for d in fixed_point_deltas(config)})


def generator_e(config: FlopConfig, delta_minus) -> LocalizedKClass:
    """The minus-side spanning class attached to delta_minus.

    Its restriction at delta0 is the product over i in delta0 and j outside
    delta_minus of (1 - e^{z_i - z_j}); the expansion collapses to the zero
    character at every delta0 != delta_minus because a factor with zero
    exponent appears.
    """
    n = config.n
    dm = tuple(delta_minus)
    rest = [j for j in range(n) if j not in dm]
    one = VirtualCharacter.unit(2 * n)
    restrictions = {}
    factors = {}
    for d0 in fixed_point_deltas(config):
        vecs = [_vsub(_zvec(i, n), _zvec(j, n)) for i in d0 for j in rest]
        val = one
        for vec in vecs:
            val = val * (one - VirtualCharacter.line(vec))
        restrictions[d0] = val
        factors[d0] = tuple(vecs)
    return LocalizedKClass("minus", restrictions, factors)


def fm_generator_formula(config: FlopConfig, delta_minus) -> LocalizedKClass:
    """Closed product formula for the transform of a generator.

    Restriction at delta_plus: prod over i in delta_plus, j outside
    delta_minus of (1 - e^{x_i - z_j}).
    """
    n = config.n
    dm = tuple(delta_minus)
    rest = [j for j in range(n) if j not in dm]
    one = VirtualCharacter.unit(2 * n)
    restrictions = {}
    factors = {}
    for dp in fixed_point_deltas(config):
        vecs = [_vsub(_xvec(i, n), _zvec(j, n)) for i in dp for j in rest]
        val = one
        for vec in vecs:
            val = val * (one - VirtualCharacter.line(vec))
        restrictions[dp] = val
        factors[dp] = tuple(vecs)
    return LocalizedKClass("plus", restrictions, factors)


def tilde_tangent_weight_vectors(config: FlopConfig, delta_minus, delta_plus) -> list:
    """Tangent weights of the common resolution at the pair (dm, dp).

    Blocks: {z_j - z_d : j not in dm, d in dm}, {z_d - x_e : d in dm, e in dp},
    {x_e - x_k : k not in dp, e in dp}; 2rn - r^2 in total.
    """
    n = config.n
    dm, dp = tuple(delta_minus), tuple(delta_plus)
    out = []
    for d in dm:
        for j in range(n):
            if j not in dm:
                out.append(_vsub(_zvec(j, n), _zvec(d, n)))
    for d in dm:
        for e in dp:
            out.append(_vsub(_zvec(d, n), _xvec(e, n)))
    for e in dp:
        for k in range(n):
            if k not in dp:
                out.append(_vsub(_xvec(e, n), _xvec(k, n)))
    return out


def tilde_tangent_weights(config: FlopConfig, delta_minus, delta_plus) -> list:
    out = []
    for vec in tilde_tangent_weight_vectors(config, delta_minus, delta_plus):
        val = weight_value(config, vec)
        if val == 0:
            raise DegenerateWeightError(
                f"zero resolution tangent weight at ({delta_minus}, {delta_plus})"
            )
        out.append(val)
    return out


@dataclass(frozen=True)
class TildeFixedPoint:
    """Fixed point of the common resolution: a label pair plus its weights."""

    delta_minus: tuple
    delta_plus: tuple
    tangent_weights: tuple


def tilde_fixed_point(config: FlopConfig, delta_minus, delta_plus) -> TildeFixedPoint:
    return TildeFixedPoint(
        delta_minus=tuple(delta_minus),
        delta_plus=tuple(delta_plus),
        tangent_weights=tuple(tilde_tangent_weights(config, delta_minus, delta_plus)),
    )


def _wedge_dual_value(xs, zs, vectors, scale: complex) -> complex:
    """prod (1 - e^{-scale * w}) over the weight vectors."""
    total = 1.0 + 0j
    for vec in vectors:
        w = weight_complex(xs, zs, vec)
        total *= 1.0 - cmath.exp(-scale * w)
    return total


def chern_character(config: FlopConfig, A: LocalizedKClass, scale: complex = 1.0) -> dict:
    """Restriction vector of the Chern character at exponent scale ``scale``.

    scale = 1 is the plain equivariant Chern character; scale = 2 pi i / z
    is the rescaled variant entering the Gamma-integral structure.  When
    the class carries its binomial factorization the product form is used,
    which stays fully accurate even where the expanded exponential sum
    cancels to something tiny.
    """
    xs, zs = config.complex_weights()
    if A.factor_vectors is not None:
        out = {}
        for d in A.restrictions:
            val = 1.0 + 0j
            for vec in A.factor_vectors[d]:
                val *= 1.0 - cmath.exp(scale * weight_complex(xs, zs, vec))
            out[d] = val
        return out
    return {d: chi.evaluate(xs, zs, scale) for d, chi in A.restrictions.items()}


def _as_vector(config: FlopConfig, data, scale: complex) -> tuple[str, dict]:
    if isinstance(data, LocalizedKClass):
        return data.side, chern_character(config, data, scale)
    raise TypeError("expected a LocalizedKClass")


def fm_transform(config: FlopConfig, data, scale: complex = 1.0) -> dict:
    """Fourier-Mukai transfer by localization, in restriction coordinates.

    Input is a minus-side class (or a ready-made dict of numeric minus-side
    restriction values at exponent scale ``scale``); output is the dict of
    plus-side restriction values at the same scale:

        FM(A)|_dp = sum_dm A|_dm * wedge(N_dp) / wedge(N_(dm,dp))

    with wedge(N) the product of (1 - e^{-scale*w}) over tangent weights.
    """
    if isinstance(data, LocalizedKClass):
        if data.side != "minus":
            raise ValueError("fm_transform expects a minus-side class")
        vec = chern_character(config, data, scale)
    else:
        vec = dict(data)
    xs, zs = config.complex_weights()
    deltas = fixed_point_deltas(config)
    out = {}
    for dp in deltas:
        plus_wedge = _wedge_dual_value(
            xs, zs, tangent_weight_vectors(config, FixedPointLabel("plus", dp)), scale
        )
        total = 0j
        for dm in deltas:
            tilde = _wedge_dual_value(xs, zs, tilde_tangent_weight_vectors(config, dm, dp), scale)
            if tilde == 0:
                raise DegenerateWeightError("vanishing localization denominator")
            total += vec[dm] * plus_wedge / tilde
        out[dp] = total
    return out


def fm_transform_generator_exact(config: FlopConfig, delta_minus) -> LocalizedKClass:
    """Exact transform of a generator via binomial-multiset cancellation.

    The localization quotient wedge(N_dp)/wedge(N_(dm,dp)) times the
    generator's own restriction is a ratio of products of binomials
    (1 - e^w); for the generator basis the denominator multiset cancels
    entirely into the numerator, leaving an exact virtual character.
    """
    n = config.n
    dm = tuple(delta_minus)
    one = VirtualCharacter.unit(2 * n)
    restrictions = {}
    factors = {}
    for dp in fixed_point_deltas(config):
        num: Counter = Counter()
        den: Counter = Counter()
        # generator restriction at dm: factors (1 - e^{z_i - z_j})
        for i in dm:
            for j in range(n):
                if j not in dm:
                    num[_vsub(_zvec(i, n), _zvec(j, n))] += 1
        # wedge(N_dp): factors (1 - e^{-w})
        for vec in tangent_weight_vectors(config, FixedPointLabel("plus", dp)):
            num[tuple(-a for a in vec)] += 1
        for vec in tilde_tangent_weight_vectors(config, dm, dp):
            den[tuple(-a for a in vec)] += 1
        num.subtract(den)
        if any(c < 0 for c in num.values()):
            raise ArithmeticError("binomial cancellation failed; not a generator transfer")
        val = one
        vecs = []
        for vec, mult in sorted(num.items()):
            if mult == 0:
                continue
            factor = one - VirtualCharacter.line(vec)
            for _ in range(mult):
                val = val * factor
                vecs.append(vec)
        restrictions[dp] = val
        factors[dp] = tuple(vecs)
    return LocalizedKClass("plus", restrictions, factors)


def euler_characteristic(config: FlopConfig, data, side: str | None = None, scale: complex = 1.0) -> complex:
    """K-theoretic localization sum: sum_d value(d) / wedge(N_d).

    ``data`` may be a LocalizedKClass or a dict of numeric restriction
    values at exponent scale ``scale`` (then ``side`` is required).
    """
    if isinstance(data, LocalizedKClass):
        side = data.side
        xs, zs = config.complex_weights()
        vec = {d: chi.evaluate(xs, zs, scale) for d, chi in data.restrictions.items()}
    else:
        if side is None:
            raise ValueError("side is required for numeric restriction data")
        vec = data
        xs, zs = config.complex_weights()
    total = 0j
    for d, val in vec.items():
        wedge = _wedge_dual_value(
            xs, zs, tangent_weight_vectors(config, FixedPointLabel(side, d)), scale
        )
        if wedge == 0:
            raise DegenerateWeightError("vanishing localization denominator")
        total += val / wedge
    return total


def chi_z_pairing(config: FlopConfig, C: LocalizedKClass, D: LocalizedKClass, z: complex) -> complex:
    """Modified Euler pairing: chi(C^dual (x) D) with weights scaled by 2 pi i / z.

    The scaling applies throughout, to the restrictions and to the
    localization denominators.  The Chern character is multiplicative and
    dualizing flips the exponent sign, so the pairing evaluates the two
    arguments separately (keeping any factored form) instead of expanding
    the product character.
    """
    if C.side != D.side:
        raise ValueError("chi_z_pairing needs classes on the same side")
    if z == 0:
        raise ValueError("z must be nonzero")
    scale = TWO_PI_I / z
    c_vals = chern_character(config, C, -scale)
    d_vals = chern_character(config, D, scale)
    xs, zs = config.complex_weights()
    total = 0j
    for d in c_vals:
        wedge = _wedge_dual_value(
            xs, zs, tangent_weight_vectors(config, FixedPointLabel(C.side, d)), scale
        )
        if wedge == 0:
            raise DegenerateWeightError("vanishing localization denominator")
        total += c_vals[d] * d_vals[d] / wedge
    return total
