"""Wall-crossing transfer: coefficient matrices, U_H, the Gamma-integral
structure map psi, pairings, and the induced symplectic map U.

Everything acts in restriction coordinates: a cohomology class on one side
is the vector of its values at that side's fixed points.  Expanding a class
in the fixed-point basis [pt_d]/e(N_d) shows that the transfer map acts on
restriction vectors simply as (U_H b)|_dp = sum_dm C(dm, dp) * b|_dm.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .flopgeom import (
    FixedPointLabel,
    FlopConfig,
    enumerate_abelian,
    fixed_point_deltas,
    tangent_weights,
)
from .ktheory import LocalizedKClass, chern_character
from .numkernel import (
    MultiPoly,
    PoleError,
    TWO_PI_I,
    gamma,
    is_nonpositive_integer,
    sin_over_2i,
)


# ----------------------------------------------------------------------
# Transfer coefficients
# ----------------------------------------------------------------------

def coeff_C(config: FlopConfig, delta_minus, delta_plus, scale: complex = 1.0) -> complex:
    """Transfer coefficient between two fixed points, paired in increasing order.

    C = prod_i exp((n-r)(x_{dp_i} - z_{dm_i})/2) *
        prod_{j not in dm} sin((x_{dp_i} - z_j)/2i) / sin((z_{dm_i} - z_j)/2i)

    evaluated at weights multiplied by ``scale``.
    """
    xs, zs = config.complex_weights(scale)
    n, r = config.n, config.r
    dm, dp = tuple(delta_minus), tuple(delta_plus)
    out = 1.0 + 0j
    for a, b in zip(dp, dm):
        out *= cmath.exp((n - r) * (xs[a] - zs[b]) / 2.0)
        for j in range(n):
            if j not in dm:
                out *= sin_over_2i(xs[a] - zs[j]) / sin_over_2i(zs[b] - zs[j])
    return out


def coeff_CK(config: FlopConfig, f_minus, delta_plus, scale: complex = 1.0) -> complex:
    """Abelianized transfer coefficient; f_minus is any function tuple.

    Same exponential prefactor as C but with sine products over all
    j != f_i, so it is defined for non-injective f as well.
    """
    xs, zs = config.complex_weights(scale)
    n, r = config.n, config.r
    f, dp = tuple(f_minus), tuple(delta_plus)
    out = 1.0 + 0j
    for a, b in zip(dp, f):
        out *= cmath.exp((n - r) * (xs[a] - zs[b]) / 2.0)
        for j in range(n):
            if j != b:
                out *= sin_over_2i(xs[a] - zs[j]) / sin_over_2i(zs[b] - zs[j])
    return out


def coeff_CH(config: FlopConfig, f_minus, delta_plus, scale: complex = 1.0) -> complex:
    """CK corrected by the antisymmetrizing sine ratio.

    Vanishes whenever f_minus repeats an index; summing it over the
    S_r-orbit of an increasing delta_minus recovers coeff_C.
    """
    xs, zs = config.complex_weights(scale)
    r = config.r
    f, dp = tuple(f_minus), tuple(delta_plus)
    out = coeff_CK(config, f_minus, delta_plus, scale)
    for i in range(r):
        for k in range(i + 1, r):
            out *= sin_over_2i(zs[f[i]] - zs[f[k]]) / sin_over_2i(xs[dp[i]] - xs[dp[k]])
    return out


@dataclass(frozen=True)
class TransitionMatrix:
    """Coefficient matrix, rows on the minus side, columns the plus fixed points.

    kind 'C' uses increasing subsets as rows; 'CK' all function tuples;
    'CH' the ordered injective tuples.
    """

    kind: str
    rows: tuple
    cols: tuple
    entries: tuple  # row-major tuple of tuples of complex

    def entry(self, row_label, col_label) -> complex:
        return self.entries[self.rows.index(tuple(row_label))][self.cols.index(tuple(col_label))]

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "rows": [list(rw) for rw in self.rows],
            "cols": [list(cl) for cl in self.cols],
            "entries": [[[v.real, v.imag] for v in row] for row in self.entries],
        }


def transition_matrix(config: FlopConfig, kind: str = "C", scale: complex = 1.0) -> TransitionMatrix:
    cols = tuple(fixed_point_deltas(config))
    if kind == "C":
        rows = cols
        fn = coeff_C
    elif kind == "CK":
        rows = tuple(lab.f for lab in enumerate_abelian(config, "minus"))
        fn = coeff_CK
    elif kind == "CH":
        rows = tuple(lab.f for lab in enumerate_abelian(config, "minus", injective_only=True))
        fn = coeff_CH
    else:
        raise ValueError(f"unknown kind {kind!r}")
    entries = tuple(tuple(fn(config, rw, cl, scale) for cl in cols) for rw in rows)
    return TransitionMatrix(kind=kind, rows=rows, cols=cols, entries=entries)


# ----------------------------------------------------------------------
# Cohomology restriction vectors and U_H
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class LocalizedCohClass:
    """Cohomology class as its restriction values at one side's fixed points."""

    side: str
    values: dict  # delta tuple -> complex

    def value(self, delta) -> complex:
        return self.values[tuple(delta)]

    def __add__(self, other: "LocalizedCohClass") -> "LocalizedCohClass":
        if other.side != self.side:
            raise ValueError("side mismatch")
        return LocalizedCohClass(self.side, {d: self.values[d] + other.values[d] for d in self.values})

    def scaled(self, c: complex) -> "LocalizedCohClass":
        return LocalizedCohClass(self.side, {d: c * v for d, v in self.values.items()})


def basis_class(config: FlopConfig, side: str, delta) -> LocalizedCohClass:
    delta = tuple(delta)
    return LocalizedCohClass(
        side, {d: (1.0 + 0j if d == delta else 0j) for d in fixed_point_deltas(config)}
    )


def uh_apply(config: FlopConfig, beta: LocalizedCohClass, scale: complex = 1.0) -> LocalizedCohClass:
    """Transfer map in restriction coordinates: (U_H b)|_dp = sum C(dm,dp) b|_dm."""
    if beta.side != "minus":
        raise ValueError("uh_apply expects a minus-side class")
    deltas = fixed_point_deltas(config)
    values = {}
    for dp in deltas:
        values[dp] = sum(coeff_C(config, dm, dp, scale) * beta.values[dm] for dm in deltas)
    return LocalizedCohClass("plus", values)


def uh_matrix_numeric(config: FlopConfig, scale: complex = 1.0):
    """Matrix of uh_apply on the fixed-point basis, as nested lists (row = dm)."""
    deltas = fixed_point_deltas(config)
    return [[coeff_C(config, dm, dp, scale) for dp in deltas] for dm in deltas]


# ----------------------------------------------------------------------
# Antisymmetric product identity
# ----------------------------------------------------------------------

def antisym_lhs_poly(r: int) -> MultiPoly:
    """prod_i prod_{l<i} (z_i - z_l)(x_l - x_i), in variables x_1..x_r, z_1..z_r."""
    nv = 2 * r
    x = [MultiPoly.variable(nv, i) for i in range(r)]
    z = [MultiPoly.variable(nv, r + i) for i in range(r)]
    out = MultiPoly.constant(nv, 1)
    for i in range(r):
        for l in range(i):
            out = out * (z[i] - z[l]) * (x[l] - x[i])
    return out


def antisym_rhs_poly(r: int) -> MultiPoly:
    """sum_sigma sgn(sigma) prod_l prod_{j != sigma(l)} (x_j - z_l)."""
    nv = 2 * r
    x = [MultiPoly.variable(nv, i) for i in range(r)]
    z = [MultiPoly.variable(nv, r + i) for i in range(r)]
    out = MultiPoly.constant(nv, 0)
    for perm in permutations(range(r)):
        sign = _perm_sign(perm)
        term = MultiPoly.constant(nv, sign)
        for l in range(r):
            for j in range(r):
                if j != perm[l]:
                    term = term * (x[j] - z[l])
        out = out + term
    return out


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _antisym_lhs_value(xs, zs) -> Fraction:
    out = Fraction(1)
    r = len(xs)
    for i in range(r):
        for l in range(i):
            out *= (zs[i] - zs[l]) * (xs[l] - xs[i])
    return out


def _antisym_rhs_value(xs, zs) -> Fraction:
    r = len(xs)
    out = Fraction(0)
    for perm in permutations(range(r)):
        term = Fraction(_perm_sign(perm))
        for l in range(r):
            for j in range(r):
                if j != perm[l]:
                    term *= xs[j] - zs[l]
        out += term
    return out


@dataclass
class AntisymReport:
    r: int
    symbolic_checked: bool
    symbolic_ok: bool
    samples_ok: bool
    monomial_ok: bool

    @property
    def ok(self) -> bool:
        return (self.symbolic_ok or not self.symbolic_checked) and self.samples_ok and self.monomial_ok


def antisym_identity_check(r: int, samples: int = 20, seed: int = 0) -> AntisymReport:
    """Exact verification of the bi-antisymmetric product identity.

    Full symbolic expansion for r <= 4 (including the leading-monomial
    coefficient (-1)^{r(r-1)/2} of prod (z_i x_i)^{i-1}); exact rational
    equality at ``samples`` random points for any r.
    """
    symbolic_checked = r <= 4
    symbolic_ok = True
    monomial_ok = True
    if symbolic_checked:
        lhs = antisym_lhs_poly(r)
        rhs = antisym_rhs_poly(r)
        symbolic_ok = lhs == rhs
        exp = tuple(range(r)) + tuple(range(r))  # x_i^(i-1), z_i^(i-1)
        want = Fraction((-1) ** (r * (r - 1) // 2))
        monomial_ok = lhs.coefficient(exp) == want and rhs.coefficient(exp) == want
    rng = random.Random(seed)
    samples_ok = True
    for _ in range(samples):
        xs = [Fraction(rng.randint(-60, 60), rng.randint(1, 40)) for _ in range(r)]
        zs = [Fraction(rng.randint(-60, 60), rng.randint(1, 40)) for _ in range(r)]
        if _antisym_lhs_value(xs, zs) != _antisym_rhs_value(xs, zs):
            samples_ok = False
            break
    return AntisymReport(
        r=r,
        symbolic_checked=symbolic_checked,
        symbolic_ok=symbolic_ok,
        samples_ok=samples_ok,
        monomial_ok=monomial_ok,
    )


# ----------------------------------------------------------------------
# Gamma-integral structure map
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PsiContext:
    """Fixed side, fixed branch of log z, and cached tangent data.

    All z-dependence downstream is taken through log_z, so rotating the
    argument by e^{-i pi} is just log_z - i pi with no branch ambiguity.
    """

    config: FlopConfig
    side: str
    log_z: complex
    tangent: dict = field(compare=False, default=None)

    @classmethod
    def create(cls, config: FlopConfig, side: str, z: complex | None = None,
               log_z: complex | None = None) -> "PsiContext":
        if log_z is None:
            if z is None or z == 0:
                raise ValueError("need z != 0 or an explicit log_z")
            log_z = cmath.log(z)
        tangent = {
            d: tuple(
                complex(w)
                for w in tangent_weights(config, FixedPointLabel(side, d))
            )
            for d in fixed_point_deltas(config)
        }
        ctx = cls(config=config, side=side, log_z=log_z, tangent=tangent)
        inv_z = ctx.inv_z
        for ws in tangent.values():
            for w in ws:
                if is_nonpositive_integer(1.0 + w * inv_z):
                    raise PoleError(f"1 + w/z hits a Gamma pole for w = {w}")
        return ctx

    @property
    def z(self) -> complex:
        return cmath.exp(self.log_z)

    @property
    def inv_z(self) -> complex:
        return cmath.exp(-self.log_z)

    @property
    def ch_scale(self) -> complex:
        """Exponent scale 2 pi i / z for the Chern-character factor."""
        return TWO_PI_I * self.inv_z

    def rotated(self) -> "PsiContext":
        """Context for the argument e^{-i pi} z on the same branch."""
        return PsiContext(
            config=self.config,
            side=self.side,
            log_z=self.log_z - 1j * math.pi,
            tangent=self.tangent,
        )


def psi_diag_factor(ctx: PsiContext, delta) -> complex:
    """Per-fixed-point diagonal factor of psi.

    z^{dim/2} * exp((sum_t w_t / z) log z) * prod_t Gamma(1 + w_t / z),
    over the tangent weights at the fixed point.
    """
    inv_z = ctx.inv_z
    ws = ctx.tangent[tuple(delta)]
    out = cmath.exp(ctx.config.dim / 2.0 * ctx.log_z)
    out *= cmath.exp(sum(ws) * inv_z * ctx.log_z)
    for w in ws:
        out *= gamma(1.0 + w * inv_z)
    return out


def psi_on_coh(ctx: PsiContext, beta: LocalizedCohClass) -> LocalizedCohClass:
    """Diagonal action of psi on a restriction vector (scaling already absorbed)."""
    if beta.side != ctx.side:
        raise ValueError("side mismatch")
    return LocalizedCohClass(
        ctx.side, {d: psi_diag_factor(ctx, d) * v for d, v in beta.values.items()}
    )


def psi_inverse(ctx: PsiContext, beta: LocalizedCohClass) -> LocalizedCohClass:
    if beta.side != ctx.side:
        raise ValueError("side mismatch")
    return LocalizedCohClass(
        ctx.side, {d: v / psi_diag_factor(ctx, d) for d, v in beta.values.items()}
    )


def psi_apply(ctx: PsiContext, A: LocalizedKClass) -> LocalizedCohClass:
    """Gamma-integral structure map on a K-class.

    psi_apply = diagonal factor times the Chern character at scale
    2 pi i / z, per fixed point.
    """
    if A.side != ctx.side:
        raise ValueError("side mismatch")
    ch = chern_character(ctx.config, A, ctx.ch_scale)
    return LocalizedCohClass(ctx.side, {d: psi_diag_factor(ctx, d) * ch[d] for d in ch})


def pairing(config: FlopConfig, a: LocalizedCohClass, b: LocalizedCohClass) -> complex:
    """Localization pairing: sum_d a|_d * b|_d / e(N_d), at the exact weights."""
    if a.side != b.side:
        raise ValueError("pairing needs classes on the same side")
    total = 0j
    for d in a.values:
        eN = complex(1.0)
        for w in tangent_weights(config, FixedPointLabel(a.side, d)):
            eN *= complex(w)
        total += a.values[d] * b.values[d] / eN
    return total


def u_apply(ctx_plus: PsiContext, ctx_minus: PsiContext, beta: LocalizedCohClass) -> LocalizedCohClass:
    """The symplectic transfer U = psi_plus . U_H . psi_minus^{-1}.

    Both contexts must carry the same log z.  The middle transfer acts at
    the 2 pi i / z - scaled weights: conjugating by psi's degree operators
    substitutes lambda -> 2 pi i lambda / z into any function of the
    weights, the transfer coefficients included.
    """
    if ctx_plus.side != "plus" or ctx_minus.side != "minus":
        raise ValueError("contexts must be (plus, minus)")
    if abs(ctx_plus.log_z - ctx_minus.log_z) > 1e-14:
        raise ValueError("contexts must share the same log z")
    if ctx_plus.config is not ctx_minus.config and ctx_plus.config != ctx_minus.config:
        raise ValueError("contexts must share the configuration")
    stripped = psi_inverse(ctx_minus, beta)
    moved = uh_apply(ctx_minus.config, stripped, scale=ctx_minus.ch_scale)
    return psi_on_coh(ctx_plus, moved)


def u_matrix_numeric(ctx_plus: PsiContext, ctx_minus: PsiContext):
    """Matrix of u_apply on the fixed-point basis (row = minus delta)."""
    config = ctx_minus.config
    deltas = fixed_point_deltas(config)
    rows = []
    for dm in deltas:
        img = u_apply(ctx_plus, ctx_minus, basis_class(config, "minus", dm))
        rows.append([img.values[dp] for dp in deltas])
    return rows
