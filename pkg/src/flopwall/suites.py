"""Verification suites.

Each suite function yields case specs (name, params, thunk); a thunk runs
one check and returns (status, max_rel_err).  Thunks are pure, so they can
run on any worker; report order follows the declaration order regardless
of scheduling.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable

import numpy as np

from .flopgeom import (
    FixedPointLabel,
    FlopConfig,
    check_relations,
    enumerate_fixed_points,
    fixed_point_deltas,
    random_config,
    tangent_weights,
)
from .hypergeom import (
    NonConvergenceError,
    OffsetSeries,
    barnes_integrate,
    central_charge,
    central_charge_plus_continued,
    delta_hat_apply,
    f_factor_series,
    h_series,
    i_function,
    i_function_factored,
    ode_check,
    series_product,
    verify_continuation_r1,
)
from .ktheory import (
    chern_character,
    chi_z_pairing,
    euler_characteristic,
    fm_generator_formula,
    fm_transform,
    fm_transform_generator_exact,
    generator_e,
    unit_class,
)
from .numkernel import sin_over_2i
from .wallcross import (
    PsiContext,
    antisym_identity_check,
    coeff_C,
    coeff_CH,
    pairing,
    psi_apply,
    u_apply,
    u_matrix_numeric,
    uh_apply,
    LocalizedCohClass,
)

DEFAULT_TOLS = {
    "identities": 0.0,
    "collapse": 1e-10,
    "fm_diagram": 1e-10,
    "fm_formula": 1e-12,
    "chi_invariance": 1e-10,
    "integral_pairing": 1e-8,
    "continuation": 1e-8,
    "structure": 1e-12,
    "ode": 1e-10,
    "itoh": 1e-10,
    "central_charge": 1e-6,
    "symplectic": 1e-8,
}

# weights reused for the fixed (r, n) grids of the acceptance criteria
_DEFAULT_X = ("31/100", "-17/100", "23/100", "-41/100", "7/100")
_DEFAULT_Z = ("3/25", "47/100", "-29/100", "53/100", "-11/100")


def default_config(n: int = 2, r: int = 1) -> FlopConfig:
    if n <= len(_DEFAULT_X):
        return FlopConfig(
            n,
            r,
            tuple(Fraction(v) for v in _DEFAULT_X[:n]),
            tuple(Fraction(v) for v in _DEFAULT_Z[:n]),
        )
    return random_config(n, r, seed=10_000 + 100 * n + r)


@dataclass
class SuiteEnv:
    """Everything a suite needs: configs, tolerances, evaluation points."""

    seed: int = 0
    order: int = 80
    z_values: tuple = (2.0 + 0j, 3.0 + 1j)
    tols: dict = field(default_factory=dict)
    base_config: FlopConfig | None = None

    def tol(self, name: str) -> float:
        return self.tols.get(name, DEFAULT_TOLS[name])

    def config_for(self, n: int, r: int) -> FlopConfig:
        if self.base_config is not None and (self.base_config.n, self.base_config.r) == (n, r):
            return self.base_config
        return default_config(n, r)

    def rng(self, tag: str) -> random.Random:
        return random.Random(f"{self.seed}:{tag}")


@dataclass
class CaseSpec:
    suite: str
    name: str
    params: dict
    thunk: Callable  # () -> tuple[str, float | None]


def _bool_case(ok: bool, err: float | None = None):
    return ("pass" if ok else "fail"), err


def _err_case(err: float, tol: float):
    return ("pass" if err < tol else "fail"), err


# ----------------------------------------------------------------------
# identities
# ----------------------------------------------------------------------

def identities_suite(env: SuiteEnv) -> list:
    cases = []
    for r in range(1, 7):
        def thunk(r=r):
            rep = antisym_identity_check(r, samples=20, seed=env.seed)
            return _bool_case(rep.ok, 0.0 if rep.ok else None)
        cases.append(
            CaseSpec("identities", f"antisym-r{r}",
                     {"r": r, "samples": 20, "symbolic": r <= 4}, thunk)
        )
    return cases


# ----------------------------------------------------------------------
# geometry
# ----------------------------------------------------------------------

_RELATION_GRID = ((1, 2), (1, 3), (2, 3), (2, 4), (3, 5))


def geometry_suite(env: SuiteEnv) -> list:
    cases = []
    for r, n in _RELATION_GRID:
        for side in ("plus", "minus"):
            def thunk(n=n, r=r, side=side):
                rep = check_relations(env.config_for(n, r), side)
                return _bool_case(rep.ok, 0.0 if rep.ok else None)
            cases.append(
                CaseSpec("geometry", f"relations-n{n}-r{r}-{side}", {"n": n, "r": r, "side": side}, thunk)
            )
    for r, n in _RELATION_GRID:
        def thunk(n=n, r=r):
            cfg = env.config_for(n, r)
            flipped = cfg.flipped()
            expected = 2 * r * n - r * r
            all_minus = []
            all_plus_flipped = []
            for lab in enumerate_fixed_points(cfg, "minus"):
                tw = tangent_weights(cfg, lab)
                if len(tw) != expected or any(w == 0 for w in tw):
                    return _bool_case(False)
                all_minus.extend(tw)
                plus_lab = FixedPointLabel("plus", lab.delta)
                all_plus_flipped.extend(tangent_weights(flipped, plus_lab))
                if len(tangent_weights(cfg, plus_lab)) != expected:
                    return _bool_case(False)
            # flop involution x -> -z, z -> -x exchanges the two sides
            return _bool_case(sorted(all_minus) == sorted(all_plus_flipped), 0.0)
        cases.append(CaseSpec("geometry", f"tangent-weights-n{n}-r{r}", {"n": n, "r": r}, thunk))
    return cases


# ----------------------------------------------------------------------
# ktheory
# ----------------------------------------------------------------------

_FM_GRID = ((1, 2), (1, 3), (2, 3), (2, 4))


def _random_generator_combo(cfg: FlopConfig, rng: random.Random):
    deltas = fixed_point_deltas(cfg)
    combo = None
    coeffs = []
    for dm in deltas:
        c = rng.randint(-3, 3)
        coeffs.append(c)
        term = generator_e(cfg, dm).scaled(c)
        combo = term if combo is None else combo + term
    if all(c == 0 for c in coeffs):
        combo = combo + generator_e(cfg, deltas[0])
    return combo


def ktheory_suite(env: SuiteEnv) -> list:
    cases = []
    for r, n in _FM_GRID:
        def thunk(n=n, r=r):
            cfg = env.config_for(n, r)
            worst = 0.0
            for lab in enumerate_fixed_points(cfg, "minus"):
                dm = lab.delta
                closed = fm_generator_formula(cfg, dm)
                exact = fm_transform_generator_exact(cfg, dm)
                for dp, chi in closed.restrictions.items():
                    if exact.restrictions[dp] != chi:
                        return _bool_case(False)
                numeric = fm_transform(cfg, generator_e(cfg, dm))
                ch_closed = chern_character(cfg, closed)
                for dp in numeric:
                    scale = max(1.0, abs(ch_closed[dp]))
                    worst = max(worst, abs(numeric[dp] - ch_closed[dp]) / scale)
            return _err_case(worst, env.tol("fm_formula"))
        cases.append(CaseSpec("ktheory", f"fm-formula-n{n}-r{r}", {"n": n, "r": r}, thunk))

    for r, n in _FM_GRID:
        def thunk(n=n, r=r):
            cfg = env.config_for(n, r)
            for lab in enumerate_fixed_points(cfg, "minus"):
                e = generator_e(cfg, lab.delta)
                for d0, chi in e.restrictions.items():
                    if d0 != lab.delta and not chi.is_zero():
                        return _bool_case(False)
                    if d0 == lab.delta and chi.is_zero():
                        return _bool_case(False)
            return _bool_case(True, 0.0)
        cases.append(CaseSpec("ktheory", f"generator-vanishing-n{n}-r{r}", {"n": n, "r": r}, thunk))

    for r, n in _FM_GRID:
        def thunk(n=n, r=r):
            cfg = env.config_for(n, r)
            deltas = fixed_point_deltas(cfg)
            mat = np.array(
                [[chern_character(cfg, fm_generator_formula(cfg, dm))[dp] for dp in deltas]
                 for dm in deltas]
            )
            svals = np.linalg.svd(mat, compute_uv=False)
            ratio = svals[-1] / svals[0]
            return _bool_case(ratio > 1e-10, ratio)
        cases.append(CaseSpec("ktheory", f"fm-invertible-n{n}-r{r}", {"n": n, "r": r}, thunk))

    for r, n in ((1, 2), (2, 3)):
        def thunk(n=n, r=r):
            cfg = env.config_for(n, r)
            rng = env.rng(f"chi:{n}:{r}")
            worst = 0.0
            for _ in range(5):
                A = _random_generator_combo(cfg, rng)
                B = _random_generator_combo(cfg, rng)
                chi_m = euler_characteristic(cfg, A)
                chi_p = euler_characteristic(cfg, fm_transform(cfg, A), side="plus")
                worst = max(worst, abs(chi_m - chi_p) / max(1.0, abs(chi_m)))
                for z in env.z_values:
                    s = 2j * math.pi / z
                    lhs = chi_z_pairing(cfg, A, B, z)
                    fa = fm_transform(cfg, chern_character(cfg, A, -s), -s)
                    fb = fm_transform(cfg, B, s)
                    rhs = 0j
                    for dp in fa:
                        den = 1.0 + 0j
                        for w in tangent_weights(cfg, FixedPointLabel("plus", dp)):
                            den *= 1.0 - cmath.exp(-s * complex(w))
                        rhs += fa[dp] * fb[dp] / den
                    worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
            return _err_case(worst, env.tol("chi_invariance"))
        cases.append(CaseSpec("ktheory", f"chi-invariance-n{n}-r{r}", {"n": n, "r": r}, thunk))
    return cases


# ----------------------------------------------------------------------
# wallcross
# ----------------------------------------------------------------------

_COLLAPSE_GRID = ((2, 3), (2, 4), (3, 5))


def wallcross_suite(env: SuiteEnv) -> list:
    cases = []
    for r, n in _COLLAPSE_GRID:
        def thunk(n=n, r=r):
            cfg = env.config_for(n, r)
            deltas = fixed_point_deltas(cfg)
            worst = 0.0
            for dm in deltas:
                for dp in deltas:
                    terms = [coeff_CH(cfg, perm, dp) for perm in permutations(dm)]
                    want = coeff_C(cfg, dm, dp)
                    # the orbit sum can cancel hugely at unlucky draws; the
                    # triangle bound is the honest accuracy scale then
                    scale = max(abs(want), sum(abs(t) for t in terms) * 1e-2)
                    worst = max(worst, abs(sum(terms) - want) / scale)
            return _err_case(worst, env.tol("collapse"))
        cases.append(CaseSpec("wallcross", f"sr-collapse-n{n}-r{r}", {"n": n, "r": r}, thunk))

    for r, n in _FM_GRID:
        def thunk(n=n, r=r):
            cfg = env.config_for(n, r)
            worst = 0.0
            for lab in enumerate_fixed_points(cfg, "minus"):
                dm = lab.delta
                ch_e = chern_character(cfg, generator_e(cfg, dm))
                ch_fm = chern_character(cfg, fm_generator_formula(cfg, dm))
                image = uh_apply(cfg, LocalizedCohClass("minus", ch_e))
                for dp, want in ch_fm.items():
                    worst = max(worst, abs(image.values[dp] - want) / abs(want))
            return _err_case(worst, env.tol("fm_diagram"))
        cases.append(CaseSpec("wallcross", f"fm-diagram-n{n}-r{r}", {"n": n, "r": r}, thunk))

    def c_specialization():
        worst = 0.0
        for n in (2, 3):
            cfg = env.config_for(n, 1)
            xs, zs = cfg.complex_weights()
            for l in range(n):
                for k in range(n):
                    want = cmath.exp((n - 1) * (xs[l] - zs[k]) / 2.0)
                    for i in range(n):
                        if i != k:
                            want *= sin_over_2i(xs[l] - zs[i]) / sin_over_2i(zs[k] - zs[i])
                    got = coeff_C(cfg, (k,), (l,))
                    worst = max(worst, abs(got - want) / abs(want))
        return _err_case(worst, 1e-13)
    cases.append(CaseSpec("wallcross", "c-r1-specialization", {"n": [2, 3], "r": 1}, c_specialization))

    for z in env.z_values:
        def thunk(z=z):
            cfg = env.config_for(2, 1)
            worst = 0.0
            for side in ("plus", "minus"):
                ctx = PsiContext.create(cfg, side, z=z)
                rot = ctx.rotated()
                one = unit_class(cfg, side)
                deltas = fixed_point_deltas(cfg)
                probes = [one]
                if side == "minus":
                    probes += [generator_e(cfg, dm) for dm in deltas]
                else:
                    probes += [fm_generator_formula(cfg, dm) for dm in deltas]
                for C in probes:
                    for D in probes:
                        pc = psi_apply(rot, C)
                        pd = psi_apply(ctx, D)
                        lhs = pairing(cfg, pc, pd)
                        rhs = (2.0 * math.pi) ** cfg.dim * chi_z_pairing(cfg, C, D, z)
                        # normalize by the triangle bound of the localization
                        # sum: the honest scale even when the total cancels
                        bound = 0.0
                        for d in deltas:
                            eN = 1.0 + 0j
                            for wgt in tangent_weights(cfg, FixedPointLabel(side, d)):
                                eN *= complex(wgt)
                            bound += abs(pc.values[d] * pd.values[d] / eN)
                        worst = max(worst, abs(lhs - rhs) / max(bound, abs(rhs), 1e-30))
            return _err_case(worst, env.tol("integral_pairing"))
        cases.append(
            CaseSpec("wallcross", f"integral-pairing-z{z.real:g}{z.imag:+g}i",
                     {"n": 2, "r": 1, "z": [z.real, z.imag]}, thunk)
        )

    def symplectic():
        cfg = env.config_for(2, 1)
        z = env.z_values[0]
        ctxm = PsiContext.create(cfg, "minus", z=z)
        ctxp = PsiContext.create(cfg, "plus", z=z)
        rotm, rotp = ctxm.rotated(), ctxp.rotated()
        rng = env.rng("symplectic")
        deltas = fixed_point_deltas(cfg)
        eul = {}
        for side in ("plus", "minus"):
            for d in deltas:
                prod = 1.0 + 0j
                for wgt in tangent_weights(cfg, FixedPointLabel(side, d)):
                    prod *= complex(wgt)
                eul[(side, d)] = prod

        def triangle(a, b):
            return sum(
                abs(a.values[d] * b.values[d] / eul[(a.side, d)]) for d in deltas
            )

        worst = 0.0
        for _ in range(10):
            C = _random_generator_combo(cfg, rng)
            D = _random_generator_combo(cfg, rng)
            f_rot = psi_apply(rotm, C)
            g = psi_apply(ctxm, D)
            uf, ug = u_apply(rotp, rotm, f_rot), u_apply(ctxp, ctxm, g)
            lhs = pairing(cfg, uf, ug)
            rhs = pairing(cfg, f_rot, g)
            # normalize by the larger triangle bound of the two localization
            # sums: the pairing itself may legitimately cancel to ~0
            scale = max(triangle(uf, ug), triangle(f_rot, g), 1e-30)
            worst = max(worst, abs(lhs - rhs) / scale)
        return _err_case(worst, env.tol("symplectic"))
    cases.append(CaseSpec("wallcross", "symplectic-pairing", {"n": 2, "r": 1, "pairs": 10}, symplectic))

    def u_nonsingular():
        cfg = env.config_for(2, 1)
        z = env.z_values[0]
        ctxm = PsiContext.create(cfg, "minus", z=z)
        ctxp = PsiContext.create(cfg, "plus", z=z)
        mat = np.array(u_matrix_numeric(ctxp, ctxm))
        svals = np.linalg.svd(mat, compute_uv=False)
        ratio = svals[-1] / svals[0]
        return _bool_case(ratio > 1e-10, ratio)
    cases.append(CaseSpec("wallcross", "u-nonsingular", {"n": 2, "r": 1}, u_nonsingular))
    return cases


# ----------------------------------------------------------------------
# continuation
# ----------------------------------------------------------------------

def continuation_suite(env: SuiteEnv) -> list:
    cases = []
    for n in (2, 3):
        def thunk(n=n):
            cfg = env.config_for(n, 1)
            rep = verify_continuation_r1(cfg, tol=env.tol("continuation"), order=env.order)
            return _err_case(rep.max_err, env.tol("continuation"))
        cases.append(CaseSpec("continuation", f"wall-crossing-n{n}-r1",
                              {"n": n, "r": 1, "order": env.order, "q": [0.3, 3.0]}, thunk))

    def guard():
        cfg = env.config_for(2, 1)
        bad_w = math.log(3.0) + 1j * (cfg.n - cfg.r + 1) * math.pi
        try:
            barnes_integrate(bad_w, cfg, 0)
        except NonConvergenceError:
            return _bool_case(True, None)
        return _bool_case(False, None)
    cases.append(CaseSpec("continuation", "pole-line-guard", {"n": 2, "r": 1}, guard))

    def structure():
        cfg = env.config_for(3, 2)
        worst = 0.0
        for dp in fixed_point_deltas(cfg):
            K = h_series(cfg, "plus", dp, 10)
            factors = [f_factor_series(cfg, dp, k, 10) for k in range(cfg.r)]
            assembled = delta_hat_apply(series_product(factors))
            for es, c in K.coeffs.items():
                worst = max(worst, abs(c - assembled.coeffs[es]))
        return _err_case(worst, env.tol("structure"))
    cases.append(CaseSpec("continuation", "factor-structure-n3-r2", {"n": 3, "r": 2, "order": 10}, structure))

    def ode():
        worst = 0.0
        for n in (2, 3):
            cfg = env.config_for(n, 1)
            for side in ("plus", "minus"):
                for l in range(n):
                    worst = max(worst, ode_check(cfg, h_series(cfg, side, (l,), 40), side))
        cfg = env.config_for(3, 2)
        for dp in fixed_point_deltas(cfg):
            for k in range(cfg.r):
                worst = max(worst, ode_check(cfg, f_factor_series(cfg, dp, k, 40), "plus"))
        return _err_case(worst, env.tol("ode"))
    cases.append(CaseSpec("continuation", "ode-residuals", {"order": 40}, ode))

    def ode_sensitivity():
        cfg = env.config_for(2, 1)
        s = h_series(cfg, "plus", (0,), 40)
        coeffs = dict(s.coeffs)
        coeffs[5] *= 1.0 + 1e-3
        perturbed = OffsetSeries(offset=s.offset, coeffs=coeffs, order=s.order, prefactor=s.prefactor)
        res = ode_check(cfg, perturbed, "plus")
        return _bool_case(res > 1e-4, res)
    cases.append(CaseSpec("continuation", "ode-sensitivity-control", {"bump": 1e-3}, ode_sensitivity))

    def itoh_r1():
        cfg = env.config_for(2, 1)
        worst = 0.0
        for z in env.z_values:
            for side in ("plus", "minus"):
                ctx = PsiContext.create(cfg, side, z=z)
                for d in fixed_point_deltas(cfg):
                    direct = i_function(cfg, side, d, 20, ctx)
                    assembled = i_function_factored(cfg, side, d, 20, ctx)
                    for e in direct.coeffs:
                        scale = max(1.0, abs(direct.coeffs[e]))
                        worst = max(worst, abs(direct.coeffs[e] - assembled.coeffs[e]) / scale)
                    if abs(direct.offset - assembled.offset) > 1e-13:
                        return _bool_case(False)
        return _err_case(worst, env.tol("itoh"))
    cases.append(CaseSpec("continuation", "i-factorization-n2-r1", {"n": 2, "r": 1, "order": 20}, itoh_r1))

    def itoh_r2():
        cfg = env.config_for(3, 2)
        ctx_by_side = {s: PsiContext.create(cfg, s, z=env.z_values[0]) for s in ("plus", "minus")}
        worst = 0.0
        for side, ctx in ctx_by_side.items():
            for d in fixed_point_deltas(cfg):
                direct = i_function(cfg, side, d, 8, ctx)
                assembled = i_function_factored(cfg, side, d, 8, ctx)
                for e in direct.coeffs:
                    scale = max(1.0, abs(direct.coeffs[e]))
                    worst = max(worst, abs(direct.coeffs[e] - assembled.coeffs[e]) / scale)
        return _err_case(worst, env.tol("itoh"))
    cases.append(CaseSpec("continuation", "i-factorization-n3-r2", {"n": 3, "r": 2, "order": 8}, itoh_r2))

    def i_symmetry():
        cfg = env.config_for(3, 2)
        ctx = PsiContext.create(cfg, "plus", z=env.z_values[0])
        worst = 0.0
        for d in fixed_point_deltas(cfg):
            a = i_function(cfg, "plus", d, 8, ctx)
            b = i_function(cfg, "plus", tuple(reversed(d)), 8, ctx)
            for e in a.coeffs:
                worst = max(worst, abs(a.coeffs[e] - b.coeffs[e]) / max(1.0, abs(a.coeffs[e])))
        return _err_case(worst, 1e-12)
    cases.append(CaseSpec("continuation", "i-reordering-symmetry", {"n": 3, "r": 2}, i_symmetry))
    return cases


# ----------------------------------------------------------------------
# central charge
# ----------------------------------------------------------------------

def central_charge_suite(env: SuiteEnv) -> list:
    cases = []

    def linearity():
        cfg = env.config_for(2, 1)
        z = env.z_values[0]
        ctx = PsiContext.create(cfg, "minus", z=z)
        w = -1.5 + 1j * math.pi
        deltas = fixed_point_deltas(cfg)
        A = generator_e(cfg, deltas[0])
        B = generator_e(cfg, deltas[1])
        za = central_charge(cfg, "minus", A, w, ctx, order=60)
        zb = central_charge(cfg, "minus", B, w, ctx, order=60)
        zab = central_charge(cfg, "minus", A + B, w, ctx, order=60)
        err = abs(zab - za - zb) / max(abs(za) + abs(zb), 1e-30)
        return _err_case(err, 1e-12)
    cases.append(CaseSpec("central-charge", "linearity", {"n": 2, "r": 1}, linearity))

    def continuation():
        cfg = env.config_for(2, 1)
        z = env.z_values[0]
        ctxm = PsiContext.create(cfg, "minus", z=z)
        ctxp = PsiContext.create(cfg, "plus", z=z)
        w = math.log(3.0) + 1j * math.pi * (cfg.n - cfg.r)
        worst = 0.0
        for kind in ("structure-sheaf", "generator"):
            if kind == "structure-sheaf":
                Em = unit_class(cfg, "minus")
                Ep = fm_transform(cfg, chern_character(cfg, Em, ctxp.ch_scale), ctxp.ch_scale)
            else:
                Em = generator_e(cfg, (0,))
                Ep = fm_generator_formula(cfg, (0,))
            z_minus = central_charge(cfg, "minus", Em, -w, ctxm, order=env.order)
            z_plus = central_charge_plus_continued(cfg, Ep, w, ctxp)
            worst = max(worst, abs(z_plus - z_minus) / max(abs(z_minus), 1e-30))
        return _err_case(worst, env.tol("central_charge"))
    cases.append(CaseSpec("central-charge", "fm-continuation", {"n": 2, "r": 1, "q": 3.0}, continuation))

    def leading_behaviour():
        cfg = env.config_for(2, 1)
        z = env.z_values[0]
        ctx = PsiContext.create(cfg, "plus", z=z)
        rot = ctx.rotated()
        w = -30.0 + 1j * math.pi
        E = fm_generator_formula(cfg, (0,))
        full = central_charge(cfg, "plus", E, w, ctx, order=40)
        psi_e = psi_apply(ctx, E)
        lead = 0j
        for d in fixed_point_deltas(cfg):
            series = i_function(cfg, "plus", d, 0, rot)
            eN = 1.0 + 0j
            for wgt in tangent_weights(cfg, FixedPointLabel("plus", d)):
                eN *= complex(wgt)
            lead += series.eval(w) * psi_e.values[d] / eN
        err = abs(full - lead) / max(abs(full), 1e-30)
        return _err_case(err, 1e-8)
    cases.append(CaseSpec("central-charge", "leading-asymptotics", {"n": 2, "r": 1, "w": -30.0}, leading_behaviour))
    return cases


SUITES = {
    "identities": identities_suite,
    "geometry": geometry_suite,
    "ktheory": ktheory_suite,
    "wallcross": wallcross_suite,
    "continuation": continuation_suite,
    "central-charge": central_charge_suite,
}

SUITE_ORDER = ("identities", "geometry", "ktheory", "wallcross", "continuation", "central-charge")


def collect_cases(env: SuiteEnv, suite: str) -> list:
    if suite == "all":
        out = []
        for name in SUITE_ORDER:
            out.extend(SUITES[name](env))
        return out
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return SUITES[suite](env)
