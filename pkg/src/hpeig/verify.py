"""Verification suites: every closed form checked against an independent computation.

Each suite returns a :class:`SuiteResult`; a failed check or an arithmetic
error inside one is recorded as a violation rather than raised. Library
functions are looked up through their modules at call time, so a patched
implementation is the one that gets verified.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from . import characters as chars
from . import operators as ops
from .exact import FieldScalar, ThetaMode, format_scalar
from .polyspace import (
    MultiPoly,
    Partition,
    Permutation,
    dominance_leq,
    monomial_symmetric,
    monomials_of_degree,
    mult_profile,
    pad,
    partitions,
    permute_action,
    sort_to_partition,
    v_lambda_basis,
)
from .spectra import brute, catalog, closed, eigenfunctions

DEFAULT_SEED = 20240601
SUITES = ("commutativity", "triangularity", "selfadjoint", "cms", "traces", "catalog")


@dataclass
class SuiteResult:
    checks: int = 0
    violations: list[str] = field(default_factory=list)

    def check(self, ok: bool, message: Callable[[], str] | str) -> None:
        self.checks += 1
        if not ok:
            self.violations.append(message() if callable(message) else message)

    def guard(self, label: str, fn: Callable[[], None]) -> None:
        """Run ``fn``; an arithmetic failure inside it is a violation."""
        try:
            fn()
        except (ArithmeticError, ValueError) as exc:
            self.checks += 1
            self.violations.append(f"{label}: {type(exc).__name__}: {exc}")

    def merge(self, other: "SuiteResult") -> None:
        self.checks += other.checks
        self.violations.extend(other.violations)


@dataclass(frozen=True)
class VerifyConfig:
    n: int = 3
    maxdeg: int = 4
    mode: ThetaMode = ThetaMode.at(1)
    m_max: int = 3
    seed: int = DEFAULT_SEED
    samples: int = 4
    cap: int | None = None


def _lambdas(config: VerifyConfig) -> Iterator[tuple[int, Partition]]:
    """All ``(N, lambda)`` with ``1 <= N <= n``, ``|lambda| <= maxdeg``, ``len(lambda) <= N``."""
    for n in range(1, config.n + 1):
        for d in range(config.maxdeg + 1):
            for lam in partitions(d, n):
                yield n, lam


def _random_poly(rng: random.Random, n: int, degree: int, mode: ThetaMode) -> MultiPoly:
    monos = monomials_of_degree(degree, n)
    picks = rng.sample(monos, min(len(monos), 3))
    terms = {g: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for g in picks}
    return MultiPoly(n, terms, mode)


def _fmt(x: FieldScalar) -> str:
    return format_scalar(x)


# ---------------------------------------------------------------------------


def verify_commutativity(config: VerifyConfig) -> SuiteResult:
    """``[P_m, P_k] = 0`` and the commutator identity for ``x_a D_a``."""
    res = SuiteResult()
    mode = config.mode
    rng = random.Random(config.seed)
    for n in range(1, config.n + 1):
        inputs = []
        for d in range(config.maxdeg + 1):
            inputs.extend(MultiPoly.monomial(g, mode) for g in monomials_of_degree(d, n))
            inputs.extend(_random_poly(rng, n, d, mode) for _ in range(config.samples))
        for f in inputs:
            def run(f=f, n=n):
                cache = {m: ops.apply_P(m, f) for m in range(1, config.m_max + 1)}
                for m, k in itertools.combinations(range(1, config.m_max + 1), 2):
                    lhs = ops.apply_P(m, cache[k]) - ops.apply_P(k, cache[m])
                    res.check(not lhs, lambda: f"[P_{m}, P_{k}] {f} = {lhs} (N={n})")
                for a, b in itertools.combinations(range(1, n + 1), 2):
                    xa, xb = ops.apply_xD(a, f), ops.apply_xD(b, f)
                    comm = ops.apply_xD(a, xb) - ops.apply_xD(b, xa)
                    rhs = permute_action(Permutation.transposition(n, a, b), xa - xb).scale(mode.theta)
                    res.check(comm == rhs, lambda: f"[x{a}D{a}, x{b}D{b}] {f}: {comm} != {rhs}")
            res.guard(f"commutativity N={n} f={f}", run)
    return res


def verify_triangularity(config: VerifyConfig) -> SuiteResult:
    """``P_m - sum T_i^m`` maps ``V_lambda`` strictly down in dominance order,
    and the joint eigenfunctions come in the predicted numbers."""
    res = SuiteResult()
    mode = config.mode
    for n, lam in _lambdas(config):
        full = pad(lam, n)

        def run(n=n, lam=lam, full=full):
            for gamma in v_lambda_basis(lam, n):
                f = MultiPoly.monomial(gamma, mode)
                for m in range(1, config.m_max + 1):
                    rest = ops.apply_P(m, f) - ops.t_power_sum(m, f)
                    bad = [g for g in rest.terms if sort_to_partition(g) == full or not dominance_leq(sort_to_partition(g), full)]
                    res.check(not bad, lambda: f"P_{m} - sum T^{m} on x^{gamma} (N={n}) leaves dominated span at {bad[:3]}")
        res.guard(f"triangularity N={n} lambda={lam}", run)

        if sum(lam) <= min(config.maxdeg, 3) and n <= 3:
            def counts(n=n, lam=lam):
                funcs = eigenfunctions.joint_eigenbasis(lam, n, list(range(1, config.m_max + 1)), mode, config.cap)
                _, mult = mult_profile(lam, n)
                for tau in partitions(n):
                    got = sum(1 for fn in funcs if fn.tau == tau)
                    want = chars.isotypic_dimension(lam, tau, n)
                    res.check(got == want, lambda: f"eigenfunctions lambda={lam} tau={tau}: {got} != {want}")
                    if not dominance_leq(mult, tau):
                        res.check(want == 0, lambda: f"Mult({lam})={mult} not dominated by {tau} but dim {want}")
                for fn in funcs:
                    if fn.resolved:
                        for m, val in fn.eigenvalues.items():
                            img = ops.apply_P(m, fn.poly)
                            res.check(img == fn.poly.scale(val), lambda: f"P_{m} {fn.poly} is not {_fmt(val)} times it")
            res.guard(f"eigenfunction counts N={n} lambda={lam}", counts)
    return res


def verify_selfadjoint(config: VerifyConfig) -> SuiteResult:
    """``<x_i D_i f, g> = <f, x_i D_i g>`` and symmetry of the pairing, on monomials."""
    res = SuiteResult()
    mode = config.mode
    for n in range(1, config.n + 1):
        for d in range(config.maxdeg + 1):
            monos = [MultiPoly.monomial(g, mode) for g in monomials_of_degree(d, n)]
            for f, g in itertools.combinations_with_replacement(monos, 2):
                def run(f=f, g=g, n=n):
                    fg, gf = ops.dunkl_pairing(f, g), ops.dunkl_pairing(g, f)
                    res.check(fg == gf, lambda: f"<{f}, {g}> = {_fmt(fg)} but <{g}, {f}> = {_fmt(gf)}")
                    for i in range(1, n + 1):
                        lhs = ops.dunkl_pairing(ops.apply_xD(i, f), g)
                        rhs = ops.dunkl_pairing(f, ops.apply_xD(i, g))
                        res.check(lhs == rhs, lambda: f"x{i}D{i} not self-adjoint on ({f}, {g}): {_fmt(lhs)} != {_fmt(rhs)}")
                res.guard(f"selfadjoint N={n}", run)
    return res


def verify_cms(config: VerifyConfig) -> SuiteResult:
    """``P_2`` agrees with the CMS form on every monomial symmetric function."""
    res = SuiteResult()
    for n, lam in _lambdas(config):
        def run(n=n, lam=lam):
            f = monomial_symmetric(lam, n, config.mode)
            lhs, rhs = ops.apply_P(2, f), ops.apply_cms(f)
            res.check(lhs == rhs, lambda: f"P_2 m_{lam} (N={n}) = {lhs} but CMS gives {rhs}")
        res.guard(f"cms N={n} lambda={lam}", run)
    return res


def _check_symmetric(res: SuiteResult, n: int, lam: Partition, config: VerifyConfig) -> None:
    mode = config.mode
    series = closed.eig_sym_series(lam, n, config.m_max, mode)
    res.check(series[0] == n, lambda: f"eig_0 for {lam} is {_fmt(series[0])}, expected N={n}")
    jack = eigenfunctions.jack_polynomial(lam, n, mode, range(1, config.m_max + 1))
    for m in range(1, config.m_max + 1):
        value = closed.eig_sym_closed(lam, m, n, mode)
        others = {
            "series": series[m],
            "p x p matrix": closed.eig_sym_profile_matrix(lam, m, n, mode),
            "brute force": brute.symmetric_eigenvalue_brute(lam, m, n, mode),
            "Jack": jack.eigenvalues[m],
        }
        for name, other in others.items():
            res.check(value == other, lambda: f"eig_{m}({lam}, N={n}) = {_fmt(value)} but {name} gives {_fmt(other)}")


def _check_traces(res: SuiteResult, n: int, lam: Partition, config: VerifyConfig) -> None:
    mode = config.mode
    _, mult = mult_profile(lam, n)
    distinct = len(set(pad(lam, n))) == n
    for tau in partitions(n):
        dim = chars.isotypic_dimension(lam, tau, n)
        for m in range(1, config.m_max + 1):
            c = closed.trace_isotypic_closed(lam, tau, m, n, mode)
            b = brute.trace_isotypic_brute(lam, tau, m, n, mode, config.cap)
            res.check(c == b, lambda: f"trace lambda={lam} tau={tau} m={m} (N={n}): closed {_fmt(c)} != brute {_fmt(b)}")
            if not dominance_leq(mult, tau):
                res.check(not b, lambda: f"trace lambda={lam} tau={tau} should vanish, got {_fmt(b)}")
            if dim == 1 and tau == (1,) * n and distinct:
                s = closed.eig_skew_closed(lam, m, n, mode)
                res.check(s == b, lambda: f"skew eigenvalue lambda={lam} m={m}: {_fmt(s)} != {_fmt(b)}")


def _check_two_block(res: SuiteResult, n: int, lam: Partition, config: VerifyConfig) -> None:
    prof, _ = mult_profile(lam, n)
    if prof.p != 2:
        return
    a, b = prof.d
    eta = prof.n[1]
    mode = config.mode
    for m in range(1, config.m_max + 1):
        report = brute.spectrum_on_v_lambda(lam, m, n, mode, config.cap)
        for blk in report.blocks:
            k = blk.tau[1] if len(blk.tau) > 1 else 0
            ok_shape = len(blk.tau) <= 2 and k <= min(eta, n - eta)
            res.check(ok_shape, lambda: f"two-block lambda={lam}: unexpected isotype {blk.tau}")
            if not ok_shape:
                continue
            value = closed.eig_two_block(n, eta, a, b, m, k, mode)
            records = [r for r in report.records if r.tau == blk.tau]
            good = len(records) == 1 and records[0].value == value and records[0].multiplicity == blk.dim
            res.check(good, lambda: f"two-block lambda={lam} m={m} tau={blk.tau}: {records} != {_fmt(value)} x{blk.dim}")
            want = chars.isotypic_dimension(lam, blk.tau, n)
            res.check(blk.dim == want, lambda: f"two-block lambda={lam} tau={blk.tau}: dim {blk.dim} != {want}")


def _check_characters(res: SuiteResult, n: int) -> None:
    table = chars.CharacterContext(n)
    for tau in table.irreps:
        for k in range(1, n + 1):
            mn = chars.character(tau, (k,) + (1,) * (n - k))
            one = chars.character_one_cycle(tau, k)
            res.check(mn == one, lambda: f"chi^{tau} at a {k}-cycle: MN {mn} != one-cycle {one}")
    hook = (n - 1, 1) if n >= 2 else None
    for blocks in _compositions(n):
        for r in range(1, len(blocks) + 1):
            for sub in itertools.combinations(range(1, len(blocks) + 1), r):
                spec = chars.AveragedCharacterSpec(blocks, sub)
                if hook:
                    got = chars.averaged_character(hook, spec)
                    want = chars.averaged_character_n11(spec)
                    res.check(got == want, lambda: f"avg chi^{hook}[{sub}; {blocks}] = {got} != {want}")
                if len(blocks) == 2 and r == 2:
                    eta = blocks[1]
                    for k in range(0, min(eta, n - eta) + 1):
                        got = chars.averaged_character((n - k, k) if k else (n,), spec)
                        want = chars.spherical_p2(n, eta, k)
                        res.check(got == want, lambda: f"avg chi^({n - k},{k})[{sub}; {blocks}] = {got} != {want}")


def _compositions(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def verify_traces(config: VerifyConfig) -> SuiteResult:
    """Symmetric eigenvalues, isotypic traces, the two-block corollary and character identities."""
    res = SuiteResult()
    for n in range(1, config.n + 1):
        res.guard(f"characters N={n}", lambda n=n: _check_characters(res, n))
    for n, lam in _lambdas(config):
        res.guard(f"symmetric eigenvalue N={n} lambda={lam}", lambda n=n, lam=lam: _check_symmetric(res, n, lam, config))
        res.guard(f"traces N={n} lambda={lam}", lambda n=n, lam=lam: _check_traces(res, n, lam, config))
        res.guard(f"two-block N={n} lambda={lam}", lambda n=n, lam=lam: _check_two_block(res, n, lam, config))
    return res


def verify_catalog(config: VerifyConfig) -> SuiteResult:
    """Three-variable catalog against block characteristic polynomials."""
    res = SuiteResult()
    if config.n < 3:
        return res
    for d in range(config.maxdeg + 1):
        for lam in partitions(d, 3):
            for m in range(1, config.m_max + 1):
                def run(lam=lam, m=m):
                    problems = catalog.check_catalog(lam, m, config.mode, config.cap)
                    res.check(not problems, lambda: "; ".join(problems))
                res.guard(f"catalog lambda={lam} m={m}", run)
    return res


RUNNERS: dict[str, Callable[[VerifyConfig], SuiteResult]] = {
    "commutativity": verify_commutativity,
    "triangularity": verify_triangularity,
    "selfadjoint": verify_selfadjoint,
    "cms": verify_cms,
    "traces": verify_traces,
    "catalog": verify_catalog,
}


def run_suite(name: str, config: VerifyConfig) -> SuiteResult:
    if name == "all":
        total = SuiteResult()
        for key in SUITES:
            total.merge(run_suite(key, config))
        return total
    try:
        runner = RUNNERS[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}") from None
    # look the runner up on the module so a patched suite is honored too
    return globals()[runner.__name__](config)
