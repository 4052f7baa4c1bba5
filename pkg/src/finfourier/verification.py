"""Self-check suites and the closed-form verdict table.

Every suite returns a :class:`SuiteResult` with the worst deviation it saw.
Reports contain no timings, so a fixed seed gives byte-identical output.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

from . import oracle
from .errors import EvaluationError, ParameterError
from .operator_method import ab_polynomials, explicit_pair, operator_hat
from .parseval import (
    SQRT2,
    fourier_coeff_p,
    fourier_coeff_p_display,
    fourier_coeff_q,
    fourier_coeff_q_kummer,
    fourier_coeff_q_printed,
    parseval_partial_sum,
)
from .polyfamilies import Family, FamilySpec, monomial_coefficients
from .specialfns import spherical_bessel_j
from .transforms import (
    FAMILY_METHODS,
    MethodId,
    hat,
    hat_auto,
    hat_threshold,
    jacobi_hat_zero,
    jacobi_zero_antiderivative,
    jacobi_zero_printed,
    raw_closed_form,
    weighted_jacobi_hat,
)

JACOBI_PARAMS = ((0, 0), (1, 0), (Fraction(1, 2), Fraction(1, 2)), (2, 3),
                 (Fraction(-3, 10), Fraction(7, 10)))
GEGENBAUER_PARAMS = (Fraction(1, 2), 1, Fraction(5, 2))


def log_grid(lo: float = 0.5, hi: float = 100.0, count: int = 24) -> list[float]:
    r = math.log(hi / lo) / (count - 1)
    return [lo * math.exp(r * i) for i in range(count)]


def rel_dev(a: complex, b: complex) -> float:
    """|a - b| / max(|a|, |b|), and 0 when both vanish."""
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale else 0.0


def all_specs(max_n: int):
    for n in range(max_n + 1):
        yield FamilySpec.legendre(n)
        for a, b in JACOBI_PARAMS:
            yield FamilySpec.jacobi(n, a, b)
        for nu in GEGENBAUER_PARAMS:
            yield FamilySpec.gegenbauer(n, nu)
        yield FamilySpec.chebyshev_t(n)
        yield FamilySpec.chebyshev_u(n)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    cases: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = (f"{self.name:<18} {status}  worst={self.worst:.17g}  "
                f"tol={self.tolerance:.17g}  cases={self.cases}")
        return text + (f"  {self.detail}" if self.detail else "")


class _Worst:
    """Running maximum that remembers where it happened."""

    def __init__(self):
        self.value = 0.0
        self.where = ""
        self.cases = 0

    def see(self, dev: float, where: str) -> None:
        self.cases += 1
        if not dev <= self.value:  # also catches nan
            self.value, self.where = dev, where

    def result(self, name: str, tol: float, extra: str = "") -> SuiteResult:
        ok = self.value <= tol
        detail = extra or (f"at {self.where}" if self.where else "")
        return SuiteResult(name, ok, self.value, tol, self.cases, detail)


# -- suites --------------------------------------------------------------------


def suite_legendre_forms(tol: float | None = None, seed: int = 0, **_) -> SuiteResult:
    """Pairwise agreement of the four Legendre forms, n <= 25, lam in [0.5, 100]."""
    tol = 1e-9 if tol is None else tol
    w = _Worst()
    methods = FAMILY_METHODS[Family.LEGENDRE]
    for n in range(26):
        spec = FamilySpec.legendre(n)
        for lam in log_grid():
            vals = [hat(spec, lam, m).value for m in methods]
            dev = max(rel_dev(x, y) for i, x in enumerate(vals) for y in vals[i + 1:])
            w.see(dev, f"n={n} lambda={lam:.6g}")
    return w.result("legendre-forms", tol)


def _oracle_points(seed: int):
    lams = [0.0, 1e-4, 1e-2] + log_grid()
    for spec in all_specs(20):
        for lam in lams:
            yield spec, lam
    rng = random.Random(seed)
    specs = list(all_specs(20))
    for _ in range(40):
        yield rng.choice(specs), rng.uniform(-100.0, 100.0)


def suite_oracle(tol: float | None = None, seed: int = 0, **_) -> SuiteResult:
    """hat_auto against composite Gauss quadrature for every family."""
    tol = 1e-8 if tol is None else tol
    w = _Worst()
    for spec, lam in _oracle_points(seed):
        q = oracle.quad_spec_hat(spec, lam)
        v = hat_auto(spec, lam).value
        w.see(abs(v - q.value) / (1 + abs(q.value)), f"{spec.label()} lambda={lam:.6g}")
    return w.result("oracle", tol)


def suite_reductions(tol: float | None = None, seed: int = 0, **_) -> SuiteResult:
    """Special cases that coincide, the Jacobi reduction and the symmetries."""
    tol = 1e-10 if tol is None else tol
    w = _Worst()
    rng = random.Random(seed)
    lams = [0.5, 1.0, math.pi, 10.0, 80.0] + [rng.uniform(0.5, 100.0) for _ in range(3)]
    for n in range(16):
        leg = FamilySpec.legendre(n)
        pairs = [
            (leg, FamilySpec.jacobi(n, 0, 0)),
            (leg, FamilySpec.gegenbauer(n, Fraction(1, 2))),
            (FamilySpec.chebyshev_u(n), FamilySpec.gegenbauer(n, 1)),
        ]
        for lam in lams:
            for s1, s2 in pairs:
                w.see(rel_dev(hat_auto(s1, lam).value, hat_auto(s2, lam).value),
                      f"{s1.label()}~{s2.label()} lambda={lam:.6g}")
            for spec in (FamilySpec.gegenbauer(n, Fraction(5, 2)), FamilySpec.chebyshev_t(n),
                         FamilySpec.chebyshev_u(n)):
                w.see(rel_dev(hat(spec, lam, MethodId.VIA_JACOBI).value, hat_auto(spec, lam).value),
                      f"{spec.label()} via-jacobi lambda={lam:.6g}")
            for a, b in JACOBI_PARAMS:
                spec = FamilySpec.jacobi(n, a, b)
                v = hat_auto(spec, lam).value
                # real polynomial: hat(-lam) = conj(hat(lam))
                w.see(rel_dev(hat_auto(spec, -lam).value, v.conjugate()),
                      f"{spec.label()} conjugate lambda={lam:.6g}")
                # P^{(a,b)}(-x) = (-1)^n P^{(b,a)}(x)
                swapped = hat_auto(FamilySpec.jacobi(n, b, a), lam).value
                w.see(rel_dev(hat_auto(spec, -lam).value, (-1) ** n * swapped),
                      f"{spec.label()} reflection lambda={lam:.6g}")
    return w.result("reductions", tol)


def alternating_binomial_failures(max_n: int = 60) -> list[tuple[int, int]]:
    """(n, k) where sum_j (-1)^j C(n,j) C(2n-j, 2n-k) != C(n,k)."""
    bad = []
    for n in range(max_n + 1):
        for k in range(n + 1):
            s = sum((-1) ** j * comb(n, j) * comb(2 * n - j, 2 * n - k) for j in range(k + 1))
            if s != comb(n, k):
                bad.append((n, k))
    return bad


def vandermonde_failures(max_ab: int = 40) -> list[tuple[int, int, int]]:
    bad = []
    for a in range(max_ab + 1):
        for b in range(max_ab + 1):
            for n in range(a + b + 1):
                if sum(comb(a, k) * comb(b, n - k) for k in range(n + 1)) != comb(a + b, n):
                    bad.append((a, b, n))
    return bad


def suite_binomial_identity(tol: float | None = None, seed: int = 0, **_) -> SuiteResult:
    """Exact integer identities; the deviation is the number of failures."""
    alt = alternating_binomial_failures(60)
    vdm = vandermonde_failures(40)
    cases = sum(n + 1 for n in range(61)) + sum(a + b + 1 for a in range(41) for b in range(41))
    bad = len(alt) + len(vdm)
    return SuiteResult("binomial-identity", bad == 0, float(bad), 0.0, cases,
                       "exact integer arithmetic")


def suite_kummer(tol: float | None = None, seed: int = 0, **_) -> SuiteResult:
    """a_j(Q_m) from the weighted transform against its Kummer-transformed form."""
    tol = 1e-10 if tol is None else tol
    w = _Worst()
    rng = random.Random(seed)
    js = list(range(-40, 41)) + [rng.randint(41, 200) for _ in range(4)]
    for m in range(7):
        for a, b in JACOBI_PARAMS:
            for j in js:
                w.see(rel_dev(fourier_coeff_q(m, a, b, j), fourier_coeff_q_kummer(m, a, b, j)),
                      f"m={m} alpha={float(a):g} beta={float(b):g} j={j}")
    return w.result("kummer", tol)


def suite_bessel_recurrence(tol: float | None = None, seed: int = 0, **_) -> SuiteResult:
    """Three-term recurrence residual of j_n and the Legendre-Bessel identity."""
    tol = 1e-10 if tol is None else tol
    w = _Worst()
    for lam in (0.5, math.pi, 10.0, 80.0):
        js = [spherical_bessel_j(k, lam) for k in range(32)]
        for n in range(1, 31):
            mid = (2 * n + 1) / lam * js[n]
            scale = abs(js[n + 1]) + abs(js[n - 1]) + abs(mid)
            w.see(abs(js[n + 1] + js[n - 1] - mid) / scale, f"recurrence n={n} lambda={lam:.6g}")
        for n in range(31):
            target = 2 * (1j) ** n * js[n]
            w.see(rel_dev(hat(FamilySpec.legendre(n), lam, MethodId.L_CLOSED).value, target),
                  f"legendre n={n} lambda={lam:.6g}")
    return w.result("bessel-recurrence", tol)


def suite_operator(tol: float | None = None, seed: int = 0, **_) -> SuiteResult:
    """Operator method against hat_auto, and the recurrence pair against the
    explicit derivative expansion."""
    tol = 1e-9 if tol is None else tol
    w = _Worst()
    for spec in all_specs(15):
        for lam in (1.0, math.pi, 10.0, 50.0):
            w.see(rel_dev(operator_hat(spec, lam).value, hat_auto(spec, lam).value),
                  f"{spec.label()} lambda={lam:.6g}")
    for n in range(31):
        rec, exp = ab_polynomials(n), explicit_pair(n)
        for lam in (0.5, 1.0, math.pi, 10.0, 50.0):
            w.see(rel_dev(rec(lam), exp(lam)), f"sinc derivative n={n} lambda={lam:.6g}")
    return w.result("operator", tol)


def parseval_cases(jmax: int):
    for n in range(4):
        for m in range(4):
            for a, b in ((0, 0), (1, 0)):
                yield parseval_partial_sum(n, m, a, b, jmax)


PARSEVAL_FLOOR = 1e-12


def suite_parseval(tol: float | None = None, seed: int = 0, jmax: int = 256, **_) -> SuiteResult:
    """The partial sums approach their target at the rate their octaves show.

    For each case the residual |S_J - target| must not exceed twice the last
    octave |S_J - S_{J/2}| (plus a rounding floor), and octave sizes must not
    grow.  The deviation reported is the worst residual / (2 tail + floor).
    """
    w = _Worst()
    for rep in parseval_cases(jmax):
        ratio = rep.residual / (2 * rep.tail_est + PARSEVAL_FLOOR)
        sums = [s for _, s in rep.octaves]
        steps = [abs(y - x) for x, y in zip(sums, sums[1:])]
        grows = any(b > a + PARSEVAL_FLOOR for a, b in zip(steps[-4:], steps[-3:]))
        w.see(math.inf if grows else ratio,
              f"n={rep.n} m={rep.m} alpha={rep.alpha:g} beta={rep.beta:g}")
    return w.result("parseval", 1.0)


def suite_continuity(tol: float | None = None, seed: int = 0, **_) -> SuiteResult:
    """No jump at the series switch, and the lam -> 0 Taylor behaviour."""
    tol = 1e-8 if tol is None else tol
    w = _Worst()
    for spec in all_specs(20):
        tau = hat_threshold(spec.n)
        below = hat_auto(spec, math.nextafter(tau, 0.0)).value
        at = hat_auto(spec, tau).value
        w.see(rel_dev(below, at), f"{spec.label()} switch")
        c = monomial_coefficients(spec).coeffs
        mu = [sum((2 * c[k] / (k + m + 1) for k in range(len(c)) if (k + m) % 2 == 0),
                  Fraction(0)) for m in range(3)]
        lam = 1e-6
        taylor = complex(float(mu[0]) - lam * lam * float(mu[2]) / 2, lam * float(mu[1]))
        # absolute check, scaled to the tolerance of this suite
        w.see(abs(hat_auto(spec, lam).value - taylor) * (tol / 1e-10),
              f"{spec.label()} taylor")
    return w.result("continuity", tol)


# -- verdict table ----------------------------------------------------------------


@dataclass(frozen=True)
class VerdictRow:
    form: str
    test_range: str
    max_dev: float
    verdict: str


VERDICT_TOL = 1e-8
_VERDICT_LAMS = (0.5, 1.0, math.pi, 10.0, 37.7, 100.0)


def _mixed(v: complex, ref: complex) -> float:
    return abs(v - ref) / max(1.0, abs(ref))


def _row(form: str, test_range: str, dev: float, expect_agree: bool = True) -> VerdictRow:
    agrees = dev <= VERDICT_TOL
    if agrees:
        verdict = "agrees"
    else:
        verdict = "disagrees (printed display)" if not expect_agree else "DISAGREES"
    return VerdictRow(form, test_range, dev, verdict)


def verdict_rows(max_n: int = 12) -> list[VerdictRow]:
    """Each closed form, display and implemented method against quadrature."""
    rows = []
    quad_cache: dict = {}

    def quad(spec, lam):
        key = (spec, lam)
        if key not in quad_cache:
            quad_cache[key] = oracle.quad_spec_hat(spec, lam, 1e-13).value
        return quad_cache[key]

    lam_text = "lambda in {0.5, 1, pi, 10, 37.7, 100}"
    by_family = {f: [s for s in all_specs(max_n) if s.family is f] for f in Family}
    for fam, methods in FAMILY_METHODS.items():
        for m in methods:
            lo = 1 if m is MethodId.T_CLOSED else 0
            dev = max(_mixed(raw_closed_form(s, lam, m), quad(s, lam))
                      for s in by_family[fam] if s.n >= lo for lam in _VERDICT_LAMS)
            params = ", all parameters" if fam in (Family.JACOBI, Family.GEGENBAUER) else ""
            rows.append(_row(m.value, f"{fam.value}, {lo} <= n <= {max_n}{params}, {lam_text}",
                             dev))
    every = list(all_specs(max_n))
    for m in (MethodId.VIA_JACOBI, MethodId.OPERATOR):
        dev = max(_mixed(hat(s, lam, m).value, quad(s, lam)) for s in every
                  for lam in _VERDICT_LAMS)
        rows.append(_row(m.value, f"all families, n <= {max_n}, {lam_text}", dev))
    small = (0.0, 1e-4, 1e-2, 0.4)
    dev = max(_mixed(hat(s, lam, MethodId.SMALL_LAMBDA_SERIES).value, quad(s, lam))
              for s in every for lam in small)
    rows.append(_row(MethodId.SMALL_LAMBDA_SERIES.value,
                     f"all families, n <= {max_n}, lambda in {{0, 1e-4, 1e-2, 0.4}}", dev))

    jac = by_family[Family.JACOBI]
    zero_range = f"jacobi, 1 <= n <= {max_n}, all parameters, lambda = 0"
    jac1 = [s for s in jac if s.n >= 1]
    rows.append(_row("J-lambda0 (exact moments)", zero_range,
                     max(_mixed(jacobi_hat_zero(s.n, s.alpha, s.beta).value, quad(s, 0.0))
                         for s in jac1)))
    anti = [(s, jacobi_zero_antiderivative(s.n, s.alpha, s.beta)) for s in jac1]
    rows.append(_row("lambda=0 antiderivative formula", zero_range,
                     max(_mixed(float(v), quad(s, 0.0)) for s, v in anti if v is not None)))
    rows.append(_row("lambda=0 printed formula", zero_range,
                     max(_mixed(float(jacobi_zero_printed(s.n, s.alpha, s.beta)), quad(s, 0.0))
                         for s in jac1), expect_agree=False))
    adjud = [FamilySpec.jacobi(1, 1, 0)] + [FamilySpec.jacobi(n, 0, 0) for n in range(1, 11)]
    rows.append(_row("lambda=0 printed formula", "(n,alpha,beta) = (1,1,0) and (1..10,0,0)",
                     max(_mixed(float(jacobi_zero_printed(s.n, s.alpha, s.beta)), quad(s, 0.0))
                         for s in adjud), expect_agree=False))

    wdev = 0.0
    pdev = qdev = kdev = 0.0
    for a, b in JACOBI_PARAMS:
        for n in range(7):
            for j in range(1, 9):
                lam = -math.pi * j
                wq = oracle.quad_weighted_hat(n, a, b, lam, 1e-13).value
                wdev = max(wdev, _mixed(weighted_jacobi_hat(n, a, b, lam), wq))
                kdev = max(kdev, _mixed(fourier_coeff_q_kummer(n, a, b, j), wq / SQRT2))
                qdev = max(qdev, _mixed(fourier_coeff_q_printed(n, a, b, j), wq / SQRT2))
                pq = quad(FamilySpec.jacobi(n, a, b), lam) / SQRT2
                pdev = max(pdev, _mixed(fourier_coeff_p_display(n, a, b, j), pq))
                pdev_impl = _mixed(fourier_coeff_p(n, a, b, j), pq)
                wdev = max(wdev, pdev_impl)
    coef_range = "n <= 6, all (alpha, beta), 1 <= j <= 8"
    rows.append(_row("weighted 1F1 form and a_j(P)", coef_range, wdev))
    rows.append(_row("a_j(Q) Kummer form, (i pi j)^m", coef_range, kdev))
    rows.append(_row("a_j(P) printed display", coef_range, pdev, expect_agree=False))
    rows.append(_row("a_j(Q) printed display", coef_range, qdev, expect_agree=False))
    return rows


def verdict_markdown(rows: list[VerdictRow]) -> str:
    out = [
        "# Verdict table",
        "",
        "Deviation is |v - q| / max(1, |q|) against adaptive quadrature q, which is",
        "relative for |q| >= 1 and absolute below.  Closed forms are evaluated",
        "directly, without the small-lambda routing.",
        "",
        "| form | test range | max deviation | verdict |",
        "|---|---|---|---|",
    ]
    out += [f"| {r.form} | {r.test_range} | {r.max_dev:.3e} | {r.verdict} |" for r in rows]
    return "\n".join(out) + "\n"


def write_verdict_table(path) -> str:
    """Regenerate the markdown verdict table at ``path``; returns its text."""
    from pathlib import Path

    text = verdict_markdown(verdict_rows())
    Path(path).write_text(text, encoding="utf-8")
    return text


def suite_verdict(tol: float | None = None, seed: int = 0, **_) -> SuiteResult:
    """Every implemented form agrees with quadrature; displays known to be
    misprinted must be detected as such."""
    rows = verdict_rows()
    worst = max(r.max_dev for r in rows if r.verdict != "disagrees (printed display)")
    bad = [r.form for r in rows if r.verdict == "DISAGREES"]
    displays = [r for r in rows if r.form.endswith(("printed display", "printed formula"))]
    missed = [r.form for r in displays if r.verdict == "agrees"]
    ok = not bad and not missed
    detail = ("; ".join(f"{r.form}: {r.verdict}" for r in displays))
    return SuiteResult("verdict", ok, worst, VERDICT_TOL, len(rows), detail)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "legendre-forms": suite_legendre_forms,
    "oracle": suite_oracle,
    "reductions": suite_reductions,
    "binomial-identity": suite_binomial_identity,
    "kummer": suite_kummer,
    "bessel-recurrence": suite_bessel_recurrence,
    "operator": suite_operator,
    "parseval": suite_parseval,
    "continuity": suite_continuity,
    "verdict": suite_verdict,
}


def run_suites(names, tol: float | None = None, seed: int = 0,
               jmax: int = 256) -> list[SuiteResult]:
    names = list(SUITES) if "all" in names else list(names)
    out = []
    for name in names:
        try:
            out.append(SUITES[name](tol=tol, seed=seed, jmax=jmax))
        except (ParameterError, EvaluationError) as exc:
            out.append(SuiteResult(name, False, math.inf, tol or 0.0, 0,
                                   f"{type(exc).__name__}: {exc}"))
    return out


def report_text(results: list[SuiteResult]) -> str:
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} suites passed")
    return "\n".join(lines) + "\n"
