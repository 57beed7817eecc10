"""Experiment pipelines: run one (theorem, q, ell, parameters) configuration,
compute S1/S2/bound, enumerate eligible characters for the extremal one,
verify the inequalities, and emit structured reports; sweep ascending primes
to expose growth trends.

The four numbered targets and their moving parts:

    theorem 1: linear kernel,  S2 weights prod_j L(1, chi^j; Y)
    theorem 2: sigma kernel,   S2 weights sum_j sum_{p<=Y} chi(p)^j p^-sigma
    theorem 3: linear kernel,  S2 weights prod_j D_j(chi)       (sigma = 1)
    theorem 4: sigma kernel,   S2 weights prod_j D_j(sigma,chi) (ell < 1/(2-2 sigma))

Every run checks Re(S2)/S1 >= bound (margin >= 0) and the resonance
certificate: the maximum of the target functional over eligible characters
must dominate (Re S2 - excluded-character terms)/S1, because a weighted
average cannot exceed the maximum.  A violated inequality is never silent:
it lands in the report's ``failures`` with all operands, and the report as a
whole is marked failed.

Identical configurations produce identical reports (bit-stable given the
fixed reduction strategy) except for the wall-time field.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .arithmetic import is_prime, primes_up_to
from .characters import CharacterGroup, eligible
from .constants import (
    default_strip_epsilon,
    strip_l_admissible_range,
    strip_logderiv_admissible_range,
)
from .lfunctions import (
    EULER_GAMMA,
    NearZeroLValue,
    _fsum_complex,
    exact_l,
    exact_l_all,
    truncated_l,
    truncated_l_all,
)
from .resonator import (
    LinearKernel,
    SigmaKernel,
    bound_l_product,
    bound_logderiv_product,
    bound_prime_sum,
    logderiv_poly_all,
    max_ell_for_sigma,
    power_product,
    s1,
    s2_terms,
    strip_ell_limit,
)

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "TheoremReport",
    "SweepResult",
    "OracleComparison",
    "CheckResult",
    "REPORT_COLUMNS",
    "LOG4",
    "default_x",
    "config_from_json",
    "run_theorem",
    "functional_values",
    "extremal_search",
    "sweep",
    "oracle_comparison",
    "run_verification",
    "write_reports_csv",
    "write_json",
    "write_oracle_csv",
]

LOG4 = math.log(4.0)

REPORT_COLUMNS = (
    "q", "ell", "sigma", "X", "Y", "S1", "S2_re", "S2_im", "ratio",
    "bound", "margin", "argmax_index", "max_value", "certificate", "seconds",
)

_TIE_TOL = 1e-9
_SLACK = 1e-12

_TARGETS = {1: "l-product", 2: "prime-sum", 3: "logderiv-product", 4: "logderiv-product"}
_FUNCTIONALS = {
    1: "l-product-modulus",
    2: "l-product-modulus",
    3: "logderiv-product-real",
    4: "logderiv-product-real",
}


class ConfigError(ValueError):
    """An experiment configuration failed validation."""


@dataclass(frozen=True)
class ExperimentConfig:
    """One run: which theorem, which modulus, and the knobs.

    ``excluded`` holds extra character indices to treat as exceptional (the
    hook for a user-designated chi_e); chi_0 and the low-order characters
    are always excluded from the extremal search by the eligibility rule.
    ``zero_free_constant_a`` is an abstract placeholder for the zero-free
    region constant; nothing computes with it.
    """

    theorem: int
    q: int
    ell: int = 1
    x: float | None = None
    y: int | None = None
    sigma: float | None = None
    excluded: tuple[int, ...] = ()
    endpoint_margin: float = 0.01
    zero_free_constant_a: float | None = None
    output: str | None = None

    def validated(self) -> "ExperimentConfig":
        """Check invariants and fill derived defaults for x and y."""
        if self.theorem not in (1, 2, 3, 4):
            raise ConfigError(f"theorem must be 1..4, got {self.theorem}")
        if not is_prime(self.q) or self.q < 3:
            raise ConfigError(f"q must be an odd prime, got {self.q}")
        if self.ell < 1:
            raise ConfigError(f"ell must be >= 1, got {self.ell}")
        needs_sigma = self.theorem in (2, 4)
        if needs_sigma and self.sigma is None:
            raise ConfigError(f"theorem {self.theorem} requires sigma")
        if not needs_sigma and self.sigma is not None:
            raise ConfigError(f"theorem {self.theorem} takes no sigma (got {self.sigma})")
        if needs_sigma and not (0.5 < self.sigma < 1.0):
            raise ConfigError(f"sigma must lie in (1/2, 1), got {self.sigma}")
        if self.theorem == 4:
            limit = strip_ell_limit(self.sigma)
            if not self.ell < limit:
                raise ConfigError(
                    f"theorem 4 requires 1 <= ell < 1/(2 - 2 sigma) = {limit:g}; "
                    f"got ell = {self.ell}"
                )
        x = self.x
        if x is None:
            x = default_x(self.theorem, self.q, self.endpoint_margin, self.sigma)
        y = self.y
        if y is None:
            y = max(1000, int(math.ceil(x)))
        if y < x:
            raise ConfigError(
                f"the truncation cutoff must dominate the resonator support "
                f"(X <= Y is required); got X = {x}, Y = {y}"
            )
        if any(not (0 <= e) for e in self.excluded):
            raise ConfigError(f"excluded indices must be >= 0, got {self.excluded}")
        return replace(self, x=float(x), y=int(y))


def default_x(theorem: int, q: int, endpoint_margin: float = 0.01,
              sigma: float | None = None) -> float:
    """Resonator length X = (parameter) * log q * loglog q at the theorem's
    admissible endpoint, backed off by ``endpoint_margin`` (0 means the
    legal boundary itself, which is non-strict)."""
    if q < 17:
        raise ValueError(f"default X needs q >= 17 so that loglog q > 1; got {q}")
    if endpoint_margin < 0:
        raise ValueError("endpoint_margin must be >= 0")
    l1 = math.log(q)
    l2 = math.log(l1)
    if theorem == 1:
        delta = LOG4 * (1.0 + endpoint_margin)
        return l1 * l2 / delta
    if theorem == 3:
        tau = (1.0 / LOG4) * (1.0 - endpoint_margin)
        return tau * l1 * l2
    if theorem in (2, 4):
        if sigma is None:
            raise ValueError(f"theorem {theorem} needs sigma to place X")
        if theorem == 2:
            rng = strip_l_admissible_range(sigma)
        else:
            rng = strip_logderiv_admissible_range(sigma)
        if rng.is_empty:
            raise ValueError(f"admissible range for theorem {theorem} is empty at sigma={sigma}")
        return rng.upper * (1.0 - endpoint_margin) * l1 * l2
    raise ValueError(f"theorem must be 1..4, got {theorem}")


def config_from_json(path: str) -> ExperimentConfig:
    """Load and validate a JSON experiment configuration."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top-level JSON value must be an object")
    known = {
        "theorem", "q", "ell", "x", "y", "sigma", "excluded",
        "endpoint_margin", "zero_free_constant_a", "output",
    }
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"{path}: unknown keys {unknown}; known keys are {sorted(known)}")
    for req in ("theorem", "q"):
        if req not in raw:
            raise ConfigError(f"{path}: missing required key {req!r}")
    if "excluded" in raw:
        raw["excluded"] = tuple(int(e) for e in raw["excluded"])
    try:
        cfg = ExperimentConfig(**raw)
    except TypeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return cfg.validated()


# ---------------------------------------------------------------------------
# one run
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TheoremReport:
    """Everything one run computed, plus the inequality verdicts."""

    theorem: int
    q: int
    ell: int
    sigma: float | None
    x: float
    y: int
    excluded: tuple[int, ...]
    s1: float
    s2: complex
    ratio: float
    bound: float
    margin: float
    argmax_index: int
    max_value: float
    near_ties: tuple[int, ...]
    certificate: float
    logderiv_modulus_at_argmax: float | None
    oracle_gap: float | None
    seconds: float
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "q": self.q,
            "ell": self.ell,
            "sigma": self.sigma,
            "X": self.x,
            "Y": self.y,
            "excluded": list(self.excluded),
            "S1": self.s1,
            "S2_re": self.s2.real,
            "S2_im": self.s2.imag,
            "ratio": self.ratio,
            "bound": self.bound,
            "margin": self.margin,
            "argmax_index": self.argmax_index,
            "max_value": self.max_value,
            "near_ties": list(self.near_ties),
            "certificate": self.certificate,
            "logderiv_modulus_at_argmax": self.logderiv_modulus_at_argmax,
            "oracle_gap": self.oracle_gap,
            "seconds": self.seconds,
            "failures": list(self.failures),
            "passed": self.passed,
        }

    def csv_row(self) -> dict:
        return {
            "q": self.q,
            "ell": self.ell,
            "sigma": "" if self.sigma is None else repr(self.sigma),
            "X": repr(self.x),
            "Y": self.y,
            "S1": repr(self.s1),
            "S2_re": repr(self.s2.real),
            "S2_im": repr(self.s2.imag),
            "ratio": repr(self.ratio),
            "bound": repr(self.bound),
            "margin": repr(self.margin),
            "argmax_index": self.argmax_index,
            "max_value": repr(self.max_value),
            "certificate": repr(self.certificate),
            "seconds": repr(self.seconds),
        }


def _kernel_for(config: ExperimentConfig):
    if config.theorem in (1, 3):
        return LinearKernel(config.x)
    return SigmaKernel(config.x, config.sigma)


def _bound_for(config: ExperimentConfig, kernel) -> float:
    if config.theorem == 1:
        return bound_l_product(kernel, config.ell)
    if config.theorem == 2:
        return bound_prime_sum(kernel, config.ell)
    return bound_logderiv_product(kernel, config.ell)


def _eligible_minus_excluded(group: CharacterGroup, ell: int,
                             excluded: tuple[int, ...]) -> list[int]:
    """Eligible characters whose whole power family also avoids the
    user-designated exceptional indices."""
    members = eligible(group, ell).members
    if not excluded:
        return list(members)
    bad = {e % group.order for e in excluded}
    order = group.order
    return [
        k for k in members
        if all((k * j) % order not in bad for j in range(1, ell + 1))
    ]


def functional_values(group: CharacterGroup, ell: int, functional: str,
                      sigma: float, y: int) -> np.ndarray:
    """The theorem functional over every character index.

    Tags: ``l-product-modulus`` is prod_j |L(sigma, chi^j; Y)|;
    ``logderiv-product-real`` is Re prod_j D_j(sigma, chi);
    ``logderiv-product-modulus`` is |prod_j D_j(sigma, chi)|.
    """
    if functional == "l-product-modulus":
        base = truncated_l_all(group, sigma, y)
        return np.abs(power_product(base, ell))
    if functional == "logderiv-product-real":
        base = logderiv_poly_all(group, sigma, y)
        return power_product(base, ell).real.copy()
    if functional == "logderiv-product-modulus":
        base = logderiv_poly_all(group, sigma, y)
        return np.abs(power_product(base, ell))
    raise ValueError(f"unknown functional tag {functional!r}")


def extremal_search(group: CharacterGroup, ell: int, functional: str,
                    sigma: float, y: int,
                    excluded: tuple[int, ...] = ()) -> tuple[int, float]:
    """argmax of the tagged functional over the eligible set; ties go to the
    smallest character index so reports stay deterministic."""
    members = _eligible_minus_excluded(group, ell, excluded)
    if not members:
        raise ValueError(f"eligible set is empty for q={group.q}, ell={ell}")
    vals = functional_values(group, ell, functional, sigma, y)
    member_vals = vals[members]
    best = int(np.argmax(member_vals))  # argmax returns the first maximum
    return members[best], float(member_vals[best])


def run_theorem(config: ExperimentConfig) -> TheoremReport:
    """Full pipeline for one configuration.  Inequality violations are
    reported in ``failures`` (with operands in the message), never raised."""
    config = config.validated()
    t0 = time.perf_counter()
    group = CharacterGroup(config.q)
    kernel = _kernel_for(config)
    sigma_eff = kernel.sigma

    terms = s2_terms(group, _TARGETS[config.theorem], config.ell, kernel, config.y)
    s1_val = s1(group, kernel)
    s2_val = _fsum_complex(terms)
    if abs(s2_val.imag) > 1e-9 * (abs(s2_val.real) + s1_val):
        raise ValueError(
            f"S2 imaginary part {s2_val.imag:.3e} is not negligible; "
            "character indexing is likely broken"
        )
    ratio = s2_val.real / s1_val
    bound = _bound_for(config, kernel)
    margin = ratio - bound

    members = _eligible_minus_excluded(group, config.ell, config.excluded)
    if not members:
        raise ConfigError(f"eligible set is empty for q={config.q}, ell={config.ell}")
    vals = functional_values(
        group, config.ell, _FUNCTIONALS[config.theorem], sigma_eff, config.y
    )
    member_vals = vals[members]
    best_pos = int(np.argmax(member_vals))
    argmax_index = members[best_pos]
    max_value = float(member_vals[best_pos])
    tie_cut = max_value - _TIE_TOL * max(1.0, abs(max_value))
    near_ties = tuple(
        m for m, v in zip(members, member_vals) if v >= tie_cut
    )

    member_set = set(members)
    excluded_sum = math.fsum(
        terms.real[k] for k in range(group.order) if k not in member_set
    )
    certificate = (s2_val.real - excluded_sum) / s1_val

    logderiv_mod = None
    if config.theorem in (3, 4):
        mod_vals = functional_values(
            group, config.ell, "logderiv-product-modulus", sigma_eff, config.y
        )
        logderiv_mod = float(mod_vals[argmax_index])

    oracle_gap = None
    if config.theorem in (1, 2) and config.q <= 499:
        chi_star = group.character(argmax_index)
        try:
            ex = exact_l(chi_star, sigma_eff).value
            tr = truncated_l(chi_star, sigma_eff, config.y).value
            if abs(ex) >= 1e-8:
                oracle_gap = abs(tr - ex) / abs(ex)
        except NearZeroLValue:
            oracle_gap = None

    failures = []
    if margin < -_SLACK * max(1.0, abs(bound)):
        failures.append(
            f"resonance inequality violated: ratio {ratio!r} < bound {bound!r} "
            f"(S1={s1_val!r}, S2={s2_val!r}, margin={margin!r})"
        )
    if max_value < certificate - _SLACK * max(1.0, abs(max_value)):
        failures.append(
            f"certificate violated: max functional {max_value!r} < "
            f"certificate {certificate!r} (S2={s2_val!r}, S1={s1_val!r}, "
            f"excluded_sum={excluded_sum!r})"
        )

    return TheoremReport(
        theorem=config.theorem,
        q=config.q,
        ell=config.ell,
        sigma=config.sigma,
        x=config.x,
        y=config.y,
        excluded=config.excluded,
        s1=s1_val,
        s2=s2_val,
        ratio=ratio,
        bound=bound,
        margin=margin,
        argmax_index=argmax_index,
        max_value=max_value,
        near_ties=near_ties,
        certificate=certificate,
        logderiv_modulus_at_argmax=logderiv_mod,
        oracle_gap=oracle_gap,
        seconds=time.perf_counter() - t0,
        failures=tuple(failures),
    )


# ---------------------------------------------------------------------------
# sweeps over primes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    """One report per ascending prime, plus the trend normalizations."""

    theorem: int
    ell: int
    sigma: float | None
    reports: tuple[TheoremReport, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def normalized_ratio(self, report: TheoremReport) -> float:
        """ratio / (e^(ell gamma) (log X)^ell), the theorem-1 leading scale."""
        return report.ratio / (
            math.exp(self.ell * EULER_GAMMA) * math.log(report.x) ** self.ell
        )

    def trend_rows(self) -> list[dict]:
        rows = []
        for r in self.reports:
            rows.append({
                "q": r.q,
                "normalized": self.normalized_ratio(r) if self.theorem == 1 else None,
                "ratio_over_bound": r.ratio / r.bound if r.bound != 0 else None,
            })
        return rows

    def decade_buckets(self) -> list[tuple[int, int, int, float]]:
        """(lo, hi, count, mean normalized ratio) per factor-of-10 bucket of q."""
        buckets: dict[int, list[float]] = {}
        for r in self.reports:
            buckets.setdefault(int(math.floor(math.log10(r.q))), []).append(
                self.normalized_ratio(r)
            )
        out = []
        for k in sorted(buckets):
            vals = buckets[k]
            out.append((10**k, 10 ** (k + 1), len(vals), math.fsum(vals) / len(vals)))
        return out


def _primes_in_range(lo: int, hi: int) -> list[int]:
    ps = primes_up_to(hi)
    return [int(p) for p in ps[(ps >= lo) & (ps >= 3)]]


def sweep(theorem: int, prime_range: tuple[int, int], ell: int = 1,
          sigma: float | None = None, endpoint_margin: float = 0.01,
          y: int | None = None, jobs: int = 1) -> SweepResult:
    """Run one configuration per prime in [lo, hi] with the default X.

    When ``y`` is not given, each run takes Y = ceil(X), the smallest legal
    cutoff; the theorem-1 trend column then tracks the e^gamma log X scale
    that the ratio approaches from below.
    """
    lo, hi = prime_range
    qs = _primes_in_range(lo, hi)
    if not qs:
        raise ValueError(f"no odd primes in [{lo}, {hi}]")
    configs = []
    for q in qs:
        x = default_x(theorem, q, endpoint_margin, sigma)
        yq = y if y is not None else max(2, int(math.ceil(x)))
        configs.append(ExperimentConfig(
            theorem=theorem, q=q, ell=ell, x=x, y=yq, sigma=sigma,
            endpoint_margin=endpoint_margin,
        ).validated())
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(run_theorem, configs))
    else:
        reports = [run_theorem(c) for c in configs]
    return SweepResult(theorem=theorem, ell=ell, sigma=sigma, reports=tuple(reports))


# ---------------------------------------------------------------------------
# oracle comparison tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OracleComparison:
    """Relative truncation errors |trunc - exact|/|exact| per non-principal
    character and cutoff, with near-zero exact values excluded and listed."""

    q: int
    sigma: float
    y_grid: tuple[int, ...]
    indices: tuple[int, ...]
    rel_errors: np.ndarray  # shape (len(indices), len(y_grid))
    excluded_near_zero: tuple[int, ...]

    def decade_max(self) -> list[float]:
        """Max relative error over characters, one entry per y in the grid."""
        return [float(np.max(self.rel_errors[:, j])) for j in range(len(self.y_grid))]

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "sigma": self.sigma,
            "y_grid": list(self.y_grid),
            "indices": list(self.indices),
            "rel_errors": [list(map(float, row)) for row in self.rel_errors],
            "excluded_near_zero": list(self.excluded_near_zero),
            "decade_max": self.decade_max(),
        }


def oracle_comparison(q: int, sigma: float, y_grid: tuple[int, ...]) -> OracleComparison:
    """Measure the truncation error of L(sigma, chi; Y) against the exact
    oracle, for every non-principal character mod q and every Y in the grid."""
    if q > 499:
        raise ValueError(f"the oracle table is restricted to q <= 499, got {q}")
    if not y_grid:
        raise ValueError("y_grid must be non-empty")
    group = CharacterGroup(q)
    exact = exact_l_all(group, sigma)
    keep, dropped = [], []
    for k in range(1, group.order):
        (keep if abs(exact[k]) >= 1e-8 else dropped).append(k)
    errors = np.empty((len(keep), len(y_grid)), dtype=np.float64)
    for j, y in enumerate(sorted(y_grid)):
        trunc = truncated_l_all(group, sigma, int(y))
        for i, k in enumerate(keep):
            errors[i, j] = abs(trunc[k] - exact[k]) / abs(exact[k])
    return OracleComparison(
        q=q, sigma=sigma, y_grid=tuple(sorted(int(y) for y in y_grid)),
        indices=tuple(keep), rel_errors=errors, excluded_near_zero=tuple(dropped),
    )


# ---------------------------------------------------------------------------
# verification battery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check_orthogonality(qs: list[int]) -> CheckResult:
    worst = 0.0
    for q in qs:
        group = CharacterGroup(q)
        mat = group.values_matrix(np.arange(q, dtype=np.int64))
        gram = mat.T @ np.conj(mat)
        expect = np.zeros((q, q), dtype=np.complex128)
        idx = np.arange(1, q)
        expect[idx, idx] = q - 1
        worst = max(worst, float(np.max(np.abs(gram - expect))) / (q - 1))
    ok = worst <= 1e-9
    return CheckResult("orthogonality-delta", ok, f"worst |error|/phi(q) = {worst:.2e}")


def _check_s1_closed_form() -> CheckResult:
    from .resonator import s1_congruence_oracle  # local to avoid cycle noise

    group = CharacterGroup(5)
    kernel = LinearKernel(3.0)
    direct = s1(group, kernel)
    oracle = s1_congruence_oracle(group, kernel, 3**20)
    closed = 4.0 * (81.0 / 80.0) ** 2 * (820.0 / 729.0)
    ok = abs(direct - closed) < 1e-12 and abs(oracle.value - closed) < 1e-12
    return CheckResult(
        "s1-closed-form", ok,
        f"character sum {direct!r}, congruence oracle {oracle.value!r}, closed form {closed!r}",
    )


def _check_resonance(quick: bool) -> list[CheckResult]:
    qs = [101] if quick else [101, 211]
    ells = [1, 2] if quick else [1, 2, 3]
    sigmas = [0.9] if quick else [0.75, 0.9]
    out = []
    for theorem in (1, 2, 3, 4):
        reports = []
        for q in qs:
            for ell in ells:
                for x in ([20.0] if quick else [20.0, 50.0]):
                    if theorem in (1, 3):
                        cfgs = [ExperimentConfig(theorem, q, ell, x=x, y=1000)]
                    else:
                        cfgs = []
                        for sg in sigmas:
                            if theorem == 4 and ell > max_ell_for_sigma(sg):
                                continue
                            cfgs.append(
                                ExperimentConfig(theorem, q, ell, x=x, y=1000, sigma=sg)
                            )
                    reports.extend(run_theorem(c) for c in cfgs)
        ok = all(r.passed for r in reports)
        worst = min(r.margin for r in reports)
        out.append(CheckResult(
            f"resonance-theorem-{theorem}", ok,
            f"{len(reports)} runs, min margin {worst:.6g}",
        ))
    return out


def _check_oracle() -> list[CheckResult]:
    out = []
    g5 = CharacterGroup(5)
    quad5 = exact_l(g5.character(2), 1.0).value  # index 2 is the quadratic character
    ref5 = 2.0 * math.log((1.0 + math.sqrt(5.0)) / 2.0) / math.sqrt(5.0)
    g3 = CharacterGroup(3)
    quad3 = exact_l(g3.character(1), 1.0).value
    ref3 = math.pi / (3.0 * math.sqrt(3.0))
    ok1 = abs(quad5 - ref5) < 1e-8 and abs(quad3 - ref3) < 1e-8
    out.append(CheckResult(
        "oracle-class-numbers", ok1,
        f"q=5: {quad5.real:.9f} vs {ref5:.9f}; q=3: {quad3.real:.9f} vs {ref3:.9f}",
    ))
    comp = oracle_comparison(5, 1.0, (10**5,))
    worst = comp.decade_max()[0]
    out.append(CheckResult(
        "oracle-truncation-q5", worst < 1e-2, f"max rel error at Y=1e5: {worst:.2e}"
    ))
    return out


def _check_constants() -> CheckResult:
    from .constants import (
        binomial_beta_identity_check,
        joint_l_line_constant,
        joint_l_strip_constant,
        joint_logderiv_line_coefficient,
        joint_logderiv_strip_constant,
    )

    msgs = []
    c1 = joint_l_line_constant(1)
    if not (1.32 <= c1 <= 1.34):
        msgs.append(f"C(1) = {c1} outside [1.32, 1.34]")
    coeff = joint_logderiv_line_coefficient()
    if abs(coeff + 0.659) > 1e-3:
        msgs.append(f"Q coefficient {coeff} not within 1e-3 of -0.659")
    for sg in (0.6, 0.75, 0.9):
        s_val = joint_l_strip_constant(sg, 1)
        h_val = joint_logderiv_strip_constant(sg, 1)
        ref = sg / (1.0 - sg)
        if abs(s_val - ref) > 1e-12 * ref or abs(h_val - ref) > 1e-12 * ref:
            msgs.append(f"S/H mismatch at sigma={sg}")
        for j in range(11):
            _, _, gap = binomial_beta_identity_check(j, sg)
            if gap > 1e-10:
                msgs.append(f"beta identity gap {gap} at j={j}, sigma={sg}")
    return CheckResult("constants-identities", not msgs, "; ".join(msgs) or "all identities hold")


def _check_admissibility() -> CheckResult:
    from .constants import strip_l_inequality_slack, strip_logderiv_inequality_slack

    msgs = []
    for sg in (0.6, 0.75, 0.9):
        rng = strip_l_admissible_range(sg)
        if rng.is_empty:
            msgs.append(f"kappa range empty at sigma={sg}")
            continue
        if strip_l_inequality_slack(rng.midpoint, sg) <= 0:
            msgs.append(f"kappa midpoint fails at sigma={sg}")
        if strip_l_inequality_slack(rng.upper * 1.01, sg) >= 0:
            msgs.append(f"kappa 1.01*upper should fail at sigma={sg}")
        rng2 = strip_logderiv_admissible_range(sg)
        eps = default_strip_epsilon(sg)
        if rng2.is_empty:
            msgs.append(f"eta range empty at sigma={sg}")
            continue
        if strip_logderiv_inequality_slack(rng2.midpoint, sg, eps) <= 0:
            msgs.append(f"eta midpoint fails at sigma={sg}")
        if strip_logderiv_inequality_slack(rng2.upper * 1.01, sg, eps) >= 0:
            msgs.append(f"eta 1.01*upper should fail at sigma={sg}")
    return CheckResult("admissibility-ranges", not msgs, "; ".join(msgs) or "midpoints strict, endpoints sharp")


def _check_mertens() -> CheckResult:
    from .arithmetic import mertens_product

    x = 10**4
    val = mertens_product(x)
    scale = math.exp(EULER_GAMMA) * math.log(x)
    lo = 1.0 - 1.0 / (2.0 * math.log(x) ** 2)
    hi = 1.0 + 1.0 / math.log(x) ** 2
    ok = lo <= val / scale <= hi
    return CheckResult("mertens-band", ok, f"ratio to e^gamma log X = {val / scale:.8f}")


def run_verification(quick: bool = True) -> list[CheckResult]:
    """The named property battery behind the ``verify`` subcommand."""
    qs = [5, 7, 11, 101] if quick else [int(p) for p in primes_up_to(101)][1:]
    checks: list[CheckResult] = []
    checks.append(_check_orthogonality(qs))
    checks.append(_check_s1_closed_form())
    checks.extend(_check_resonance(quick))
    checks.extend(_check_oracle())
    checks.append(_check_constants())
    checks.append(_check_admissibility())
    checks.append(_check_mertens())
    return checks


# ---------------------------------------------------------------------------
# writers
# ---------------------------------------------------------------------------

def write_reports_csv(path: str, reports) -> None:
    """Fixed-column CSV, one row per run (RFC-4180 quoting, header always)."""
    import csv

    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(REPORT_COLUMNS))
        writer.writeheader()
        for report in reports:
            writer.writerow(report.csv_row())


def write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_oracle_csv(path: str, comp: OracleComparison) -> None:
    import csv

    cols = ["index"] + [f"rel_err_Y{y}" for y in comp.y_grid]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(cols)
        for i, k in enumerate(comp.indices):
            writer.writerow([k] + [repr(float(e)) for e in comp.rel_errors[i]])
