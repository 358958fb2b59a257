"""Population simulation and the bias/coverage evaluation harness.

Populations are built from independent biallelic loci in Hardy-Weinberg
equilibrium.  Penetrance is multiplicative in per-locus effects
(additive, dominant or recessive exposure codings) with optional
pairwise interaction multipliers, clipped to [0, 1]; the baseline is
calibrated so the implied prevalence hits ``target_rho`` exactly, and
an optional second calibration rescales the penetrance spread around
rho until the heritability

    h2 = Var(penetrance) / (rho (1 - rho))

matches a target.

The harness mimics external validation: each replicate draws a training
case-control sample (which fixes the genotype ordering), then an
independent test sample evaluated in that order.  This is what makes
the competitor indices interesting: the test curve is non-monotone, a
plug-in R or AE inflates under noise, while the pairwise structure of U
absorbs most of it.
"""

from __future__ import annotations

import enum
import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from importlib import resources

import numpy as np
import yaml

from .errors import NumericError, ValidationError
from .isotonic import pava
from .risk_model import (
    CaseControlCounts,
    GenotypeId,
    RiskTable,
    build_risk_table,
)
from .summary_indices import (
    average_entropy_statistic,
    clipped_band_masses,
    partial_u_statistic,
    r_square_statistic,
    total_gain_statistic,
    u_statistic,
)

__all__ = [
    "Mode",
    "SnpSpec",
    "Interaction",
    "DiseaseModel",
    "PopulationSpec",
    "Population",
    "EvalReport",
    "genotype_matrix",
    "genotype_probabilities",
    "penetrance_model",
    "heritability",
    "calibrate_heritability",
    "build_population",
    "sample_case_control",
    "run_bias_coverage",
    "load_model_spec",
    "preset",
    "simulation_presets",
    "worker_count",
]

INDEX_TOKENS = ("u", "ustd", "upartial", "upartialstd", "r", "rstd", "tg", "ae")

_DISPLAY = {
    "u": "U",
    "ustd": "U_std",
    "upartial": "U_partial",
    "upartialstd": "U_partial_std",
    "r": "R",
    "rstd": "R_std",
    "tg": "TG",
    "ae": "AE",
}


class Mode(enum.Enum):
    """Exposure coding of minor-allele count c in {0, 1, 2}."""

    ADDITIVE = "additive"  # x = c
    DOMINANT = "dominant"  # x = 1 if c >= 1
    RECESSIVE = "recessive"  # x = 1 if c == 2


@dataclass(frozen=True)
class SnpSpec:
    """One locus: minor-allele frequency, exposure mode, relative risk."""

    maf: float
    mode: Mode = Mode.ADDITIVE
    rr: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 < self.maf < 1.0:
            raise ValidationError(f"maf must lie in (0, 1), got {self.maf}")
        if self.rr <= 0:
            raise ValidationError(f"relative risk must be positive, got {self.rr}")


@dataclass(frozen=True)
class Interaction:
    """Pairwise interaction multiplier rr ** (x_a * x_b)."""

    a: int
    b: int
    rr: float

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValidationError("interaction must involve two distinct loci")
        if self.rr <= 0:
            raise ValidationError(f"relative risk must be positive, got {self.rr}")


@dataclass(frozen=True)
class DiseaseModel:
    """Penetrance over the full multi-locus genotype grid.

    ``penetrance[g]`` is P(D | g) for genotype g in canonical order
    (itertools.product over loci, last locus fastest).
    """

    snps: tuple[SnpSpec, ...]
    interactions: tuple[Interaction, ...]
    penetrance: np.ndarray
    target_rho: float
    target_h2: float | None = None

    def __post_init__(self) -> None:
        pen = np.array(self.penetrance, dtype=float)
        pen.setflags(write=False)
        object.__setattr__(self, "penetrance", pen)
        if not self.snps:
            raise ValidationError("model needs at least one locus")
        if pen.shape != (3 ** len(self.snps),):
            raise ValidationError("penetrance length must be 3 ** n_loci")
        if np.any(pen < 0) or np.any(pen > 1):
            raise ValidationError("penetrance values must lie in [0, 1]")
        if not 0.0 < self.target_rho < 1.0:
            raise ValidationError(f"target_rho must lie in (0, 1), got {self.target_rho}")
        for inter in self.interactions:
            if not (0 <= inter.a < len(self.snps) and 0 <= inter.b < len(self.snps)):
                raise ValidationError("interaction indexes a locus outside the model")

    @property
    def n_genotypes(self) -> int:
        return self.penetrance.size

    @property
    def genotype_labels(self) -> tuple[str, ...]:
        grid = genotype_matrix(len(self.snps))
        return tuple("/".join(str(c) for c in row) for row in grid)


def genotype_matrix(n_loci: int) -> np.ndarray:
    """All 3**m minor-allele-count vectors, canonical order, shape (G, m)."""
    return np.array(list(itertools.product((0, 1, 2), repeat=n_loci)), dtype=np.int64)


def genotype_probabilities(snps) -> np.ndarray:
    """Multi-locus genotype probabilities under HWE and independent loci."""
    snps = tuple(snps)
    grid = genotype_matrix(len(snps))
    probs = np.ones(grid.shape[0])
    for k, snp in enumerate(snps):
        f = snp.maf
        per_count = np.array([(1 - f) ** 2, 2 * f * (1 - f), f**2])
        probs *= per_count[grid[:, k]]
    return probs


def _exposures(snps, grid: np.ndarray) -> np.ndarray:
    x = np.zeros_like(grid, dtype=float)
    for k, snp in enumerate(snps):
        c = grid[:, k]
        if snp.mode is Mode.ADDITIVE:
            x[:, k] = c
        elif snp.mode is Mode.DOMINANT:
            x[:, k] = (c >= 1).astype(float)
        else:
            x[:, k] = (c == 2).astype(float)
    return x


def penetrance_model(
    snps, target_rho: float, interactions=(),
) -> DiseaseModel:
    """Build a multiplicative penetrance model calibrated to a prevalence.

    The relative risk score of genotype g is
    prod_k rr_k ** x_k(g) * prod_(a,b) rr_ab ** (x_a x_b); penetrance is
    baseline * score clipped to [0, 1], with the baseline solved (by
    bisection when clipping binds) so that the implied prevalence equals
    ``target_rho``.

    Returns
    -------
    DiseaseModel
    """
    snps = tuple(snps if isinstance(snps, (list, tuple)) else [snps])
    interactions = tuple(interactions)
    grid = genotype_matrix(len(snps))
    x = _exposures(snps, grid)
    log_score = x @ np.log([snp.rr for snp in snps])
    for inter in interactions:
        log_score = log_score + np.log(inter.rr) * x[:, inter.a] * x[:, inter.b]
    score = np.exp(log_score)
    probs = genotype_probabilities(snps)

    mean_score = float(probs @ score)
    baseline = target_rho / mean_score
    if np.max(baseline * score) > 1.0:
        # clipping binds: prevalence is monotone in the baseline, bisect
        lo, hi = 0.0, baseline
        while float(probs @ np.clip(hi * score, 0.0, 1.0)) < target_rho:
            hi *= 2.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if float(probs @ np.clip(mid * score, 0.0, 1.0)) < target_rho:
                lo = mid
            else:
                hi = mid
        baseline = hi
    pen = np.clip(baseline * score, 0.0, 1.0)
    return DiseaseModel(
        snps=snps,
        interactions=interactions,
        penetrance=pen,
        target_rho=float(target_rho),
    )


def heritability(model: DiseaseModel) -> float:
    """Var(penetrance) / (rho (1 - rho)) over the genotype distribution."""
    probs = genotype_probabilities(model.snps)
    rho = float(probs @ model.penetrance)
    var = float(probs @ (model.penetrance - rho) ** 2)
    return var / (rho * (1.0 - rho))


def _recentred(pen0: np.ndarray, probs: np.ndarray, rho: float, s: float) -> np.ndarray:
    """Penetrance spread scaled by s around rho, clipped, mean pinned to rho."""
    base = rho + s * (pen0 - rho)

    def mean_at(delta: float) -> float:
        return float(probs @ np.clip(base + delta, 0.0, 1.0))

    lo, hi = -1.0 - abs(s), 1.0 + abs(s)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mean_at(mid) < rho:
            lo = mid
        else:
            hi = mid
    return np.clip(base + 0.5 * (lo + hi), 0.0, 1.0)


def calibrate_heritability(model: DiseaseModel, target_h2: float) -> DiseaseModel:
    """Rescale the penetrance spread until the heritability hits a target.

    Applies pen -> clip(rho + s (pen - rho)) with a recentring shift
    that keeps the implied prevalence at rho, and bisects on s.  The
    shape of the risk surface is preserved; only its amplitude moves.

    Raises
    ------
    NumericError
        If the target exceeds what clipping at [0, 1] allows.
    """
    if target_h2 < 0:
        raise ValidationError(f"target heritability must be nonnegative, got {target_h2}")
    probs = genotype_probabilities(model.snps)
    rho = model.target_rho
    pen0 = model.penetrance
    if float(probs @ (pen0 - rho) ** 2) == 0.0 and target_h2 > 0:
        raise NumericError("flat penetrance cannot reach a positive heritability")

    def h2_at(s: float) -> float:
        pen = _recentred(pen0, probs, rho, s)
        mean = float(probs @ pen)
        return float(probs @ (pen - mean) ** 2) / (mean * (1.0 - mean))

    lo, hi = 0.0, 1.0
    while h2_at(hi) < target_h2:
        if h2_at(2.0 * hi) - h2_at(hi) < 1e-12:
            raise NumericError(
                f"heritability target {target_h2} unreachable; "
                f"clipping saturates near {h2_at(hi):.6g}"
            )
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if h2_at(mid) < target_h2:
            lo = mid
        else:
            hi = mid
    s = 0.5 * (lo + hi)
    return replace(model, penetrance=_recentred(pen0, probs, rho, s), target_h2=float(target_h2))


@dataclass(frozen=True)
class PopulationSpec:
    """A disease model, a cohort size, and the genotype-frequency law."""

    model: DiseaseModel
    size: int = 1_000_000
    hwe: bool = True
    name: str | None = None
    version: int | None = None

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValidationError("population size must be at least 1")
        if not self.hwe:
            raise ValidationError("only HWE genotype frequencies are supported")


@dataclass(frozen=True)
class Population:
    """A realised population with its true risk table and sampling laws.

    ``counts`` are per-genotype cohort counts in table order: exact
    expected counts (fractional) by default, or one multinomial draw.
    ``cond_case`` and ``cond_control`` are P(g | D) and P(g | not D) in
    table order, the laws case-control sampling draws from.
    """

    spec: PopulationSpec
    table: RiskTable
    counts: np.ndarray
    cond_case: np.ndarray
    cond_control: np.ndarray

    @property
    def rho(self) -> float:
        return self.table.rho

    @property
    def name(self) -> str:
        return self.spec.name or "population"


def build_population(
    spec: PopulationSpec, realize: str = "expected", seed: int | None = None
) -> Population:
    """Realise a population and its true (sorted) risk table.

    Parameters
    ----------
    spec : PopulationSpec
    realize : {"expected", "multinomial"}
        "expected" uses exact expected genotype counts (deterministic;
        masses equal the HWE probabilities).  "multinomial" draws one
        cohort of ``spec.size`` subjects with the given seed.
    seed : int, optional
        Only used for the multinomial realisation.

    Returns
    -------
    Population
    """
    model = spec.model
    probs = genotype_probabilities(model.snps)
    labels = model.genotype_labels
    if realize == "expected":
        counts = probs * spec.size
    elif realize == "multinomial":
        rng = np.random.default_rng(seed)
        counts = rng.multinomial(spec.size, probs).astype(float)
    else:
        raise ValidationError(f"realize must be 'expected' or 'multinomial', got {realize!r}")
    masses = counts / spec.size
    keep = masses > 0
    masses = masses[keep]
    pen = model.penetrance[keep]
    genotypes = tuple(
        GenotypeId(i, labels[i]) for i in range(model.n_genotypes) if keep[i]
    )
    rho = float(masses @ pen)
    if not 0.0 < rho < 1.0:
        raise NumericError(f"realised prevalence {rho} is degenerate")
    table = build_risk_table(
        masses * pen / rho,
        masses * (1.0 - pen) / (1.0 - rho),
        rho,
        genotypes=genotypes,
    )
    order = list(table.ordering)
    return Population(
        spec=spec,
        table=table,
        counts=counts[keep][order],
        cond_case=table.p * table.r / rho,
        cond_control=table.p * (1.0 - table.r) / (1.0 - rho),
    )


def sample_case_control(
    population: Population, n_cases: int, n_controls: int, seed=None
) -> CaseControlCounts:
    """Draw genotype counts for a case-control study from the population.

    Cases are multinomial over P(g | D), controls over P(g | not D),
    independently.  ``seed`` may be an int or a numpy Generator.
    """
    if n_cases < 1 or n_controls < 1:
        raise ValidationError("need at least one case and one control")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    case = rng.multinomial(n_cases, population.cond_case)
    control = rng.multinomial(n_controls, population.cond_control)
    return CaseControlCounts(
        genotypes=population.table.genotypes,
        n_case=case,
        n_control=control,
        rho=population.rho,
    )


@dataclass(frozen=True)
class EvalReport:
    """Bias and coverage of one index on one population."""

    model: str
    index_name: str
    true_value: float
    mean: float
    sd: float
    pct_bias: float
    pct_coverage: float
    n_replicates: int

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "index": self.index_name,
            "true_value": self.true_value,
            "mean": self.mean,
            "sd": self.sd,
            "pct_bias": self.pct_bias,
            "pct_coverage": self.pct_coverage,
            "n_replicates": self.n_replicates,
        }


def worker_count(requested: int | None = None) -> int:
    """Worker processes to use: argument, else PREDICTU_THREADS, else 1."""
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("PREDICTU_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ValidationError(f"PREDICTU_THREADS must be an integer, got {env!r}") from exc
    return 1


def _plugin_arrays(case, control, rho: float) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise plug-in masses and risks; zero-count cells keep zero mass."""
    case = np.asarray(case, dtype=float)
    control = np.asarray(control, dtype=float)
    a = case / case.sum(axis=-1, keepdims=True)
    b = control / control.sum(axis=-1, keepdims=True)
    p = a * rho + b * (1.0 - rho)
    r = np.divide(a * rho, p, out=np.zeros_like(p), where=p > 0)
    return p, r


def _index_values(p, r, rho: float, tokens, band) -> dict[str, np.ndarray]:
    """Each requested index evaluated row-wise on stacked curves."""
    out: dict[str, np.ndarray] = {}
    denom = 2.0 * rho * (1.0 - rho)
    for token in tokens:
        if token == "u":
            out[token] = np.atleast_1d(u_statistic(p, r))
        elif token == "ustd":
            out[token] = np.atleast_1d(u_statistic(p, r)) / denom
        elif token == "upartial":
            out[token] = np.atleast_1d(partial_u_statistic(p, r, *band))
        elif token == "upartialstd":
            value = np.atleast_1d(partial_u_statistic(p, r, *band))
            rho_pt = (clipped_band_masses(p, *band) * np.broadcast_to(r, np.shape(p))).sum(
                axis=-1
            )
            d = 2.0 * rho_pt * (1.0 - rho_pt)
            out[token] = np.divide(value, d, out=np.full_like(value, np.nan), where=d > 0)
        elif token == "r":
            out[token] = np.atleast_1d(r_square_statistic(p, r))
        elif token == "rstd":
            out[token] = np.atleast_1d(r_square_statistic(p, r)) / (rho * (1.0 - rho))
        elif token == "tg":
            out[token] = np.atleast_1d(total_gain_statistic(p, r))
        elif token == "ae":
            out[token] = np.atleast_1d(average_entropy_statistic(p, r))
        else:
            raise ValidationError(f"unknown index token {token!r}")
    return out


def _refit_rows(p: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Isotonic refit of each row's positive-mass risks, masses as weights."""
    out = np.array(r, dtype=float, copy=True)
    for i in range(p.shape[0]):
        mask = p[i] > 0
        if mask.sum() > 1:
            out[i, mask] = pava(r[i, mask], p[i, mask]).fitted
    return out


def _true_values(population: Population, tokens, band) -> dict[str, float]:
    p, r = population.table.p, population.table.r
    values = _index_values(p, r, population.rho, tokens, band)
    return {token: float(v[0]) for token, v in values.items()}


def _replicate_chunk(payload) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate a contiguous block of replicates; values and coverage bits."""
    (
        population,
        tokens,
        band,
        n_cases,
        n_controls,
        n_train_cases,
        n_train_controls,
        isotonic,
        n_bootstrap,
        level,
        truth,
        seed,
        model_idx,
        rep_lo,
        rep_hi,
    ) = payload
    rho = population.rho
    n_tokens = len(tokens)
    values = np.empty((rep_hi - rep_lo, n_tokens))
    covered = np.zeros((rep_hi - rep_lo, n_tokens), dtype=bool)
    tail = 100.0 * (1.0 - level) / 2.0

    for row, k in enumerate(range(rep_lo, rep_hi)):
        rng_train = np.random.default_rng([seed, model_idx, k, 0])
        rng_test = np.random.default_rng([seed, model_idx, k, 1])
        rng_boot = np.random.default_rng([seed, model_idx, k, 2])

        case_t = rng_train.multinomial(n_train_cases, population.cond_case)
        ctrl_t = rng_train.multinomial(n_train_controls, population.cond_control)
        case_s = rng_test.multinomial(n_cases, population.cond_case)
        ctrl_s = rng_test.multinomial(n_controls, population.cond_control)

        # trained order: train-observed genotypes by estimated train risk,
        # then the rest by estimated test risk (ties keep table position)
        _, r_train = _plugin_arrays(case_t, ctrl_t, rho)
        _, r_test_all = _plugin_arrays(case_s, ctrl_s, rho)
        seen = (case_t + ctrl_t) > 0
        seen_idx = np.flatnonzero(seen)
        unseen_idx = np.flatnonzero(~seen)
        order = np.concatenate(
            [
                seen_idx[np.argsort(r_train[seen_idx], kind="stable")],
                unseen_idx[np.argsort(r_test_all[unseen_idx], kind="stable")],
            ]
        ).astype(np.int64)

        case_e = case_s[order]
        ctrl_e = ctrl_s[order]
        p_hat, r_hat = _plugin_arrays(case_e[None, :], ctrl_e[None, :], rho)
        boot_case = rng_boot.multinomial(n_cases, case_e / n_cases, size=n_bootstrap)
        boot_ctrl = rng_boot.multinomial(n_controls, ctrl_e / n_controls, size=n_bootstrap)
        p_boot, r_boot = _plugin_arrays(boot_case, boot_ctrl, rho)
        if isotonic:
            r_hat = _refit_rows(p_hat, r_hat)
            r_boot = _refit_rows(p_boot, r_boot)

        point = _index_values(p_hat, r_hat, rho, tokens, band)
        boot = _index_values(p_boot, r_boot, rho, tokens, band)
        for t, token in enumerate(tokens):
            values[row, t] = point[token][0]
            reps = boot[token]
            reps = reps[np.isfinite(reps)]
            if reps.size:
                lo_q, hi_q = np.percentile(reps, [tail, 100.0 - tail])
                covered[row, t] = lo_q <= truth[token] <= hi_q
    return values, covered


def run_bias_coverage(
    populations,
    indices=("ustd", "r", "tg", "ae"),
    n_replicates: int = 300,
    n_cases: int = 1000,
    n_controls: int = 1000,
    isotonic: bool = False,
    seed: int = 0,
    band: tuple[float, float] | None = None,
    n_bootstrap: int = 400,
    level: float = 0.95,
    n_train_cases: int | None = None,
    n_train_controls: int | None = None,
    workers: int | None = None,
) -> list[EvalReport]:
    """Percent bias and CI coverage of summary indices across populations.

    Each replicate draws an independent training sample (fixing the
    genotype evaluation order) and test sample, evaluates the requested
    indices on the test curve in the trained order (optionally after an
    isotonic refit), and checks whether a percentile bootstrap interval
    covers the population truth.

    Replicate streams are derived from (seed, population index,
    replicate index), so results do not depend on ``workers``.

    Parameters
    ----------
    populations : sequence of Population or PopulationSpec
    indices : sequence of str
        Tokens among u, ustd, upartial, upartialstd, r, rstd, tg, ae.
    band : (float, float), required with partial tokens
    workers : int, optional
        Process count; defaults to PREDICTU_THREADS, else 1.

    Returns
    -------
    list of EvalReport, one per (population, index).
    """
    tokens = tuple(indices)
    for token in tokens:
        if token not in INDEX_TOKENS:
            raise ValidationError(f"unknown index token {token!r}")
    if any(t.startswith("upartial") for t in tokens):
        if band is None:
            raise ValidationError("partial indices require a band")
        q0, q1 = band
        if not (0.0 <= q0 < q1 <= 1.0):
            raise ValidationError(f"band must satisfy 0 <= q0 < q1 <= 1, got {band}")
    if n_replicates < 1:
        raise ValidationError("need at least one replicate")
    n_train_cases = n_train_cases or n_cases
    n_train_controls = n_train_controls or n_controls
    n_workers = worker_count(workers)

    reports: list[EvalReport] = []
    for model_idx, pop in enumerate(populations):
        population = build_population(pop) if isinstance(pop, PopulationSpec) else pop
        truth = _true_values(population, tokens, band)
        bounds = np.linspace(0, n_replicates, min(n_workers, n_replicates) + 1).astype(int)
        payloads = [
            (
                population,
                tokens,
                band,
                n_cases,
                n_controls,
                n_train_cases,
                n_train_controls,
                isotonic,
                n_bootstrap,
                level,
                truth,
                seed,
                model_idx,
                int(lo),
                int(hi),
            )
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if hi > lo
        ]
        if len(payloads) > 1:
            with ProcessPoolExecutor(max_workers=len(payloads)) as pool:
                parts = list(pool.map(_replicate_chunk, payloads))
        else:
            parts = [_replicate_chunk(payloads[0])]
        values = np.concatenate([part[0] for part in parts], axis=0)
        covered = np.concatenate([part[1] for part in parts], axis=0)

        for t, token in enumerate(tokens):
            col = values[:, t]
            mean = float(col.mean())
            sd = float(col.std(ddof=1)) if n_replicates > 1 else 0.0
            true = truth[token]
            bias = 100.0 * abs(mean - true) / abs(true) if true != 0 else float("nan")
            reports.append(
                EvalReport(
                    model=population.name,
                    index_name=_DISPLAY[token],
                    true_value=true,
                    mean=mean,
                    sd=sd,
                    pct_bias=bias,
                    pct_coverage=100.0 * float(covered[:, t].mean()),
                    n_replicates=n_replicates,
                )
            )
    return reports


def _spec_from_mapping(doc: dict, name: str | None = None) -> PopulationSpec:
    try:
        snps = tuple(
            SnpSpec(maf=float(s["maf"]), mode=Mode(s.get("mode", "additive")), rr=float(s.get("rr", 1.0)))
            for s in doc["snps"]
        )
        interactions = tuple(
            Interaction(a=int(i["pair"][0]), b=int(i["pair"][1]), rr=float(i["rr"]))
            for i in doc.get("interactions", [])
        )
        target_rho = float(doc["target_rho"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed model specification: {exc}") from exc
    model = penetrance_model(snps, target_rho, interactions)
    target_h2 = doc.get("target_h2")
    if target_h2 is not None:
        model = calibrate_heritability(model, float(target_h2))
    return PopulationSpec(
        model=model,
        size=int(doc.get("population_size", 1_000_000)),
        name=doc.get("name", name),
        version=doc.get("version"),
    )


def load_model_spec(path) -> PopulationSpec:
    """Read a population specification from a YAML model file.

    Expected keys: ``snps`` (list of {maf, mode, rr}), optional
    ``interactions`` (list of {pair: [a, b], rr}), ``target_rho``,
    optional ``target_h2``, ``population_size``, ``name``, ``version``.
    """
    with open(path, "r", encoding="utf-8") as fh:
        doc = yaml.safe_load(fh)
    if not isinstance(doc, dict):
        raise ValidationError(f"model file {path} does not contain a mapping")
    return _spec_from_mapping(doc, name=os.path.splitext(os.path.basename(str(path)))[0])


def _preset_dir():
    return resources.files("predictu").joinpath("presets")


def preset(name: str) -> PopulationSpec:
    """Load one shipped preset population by name."""
    ref = _preset_dir().joinpath(f"{name}.yaml")
    if not ref.is_file():
        available = ", ".join(sorted(p.name[:-5] for p in _preset_dir().iterdir()))
        raise ValidationError(f"unknown preset {name!r}; available: {available}")
    doc = yaml.safe_load(ref.read_text(encoding="utf-8"))
    return _spec_from_mapping(doc, name=name)


def simulation_presets() -> list[PopulationSpec]:
    """All shipped preset populations, sorted by name."""
    names = sorted(p.name[:-5] for p in _preset_dir().iterdir() if p.name.endswith(".yaml"))
    return [preset(name) for name in names]
