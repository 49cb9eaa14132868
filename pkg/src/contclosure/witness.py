"""Floating-point construction of continuous solutions to forcing equations.

Three constructions are supported:

* ``homogeneous``: q_i(z) = |z|^(d - d_i) * phi_i(z / |z|), q_i(0) = 0, with
  phi_i = f * conj(f_i) / sum_k |f_k|^2;
* ``psi``: the cutoff construction for z^r w^s against (z^e, w^e);
* ``phi-probe``: limits of phi_i along parametrized curves into the origin.

All sampling is seeded; a report is a pure function of its inputs and seed.
"""
from __future__ import annotations

import csv
from dataclasses import asdict, dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from .poly import Polynomial

HOMOGENEOUS = "homogeneous"
PSI = "psi"
PHI_PROBE = "phi-probe"


class WitnessPreconditionError(ValueError):
    pass


class ZeroDenominatorError(ArithmeticError):
    pass


def eval_array(f: Polynomial, z: np.ndarray) -> np.ndarray:
    """Evaluate f at each row of the complex array ``z`` (shape (N, m))."""
    out = np.zeros(z.shape[0], dtype=complex)
    for alpha, c in f.items():
        term = np.full(z.shape[0], float(c), dtype=complex)
        for j, e in enumerate(alpha):
            if e:
                term = term * z[:, j] ** e
        out += term
    return out


def polydisc_samples(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    """Uniform samples from the unit polydisc in C^m."""
    radius = np.sqrt(rng.random((n, m)))
    angle = 2 * np.pi * rng.random((n, m))
    return radius * np.exp(1j * angle)


def sphere_samples(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    """Uniform samples from the unit sphere in C^m."""
    g = rng.standard_normal((n, 2 * m))
    z = g[:, :m] + 1j * g[:, m:]
    return z / np.linalg.norm(z, axis=1)[:, None]


@dataclass
class WitnessReport:
    construction: str
    seed: int
    sample_count: int
    max_residual: float
    relative_residual: float
    sphere_radii: List[float] = field(default_factory=list)
    sphere_sups: List[float] = field(default_factory=list)
    decay_ratios: List[float] = field(default_factory=list)
    expected_ratio: Optional[float] = None
    decay_consistent: Optional[bool] = None
    limits: List[dict] = field(default_factory=list)
    verdicts: List[dict] = field(default_factory=list)
    parameters: dict = field(default_factory=dict)
    residuals: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("residuals")
        return out

    def write_csv(self, path) -> None:
        """Per-sample residuals, one row per sample."""
        if self.residuals is None:
            raise ValueError("report holds no per-sample residuals")
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["sample", "residual"])
            for i, r in enumerate(self.residuals):
                w.writerow([i, repr(float(r))])


# homogeneous construction

def _homogeneous_degrees(f: Polynomial, gens: Sequence[Polynomial]):
    if not gens:
        raise WitnessPreconditionError("no generators")
    for g in [f, *gens]:
        if g.is_zero() or not g.is_homogeneous():
            raise WitnessPreconditionError(f"{g.to_str()} is not a nonzero homogeneous polynomial")
    d = f.total_degree()
    degs = [g.total_degree() for g in gens]
    if d <= max(degs):
        raise WitnessPreconditionError(
            f"candidate degree {d} does not exceed the generator degrees {degs}"
        )
    return d, degs


def homogeneous_coefficients(f: Polynomial, gens: Sequence[Polynomial], z: np.ndarray,
                             degrees=None) -> np.ndarray:
    """q_i at the rows of z; shape (n_gens, N).  Raises on a vanishing denominator."""
    if degrees is None:
        d, degs = _homogeneous_degrees(f, gens)
    else:
        d, degs = degrees
    r = np.linalg.norm(z, axis=1)
    nonzero = r > 0
    q = np.zeros((len(gens), z.shape[0]), dtype=complex)
    if not nonzero.any():
        return q
    u = z[nonzero] / r[nonzero, None]
    fu = eval_array(f, u)
    gu = np.array([eval_array(g, u) for g in gens])
    den = np.sum(np.abs(gu) ** 2, axis=0)
    if np.any(den <= 1e-300):
        bad = np.flatnonzero(nonzero)[np.argmin(den)]
        raise ZeroDenominatorError(f"generators vanish simultaneously at sample {bad}")
    for i, di in enumerate(degs):
        q[i, nonzero] = r[nonzero] ** (d - di) * fu * np.conj(gu[i]) / den
    return q


def homogeneous_witness(f: Polynomial, gens: Sequence[Polynomial], samples: int = 1000,
                        seed: int = 0, sphere_points: int = 10_000, levels: int = 10,
                        tolerance: float = 0.1) -> WitnessReport:
    d, degs = _homogeneous_degrees(f, gens)
    m = f.nvars
    rng = np.random.default_rng(seed)
    fixed = np.vstack([np.zeros(m), np.eye(m)]).astype(complex)
    z = np.vstack([fixed, polydisc_samples(rng, samples, m)])
    q = homogeneous_coefficients(f, gens, z, (d, degs))
    fz = eval_array(f, z)
    gz = np.array([eval_array(g, z) for g in gens])
    residual = np.abs(fz - np.sum(q * gz, axis=0))
    scale = max(float(np.max(np.abs(fz))), np.finfo(float).tiny)

    dirs = sphere_samples(rng, sphere_points, m)
    radii = [2.0 ** -k for k in range(levels + 1)]
    sups = []
    for rad in radii:
        qs = homogeneous_coefficients(f, gens, rad * dirs, (d, degs))
        sups.append(float(np.max(np.abs(qs))))
    ratios = [b / a for a, b in zip(sups, sups[1:]) if a > 0]
    expected = 2.0 ** -(d - max(degs))
    return WitnessReport(
        construction=HOMOGENEOUS,
        seed=seed,
        sample_count=int(z.shape[0]),
        max_residual=float(residual.max()),
        relative_residual=float(residual.max() / scale),
        sphere_radii=radii,
        sphere_sups=sups,
        decay_ratios=ratios,
        expected_ratio=expected,
        decay_consistent=bool(all(abs(x - expected) <= tolerance for x in ratios)),
        parameters={"degree": d, "generator_degrees": degs, "sphere_points": sphere_points},
        residuals=residual,
    )


# phi probes

@dataclass(frozen=True)
class Path:
    """A curve t -> (p_1(t), ..., p_m(t)) given by univariate polynomials."""

    name: str
    coords: tuple

    def __call__(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        cols = []
        for p in self.coords:
            cols.append(eval_array(p, t.astype(complex)[:, None]))
        return np.stack(cols, axis=1)


def line_path(name: str, direction: Sequence) -> Path:
    """t -> t * direction."""
    t = Polynomial.variable(0, 1)
    return Path(name, tuple(t * c for c in direction))


def default_paths(m: int) -> List[Path]:
    paths = [line_path(f"axis{j + 1}", [int(i == j) for i in range(m)]) for j in range(m)]
    paths.append(line_path("diagonal", [1] * m))
    paths.append(line_path("skew", list(range(1, m + 1))))
    t = Polynomial.variable(0, 1)
    paths.append(Path("moment", tuple(t ** (j + 1) for j in range(m))))
    return paths


def phi_values(f: Polynomial, gens: Sequence[Polynomial], z: np.ndarray) -> np.ndarray:
    fz = eval_array(f, z)
    gz = np.array([eval_array(g, z) for g in gens])
    den = np.sum(np.abs(gz) ** 2, axis=0)
    if np.any(den == 0):
        raise ZeroDenominatorError("path meets the common zero locus away from t = 0")
    return fz * np.conj(gz) / den


def richardson(values: Sequence[complex], order: int = 3) -> List[complex]:
    """Extrapolated limits at t = 2^-k assuming an expansion in integer powers of t."""
    table = [list(values)]
    for j in range(1, order + 1):
        prev = table[-1]
        fac = 2.0 ** j
        table.append([(fac * b - a) / (fac - 1) for a, b in zip(prev, prev[1:])])
    return table[-1]


def phi_probe(f: Polynomial, gens: Sequence[Polynomial], paths: Sequence[Path] | None = None,
              kmin: int = 4, kmax: int = 24, tolerance: float = 1e-6) -> WitnessReport:
    gens = list(gens)
    if paths is None:
        paths = default_paths(f.nvars)
    ts = np.array([2.0 ** -k for k in range(kmin, kmax + 1)])
    limits = []
    per_function: List[List[dict]] = [[] for _ in gens]
    for path in paths:
        if len(path.coords) != f.nvars:
            raise WitnessPreconditionError(f"path {path.name} has the wrong dimension")
        vals = phi_values(f, gens, path(ts))
        for i in range(len(gens)):
            est = richardson(vals[i])
            converged = bool(np.all(np.isfinite(est[-2:])) and abs(est[-1] - est[-2]) <= tolerance)
            limit = complex(est[-1]) if converged else None
            entry = {
                "function": i,
                "path": path.name,
                "converged": converged,
                "limit": None if limit is None else [limit.real, limit.imag],
                "last_value": [float(vals[i][-1].real), float(vals[i][-1].imag)],
            }
            limits.append(entry)
            per_function[i].append(entry)
    verdicts = []
    for i, entries in enumerate(per_function):
        diverging = [e for e in entries if not e["converged"]]
        if diverging:
            verdicts.append({"function": i, "verdict": "NoLimit",
                             "witness": [diverging[0]["path"], None]})
            continue
        vals = [complex(*e["limit"]) for e in entries]
        lo, hi = 0, 0
        spread = 0.0
        for a in range(len(vals)):
            for b in range(a + 1, len(vals)):
                if abs(vals[a] - vals[b]) > spread:
                    spread, lo, hi = abs(vals[a] - vals[b]), a, b
        if spread > tolerance:
            verdicts.append({"function": i, "verdict": "NoLimit",
                             "witness": [entries[lo]["path"], entries[hi]["path"]],
                             "values": [[vals[lo].real, vals[lo].imag], [vals[hi].real, vals[hi].imag]]})
        else:
            mean = sum(vals) / len(vals)
            verdicts.append({"function": i, "verdict": "ConsistentLimit",
                             "value": [mean.real, mean.imag]})
    return WitnessReport(
        construction=PHI_PROBE,
        seed=0,
        sample_count=len(ts) * len(paths),
        max_residual=0.0,
        relative_residual=0.0,
        limits=limits,
        verdicts=verdicts,
        parameters={"kmin": kmin, "kmax": kmax, "tolerance": tolerance,
                    "paths": [p.name for p in paths]},
    )


# psi construction

def linear_cutoff(rho: np.ndarray) -> np.ndarray:
    """0 on [0, 1/2], 1 on [1, inf), linear in between."""
    return np.clip(2 * rho - 1, 0.0, 1.0)


def smooth_cutoff(rho: np.ndarray) -> np.ndarray:
    """0 on [0, 1/4], 1 on [1, inf), smoothstep in between."""
    x = np.clip((rho - 0.25) / 0.75, 0.0, 1.0)
    return x * x * (3 - 2 * x)


CUTOFFS = {"linear": linear_cutoff, "smooth": smooth_cutoff}


def _check_psi_parameters(e: int, r: int, s: int) -> None:
    if min(e, r, s) < 1:
        raise WitnessPreconditionError("e, r, s must be positive")
    if not (r < e and s < e and r + s > e):
        raise WitnessPreconditionError(f"need r, s < e and r + s > e, got e={e}, r={r}, s={s}")


def psi_function(e: int, s: int, cutoff: Callable = linear_cutoff) -> Callable:
    """psi(v) = chi(|v|) (1 - v^s) / v^e, continuous on the Riemann sphere minus infinity."""

    def psi(v):
        v = np.asarray(v, dtype=complex)
        out = np.zeros_like(v)
        nz = v != 0
        out[nz] = cutoff(np.abs(v[nz])) * (1 - v[nz] ** s) / v[nz] ** e
        return out

    return psi


def psi_coefficients(e: int, r: int, s: int, z: np.ndarray, w: np.ndarray,
                     cutoff: Callable = linear_cutoff):
    """(q1, q2) with z^e q1 + w^e q2 + z^r w^s == 0."""
    _check_psi_parameters(e, r, s)
    psi = psi_function(e, s, cutoff)
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    q1 = np.zeros_like(z)
    q2 = np.zeros_like(z)
    nz = z != 0
    v = w[nz] / z[nz]
    lead = z[nz] ** (r + s - e)
    pv = psi(v)
    q2[nz] = lead * pv
    q1[nz] = -lead * (v ** e * pv + v ** s)
    return q1, q2


def psi_witness(e: int, r: int, s: int, samples: int = 1000, seed: int = 0,
                cutoff: str = "linear") -> WitnessReport:
    _check_psi_parameters(e, r, s)
    chi = CUTOFFS[cutoff]
    rng = np.random.default_rng(seed)
    pts = polydisc_samples(rng, samples, 2)
    n_axis = max(1, samples // 10)
    on_axis = np.zeros((n_axis, 2), dtype=complex)
    on_axis[:, 1] = polydisc_samples(rng, n_axis, 1)[:, 0]
    pts = np.vstack([np.zeros((1, 2)), on_axis, pts])
    z, w = pts[:, 0], pts[:, 1]
    q1, q2 = psi_coefficients(e, r, s, z, w, chi)
    residual = np.abs(z ** e * q1 + w ** e * q2 + z ** r * w ** s)
    scale = max(float(np.max(np.abs(z ** r * w ** s))), np.finfo(float).tiny)
    zero_z = z == 0
    return WitnessReport(
        construction=PSI,
        seed=seed,
        sample_count=int(len(z)),
        max_residual=float(residual.max()),
        relative_residual=float(residual.max() / scale),
        parameters={
            "e": e, "r": r, "s": s, "cutoff": cutoff,
            "z_zero_samples": int(zero_z.sum()),
            "max_coefficient_at_z_zero": float(max(np.abs(q1[zero_z]).max(), np.abs(q2[zero_z]).max())),
            "sup_coefficient": float(max(np.abs(q1).max(), np.abs(q2).max())),
        },
        residuals=residual,
    )
