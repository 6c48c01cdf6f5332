"""Two-qubit state types, channel constructors and seeded samplers.

Sampling is counter-based: every record index gets its own Philox stream
keyed by (seed, index), with a domain tag in the counter so state draws,
Haar unitaries and sweep parameters never share a stream.  Record i is
therefore reproducible without generating records 0..i-1, and identical
configs give bit-identical sequences regardless of call order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ChannelIncomplete,
    IndexOutOfRange,
    NotHermitian,
    NotNormalized,
    NotPSD,
    ParameterOutOfRange,
    TraceNotOne,
    ValidationError,
)

HERM_TOL = 1e-10
TRACE_TOL = 1e-10
EIG_TOL = 1e-10
NORM_TOL = 1e-12
KRAUS_TOL = 1e-12

DOMAIN_STATE = 1
DOMAIN_UNITARY = 2
DOMAIN_SWEEP = 3

MEASURES = ("ginibre", "haar-pure")
MAX_SEED = 2**64


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PureState:
    """Normalized two-qubit state vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=np.complex128)
        if a.shape != (4,):
            raise ValidationError(f"amplitudes must have shape (4,), got {a.shape}")
        if not np.isfinite(a.view(np.float64)).all():
            raise ValidationError("amplitudes contain non-finite entries")
        norm = float(np.sqrt((a * a.conj()).real.sum()))
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalized(f"state vector norm deviates from 1 by {abs(norm - 1.0):.3e}")
        object.__setattr__(self, "amplitudes", _frozen(a))


@dataclass(frozen=True)
class DensityMatrix:
    """Validated 4x4 density matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.shape != (4, 4):
            raise ValidationError(f"matrix must have shape (4, 4), got {m.shape}")
        if not np.isfinite(m.view(np.float64)).all():
            raise ValidationError("matrix contains non-finite entries")
        dev = float(np.abs(m - m.conj().T).max())
        if dev > HERM_TOL:
            raise NotHermitian(f"matrix is not Hermitian (max deviation {dev:.3e})")
        tr = m.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise TraceNotOne(f"trace deviates from 1 by {abs(tr - 1.0):.3e}")
        wmin = float(np.linalg.eigvalsh((m + m.conj().T) / 2.0)[0])
        if wmin < -EIG_TOL:
            raise NotPSD(f"matrix is not positive semidefinite (min eigenvalue {wmin:.3e})")
        object.__setattr__(self, "matrix", _frozen(m))


@dataclass(frozen=True)
class KrausChannel:
    """Single-qubit channel given by Kraus operators, applied to one factor."""

    operators: tuple
    target: str = "A"
    eta: float = 0.0

    def __post_init__(self):
        if self.target not in ("A", "B"):
            raise ValidationError(f"target must be 'A' or 'B', got {self.target!r}")
        ops = tuple(np.asarray(k, dtype=np.complex128) for k in self.operators)
        if not ops or any(k.shape != (2, 2) for k in ops):
            raise ValidationError("operators must be a non-empty tuple of 2x2 matrices")
        total = sum(k.conj().T @ k for k in ops)
        dev = float(np.abs(total - np.eye(2)).max())
        if dev > KRAUS_TOL:
            raise ChannelIncomplete(f"Kraus operators violate completeness by {dev:.3e}")
        object.__setattr__(self, "operators", tuple(_frozen(k) for k in ops))


@dataclass(frozen=True)
class SamplerConfig:
    """Deterministic sampling plan: measure, rank policy, seed, count."""

    measure: str = "ginibre"
    ranks: int | str = "uniform"
    seed: int = 0
    count: int = 0

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise ParameterOutOfRange(f"measure must be one of {MEASURES}, got {self.measure!r}")
        if self.ranks != "uniform" and self.ranks not in (1, 2, 3, 4):
            raise ParameterOutOfRange(f"ranks must be 1..4 or 'uniform', got {self.ranks!r}")
        if not 0 <= int(self.seed) < MAX_SEED:
            raise ParameterOutOfRange(f"seed must be a uint64, got {self.seed}")
        if int(self.count) < 0:
            raise ParameterOutOfRange(f"count must be non-negative, got {self.count}")


def bell_like(theta: float) -> PureState:
    """cos(theta)|00> + sin(theta)|11>, theta strictly inside (0, pi/2)."""
    if not 0.0 < theta < np.pi / 2.0:
        raise ParameterOutOfRange(f"theta must lie strictly inside (0, pi/2), got {theta}")
    a = np.zeros(4, np.complex128)
    a[0] = np.cos(theta)
    a[3] = np.sin(theta)
    return PureState(a)


def density_from_pure(psi: PureState) -> DensityMatrix:
    a = psi.amplitudes
    return DensityMatrix(np.outer(a, a.conj()))


def werner_like(p: float, phi: PureState) -> DensityMatrix:
    """p |phi><phi| + (1 - p) I/4."""
    if not 0.0 <= p <= 1.0:
        raise ParameterOutOfRange(f"p must lie in [0, 1], got {p}")
    a = phi.amplitudes
    return DensityMatrix(p * np.outer(a, a.conj()) + (1.0 - p) * np.eye(4) / 4.0)


def make_ad_channel(eta: float, target: str = "A") -> KrausChannel:
    """Amplitude damping: K0 = diag(1, sqrt(1-eta)), K1 = sqrt(eta)|0><1|."""
    if not 0.0 <= eta <= 1.0:
        raise ParameterOutOfRange(f"eta must lie in [0, 1], got {eta}")
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - eta)]], np.complex128)
    k1 = np.array([[0.0, np.sqrt(eta)], [0.0, 0.0]], np.complex128)
    return KrausChannel((k0, k1), target=target, eta=eta)


def make_pd_channel(eta: float, target: str = "A") -> KrausChannel:
    """Phase damping: K0 = diag(1, sqrt(1-eta)), K1 = sqrt(eta)|1><1|."""
    if not 0.0 <= eta <= 1.0:
        raise ParameterOutOfRange(f"eta must lie in [0, 1], got {eta}")
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - eta)]], np.complex128)
    k1 = np.array([[0.0, 0.0], [0.0, np.sqrt(eta)]], np.complex128)
    return KrausChannel((k0, k1), target=target, eta=eta)


def apply_channel(rho: DensityMatrix, channel: KrausChannel) -> DensityMatrix:
    m = rho.matrix
    eye = np.eye(2, dtype=np.complex128)
    out = np.zeros((4, 4), np.complex128)
    for k in channel.operators:
        op = np.kron(k, eye) if channel.target == "A" else np.kron(eye, k)
        out += op @ m @ op.conj().T
    return DensityMatrix(out)


def _rng_for(seed: int, index: int, domain: int) -> np.random.Generator:
    counter = np.zeros(4, np.uint64)
    counter[3] = domain
    key = np.array([seed, index], np.uint64)
    return np.random.Generator(np.random.Philox(counter=counter, key=key))


def _draw_matrix(cfg: SamplerConfig, index: int) -> tuple[np.ndarray, int]:
    rng = _rng_for(cfg.seed, index, DOMAIN_STATE)
    if cfg.measure == "haar-pure":
        z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        z /= np.sqrt((z * z.conj()).real.sum())
        return np.outer(z, z.conj()), 1
    k = cfg.ranks if isinstance(cfg.ranks, int) else 1 + int(rng.integers(4))
    g = rng.standard_normal((4, k)) + 1j * rng.standard_normal((4, k))
    rho = g @ g.conj().T
    rho /= rho.trace().real
    return rho, k


def random_state(cfg: SamplerConfig, index: int) -> DensityMatrix:
    """Record ``index`` of the sampling plan, deterministic in (seed, index)."""
    if not 0 <= index < cfg.count:
        raise IndexOutOfRange(f"index {index} outside [0, {cfg.count})")
    rho, _ = _draw_matrix(cfg, index)
    return DensityMatrix(rho)


def draw_matrices(cfg: SamplerConfig, start: int, stop: int) -> tuple[np.ndarray, np.ndarray]:
    """Raw matrices and rank draws for records [start, stop), unvalidated."""
    n = stop - start
    rhos = np.empty((n, 4, 4), np.complex128)
    ranks = np.empty(n, np.int64)
    for i in range(n):
        rhos[i], ranks[i] = _draw_matrix(cfg, start + i)
    return rhos, ranks


def random_unitary(seed: int, index: int) -> np.ndarray:
    """Haar-distributed 4x4 unitary, deterministic in (seed, index)."""
    rng = _rng_for(seed, index, DOMAIN_UNITARY)
    z = (rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def state_to_json(rho: DensityMatrix) -> dict:
    """JSON-ready dict: {"dim": 4, "matrix": 4x4 rows of [re, im] pairs}."""
    m = rho.matrix
    return {
        "dim": 4,
        "matrix": [[[float(x.real), float(x.imag)] for x in row] for row in m],
    }


def state_from_json(obj) -> DensityMatrix:
    """Parse and validate the state JSON format, naming the failed invariant."""
    if not isinstance(obj, dict):
        raise ValidationError("state file must contain a JSON object")
    if obj.get("dim") != 4:
        raise ValidationError(f"dim must be 4, got {obj.get('dim')!r}")
    rows = obj.get("matrix")
    if not isinstance(rows, list) or len(rows) != 4:
        raise ValidationError("matrix must be a list of 4 rows")
    m = np.zeros((4, 4), np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 4:
            raise ValidationError(f"matrix row {i} must be a list of 4 entries")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) for x in entry)
            ):
                raise ValidationError(f"matrix entry ({i}, {j}) must be a [re, im] pair")
            m[i, j] = complex(entry[0], entry[1])
    return DensityMatrix(m)
