"""Common +1 eigenspace of a product spin observable and the all-Z observable.

The solver reduces the problem to the even-parity block of the product
observable: a vector supported on even-parity indices is a common +1
eigenvector exactly when its even-block coordinates are fixed by that block.
A brute-force route (stacked null space of A - I and B - I) provides an
independent oracle for every result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .angles import DirectionList
from .bitstrings import parity_classes
from .classify import (
    ClassificationReport,
    StabilizerCase,
    classify,
    sector_transform,
)
from .errors import (
    DomainError,
    InternalConsistencyError,
    ShapeError,
    SizeError,
)
from .linalg import DEFAULT_TOL, SubspaceBasis, null_space
from .observables import ProductObservable, product_observable, sigma_z_product

MAX_SOLVER_PARTIES = 12
RESIDUAL_LIMIT = 1e-8


@dataclass(frozen=True)
class EvenParityBlock:
    """The even-parity submatrix of a product observable, indexed by the
    ascending even-parity basis indices."""

    n: int
    entries: np.ndarray

    @property
    def size(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class StabilizerReport:
    classification: ClassificationReport
    dimension: int
    basis: SubspaceBasis
    residual: float
    sigma_cut: float | None
    sigma_kept: float | None


def even_parity_block(d: DirectionList) -> EvenParityBlock:
    """Entries <j|A|i> for even-parity j, i, as products of local factors."""
    n = d.n_parties
    if n > MAX_SOLVER_PARTIES:
        raise SizeError(f"n_parties {n} exceeds solver cap {MAX_SOLVER_PARTIES}")
    obs = product_observable(d)
    s0 = parity_classes(n).s0
    return EvenParityBlock(n=n, entries=_kernels.even_block(obs.locals_array(), s0))


def embed_even(n: int, coeffs: np.ndarray) -> np.ndarray:
    """Place even-block coordinates at their even-parity indices in 2^n."""
    s0 = parity_classes(n).s0
    out = np.zeros(1 << n, dtype=np.complex128)
    out[s0] = coeffs
    return out


def solve_common_eigenspace(
    d: DirectionList, tol: float = DEFAULT_TOL
) -> StabilizerReport:
    """Basis of the common +1 eigenspace via the even-parity block.

    The block is Hermitian with spectrum in [-1, 1], and a unit eigenvector
    with eigenvalue lam has full-space stabilization defect exactly
    sqrt(2(1 - lam)). That square root makes the spectrum quadratically
    insensitive near a resonance, so a raw eigenvalue cut at tol would admit
    vectors whose physical residual is as large as sqrt(2 tol). Instead,
    eigenvectors with eigenvalue within tol of 1 are only candidates; each
    embedded candidate is kept iff its measured residual against both full
    observables stays within 2 tol, the scale on which the brute-force
    oracle decides rank.

    A kept vector with residual above RESIDUAL_LIMIT raises
    InternalConsistencyError; the keep rule makes that unreachable short of
    a bug.
    """
    n = d.n_parties
    block = even_parity_block(d)
    evals, evecs = np.linalg.eigh(block.entries)
    defects = np.sqrt(np.maximum(2.0 * (1.0 - evals), 0.0))
    candidates = np.nonzero(1.0 - evals <= max(tol, 1e-12))[0]

    obs = product_observable(d)
    b_diag = sigma_z_product(n)
    cols = []
    residual = 0.0
    sigma_cut = None
    rejected_defects = [
        float(defects[k]) for k in range(block.size) if k not in set(candidates)
    ]
    for k in candidates:
        amps = embed_even(n, evecs[:, k])
        res_a = float(np.linalg.norm(obs.apply(amps) - amps))
        res_b = float(np.linalg.norm(b_diag.apply(amps) - amps))
        combined = math.hypot(res_a, res_b)
        if combined <= 2.0 * tol:
            cols.append(amps)
            residual = max(residual, res_a, res_b)
            sigma_cut = max(sigma_cut or 0.0, combined)
        else:
            rejected_defects.append(combined)
    if residual > RESIDUAL_LIMIT:
        raise InternalConsistencyError(
            f"solver basis fails stabilization check: residual {residual:.3e}"
        )
    basis = SubspaceBasis.from_vectors(cols, dim=1 << n)
    return StabilizerReport(
        classification=classify(d, tol),
        dimension=len(cols),
        basis=basis,
        residual=residual,
        sigma_cut=sigma_cut,
        sigma_kept=min(rejected_defects) if rejected_defects else None,
    )


def brute_force_eigenspace(
    a: ProductObservable | np.ndarray,
    b: ProductObservable | np.ndarray,
    tol: float = DEFAULT_TOL,
) -> SubspaceBasis:
    """Oracle: null space of the stacked matrix [(A - I); (B - I)]."""
    am = a.full.entries if isinstance(a, ProductObservable) else np.asarray(a)
    bm = b.full.entries if isinstance(b, ProductObservable) else np.asarray(b)
    if am.shape != bm.shape:
        raise ShapeError(f"operator shapes differ: {am.shape} vs {bm.shape}")
    dim = am.shape[0]
    eye = np.eye(dim)
    return null_space(np.vstack([am - eye, bm - eye]), tol)


def sector_dimensions(
    d: DirectionList, tol: float = DEFAULT_TOL
) -> tuple[int, int, int, int]:
    """Common +1 eigenspace dimensions of (sA, sB) for the four sign sectors
    (+,+), (+,-), (-,+), (-,-), computed both by the oracle on negated
    operators and by the solver on transformed angles."""
    a_full = product_observable(d).full.entries
    b_full = sigma_z_product(d.n_parties).full.entries
    dims = []
    for sa, sb in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        oracle = brute_force_eigenspace(sa * a_full, sb * b_full, tol)
        solver = solve_common_eigenspace(sector_transform(d, sa, sb), tol)
        if oracle.count != solver.dimension:
            raise InternalConsistencyError(
                f"sector ({sa},{sb}): oracle dim {oracle.count} != "
                f"solver dim {solver.dimension}"
            )
        dims.append(solver.dimension)
    return tuple(dims)


# ---------------------------------------------------------------------------
# identity checks


def trig_parity_identity_residuals(d: DirectionList) -> tuple[float, float]:
    """Deviation of the direct parity-split product sums from their closed
    forms -i sin(sum theta) and cos(sum theta).

    The products are evaluated in sin/cos form (never tan), so angles at
    pi/2 are fine. Returns (odd_parity_residual, even_parity_residual).
    """
    theta = np.asarray(d.theta_radians(), dtype=np.float64)
    cos_t = np.cos(theta).astype(np.complex128)
    msin_t = (-1j) * np.sin(theta)
    even, odd = _kernels.parity_product_sums(cos_t, msin_t)
    total = float(theta.sum())
    return (
        abs(odd - (-1j) * math.sin(total)),
        abs(even - math.cos(total)),
    )


def character_sum(v) -> int:
    """sum over m in Z_2^n of (-1)^{m . v} for an integer vector v."""
    v = np.asarray(v, dtype=np.int64)
    n = v.size
    bits = 0
    for l in range(n):
        if v[l] % 2:
            bits |= 1 << (n - 1 - l)
    return int(
        _kernels.character_sums(np.array([bits], dtype=np.int64), n)[0]
    )


def character_sum_check(n: int, samples: int = 100, seed: int = 0) -> float:
    """Max deviation of character sums from their closed form (2^n when all
    components of v are even, else 0) over random v in {0, 1, 2}^n."""
    if n > 16:
        raise SizeError(f"n {n} exceeds cap 16")
    rng = np.random.default_rng(seed)
    vs = rng.integers(0, 3, size=(samples, n))
    bits = np.zeros(samples, dtype=np.int64)
    for l in range(n):
        bits |= (vs[:, l] % 2).astype(np.int64) << (n - 1 - l)
    sums = _kernels.character_sums(bits, n)
    expected = np.where(bits == 0, 1 << n, 0)
    return float(np.max(np.abs(sums - expected)))


# ---------------------------------------------------------------------------
# purifications and the leak-freedom check


@dataclass(frozen=True)
class PurificationModel:
    """A joint system/environment state stabilized by both observables,
    decomposed as sum_i |i> |e_i> over even-parity i."""

    n: int
    env_dim: int
    joint: np.ndarray
    env_vectors: dict[int, np.ndarray]
    primed_vectors: dict[int, np.ndarray]

    def reassembled(self) -> np.ndarray:
        out = np.zeros((1 << self.n) * self.env_dim, dtype=np.complex128)
        for idx, vec in self.env_vectors.items():
            out[idx * self.env_dim:(idx + 1) * self.env_dim] = vec
        return out


def purification_model(
    joint: np.ndarray, d: DirectionList, env_dim: int
) -> PurificationModel:
    """Decompose a joint state into environment vectors and their primed
    (per-index phased) companions, phase (i e^{-i phi_l}) per set bit."""
    n = d.n_parties
    mat = joint.reshape(1 << n, env_dim)
    phis = d.phi_radians()
    env = {}
    primed = {}
    for idx in parity_classes(n).s0:
        idx = int(idx)
        vec = mat[idx].copy()
        env[idx] = vec
        phase = 1.0 + 0.0j
        for l in range(n):
            if (idx >> (n - 1 - l)) & 1:
                phase *= 1j * complex(math.cos(phis[l]), -math.sin(phis[l]))
        primed[idx] = phase * vec
    return PurificationModel(
        n=n, env_dim=env_dim, joint=joint.copy(), env_vectors=env,
        primed_vectors=primed,
    )


def odd_parity_contraction_residual(
    model: PurificationModel, d: DirectionList
) -> float:
    """Max norm of sum_i <j|A|i> |e_i> over odd-parity j; vanishes for any
    joint state stabilized by the product observable."""
    n = d.n_parties
    obs = product_observable(d)
    mat = model.joint.reshape(1 << n, model.env_dim)
    image = np.stack([obs.apply(mat[:, e]) for e in range(model.env_dim)], axis=1)
    s1 = parity_classes(n).s1
    return float(np.max(np.linalg.norm(image[s1], axis=1))) if s1.size else 0.0


@dataclass(frozen=True)
class PurityReport:
    case: StabilizerCase
    projector_dim: int
    env_dim: int
    trials: int
    empty: bool
    max_entropy: float
    entropies: tuple[float, ...]
    stabilization_residual: float
    reduced_state_fidelity: float | None


def entanglement_entropy(joint: np.ndarray, sys_dim: int, env_dim: int) -> float:
    """Von Neumann entropy (bits) across the system:environment cut."""
    svals = np.linalg.svd(joint.reshape(sys_dim, env_dim), compute_uv=False)
    probs = svals**2
    probs = probs[probs > 1e-15]
    return float(-np.sum(probs * np.log2(probs)))


def purity_security_check(
    d: DirectionList,
    env_dim: int = 8,
    trials: int = 50,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> PurityReport:
    """Sample random joint states in range(P x I_env) for the common +1
    eigenspace projector P, verify they stay stabilized, and report the
    entanglement entropy across the system:environment cut.

    With a one-dimensional projector every purification is a product state
    (zero entropy) whose reduced system state is the unique stabilized
    state; degenerate projectors admit entangled purifications.
    """
    report = solve_common_eigenspace(d, tol)
    dim_p = report.dimension
    n = d.n_parties
    sys_dim = 1 << n
    if dim_p == 0:
        return PurityReport(
            case=report.classification.case,
            projector_dim=0,
            env_dim=env_dim,
            trials=0,
            empty=True,
            max_entropy=0.0,
            entropies=(),
            stabilization_residual=0.0,
            reduced_state_fidelity=None,
        )
    if env_dim < dim_p:
        raise DomainError(
            f"env_dim {env_dim} is smaller than the projector dimension {dim_p}"
        )
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    basis = report.basis.matrix
    obs = product_observable(d)
    b_diag = sigma_z_product(n)
    rng = np.random.default_rng(seed)
    entropies = []
    worst_residual = 0.0
    min_fidelity = None
    for _ in range(trials):
        g = rng.normal(size=(sys_dim, env_dim)) + 1j * rng.normal(
            size=(sys_dim, env_dim)
        )
        proj = basis @ (basis.conj().T @ g)
        norm = np.linalg.norm(proj)
        if norm < 1e-12:
            raise InternalConsistencyError("projected Gaussian draw collapsed to 0")
        proj /= norm
        res = 0.0
        for e in range(env_dim):
            col = proj[:, e]
            res = max(
                res,
                float(np.linalg.norm(obs.apply(col) - col)),
                float(np.linalg.norm(b_diag.apply(col) - col)),
            )
        worst_residual = max(worst_residual, res)
        entropies.append(entanglement_entropy(proj.reshape(-1), sys_dim, env_dim))
        if report.classification.case is StabilizerCase.UNIQUE_GHZ:
            target = basis[:, 0]
            fid = float(np.real(np.linalg.norm(target.conj() @ proj) ** 2))
            min_fidelity = fid if min_fidelity is None else min(min_fidelity, fid)
    if worst_residual > RESIDUAL_LIMIT:
        raise InternalConsistencyError(
            f"purification draw not stabilized: residual {worst_residual:.3e}"
        )
    max_entropy = max(entropies)
    if report.classification.case is StabilizerCase.UNIQUE_GHZ:
        if max_entropy > 1e-8:
            raise InternalConsistencyError(
                f"rank-1 projector produced entangled purification: "
                f"entropy {max_entropy:.3e}"
            )
        if min_fidelity is not None and min_fidelity < 1.0 - 1e-9:
            raise InternalConsistencyError(
                f"reduced state strays from the unique stabilized state: "
                f"fidelity {min_fidelity}"
            )
    return PurityReport(
        case=report.classification.case,
        projector_dim=dim_p,
        env_dim=env_dim,
        trials=trials,
        empty=False,
        max_entropy=max_entropy,
        entropies=tuple(entropies),
        stabilization_residual=worst_residual,
        reduced_state_fidelity=min_fidelity,
    )
