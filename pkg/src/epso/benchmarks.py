"""Continuous test functions: classic bases, shift/rotate transforms, and
hybrid/composition builders, behind a seeded name registry.

Shift vectors and rotation matrices are generated from a seed (uniform shift
inside the central 80% of the box, rotation from QR-orthonormalization of a
Gaussian matrix), so every registry entry is reproducible without external
data files.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ContractError, UnknownFunctionError

Objective = Callable[[np.ndarray], float]

SCHWEFEL_OPTIMUM = 420.9687
DEFAULT_LOW, DEFAULT_HIGH = -100.0, 100.0


# ---------------------------------------------------------------------------
# Base functions (all non-negative, 0 at their canonical optimum)
# ---------------------------------------------------------------------------

def elliptic(z) -> float:
    """Sum of (1e6)^(d/(D-1)) * z_d^2; a highly ill-conditioned bowl."""
    z = np.asarray(z, dtype=float)
    if z.size == 0:
        raise ContractError("elliptic needs a non-empty vector")
    if z.size == 1:
        return float(z[0] ** 2)
    weights = 1e6 ** (np.arange(z.size) / (z.size - 1))
    return float(np.sum(weights * z * z))


def cigar(z) -> float:
    """z_1^2 + 1e6 * sum of the remaining squares."""
    z = np.asarray(z, dtype=float)
    if z.size < 2:
        raise ContractError("cigar needs at least 2 dimensions")
    return float(z[0] ** 2 + 1e6 * np.sum(z[1:] ** 2))


def ackley(z) -> float:
    z = np.asarray(z, dtype=float)
    if z.size == 0:
        raise ContractError("ackley needs a non-empty vector")
    term1 = -20.0 * np.exp(-0.2 * np.sqrt(np.mean(z * z)))
    term2 = -np.exp(np.mean(np.cos(2.0 * np.pi * z)))
    return float(term1 + term2 + 20.0 + np.e)


def rastrigin(z) -> float:
    z = np.asarray(z, dtype=float)
    if z.size == 0:
        raise ContractError("rastrigin needs a non-empty vector")
    return float(np.sum(z * z - 10.0 * np.cos(2.0 * np.pi * z) + 10.0))


def schwefel(z) -> float:
    """418.9829*D - sum z_d*sin(sqrt|z_d|); defined only on [-500, 500]^D."""
    z = np.asarray(z, dtype=float)
    if z.size == 0:
        raise ContractError("schwefel needs a non-empty vector")
    if np.any(np.abs(z) > 500.0):
        raise ContractError("schwefel is defined only for components in [-500, 500]")
    return float(418.9829 * z.size - np.sum(z * np.sin(np.sqrt(np.abs(z)))))


# ---------------------------------------------------------------------------
# Transforms and composers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TransformSpec:
    """A shift plus an orthonormal rotation applied before a base function."""

    shift: np.ndarray
    rotation: np.ndarray

    def __post_init__(self):
        shift = np.asarray(self.shift, dtype=float)
        rot = np.asarray(self.rotation, dtype=float)
        d = shift.size
        if rot.shape != (d, d):
            raise ContractError("rotation must be square and match the shift dimension")
        if not np.allclose(rot.T @ rot, np.eye(d), atol=1e-9):
            raise ContractError("rotation must be orthonormal to within 1e-9")
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "rotation", rot)


def apply_transform(x, t: TransformSpec) -> np.ndarray:
    """z = rotation @ (x - shift)."""
    x = np.asarray(x, dtype=float)
    if x.shape != t.shift.shape:
        raise ContractError("input dimension does not match the transform")
    return t.rotation @ (x - t.shift)


def hybrid(parts: Sequence[tuple[Objective, float]]) -> Objective:
    """Split the input into contiguous blocks by fraction and sum the parts.

    Fractions must sum to 1; the last block absorbs rounding remainder. Every
    block must end up with at least one dimension.
    """
    if not parts:
        raise ContractError("hybrid needs at least one part")
    fractions = np.array([f for _, f in parts], dtype=float)
    if abs(fractions.sum() - 1.0) > 1e-9:
        raise ContractError("hybrid fractions must sum to 1")

    split_cache: dict[int, list[int]] = {}

    def _splits(dim: int) -> list[int]:
        sizes = split_cache.get(dim)
        if sizes is None:
            sizes = [int(round(f * dim)) for f in fractions[:-1]]
            sizes.append(dim - sum(sizes))
            if any(s < 1 for s in sizes):
                raise ContractError(
                    f"hybrid blocks must be non-empty; got sizes {sizes} for dim {dim}"
                )
            split_cache[dim] = sizes
        return sizes

    def objective(z) -> float:
        z = np.asarray(z, dtype=float)
        total = 0.0
        start = 0
        for (fn, _), size in zip(parts, _splits(z.size)):
            total += fn(z[start:start + size])
            start += size
        return float(total)

    return objective


@dataclass(frozen=True)
class CompositionComponent:
    """One landscape of a composition; the shift is its center in x-space."""

    objective: Objective
    sigma: float
    bias: float
    shift: np.ndarray


def composition_weights(x, components: Sequence[CompositionComponent]) -> np.ndarray:
    """Distance-based mixing weights, non-negative and summing to 1.

    w_i is proportional to exp(-|x - shift_i|^2 / (2*D*sigma_i^2)) / |x - shift_i|.
    At x exactly equal to some shift_i the weight collapses onto the first
    such component.
    """
    x = np.asarray(x, dtype=float)
    d = x.size
    dists = np.array([np.linalg.norm(x - c.shift) for c in components])
    w = np.zeros(len(components))
    if np.any(dists == 0.0):
        w[int(np.argmin(dists))] = 1.0
        return w
    for i, c in enumerate(components):
        w[i] = np.exp(-dists[i] ** 2 / (2.0 * d * c.sigma**2)) / dists[i]
    total = w.sum()
    if total == 0.0:  # all weights underflowed; fall back to the nearest center
        w[int(np.argmin(dists))] = 1.0
        return w
    return w / total


def composition(components: Sequence[CompositionComponent]) -> Objective:
    """Weighted sum of component landscapes plus their local biases."""
    if not components:
        raise ContractError("composition needs at least one component")
    comps = list(components)

    def objective(x) -> float:
        x = np.asarray(x, dtype=float)
        w = composition_weights(x, comps)
        total = 0.0
        for wi, c in zip(w, comps):
            if wi != 0.0:
                total += wi * (c.objective(x) + c.bias)
        return float(total)

    return objective


# ---------------------------------------------------------------------------
# Seeded registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ObjectiveSpec:
    name: str
    dimension: int
    bounds: np.ndarray
    bias: float
    optimum: np.ndarray  # argmin of this generated instance


def _random_rotation(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(a)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def _random_shift(rng: np.random.Generator, bounds: np.ndarray) -> np.ndarray:
    mid = (bounds[:, 0] + bounds[:, 1]) / 2.0
    half = 0.4 * (bounds[:, 1] - bounds[:, 0])  # central 80% of the box
    return rng.uniform(mid - half, mid + half)


def _default_bounds(dim: int) -> np.ndarray:
    return np.tile([DEFAULT_LOW, DEFAULT_HIGH], (dim, 1))


def _shifted_rotated(base: Objective, dim: int, rng: np.random.Generator):
    bounds = _default_bounds(dim)
    t = TransformSpec(_random_shift(rng, bounds), _random_rotation(rng, dim))

    def fn(x) -> float:
        return base(apply_transform(x, t))

    return bounds, t.shift, fn


def _schwefel_shifted_rotated(dim: int, rng: np.random.Generator):
    # Map the rotated offset into Schwefel's native domain around its
    # optimizer; the scale keeps every component inside [-500, 500].
    bounds = _default_bounds(dim)
    shift = _random_shift(rng, bounds)
    rot = _random_rotation(rng, dim)
    span = float(np.max(bounds[:, 1] - bounds[:, 0]))
    scale = 79.0 / (np.sqrt(dim) * span)

    def fn(x) -> float:
        z = SCHWEFEL_OPTIMUM + scale * (rot @ (np.asarray(x, dtype=float) - shift))
        return schwefel(z)

    return bounds, shift, fn


_HYBRID_PARTS = {
    "hybrid_1": [(ackley, 0.3), (rastrigin, 0.3), (elliptic, 0.4)],
    "hybrid_2": [(elliptic, 0.2), (cigar, 0.2), (ackley, 0.3), (rastrigin, 0.3)],
    "hybrid_3": [(elliptic, 0.2), (cigar, 0.2), (ackley, 0.2), (rastrigin, 0.2), (rastrigin, 0.2)],
}

_COMPOSITION_PARTS = {
    "composition_1": [(rastrigin, 10.0, 0.0), (ackley, 20.0, 100.0), (elliptic, 30.0, 200.0)],
    "composition_2": [(ackley, 10.0, 0.0), (rastrigin, 20.0, 100.0), (cigar, 30.0, 200.0)],
    "composition_3": [
        (rastrigin, 10.0, 0.0),
        (ackley, 20.0, 100.0),
        (elliptic, 30.0, 200.0),
        (cigar, 40.0, 300.0),
        (rastrigin, 50.0, 400.0),
    ],
}

_REGISTRY_ORDER = [
    "elliptic_rotated",
    "cigar_rotated",
    "ackley_shifted_rotated",
    "rastrigin_shifted_rotated",
    "schwefel_shifted_rotated",
    "hybrid_1",
    "hybrid_2",
    "hybrid_3",
    "composition_1",
    "composition_2",
    "composition_3",
]

_BASE_BY_NAME = {
    "elliptic_rotated": elliptic,
    "cigar_rotated": cigar,
    "ackley_shifted_rotated": ackley,
    "rastrigin_shifted_rotated": rastrigin,
}


def available_functions() -> tuple[str, ...]:
    return tuple(_REGISTRY_ORDER)


def registry(name: str, dimension: int, seed: int) -> tuple[ObjectiveSpec, Objective]:
    """Build the named function with seeded shift/rotation data.

    The per-function bias is 100 * (1 + registry index), echoing the usual
    competition convention; it is purely an additive offset.
    """
    if name not in _REGISTRY_ORDER:
        raise UnknownFunctionError(
            f"unknown function {name!r}; available: {', '.join(_REGISTRY_ORDER)}"
        )
    if dimension < 1:
        raise ContractError("dimension must be positive")
    index = _REGISTRY_ORDER.index(name)
    bias = 100.0 * (index + 1)
    rng = np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(index,)))

    if name in _BASE_BY_NAME:
        bounds, optimum, raw = _shifted_rotated(_BASE_BY_NAME[name], dimension, rng)
    elif name == "schwefel_shifted_rotated":
        bounds, optimum, raw = _schwefel_shifted_rotated(dimension, rng)
    elif name in _HYBRID_PARTS:
        inner = hybrid(_HYBRID_PARTS[name])
        bounds, optimum, raw = _shifted_rotated(inner, dimension, rng)
    else:
        bounds = _default_bounds(dimension)
        comps = []
        for base, sigma, cbias in _COMPOSITION_PARTS[name]:
            s = _random_shift(rng, bounds)
            comps.append(
                CompositionComponent(
                    objective=(lambda x, b=base, sh=s: b(np.asarray(x, dtype=float) - sh)),
                    sigma=sigma,
                    bias=cbias,
                    shift=s,
                )
            )
        raw = composition(comps)
        optimum = comps[0].shift

    spec = ObjectiveSpec(
        name=name,
        dimension=dimension,
        bounds=bounds,
        bias=bias,
        optimum=np.asarray(optimum, dtype=float),
    )

    def objective(x) -> float:
        return raw(x) + bias

    return spec, objective
