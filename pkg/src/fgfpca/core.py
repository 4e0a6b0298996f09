"""Domain types shared by every stage of the pipeline.

Holds the observation grid, the dense binary outcome matrix with
per-subject observed lengths, the exponential-family/link abstraction,
and the fitted population model object.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.special import expit, logit

from .errors import DimensionMismatch, InvalidGrid, InvalidOutcome

#: Relative tolerance for grid-spacing uniformity checks.
SPACING_RTOL = 1e-12


@dataclass(frozen=True)
class RegularGrid:
    """Equally spaced observation grid on a closed interval."""

    points: np.ndarray
    t_min: float
    t_max: float

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        if pts.ndim != 1 or pts.size < 2:
            raise InvalidGrid("grid needs at least 2 points")
        diffs = np.diff(pts)
        if np.any(diffs <= 0):
            raise InvalidGrid("grid points must be strictly increasing")
        h = (self.t_max - self.t_min) / (pts.size - 1)
        if np.max(np.abs(diffs - h)) > SPACING_RTOL * max(abs(h), 1.0):
            raise InvalidGrid("grid points must be equally spaced")
        if pts[0] < self.t_min - 1e-12 or pts[-1] > self.t_max + 1e-12:
            raise InvalidGrid("grid points must lie inside the domain bounds")

    @property
    def num_points(self) -> int:
        return int(self.points.size)

    @property
    def spacing(self) -> float:
        return float((self.t_max - self.t_min) / (self.points.size - 1))

    def quadrature_weights(self) -> np.ndarray:
        """Uniform quadrature weight (one grid spacing) per point."""
        return np.full(self.num_points, self.spacing)

    def inner(self, f: np.ndarray, g: np.ndarray) -> float:
        """Quadrature inner product of two functions sampled on this grid."""
        return float(np.sum(np.asarray(f) * np.asarray(g)) * self.spacing)


def make_grid(num_points: int, t_min: float, t_max: float) -> RegularGrid:
    """Build an equally spaced grid inclusive of both endpoints."""
    if num_points < 2:
        raise InvalidGrid(f"need at least 2 grid points, got {num_points}")
    if not t_min < t_max:
        raise InvalidGrid(f"empty domain [{t_min}, {t_max}]")
    return RegularGrid(np.linspace(t_min, t_max, num_points), float(t_min), float(t_max))


@dataclass(frozen=True)
class Family:
    """Exponential-family distribution with link and log-density pieces.

    ``log_density(y, eta)`` must equal
    ``log h(y) + eta * T(y) - log_partition(eta)`` and the two derivative
    callables are its analytic first and second derivatives in ``eta``,
    required by the Newton solvers downstream.
    """

    kind: str
    link: Callable[[np.ndarray], np.ndarray]
    inv_link: Callable[[np.ndarray], np.ndarray]
    h: Callable[[np.ndarray], np.ndarray]
    T: Callable[[np.ndarray], np.ndarray]
    log_partition: Callable[[np.ndarray], np.ndarray]
    log_density: Callable[[np.ndarray, np.ndarray], np.ndarray]
    dlog_density: Callable[[np.ndarray, np.ndarray], np.ndarray]
    d2log_density: Callable[[np.ndarray, np.ndarray], np.ndarray]

    def validate_outcomes(self, y: np.ndarray) -> None:
        if self.kind == "binomial-logit":
            if not np.isin(np.asarray(y), (0, 1)).all():
                raise InvalidOutcome("binomial-logit outcomes must be 0/1")
        else:  # pragma: no cover - only binomial-logit is registered
            raise InvalidOutcome(f"unknown family kind {self.kind!r}")


def _log1pexp(eta):
    return np.logaddexp(0.0, eta)


def binomial_logit() -> Family:
    """Bernoulli outcomes with the logit link."""
    return Family(
        kind="binomial-logit",
        link=logit,
        inv_link=expit,
        h=lambda y: np.ones_like(np.asarray(y, dtype=float)),
        T=lambda y: np.asarray(y, dtype=float),
        log_partition=_log1pexp,
        log_density=lambda y, eta: np.asarray(y, dtype=float) * eta - _log1pexp(eta),
        dlog_density=lambda y, eta: np.asarray(y, dtype=float) - expit(eta),
        d2log_density=lambda y, eta: -expit(eta) * (1.0 - expit(eta)),
    )


_FAMILIES = {"binomial-logit": binomial_logit}


def family_by_kind(kind: str) -> Family:
    try:
        return _FAMILIES[kind]()
    except KeyError:
        raise InvalidOutcome(f"unknown family kind {kind!r}") from None


@dataclass(frozen=True)
class FunctionalDataset:
    """Dense subjects-by-grid outcome matrix with observed-length markers.

    ``Y[i, j]`` is meaningful only for ``j < observed_upto[i]``; later
    columns are missing by convention and never read.
    """

    grid: RegularGrid
    subject_ids: tuple
    Y: np.ndarray
    observed_upto: np.ndarray
    family: Family = field(default_factory=binomial_logit)

    def __post_init__(self):
        Y = np.ascontiguousarray(self.Y, dtype=np.int8)
        upto = np.asarray(self.observed_upto, dtype=np.int64)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "observed_upto", upto)
        object.__setattr__(self, "subject_ids", tuple(self.subject_ids))
        n, j = Y.shape
        if n < 1:
            raise InvalidOutcome("need at least one subject")
        if j != self.grid.num_points:
            raise DimensionMismatch("outcome matrix does not match the grid length")
        if len(self.subject_ids) != n:
            raise DimensionMismatch("subject_ids length does not match outcome rows")
        if len(set(self.subject_ids)) != n:
            raise InvalidOutcome("subject ids must be unique")
        if upto.shape != (n,) or np.any(upto < 0) or np.any(upto > j):
            raise DimensionMismatch("observed_upto out of range")
        for i in range(n):
            self.family.validate_outcomes(Y[i, : upto[i]])

    @property
    def num_subjects(self) -> int:
        return self.Y.shape[0]

    @property
    def fully_observed(self) -> bool:
        return bool(np.all(self.observed_upto == self.grid.num_points))


def full_dataset(
    grid: RegularGrid,
    subject_ids: Sequence,
    Y: np.ndarray,
    family: Family | None = None,
) -> FunctionalDataset:
    """Dataset where every subject is observed on the whole grid."""
    Y = np.asarray(Y)
    return FunctionalDataset(
        grid=grid,
        subject_ids=tuple(subject_ids),
        Y=Y,
        observed_upto=np.full(Y.shape[0], grid.num_points, dtype=np.int64),
        family=family if family is not None else binomial_logit(),
    )


@dataclass(frozen=True)
class FGFPCAModel:
    """Fitted population objects used for out-of-sample prediction.

    ``phi`` columns are orthonormal under the fine-grid quadrature inner
    product; ``lam`` holds the score variances paired with those columns.
    """

    grid: RegularGrid
    f0: np.ndarray
    phi: np.ndarray
    lam: np.ndarray
    pve: np.ndarray
    family: Family
    bin_width: int
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        f0 = np.asarray(self.f0, dtype=float)
        phi = np.asarray(self.phi, dtype=float)
        lam = np.asarray(self.lam, dtype=float)
        pve = np.asarray(self.pve, dtype=float)
        object.__setattr__(self, "f0", f0)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "pve", pve)
        j = self.grid.num_points
        if f0.shape != (j,):
            raise DimensionMismatch("f0 length does not match the grid")
        if phi.ndim != 2 or phi.shape[0] != j:
            raise DimensionMismatch("phi must be J x K on the model grid")
        k = phi.shape[1]
        if lam.shape != (k,):
            raise DimensionMismatch("lambda length does not match K")
        if np.any(lam <= 0):
            raise InvalidOutcome("score variances must be strictly positive")
        if pve.shape != (k,):
            raise DimensionMismatch("pve length does not match K")
        if np.any(np.diff(pve) < -1e-12) or np.any(pve > 1.0 + 1e-12):
            raise InvalidOutcome("pve must be non-decreasing and at most 1")
        gram = (phi.T * self.grid.quadrature_weights()) @ phi
        if np.max(np.abs(gram - np.eye(k))) > 1e-6:
            raise InvalidOutcome("phi columns are not orthonormal under quadrature")

    @property
    def num_components(self) -> int:
        return int(self.phi.shape[1])
