from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import IndexOutOfRange, ValidationError

TWO_PI = 2.0 * math.pi


def _frozen_array(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


class Method(str, Enum):
    D = "D"
    GREEDY = "Greedy"
    ROW_SWAP_GREEDY = "RowSwapGreedy"
    POWER_METHOD = "PowerMethod"
    RANDOM = "Random"

    @classmethod
    def parse(cls, raw: str) -> "Method":
        key = (raw or "").strip().lower()
        for method in cls:
            if key == method.value.lower():
                return method
        if key in METHOD_ALIASES:
            return METHOD_ALIASES[key]
        raise ValidationError(f"Unknown method: {raw!r}")

    @property
    def order(self) -> int:
        return list(Method).index(self)


METHOD_ALIASES: Dict[str, Method] = {
    "d": Method.D,
    "dominant": Method.D,
    "greedy": Method.GREEDY,
    "row-swap-greedy": Method.ROW_SWAP_GREEDY,
    "rowswap": Method.ROW_SWAP_GREEDY,
    "power": Method.POWER_METHOD,
    "power-method": Method.POWER_METHOD,
    "random": Method.RANDOM,
}


class GeneratorKind(str, Enum):
    PSD = "psd"
    DOMINANT = "dominant"


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Dense N×N complex Hermitian matrix; build it through ``make_hermitian``."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", _frozen_array(self.entries, np.complex128))

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    @property
    def diagonal(self) -> np.ndarray:
        return self.entries.diagonal().real.copy()

    @property
    def trace(self) -> float:
        return float(self.diagonal.sum())

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, copy=True)


@dataclass(frozen=True, eq=False)
class UnimodularVector:
    """Unit-modulus vector stored as phases in [0, 2π)."""

    phases: np.ndarray

    def __post_init__(self) -> None:
        phases = np.mod(np.asarray(self.phases, dtype=np.float64), TWO_PI)
        # mod can round up to exactly 2π for tiny negative angles
        phases[phases >= TWO_PI] = 0.0
        object.__setattr__(self, "phases", _frozen_array(phases, np.float64))

    @classmethod
    def ones(cls, n: int) -> "UnimodularVector":
        return cls(np.zeros(n))

    @classmethod
    def from_complex(cls, values, *, zero_tol: float = 0.0) -> "UnimodularVector":
        values = np.asarray(values, dtype=np.complex128)
        phases = np.angle(values)
        phases[np.abs(values) <= zero_tol] = 0.0
        return cls(phases)

    @property
    def n(self) -> int:
        return int(self.phases.shape[0])

    @property
    def values(self) -> np.ndarray:
        return np.exp(1j * self.phases)

    def prefix(self, k: int) -> "CodeString":
        return CodeString(self.phases[:k])


@dataclass(frozen=True, eq=False)
class CodeString:
    """A member of A*: an ordered unimodular string of length 1…N."""

    phases: np.ndarray

    def __post_init__(self) -> None:
        phases = np.mod(np.atleast_1d(np.asarray(self.phases, dtype=np.float64)), TWO_PI)
        phases[phases >= TWO_PI] = 0.0
        object.__setattr__(self, "phases", _frozen_array(phases, np.float64))

    def __len__(self) -> int:
        return int(self.phases.shape[0])

    @property
    def values(self) -> np.ndarray:
        return np.exp(1j * self.phases)

    def extend(self, *phases: float) -> "CodeString":
        return CodeString(np.concatenate([self.phases, np.asarray(phases, dtype=np.float64)]))

    def concat(self, other: "CodeString") -> "CodeString":
        return CodeString(np.concatenate([self.phases, other.phases]))

    def is_prefix_of(self, other: "CodeString") -> bool:
        return len(self) <= len(other) and bool(np.array_equal(self.phases, other.phases[: len(self)]))


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "eigenvalues", _frozen_array(self.eigenvalues, np.float64))
        object.__setattr__(self, "eigenvectors", _frozen_array(self.eigenvectors, np.complex128))

    @property
    def n(self) -> int:
        return int(self.eigenvalues.shape[0])

    @property
    def smallest(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def largest(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def dominant_vector(self) -> np.ndarray:
        return np.array(self.eigenvectors[:, -1], copy=True)


@dataclass(frozen=True, eq=False)
class TransformResult:
    deltas: np.ndarray
    loads: np.ndarray
    rbar: HermitianMatrix
    trace_r: float
    trace_rbar: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "deltas", _frozen_array(self.deltas, np.float64))
        object.__setattr__(self, "loads", _frozen_array(self.loads, np.float64))


@dataclass(frozen=True)
class RowSwap:
    """Row-switching transformation P_mn with 1-based indices, m > n."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if not (1 <= self.n < self.m):
            raise IndexOutOfRange(f"Row swap needs 1 <= n < m, got m={self.m}, n={self.n}")

    def permutation(self, size: int) -> np.ndarray:
        if self.m > size:
            raise IndexOutOfRange(f"Row swap ({self.m}, {self.n}) does not fit N={size}")
        order = np.arange(size)
        order[self.m - 1], order[self.n - 1] = self.n - 1, self.m - 1
        return order


@dataclass(frozen=True, eq=False)
class SolverReport:
    method: Method
    solution: UnimodularVector
    value: float
    iterations: int
    trace: Optional[Tuple[float, ...]] = None
    chosen_swap: Optional[RowSwap] = None
    shift: float = 0.0


@dataclass(frozen=True)
class BoundReport:
    n: int
    spectral_lo: float
    spectral_hi: float
    prop1_ratio: float
    thm1_applicable: bool
    thm1_ratio: float
    prop2_applicable: bool
    prop2_ratio: float
    universal_ratio: float


@dataclass(frozen=True, eq=False)
class OracleResult:
    value: float
    argmax: UnimodularVector
    grid_points_per_phase: int
    exhaustive: bool = True


@dataclass(frozen=True)
class AppendixReport:
    applicable: bool
    delta_sum: float = 0.0
    trace_r: float = 0.0
    trace_rbar: float = 0.0
    oracle_value: Optional[float] = None
    clauses: Dict[str, Optional[bool]] = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return all(result is not False for result in self.clauses.values())


@dataclass(frozen=True)
class ExperimentConfig:
    sizes: Tuple[int, ...]
    matrices_per_size: int
    seed: int
    methods: Tuple[Method, ...]
    oracle_enabled: bool = False
    oracle_M: int = 16
    generator: GeneratorKind = GeneratorKind.PSD
    dominance_factor: Optional[float] = None
    eig_hi: float = 1000.0
    power_max_iters: int = 1000
    power_tol: float = 1e-10


@dataclass(frozen=True)
class ExperimentRecord:
    n: int
    matrix_seed: int
    method: Method
    value: float
    normalized_value: float
    bounds: BoundReport
    runtime_micros: int
    oracle_value: Optional[float] = None

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        return (self.n, self.matrix_seed, self.method.order)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CheckReport:
    n: int
    results: List[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.results.append(CheckResult(name=name, passed=bool(passed), detail=detail))

    @property
    def failures(self) -> List[CheckResult]:
        return [result for result in self.results if not result.passed]

    @property
    def ok(self) -> bool:
        return not self.failures
