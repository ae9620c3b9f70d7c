"""Pytest configuration and fixtures."""

from pathlib import Path
from typing import Any, Callable, Dict

import numpy as np
import numpy.typing as npt
import pytest

from myers_verify.models.manifold import RadialManifold
from myers_verify.models.profiles import WeightFunction
from myers_verify.services.model_space import RealOrArray
from myers_verify.services.profiles import euclidean, hyperbolic, sphere


def _out(x: npt.ArrayLike) -> RealOrArray:
    arr = np.asarray(x, dtype=float)
    return float(arr) if arr.ndim == 0 else arr


class QuadraticWeight(WeightFunction):
    """f = c r^2: the Gaussian soliton weight on flat space (Ric_f = 2c)."""

    kind = "quadratic"

    def __init__(self, c: float = 1.0):
        self.c = c

    def f(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(self.c * np.asarray(r, dtype=float) ** 2)

    def f_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(2.0 * self.c * np.asarray(r, dtype=float))

    def f_double_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(np.full_like(np.asarray(r, dtype=float), 2.0 * self.c))

    def parameters(self) -> Dict[str, Any]:
        return {"weight": self.kind, "weight_scale": self.c}


class HarmonicHessianWeight(WeightFunction):
    """f = (1 + r) log(1 + r) - r, so f'' = 1/(1 + r)."""

    kind = "harmonic_hessian"

    def f(self, r: npt.ArrayLike) -> RealOrArray:
        r = np.asarray(r, dtype=float)
        return _out((1.0 + r) * np.log1p(r) - r)

    def f_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(np.log1p(np.asarray(r, dtype=float)))

    def f_double_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(1.0 / (1.0 + np.asarray(r, dtype=float)))


@pytest.fixture
def round_sphere() -> RadialManifold:
    """Unit 3-sphere without weight."""
    return sphere(3)


@pytest.fixture
def flat_plane() -> RadialManifold:
    """Euclidean plane without weight."""
    return euclidean(2)


@pytest.fixture
def hyperbolic_space() -> RadialManifold:
    """Hyperbolic 3-space of curvature -1."""
    return hyperbolic(3)


@pytest.fixture
def gaussian_soliton() -> RadialManifold:
    """Flat plane with f = r^2; non-compact with Ric_f = 2."""
    return euclidean(2, QuadraticWeight(1.0))


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[..., Path]:
    """Write a scenario file from keyword pairs (or raw text) and return its path."""

    def _write(text: str = "", name: str = "scenario.cfg", **values: Any) -> Path:
        lines = [text] if text else []
        lines.extend(f"{key} = {value}" for key, value in values.items())
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _write


@pytest.fixture
def write_samples(tmp_path: Path) -> Callable[..., Path]:
    """Write a two-column sample file sampled from ``func`` on ``radii``."""

    def _write(
        name: str, radii: npt.ArrayLike, func: Callable[[np.ndarray], np.ndarray]
    ) -> Path:
        radii = np.asarray(radii, dtype=float)
        values = func(radii)
        path = tmp_path / name
        rows = [f"{r:.17g} {v:.17g}" for r, v in zip(radii, values)]
        path.write_text("# r value\n" + "\n".join(rows) + "\n", encoding="utf-8")
        return path

    return _write
