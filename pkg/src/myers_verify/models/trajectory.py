"""Sampled solutions of the comparison ODE."""

from functools import cached_property
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.interpolate import PchipInterpolator


class TrajectorySample(BaseModel):
    """One node of a trajectory: m = n_eff u'/u."""

    model_config = ConfigDict(frozen=True)

    t: float
    u: float
    u_prime: float
    m: float


class RiccatiTrajectory(BaseModel):
    """Samples of u'' + (ric/n_eff) u = 0 and the mean curvature it encodes.

    ``conjugate_time`` is set for integrations from the pole, ``blowup_time``
    for integrations from interior data; both mark the first zero of u.
    """

    model_config = ConfigDict(frozen=True)

    n_eff: float = Field(gt=0)
    t0: float
    t_max: float
    step: float
    samples: List[TrajectorySample]
    conjugate_time: Optional[float] = None
    blowup_time: Optional[float] = None

    @cached_property
    def t(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    @cached_property
    def u(self) -> np.ndarray:
        return np.array([s.u for s in self.samples])

    @cached_property
    def m(self) -> np.ndarray:
        return np.array([s.m for s in self.samples])

    @property
    def t_end(self) -> float:
        """Last sampled time (before any zero of u)."""
        return self.samples[-1].t if self.samples else self.t0

    @property
    def event_time(self) -> Optional[float]:
        if self.conjugate_time is not None:
            return self.conjugate_time
        return self.blowup_time

    def m_at(self, t: float) -> float:
        """Mean curvature at ``t`` by monotone cubic interpolation of the samples."""
        times = self.t
        if not times[0] <= t <= times[-1]:
            raise ValueError(
                f"t = {t} outside sampled range [{times[0]}, {times[-1]}]"
            )
        return float(self.interpolant(t))

    @cached_property
    def interpolant(self) -> PchipInterpolator:
        return PchipInterpolator(self.t, self.m)
