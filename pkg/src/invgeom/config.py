"""Sweep thresholds and reproducibility knobs."""

import os
from dataclasses import dataclass

ENV_CAP = "INVGEOM_CAP_EXHAUSTIVE"


@dataclass(frozen=True)
class SweepConfig:
    """Caps above which exhaustive sweeps degrade to seeded sampling.

    Associativity is checked over all N^3 triples up to ``assoc_exhaustive_cap``
    elements; metric triple sweeps (right-subinvariance and friends) degrade
    above ``triple_exhaustive_cap``.  Sampling always uses ``seed``.
    """

    assoc_exhaustive_cap: int = 512
    assoc_samples: int = 100_000
    triple_exhaustive_cap: int = 250
    triple_samples: int = 1_000_000
    element_cap: int = 100_000
    seed: int = 0

    def with_cap(self, cap):
        """Override both exhaustive caps with a single knob."""
        if cap is None:
            return self
        return SweepConfig(
            assoc_exhaustive_cap=cap,
            assoc_samples=self.assoc_samples,
            triple_exhaustive_cap=cap,
            triple_samples=self.triple_samples,
            element_cap=self.element_cap,
            seed=self.seed,
        )


def default_config():
    """SweepConfig honouring the cap environment variable, if set."""
    cap = os.environ.get(ENV_CAP)
    return SweepConfig().with_cap(int(cap)) if cap else SweepConfig()
