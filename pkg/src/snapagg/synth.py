"""Synthetic contact sequences with a planted core/noise structure.

Used as ground truth in tests and demos: a handful of *core* edges fire
frequently, a cloud of *noise* edges fires rarely, and the generator
keeps track of which is which so filtering behaviour can be checked
exactly against the planted sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Tuple

import numpy as np

from .model import ContactSequence


@dataclass(frozen=True)
class PlantedInstance:
    """A generated sequence plus the ground-truth edge partition."""

    sequence: ContactSequence
    core_edges: FrozenSet[Tuple[int, int]]
    noise_edges: FrozenSet[Tuple[int, int]]


def generate_planted(
    nodes: int,
    core_edges: int,
    noise_edges: int,
    core_rate: float,
    noise_rate: float,
    steps: int,
    dt: int,
    seed: int,
) -> PlantedInstance:
    """Draw a planted-structure sequence: Bernoulli firing per timestep.

    Core and noise edge sets are disjoint uniform draws from all node
    pairs; each edge then fires independently at its rate in every one of
    ``steps`` timesteps.  The observation period is the full grid
    [0, (steps-1)*dt] regardless of which timesteps actually fire.
    Deterministic for a given seed.
    """
    for name, rate in (("core_rate", core_rate), ("noise_rate", noise_rate)):
        if not 0.0 <= rate <= 1.0:
            raise ValueError(f"{name} must be in [0, 1], got {rate}")
    if nodes < 2 or steps < 1 or dt < 1:
        raise ValueError("need nodes >= 2, steps >= 1, dt >= 1")
    pairs = list(combinations(range(nodes), 2))
    total = core_edges + noise_edges
    if core_edges < 0 or noise_edges < 0 or total > len(pairs):
        raise ValueError(
            f"cannot place {core_edges}+{noise_edges} edges on {len(pairs)} pairs"
        )

    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(pairs), size=total, replace=False)
    core = frozenset(pairs[i] for i in chosen[:core_edges])
    noise = frozenset(pairs[i] for i in chosen[core_edges:])

    triples = []
    for edges, rate in ((sorted(core), core_rate), (sorted(noise), noise_rate)):
        if not edges:
            continue
        fires = rng.random((len(edges), steps)) < rate
        for (u, v), row in zip(edges, fires):
            for k in np.flatnonzero(row):
                triples.append((u, v, int(k) * dt))
    seq = ContactSequence.from_contacts(
        triples,
        dt=dt,
        t_min=0,
        t_max=(steps - 1) * dt,
        labels=tuple(range(nodes)),
    )
    return PlantedInstance(sequence=seq, core_edges=core, noise_edges=noise)
