import os
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from snapagg import ContactSequence, WindowSpec, load_contacts

DATA_DIR = Path(os.environ.get("SNAPAGG_DATA", Path(__file__).resolve().parent.parent / "data"))
HS_FILE = DATA_DIR / "High-School_data_2013.csv.gz"
CNS_FILE = DATA_DIR / "bt_symmetric.csv"

requires_hs = pytest.mark.skipif(
    not HS_FILE.exists(),
    reason=f"high-school dataset not found at {HS_FILE}; "
    "run scripts/fetch_datasets.py or set SNAPAGG_DATA",
)
requires_cns = pytest.mark.skipif(
    not CNS_FILE.exists(),
    reason=f"CNS dataset not found at {CNS_FILE}; "
    "run scripts/fetch_datasets.py or set SNAPAGG_DATA",
)


@pytest.fixture(scope="session")
def hs_sequence():
    return load_contacts(HS_FILE, "sociopatterns", dt=20)


@pytest.fixture(scope="session")
def cns_sequence():
    return load_contacts(CNS_FILE, "cns", dt=300)


@st.composite
def contact_sequences(
    draw, min_nodes=2, max_nodes=5, max_steps=20, dts=(1, 2, 5), min_contacts=0
):
    """Small random sequences on a fixed observation grid starting at 0."""
    n_nodes = draw(st.integers(min_nodes, max_nodes))
    steps = draw(st.integers(1, max_steps))
    dt = draw(st.sampled_from(dts))
    pairs = list(combinations(range(n_nodes), 2))
    picked = draw(
        st.lists(
            st.tuples(st.sampled_from(pairs), st.integers(0, steps - 1)),
            min_size=min_contacts,
            max_size=len(pairs) * steps,
            unique=True,
        )
    )
    triples = [(u, v, k * dt) for (u, v), k in picked]
    return ContactSequence.from_contacts(
        triples, dt=dt, t_min=0, t_max=(steps - 1) * dt
    )


@st.composite
def sequences_with_specs(draw, allow_partial=True, **kwargs):
    """A sequence plus a valid window spec anchored at its start."""
    seq = draw(contact_sequences(**kwargs))
    steps = (seq.t_max - seq.t_min) // seq.dt + 1
    w_steps = draw(st.integers(1, steps))
    ratio = draw(st.integers(1, max(1, steps // w_steps)))
    tail = draw(st.booleans()) if allow_partial else False
    spec = WindowSpec(
        t0=seq.t_min,
        w_a=w_steps * seq.dt,
        dt=seq.dt,
        w_f=w_steps * seq.dt * ratio,
        include_partial_tail=tail,
    )
    return seq, spec


def random_sequence(rng: np.random.Generator, max_nodes=5, max_steps=20, dts=(1, 2, 5)):
    """Seeded random instance for enumerated (non-hypothesis) checks."""
    n = int(rng.integers(2, max_nodes + 1))
    steps = int(rng.integers(1, max_steps + 1))
    dt = int(rng.choice(dts))
    density = float(rng.uniform(0.05, 0.6))
    triples = [
        (u, v, k * dt)
        for u, v in combinations(range(n), 2)
        for k in range(steps)
        if rng.random() < density
    ]
    return ContactSequence.from_contacts(
        triples, dt=dt, t_min=0, t_max=(steps - 1) * dt
    )
