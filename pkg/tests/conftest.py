import numpy as np
import pytest

from borb.models import ModelSpec, build_model
from borb.sections import build_space

MODEL_SPECS = {
    "fs": ModelSpec(kind="FS_SPHERE"),
    "football2": ModelSpec(kind="FOOTBALL", m=2),
    "football3": ModelSpec(kind="FOOTBALL", m=3),
    "football5": ModelSpec(kind="FOOTBALL", m=5),
    "circle": ModelSpec(kind="CIRCLE_MASS"),
    "flatcap": ModelSpec(kind="FLAT_CAP"),
}

FOUR_MODELS = ("fs", "football3", "circle", "flatcap")


@pytest.fixture(scope="session")
def models():
    return {name: build_model(spec) for name, spec in MODEL_SPECS.items()}


@pytest.fixture(scope="session")
def spaces(models):
    """Lazy session-wide space cache; keys (model name, p[, twist])."""
    cache: dict = {}

    def get(name: str, p: int, twist: bool = False):
        key = (name, p, twist)
        if key not in cache:
            cache[key] = build_space(models[name], p, twist)
        return cache[key]

    return get


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
