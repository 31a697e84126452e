"""
Experiment Registry

Named experiments with a parameter schema and the result they verify. A run
config refers to experiments by name; the schema validates its parameters.
"""

import logging
import os
from dataclasses import dataclass, field
from typing import Callable, Dict, List

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Experiment:
    """
    A registered experiment.

    run(params, rng, ctx) returns a JSON-ready dict with at least a
    boolean 'passed'; CSV artifacts it writes are listed under 'artifacts'.
    """
    name: str
    schema: Dict[str, tuple]
    anchor: str
    run: Callable
    description: str = ""

    def defaults(self):
        return {key: default for key, (default, _) in self.schema.items()}

    def describe(self):
        params = ", ".join(f"{key}: {data_type} = {default!r}"
                           for key, (default, data_type) in sorted(self.schema.items()))
        return f"{self.name}  [{self.anchor}]\n    {self.description}\n    params: {params or '(none)'}"


@dataclass
class RunContext:
    """Where an experiment writes its CSV artifacts"""
    out_dir: str
    experiment_id: str
    artifacts: List[str] = field(default_factory=list)

    def artifact(self, suffix):
        """Path for <id>_<suffix> in the output directory; the name is recorded for the report"""
        name = f"{self.experiment_id}_{suffix}"
        self.artifacts.append(name)
        return os.path.join(self.out_dir, name)


_REGISTRY: Dict[str, Experiment] = {}


def experiment(name, anchor, schema=None, description=""):
    """Decorator registering run(params, rng, ctx) under a name"""
    def register(func):
        if name in _REGISTRY:
            raise ValueError(f"Experiment {name} is already registered")
        _REGISTRY[name] = Experiment(name, dict(schema or {}), anchor, func,
                                     description or (func.__doc__ or "").strip().split("\n")[0])
        return func
    return register


def get_experiment(name) -> Experiment:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"No experiment named {name}") from None


def list_experiments() -> List[Experiment]:
    """Every registered experiment, sorted by name"""
    return [_REGISTRY[name] for name in sorted(_REGISTRY)]


def experiment_schemas():
    """name -> parameter schema, the form parse_config validates against"""
    return {name: dict(entry.schema) for name, entry in _REGISTRY.items()}
