"""
Suite configuration: sampling sizes, seeds and reference products.

Loaded from octonion_suite.yaml next to this file. A missing or broken file
falls back to built-in defaults with a warning on stderr.
"""

import os
import sys
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, List, Tuple

import yaml

from octonion import OctonionParseError, SplitOctonion, parse_octonion

SCRIPT_DIR = os.path.dirname(os.path.abspath(__file__))
DEFAULT_SUITE_FILE = os.path.join(SCRIPT_DIR, "octonion_suite.yaml")


@dataclass(frozen=True)
class SuiteSettings:
    seed: int = 2015
    random_pairs: int = 100000
    property_samples: int = 1000
    float_samples: int = 10000
    numerator_range: Tuple[int, int] = (-99, 99)
    denominator_range: Tuple[int, int] = (1, 99)
    float_magnitude: float = 1000.0
    float_rel_tol: float = 1e-12
    bench_iters: int = 20000
    bench_runs: int = 5
    bench_warmup: int = 2000

    def __post_init__(self):
        if self.denominator_range[0] < 1:
            raise ValueError(f"denominators must be positive: {self.denominator_range}")
        if self.random_pairs < 0 or self.property_samples < 0 or self.float_samples < 0:
            raise ValueError("sample sizes must be non-negative")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SuiteSettings":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown settings: {sorted(unknown)}")
        values = dict(data)
        for key in ('numerator_range', 'denominator_range'):
            if key in values:
                values[key] = tuple(values[key])
        return cls(**values)

    def with_overrides(self, **overrides: Any) -> "SuiteSettings":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


@dataclass(frozen=True)
class ReferenceProduct:
    """A known product x * b = expected, checked through every multiplication path."""
    id: str
    name: str
    category: str
    x: SplitOctonion
    b: SplitOctonion
    expected: SplitOctonion
    description: str


def _reference(data: Dict[str, Any]) -> ReferenceProduct:
    return ReferenceProduct(
        id=data['id'],
        name=data['name'],
        category=data['category'],
        x=parse_octonion(str(data['x'])),
        b=parse_octonion(str(data['b'])),
        expected=parse_octonion(str(data['expected'])),
        description=data.get('description', ''),
    )


def load_suite(path: str = DEFAULT_SUITE_FILE) -> Tuple[SuiteSettings, List[ReferenceProduct]]:
    """Load settings and reference products from YAML."""
    try:
        with open(path, 'r') as f:
            data = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        print(f"Warning: could not read {path} ({e}); using default settings", file=sys.stderr)
        return SuiteSettings(), []

    if not isinstance(data, dict):
        print(f"Warning: {path} is not a mapping; using default settings", file=sys.stderr)
        return SuiteSettings(), []

    try:
        settings = SuiteSettings.from_dict(data.get('settings') or {})
        references = [_reference(item) for item in data.get('reference_products') or []]
    except (KeyError, TypeError, ValueError, OctonionParseError) as e:
        print(f"Warning: invalid suite file {path} ({e}); using default settings", file=sys.stderr)
        return SuiteSettings(), []

    return settings, references
