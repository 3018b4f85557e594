"""Balanced ideals, k-smallness certificates, double-complex pages and
surface-group cohomology. Results are plain dicts with the same schema as
the CLI's --json payloads."""

from importlib import resources

from ._core import (
    AnosovkitError,
    FlagConfiguration,
    ParseError,
    ResourceLimitError,
    SearchLimitError,
    ValidationError,
    cache_directory,
    certify,
    enumerate_ideals,
    group_cohomology,
    ldt,
    length_extremes,
    limit_page,
    max_certified_k,
    moduli,
    random_complex,
    spectral_page,
    surface_presentation,
    sweep,
    total_cohomology,
    trivial_representation,
    validate_complex,
    verify_length_bound,
    weyl_info,
)
from ._core import resolve_configuration as _resolve_configuration
from ._core import resolve_preset as _resolve_preset

__version__ = "0.1.0"


def presets_path():
    return resources.files(__name__) / "hdim_presets.json"


def resolve_preset(spec, path=None):
    """Resolve "qf", "hitchin" or "son1-lattice(n)" to {"value", "strict"}."""
    return _resolve_preset(spec, str(path or presets_path()))


def resolve_configuration(spec, path=None):
    """Resolve "ghys", "rigid(n)" or "line-hyperplane(n)" to type, pa, pd and hdim."""
    return _resolve_configuration(spec, str(path or presets_path()))


def configuration(spec, path=None):
    """FlagConfiguration and hdim bound for a named example configuration."""
    r = resolve_configuration(spec, path)
    return FlagConfiguration(r["type"], r["pa"], r["pd"]), r["hdim"]


__all__ = [
    "AnosovkitError",
    "FlagConfiguration",
    "ParseError",
    "ResourceLimitError",
    "SearchLimitError",
    "ValidationError",
    "cache_directory",
    "certify",
    "configuration",
    "enumerate_ideals",
    "group_cohomology",
    "ldt",
    "length_extremes",
    "limit_page",
    "max_certified_k",
    "moduli",
    "presets_path",
    "random_complex",
    "resolve_configuration",
    "resolve_preset",
    "spectral_page",
    "surface_presentation",
    "sweep",
    "total_cohomology",
    "trivial_representation",
    "validate_complex",
    "verify_length_bound",
    "weyl_info",
]
