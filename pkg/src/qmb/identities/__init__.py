"""Catalog of numerically verifiable q-series identities.

Each family module registers IdentityDescriptor entries with the shared
registry in base; _load_all() imports every family exactly once so that
catalog()/get() see the full set regardless of import order.
"""

from __future__ import annotations

from .base import (CheckReport, Constraint, DEFAULT_TOL, IdentityDescriptor,
                   Rule, catalog, check, get, register, sweep_free)

_LOADED = False

_FAMILIES = ("theta_ratio", "wp32", "vwp54", "vwp87", "bal87", "prod_sq",
             "verma_jain")


def _load_all() -> None:
    global _LOADED
    if _LOADED:
        return
    _LOADED = True
    import importlib
    for mod in _FAMILIES:
        importlib.import_module(f".{mod}", __name__).register_all()


__all__ = [
    "CheckReport", "Constraint", "DEFAULT_TOL", "IdentityDescriptor", "Rule",
    "catalog", "check", "get", "register", "sweep_free",
]
