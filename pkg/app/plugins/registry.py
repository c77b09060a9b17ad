"""Dynamic plugin registries for CLI subcommands and bound rules.

Usage
-----
1. Subclass ``Command`` (or ``BoundRule``) and implement its abstract
   methods.
2. Decorate the class with ``@command_registry.register("VALIDATE")``
   (or ``@rule_registry.register("CATALOG")``).
3. At import-time the class is registered; the CLI resolves commands via
   ``command_registry.get("validate")`` and the ledger resolves rules via
   ``rule_registry.get("catalog")``.
"""

from __future__ import annotations

import argparse
import importlib
import pkgutil
from abc import ABC, abstractmethod
from typing import Dict, Generic, Mapping, Type, TypeVar

from app.models.bounds import ArgValue, BoundLedger, RuleOutcome


class Command(ABC):
    """Abstract base class every CLI subcommand must implement."""

    help: str = ""

    @abstractmethod
    def configure(self, parser: argparse.ArgumentParser) -> None:
        """Add the subcommand's arguments to *parser*."""
        ...

    @abstractmethod
    def run(self, args: argparse.Namespace) -> int:
        """Execute the subcommand and return the process exit code.

        Parameters
        ----------
        args : argparse.Namespace
            Parsed arguments, including the global ``--json`` and
            ``--verbose`` flags.

        Returns
        -------
        int
            0 on success, 1 on validation failure, 2 on usage errors.
        """
        ...


class BoundRule(ABC):
    """Abstract base class every bound-inference rule must implement."""

    @abstractmethod
    def apply(self, ledger: BoundLedger, manifold: str, args: Mapping[str, ArgValue]) -> RuleOutcome:
        """Derive bound updates for *manifold* from *ledger* and *args*.

        Raises ``RuleRefusedError`` when the rule does not apply and
        ``MissingInputError`` when it needs bounds the ledger lacks.
        """
        ...


T = TypeVar("T")


class PluginRegistry(Generic[T]):
    """A simple dictionary-based registry with a decorator API."""

    def __init__(self, kind: str) -> None:
        self._kind = kind
        self._plugins: Dict[str, T] = {}

    def register(self, type_key: str):
        """Class decorator that registers an instance under *type_key*.

        Example::

            @command_registry.register("VALIDATE")
            class ValidateCommand(Command):
                ...
        """

        def decorator(cls: Type[T]):
            instance = cls()
            self._plugins[type_key.upper()] = instance
            return cls

        return decorator

    def get(self, type_key: str) -> T:
        """Look up a registered plugin by its key.

        Raises ``KeyError`` with a helpful message on miss.
        """
        key = type_key.upper()
        if key not in self._plugins:
            available = ", ".join(sorted(self._plugins.keys())) or "(none)"
            raise KeyError(
                f"No {self._kind} registered for '{key}'. "
                f"Available: {available}"
            )
        return self._plugins[key]

    def __contains__(self, type_key: str) -> bool:
        return type_key.upper() in self._plugins

    @property
    def available_types(self) -> list[str]:
        return sorted(self._plugins.keys())


# ── Global singletons ────────────────────────────────────────────
command_registry: PluginRegistry[Command] = PluginRegistry("command")
rule_registry: PluginRegistry[BoundRule] = PluginRegistry("bound rule")


def _import_all(package_name: str) -> None:
    package = importlib.import_module(package_name)
    for _importer, module_name, _ispkg in pkgutil.iter_modules(package.__path__):
        importlib.import_module(f"{package_name}.{module_name}")


def discover_rules() -> None:
    """Auto-import every module under ``app.plugins.rules``."""
    _import_all("app.plugins.rules")


def discover_plugins() -> None:
    """Auto-import every rule and command module.

    Importing a module triggers its ``register`` decorators, populating
    the registries automatically.
    """
    discover_rules()
    _import_all("app.plugins.commands")
