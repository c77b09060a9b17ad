"""Shared output for subcommands: plain text by default, JSON with ``--json``."""

from __future__ import annotations

import argparse
import json
from typing import Any

from pydantic_core import to_jsonable_python


def emit(args: argparse.Namespace, payload: Any, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(to_jsonable_python(payload), indent=2, ensure_ascii=False))
        return
    print(text.rstrip("\n"))

