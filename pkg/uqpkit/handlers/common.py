from __future__ import annotations

import argparse
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Iterable

from .. import texts
from ..utils.matrix_io import format_float

MAX_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    configure: Callable[[argparse.ArgumentParser], None]
    handler: Callable[[argparse.Namespace], int]


def u64(raw: str) -> int:
    try:
        value = int(raw, 0)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {raw!r}") from exc
    if not 0 <= value <= MAX_U64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 bits: {raw!r}")
    return value


def positive_int(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {raw!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {raw!r}")
    return value


def common_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=u64, default=None, help="Master seed (u64).")
    parent.add_argument("--out", default=None, help="Output path.")
    parent.add_argument("--config", default=None, help="JSON experiment config.")
    parent.add_argument("--verbose", action="store_true", help="Debug logging.")
    return parent


def flag(value: bool) -> str:
    return texts.YES if value else texts.NO


def join_floats(values: Iterable[float]) -> str:
    return " ".join(format_float(value) for value in values)


def write_json(path: str | Path, payload: Any) -> Path:
    target = Path(path)
    target.write_text(json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8", newline="\n")
    return target
