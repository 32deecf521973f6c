"""Identity catalogue: one line per identity,

    id | anchor | domain | samples | tol

``samples`` is a ``;``-separated list of points, each a ``,``-separated list
of ``name=value`` pairs.  Blank lines and lines starting with ``#`` are
ignored.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping

from .errors import ParseError
from .identities import IdentityId

__all__ = ["CatalogueEntry", "load_catalogue", "parse_catalogue", "serialize_catalogue",
           "default_catalogue", "default_entry", "DEFAULT_CATALOGUE"]

DEFAULT_CATALOGUE = "identities.catalogue"
HEADER = "# id | anchor | domain | samples | tol"
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class CatalogueEntry:
    id: IdentityId
    anchor: str
    domain: str
    samples: tuple[Mapping[str, float], ...]
    tolerance: float


def format_number(x: float) -> str:
    """Shortest round-tripping text for ``x``: integers without a decimal
    point, exponents without padding zeros."""
    x = float(x)
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    text = repr(x)
    return re.sub(r"e([+-])0*(\d)", lambda m: "e" + ("-" if m.group(1) == "-" else "") + m.group(2),
                  text)


def _parse_number(text: str, line: int, what: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"{what}: {text!r} is not a number", line) from None
    if not math.isfinite(value):
        raise ParseError(f"{what}: {text!r} is not finite", line)
    return value


def _parse_samples(text: str, line: int) -> tuple[dict[str, float], ...]:
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            raise ParseError("empty sample point", line)
        point: dict[str, float] = {}
        for pair in chunk.split(","):
            name, sep, value = pair.partition("=")
            name = name.strip()
            if not sep or not _NAME.match(name):
                raise ParseError(f"malformed sample entry {pair.strip()!r}", line)
            if name in point:
                raise ParseError(f"sample entry {name!r} repeated", line)
            point[name] = _parse_number(value.strip(), line, f"sample {name}")
        points.append(point)
    return tuple(points)


def parse_catalogue(text: str) -> list[CatalogueEntry]:
    """Parse catalogue text.

    Raises
    ------
    ParseError
        On malformed lines, unknown or duplicate ids, or tolerances ≤ 0.
    """
    entries: list[CatalogueEntry] = []
    seen: set[IdentityId] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != 5:
            raise ParseError(f"expected 5 '|'-separated fields, found {len(fields)}", lineno)
        ident_text, anchor, domain, samples, tol_text = fields
        try:
            ident = IdentityId(ident_text)
        except ValueError:
            raise ParseError(f"unknown identity id {ident_text!r}", lineno) from None
        if ident in seen:
            raise ParseError(f"duplicate identity id {ident_text!r}", lineno)
        tol = _parse_number(tol_text, lineno, "tolerance")
        if tol <= 0:
            raise ParseError(f"tolerance must be > 0, got {tol_text}", lineno)
        seen.add(ident)
        entries.append(CatalogueEntry(ident, anchor, domain, _parse_samples(samples, lineno), tol))
    return entries


def load_catalogue(path: str | Path | None = None) -> list[CatalogueEntry]:
    """Load and validate a catalogue file; ``None`` loads the shipped one."""
    if path is None:
        text = resources.files("unibessel").joinpath("data").joinpath(DEFAULT_CATALOGUE).read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return parse_catalogue(text)


def serialize_catalogue(entries: list[CatalogueEntry]) -> str:
    """Canonical text form; ``parse_catalogue`` inverts it."""
    lines = [HEADER]
    for e in entries:
        samples = "; ".join(",".join(f"{k}={format_number(v)}" for k, v in pt.items())
                            for pt in e.samples)
        lines.append(" | ".join([e.id.value, e.anchor, e.domain, samples,
                                 format_number(e.tolerance)]))
    return "\n".join(lines) + "\n"


@lru_cache(maxsize=1)
def default_catalogue() -> dict[IdentityId, CatalogueEntry]:
    return {e.id: e for e in load_catalogue()}


def default_entry(ident: IdentityId) -> CatalogueEntry:
    try:
        return default_catalogue()[ident]
    except KeyError:
        raise ParseError(f"shipped catalogue has no entry for {ident.value}") from None
