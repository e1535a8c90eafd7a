"""Input loading, built-in named inputs and deterministic rendering."""

from __future__ import annotations

import json
from pathlib import Path

from .mackey import (
    GreenZ2,
    HermitianMackey,
    MackeyZ2,
    burnside,
    burnside_hermitian,
    burnside_mackey,
    hermitian_from_json,
    mackey_from_json,
)
from .mackey.core import hermitian_from_ring
from .ringalg import FinMonoid, PresRing, builtin_monoid, integers, monoid_from_json, residue_ring, ring_from_json


class InputError(ValueError):
    """Malformed input: unreadable file, bad JSON or a schema mismatch."""


class UnsupportedError(ValueError):
    """A well-formed request outside what the engine handles."""


BUILTIN_RINGS = {"Z": integers, "F2": lambda: residue_ring(2), "F3": lambda: residue_ring(3), "F5": lambda: residue_ring(5)}
BUILTIN_GROUPS = ["c2", "c3", "s3", "c2xc2"]


def _key(name: str) -> str:
    k = name.strip()
    return k.upper() if k.lower() in ("z", "f2", "f3", "f5") else k.lower()


def read_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise InputError(f"{path}: top level must be an object")
    return obj


def _parse(kind: str, fn, obj):
    try:
        return fn(obj)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"{kind} input does not match its schema: {exc}") from exc


def builtin_ring(name: str) -> PresRing:
    k = _key(name)
    if k not in BUILTIN_RINGS:
        raise InputError(f"unknown ring {name!r}; built-ins are {', '.join(BUILTIN_RINGS)}")
    return BUILTIN_RINGS[k]()


def builtin_hermitian(name: str) -> HermitianMackey:
    k = _key(name)
    if k == "burnside":
        return burnside_hermitian()
    return hermitian_from_ring(builtin_ring(k))


def builtin_mackey(name: str) -> MackeyZ2:
    if _key(name) == "burnside":
        return burnside_mackey()
    return builtin_hermitian(name).mackey


def builtin_group(name: str) -> FinMonoid:
    try:
        return builtin_monoid(name)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def load_object(path: str | Path):
    """Read a JSON input and build the object named by its ``kind``."""
    obj = read_json(path)
    kind = obj.get("kind")
    loaders = {
        "ring": ring_from_json,
        "monoid": monoid_from_json,
        "mackey": mackey_from_json,
        "hermitian": hermitian_from_json,
        "green": green_from_json,
    }
    if kind not in loaders:
        raise InputError(f"{path}: 'kind' must be one of {', '.join(sorted(loaders))}")
    return kind, _parse(kind, loaders[kind], obj)


def green_from_json(obj: dict) -> GreenZ2:
    return GreenZ2(mackey_from_json(obj), ring_from_json(obj["ring_e"]), ring_from_json(obj["ring_fix"]))


def resolve_hermitian(base: str, path: str | None) -> HermitianMackey:
    if _key(base) == "file":
        if not path:
            raise InputError("--base file needs --input")
        kind, value = load_object(path)
        if kind == "ring":
            try:
                return hermitian_from_ring(value)
            except ValueError as exc:
                raise UnsupportedError(str(exc)) from exc
        if kind != "hermitian":
            raise InputError(f"expected a ring or Hermitian Mackey input, got {kind}")
        return value
    return builtin_hermitian(base)


def resolve_mackey(spec: str) -> MackeyZ2:
    if Path(spec).suffix == ".json" or Path(spec).exists():
        kind, value = load_object(spec)
        if kind == "mackey":
            return value
        if kind in ("hermitian", "green"):
            return value.mackey
        raise InputError(f"{spec}: expected a Mackey functor, got {kind}")
    return builtin_mackey(spec)


def resolve_group(name: str | None, path: str | None) -> FinMonoid:
    if path:
        kind, value = load_object(path)
        if kind != "monoid":
            raise InputError(f"expected a monoid input, got {kind}")
        return value
    if not name:
        raise InputError("a group is required (--group NAME or --input FILE)")
    return builtin_group(name)


def dumps(obj) -> str:
    """Byte-stable JSON: sorted keys, two-space indent, arrays of scalars on
    one line."""
    return _dump(obj, 0) + "\n"


def _dump(obj, level: int) -> str:
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_dump(obj[k], level + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(x, (dict, list, tuple)) for x in obj):
            return "[" + ", ".join(json.dumps(x) for x in obj) + "]"
        return "[\n" + ",\n".join(inner + _dump(x, level + 1) for x in obj) + "\n" + pad + "]"
    return json.dumps(obj)


def render_text(obj, indent: int = 0) -> str:
    """Plain-text rendering of a report dictionary."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if _is_scalar_list(v) or not isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}: {_fmt(v)}")
            elif _is_matrix(v):
                lines.append(f"{pad}{k}:")
                lines += _matrix_lines(v, indent + 1)
            else:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _is_scalar_list(v):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_fmt(v)}")
    else:
        lines.append(f"{pad}{_fmt(obj)}")
    return "\n".join(line for line in lines if line != "")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _is_scalar_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _is_matrix(v) -> bool:
    return isinstance(v, list) and v and all(_is_scalar_list(r) and all(isinstance(x, int) for x in r) for r in v)


def _matrix_lines(rows, indent: int) -> list[str]:
    pad = "  " * indent
    width = max((len(str(x)) for r in rows for x in r), default=1)
    return [pad + " ".join(str(x).rjust(width) for x in r) for r in rows]


def table_text(headers: list[str], rows: list[list]) -> str:
    """Aligned columns."""
    cells = [headers] + [[_fmt(x) for x in r] for r in rows]
    widths = [max(len(str(r[i])) for r in cells) for i in range(len(headers))]
    return "\n".join("  ".join(str(c).rjust(w) for c, w in zip(r, widths)) for r in cells)


__all__ = [
    "InputError",
    "UnsupportedError",
    "builtin_ring",
    "builtin_hermitian",
    "builtin_mackey",
    "builtin_group",
    "burnside",
    "load_object",
    "resolve_hermitian",
    "resolve_mackey",
    "resolve_group",
    "dumps",
    "render_text",
    "table_text",
]
