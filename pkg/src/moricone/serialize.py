"""JSON input/output for configurations and diagrams, DOT export, report rendering.

Rationals travel as ``"p/q"`` strings. Exported documents put one matrix row
per line so that export is byte-deterministic and diffs stay readable.
"""

from __future__ import annotations

import dataclasses
import json
import re
from enum import Enum
from fractions import Fraction
from importlib import resources
from math import inf
from typing import Any

from .config import Configuration, Kind
from .errors import InvalidConfiguration, MoriConeError, ParseError
from .lattice import GramMatrix, Signature
from .oriented import OrientedDiagram

_SURFACE_KEYS = {"name", "kind", "labels", "gram", "canonical", "k_squared", "meta"}
_CY3_KEYS = {"name", "kind", "labels", "t", "divisor_ids", "self_k", "rays", "meta"}


# --- scalars -----------------------------------------------------------------


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_scalar(v, where: str) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InvalidConfiguration(f"{where}: expected an integer or a \"p/q\" string, got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise InvalidConfiguration(f"{where}: {v!r} is not a rational number") from None


def _parse_int(v, where: str) -> int:
    x = _parse_scalar(v, where)
    if x.denominator != 1:
        raise InvalidConfiguration(f"{where}: {v!r} is not an integer")
    return int(x)


# --- line lookup -------------------------------------------------------------


def _line_at(text: str, pos: int) -> int:
    return text.count("\n", 0, pos) + 1


def _key_line(text: str, key: str, row: int | None = None) -> int | None:
    """Line of ``"key":`` in ``text``, or of its ``row``-th inner list."""
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    if m is None:
        return None
    if row is None:
        return _line_at(text, m.start())
    depth, seen, in_str, escaped = 0, -1, False, False
    for pos in range(m.end(), len(text)):
        ch = text[pos]
        if in_str:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            else:
                in_str = ch != '"'
            continue
        if ch == '"':
            in_str = True
        elif ch == "[":
            depth += 1
            if depth == 2:
                seen += 1
                if seen == row:
                    return _line_at(text, pos)
        elif ch == "]":
            depth -= 1
            if depth == 0:
                break
    return _line_at(text, m.start())


def _locate(text: str, message: str, default_key: str) -> int | None:
    m = re.search(r"\b(gram|t)\[(\d+)\]\[(\d+)\]", message)
    if m:
        return _key_line(text, m.group(1), int(m.group(2)))
    m = re.search(r"\bentry \((\d+),(\d+)\)", message)
    if m:
        return _key_line(text, default_key, int(m.group(1)))
    m = re.search(r"\b(self_k|canonical)\[(\d+)\]", message)
    if m:
        return _key_line(text, m.group(1))
    return _key_line(text, default_key)


# --- parsing -------------------------------------------------------------------


def parse_configuration(text: str) -> Configuration | OrientedDiagram:
    """Parse a JSON document into a surface configuration or an oriented diagram.

    Every failure raises :class:`ParseError` carrying the offending line.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object", 1)
    kind = doc.get("kind", "surface")
    if kind not in ("surface", "cy3"):
        raise ParseError(f"kind must be \"surface\" or \"cy3\", got {kind!r}", _key_line(text, "kind"))
    allowed = _SURFACE_KEYS if kind == "surface" else _CY3_KEYS
    for key in doc:
        if key not in allowed:
            raise ParseError(f"unknown field {key!r} for kind {kind!r}", _key_line(text, key))
    main = "gram" if kind == "surface" else "t"
    if main not in doc:
        raise ParseError(f"missing field {main!r}", 1)
    try:
        return _build_surface(doc) if kind == "surface" else _build_cy3(doc)
    except ParseError:
        raise
    except MoriConeError as exc:
        raise ParseError(str(exc), _locate(text, str(exc), main)) from None


def _matrix(doc: dict, key: str) -> list[list[Fraction]]:
    m = doc[key]
    if not isinstance(m, list) or not m or not all(isinstance(r, list) for r in m):
        raise InvalidConfiguration(f"{key}: expected a nonempty list of rows")
    return [[_parse_scalar(v, f"{key}[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(m)]


def _strings(doc: dict, key: str, n: int, prefix: str) -> tuple[str, ...]:
    if key not in doc:
        return tuple(f"{prefix}{i + 1}" for i in range(n))
    vals = doc[key]
    if not isinstance(vals, list) or not all(isinstance(v, str) for v in vals):
        raise InvalidConfiguration(f"{key}: expected a list of strings")
    return tuple(vals)


def _meta(doc: dict) -> dict:
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise InvalidConfiguration("meta: expected an object")
    return meta


def _build_surface(doc: dict) -> Configuration:
    rows = _matrix(doc, "gram")
    n = len(rows)
    canonical = None
    if doc.get("canonical") is not None:
        if not isinstance(doc["canonical"], list):
            raise InvalidConfiguration("canonical: expected a list")
        canonical = tuple(_parse_int(v, f"canonical[{i}]") for i, v in enumerate(doc["canonical"]))
    k2 = doc.get("k_squared")
    k2 = None if k2 is None else _parse_int(k2, "k_squared")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise InvalidConfiguration("name: expected a string")
    return Configuration(
        _strings(doc, "labels", n, "E"), GramMatrix(rows), canonical, Kind.SURFACE, name, k2, _meta(doc)
    )


def _build_cy3(doc: dict) -> OrientedDiagram:
    t = _matrix(doc, "t")
    m = len(t)
    self_k = doc.get("self_k", [1] * m)
    if not isinstance(self_k, list):
        raise InvalidConfiguration("self_k: expected a list")
    self_k = tuple(_parse_int(v, f"self_k[{i}]") for i, v in enumerate(self_k))
    rays = None
    if doc.get("rays") is not None:
        rays = tuple(tuple(r) for r in _matrix(doc, "rays"))
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise InvalidConfiguration("name: expected a string")
    return OrientedDiagram(
        _strings(doc, "labels", m, "R"), _strings(doc, "divisor_ids", m, "D"), t, self_k, name, rays, _meta(doc)
    )


def load_path(path: str) -> Configuration | OrientedDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_configuration(fh.read())


# --- export --------------------------------------------------------------------


def _scalar_json(v, as_string: bool) -> str:
    v = Fraction(v)
    if not as_string and v.denominator == 1:
        return str(v.numerator)
    return json.dumps(format_rational(v))


def _matrix_json(rows, as_string: bool) -> str:
    body = ",\n".join("    [" + ", ".join(_scalar_json(v, as_string) for v in r) + "]" for r in rows)
    return "[\n" + body + "\n  ]"


def _indent(text: str, pad: str) -> str:
    return text.replace("\n", "\n" + pad)


def export_json(obj: Configuration | OrientedDiagram) -> str:
    """Canonical JSON text; ``parse_configuration`` inverts it exactly."""
    fields: list[tuple[str, str]] = [("name", json.dumps(obj.name, ensure_ascii=False))]
    if isinstance(obj, Configuration):
        fields.append(("kind", '"surface"'))
        fields.append(("labels", json.dumps(list(obj.labels), ensure_ascii=False)))
        fields.append(("gram", _matrix_json(obj.gram.entries, as_string=not obj.gram.is_integral())))
        if obj.canonical is not None:
            fields.append(("canonical", json.dumps(list(obj.canonical))))
        if obj.k_squared is not None:
            fields.append(("k_squared", json.dumps(obj.k_squared)))
    else:
        fields.append(("kind", '"cy3"'))
        fields.append(("labels", json.dumps(list(obj.labels), ensure_ascii=False)))
        fields.append(("divisor_ids", json.dumps(list(obj.divisor_ids), ensure_ascii=False)))
        fields.append(("self_k", json.dumps(list(obj.self_k))))
        fields.append(("t", _matrix_json(obj.t, as_string=True)))
        if obj.rays is not None:
            fields.append(("rays", _matrix_json(obj.rays, as_string=True)))
    if obj.meta:
        fields.append(("meta", _indent(json.dumps(obj.meta, indent=2, sort_keys=True, ensure_ascii=False), "  ")))
    return "{\n" + ",\n".join(f'  "{k}": {v}' for k, v in fields) + "\n}\n"


def _dot_id(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def export_dot(obj: Configuration | OrientedDiagram) -> str:
    """DOT text: an undirected graph for surfaces (black fill iff ``E^2 = -2``),
    a digraph with one weighted edge per arrow for oriented diagrams.
    """
    name = _dot_id(obj.name or "G")
    if isinstance(obj, Configuration):
        lines = [f"graph {name} {{", "  node [shape=circle, style=filled];"]
        for i, lab in enumerate(obj.labels):
            e2 = obj.gram[i, i]
            fill, font = ("black", "white") if e2 == -2 else ("white", "black")
            lines.append(f"  {_dot_id(lab)} [label={_dot_id(format_rational(e2))}, fillcolor={fill}, fontcolor={font}];")
        for i in range(obj.dim):
            for j in range(i + 1, obj.dim):
                w = obj.gram[i, j]
                if w > 0:
                    attr = "" if w == 1 else f" [label={_dot_id(format_rational(w))}]"
                    lines.append(f"  {_dot_id(obj.labels[i])} -- {_dot_id(obj.labels[j])}{attr};")
    else:
        lines = [f"digraph {name} {{", "  node [shape=circle];"]
        for i, lab in enumerate(obj.labels):
            lines.append(f"  {_dot_id(lab)} [xlabel={_dot_id(obj.divisor_ids[i])}];")
        for i in range(obj.size):
            for j in range(obj.size):
                if obj.arrow(i, j):
                    lines.append(
                        f"  {_dot_id(obj.labels[i])} -> {_dot_id(obj.labels[j])} [label={_dot_id(format_rational(obj.t[i][j]))}];"
                    )
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- reports -------------------------------------------------------------------


def to_data(obj: Any) -> Any:
    """Plain JSON-ready data: rationals become exact strings, enums their values."""
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, float):
        if obj == inf:
            return "inf"
        if obj.is_integer():
            return int(obj)
        return obj
    if isinstance(obj, Signature):
        return str(obj)
    if isinstance(obj, GramMatrix):
        return [[to_data(v) for v in r] for r in obj.entries]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_data(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {_key(k): to_data(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_data(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_inline(x)}" for k, x in v.items()) + "}"
    if v is True:
        return "yes"
    if v is False:
        return "no"
    if v is None:
        return "-"
    return str(v)


def _text_lines(data, pad: str) -> list[str]:
    out = []
    for k, v in data.items():
        if isinstance(v, dict) and v:
            out.append(f"{pad}{k}:")
            out.extend(_text_lines(v, pad + "  "))
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            out.append(f"{pad}{k}:")
            for x in v:
                out.append(f"{pad}  - {_inline(x)}")
        else:
            out.append(f"{pad}{k}: {_inline(v)}")
    return out


def render_report(report: Any, fmt: str = "text") -> str:
    """Render a report object or mapping as text or JSON, deterministically."""
    data = to_data(report)
    if not isinstance(data, dict):
        data = {"result": data}
    if fmt == "json":
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    return "\n".join(_text_lines(data, "")) + "\n"


def report_schema() -> dict:
    return json.loads(resources.files("moricone").joinpath("report.schema.json").read_text(encoding="utf-8"))
