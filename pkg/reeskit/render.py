"""
Output formats: json, text and latex.

Every command produces a pydantic model; the renderers only walk its
`model_dump(mode="json")`.
"""

import json
import re
from typing import Any, Iterator, List

from pydantic import BaseModel

from .exceptions import ValidationError

_SUBSCRIPT = re.compile(r"(\\gamma|[A-Za-z]+)(\d+)")


def render(model: BaseModel, fmt: str = "json") -> str:
    """Render a report model in one of the supported formats."""
    data = model.model_dump(mode="json", exclude_none=True)
    if fmt == "json":
        return json.dumps(data, indent=2, ensure_ascii=False)
    if fmt == "text":
        return "\n".join(_text_lines(data, 0))
    if fmt == "latex":
        return render_latex(data)
    raise ValidationError(f"Unknown output format {fmt!r}")


def _inline(value: Any) -> str:
    if isinstance(value, list):
        if all(isinstance(x, (int, str)) for x in value):
            return "(" + ",".join(str(x) for x in value) + ")"
        return " ".join(_inline(x) for x in value)
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _text_lines(data: Any, depth: int) -> Iterator[str]:
    pad = "  " * depth
    for key, value in data.items():
        name = key.replace("_", " ")
        if isinstance(value, dict):
            yield f"{pad}{name}:"
            yield from _text_lines(value, depth + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            yield f"{pad}{name}:"
            for item in value:
                if "equation" in item:
                    yield f"{pad}  {item['equation']}"
                else:
                    yield from _text_lines(item, depth + 1)
        elif isinstance(value, list) and value and isinstance(value[0], str) and key != "alpha_terms":
            yield f"{pad}{name}:"
            for item in value:
                yield f"{pad}  {item}"
        else:
            yield f"{pad}{name}: {_inline(value)}"


def latex_label(text: str) -> str:
    """γ2 -> \\gamma_{2}, v1 -> v_{1}, X3 -> X_{3}."""
    return _SUBSCRIPT.sub(r"\1_{\2}", text.replace("γ", "\\gamma"))


def _equations(data: Any, path: str) -> Iterator[tuple]:
    if isinstance(data, dict):
        if "equation" in data:
            yield path, data["equation"]
        for key, value in data.items():
            yield from _equations(value, f"{path}.{key}" if path else key)
    elif isinstance(data, list):
        for item in data:
            yield from _equations(item, path)


def render_latex(data: dict) -> str:
    """Hyperplane lists as align* blocks, generators as TikZ coordinates, the rest as comments."""
    lines: List[str] = []
    groups: dict = {}
    for path, equation in _equations(data, ""):
        groups.setdefault(path, []).append(equation)
    for path, equations in groups.items():
        lines.append(f"% {path}")
        lines.append("\\begin{align*}")
        rows = []
        for equation in equations:
            lhs, rhs = equation.split("=")
            rows.append(f"  {latex_label(lhs)} &= {rhs}")
        lines.append("\\\\\n".join(rows))
        lines.append("\\end{align*}")
    for key, value in data.items():
        if isinstance(value, dict) and "generators" in value and "dim" in value:
            points = " ".join(f"({','.join(g)})" for g in value["generators"])
            lines.append(f"% {key} generators")
            lines.append(f"\\draw plot coordinates {{{points}}};")
        elif not isinstance(value, (dict, list)) or (
            isinstance(value, list) and not any(isinstance(x, dict) for x in value)
        ):
            lines.append(f"% {key}: {latex_label(_inline(value))}")
    return "\n".join(lines)
