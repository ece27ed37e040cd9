"""Code files: JSON or CSV for spherical codes, sorted hex lines for binary codes."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from ..spherecode import BinaryCode, SphericalCode, cosine_set, fraction_str


def code_to_json(code: SphericalCode, construction: dict | None = None) -> str:
    doc = {
        "name": code.name,
        "dimension": code.dim,
        "norm_squared": code.norm_sq,
        "vectors": [list(v) for v in code.vectors],
        "cosines": [fraction_str(q) for q in cosine_set(code)],
        "construction": construction or {},
    }
    return json.dumps(doc, indent=1, default=str)


def code_to_csv(code: SphericalCode) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(code.vectors)
    return buf.getvalue()


def write_code(code: SphericalCode, path: str | Path, fmt: str = "json",
               construction: dict | None = None) -> None:
    text = code_to_json(code, construction) if fmt == "json" else code_to_csv(code)
    Path(path).write_text(text)


def read_code(path: str | Path) -> SphericalCode:
    path = Path(path)
    text = path.read_text()
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        code = SphericalCode(doc["vectors"], doc.get("name", ""))
        if "norm_squared" in doc and doc["norm_squared"] != code.norm_sq:
            raise ValueError("norm_squared does not match the vectors")
        return code
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    return SphericalCode(([int(x) for x in r] for r in rows), path.stem)


def binary_to_text(b: BinaryCode) -> str:
    return "".join(line + "\n" for line in b.hex_lines())


def read_binary(path: str | Path, length: int = 16) -> BinaryCode:
    words = [int(line, 16) for line in Path(path).read_text().split()]
    return BinaryCode(length, words)
