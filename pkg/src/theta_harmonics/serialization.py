"""Result documents: a versioned JSON envelope plus TSV renderings.

Documents are plain dicts.  Integers that a double cannot hold exactly are
stored as decimal strings so every JSON reader sees the exact value.
"""

from __future__ import annotations

import json
from typing import Any

SCHEMA_VERSION = 1
_SAFE_INT = 2**53


def jsonable(obj: Any) -> Any:
    """Recursively convert tuples to lists and big ints to decimal strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > _SAFE_INT else obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return jsonable(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def result_document(command: str, inputs: dict, outputs: dict, methods_run, agreement) -> dict:
    return jsonable({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "methods_run": list(methods_run),
        "agreement": agreement,
    })


def encode_document(doc: dict) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(jsonable(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def decode_document(text: str) -> dict:
    return json.loads(text)


def as_int(value) -> int:
    """Read back an integer written by :func:`jsonable`."""
    return int(value)


def _join(seq) -> str:
    return ",".join(str(x) for x in seq)


def _flag(value) -> str:
    return "-" if value is None else ("yes" if value else "no")


def render_tsv(doc: dict) -> str:
    """TSV view of a result document, chosen by its command."""
    renderer = _TSV.get(doc["command"])
    if renderer is None:
        raise ValueError(f"no TSV rendering for command {doc['command']!r}")
    lines = renderer(doc)
    return "\n".join(lines) + "\n"


def _tsv_mult(doc):
    out = doc["outputs"]
    label = out["label"]
    lines = [f"# r={doc['inputs']['r']}\tz={_join(label['z'])}\ts={_join(label['s'])}"]
    if out["ray"] is None:
        lines.append("# no ray: r does not divide sum(z); multiplicity is 0 in every degree")
    else:
        lines.append(f"# ray base={_join(out['ray']['base'])}; every degree off this ray has multiplicity {out['off_ray_multiplicity']}")
    if "total" in out:
        lines.append(f"# total={out['total']}")
    lines.append("t\tn\tmultiplicity\tmethod\tagreement\treason")
    for row in out["rows"]:
        n = "-" if row["n"] is None else _join(row["n"])
        lines.append(f"{row['t']}\t{n}\t{row['multiplicity']}\t{row['method']}\t{_flag(row['agreement'])}\t{row['reason']}")
    return lines


def _tsv_decompose(doc):
    out = doc["outputs"]
    lines = [
        f"# n={_join(out['n'])}\tz={_join(out['z'])}",
        f"# total_dimension={out['total_dimension']}",
        "z\ts\tmultiplicity\tdimension",
    ]
    for c in out["components"]:
        lines.append(f"{_join(c['z'])}\t{_join(c['s'])}\t{c['multiplicity']}\t{c['dimension']}")
    return lines


def _tsv_character(doc):
    out = doc["outputs"]
    lines = [f"# chi({out['kind']}_n) n={_join(out['n'])} method={out['method']}", f"# dimension={out['dimension']}"]
    if out["basis"] == "laurent":
        lines.append("exponent\tcoefficient")
        lines += [f"{_join(t['exponent'])}\t{t['coefficient']}" for t in out["terms"]]
    else:
        lines.append("p\tmultiplicity")
        lines += [f"{_join(t['p'])}\t{t['multiplicity']}" for t in out["irreps"]]
    return lines


def _tsv_verify(doc):
    lines = ["check\tpassed\tcases\tcounterexample"]
    for c in doc["outputs"]["checks"]:
        cex = "-" if c["counterexample"] is None else json.dumps(c["counterexample"], sort_keys=True)
        lines.append(f"{c['name']}\t{_flag(c['passed'])}\t{c['cases']}\t{cex}")
    return lines


_TSV = {
    "mult": _tsv_mult,
    "decompose": _tsv_decompose,
    "character": _tsv_character,
    "verify": _tsv_verify,
}
