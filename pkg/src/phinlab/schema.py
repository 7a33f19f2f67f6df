"""JSON ingestion with field-path errors, and report serialization.

Input side: parse_module turns the one shared JSON shape into a validated
module, naming the offending field path on any violation. Numbers arrive
as rational strings or ints; floats are rejected outright.

Output side: every report dict produced here contains only strings, ints,
bools, lists and dicts, with all rationals rendered as strings, so
json.dumps with sorted keys is byte-stable across runs and backends.
"""

import json

from .errors import InputError, SchemaError
from .linalg import Matrix
from .modules import FieldDescriptor, build_module
from .scalars import PAdicValuation, parse_rational
from .weil_deligne import Segment

__all__ = [
    "load_json",
    "parse_module",
    "rational_str",
    "matrix_json",
    "valuation_json",
    "twisted_json",
    "segments_json",
    "character_json",
    "partition_function_json",
    "admissibility_json",
    "integrality_json",
    "consistency_json",
    "wd_json",
]


def load_json(text):
    """json.loads with decode errors rewritten to carry the position."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError("", f"malformed JSON at line {err.lineno} column {err.colno}: {err.msg}")


def _key(path, name):
    return f"{path}.{name}" if path else str(name)


def _need(obj, name, path):
    if name not in obj:
        raise SchemaError(path, f"missing required field '{name}'")
    return obj[name]


def _as_int(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, f"expected an integer, got {value!r}")
    return value


def _as_rational(value, path):
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(path, f"numbers must be ints or rational strings, got {value!r}")
    if isinstance(value, int):
        return parse_rational(str(value))
    if isinstance(value, str):
        try:
            return parse_rational(value)
        except (InputError, ValueError) as err:
            raise SchemaError(path, str(err))
    raise SchemaError(path, f"expected a rational, got {type(value).__name__}")


def _as_matrix(value, n, path):
    if not isinstance(value, list) or len(value) != n:
        raise SchemaError(path, f"expected a list of {n} rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(_key(path, i), f"expected a list of {n} entries")
        rows.append([_as_rational(x, _key(_key(path, i), j)) for j, x in enumerate(row)])
    return Matrix(rows)


def _reject_unknown(obj, allowed, path):
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise SchemaError(path or "<root>", f"unknown fields {extra}")


def parse_field(obj, path="field"):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    _reject_unknown(obj, {"p", "f0", "e", "f", "embeddings", "degree_factor"}, path)
    p = _as_int(_need(obj, "p", path), _key(path, "p"))
    kwargs = {}
    for name in ("f0", "e", "f", "degree_factor"):
        if name in obj:
            kwargs[name] = _as_int(obj[name], _key(path, name))
    if "embeddings" in obj:
        emb = obj["embeddings"]
        if not isinstance(emb, list) or not all(isinstance(x, str) for x in emb):
            raise SchemaError(_key(path, "embeddings"), "expected a list of strings")
        kwargs["embeddings"] = tuple(emb)
    try:
        return FieldDescriptor(p=p, **kwargs)
    except InputError as err:
        raise SchemaError(path, str(err))


def parse_module(obj):
    """The shared input shape used by every file-driven subcommand."""
    if not isinstance(obj, dict):
        raise SchemaError("<root>", "expected a JSON object")
    _reject_unknown(obj, {"field", "n", "phi", "monodromy", "filtration"}, "")
    field = parse_field(_need(obj, "field", ""))
    n = _as_int(_need(obj, "n", ""), "n")
    if n < 1:
        raise SchemaError("n", f"rank must be positive, got {n}")
    phi = _as_matrix(_need(obj, "phi", ""), n, "phi")
    monodromy = _as_matrix(_need(obj, "monodromy", ""), n, "monodromy")
    raw_filtration = _need(obj, "filtration", "")
    if not isinstance(raw_filtration, dict):
        raise SchemaError("filtration", "expected an object keyed by embedding label")
    filtration = {}
    for label, body in raw_filtration.items():
        fpath = _key("filtration", label)
        if not isinstance(body, dict):
            raise SchemaError(fpath, "expected an object with 'flag' and 'jumps'")
        _reject_unknown(body, {"flag", "jumps"}, fpath)
        flag = _as_matrix(_need(body, "flag", fpath), n, _key(fpath, "flag"))
        raw_jumps = _need(body, "jumps", fpath)
        if not isinstance(raw_jumps, list) or len(raw_jumps) != n:
            raise SchemaError(_key(fpath, "jumps"), f"expected a list of {n} integers")
        jumps = [_as_int(x, _key(_key(fpath, "jumps"), i)) for i, x in enumerate(raw_jumps)]
        filtration[label] = (flag, jumps)
    return build_module(field, n, phi, monodromy, filtration)


# ---------------------------------------------------------------------------
# report serialization


def rational_str(x):
    return str(x)


def matrix_json(m):
    return [[rational_str(x) for x in row] for row in m.rows]


def valuation_json(v):
    if isinstance(v, PAdicValuation):
        return "inf" if v.is_infinite else v.value
    return int(v)


def twisted_json(t):
    """Rational string when the uniformizer power folds, a pair otherwise."""
    if t.is_rational:
        return rational_str(t.rational())
    return {"coeff": rational_str(t.coeff), "pi_exp": t.pi_exp}


def segments_json(segments):
    return [{"chi": rational_str(s.chi), "len": s.length} for s in segments]


def character_json(psi):
    return [rational_str(v) for v in psi]


def partition_function_json(pf):
    return {label: list(pf[label].parts) for label in pf.labels}


def admissibility_json(report):
    out = {
        "admissible": report.admissible,
        "t_h": rational_str(report.t_h),
        "t_n": rational_str(report.t_n),
        "subspaces_checked": report.subspaces_checked,
        "mode": report.mode,
        "witness": None,
    }
    if report.witness is not None:
        w = report.witness
        basis = [] if w.subspace.dim == 0 else matrix_json(w.subspace.matrix())
        out["witness"] = {
            "dim": w.subspace.dim,
            "basis": basis,
            "t_h": rational_str(w.t_h),
            "t_n": rational_str(w.t_n),
        }
    return out


def integrality_json(report):
    return {
        "admissible": report["admissible"],
        "warning": report["warning"],
        "passed": report["passed"],
        "rows": [
            {
                "r": row["r"],
                "value": twisted_json(row["value"]),
                "valuation": valuation_json(row["valuation"]),
                "integral": row["integral"],
            }
            for row in report["rows"]
        ],
    }


def consistency_json(report):
    out = {
        "status": report["status"],
        "q": report["q"],
        "segments": segments_json(report["segments"]),
        "linked_pair": list(report["linked_pair"]) if report["linked_pair"] else None,
        "conventions": report["conventions"],
        "rows": [
            {
                "r": row["r"],
                "hecke": twisted_json(row["hecke"]),
                "galois": twisted_json(row["galois"]),
                "equal": row["equal"],
                "valuation": valuation_json(row["valuation"]),
            }
            for row in report["rows"]
        ],
    }
    if "psi" in report:
        out["psi"] = character_json(report["psi"])
    return out


def wd_json(w, partition=None):
    out = {
        "q": w.q,
        "n": w.n,
        "frobenius": matrix_json(w.frobenius),
        "monodromy": matrix_json(w.monodromy),
    }
    if partition is not None:
        out["partition"] = partition_function_json(partition)
    return out
