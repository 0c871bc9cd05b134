"""JSON code files: parsing, validation and canonical serialization.

Matrix codes::

    {"kind": "matrix", "q": 2, "n": 2, "m": 3,
     "generators": [[[1, 0, 0], [0, 1, 0]], ...]}

Vector codes (entries are ascending coefficient arrays over GF(q))::

    {"kind": "vector", "q": 2, "m": 3, "modulus": [1, 1, 0, 1], "n": 2,
     "generators": [[[1, 0, 0], [0, 1, 0]]]}
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import RmlError
from .fields import DEFAULT_MODULI, ExtField, FieldBasis, PrimeField, first_irreducible, is_prime, orthogonal_basis
from .matrix_codes import MatrixCode
from .vector_codes import VectorCode

KINDS = ("matrix", "vector")


class CodeFileError(RmlError, ValueError):
    """A malformed code file; ``line`` points at the offending key when known."""

    def __init__(self, message: str, line: int | None = None, source: str = "<string>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}" if line else source
        super().__init__(f"{where}: {message}")


def _line_of(text: str, key: str) -> int | None:
    needle = f'"{key}"'
    for no, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return no
    return None


def _int(doc: dict, key: str, text: str, source: str, lo: int = 1) -> int:
    if key not in doc:
        raise CodeFileError(f"missing field {key!r}", None, source)
    v = doc[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < lo:
        raise CodeFileError(f"field {key!r} must be an integer >= {lo}", _line_of(text, key), source)
    return v


def parse_code(text: str, source: str = "<string>") -> MatrixCode | VectorCode:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise CodeFileError(f"invalid JSON: {e.msg}", e.lineno, source) from None
    if not isinstance(doc, dict):
        raise CodeFileError("top level must be an object", 1, source)
    kind = doc.get("kind")
    if kind not in KINDS:
        raise CodeFileError(f"'kind' must be one of {KINDS}", _line_of(text, "kind"), source)
    q = _int(doc, "q", text, source, lo=2)
    n = _int(doc, "n", text, source)
    m = _int(doc, "m", text, source)
    gens = doc.get("generators", [])
    gline = _line_of(text, "generators")
    if not isinstance(gens, list):
        raise CodeFileError("'generators' must be a list", gline, source)

    if kind == "matrix":
        if not is_prime(q):
            raise CodeFileError(
                f"matrix codes need a prime q (got {q}); use a vector code for extension entries",
                _line_of(text, "q"), source)
        try:
            arr = np.array(gens, dtype=np.int64).reshape(len(gens), n, m) if gens else np.zeros((0, n, m), np.int64)
        except (ValueError, TypeError):
            raise CodeFileError(f"every generator must be a grid of {n} rows and {m} columns", gline, source) from None
        if arr.size and (arr.min() < 0 or arr.max() >= q):
            raise CodeFileError(f"matrix entries must lie in 0..{q - 1}", gline, source)
        return MatrixCode(n, m, PrimeField(q), arr.reshape(len(gens), n * m))

    if not is_prime(q):
        raise CodeFileError(f"the base field order q must be prime (got {q})", _line_of(text, "q"), source)
    modulus = doc.get("modulus")
    try:
        F = ExtField(q, m, modulus)
    except (RmlError, ValueError, TypeError) as e:
        raise CodeFileError(str(e), _line_of(text, "modulus") or _line_of(text, "m"), source) from None
    try:
        arr = np.array(gens, dtype=np.int64).reshape(len(gens), n, m) if gens else np.zeros((0, n, m), np.int64)
    except (ValueError, TypeError):
        raise CodeFileError(
            f"every generator must be a row of {n} entries, each a length-{m} coefficient array",
            gline, source) from None
    if arr.size and (arr.min() < 0 or arr.max() >= q):
        raise CodeFileError(f"coefficients must lie in 0..{q - 1}", gline, source)
    place = q ** np.arange(m, dtype=np.int64)
    return VectorCode(n, F, arr @ place)


def load_code(path: str | Path) -> MatrixCode | VectorCode:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise CodeFileError(f"cannot read file: {e.strerror}", None, str(p)) from None
    return parse_code(text, str(p))


def code_to_dict(code: MatrixCode | VectorCode) -> dict:
    """Canonical document: generators are the RREF basis of the code."""
    if isinstance(code, MatrixCode):
        return {
            "kind": "matrix",
            "q": code.q,
            "n": code.n,
            "m": code.m,
            "generators": code.matrices.tolist(),
        }
    F = code.field
    default = DEFAULT_MODULI.get((F.p, F.m)) or first_irreducible(F.p, F.m)
    doc = {"kind": "vector", "q": F.p, "m": F.m}
    if tuple(F.modulus) != default:
        doc["modulus"] = list(F.modulus)
    doc["n"] = code.n
    doc["generators"] = F.digits[code.gen].tolist()
    return doc


def dump_code(code: MatrixCode | VectorCode) -> str:
    """Code file text with one generator per line."""
    doc = code_to_dict(code)
    head = ", ".join(f"{json.dumps(k)}: {json.dumps(v)}" for k, v in doc.items() if k != "generators")
    gens = ",\n".join("    " + json.dumps(g) for g in doc["generators"])
    body = f"[\n{gens}\n  ]" if gens else "[]"
    return f'{{{head},\n  "generators": {body}\n}}\n'


def parse_basis(spec: str | None, field: ExtField) -> FieldBasis:
    """``power`` (default), ``dual`` (orthogonal to the power basis), or a JSON
    list of coefficient arrays such as ``[[1,0,0],[0,0,1],[0,1,0]]``."""
    if spec in (None, "", "power"):
        return FieldBasis.power(field)
    if spec == "dual":
        return orthogonal_basis(FieldBasis.power(field))
    try:
        coeffs = json.loads(spec)
        codes = field.encode(np.array(coeffs, dtype=np.int64).reshape(field.m, field.m))
    except (json.JSONDecodeError, ValueError, TypeError):
        raise CodeFileError(
            f"--basis must be 'power', 'dual' or {field.m} coefficient arrays of length {field.m}",
            None, "--basis") from None
    return FieldBasis.of(field, codes)
