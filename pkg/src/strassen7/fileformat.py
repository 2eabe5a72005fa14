"""Interchange formats: the JSON decomposition file and the plain-text
matrix file.

Scalars travel in their canonical text form ("p/q" reduced with positive
denominator, or a bare integer; prime-field residues as decimals in
[0, p)).  Parsing validates structure and scalar syntax only; whether the
decomposition actually multiplies matrices is the verifier's job.
"""

from __future__ import annotations

import json

from .construction import BilinearDecomposition, Provenance, Term
from .engine import MatN
from .fields import Field, ScalarFormatError, parse_field, require_exact
from .linalg import ColVec2, Mat2

FORMAT_VERSION = "1"


class MalformedFileError(ValueError):
    """The file's structure does not match the format."""


def _scalar_strings(field: Field, elements) -> list:
    return [field.format_scalar(e) for e in elements]


def serialize(dec: BilinearDecomposition) -> str:
    """Canonical text of a decomposition: stable key order, terms in
    derivation order."""
    require_exact(dec.field, "serialization")
    field = dec.field
    doc: dict = {
        "format_version": FORMAT_VERSION,
        "field": field.name,
        "rank": dec.rank,
        "terms": [
            {
                "u": _scalar_strings(field, t.u_coeffs),
                "v": _scalar_strings(field, t.v_coeffs),
                "W": _scalar_strings(field, t.w.flatten()),
            }
            for t in dec.terms
        ],
    }
    if dec.provenance is not None:
        doc["provenance"] = {
            "D": _scalar_strings(field, dec.provenance.d.flatten()),
            "u_vector": _scalar_strings(field, [dec.provenance.u.x, dec.provenance.u.y]),
        }
    return json.dumps(doc, indent=2) + "\n"


def _parse_scalar_list(field: Field, values, count: int, where: str) -> list:
    if not isinstance(values, list) or len(values) != count:
        raise MalformedFileError(f"{where} must be a list of {count} scalars")
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (str, int)):
            raise MalformedFileError(f"{where} holds a non-scalar entry {v!r}")
        out.append(field.parse_scalar(str(v)))
    return out


def parse(text: str) -> BilinearDecomposition:
    """Parse and validate a decomposition file.

    A rank other than 7 parses fine (the format can carry other bilinear
    algorithms); the recursion engine is what rejects it.  Raises
    MalformedFileError for structural problems and ScalarFormatError for
    non-canonical scalars.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedFileError("top level must be an object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise MalformedFileError(
            f"unsupported format_version {doc.get('format_version')!r}"
        )
    try:
        field = parse_field(doc["field"])
    except KeyError:
        raise MalformedFileError("missing field descriptor") from None
    except (ValueError, TypeError) as exc:
        raise MalformedFileError(str(exc)) from exc
    terms_doc = doc.get("terms")
    if not isinstance(terms_doc, list):
        raise MalformedFileError("terms must be a list")
    rank = doc.get("rank")
    if rank != len(terms_doc):
        raise MalformedFileError(f"declared rank {rank!r} != {len(terms_doc)} terms")
    terms = []
    for k, t in enumerate(terms_doc):
        if not isinstance(t, dict):
            raise MalformedFileError(f"term {k} must be an object")
        u = _parse_scalar_list(field, t.get("u"), 4, f"term {k} u")
        v = _parse_scalar_list(field, t.get("v"), 4, f"term {k} v")
        w = _parse_scalar_list(field, t.get("W"), 4, f"term {k} W")
        terms.append(Term(tuple(u), tuple(v), Mat2(field, w)))
    provenance = None
    if "provenance" in doc:
        prov = doc["provenance"]
        if not isinstance(prov, dict):
            raise MalformedFileError("provenance must be an object")
        d = _parse_scalar_list(field, prov.get("D"), 4, "provenance D")
        u_vec = _parse_scalar_list(field, prov.get("u_vector"), 2, "provenance u_vector")
        provenance = Provenance(Mat2(field, d), ColVec2(field, u_vec))
    return BilinearDecomposition(field, tuple(terms), provenance)


def format_matrix(mat: MatN) -> str:
    """Matrix text: header "n <dim> field <descriptor>", then one line of
    scalars per row."""
    field = mat.field
    lines = [f"n {mat.n} field {field.name}"]
    for i in range(mat.n):
        lines.append(" ".join(field.format_scalar(mat[i, j]) for j in range(mat.n)))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> MatN:
    """Parse the matrix text format; scalars use the same canonical syntax
    as decomposition files."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise MalformedFileError("empty matrix file")
    header = lines[0].split()
    if len(header) != 4 or header[0] != "n" or header[2] != "field":
        raise MalformedFileError(f"bad matrix header {lines[0]!r}")
    try:
        n = int(header[1])
    except ValueError:
        raise MalformedFileError(f"bad dimension {header[1]!r}") from None
    if n < 1:
        raise MalformedFileError("dimension must be >= 1")
    try:
        field = parse_field(header[3])
    except ValueError as exc:
        raise MalformedFileError(str(exc)) from exc
    if len(lines) - 1 != n:
        raise MalformedFileError(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        cells = line.split()
        if len(cells) != n:
            raise MalformedFileError(f"expected {n} entries per row, got {len(cells)}")
        rows.append([field.parse_scalar(c) for c in cells])
    return MatN(field, rows)
