import json
import logging
import os
from typing import Any, Dict, Mapping, Union

from pydantic import TypeAdapter, ValidationError

from pwhlab.errors import ModelParseError
from pwhlab.model.builders import build_multiport, build_sg, build_single_port
from pwhlab.model.schema import (
    ModelDocument,
    MultiportDocument,
    RawDocument,
    SgDocument,
    SinglePortDocument,
)
from pwhlab.model.system import PwhSystem

logger = logging.getLogger(__name__)

_document_adapter = TypeAdapter(ModelDocument)


def _field_path(error: Dict[str, Any]) -> str:
    # Union members show up as the first loc element; drop it
    loc = [str(part) for part in error.get("loc", ())]
    if loc and loc[0] in ("single_port", "sg", "multiport", "raw"):
        loc = loc[1:]
    return ".".join(loc)


def parse_document(document: Union[str, bytes, Mapping[str, Any]]):
    """Validate a model document against the schema and return the typed document."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise ModelParseError(f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})") from e
    if not isinstance(document, Mapping):
        raise ModelParseError("model document must be a JSON object")

    try:
        return _document_adapter.validate_python(dict(document))
    except ValidationError as e:
        first = e.errors()[0]
        raise ModelParseError(first.get("msg", "schema violation"), _field_path(first)) from e


def load_model(document: Union[str, bytes, Mapping[str, Any]]) -> PwhSystem:
    """
    Build a PwhSystem from a model document. "kind" selects a builder or the
    raw-matrix path; invariant violations surface as InputError.
    """
    return build_system(parse_document(document))


def build_system(doc) -> PwhSystem:
    """Turn a validated document into a PwhSystem."""
    if isinstance(doc, SinglePortDocument):
        sys = build_single_port(doc)
    elif isinstance(doc, SgDocument):
        sys = build_sg(doc)
    elif isinstance(doc, MultiportDocument):
        sys = build_multiport(doc)
    else:
        assert isinstance(doc, RawDocument)
        sys = PwhSystem(
            J=doc.J, R=doc.R, M=doc.M,
            power_channels=tuple(doc.power_channels),
            u_bar=doc.u_bar,
            u_c=doc.u_c,
            label=doc.label or "raw",
            units=doc.units,
        )

    logger.info(f"Loaded model {sys.summary()}")
    return sys


def load_model_file(path: str):
    """Return (document, system) for a model file on disk."""
    if not os.path.exists(path):
        raise ModelParseError(f"Model file not found: {path}")
    with open(path, "r") as f:
        doc = parse_document(f.read())
    return doc, build_system(doc)


def system_to_document(sys: PwhSystem) -> Dict[str, Any]:
    """Serialize any system as a raw-kind document."""
    doc = {
        "kind": "raw",
        "J": sys.J.tolist(),
        "R": sys.R.tolist(),
        "M": sys.M.tolist(),
        "power_channels": list(sys.power_channels),
        "u_bar": sys.u_bar.tolist(),
        "u_c": sys.u_c.tolist(),
        "label": sys.label,
    }
    if sys.units:
        doc["units"] = sys.units
    return doc
