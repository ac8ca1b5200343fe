"""
Document service for polytope and polynomial input files.
"""
import json
from pathlib import Path
from typing import List, Tuple, Union

import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from branescope import hooks
from branescope.exceptions import DocumentError
from branescope.polytope import LatticePolytope, from_vertices

PACKAGE_DIR = Path(__file__).resolve().parent.parent


class PolytopeDocument(BaseModel):
    """{"name", "dim", "vertices"}; facets are never read from input."""

    name: str = ""
    dim: int = Field(ge=1)
    vertices: List[List[int]] = Field(min_length=1)

    @model_validator(mode="after")
    def _vertex_lengths(self):
        for i, v in enumerate(self.vertices):
            if len(v) != self.dim:
                raise ValueError(f"Vertex {i + 1} has {len(v)} coordinates, expected {self.dim}")
        return self


class Term(BaseModel):
    exps: List[int]
    coeff: Tuple[int, int]

    @field_validator("exps")
    @classmethod
    def _nonnegative(cls, value):
        if any(e < 0 for e in value):
            raise ValueError("exponents must be nonnegative")
        return value

    @field_validator("coeff")
    @classmethod
    def _nonzero_denominator(cls, value):
        if value[1] == 0:
            raise ValueError("coefficient denominator must be nonzero")
        return value


class PolynomialDocument(BaseModel):
    """{"vars", "degree", "terms": [{"exps", "coeff": [num, den]}]}"""

    vars: int = Field(ge=1)
    degree: int = Field(ge=1)
    terms: List[Term] = Field(min_length=1)

    @model_validator(mode="after")
    def _homogeneous(self):
        for i, term in enumerate(self.terms):
            if len(term.exps) != self.vars:
                raise ValueError(f"Term {i + 1} has {len(term.exps)} exponents, expected {self.vars}")
            if sum(term.exps) != self.degree:
                raise ValueError(f"Term {i + 1} has degree {sum(term.exps)}, expected {self.degree}")
        if all(term.coeff[0] == 0 for term in self.terms):
            raise ValueError("polynomial is zero")
        return self


DOCUMENT_MODELS = {
    "polytope": PolytopeDocument,
    "polynomial": PolynomialDocument,
}


def _format_errors(e: ValidationError) -> List[str]:
    return [
        f"{'.'.join(str(x) for x in err['loc']) or 'document'}: {err['msg']}"
        for err in e.errors()
    ]


class DocumentService:
    """
    Load, validate and export input documents.

    Documents are JSON; they are parsed with yaml.safe_load, which also
    accepts the YAML spelling of the same content.
    """

    @staticmethod
    def read(source: Union[str, Path]) -> dict:
        """
        Parse a document from a path, a bundled fixture name, or raw text.

        Args:
            source: File path, fixture name (see hooks.fixtures) or content

        Returns:
            Parsed mapping
        """
        text = str(source)
        if text in hooks.fixtures:
            path = PACKAGE_DIR / hooks.fixtures[text]
        else:
            path = Path(text)

        try:
            if not text.lstrip().startswith(("{", "-")) and "\n" not in text:
                text = path.read_text()
            content = yaml.safe_load(text)
        except (OSError, yaml.YAMLError) as e:
            raise DocumentError(f"Cannot parse document {source}: {e}")

        if not isinstance(content, dict):
            raise DocumentError(f"Document {source} must be a mapping")

        return content

    @staticmethod
    def validate_document(content: Union[str, dict], kind: str = "polytope") -> dict:
        """
        Validate a document without building anything from it.

        Args:
            content: Document text or parsed mapping
            kind: "polytope" or "polynomial"

        Returns:
            dict with valid status, errors, and the normalized document
        """
        if kind not in DOCUMENT_MODELS:
            return {"valid": False, "errors": [f"Unknown document kind: {kind}"]}

        if isinstance(content, str):
            try:
                content = yaml.safe_load(content)
            except yaml.YAMLError as e:
                return {"valid": False, "errors": [f"Invalid document: {str(e)}"]}

        if not isinstance(content, dict):
            return {"valid": False, "errors": ["Document must be a mapping"]}

        try:
            document = DOCUMENT_MODELS[kind].model_validate(content)
        except ValidationError as e:
            return {"valid": False, "errors": _format_errors(e)}

        return {"valid": True, "errors": [], "document": document.model_dump()}

    @staticmethod
    def load_polytope(source: Union[str, Path]) -> LatticePolytope:
        """
        Build a LatticePolytope from a polytope document.

        Args:
            source: Path, fixture name or document text

        Returns:
            LatticePolytope with recomputed facets
        """
        content = DocumentService.read(source)
        result = DocumentService.validate_document(content, "polytope")
        if not result["valid"]:
            raise DocumentError("; ".join(result["errors"]))

        document = result["document"]
        return from_vertices(document["vertices"], document["name"])

    @staticmethod
    def load_polynomial(source: Union[str, Path]):
        """
        Build a HypersurfaceEquation from a polynomial document.

        Args:
            source: Path, fixture name or document text

        Returns:
            branescope.gauge.HypersurfaceEquation
        """
        from branescope.gauge import HypersurfaceEquation

        content = DocumentService.read(source)
        result = DocumentService.validate_document(content, "polynomial")
        if not result["valid"]:
            raise DocumentError("; ".join(result["errors"]))

        document = result["document"]
        return HypersurfaceEquation.from_terms(
            document["vars"],
            [(tuple(t["exps"]), tuple(t["coeff"])) for t in document["terms"]],
        )

    @staticmethod
    def export_polytope(p: LatticePolytope, fmt: str = "json") -> str:
        """
        Serialize a polytope as a document.

        Args:
            p: LatticePolytope
            fmt: "json" or "yaml"

        Returns:
            Document string
        """
        document = {
            "name": p.name,
            "dim": p.dim,
            "vertices": [list(v) for v in p.vertices],
        }
        if fmt == "yaml":
            return yaml.dump(document, default_flow_style=None, allow_unicode=True, sort_keys=False)
        return json.dumps(document)

    @staticmethod
    def get_template(kind: str = "polytope") -> str:
        """
        Get a template document.

        Args:
            kind: "polytope" or "polynomial"

        Returns:
            Template JSON string
        """
        templates = {
            "polytope": {
                "name": "p2",
                "dim": 2,
                "vertices": [[-1, -1], [2, -1], [-1, 2]],
            },
            "polynomial": {
                "vars": 3,
                "degree": 3,
                "terms": [
                    {"exps": [3, 0, 0], "coeff": [1, 1]},
                    {"exps": [0, 3, 0], "coeff": [1, 1]},
                    {"exps": [0, 0, 3], "coeff": [1, 1]},
                ],
            },
        }
        if kind not in templates:
            raise DocumentError(f"Unknown document kind: {kind}")
        return json.dumps(templates[kind], indent=2)


def get_document_service() -> DocumentService:
    """Get a DocumentService instance."""
    return DocumentService()
