"""Request/response models for the service endpoints.

The CLI builds these same models and calls the handlers in-process, so
the wire format and the command line stay in lockstep.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class BuildRequest(BaseModel):
    expr: str


class SpaceResponse(BaseModel):
    space: dict


class CountRequest(BaseModel):
    expr: str
    dim: int = Field(ge=0)
    mode: Literal["all", "nondegenerate"] = "all"


class CountResponse(BaseModel):
    count: int


class CheckRequest(BaseModel):
    map: dict
    fibration_class: Literal["inner", "left", "right", "kan", "trivial"]
    max_dim: int = Field(ge=0)
    budget: Optional[int] = None


class CheckResponse(BaseModel):
    holds: bool
    fibration_class: str
    max_dim: int
    witness: Optional[dict] = None


class CertifyRequest(BaseModel):
    sub_expr: str
    sup_expr: str
    fibration_class: Literal["inner", "left", "right", "kan"] = "inner"
    budget: int = 100000


class CertifyResponse(BaseModel):
    status: Literal["found", "exhausted", "budget"]
    certificate: Optional[dict] = None
    steps: Optional[int] = None
    tried: int = 0


class SliceRequest(BaseModel):
    kind: Literal["slice", "wide-slice"]
    space: dict
    map: dict
    max_dim: int = Field(ge=0)


class VerifyRequest(BaseModel):
    claim: Literal["prism", "afilt", "bfilt", "thmC", "thmA", "thmB",
                   "thmD", "wjcounts"]
    n: Optional[int] = None
    bound: Optional[int] = None


class VerifyResponse(BaseModel):
    passed: bool
    reports: list[dict]


class ExportRequest(BaseModel):
    expr: str
    format: Literal["json", "dot"]


class ExportResponse(BaseModel):
    payload: str


class ErrorBody(BaseModel):
    error: str
    kind: Literal["usage", "budget", "internal"]
