"""Request/response models for the HTTP service.

Every response is an OutputDocument: schema_version, the command name, an
echo of the inputs, and a command-specific results payload.  Responses are
byte-stable for identical requests (no timestamps, fixed field order).
"""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field

SCHEMA_VERSION = "1"


class TreeParamsModel(BaseModel):
    q: list[int]
    a: list[int]


class InfoRequest(BaseModel):
    params: TreeParamsModel


class ScanRequest(BaseModel):
    params: TreeParamsModel
    pair: Optional[str] = Field(default=None, description="cospectral pair selector KIND[:INDEX]")
    vertices: Optional[list[int]] = Field(default=None, description="explicit vertex pair [x, y]")
    t0: float = 0.0
    t1: float = 10.0
    steps: int = Field(default=200, ge=0, description="grid intervals; steps+1 samples, 0 = empty")
    any_pair: bool = False
    oracle_tree: bool = Field(default=False, description="skip the diameter-4 check (test graphs)")


class ScheduleRequest(BaseModel):
    family: Literal["type_c", "t3", "q_readout", "p5_leaf", "coupled_q2", "dist4"]
    params: Optional[TreeParamsModel] = None
    k: Optional[int] = None
    k2: Optional[int] = None
    k3: Optional[int] = None
    q3: Optional[int] = None
    q: Optional[int] = None
    q2: Optional[int] = None
    n: Optional[list[int]] = None
    ell: Optional[list[int]] = None
    epsilon: float = 0.1
    r_max: int = 10000


class VerifyRequest(BaseModel):
    scope: Literal["quick", "full"] = "quick"


class OutputDocument(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: str
    inputs: dict[str, Any]
    results: dict[str, Any]
