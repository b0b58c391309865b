"""HTTP service over the engines."""
from __future__ import annotations

from typing import Any, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .. import __version__, records
from ..catalog import GroupIdError, UnsupportedFamily, parse_group_id
from ..depth import InternalInconsistency
from ..length import NotCovered
from ..oracle.perm import CapExceeded

app = FastAPI(title="chainforge", version=__version__)


class Why(BaseModel):
    rule: str
    meaning: str


class OutputRecord(BaseModel):
    command: str
    query: dict[str, Any]
    result: Any
    provenance: list[str]
    why: Optional[list[Why]] = None


class ReportRequest(BaseModel):
    group: str = Field(..., examples=["L(2,7)"])
    why: bool = False


class ClassifyRequest(BaseModel):
    tag: str = Field(..., examples=["cd2"])
    q_max: Optional[int] = Field(None, ge=2, le=10**6)
    n_max: Optional[int] = Field(None, ge=5, le=1000)
    max_order: Optional[int] = Field(None, ge=1)
    family: Optional[str] = None
    l: Optional[int] = Field(None, ge=1)
    why: bool = False


class PrimesRequest(BaseModel):
    family: str = Field(..., examples=["table5-row1"])
    limit: int = Field(..., ge=2, le=10**8)
    jobs: int = Field(1, ge=1, le=64)
    shards: Optional[int] = Field(None, ge=1, le=4096)


class OracleRequest(BaseModel):
    group: str = Field(..., examples=["A(5)"])
    verify: bool = True


def _guard(fn):
    try:
        return fn()
    except GroupIdError as exc:
        raise HTTPException(400, detail={"error": "parse", "message": str(exc)})
    except (NotCovered, UnsupportedFamily) as exc:
        raise HTTPException(404, detail={"error": "not-covered", "message": str(exc)})
    except CapExceeded as exc:
        raise HTTPException(413, detail={"error": "cap-exceeded", "message": str(exc)})
    except InternalInconsistency as exc:
        raise HTTPException(500, detail={"error": "inconsistent", "message": str(exc)})
    except KeyError as exc:
        raise HTTPException(400, detail={"error": "unknown-name", "message": str(exc.args[0])})


def _with_why(rec: dict, why: bool) -> dict:
    if why:
        rec["why"] = records.why(rec["provenance"])
    return rec


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/report", response_model=OutputRecord, response_model_exclude_none=True)
def report(req: ReportRequest):
    def run():
        res, prov = records.report_result(parse_group_id(req.group))
        return records.record("report", {"group": req.group}, res, prov)

    return _with_why(_guard(run), req.why)


@app.post("/classify", response_model=OutputRecord, response_model_exclude_none=True)
def classify(req: ClassifyRequest):
    tag = records.TAG_ALIASES.get(req.tag, req.tag)

    def run():
        members = records.classify_members(tag, req.q_max, req.n_max, req.max_order, req.family, req.l)
        query = {"tag": tag, "q_max": _s(req.q_max), "n_max": _s(req.n_max),
                 "max_order": _s(req.max_order), "l": _s(req.l), "family": req.family}
        return records.record("classify", query, {"tag": tag, "members": members}, [f"classify:{tag}"])

    return _with_why(_guard(run), req.why)


@app.post("/primes", response_model=OutputRecord, response_model_exclude_none=True)
def primes(req: PrimesRequest):
    def run():
        res = records.primes_result(req.family, req.limit, jobs=req.jobs, shards=req.shards)
        return records.record("primes", {"family": req.family, "limit": str(req.limit)}, res,
                              [f"primes:{req.family}"])

    return _guard(run)


@app.post("/oracle", response_model=OutputRecord, response_model_exclude_none=True)
def oracle(req: OracleRequest):
    def run():
        res = records.oracle_result(parse_group_id(req.group), verify=req.verify)
        return records.record("oracle", {"group": req.group}, res, ["oracle:subgroup-lattice"])

    return _guard(run)


def _s(v):
    return None if v is None else str(v)
