"""Local HTTP/JSON facade over the rating model, inventory and reporting.

One process, one store file. Request and response bodies are exactly the
module schemas; every mutation is persisted through the inventory store
(atomic replace) before the response returns, and a failed request leaves
the store file byte-identical. Errors come back as
``{"code", "message", "field"}`` with the code mirroring the module
exception name.
"""

from __future__ import annotations

import datetime as dt
import errno
import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from eucrisk.dates import parse_date
from eucrisk.drafts import DraftStore, UnknownDraft
from eucrisk.inventory import EucaRecord, InventoryStore, RiskRegisterEntry
from eucrisk.rating import (
    AssessmentInput,
    RatingBand,
    TriageSubmission,
    assess,
    triage,
    what_if,
)
from eucrisk.reporting import kpi_snapshot


class StoreUnreadable(Exception):
    """The store file exists but cannot be parsed."""


class PortInUse(Exception):
    """The requested port is already taken."""


_STATUS_BY_CODE = {
    "UnknownId": 404,
    "UnknownRisk": 404,
    "UnknownDraft": 404,
    "MissingField": 400,
    "ScaleViolation": 400,
    "ResidualExceedsInherent": 400,
    "OutOfRange": 400,
    "UnknownField": 400,
    "ValueError": 400,
    "JSONDecodeError": 400,
    "KeyError": 400,
    "TypeError": 400,
    "RetiredRecord": 409,
    "AlreadyClosed": 409,
    "DateOrder": 409,
    "InconsistentResult": 409,
}


def _error(exc: Exception) -> JSONResponse:
    code = type(exc).__name__
    if isinstance(exc, UnknownDraft):
        code = "UnknownDraft"
    message = str(exc) or code
    return JSONResponse(
        status_code=_STATUS_BY_CODE.get(code, 500),
        content={"code": code, "message": message, "field": getattr(exc, "field", None)},
    )


def create_app(store_path: str | Path, drafts_path: str | Path | None = None,
               ui_dir: str | Path | None = None) -> FastAPI:
    """Build the service bound to one store file (created on first mutation)."""
    store_path = Path(store_path)
    if store_path.exists():
        try:
            InventoryStore.load(store_path)
        except Exception as exc:
            raise StoreUnreadable(f"cannot read store {store_path}: {exc}") from exc
    drafts = DraftStore(drafts_path) if drafts_path else DraftStore.beside(store_path)

    app = FastAPI(title="eucrisk", docs_url=None, redoc_url=None)
    write_lock = threading.Lock()

    def fresh() -> InventoryStore:
        return InventoryStore.open(store_path)

    @app.exception_handler(Exception)
    async def handle_any(_request: Request, exc: Exception):  # pragma: no cover - safety net
        return _error(exc)

    # -- read side -----------------------------------------------------------

    @app.get("/api/euca")
    def list_eucas(department: str | None = None, band: str | None = None):
        try:
            store = fresh()
            records = store.list_eucas(
                department=department,
                band=RatingBand.from_label(band) if band else None,
            )
            return [r.to_dict() for r in records]
        except Exception as exc:
            return _error(exc)

    @app.get("/api/kpi")
    def kpi(as_of: str | None = None, include_retired: bool = False):
        try:
            when = parse_date(as_of) if as_of else dt.date.today()
            return kpi_snapshot(fresh(), when, include_retired=include_retired).to_dict()
        except Exception as exc:
            return _error(exc)

    # -- scoring (pure) ------------------------------------------------------

    @app.post("/api/assess")
    async def post_assess(request: Request):
        try:
            data = await request.json()
            euca_id = data.pop("euca_id", None)
            inp = AssessmentInput.from_dict(data)
            result = assess(inp)
            if euca_id:
                with write_lock:
                    store = fresh()
                    store.record_assessment(euca_id, inp, result)
                    store.save()
            return result.to_dict()
        except Exception as exc:
            return _error(exc)

    @app.post("/api/whatif")
    async def post_whatif(request: Request):
        try:
            data = await request.json()
            inp = AssessmentInput.from_dict(data["input"])
            toggles = list(data.get("toggles", []))
            return what_if(inp, toggles).to_dict()
        except Exception as exc:
            return _error(exc)

    @app.post("/api/triage")
    async def post_triage(request: Request):
        try:
            sub = TriageSubmission.from_dict(await request.json())
            return triage(sub).to_dict()
        except Exception as exc:
            return _error(exc)

    # -- inventory mutations ---------------------------------------------------

    @app.post("/api/euca")
    async def post_euca(request: Request):
        try:
            record = EucaRecord.from_dict(await request.json())
            with write_lock:
                store = fresh()
                saved = store.upsert_euca(record)
                store.save()
            return saved.to_dict()
        except Exception as exc:
            return _error(exc)

    @app.post("/api/review/{euca_id}/confirm")
    async def post_confirm(euca_id: str, request: Request):
        try:
            data = await request.json()
            confirmed_on = parse_date(data["confirmed_on"])
            with write_lock:
                store = fresh()
                record = store.confirm_review(euca_id, confirmed_on)
                store.save()
            return record.to_dict()
        except Exception as exc:
            return _error(exc)

    @app.post("/api/risk")
    async def post_risk(request: Request):
        try:
            data = await request.json()
            euca_id = data.pop("euca_id", "")
            entry = RiskRegisterEntry.from_dict({
                "risk_id": "", "euca_id": "", "status": "open", **data})
            with write_lock:
                store = fresh()
                linked = store.link_risk(euca_id, entry)
                store.save()
            return linked.to_dict()
        except Exception as exc:
            return _error(exc)

    @app.post("/api/risk/{risk_id}/close")
    async def post_close(risk_id: str, request: Request):
        try:
            data = await request.json()
            closed_on = parse_date(data["closed_on"])
            with write_lock:
                store = fresh()
                entry = store.close_risk(risk_id, closed_on)
                store.save()
            return entry.to_dict()
        except Exception as exc:
            return _error(exc)

    # -- drafts ----------------------------------------------------------------

    @app.get("/api/drafts/{key}")
    def get_draft(key: str):
        try:
            return drafts.get(key)
        except Exception as exc:
            return _error(exc)

    @app.put("/api/drafts/{key}")
    async def put_draft(key: str, request: Request):
        try:
            payload = await request.json()
            with write_lock:
                drafts.put(key, payload)
            return {"key": key, "saved": True}
        except Exception as exc:
            return _error(exc)

    if ui_dir:
        ui_path = Path(ui_dir)
        if ui_path.is_dir():
            app.mount("/", StaticFiles(directory=ui_path, html=True), name="ui")

    return app


def serve(store_path: str | Path, port: int = 8876, host: str = "127.0.0.1",
          ui_dir: str | Path | None = None) -> None:
    """Run the service until interrupted. Raises PortInUse when the port is taken."""
    import uvicorn

    app = create_app(store_path, ui_dir=ui_dir)
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    except OSError as exc:  # pragma: no cover - depends on host state
        if exc.errno == errno.EADDRINUSE:
            raise PortInUse(f"port {port} is already in use") from exc
        raise
