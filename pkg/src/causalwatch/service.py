"""HTTP/WS service wrapping the monitoring hierarchy.

All handlers are async and mutate state inline on the single event loop,
which serializes writers without locks; queries read point-in-time
snapshots. WS subscribers each get their own queue, so a slow consumer
never drops another's frames.
"""

from __future__ import annotations

import asyncio
import contextlib
import json

from fastapi import FastAPI, Request, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse

from .errors import CausalwatchError, IngestError, QueryError, SchemaViolation
from .ingest import EventRecord
from .ladder import answer
from .monitor import Hierarchy
from .queryspec import build_query


class _Broadcaster:
    def __init__(self):
        self.subscribers: set[asyncio.Queue] = set()

    def subscribe(self) -> asyncio.Queue:
        q: asyncio.Queue = asyncio.Queue()
        self.subscribers.add(q)
        return q

    def unsubscribe(self, q: asyncio.Queue) -> None:
        self.subscribers.discard(q)

    def publish(self, frame: dict) -> None:
        for q in self.subscribers:
            q.put_nowait(frame)


def create_app(hierarchy: Hierarchy, report_path: str | None = None) -> FastAPI:
    broadcaster = _Broadcaster()

    @contextlib.asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        # flush a final report on graceful shutdown
        if report_path:
            with open(report_path, "w") as fh:
                fh.write(hierarchy.advisory_report().to_json())

    app = FastAPI(title="causalwatch", lifespan=lifespan)
    app.state.hierarchy = hierarchy

    @app.post("/events", status_code=202)
    async def post_event(request: Request):
        try:
            body = await request.json()
        except json.JSONDecodeError:
            return JSONResponse({"error": "invalid JSON body"}, status_code=400)
        try:
            rec = EventRecord.from_dict(body)
            signals = hierarchy.update_unit(rec)
        except (IngestError, CausalwatchError) as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        node = hierarchy.units[rec.unit_id]
        post = node.latest_posterior()
        if post is not None:
            broadcaster.publish(
                {
                    "type": "posterior",
                    "payload": {"unit": rec.unit_id, "ts": rec.timestamp, "scores": post},
                }
            )
        for sig in signals:
            broadcaster.publish({"type": "signal", "payload": sig.to_dict()})
        return {"status": "accepted", "signals": len(signals)}

    @app.post("/query")
    async def post_query(request: Request):
        try:
            body = await request.json()
        except json.JSONDecodeError:
            return JSONResponse({"error": "invalid JSON body"}, status_code=400)
        snapshot = hierarchy.global_store.snapshot()
        try:
            q = build_query(hierarchy.schema, body)
            result = answer(snapshot, q)
        except (QueryError, SchemaViolation, CausalwatchError) as exc:
            return JSONResponse({"error": str(exc)}, status_code=422)
        return result.to_dict()

    @app.get("/units/{unit_id}/status")
    async def unit_status(unit_id: str):
        node = hierarchy.units.get(unit_id)
        if node is None:
            return JSONResponse({"error": f"unknown unit {unit_id!r}"}, status_code=404)
        distress = hierarchy.schema.distress_class
        return {
            "unit": unit_id,
            "level": node.level,
            "posterior": node.latest_posterior(),
            "window": [p[distress] for p in node.window],
            "streak": node.streak,
        }

    @app.get("/alerts")
    async def alerts(since: int = 0):
        return [s.to_dict() for s in hierarchy.signal_log if s.timestamp >= since]

    @app.get("/report")
    async def report():
        rep = hierarchy.advisory_report().to_dict()
        broadcaster.publish({"type": "report", "payload": rep})
        return rep

    @app.websocket("/stream")
    async def stream(ws: WebSocket):
        await ws.accept()
        q = broadcaster.subscribe()
        try:
            while True:
                frame = await q.get()
                await ws.send_json(frame)
        except WebSocketDisconnect:
            pass
        finally:
            broadcaster.unsubscribe(q)

    return app
