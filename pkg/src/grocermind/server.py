"""HTTP/JSON service exposing a live session to the companion UI.

All endpoints are thin wrappers over Session.handle_command, so the wire
semantics and the in-process semantics are the same by construction. The
process owns exactly one session. When a built frontend directory is
supplied it is served under /ui.
"""

from __future__ import annotations

from pathlib import Path
from typing import List, Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, RedirectResponse
from pydantic import BaseModel

from .errors import CommandError
from .session import Session


class TeachRequest(BaseModel):
    context: str
    label: Optional[str] = None


class VisitRequest(BaseModel):
    context: str


class EventRequest(BaseModel):
    action: str
    instance: str
    to: Optional[str] = None
    day: Optional[int] = None


class GroceryListRequest(BaseModel):
    items: List[str]


def create_app(session: Session, ui_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="grocermind", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.session = session

    @app.exception_handler(CommandError)
    async def command_error_handler(request: Request, exc: CommandError):
        return JSONResponse(
            status_code=exc.status, content={"error": str(exc), "status": exc.status}
        )

    @app.get("/state")
    def get_state():
        return session.handle_command("state")

    @app.get("/missing")
    def get_missing():
        state = session.handle_command("state")
        return {"missingList": state["missingList"]}

    @app.post("/teach")
    def post_teach(body: TeachRequest):
        payload = {"context": body.context}
        if body.label is not None:
            payload["label"] = body.label
        return session.handle_command("teach", payload)

    @app.post("/learn")
    def post_learn():
        return session.handle_command("learn")

    @app.post("/visit")
    def post_visit(body: VisitRequest):
        return session.handle_command("visit", {"context": body.context})

    @app.post("/event")
    def post_event(body: EventRequest):
        payload = {"action": body.action, "instance": body.instance}
        if body.to is not None:
            payload["to"] = body.to
        if body.day is not None:
            payload["day"] = body.day
        return session.handle_command("event", payload)

    @app.post("/report")
    def post_report():
        return session.handle_command("report")

    @app.post("/grocery-list")
    def post_grocery_list(body: GroceryListRequest):
        return session.handle_command("grocery-diff", {"items": body.items})

    @app.post("/reset")
    def post_reset():
        return session.handle_command("reset")

    if ui_dir and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

        @app.get("/")
        def index():
            return RedirectResponse(url="/ui/")

    return app
