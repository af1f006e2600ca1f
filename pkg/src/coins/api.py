"""HTTP face of the session host.

A thin FastAPI layer: sessions are created from a scenario document (inline
or the server's default), commands go through one endpoint carrying the same
command/reply objects the REPL uses, and every per-session request is
serialized behind a lock so command logs replay deterministically.
"""

from __future__ import annotations

import threading

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .scenario import ScenarioError
from .session import Session, session_from_doc


class CreateSessionRequest(BaseModel):
    scenario: dict | None = Field(
        default=None, description="Inline scenario document; omit to use the server default"
    )
    k: int | None = Field(default=None, description="Override the scenario's relevance bound")


class SessionInfo(BaseModel):
    session_id: str
    status: str
    digest: str
    views: list[str]
    active_view: str | None


class CommandRequest(BaseModel):
    op: str
    args: dict = Field(default_factory=dict)


class CommandReply(BaseModel):
    ok: bool
    result: dict | None = None
    error: dict | None = None
    digest: str


def create_app(default_scenario: dict | None = None) -> FastAPI:
    app = FastAPI(title="coins", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    locks: dict[str, threading.Lock] = {}

    def info(session: Session) -> SessionInfo:
        return SessionInfo(
            session_id=session.id,
            status=session.state.status,
            digest=session.digest(),
            views=sorted(session.scenario.views),
            active_view=session.active_view,
        )

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session: {session_id}")
        return session

    @app.post("/sessions", response_model=SessionInfo)
    def create_session(req: CreateSessionRequest):
        doc = req.scenario if req.scenario is not None else default_scenario
        if doc is None:
            raise HTTPException(status_code=400, detail="no scenario given and no server default")
        try:
            session = session_from_doc(doc, req.k)
        except ScenarioError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        sessions[session.id] = session
        locks[session.id] = threading.Lock()
        return info(session)

    @app.get("/sessions/{session_id}", response_model=SessionInfo)
    def session_info(session_id: str):
        return info(get_session(session_id))

    @app.post("/sessions/{session_id}/command", response_model=CommandReply)
    def command(session_id: str, req: CommandRequest):
        session = get_session(session_id)
        with locks[session_id]:
            reply = session.dispatch({"op": req.op, "args": req.args})
            return CommandReply(
                ok=reply["ok"],
                result=reply.get("result"),
                error=reply.get("error"),
                digest=session.digest(),
            )

    @app.get("/sessions/{session_id}/log")
    def command_log(session_id: str):
        return {"log": get_session(session_id).log}

    @app.get("/sessions/{session_id}/digest")
    def digest(session_id: str):
        return {"digest": get_session(session_id).digest()}

    @app.delete("/sessions/{session_id}")
    def close_session(session_id: str):
        get_session(session_id)
        with locks[session_id]:
            sessions.pop(session_id)
        locks.pop(session_id)
        return {"closed": session_id}

    @app.get("/scenario")
    def scenario():
        if default_scenario is None:
            raise HTTPException(status_code=404, detail="no default scenario")
        return default_scenario

    return app
