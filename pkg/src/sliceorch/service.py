"""Long-running orchestrator service: accepts intents over HTTP, drives a
live simulation session, and serves metrics/what-if queries for consoles.

Every state mutation flows through one asyncio lock (single writer); reads
return snapshots, so concurrent API clients need no locking of their own.
"""

from __future__ import annotations

import asyncio
import json
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import StreamingResponse
from pydantic import BaseModel, Field

from .model import InvariantError, Lifecycle, SliceIntent
from .scenario import TICK_MS, Scenario, scenario_to_dict
from .sim import Simulator


class IntentIn(BaseModel):
    sst: int = Field(ge=0)
    sd: int = Field(ge=0)
    delay_min_ms: float
    delay_max_ms: float
    tp_min_mbps: float
    tp_max_mbps: float
    priority: int = 1
    label: str = ""

    def to_intent(self) -> SliceIntent:
        return SliceIntent(
            sst=self.sst,
            sd=self.sd,
            delay_min_ms=self.delay_min_ms,
            delay_max_ms=self.delay_max_ms,
            tp_min_mbps=self.tp_min_mbps,
            tp_max_mbps=self.tp_max_mbps,
            priority=self.priority,
            label=self.label,
        )


class StepIn(BaseModel):
    ticks: int = Field(default=1, ge=1, le=100000)


class AssuranceIn(BaseModel):
    enabled: bool


class Session:
    """One live simulation session with a wall-clock ticker."""

    def __init__(self, scenario: Scenario, tick_interval_s: float = 1.0, assurance_enabled: bool = True):
        self.sim = Simulator(scenario, assurance_enabled=assurance_enabled)
        self.tick_interval_s = tick_interval_s
        self.lock = asyncio.Lock()
        self.running = False
        self._ticker: Optional[asyncio.Task] = None
        self._frame_ready = asyncio.Condition()

    async def _notify(self):
        async with self._frame_ready:
            self._frame_ready.notify_all()

    async def tick(self, count: int = 1) -> int:
        async with self.lock:
            done = 0
            for _ in range(count):
                if self.sim.t_ms >= self.sim.scenario.horizon_ms:
                    break
                self.sim.step()
                done += 1
        if done:
            await self._notify()
        return done

    async def _run_loop(self):
        while self.running:
            advanced = await self.tick()
            if advanced == 0:
                self.running = False
                break
            await asyncio.sleep(self.tick_interval_s)

    def start(self):
        if not self.running:
            self.running = True
            self._ticker = asyncio.get_running_loop().create_task(self._run_loop())

    async def pause(self):
        self.running = False
        if self._ticker is not None:
            self._ticker.cancel()
            try:
                await self._ticker
            except (asyncio.CancelledError, Exception):
                pass
            self._ticker = None


def _slice_row(sid: str, state, sim: Simulator) -> dict:
    row = {
        "slice": sid,
        "label": state.intent.display_name,
        "lifecycle": state.lifecycle.value,
        "intent": {
            "sst": state.intent.sst,
            "sd": state.intent.sd,
            "delay_min_ms": state.intent.delay_min_ms,
            "delay_max_ms": state.intent.delay_max_ms,
            "tp_min_mbps": state.intent.tp_min_mbps,
            "tp_max_mbps": state.intent.tp_max_mbps,
            "priority": state.intent.priority,
        },
    }
    if state.placement is not None:
        row["placement"] = {
            "pool_cuup": state.placement.pool_cuup,
            "pool_upf": state.placement.pool_upf,
            "prb_floor": state.placement.prb_floor,
            "predicted_rtt_ms": state.placement.predicted_rtt_ms,
        }
    return row


def create_app(
    scenario: Scenario, tick_interval_s: float = 1.0, assurance_enabled: bool = True
) -> FastAPI:
    app = FastAPI(title="sliceorch", version="0.1.0")
    session = Session(scenario, tick_interval_s=tick_interval_s, assurance_enabled=assurance_enabled)
    app.state.session = session

    @app.post("/slices")
    async def submit_slice(intent_in: IntentIn):
        try:
            intent = intent_in.to_intent()
        except InvariantError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        async with session.lock:
            outcome = session.sim.submit_intent(intent)
        if not outcome.admitted:
            return {
                "admitted": False,
                "slice": outcome.slice_id,
                "reason": outcome.reason,
                "detail": outcome.detail,
            }
        placement = outcome.placement
        return {
            "admitted": True,
            "slice": outcome.slice_id,
            "placement": {
                "pool_cuup": placement.pool_cuup,
                "pool_upf": placement.pool_upf,
                "prb_floor": placement.prb_floor,
                "predicted_rtt_ms": placement.predicted_rtt_ms,
            },
        }

    @app.get("/slices")
    async def list_slices():
        sim = session.sim
        return {
            "slices": [
                _slice_row(sid, st, sim)
                for sid, st in sim.slices.items()
                if st.lifecycle is not Lifecycle.TERMINATED
            ]
        }

    @app.delete("/slices/{slice_id}")
    async def delete_slice(slice_id: str):
        async with session.lock:
            try:
                session.sim.stop_slice(slice_id)
            except KeyError:
                raise HTTPException(status_code=404, detail=f"no active slice {slice_id!r}")
        return {"slice": slice_id, "lifecycle": Lifecycle.TERMINATED.value}

    @app.get("/topology")
    async def topology():
        sim = session.sim
        doc = scenario_to_dict(sim.scenario)
        return {
            "pools": doc["pools"],
            "links": doc["links"],
            "cell": doc["cell"],
            "du_pool": sim.topology.du_pool.id,
        }

    @app.post("/whatif/placement")
    async def whatif(intent_in: IntentIn):
        try:
            intent = intent_in.to_intent()
        except InvariantError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        # Pure read: evaluated against current residual state, never logged.
        async with session.lock:
            return session.sim.whatif_placement(intent)

    @app.get("/metrics")
    async def metrics(since: int = -1):
        frames = [f.to_dict() for f in session.sim.frames if f.seq > since]
        latest = session.sim.frames[-1].seq if session.sim.frames else -1
        return {"frames": frames, "latest_seq": latest, "t_ms": session.sim.t_ms}

    @app.get("/events")
    async def events(since: int = -1):
        records = [r.to_dict() for r in session.sim.records if r.seq > since]
        latest = session.sim.records[-1].seq if session.sim.records else -1
        return {"events": records, "latest_seq": latest}

    @app.get("/stream")
    async def stream(since: int = -1, limit: int = 0):
        """Server-push stream of MetricsFrames (SSE). ``since`` resumes after
        a sequence number; ``limit`` > 0 closes after that many frames."""

        async def frame_source():
            cursor = since
            sent = 0
            while True:
                frames = [f for f in session.sim.frames if f.seq > cursor]
                for frame in frames:
                    cursor = frame.seq
                    yield f"data: {json.dumps(frame.to_dict(), sort_keys=True)}\n\n"
                    sent += 1
                    if limit and sent >= limit:
                        return
                async with session._frame_ready:
                    try:
                        await asyncio.wait_for(session._frame_ready.wait(), timeout=15.0)
                    except asyncio.TimeoutError:
                        yield ": keepalive\n\n"

        return StreamingResponse(frame_source(), media_type="text/event-stream")

    @app.post("/session/start")
    async def session_start():
        session.start()
        return {"running": True, "t_ms": session.sim.t_ms}

    @app.post("/session/pause")
    async def session_pause():
        await session.pause()
        return {"running": False, "t_ms": session.sim.t_ms}

    @app.post("/session/step")
    async def session_step(body: StepIn = StepIn()):
        advanced = await session.tick(body.ticks)
        return {"advanced": advanced, "t_ms": session.sim.t_ms, "running": session.running}

    @app.post("/session/assurance")
    async def session_assurance(body: AssuranceIn):
        async with session.lock:
            session.sim.set_assurance(body.enabled)
        return {"assurance_enabled": body.enabled}

    @app.get("/session")
    async def session_info():
        return {
            "scenario": scenario.name,
            "running": session.running,
            "t_ms": session.sim.t_ms,
            "horizon_ms": scenario.horizon_ms,
            "tick_ms": TICK_MS,
            "assurance_enabled": session.sim.assurance_enabled,
        }

    return app
