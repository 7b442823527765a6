"""
GradReal - Estado da aplicacao web.

Um documento roda por vez. Cada run guarda seus eventos numa lista que so
cresce; o stream SSE le a partir de um indice e pode reconectar sem perder nada.
"""

import threading
import time
from collections import deque
from dataclasses import dataclass, field
from datetime import datetime

HISTORICO_MAX = 50


def _agora() -> str:
    return datetime.now().isoformat(timespec="seconds")


@dataclass
class RunInfo:
    id: str
    verbs: list
    started: str = field(default_factory=_agora)
    status: str = "running"       # running | completed | error
    finished: str = ""
    result: dict = field(default_factory=dict)
    events: list = field(default_factory=list)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def add_event(self, evt: str, data: dict = None):
        with self._lock:
            self.events.append({"event": evt, "data": data or {}, "ts": time.time()})

    def eventos_desde(self, index: int) -> tuple:
        with self._lock:
            return self.events[index:], max(index, len(self.events))

    @property
    def exit_code(self):
        return self.result.get("exit")

    def resumo(self, detalhado: bool = False) -> dict:
        with self._lock:
            n = len(self.events)
            ultimo = self.events[-1] if self.events else None
        d = {"id": self.id, "verbs": self.verbs, "status": self.status,
             "started": self.started, "finished": self.finished, "events_total": n}
        if self.status == "running":
            d["last_event"] = ultimo
        elif detalhado:
            d["result"] = self.result
        else:
            d["exit"] = self.exit_code
            d["elapsed"] = self.result.get("elapsed")
        return d


class AppState:
    """Run corrente, ultimo run encerrado e historico curto (mais recente primeiro)."""

    def __init__(self):
        self._lock = threading.Lock()
        self._seq = 0
        self.current_run: RunInfo = None
        self.last_completed_run: RunInfo = None
        self.history = deque(maxlen=HISTORICO_MAX)

    def start_run(self, verbs: list) -> RunInfo:
        with self._lock:
            self._seq += 1
            self.current_run = RunInfo(id=f"run_{self._seq:04d}", verbs=list(verbs))
            return self.current_run

    def finish_run(self, result: dict = None, error: str = None):
        with self._lock:
            run = self.current_run
            if run is None:
                return
            run.result = dict(result or {})
            if error:
                run.result["error"] = error
            run.status = "error" if error else "completed"
            run.finished = _agora()
            self.history.appendleft(run.resumo())
            self.last_completed_run, self.current_run = run, None

    def is_running(self) -> bool:
        with self._lock:
            return self.current_run is not None

    def get_current(self) -> dict:
        with self._lock:
            run, ultimo = self.current_run, self.last_completed_run
        if run is not None:
            return {"running": True, **run.resumo()}
        if ultimo is not None:
            return {"running": False, "last_run": ultimo.resumo(detalhado=True)}
        return {"running": False}

    def get_run_events(self, since: int = 0) -> tuple:
        """(eventos, novo_indice, rodando, run_id) do run corrente ou do ultimo."""
        with self._lock:
            rodando = self.current_run is not None
            run = self.current_run or self.last_completed_run
        if run is None:
            return [], 0, False, None
        eventos, idx = run.eventos_desde(since)
        return eventos, idx, rodando, run.id

    def get_history(self) -> list:
        with self._lock:
            return list(self.history)


app_state = AppState()
