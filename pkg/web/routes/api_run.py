"""API de execucao de documentos + SSE."""

import asyncio
import json
import threading
import traceback

from fastapi import APIRouter, Query
from fastapi.responses import StreamingResponse

from web.state import app_state

router = APIRouter(tags=["run"])


@router.post("/run")
async def executar_documento(body: dict = None):
    """
    Avalia o documento e executa os verbos em background. Retorna ID do run.

    Corpo: {"document": str, "verbs": [...], "targets": [...], "flags": [...],
            "options": {chave: valor}, "config": {...}}
    Erros de sintaxe/binding voltam imediatamente, sem criar run.
    """
    if app_state.is_running():
        return {"error": "Execucao ja em andamento.", "status": "already_running",
                "run": app_state.get_current()}

    from config import Config
    from spec_document import Node, diagnostico, parse
    from utils import GradRealError

    body = body or {}
    cfg = Config.from_env()
    for k, v in body.get("config", {}).items():
        if hasattr(cfg, k):
            setattr(cfg, k, v)
    erros = cfg.validar()
    if erros:
        return {"status": "invalid_config", "errors": erros}
    cfg.aplicar()

    try:
        doc = parse(body.get("document", ""))
    except GradRealError as e:
        return {"status": "invalid_document", "error": diagnostico(e), "exit": 2}

    verbos = body.get("verbs") or None
    alvos = body.get("targets") or None
    flags = body.get("flags") or []
    opcoes = {k: Node("str", str(v)) for k, v in body.get("options", {}).items()}

    run = app_state.start_run(verbos or [c.verb for c in doc.commands] or ["build"])

    def _run_in_thread():
        try:
            from pipeline import Pipeline

            def callback(origem, evento, payload=None):
                # cb("check", "verbo_inicio", {...}) ou cb("pipeline", "pipeline_fim", {...})
                dados = dict(payload) if isinstance(payload, dict) else {}
                if origem != "pipeline":
                    dados["verb"] = origem
                run.add_event(evento, dados)

            p = Pipeline(cfg, progress_callback=callback)
            res = p.executar(doc, verbos, alvos, flags, opcoes)
            # dados dos relatorios podem ter Fraction e tuplas
            result = json.loads(json.dumps({
                "exit": res["codigo"],
                "elapsed": res["elapsed"],
                "reports": [r.to_dict() for r in res["relatorios"]],
            }, default=str))
            run.add_event("run_done", {"result": result})
            app_state.finish_run(result)
        except Exception as e:
            run.add_event("run_error", {"error": str(e), "tb": traceback.format_exc()})
            app_state.finish_run(error=str(e))

    t = threading.Thread(target=_run_in_thread, daemon=True)
    t.start()

    return {"status": "started", "run_id": run.id, "verbs": run.verbs}


@router.get("/status")
async def get_status():
    return app_state.get_current()


def _sse(evt: dict, idx: int) -> str:
    return f"data: {json.dumps({**evt, '_idx': idx}, default=str)}\n\n"


@router.get("/status/stream")
async def stream_status(since: int = Query(0, ge=0)):
    """SSE com os eventos do run; `since` retoma a partir do indice recebido."""
    async def generate():
        idx = since
        while True:
            eventos, novo, rodando, _ = app_state.get_run_events(idx)
            for i, evt in enumerate(eventos, start=idx):
                yield _sse(evt, i)
            idx = novo
            if not rodando:
                # eventos emitidos entre a leitura e o fim do run
                resto, idx_final, _, _ = app_state.get_run_events(idx)
                for i, evt in enumerate(resto, start=idx):
                    yield _sse(evt, i)
                yield _sse({"event": "stream_end"}, idx_final)
                return
            await asyncio.sleep(0.5)
            yield ": heartbeat\n\n"

    return StreamingResponse(generate(), media_type="text/event-stream",
                             headers={"Cache-Control": "no-cache", "X-Accel-Buffering": "no"})


@router.get("/history")
async def get_history():
    return app_state.get_history()


@router.get("/verbs")
async def get_verbs():
    """Verbos e construtores disponiveis na linguagem de documentos."""
    from spec_document import listar_construtores
    from verbs import listar_verbos
    return {"verbs": listar_verbos(), "constructors": listar_construtores()}
