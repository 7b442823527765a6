"""API de configuracao: le e grava as chaves GRADREAL_* do .env."""

import os
from typing import Optional

from dotenv import set_key
from fastapi import APIRouter
from pydantic import BaseModel

from config import Config

router = APIRouter(tags=["config"])

PREFIXO = "GRADREAL_"


class ConfigUpdate(BaseModel):
    enum_bound: Optional[int] = None
    oracle_width: Optional[int] = None
    sample_count: Optional[int] = None
    sample_seed: Optional[int] = None
    sign_pattern_limit: Optional[int] = None
    idempotent_height: Optional[int] = None
    output_dir: Optional[str] = None
    debug: Optional[bool] = None
    json_output: Optional[bool] = None
    show_progress: Optional[bool] = None


def _env_path() -> str:
    raiz = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    return os.path.join(raiz, ".env")


def _valor_env(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


@router.get("/config")
async def get_config():
    """Configuracao atual, relida do .env a cada chamada."""
    return Config.from_env().to_dict()


@router.post("/config")
async def update_config(update: ConfigUpdate):
    mudancas = {f"{PREFIXO}{campo.upper()}": _valor_env(v)
                for campo, v in update.model_dump(exclude_none=True).items()}
    if not mudancas:
        return {"status": "ok", "updated": []}
    path = _env_path()
    if not os.path.isfile(path):
        open(path, "a", encoding="utf-8").close()
    for chave, valor in mudancas.items():
        set_key(path, chave, valor, quote_mode="never")
    return {"status": "ok", "updated": list(mudancas)}


@router.get("/config/validate")
async def validate_config():
    erros = Config.from_env().validar()
    return {"valid": not erros, "errors": erros}
