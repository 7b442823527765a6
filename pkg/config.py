"""
GradReal - Modulo de Configuracao
Carrega variaveis do .env e define constantes centralizadas.
Inclui classe Config injetavel para uso pela CLI e pela API web.
"""

import os
import sys

_ENV_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), ".env")


def _ler_env(path: str) -> dict:
    """Parser minimo de KEY=VALUE (sem python-dotenv)."""
    vals = {}
    if os.path.isfile(path):
        with open(path, "r", encoding="utf-8") as f:
            for linha in f:
                linha = linha.strip()
                if linha and not linha.startswith("#") and "=" in linha:
                    k, _, v = linha.partition("=")
                    vals[k.strip()] = v.strip().strip("'\"")
    return vals


try:
    from dotenv import dotenv_values, load_dotenv
    load_dotenv(_ENV_FILE)
except ImportError:
    dotenv_values = None
    for _k, _v in _ler_env(_ENV_FILE).items():
        os.environ.setdefault(_k, _v)


def _bool(val) -> bool:
    if isinstance(val, bool):
        return val
    return str(val).lower() in ("true", "1", "yes", "sim")


def _int(val, default: int = 0) -> int:
    try:
        return int(val)
    except (ValueError, TypeError):
        return default


# campo -> (variavel de ambiente, default, conversor)
CAMPOS = {
    "enum_bound": ("GRADREAL_ENUM_BOUND", 256, _int),
    "oracle_width": ("GRADREAL_ORACLE_WIDTH", 65536, _int),
    "sample_count": ("GRADREAL_SAMPLE_COUNT", 8, _int),
    "sample_seed": ("GRADREAL_SAMPLE_SEED", 20240501, _int),
    "sign_pattern_limit": ("GRADREAL_SIGN_PATTERN_LIMIT", 256, _int),
    "idempotent_height": ("GRADREAL_IDEMPOTENT_HEIGHT", 1, _int),
    "output_dir": ("GRADREAL_OUTPUT_DIR", "outputs", str),
    "debug": ("GRADREAL_DEBUG", False, _bool),
    "json_output": ("GRADREAL_JSON_OUTPUT", False, _bool),
    "show_progress": ("GRADREAL_SHOW_PROGRESS", False, _bool),
}


def _converte(campo: str, val):
    _, default, conv = CAMPOS[campo]
    return conv(val, default) if conv is _int else conv(val)


def _do_ambiente(campo: str, fonte: dict = None):
    env, default, _ = CAMPOS[campo]
    fonte = os.environ if fonte is None else fonte
    return _converte(campo, fonte.get(env, os.getenv(env, default)))


# ---------------------------------------------------------------------------
# Constantes de nivel de modulo (defaults lidos do .env)
# ---------------------------------------------------------------------------
ENUM_BOUND = _do_ambiente("enum_bound")
ORACLE_WIDTH = _do_ambiente("oracle_width")
SAMPLE_COUNT = _do_ambiente("sample_count")
SAMPLE_SEED = _do_ambiente("sample_seed")
SIGN_PATTERN_LIMIT = _do_ambiente("sign_pattern_limit")
IDEMPOTENT_HEIGHT = _do_ambiente("idempotent_height")

OUTPUT_DIR = _do_ambiente("output_dir")
DEBUG = _do_ambiente("debug")
JSON_OUTPUT = _do_ambiente("json_output")
SHOW_PROGRESS = _do_ambiente("show_progress")

TABLES_FILE = "tabelas.json"
RELATORIO_XLSX = "relatorio_gradreal.xlsx"

# Constantes que aplicar() sobrescreve
_APLICAVEIS = ("enum_bound", "oracle_width", "sample_count", "sample_seed", "sign_pattern_limit",
               "idempotent_height", "debug", "show_progress")


# ============================================================================
# Classe Config  -  injetavel via CLI / web
# ============================================================================
class Config:
    """
    Objeto de configuracao injetavel.

        cfg = Config.from_env()               # CLI, relendo o .env
        cfg = Config(enum_bound=64, debug=True)

    Campos omitidos herdam a constante de modulo corrente. `aplicar()` empurra
    os limites de volta para essas constantes, lidas por abgroup/galg/classify.
    """

    def __init__(self, **kw):
        mod = sys.modules[__name__]
        for campo in CAMPOS:
            atual = getattr(mod, campo.upper())
            val = kw.get(campo, atual)
            conv = CAMPOS[campo][2]
            setattr(self, campo, conv(val, atual) if conv is _int else conv(val))

    def to_dict(self) -> dict:
        return {campo: getattr(self, campo) for campo in CAMPOS}

    @classmethod
    def from_dict(cls, d: dict) -> "Config":
        return cls(**{k: v for k, v in d.items() if k in CAMPOS})

    @classmethod
    def from_env(cls) -> "Config":
        """Relê o .env a cada chamada (a API web pode ter editado o arquivo)."""
        arquivo = dotenv_values(_ENV_FILE) if dotenv_values else _ler_env(_ENV_FILE)
        fonte = {k: v for k, v in arquivo.items() if v is not None}
        return cls(**{campo: _do_ambiente(campo, fonte) for campo in CAMPOS})

    def aplicar(self) -> "Config":
        """Propaga os limites para as constantes de modulo."""
        mod = sys.modules[__name__]
        for campo in _APLICAVEIS:
            setattr(mod, campo.upper(), getattr(self, campo))
        return self

    # -- validacao -------------------------------------------------------------

    def validar(self) -> list:
        """Retorna lista de erros (vazia = OK)."""
        erros = []
        if self.enum_bound < 1:
            erros.append("enum_bound deve ser positivo.")
        if self.oracle_width < 1:
            erros.append("oracle_width deve ser positivo.")
        if self.sample_count < 0:
            erros.append("sample_count nao pode ser negativo.")
        if self.sign_pattern_limit < 1:
            erros.append("sign_pattern_limit deve ser positivo.")
        if self.idempotent_height < 1:
            erros.append("idempotent_height deve ser positivo.")
        if not self.output_dir:
            erros.append("output_dir nao definido.")
        return erros

    def imprimir(self):
        """Imprime resumo da configuracao."""
        print("=" * 60)
        print("GRADREAL - CONFIGURACAO")
        print("=" * 60)
        print(f"  Limite grupos   : {self.enum_bound}")
        print(f"  Largura oraculo : {self.oracle_width:,}")
        print(f"  Amostras        : {self.sample_count}  |  Semente: {self.sample_seed}")
        print(f"  Padroes sinais  : {self.sign_pattern_limit}")
        print(f"  Altura idemp.   : {self.idempotent_height}")
        print(f"  Output          : {self.output_dir}")
        print(f"  JSON            : {self.json_output}")
        print(f"  Progresso       : {self.show_progress}")
        print(f"  Debug           : {self.debug}")
        print("=" * 60)
