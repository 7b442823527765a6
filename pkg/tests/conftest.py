"""
GradReal - Fixtures compartilhadas dos testes.
"""
import os
import sys

import pytest

_PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if _PROJECT_ROOT not in sys.path:
    sys.path.insert(0, _PROJECT_ROOT)

import config  # noqa: E402

_LIMITES = ("ENUM_BOUND", "ORACLE_WIDTH", "SAMPLE_COUNT", "SAMPLE_SEED", "SIGN_PATTERN_LIMIT",
            "IDEMPOTENT_HEIGHT", "DEBUG", "SHOW_PROGRESS", "OUTPUT_DIR")


@pytest.fixture(autouse=True)
def _config_isolada(monkeypatch):
    """Config.aplicar() altera constantes de modulo; restaura ao fim de cada teste."""
    for nome in _LIMITES:
        monkeypatch.setattr(config, nome, getattr(config, nome))
    monkeypatch.setattr(config, "DEBUG", False)
    monkeypatch.setattr(config, "SHOW_PROGRESS", False)


@pytest.fixture
def escreve_doc(tmp_path):
    """Grava um documento em tmp_path e devolve o caminho."""
    def _escreve(texto: str, nome: str = "doc.grd") -> str:
        path = tmp_path / nome
        path.write_text(texto, encoding="utf-8")
        return str(path)
    return _escreve
