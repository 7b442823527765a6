"""
GradReal - Funcoes Utilitarias Consolidadas
Hierarquia de erros, log com tags, racionais exatos em texto `p/q`
e barra de progresso opcional.
"""

import sys
from fractions import Fraction

import config

# =============================================================================
# ERROS
# =============================================================================


class GradRealError(ValueError):
    """Erro base de todas as operacoes da biblioteca."""


class GroupError(GradRealError):
    """Grupo, elemento, homomorfismo ou subgrupo invalido."""


class GradingError(GradRealError):
    """Tabela de multiplicacao inconsistente com a graduacao."""


class CharacterError(GradRealError):
    """Caractere mal definido."""


class ConstructionError(GradRealError):
    """Parametros invalidos para um construtor."""


class DescriptorError(GradRealError):
    """Descritores incompativeis para os decisores de classificacao."""


class SpecSyntaxError(GradRealError):
    """Erro de sintaxe no documento de algebras (com linha/coluna)."""

    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(msg)
        self.msg = msg
        self.line = line
        self.col = col

    def __str__(self):
        if self.line:
            return f"{self.line}:{self.col}: {self.msg}"
        return self.msg


class BindingError(SpecSyntaxError):
    """Nome nao definido ou tipo incompativel no documento."""


# =============================================================================
# LOG
# =============================================================================

def log(tag: str, msg: str, debug: bool = None):
    """Imprime `[TAG] msg` quando o modo debug esta ligado."""
    if debug is None:
        debug = config.DEBUG
    if debug:
        print(f"[{tag}] {msg}")


def aviso(msg: str):
    """Avisos sempre saem em stderr."""
    print(f"[AVISO] {msg}", file=sys.stderr)


def progresso(iteravel, desc: str = "", total: int = None):
    """Envolve o iteravel com tqdm quando SHOW_PROGRESS esta ligado."""
    if not config.SHOW_PROGRESS:
        return iteravel
    try:
        from tqdm import tqdm
    except ImportError:
        return iteravel
    return tqdm(iteravel, desc=desc, total=total, leave=False)


# =============================================================================
# RACIONAIS
# =============================================================================

def parse_rational(texto: str) -> Fraction:
    """Le `p`, `-p` ou `p/q`. Denominador zero gera GradRealError."""
    s = str(texto).strip()
    try:
        if "/" in s:
            num, _, den = s.partition("/")
            num, den = int(num), int(den)
            if den == 0:
                raise GradRealError(f"zero denominator in {s!r}")
            return Fraction(num, den)
        return Fraction(int(s))
    except (TypeError, ValueError) as e:
        if isinstance(e, GradRealError):
            raise
        raise GradRealError(f"invalid rational {s!r}") from e


def format_rational(q) -> str:
    """Formata como `p` ou `p/q`."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_sign(s: int) -> str:
    return "+" if s > 0 else "-"
