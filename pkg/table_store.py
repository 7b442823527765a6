"""
GradReal - Persistencia de Tabelas
Formato texto `b_i * b_j = q1*b_k1 + ...` com cabecalho de grupo e graus,
codificacao JSON com o mesmo tensor de constantes, e um armazem thread-safe
de tabelas nomeadas com exportacao de relatorios para Excel.
"""

import json
import os
import threading
from datetime import datetime

import pandas as pd

import config
from abgroup import FinAbGroup
from galg import GradedAlgebra, JordanMeta, NormData, format_vector
from utils import SpecSyntaxError, format_rational, log, parse_rational

CABECALHO = "# GradReal multiplication table"


# ============================================================================
# Formato texto
# ============================================================================

def format_table(b: GradedAlgebra) -> str:
    linhas = [CABECALHO, "group: " + " ".join(str(n) for n in b.group.orders)]
    if b.kind:
        linhas.append(f"kind: {b.kind}")
    linhas.append("basis:")
    for s, g in zip(b.labels, b.degrees):
        linhas.append(f"  {s} {g}")
    if b.is_unital:
        linhas.append(f"unit: {format_vector(b, b.unit)}")
    linhas.append("products:")
    for (i, j), prod in sorted(b.sc.items()):
        linhas.append(f"  {b.labels[i]} * {b.labels[j]} = {format_vector(b, prod)}")
    return "\n".join(linhas) + "\n"


def _parse_grau(grupo: FinAbGroup, texto: str, linha: int):
    texto = texto.strip()
    if not (texto.startswith("(") and texto.endswith(")")):
        raise SpecSyntaxError(f"invalid degree {texto!r}", linha, 1)
    corpo = texto[1:-1].strip()
    try:
        coords = [int(x) for x in corpo.split(",")] if corpo else []
    except ValueError:
        raise SpecSyntaxError(f"invalid degree {texto!r}", linha, 1) from None
    if len(coords) != grupo.rank:
        raise SpecSyntaxError(f"degree {texto} does not match group {grupo}", linha, 1)
    return grupo.element(coords)


def _parse_termos(texto: str, indice: dict, linha: int) -> dict:
    texto = texto.strip()
    if texto == "0":
        return {}
    out = {}
    for termo in texto.split(" + "):
        if "*" not in termo:
            raise SpecSyntaxError(f"term {termo!r} is not of the form q*label", linha, 1)
        coef, rotulo = termo.split("*", 1)
        rotulo = rotulo.strip()
        if rotulo not in indice:
            raise SpecSyntaxError(f"unknown basis label {rotulo!r}", linha, 1)
        try:
            c = parse_rational(coef.strip())
        except ValueError as e:
            raise SpecSyntaxError(str(e), linha, 1) from None
        k = indice[rotulo]
        out[k] = out.get(k, 0) + c
    return out


def parse_table(texto: str) -> GradedAlgebra:
    grupo, kind, unit = None, "", None
    labels, degrees, sc = [], [], {}
    secao = None
    indice = {}
    for n, bruta in enumerate(texto.splitlines(), start=1):
        linha = bruta.strip()
        if not linha or linha.startswith("#"):
            continue
        if linha.startswith("group:"):
            try:
                grupo = FinAbGroup(tuple(int(x) for x in linha[6:].split()))
            except ValueError as e:
                raise SpecSyntaxError(f"invalid group line: {e}", n, 1) from None
            secao = None
        elif linha.startswith("kind:"):
            kind = linha[5:].strip()
        elif linha == "basis:":
            secao = "basis"
        elif linha == "products:":
            secao = "products"
        elif linha.startswith("unit:"):
            unit = linha[5:]
            unit_linha = n
        elif secao == "basis":
            if grupo is None:
                raise SpecSyntaxError("basis given before group", n, 1)
            partes = linha.split(" ", 1)
            if len(partes) != 2:
                raise SpecSyntaxError("basis line needs a label and a degree", n, 1)
            if partes[0] in indice:
                raise SpecSyntaxError(f"duplicate basis label {partes[0]!r}", n, 1)
            indice[partes[0]] = len(labels)
            labels.append(partes[0])
            degrees.append(_parse_grau(grupo, partes[1], n))
        elif secao == "products":
            if " = " not in linha or " * " not in linha.split(" = ", 1)[0]:
                raise SpecSyntaxError("product line must read `a * b = ...`", n, 1)
            esq, dir_ = linha.split(" = ", 1)
            a, c = (s.strip() for s in esq.split(" * ", 1))
            for s in (a, c):
                if s not in indice:
                    raise SpecSyntaxError(f"unknown basis label {s!r}", n, 1)
            sc[(indice[a], indice[c])] = _parse_termos(dir_, indice, n)
        else:
            raise SpecSyntaxError(f"unexpected line {linha!r}", n, 1)
    if grupo is None:
        raise SpecSyntaxError("missing group line", 1, 1)
    if unit is not None:
        unit = _parse_termos(unit, indice, unit_linha)
    log("TABELA", f"parsed table of dim {len(labels)} over {grupo}")
    return GradedAlgebra(grupo, tuple(labels), tuple(degrees), sc, unit, kind=kind)


# ============================================================================
# JSON
# ============================================================================

def _vec_json(v: dict) -> dict:
    return {str(k): format_rational(c) for k, c in sorted(v.items())}


def _vec_from_json(d: dict) -> dict:
    return {int(k): parse_rational(c) for k, c in d.items()}


def to_json(b: GradedAlgebra) -> dict:
    obj = {
        "group": list(b.group.orders),
        "labels": list(b.labels),
        "degrees": [list(g.coords) for g in b.degrees],
        "kind": b.kind,
        "unit": _vec_json(b.unit) if b.is_unital else None,
        "sc": [[i, j, _vec_json(p)] for (i, j), p in sorted(b.sc.items())],
    }
    if b.composition is not None:
        obj["composition"] = {
            "field_part": list(b.composition.field_part),
            "involution": {str(i): _vec_json(v) for i, v in sorted(b.composition.involution.items())},
        }
    if b.jordan is not None:
        jm = b.jordan
        obj["jordan"] = {"unit_index": jm.unit_index, "v_indices": list(jm.v_indices),
                         "complex": jm.complex, "imag_index": jm.imag_index}
    return obj


def from_json(obj: dict) -> GradedAlgebra:
    grupo = FinAbGroup(tuple(obj["group"]))
    composition = None
    if obj.get("composition"):
        c = obj["composition"]
        composition = NormData(tuple(c["field_part"]),
                               {int(i): _vec_from_json(v) for i, v in c["involution"].items()})
    jordan = None
    if obj.get("jordan"):
        j = obj["jordan"]
        jordan = JordanMeta(j["unit_index"], tuple(j["v_indices"]), j.get("complex", False), j.get("imag_index"))
    return GradedAlgebra(
        group=grupo,
        labels=tuple(obj["labels"]),
        degrees=tuple(grupo.element(c) for c in obj["degrees"]),
        sc={(i, j): _vec_from_json(p) for i, j, p in obj["sc"]},
        unit=_vec_from_json(obj["unit"]) if obj.get("unit") is not None else None,
        composition=composition,
        jordan=jordan,
        kind=obj.get("kind", ""),
    )


# ============================================================================
# Armazem de tabelas
# ============================================================================

class TableStore:
    """
    Tabelas nomeadas em disco (json + txt), thread-safe.

    Uso CLI:
        store = TableStore()

    Uso frontend (pasta por execucao):
        store = TableStore(output_dir="/tmp/run123")
    """

    def __init__(self, output_dir: str = None, debug: bool = False):
        self.output_dir = output_dir or config.OUTPUT_DIR
        self.debug = debug
        self._lock = threading.Lock()
        self._indice_path = os.path.join(self.output_dir, config.TABLES_FILE)
        self.indice = self._load_indice()

    # ── I/O helpers ──────────────────────────────────────────────────────────

    def _path(self, nome: str, ext: str) -> str:
        return os.path.join(self.output_dir, f"{nome}.{ext}")

    def _load_indice(self) -> dict:
        if os.path.isfile(self._indice_path):
            try:
                with open(self._indice_path, "r", encoding="utf-8") as f:
                    d = json.load(f)
                return d if isinstance(d, dict) else {}
            except (OSError, json.JSONDecodeError):
                pass
        return {}

    def _save_indice(self):
        os.makedirs(self.output_dir, exist_ok=True)
        with open(self._indice_path, "w", encoding="utf-8") as f:
            json.dump(self.indice, f, indent=2, ensure_ascii=False)

    # ── Tabelas ──────────────────────────────────────────────────────────────

    def save(self, nome: str, b: GradedAlgebra) -> str:
        with self._lock:
            os.makedirs(self.output_dir, exist_ok=True)
            with open(self._path(nome, "json"), "w", encoding="utf-8") as f:
                json.dump(to_json(b), f, indent=1, ensure_ascii=False)
            with open(self._path(nome, "txt"), "w", encoding="utf-8") as f:
                f.write(format_table(b))
            self.indice[nome] = {"dim": b.dim, "group": str(b.group), "ts": datetime.now().isoformat()}
            self._save_indice()
        log("TABELA", f"saved {nome} (dim {b.dim})", self.debug or None)
        return self._path(nome, "json")

    def load(self, nome: str) -> GradedAlgebra:
        with self._lock:
            with open(self._path(nome, "json"), "r", encoding="utf-8") as f:
                return from_json(json.load(f))

    def has(self, nome: str) -> bool:
        with self._lock:
            return nome in self.indice

    def listar(self) -> list:
        with self._lock:
            return [{"name": k, **v} for k, v in sorted(self.indice.items())]

    # ── Relatorios ───────────────────────────────────────────────────────────

    def exportar_xlsx(self, relatorios: dict, nome: str = None) -> str:
        """relatorios: aba -> lista de dicts (uma linha cada)."""
        path = os.path.join(self.output_dir, nome or config.RELATORIO_XLSX)
        with self._lock:
            os.makedirs(self.output_dir, exist_ok=True)
            with pd.ExcelWriter(path, engine="openpyxl") as writer:
                for aba, linhas in relatorios.items():
                    df = pd.DataFrame(linhas or [{}])
                    df.to_excel(writer, sheet_name=str(aba)[:31], index=False)
        log("TABELA", f"report with {len(relatorios)} sheets -> {path}")
        return path

    def get_stats(self) -> dict:
        with self._lock:
            return {"tables": len(self.indice), "output_dir": self.output_dir}
