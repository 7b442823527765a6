"""
GradReal - Pipeline
Le um documento de algebras e executa os verbos (os comandos do
documento, ou os verbos pedidos na linha de comando).
Ponto de entrada unico para CLI e frontend.

Uso CLI:
    python pipeline.py exemplo.grd                          # comandos do documento
    python pipeline.py exemplo.grd --verb check --target B --identity alternative
    python pipeline.py exemplo.grd --verb compare --target A B
    python pipeline.py - --verb table --target B --json     # documento em stdin
    python pipeline.py exemplo.grd --bound 1024 --xlsx      # limite maior + relatorio Excel

Uso frontend:
    from pipeline import Pipeline
    p = Pipeline(Config(enum_bound=64), progress_callback=my_cb)
    resultado = p.executar(parse(texto))

Codigos de saida: 0 ok, 1 veredito negativo, 2 erro, 3 indeciso.
"""

import argparse
import json
import sys
import time

from config import Config
from spec_document import Node, diagnostico, parse, parse_file, posiciona
from table_store import TableStore
from utils import GradRealError, log
from verbs import ERRO, VERB_REGISTRY, Relatorio, combinar, executar_verbo


class Pipeline:
    """
    Orquestrador de verbos.

    Parametros:
        config: Config injetavel (None = from_env)
        progress_callback: callable(step, event, data) para frontend
    """

    def __init__(self, config: Config = None, progress_callback=None):
        self.cfg = config or Config.from_env()
        self.cb = progress_callback
        self.store = TableStore(self.cfg.output_dir, self.cfg.debug)
        self.resultados = {}

    def executar(self, doc, verbos: list = None, alvos: list = None,
                 flags: list = None, opcoes: dict = None) -> dict:
        """
        Executa os verbos indicados (None = comandos do documento).
        Retorna {"relatorios": [...], "codigo": int, "elapsed": float}.
        """
        self.cfg.aplicar()
        inicio = time.time()
        comandos = self._comandos(doc, verbos, alvos, flags, opcoes)
        self._emit("pipeline_inicio", {"verbs": [c[0] for c in comandos]})

        relatorios = []
        for verbo, nomes, fl, op, no in comandos:
            self._emit(verbo, "verbo_inicio", {"targets": nomes})
            try:
                rel = executar_verbo(verbo, doc, nomes, fl, op, self.store)
            except (GradRealError, OSError) as e:
                if no is not None:
                    posiciona(e, no)
                rel = Relatorio(verbo, ",".join(nomes), ERRO, [f"[ERRO] {diagnostico(e)}"],
                                {"error": diagnostico(e)})
            relatorios.append(rel)
            self._emit(verbo, "verbo_fim", {"exit": rel.codigo})

        elapsed = time.time() - inicio
        self.resultados = {
            "relatorios": relatorios,
            "codigo": combinar(r.codigo for r in relatorios),
            "elapsed": elapsed,
        }
        self._emit("pipeline_fim", {"elapsed": elapsed, "exit": self.resultados["codigo"]})
        return self.resultados

    def exportar_xlsx(self) -> str:
        """Uma aba de resumo e uma aba por relatorio."""
        rels = self.resultados.get("relatorios", [])
        abas = {"resumo": [{"verb": r.verbo, "target": r.alvo, "exit": r.codigo} for r in rels]}
        for i, r in enumerate(rels, start=1):
            abas[f"{i:02d}_{r.verbo}"] = [{"line": s} for s in r.linhas]
        return self.store.exportar_xlsx(abas)

    # ---- privados ------------------------------------------------------------

    def _comandos(self, doc, verbos, alvos, flags, opcoes) -> list:
        if not verbos:
            if not doc.commands:
                return [("build", [], [], {}, None)]
            return [(c.verb, c.targets, c.flags, c.options, c) for c in doc.commands]
        out = []
        for v in verbos:
            nomes = list(alvos or [])
            if not nomes and VERB_REGISTRY.get(v, {}).get("alvos") != "*":
                algs = doc.algebras()
                if not algs:
                    raise GradRealError("document binds no algebra")
                nomes = [algs[-1]]
            out.append((v, nomes, list(flags or []), dict(opcoes or {}), None))
        return out

    def _emit(self, step_or_evt, evt_or_data=None, data=None):
        if self.cb:
            try:
                if data is not None:
                    self.cb(step_or_evt, evt_or_data, data)
                else:
                    self.cb("pipeline", step_or_evt, evt_or_data)
            except Exception:
                pass


# ============================================================================
# API de conveniencia
# ============================================================================

def executar_pipeline(texto: str, config: Config = None, verbos: list = None,
                      progress_callback=None, **kw) -> dict:
    """Funcao unica: parse + execucao."""
    p = Pipeline(config, progress_callback)
    p.cfg.aplicar()
    return p.executar(parse(texto), verbos, **kw)


# ============================================================================
# CLI
# ============================================================================

def _imprime(resultado: dict, como_json: bool):
    rels = resultado["relatorios"]
    if como_json:
        print(json.dumps({"exit": resultado["codigo"], "reports": [r.to_dict() for r in rels]},
                         indent=2, ensure_ascii=False, default=str))
        return
    for r in rels:
        if len(rels) > 1:
            print(f"== {r.verbo} {r.alvo} ==")
        destino = sys.stderr if r.codigo == ERRO else sys.stdout
        print(r.texto(), file=destino)


def main(argv: list = None) -> int:
    parser = argparse.ArgumentParser(description="GradReal - algebras reais graduadas")
    parser.add_argument("documento", help="arquivo de algebras (- para stdin)")
    parser.add_argument("--verb", nargs="*", default=None, choices=list(VERB_REGISTRY),
                        help="verbos a executar (default: comandos do documento)")
    parser.add_argument("--target", nargs="*", default=None, help="bindings alvo")
    parser.add_argument("--identity", help="identidade para check (commutative/associative/alternative/jordan/all)")
    parser.add_argument("--division", nargs="?", const="auto", help="check de divisao graduada (modo)")
    parser.add_argument("--simple", action="store_true", help="check de simplicidade graduada")
    parser.add_argument("--norm", action="store_true", help="check de norma multiplicativa")
    parser.add_argument("--pair", action="store_true", help="classify imprime tambem o rotulo do par")
    parser.add_argument("--fast", action="store_true", help="impressao digital sem centroide")
    parser.add_argument("--save", action="store_true", help="grava as tabelas em OUTPUT_DIR")
    parser.add_argument("--bound", type=int, help="limite de enumeracao de grupos")
    parser.add_argument("--width", type=int, help="largura maxima da busca do oraculo")
    parser.add_argument("--json", action="store_true", help="relatorios em JSON")
    parser.add_argument("--xlsx", action="store_true", help="exporta relatorios para Excel")
    parser.add_argument("--progress", action="store_true", help="barras de progresso")
    parser.add_argument("--debug", action="store_true", help="Habilita modo debug")
    args = parser.parse_args(argv)

    cfg = Config.from_env()
    if args.bound is not None:
        cfg.enum_bound = args.bound
    if args.width is not None:
        cfg.oracle_width = args.width
    if args.json:
        cfg.json_output = True
    if args.progress:
        cfg.show_progress = True
    if args.debug:
        cfg.debug = True
        cfg.imprimir()
    erros = cfg.validar()
    if erros:
        print("[ERRO] Configuracao invalida:", file=sys.stderr)
        for e in erros:
            print(f"  - {e}", file=sys.stderr)
        return ERRO
    cfg.aplicar()

    flags = [f for f in ("simple", "norm", "pair", "fast", "save") if getattr(args, f)]
    opcoes = {}
    if args.identity:
        opcoes["identity"] = Node("str", args.identity)
    if args.division:
        opcoes["division"] = Node("str", args.division)

    try:
        if args.documento == "-":
            doc = parse(sys.stdin.read())
        else:
            doc = parse_file(args.documento)
        p = Pipeline(cfg)
        res = p.executar(doc, args.verb, args.target, flags, opcoes)
    except OSError as e:
        print(f"[ERRO] {e.filename}: {e.strerror}", file=sys.stderr)
        return ERRO
    except GradRealError as e:
        print(f"[ERRO] {diagnostico(e)}", file=sys.stderr)
        return ERRO

    _imprime(res, cfg.json_output)
    if args.xlsx:
        log("CLI", f"relatorio: {p.exportar_xlsx()}", True)
    log("CLI", f"{len(res['relatorios'])} verbo(s) em {res['elapsed']:.2f}s, saida {res['codigo']}")
    return res["codigo"]


if __name__ == "__main__":
    sys.exit(main())
