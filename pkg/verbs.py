"""
GradReal - Verbos da CLI
Cada verbo e uma funcao registrada via decorator; o pipeline e a API web
descobrem os verbos pelo registro.
Para adicionar um verbo: criar funcao + @register_verb(...).

Codigos de saida: 0 sucesso/verdadeiro, 1 veredito negativo, 2 erro,
3 indeciso.
"""

from dataclasses import dataclass, field

from abgroup import torsion_subgroup
from classify import (
    alt_descriptor_of, alt_equiv_class, alt_iso_equal, fingerprint, graded_field_iso,
    jordan_descriptor_of, jordan_division_predicate, jordan_iso_equal,
    jordan_sigma_canonical, oracle_graded_field_iso, pair_in_support, pair_label, tau_on_two_torsion,
    weyl_canonical,
)
from constructions import (
    JordanFormData, cd_loop_iso, centroid_module_iso, check_norm_multiplicative,
    jordan_model_map, loop_descriptor_of, twist_rescaling_map,
)
from galg import (
    GradedAlgebra, Verdict, algebra_kind, centroid, check_identity,
    graded_division_check, graded_simple_check, verify_iso,
)
from table_store import TableStore, format_table, to_json
from utils import ConstructionError, DescriptorError, GradRealError, format_sign, log

OK, NEGATIVO, ERRO, INDECISO = 0, 1, 2, 3
IDENTIDADES = ("commutative", "associative", "alternative", "jordan")

# ============================================================================
# Registry
# ============================================================================

VERB_REGISTRY: dict = {}


def register_verb(key: str, label: str, description: str = "", alvos: str = "1"):
    """
    Decorator para registrar um verbo.
    key: nome usado no documento e na CLI (ex: "check")
    alvos: quantos bindings o verbo consome ("1", "2", "1-2", "*")
    """
    def decorator(fn):
        VERB_REGISTRY[key] = {
            "fn": fn,
            "key": key,
            "label": label,
            "description": description,
            "alvos": alvos,
        }
        return fn
    return decorator


def listar_verbos() -> list:
    """Retorna lista de verbos para o frontend."""
    return [
        {"key": k, "label": v["label"], "description": v["description"], "targets": v["alvos"]}
        for k, v in VERB_REGISTRY.items()
    ]


@dataclass
class Relatorio:
    verbo: str
    alvo: str
    codigo: int
    linhas: list = field(default_factory=list)
    dados: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"verb": self.verbo, "target": self.alvo, "exit": self.codigo,
                "lines": list(self.linhas), "data": self.dados}

    def texto(self) -> str:
        return "\n".join(self.linhas)


def codigo_de(v: Verdict) -> int:
    if v:
        return OK
    return INDECISO if v.undecided else NEGATIVO


def combinar(codigos) -> int:
    """Erro domina, depois negativo, depois indeciso."""
    codigos = set(codigos)
    for c in (ERRO, NEGATIVO, INDECISO):
        if c in codigos:
            return c
    return OK


def executar_verbo(verbo: str, doc, alvos: list, flags: list = (), opcoes: dict = None,
                   store: TableStore = None) -> Relatorio:
    entrada = VERB_REGISTRY.get(verbo)
    if entrada is None:
        raise GradRealError(f"unknown verb {verbo!r}")
    n = entrada["alvos"]
    if n == "1" and len(alvos) != 1 or n == "2" and len(alvos) != 2 or n == "1-2" and len(alvos) not in (1, 2):
        raise GradRealError(f"{verbo} takes {n} target(s), got {len(alvos)}")
    log("CLI", f"{verbo} {' '.join(alvos)}")
    return entrada["fn"](doc, list(alvos), list(flags), dict(opcoes or {}), store)


# ============================================================================
# Helpers internos
# ============================================================================

def _resumo(b: GradedAlgebra) -> list:
    dims = ", ".join(f"{g}:{len(c)}" for g, c in sorted(b.components.items()))
    return [
        f"group     : {b.group}",
        f"dimension : {b.dim}",
        f"kind      : {algebra_kind(b) or '-'}",
        f"unital    : {'yes' if b.is_unital else 'no'}",
        f"components: {dims}",
    ]


def _opcao(doc, opcoes: dict, nome: str, default=None):
    if nome not in opcoes:
        return default
    return doc.option(opcoes[nome])


def _verdict_linha(nome: str, v: Verdict) -> str:
    return f"{nome}: {v}"


def _chi0_texto(chi0) -> str:
    if not chi0:
        return "-"
    return " ".join(f"{x}{format_sign(s)}" for x, s in chi0)


# ============================================================================
# Verbos registrados
# ============================================================================

@register_verb("build", "Build", "Constroi e valida a graduacao dos bindings", alvos="*")
def verbo_build(doc, alvos, flags, opcoes, store):
    nomes = alvos or doc.algebras()
    linhas, dados = [], {}
    for nome in nomes:
        b = doc.algebra(nome)
        linhas.append(f"{nome}: {b}")
        linhas.extend("  " + s for s in _resumo(b))
        dados[nome] = {"dim": b.dim, "group": str(b.group), "kind": algebra_kind(b),
                       "support": len(b.components)}
        if "save" in flags and store is not None:
            linhas.append(f"  saved   : {store.save(nome, b)}")
    return Relatorio("build", ",".join(nomes), OK, linhas, dados)


@register_verb("table", "Table", "Emite a tabela de multiplicacao (texto ou JSON)")
def verbo_table(doc, alvos, flags, opcoes, store):
    nome = alvos[0]
    b = doc.algebra(nome)
    obj = to_json(b)
    linhas = format_table(b).rstrip("\n").split("\n")
    if store is not None and "save" in flags:
        store.save(nome, b)
    return Relatorio("table", nome, OK, linhas, {"table": obj})


@register_verb("check", "Check", "Identidades, simplicidade graduada, divisao graduada e norma")
def verbo_check(doc, alvos, flags, opcoes, store):
    nome = alvos[0]
    b = doc.algebra(nome)
    verditos = []
    ident = _opcao(doc, opcoes, "identity")
    if ident == "all":
        kinds = list(IDENTIDADES)
    elif ident:
        kinds = [ident]
    else:
        kinds = []
    for k in kinds:
        verditos.append((f"identity {k}", check_identity(b, k)))
    if "division" in flags or "division" in opcoes:
        modo = _opcao(doc, opcoes, "division", "auto")
        verditos.append((f"division ({modo})", graded_division_check(b, modo)))
    if "simple" in flags:
        verditos.append(("graded-simple", graded_simple_check(b)))
    if "norm" in flags:
        verditos.append(("norm multiplicative", check_norm_multiplicative(b)))
    if not verditos:
        k = algebra_kind(b)
        if k in IDENTIDADES:
            verditos.append((f"identity {k}", check_identity(b, k)))
        verditos.append(("graded-simple", graded_simple_check(b)))
    linhas = [_verdict_linha(n, v) for n, v in verditos]
    codigo = combinar(codigo_de(v) for _, v in verditos)
    dados = {n: {"status": v.status, "witness": None if v.witness is None else str(v.witness)}
             for n, v in verditos}
    return Relatorio("check", nome, codigo, linhas, dados)


@register_verb("centroid", "Centroid", "Relatorio do centroide (suporte, chi0, split)")
def verbo_centroid(doc, alvos, flags, opcoes, store):
    nome = alvos[0]
    rep = centroid(doc.algebra(nome))
    s = rep.summary()
    chi0 = "-" if s["chi0"] is None else " ".join(f"{k}{format_sign(v)}" for k, v in s["chi0"].items())
    linhas = [
        f"dimension   : {s['dimension']}",
        f"support     : {' '.join(s['support'])}",
        f"identity dim: {s['identity_dim']}",
        f"chi0        : {chi0}",
        f"split       : {s['split']}",
    ]
    return Relatorio("centroid", nome, OK, linhas, s)


def _classifica_alt(b, linhas, dados) -> int:
    desc = alt_descriptor_of(b)
    dados["case"] = desc.case
    if desc.case.startswith("cartan"):
        tripla = weyl_canonical(desc.triple)
        linhas.append(f"Cartan grading, triple ({', '.join(str(x) for x in tripla)}) up to Weyl action")
        linhas.append("not graded-division")
        dados["triple"] = [str(x) for x in tripla]
        return OK
    try:
        ec = alt_equiv_class(desc)
    except DescriptorError as e:
        linhas.append(f"{desc.case}: chi0 {_chi0_texto(desc.chi0)} ({e})")
        return INDECISO
    linhas.append(str(ec))
    linhas.append(f"item {ec.item}, representative {ec.family}")
    dados.update({"tag": ec.tag, "label": str(ec.label), "item": ec.item, "family": ec.family})
    return OK


def _tem_descritor(fn, b) -> bool:
    try:
        fn(b)
    except DescriptorError:
        return False
    return True


def _tem_jordan(b) -> bool:
    return _tem_descritor(jordan_descriptor_of, b)


def _tem_alt(b) -> bool:
    return _tem_descritor(alt_descriptor_of, b)


def _classifica_jordan(b, linhas, dados) -> int:
    desc = jordan_descriptor_of(b)
    kappa = desc.form.kappa
    linhas.append("kappa: " + " ".join(f"{g}:{k}" for g, k in sorted(kappa.items())))
    dados["kappa"] = {str(g): k for g, k in sorted(kappa.items())}
    if desc.complex:
        div = jordan_division_predicate(kappa, {}, "complex")
        linhas.append("complex centroid")
    else:
        tau = tau_on_two_torsion(desc.quotient)
        canon = jordan_sigma_canonical(kappa, desc.form.sigma, tau)
        linhas.append("sigma: " + " ".join(f"{g}:{s}" for g, s in sorted(canon.items())) + " (canonical)")
        linhas.append(f"chi0 : {_chi0_texto(desc.chi0)}")
        dados["sigma"] = {str(g): s for g, s in sorted(canon.items())}
        div = jordan_division_predicate(kappa, desc.form.sigma, "real")
    linhas.append("graded-division" if div else "not graded-division")
    dados["division"] = div
    return OK


@register_verb("classify", "Classify", "Familia e rotulo canonico a partir dos dados de construcao")
def verbo_classify(doc, alvos, flags, opcoes, store):
    nome = alvos[0]
    b = doc.algebra(nome)
    linhas, dados = [], {}
    d = loop_descriptor_of(b)
    base = None if d is None else d.base
    if d is not None and b.kind == "field" and base is None:
        pres, _ = d.subgroup.presentation
        chi0 = [(x, d.chi.sign(x)) for x in sorted(torsion_subgroup(d.ambient, 2).elements) if x in d.subgroup]
        linhas.append(f"graded-field D_H, H = {d.subgroup} ({pres})")
        linhas.append(f"chi0: {_chi0_texto(chi0)}")
        dados.update({"family": "graded-field", "chi0": {str(x): s for x, s in chi0}})
        codigo = OK
    elif _tem_jordan(b):
        codigo = _classifica_jordan(b, linhas, dados)
    elif _tem_alt(b):
        codigo = _classifica_alt(b, linhas, dados)
    else:
        fp = fingerprint(b, with_centroid="fast" not in flags)
        linhas.append("no construction data: fingerprint only")
        linhas.extend(f"  {k}: {v}" for k, v in fp.summary().items())
        dados["fingerprint"] = fp.summary()
        codigo = INDECISO
    if "pair" in flags and "label" in dados:
        t, h, _ = pair_in_support(alt_descriptor_of(b))
        linhas.append(f"pair label: {pair_label(t, h)}")
    return Relatorio("classify", nome, codigo, linhas, dados)


def _decisor(a: GradedAlgebra, b: GradedAlgebra):
    """(resultado, nome do decisor) ou (None, None) sem descritores comparaveis."""
    da, db = loop_descriptor_of(a), loop_descriptor_of(b)
    if da is None or db is None:
        return None, None
    if da.ambient != db.ambient or not da.subgroup.same_as(db.subgroup):
        return False, "centroid support"
    if a.kind == "field" and b.kind == "field" and da.base is None and db.base is None:
        return graded_field_iso(da.chi, db.chi, da.subgroup), "graded-field"
    try:
        return alt_iso_equal(alt_descriptor_of(a), alt_descriptor_of(b)), "alternative"
    except DescriptorError:
        pass
    try:
        return jordan_iso_equal(jordan_descriptor_of(a), jordan_descriptor_of(b)), "jordan"
    except DescriptorError:
        return None, None


@register_verb("compare", "Compare", "Decisor aplicavel + conferencia de impressoes digitais", alvos="2")
def verbo_compare(doc, alvos, flags, opcoes, store):
    a, b = doc.algebra(alvos[0]), doc.algebra(alvos[1])
    alvo = f"{alvos[0]},{alvos[1]}"
    linhas, dados = [], {}
    decisao, quem = _decisor(a, b)
    if decisao is not None:
        linhas.append(f"decider ({quem}): {'isomorphic' if decisao else 'not isomorphic'}")
        dados["decider"] = {"name": quem, "isomorphic": decisao}
    diff = None
    if a.group == b.group:
        fa = fingerprint(a, with_centroid="fast" not in flags)
        fb = fingerprint(b, with_centroid="fast" not in flags)
        diff = fa.diff(fb)
        linhas.append("fingerprints: " + ("equal" if not diff else "differ in " + ", ".join(diff)))
        dados["fingerprint_diff"] = diff
    else:
        linhas.append(f"fingerprints: grading groups differ ({a.group} vs {b.group})")
        diff = ["group"]
    if decisao and diff:
        raise GradRealError(f"decider says isomorphic but fingerprints differ in {', '.join(diff)}")
    if decisao is None:
        if diff:
            linhas.append("not isomorphic")
            return Relatorio("compare", alvo, NEGATIVO, linhas, dados)
        linhas.append("undecided: no applicable decider")
        return Relatorio("compare", alvo, INDECISO, linhas, dados)
    linhas.append("isomorphic" if decisao else "not isomorphic")
    return Relatorio("compare", alvo, OK if decisao else NEGATIVO, linhas, dados)


def _confere(nome: str, fn, resultados: list):
    try:
        v = fn()
    except ConstructionError as e:
        resultados.append((nome, "skipped", str(e)))
        return
    if isinstance(v, Verdict):
        resultados.append((nome, "pass" if v else "fail", "" if v.witness is None else str(v.witness)))
    else:
        resultados.append((nome, "pass" if v else "fail", ""))


def _oraculo_laco(doc, b: GradedAlgebra, resultados: list):
    ctor, args = doc.origin(b)
    if ctor != "loop_real":
        return
    a, q = args["algebra"], args["pi"]
    chi = args.get("chi")

    def centroide():
        rep = centroid(b)
        if not rep.support.same_as(q.subgroup):
            return Verdict("fail", f"support {sorted(str(x) for x in rep.support.elements)}")
        if rep.chi0 is not None and chi is not None:
            for h, s in rep.chi0.items():
                if chi.sign(h) != s:
                    return Verdict("fail", f"chi0 at {h}")
        return Verdict("pass")

    def variedade():
        for k in IDENTIDADES:
            if bool(check_identity(a, k)) != bool(check_identity(b, k)):
                return Verdict("fail", k)
        return Verdict("pass")

    _confere("centroid identification", centroide, resultados)
    _confere("identities preserved", variedade, resultados)
    _confere("centroid module iso", lambda: verify_iso(centroid_module_iso(a, q, chi)), resultados)
    ctor_a, args_a = doc.origin(a)
    if ctor_a == "cd":
        k = q.section(args_a["k"])
        _confere("Cayley-Dickson loop iso",
                 lambda: verify_iso(cd_loop_iso(args_a["algebra"], q, chi, args_a["alpha"], k)), resultados)
    if isinstance(a.descriptor, JordanFormData) and a.jordan is not None and not a.jordan.complex:
        _confere("Jordan model map", lambda: verify_iso(jordan_model_map(a.descriptor, q, chi)), resultados)


@register_verb("oracle", "Oracle", "Verificadores por forca bruta e mapas explicitos", alvos="1-2")
def verbo_oracle(doc, alvos, flags, opcoes, store):
    resultados = []
    if len(alvos) == 2:
        a, b = doc.algebra(alvos[0]), doc.algebra(alvos[1])
        f = oracle_graded_field_iso(a, b)
        resultados.append(("graded-field iso search", "pass" if f is not None else "fail", ""))
        decisao, quem = _decisor(a, b)
        if quem == "graded-field" and decisao != (f is not None):
            raise GradRealError("oracle and graded-field decider disagree")
    else:
        b = doc.algebra(alvos[0])
        _oraculo_laco(doc, b, resultados)
        ctor, args = doc.origin(b)
        if ctor == "twist":
            _confere("twist rescaling map",
                     lambda: verify_iso(twist_rescaling_map(args["algebra"], args["lam"], args["pi"])), resultados)
        if b.composition is not None and algebra_kind(b) in ("field", "commutative", "associative", "alternative"):
            _confere("norm multiplicative", lambda: check_norm_multiplicative(b), resultados)
    linhas = [f"{n}: {s}" + (f" ({w})" if w else "") for n, s, w in resultados]
    dados = {n: s for n, s, _ in resultados}
    feitos = [s for _, s, _ in resultados if s != "skipped"]
    if not feitos:
        linhas.append("undecided: no applicable verification")
        codigo = INDECISO
    else:
        codigo = NEGATIVO if "fail" in feitos else OK
    return Relatorio("oracle", ",".join(alvos), codigo, linhas, dados)
