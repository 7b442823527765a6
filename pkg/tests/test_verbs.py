import pytest

from spec_document import VERBOS, parse
from table_store import TableStore
from utils import GradRealError
from verbs import (
    ERRO, INDECISO, NEGATIVO, OK, Relatorio, combinar, executar_verbo, listar_verbos,
)

DA_DOC = """
T = Z4
H = subgroup(T, [2])
D = family("DA", T=T, H=H, chi=[1/4])
"""


def _comando(doc, i=0, store=None):
    c = doc.commands[i]
    return executar_verbo(c.verb, doc, c.targets, c.flags, c.options, store)


# ── Registro ──

def test_registry_covers_document_verbs():
    assert {v["key"] for v in listar_verbos()} == set(VERBOS)


@pytest.mark.parametrize("codigos, esperado", [
    ([], OK),
    ([OK, OK], OK),
    ([OK, INDECISO], INDECISO),
    ([INDECISO, NEGATIVO], NEGATIVO),
    ([NEGATIVO, ERRO, OK], ERRO),
])
def test_combinar_priority(codigos, esperado):
    assert combinar(codigos) == esperado


def test_executar_verbo_validates_arguments():
    doc = parse("O = octonion()\n")
    with pytest.raises(GradRealError, match="unknown verb"):
        executar_verbo("frobnicate", doc, ["O"])
    with pytest.raises(GradRealError, match="compare takes 2 target"):
        executar_verbo("compare", doc, ["O"])
    with pytest.raises(GradRealError, match="not bound"):
        executar_verbo("check", doc, ["X"])


def test_relatorio_to_dict():
    rel = Relatorio("check", "B", NEGATIVO, ["a", "b"], {"x": 1})
    assert rel.to_dict() == {"verb": "check", "target": "B", "exit": 1,
                             "lines": ["a", "b"], "data": {"x": 1}}
    assert rel.texto() == "a\nb"


# ── build / table ──

def test_build_summarizes_all_algebras(tmp_path):
    doc = parse("O = octonion()\nQ = quaternion()\nG = Z2\n")
    store = TableStore(output_dir=str(tmp_path))
    rel = executar_verbo("build", doc, [], ["save"], {}, store)
    assert rel.codigo == OK
    assert rel.alvo == "O,Q"
    assert rel.dados["O"]["dim"] == 8
    assert rel.dados["Q"]["support"] == 4
    assert "  dimension : 8" in rel.linhas
    assert (tmp_path / "O.json").exists()
    assert store.has("Q")


def test_table_verb_emits_text_and_json():
    doc = parse("Q = quaternion()\n")
    rel = executar_verbo("table", doc, ["Q"])
    assert rel.linhas[0] == "# GradReal multiplication table"
    assert len(rel.dados["table"]["labels"]) == 4
    assert rel.codigo == OK


# ── check ──

@pytest.mark.parametrize("comando, codigo", [
    ("check O identity=alternative", OK),
    ("check O identity=associative", NEGATIVO),
    ("check O identity=all", NEGATIVO),
    ("check O division", OK),
    ("check O division=bare simple norm", OK),
    ("check O", OK),
])
def test_check_exit_codes(comando, codigo):
    doc = parse(f"O = octonion()\n{comando}\n")
    assert _comando(doc).codigo == codigo


def test_check_reports_each_verdict():
    doc = parse("O = octonion()\ncheck O identity=associative division=bare\n")
    rel = _comando(doc)
    assert set(rel.dados) == {"identity associative", "division (bare)"}
    assert rel.dados["identity associative"]["status"] == "fail"
    assert rel.dados["identity associative"]["witness"] is not None
    assert rel.dados["division (bare)"]["status"] == "division"
    assert rel.linhas[1] == "division (bare): division"


def test_check_on_group_binding_is_an_error():
    doc = parse("G = Z2\n")
    with pytest.raises(GradRealError, match="expected an algebra"):
        executar_verbo("check", doc, ["G"])


# ── centroid / classify ──

def test_centroid_report():
    doc = parse(DA_DOC + "centroid D\n")
    rel = _comando(doc)
    assert rel.codigo == OK
    assert rel.dados["dimension"] == 2
    assert rel.linhas[0] == "dimension   : 2"


def test_classify_da_family():
    doc = parse(DA_DOC + "classify D pair\n")
    rel = _comando(doc)
    assert rel.codigo == OK
    assert "DA(T,H,O): ([-4])" in rel.linhas
    assert "item 1(a), representative H{-1}" in rel.linhas
    assert rel.dados["item"] == "1(a)"
    assert rel.linhas[-1].startswith("pair label: ")


def test_classify_graded_field():
    doc = parse("B = twisted(Z4, [1/4])\nclassify B\n")
    rel = _comando(doc)
    assert rel.codigo == OK
    assert rel.dados["family"] == "graded-field"
    assert sorted(rel.dados["chi0"].values()) == [-1, 1]
    assert rel.linhas[0].startswith("graded-field D_H")


def test_classify_cartan_grading():
    doc = parse("G = Z2^2\nB = cartan(G, (1,0), (0,1), (1,1))\nclassify B\n")
    rel = _comando(doc)
    assert rel.codigo == OK
    assert rel.dados["case"].startswith("cartan")
    assert rel.linhas[-1] == "not graded-division"


def test_classify_jordan():
    doc = parse("B = jordan(Z2, kappa={1: 2}, sigma={1: 0})\nclassify B\n")
    rel = _comando(doc)
    assert rel.codigo == OK
    assert rel.linhas[0].startswith("kappa: ")
    assert not rel.dados["division"]
    assert rel.linhas[-1] == "not graded-division"


def test_classify_without_construction_data_is_undecided():
    doc = parse("B = induced(octonion(rank=3), hom(Z2^3, Z2, [1, 1, 1]))\nclassify B fast\n")
    rel = _comando(doc)
    assert rel.codigo == INDECISO
    assert rel.linhas[0] == "no construction data: fingerprint only"
    assert "fingerprint" in rel.dados


# ── compare / oracle ──

@pytest.mark.parametrize("rot_b, codigo, decisao", [
    ("3/4", OK, True),
    ("1/2", NEGATIVO, False),
])
def test_compare_graded_fields(rot_b, codigo, decisao):
    doc = parse(f"A = twisted(Z4, [1/4])\nB = twisted(Z4, [{rot_b}])\ncompare A B\n")
    rel = _comando(doc)
    assert rel.codigo == codigo
    assert rel.dados["decider"] == {"name": "graded-field", "isomorphic": decisao}
    assert rel.alvo == "A,B"


def test_compare_different_groups():
    doc = parse("O = octonion()\nQ = quaternion()\ncompare O Q\n")
    rel = _comando(doc)
    assert rel.codigo == NEGATIVO
    assert rel.linhas[-1] == "not isomorphic"


def test_oracle_pair_of_graded_fields():
    doc = parse("A = twisted(Z4, [1/4])\nB = twisted(Z4, [3/4])\noracle A B\n")
    rel = _comando(doc)
    assert rel.codigo == OK
    assert rel.dados == {"graded-field iso search": "pass"}


def test_oracle_norm_and_nothing_to_check():
    doc = parse("O = octonion()\nJ = jordan(Z2, kappa={1: 2}, sigma={1: 0})\noracle O\noracle J\n")
    rel = _comando(doc, 0)
    assert rel.codigo == OK
    assert rel.dados["norm multiplicative"] == "pass"
    vazio = _comando(doc, 1)
    assert vazio.codigo == INDECISO
    assert vazio.linhas == ["undecided: no applicable verification"]
