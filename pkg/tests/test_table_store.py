import json
import os
from fractions import Fraction

import pytest

from abgroup import FinAbGroup
from constructions import jordan_bilinear, octonion_graded, quaternion_graded, twisted_group_algebra
from chars import Character
from table_store import TableStore, format_table, from_json, parse_table, to_json
from utils import SpecSyntaxError

Z2 = FinAbGroup((2,))


def _quaternions():
    return quaternion_graded(Z2, [Z2.gen(0)], [1]).algebra


def test_format_table_layout():
    texto = format_table(_quaternions())
    linhas = texto.splitlines()
    assert linhas[0] == "# GradReal multiplication table"
    assert linhas[1] == "group: 2"
    assert "kind: associative" in linhas
    assert "  1 (0)" in linhas
    assert "unit: 1*1" in linhas
    assert "  i * i = -1*1" in linhas


@pytest.mark.parametrize("algebra", [
    _quaternions(),
    twisted_group_algebra(FinAbGroup((4,)), Character(FinAbGroup((4,)), (Fraction(1, 4),))),
    octonion_graded(FinAbGroup((2, 2, 2)), FinAbGroup((2, 2, 2)).gens(), [1, -1, 1]).algebra,
], ids=["quaternions", "twisted-z4", "octonions"])
def test_text_table_reproduces_products(algebra):
    lida = parse_table(format_table(algebra))
    assert lida.same_table(algebra)
    assert lida.labels == algebra.labels
    assert lida.unit == algebra.unit
    assert lida.kind == algebra.kind


def test_parse_table_reports_line():
    texto = "\n".join([
        "group: 2",
        "basis:",
        "  1 (0)",
        "  x (1)",
        "products:",
        "  1 * 1 = 1*1",
        "  x * y = 1*1",
    ])
    with pytest.raises(SpecSyntaxError) as exc:
        parse_table(texto)
    assert exc.value.line == 7
    assert "unknown basis label 'y'" in str(exc.value)


@pytest.mark.parametrize("texto, trecho", [
    ("basis:\n  1 (0)\n", "basis given before group"),
    ("group: 2\nbasis:\n  1 (0,0)\n", "does not match group"),
    ("group: 2\nbasis:\n  1 (0)\nproducts:\n  1 * 1 = 1/0*1\n", "zero denominator"),
    ("group: 2\nbasis:\n  1 (0)\n  1 (1)\n", "duplicate basis label"),
    ("kind: field\n", "missing group line"),
])
def test_parse_table_errors(texto, trecho):
    with pytest.raises(SpecSyntaxError, match=trecho):
        parse_table(texto)


def test_json_keeps_composition_and_jordan():
    jb = jordan_bilinear(Z2, {Z2.gen(0): 2}, {Z2.gen(0): 0})
    obj = json.loads(json.dumps(to_json(jb)))
    lida = from_json(obj)
    assert lida.same_table(jb)
    assert lida.composition == jb.composition
    assert lida.jordan == jb.jordan
    assert obj["sc"][0] == [0, 0, {"0": "1"}]


def test_table_store_save_and_load(tmp_path):
    store = TableStore(output_dir=str(tmp_path))
    h = _quaternions()
    path = store.save("H", h)
    assert path == os.path.join(str(tmp_path), "H.json")
    assert (tmp_path / "H.txt").read_text(encoding="utf-8") == format_table(h)
    assert store.has("H")
    assert not store.has("O")
    assert store.load("H").same_table(h)
    assert store.listar()[0]["name"] == "H"
    assert store.get_stats() == {"tables": 1, "output_dir": str(tmp_path)}

    # indice persistido e relido por outra instancia
    outro = TableStore(output_dir=str(tmp_path))
    assert outro.has("H")
    assert outro.listar()[0]["dim"] == 4


def test_table_store_excel_report(tmp_path):
    store = TableStore(output_dir=str(tmp_path))
    path = store.exportar_xlsx({"check": [{"target": "O", "exit": 0}], "vazio": []}, "rel.xlsx")
    assert os.path.isfile(path)
    assert path.endswith("rel.xlsx")
