import pytest

from abgroup import FinAbGroup, QuotientData, SubgroupData
from constructions import quaternion_graded
from spec_document import diagnostico, listar_construtores, parse, parse_file, tokenize
from table_store import format_table
from utils import BindingError, GradRealError, SpecSyntaxError


# ── Tokens ──

def test_tokenize_ignores_newlines_inside_parens():
    toks = tokenize("B = real(\n  Z2)\n")
    assert [t.kind for t in toks] == ["name", "op", "name", "op", "name", "op", "nl", "eof"]
    assert toks[4].line == 2


@pytest.mark.parametrize("texto, msg, linha, coluna", [
    ("B = real(\n", "unclosed '('", 1, 9),
    ("B = real())\n", "unbalanced ')'", 1, 11),
    ("A = real()\nB = $\n", "unexpected character '$'", 2, 5),
])
def test_tokenize_errors_have_position(texto, msg, linha, coluna):
    with pytest.raises(SpecSyntaxError) as exc:
        tokenize(texto)
    assert exc.value.msg == msg
    assert (exc.value.line, exc.value.col) == (linha, coluna)
    assert str(exc.value) == f"{linha}:{coluna}: {msg}"


# ── Bindings ──

def test_group_and_subgroup_bindings():
    doc = parse("G = Z4 x Z2^2\nH = subgroup(G, [(2,0,0)])\nQ = quotient(G, H)\n")
    g = doc.get("G")
    assert g == FinAbGroup((4, 2, 2))
    assert isinstance(doc.get("H"), SubgroupData)
    assert doc.get("H").order == 2
    q = doc.get("Q")
    assert isinstance(q, QuotientData)
    assert q.group.size == 8
    assert doc.algebras() == []


def test_hurwitz_defaults_to_elementary_group():
    doc = parse("O = octonion()\nC = binarion(mu=[+])\n")
    o = doc.algebra("O")
    assert o.dim == 8
    assert o.group.orders == (2, 2, 2)
    assert doc.algebra("C").group.orders == (2,)
    assert doc.origin(o)[0] == "octonion"
    assert doc.algebras() == ["O", "C"]


def test_origin_keeps_evaluated_arguments():
    doc = parse("T = Z4\nB = loop_real(real(Z2), pi=quotient(T, [2]), chi=[1/4])\n")
    ctor, args = doc.origin(doc.algebra("B"))
    assert ctor == "loop_real"
    assert set(args) == {"algebra", "pi", "chi"}
    assert args["chi"].group == FinAbGroup((4,))
    assert doc.origin(doc.get("T")) == (None, {})


def test_commands_split_targets_flags_and_options():
    doc = parse("B = octonion()\n\ncheck B identity=alternative division\nclassify B, fast\n")
    check, classify = doc.commands
    assert check.verb == "check"
    assert check.targets == ["B"]
    assert check.flags == ["division"]
    assert doc.option(check.options["identity"]) == "alternative"
    assert check.line == 3
    assert classify.flags == ["fast"]


@pytest.mark.parametrize("texto, trecho, linha", [
    ("A = real()\nA = real()\n", "name 'A' is already bound", 2),
    ("check = Z2\n", "'check' is a reserved word", 1),
    ("octonion = Z2\n", "'octonion' is a reserved word", 1),
    ("B = complexify(A)\n", "name 'A' is not bound", 1),
    ("B = frob()\n", "unknown constructor 'frob'", 1),
    ("G = Z4\nB = complexify(G)\n", "type mismatch: G is a group, expected an algebra", 2),
    ("B = real(Z2, Z2)\n", "real takes at most 1 positional arguments", 1),
    ("B = real(grupo=Z2)\n", "unknown argument 'grupo' for real", 1),
    ("B = loop_real(real())\n", "loop_real needs argument 'pi'", 1),
])
def test_binding_errors(texto, trecho, linha):
    with pytest.raises(BindingError) as exc:
        parse(texto)
    assert trecho in str(exc.value)
    assert exc.value.line == linha


def test_type_mismatch_points_at_name():
    with pytest.raises(BindingError) as exc:
        parse("G = Z4\nB = complexify(G)\n")
    assert (exc.value.line, exc.value.col) == (2, 16)


def test_unknown_verb_lists_verbs():
    with pytest.raises(SpecSyntaxError) as exc:
        parse("B = real()\nfrobnicate B\n")
    assert not isinstance(exc.value, BindingError)
    assert "unknown verb 'frobnicate'" in str(exc.value)
    assert "classify" in str(exc.value)
    assert exc.value.line == 2


def test_invalid_rotation_number():
    with pytest.raises(SpecSyntaxError, match="invalid rotation number 1/0"):
        parse("B = loop_real(real(), pi=quotient(Z4, [2]), chi=[1/0])\n")


def test_construction_error_gets_call_position():
    with pytest.raises(GradRealError) as exc:
        parse("G = Z4\nB = cartan(G, 1, 1, 1)\n")
    assert "identity" in str(exc.value)
    assert diagnostico(exc.value).startswith("2:5:")


@pytest.mark.parametrize("texto", [
    "B = real() extra\n",
    "B = octonion(mu=[+, 2])\n",
    "B = R{1, x}\n",
    "12 = real()\n",
])
def test_malformed_documents(texto):
    with pytest.raises(SpecSyntaxError):
        parse(texto)


def test_family_tag_binding():
    doc = parse("B = R{0,0,0}\n")
    b = doc.algebra("B")
    assert b.dim == 8
    assert doc.origin(b)[0] == "family"


# ── Tabelas gravadas ──

def test_load_table_relative_to_base_dir(tmp_path):
    h = quaternion_graded(FinAbGroup((2,)), [FinAbGroup((2,)).gen(0)], [1]).algebra
    (tmp_path / "t.txt").write_text(format_table(h), encoding="utf-8")
    doc = parse('Q = load("t.txt")\n', base_dir=str(tmp_path))
    assert doc.algebra("Q").same_table(h)
    with pytest.raises(BindingError, match="cannot read nada.txt"):
        parse('Q = load("nada.txt")\n', base_dir=str(tmp_path))


def test_parse_file_uses_document_directory(tmp_path, escreve_doc):
    h = quaternion_graded(FinAbGroup((2,)), [FinAbGroup((2,)).gen(0)], [1]).algebra
    (tmp_path / "h.txt").write_text(format_table(h), encoding="utf-8")
    path = escreve_doc('H = load("h.txt")\ncheck H identity=associative\n')
    doc = parse_file(path)
    assert doc.base_dir == str(tmp_path)
    assert doc.algebra("H").dim == 4


def test_constructor_listing():
    nomes = {c["name"]: c for c in listar_construtores()}
    assert nomes["loop_real"]["params"] == ["algebra", "pi", "chi"]
    assert {"octonion", "twist", "family", "load"} <= set(nomes)
