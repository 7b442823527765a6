"""
GradReal - Documento de Algebras
Le arquivos de algebra no formato:

    G = Z4 x Z2
    H = subgroup(G, [(2,0)])
    B = loop_real(octonion(rank=3, mu=[+,+,+]), pi=quotient(G, H), chi=[1/4, 0])
    check B identity=alternative

Atribuicoes `nome = expr` sao avaliadas na ordem (construtores registrados
via decorator); linhas que comecam por um verbo viram comandos. Todo erro sai com linha:coluna.
"""

import json
import os
import re
from dataclasses import dataclass, field

from abgroup import (
    TRIVIAL, FinAbGroup, GroupElement, GroupHom, QuotientData, SubgroupData,
    hom_from_images, power_subgroup, quotient, quotient_by_hom, torsion_subgroup,
)
from chars import Character, sign_character
from constructions import (
    CompositionStructure, binarion_graded, cartan_octonion, cayley_dickson,
    cocycle_twist, complexify, graded_field, graded_field_family, graded_tensor,
    jordan_bilinear, jordan_complex, loop_real, loop_split, named_family,
    octonion_graded, quaternion_graded, real_field, twisted_group_algebra,
)
from galg import GradedAlgebra, induced_grading
from table_store import from_json, parse_table
from utils import BindingError, GradRealError, SpecSyntaxError, log, parse_rational

VERBOS = ("build", "table", "check", "centroid", "classify", "compare", "oracle")


# ============================================================================
# Tokens
# ============================================================================

_TOKEN = re.compile(r"""
    (?P<nl>\n)
  | (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<str>"[^"\n]*")
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[=,()\[\]{}:+\-^'])
""", re.VERBOSE)

_ABRE = {"(": ")", "[": "]", "{": "}"}
_GRUPO = re.compile(r"^Z(\d+)$")


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(texto: str) -> list:
    """Tokens com posicao; quebras de linha dentro de parenteses sao ignoradas."""
    toks, pilha = [], []
    linha, inicio, pos = 1, 0, 0
    while pos < len(texto):
        m = _TOKEN.match(texto, pos)
        col = pos - inicio + 1
        if not m:
            raise SpecSyntaxError(f"unexpected character {texto[pos]!r}", linha, col)
        kind, text = m.lastgroup, m.group()
        pos = m.end()
        if kind == "nl":
            if not pilha:
                toks.append(Tok("nl", "", linha, col))
            linha += 1
            inicio = pos
            continue
        if kind in ("ws", "comment"):
            continue
        if kind == "op" and text in _ABRE:
            pilha.append(Tok(kind, text, linha, col))
        elif kind == "op" and text in _ABRE.values():
            if not pilha or _ABRE[pilha[-1].text] != text:
                raise SpecSyntaxError(f"unbalanced {text!r}", linha, col)
            pilha.pop()
        if kind == "str":
            text = text[1:-1]
        toks.append(Tok(kind, text, linha, col))
    if pilha:
        t = pilha[-1]
        raise SpecSyntaxError(f"unclosed {t.text!r}", t.line, t.col)
    toks.append(Tok("eof", "", linha, pos - inicio + 1))
    return toks


# ============================================================================
# Arvore sintatica
# ============================================================================

@dataclass
class Node:
    kind: str          # num, sign, str, name, group, tag, list, tuple, map, call
    value: object = None
    line: int = 0
    col: int = 0
    items: tuple = ()
    kwargs: dict = field(default_factory=dict)

    def describe(self) -> str:
        if self.kind == "name":
            return f"name {self.value!r}"
        if self.kind == "call":
            return f"{self.value}(...)"
        return {"num": "a number", "sign": "a sign", "str": "a string", "group": "a group",
                "tag": "a family tag", "list": "a list", "tuple": "a tuple", "map": "a map"}[self.kind]


@dataclass
class Command:
    verb: str
    targets: list
    flags: list
    options: dict
    line: int
    col: int


class _Parser:
    def __init__(self, toks: list):
        self.toks = toks
        self.i = 0

    def peek(self, k: int = 0) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Tok:
        t = self.peek()
        self.i += 1
        return t

    def is_op(self, text: str, k: int = 0) -> bool:
        t = self.peek(k)
        return t.kind == "op" and t.text == text

    def expect_op(self, text: str) -> Tok:
        t = self.next()
        if t.kind != "op" or t.text != text:
            raise SpecSyntaxError(f"expected {text!r}, found {t.text or t.kind!r}", t.line, t.col)
        return t

    def statements(self):
        while self.peek().kind != "eof":
            if self.peek().kind == "nl":
                self.next()
                continue
            t = self.next()
            if t.kind != "name":
                raise SpecSyntaxError(f"statement must start with a name, found {t.text!r}", t.line, t.col)
            if self.is_op("="):
                self.next()
                expr = self.expr()
                self._fim_de_linha()
                yield ("bind", t, expr)
            else:
                yield ("command", t, self._args_comando())

    def _fim_de_linha(self):
        t = self.peek()
        if t.kind not in ("nl", "eof"):
            raise SpecSyntaxError(f"unexpected {t.text!r} after expression", t.line, t.col)

    def _args_comando(self) -> list:
        args = []
        while self.peek().kind not in ("nl", "eof"):
            if self.is_op(","):
                self.next()
                continue
            t = self.peek()
            if t.kind == "name" and self.is_op("=", 1):
                self.next()
                self.next()
                args.append((t.text, self.expr()))
            else:
                args.append((None, self.expr()))
        return args

    # ── expressoes ───────────────────────────────────────────────────────────

    def expr(self) -> Node:
        t = self.next()
        if t.kind == "num":
            return Node("num", t.text, t.line, t.col)
        if t.kind == "str":
            return Node("str", t.text, t.line, t.col)
        if t.kind == "op" and t.text in "+-":
            if self.peek().kind == "num":
                n = self.next()
                return Node("num", ("-" if t.text == "-" else "") + n.text, t.line, t.col)
            return Node("sign", -1 if t.text == "-" else 1, t.line, t.col)
        if t.kind == "op" and t.text == "[":
            return Node("list", None, t.line, t.col, tuple(self._seq("]")))
        if t.kind == "op" and t.text == "(":
            return Node("tuple", None, t.line, t.col, tuple(self._seq(")")))
        if t.kind == "op" and t.text == "{":
            return self._map(t)
        if t.kind == "name":
            if _GRUPO.match(t.text):
                return self._grupo(t)
            if t.text in ("R", "C", "H") and self.is_op("{"):
                return self._tag(t)
            if self.is_op("("):
                return self._call(t)
            return Node("name", t.text, t.line, t.col)
        raise SpecSyntaxError(f"unexpected {t.text or t.kind!r}", t.line, t.col)

    def _seq(self, fecha: str) -> list:
        out = []
        while not self.is_op(fecha):
            out.append(self.expr())
            if not self.is_op(fecha):
                self.expect_op(",")
        self.next()
        return out

    def _map(self, abre: Tok) -> Node:
        pares = []
        while not self.is_op("}"):
            k = self.expr()
            self.expect_op(":")
            pares.append((k, self.expr()))
            if not self.is_op("}"):
                self.expect_op(",")
        self.next()
        return Node("map", None, abre.line, abre.col, tuple(pares))

    def _grupo(self, t: Tok) -> Node:
        ordens = []
        atual = t
        while True:
            n = int(_GRUPO.match(atual.text).group(1))
            rep = 1
            if self.is_op("^"):
                self.next()
                e = self.next()
                if e.kind != "num" or "/" in e.text:
                    raise SpecSyntaxError("exponent must be an integer", e.line, e.col)
                rep = int(e.text)
            if n < 2:
                raise SpecSyntaxError(f"cyclic factor order must be >= 2, got {n}", atual.line, atual.col)
            ordens.extend([n] * rep)
            prox, depois = self.peek(), self.peek(1)
            if prox.kind == "name" and prox.text == "x" and depois.kind == "name" and _GRUPO.match(depois.text):
                self.next()
                atual = self.next()
                continue
            break
        return Node("group", tuple(ordens), t.line, t.col)

    def _tag(self, t: Tok) -> Node:
        self.expect_op("{")
        partes = []
        while not self.is_op("}"):
            s = self.next()
            if s.kind == "op" and s.text == "-":
                s2 = self.next()
                if s2.kind != "num":
                    raise SpecSyntaxError("expected an integer", s2.line, s2.col)
                partes.append("-" + s2.text)
            elif s.kind == "num":
                partes.append(s.text)
            else:
                raise SpecSyntaxError(f"expected an integer, found {s.text!r}", s.line, s.col)
            if not self.is_op("}"):
                self.expect_op(",")
        self.next()
        tag = f"{t.text}{{{','.join(partes)}}}"
        if self.is_op("'"):
            self.next()
            tag += "'"
        return Node("tag", tag, t.line, t.col)

    def _call(self, t: Tok) -> Node:
        self.expect_op("(")
        pos, kw = [], {}
        while not self.is_op(")"):
            a = self.peek()
            if a.kind == "name" and self.is_op("=", 1):
                self.next()
                self.next()
                if a.text in kw:
                    raise SpecSyntaxError(f"argument {a.text!r} given twice", a.line, a.col)
                kw[a.text] = self.expr()
            else:
                if kw:
                    raise SpecSyntaxError("positional argument after keyword argument", a.line, a.col)
                pos.append(self.expr())
            if not self.is_op(")"):
                self.expect_op(",")
        self.next()
        return Node("call", t.text, t.line, t.col, tuple(pos), kw)


# ============================================================================
# Registro de construtores
# ============================================================================

CONSTRUCTOR_REGISTRY: dict = {}


def register_constructor(nome: str, params: tuple, description: str = ""):
    """
    Decorator para registrar um construtor do documento.
    params: nomes dos argumentos (os posicionais seguem esta ordem).
    """
    def decorator(fn):
        CONSTRUCTOR_REGISTRY[nome] = {"fn": fn, "params": tuple(params), "description": description}
        return fn
    return decorator


def listar_construtores() -> list:
    return [{"name": k, "params": list(v["params"]), "description": v["description"]}
            for k, v in CONSTRUCTOR_REGISTRY.items()]


# ============================================================================
# Documento
# ============================================================================

@dataclass
class Binding:
    name: str
    node: Node
    value: object
    line: int
    col: int

    @property
    def tipo(self) -> str:
        return _tipo(self.value)


def _tipo(v) -> str:
    if isinstance(v, Node):
        return "literal"
    for cls, nome in ((FinAbGroup, "group"), (SubgroupData, "subgroup"), (QuotientData, "quotient"),
                      (GroupHom, "hom"), (Character, "character"), (GroupElement, "element"),
                      (GradedAlgebra, "algebra")):
        if isinstance(v, cls):
            return nome
    return type(v).__name__


def posiciona(e: GradRealError, no) -> GradRealError:
    if not getattr(e, "line", 0):
        e.line, e.col = no.line, no.col
    return e


def diagnostico(e: Exception) -> str:
    """`linha:col: mensagem` quando o erro tem posicao."""
    if isinstance(e, SpecSyntaxError):
        return str(e)
    line = getattr(e, "line", 0)
    return f"{line}:{getattr(e, 'col', 0)}: {e}" if line else str(e)


@dataclass
class SpecDocument:
    bindings: dict = field(default_factory=dict)
    commands: list = field(default_factory=list)
    base_dir: str = "."
    origins: dict = field(default_factory=dict)   # id(valor) -> (valor, construtor, argumentos)

    def get(self, nome: str):
        if nome not in self.bindings:
            raise BindingError(f"name {nome!r} is not bound")
        return self.bindings[nome].value

    def algebra(self, nome: str) -> GradedAlgebra:
        v = self.get(nome)
        if not isinstance(v, GradedAlgebra):
            b = self.bindings[nome]
            raise BindingError(f"{nome} is a {b.tipo}, expected an algebra", b.line, b.col)
        return v

    def algebras(self) -> list:
        return [n for n, b in self.bindings.items() if isinstance(b.value, GradedAlgebra)]

    def origin(self, valor):
        """(construtor, argumentos avaliados) de um valor construido no documento."""
        o = self.origins.get(id(valor))
        return (o[1], o[2]) if o and o[0] is valor else (None, {})

    def option(self, no: Node):
        """Valor de uma opcao de comando: nomes livres viram texto."""
        if no.kind == "name" and no.value not in self.bindings:
            return no.value
        if no.kind == "str":
            return no.value
        if no.kind == "num":
            return _Avaliador(self)._racional(no)
        return _Avaliador(self).resolve(no)


class _Avaliador:
    def __init__(self, doc: SpecDocument):
        self.doc = doc

    # ── resolucao ────────────────────────────────────────────────────────────

    def resolve(self, no: Node):
        """Objeto tipado, ou o proprio no quando e um literal."""
        if no.kind == "name":
            b = self.doc.bindings.get(no.value)
            if b is None:
                raise BindingError(f"name {no.value!r} is not bound", no.line, no.col)
            return b.value
        if no.kind == "group":
            return FinAbGroup(no.value)
        if no.kind == "tag":
            return self._guarda(no, lambda: named_family(no.value), "family", {"tag": no.value})
        if no.kind == "call":
            return self._chamada(no)
        return no

    def _chamada(self, no: Node):
        entrada = CONSTRUCTOR_REGISTRY.get(no.value)
        if entrada is None:
            raise BindingError(f"unknown constructor {no.value!r}", no.line, no.col)
        args = _Args(self, no, entrada["params"])
        return self._guarda(no, lambda: entrada["fn"](args), no.value, args.valores)

    def _guarda(self, no: Node, fn, nome: str, valores: dict):
        try:
            v = fn()
        except GradRealError as e:
            raise posiciona(e, no) from None
        if isinstance(v, CompositionStructure):
            v = v.algebra
        self.doc.origins[id(v)] = (v, nome, valores)
        return v

    def _mismatch(self, no: Node, valor, esperado: str) -> BindingError:
        quem = no.describe()
        tipo = _tipo(valor) if not isinstance(valor, Node) else valor.describe()
        if no.kind == "name":
            return BindingError(f"type mismatch: {no.value} is {_artigo(tipo)}, expected {_artigo(esperado)}",
                                no.line, no.col)
        return BindingError(f"type mismatch: {quem} where {_artigo(esperado)} was expected", no.line, no.col)

    # ── conversores ──────────────────────────────────────────────────────────

    def _racional(self, no: Node, msg: str = "invalid rational"):
        r = self.resolve(no)
        if isinstance(r, Node) and r.kind == "num":
            try:
                return parse_rational(r.value)
            except GradRealError:
                raise SpecSyntaxError(f"{msg} {r.value}", r.line, r.col) from None
        raise self._mismatch(no, r, "number")

    def _inteiro(self, no: Node) -> int:
        q = self._racional(no)
        if q.denominator != 1:
            raise SpecSyntaxError(f"expected an integer, got {no.value}", no.line, no.col)
        return int(q)

    def _texto(self, no: Node) -> str:
        r = self.resolve(no)
        if isinstance(r, Node) and r.kind == "str":
            return r.value
        raise self._mismatch(no, r, "string")

    def _grupo(self, no: Node) -> FinAbGroup:
        r = self.resolve(no)
        if isinstance(r, FinAbGroup):
            return r
        if isinstance(r, QuotientData):
            return r.group
        raise self._mismatch(no, r, "group")

    def _elemento(self, no: Node, grupo: FinAbGroup) -> GroupElement:
        r = self.resolve(no)
        if isinstance(r, GroupElement):
            if r.parent != grupo:
                raise BindingError(f"element {r} is not in {grupo}", no.line, no.col)
            return r
        if isinstance(r, Node) and r.kind == "tuple":
            coords = [self._inteiro(x) for x in r.items]
        elif isinstance(r, Node) and r.kind == "num" and grupo.rank == 1:
            coords = [self._inteiro(r)]
        else:
            raise self._mismatch(no, r, "group element")
        if len(coords) != grupo.rank:
            raise BindingError(f"element {tuple(coords)} does not match group {grupo}", no.line, no.col)
        return grupo.element(coords)

    def _lista(self, no: Node) -> tuple:
        r = self.resolve(no)
        if isinstance(r, Node) and r.kind == "list":
            return r.items
        raise self._mismatch(no, r, "list")

    def _elementos(self, no: Node, grupo: FinAbGroup) -> list:
        return [self._elemento(x, grupo) for x in self._lista(no)]

    def _sinais(self, no: Node) -> list:
        out = []
        for x in self._lista(no):
            r = self.resolve(x)
            if isinstance(r, Node) and r.kind == "sign":
                out.append(r.value)
            elif isinstance(r, Node) and r.kind == "num" and r.value in ("1", "-1"):
                out.append(int(r.value))
            else:
                raise BindingError(f"expected a sign (+ or -), found {x.describe()}", x.line, x.col)
        return out

    def _subgrupo(self, no: Node, grupo: FinAbGroup) -> SubgroupData:
        r = self.resolve(no)
        if isinstance(r, SubgroupData):
            if r.ambient != grupo:
                raise BindingError(f"subgroup of {r.ambient}, expected a subgroup of {grupo}", no.line, no.col)
            return r
        if isinstance(r, Node) and r.kind == "list":
            return SubgroupData(grupo, tuple(self._elementos(r, grupo)))
        raise self._mismatch(no, r, "subgroup")

    def _quociente(self, no: Node) -> QuotientData:
        r = self.resolve(no)
        if isinstance(r, QuotientData):
            return r
        if isinstance(r, GroupHom):
            return _posiciona_em(no, quotient_by_hom, r)
        if isinstance(r, SubgroupData):
            return r.quotient_data
        raise self._mismatch(no, r, "quotient")

    def _hom(self, no: Node) -> GroupHom:
        r = self.resolve(no)
        if isinstance(r, GroupHom):
            return r
        if isinstance(r, QuotientData):
            return r.projection
        raise self._mismatch(no, r, "hom")

    def _caractere(self, no: Node, grupo: FinAbGroup) -> Character:
        r = self.resolve(no)
        if isinstance(r, Character):
            if r.group != grupo:
                raise BindingError(f"character lives on {r.group}, expected {grupo}", no.line, no.col)
            return r
        if isinstance(r, Node) and r.kind == "list":
            rot = [self._racional(x, "invalid rotation number") for x in r.items]
            return _posiciona_em(r, Character, grupo, tuple(rot))
        raise self._mismatch(no, r, "character")

    def _algebra(self, no: Node) -> GradedAlgebra:
        r = self.resolve(no)
        if isinstance(r, GradedAlgebra):
            return r
        raise self._mismatch(no, r, "algebra")

    def _mapa(self, no: Node, grupo: FinAbGroup) -> dict:
        r = self.resolve(no)
        if not (isinstance(r, Node) and r.kind == "map"):
            raise self._mismatch(no, r, "map")
        out = {}
        for k, v in r.items:
            g = self._elemento(k, grupo)
            if g in out:
                raise BindingError(f"key {g} repeated", k.line, k.col)
            out[g] = self._inteiro(v)
        return out


def _artigo(s: str) -> str:
    return s if s.startswith("a ") or s.startswith("an ") else ("an " if s[0] in "aeiou" else "a ") + s


def _posiciona_em(no: Node, fn, *args):
    try:
        return fn(*args)
    except SpecSyntaxError:
        raise
    except GradRealError as e:
        raise posiciona(e, no) from None


class _Args:
    """Argumentos de uma chamada, convertidos sob demanda e registrados em `valores`."""

    def __init__(self, av: _Avaliador, call: Node, params: tuple):
        self.av = av
        self.call = call
        self.nos = {}
        self.valores = {}
        if len(call.items) > len(params):
            extra = call.items[len(params)]
            raise BindingError(f"{call.value} takes at most {len(params)} positional arguments",
                               extra.line, extra.col)
        for p, n in zip(params, call.items):
            self.nos[p] = n
        for k, n in call.kwargs.items():
            if k not in params:
                raise BindingError(f"unknown argument {k!r} for {call.value}", n.line, n.col)
            if k in self.nos:
                raise BindingError(f"argument {k!r} given twice", n.line, n.col)
            self.nos[k] = n

    def has(self, p: str) -> bool:
        return p in self.nos

    def node(self, p: str) -> Node:
        if p not in self.nos:
            raise BindingError(f"{self.call.value} needs argument {p!r}", self.call.line, self.call.col)
        return self.nos[p]

    def _get(self, p: str, conv, *extra):
        v = conv(self.node(p), *extra)
        self.valores[p] = v
        return v

    def group(self, p):
        return self._get(p, self.av._grupo)

    def element(self, p, g):
        return self._get(p, self.av._elemento, g)

    def elements(self, p, g):
        return self._get(p, self.av._elementos, g)

    def subgroup(self, p, g):
        return self._get(p, self.av._subgrupo, g)

    def quotient(self, p):
        return self._get(p, self.av._quociente)

    def hom(self, p):
        return self._get(p, self.av._hom)

    def character(self, p, g):
        return self._get(p, self.av._caractere, g)

    def algebra(self, p):
        return self._get(p, self.av._algebra)

    def signs(self, p):
        return self._get(p, self.av._sinais)

    def rational(self, p):
        return self._get(p, self.av._racional)

    def integer(self, p):
        return self._get(p, self.av._inteiro)

    def text(self, p):
        return self._get(p, self.av._texto)

    def int_map(self, p, g):
        return self._get(p, self.av._mapa, g)

    def raw(self, p):
        v = self.av.resolve(self.node(p))
        self.valores[p] = v
        return v


# ============================================================================
# Construtores registrados
# ============================================================================

# ── grupos ──────────────────────────────────────────────────────────────────

@register_constructor("subgroup", ("group", "gens"), "subgroup generated by a list of elements")
def _c_subgroup(a: _Args):
    g = a.group("group")
    return SubgroupData(g, tuple(a.elements("gens", g)))


@register_constructor("power", ("group", "m"), "G^[m] = {g^m}")
def _c_power(a: _Args):
    return power_subgroup(a.group("group"), a.integer("m"))


@register_constructor("torsion", ("group", "m"), "G_[m] = {g : g^m = e}")
def _c_torsion(a: _Args):
    return torsion_subgroup(a.group("group"), a.integer("m"))


@register_constructor("quotient", ("group", "sub"), "projection G -> G/H")
def _c_quotient(a: _Args):
    g = a.group("group")
    return quotient(g, a.subgroup("sub", g))


@register_constructor("hom", ("domain", "codomain", "images"), "hom by images of the generators")
def _c_hom(a: _Args):
    d, c = a.group("domain"), a.group("codomain")
    return hom_from_images(d, c, a.elements("images", c))


@register_constructor("character", ("group", "rot"), "character by rotation numbers")
def _c_character(a: _Args):
    g = a.group("group")
    return a.character("rot", g)


@register_constructor("signs", ("group", "values"), "sign character by signs on the generators")
def _c_signs(a: _Args):
    return sign_character(a.group("group"), a.signs("values"))


# ── corpos graduados ────────────────────────────────────────────────────────

@register_constructor("real", ("group",), "R with trivial grading")
def _c_real(a: _Args):
    return real_field(a.group("group") if a.has("group") else TRIVIAL)


@register_constructor("twisted", ("group", "chi"), "twisted group algebra R^gamma G")
def _c_twisted(a: _Args):
    g = a.group("group")
    return twisted_group_algebra(g, a.character("chi", g) if a.has("chi") else None)


@register_constructor("field", ("base", "chi"), "graded-field: field(n), field(H, chi) or field(quotient, chi)")
def _c_field(a: _Args):
    base = a.raw("base")
    if isinstance(base, Node) and base.kind == "num":
        return graded_field_family(a.integer("base"))
    if isinstance(base, FinAbGroup):
        return twisted_group_algebra(base, a.character("chi", base) if a.has("chi") else None)
    q = a.quotient("base")
    return graded_field(q, a.character("chi", q.ambient) if a.has("chi") else None)


# ── Hurwitz, Cartan e Cayley-Dickson ────────────────────────────────────────

def _hurwitz(a: _Args, fn, passos: int):
    grupo = a.group("group") if a.has("group") else None
    mu = a.signs("mu") if a.has("mu") else None
    if a.has("rank"):
        rank = a.integer("rank")
    elif mu is not None:
        rank = len(mu)
    else:
        rank = passos if grupo is None else min(passos, grupo.rank)
    if grupo is None:
        grupo = FinAbGroup((2,) * rank) if rank else TRIVIAL
    if a.has("basis"):
        basis = a.elements("basis", grupo)
    else:
        if rank > grupo.rank:
            raise BindingError(f"rank {rank} exceeds the rank of {grupo}", a.call.line, a.call.col)
        basis = grupo.gens()[:rank]
    if mu is None:
        mu = [1] * len(basis)
    return fn(grupo, basis, mu)


@register_constructor("octonion", ("group", "rank", "mu", "basis"), "C(Tbar, mu) graded octonions")
def _c_octonion(a: _Args):
    return _hurwitz(a, octonion_graded, 3)


@register_constructor("quaternion", ("group", "rank", "mu", "basis"), "graded quaternions")
def _c_quaternion(a: _Args):
    return _hurwitz(a, quaternion_graded, 2)


@register_constructor("binarion", ("group", "rank", "mu", "basis"), "graded complex numbers")
def _c_binarion(a: _Args):
    return _hurwitz(a, binarion_graded, 1)


@register_constructor("cd", ("algebra", "alpha", "k", "name"), "graded Cayley-Dickson double")
def _c_cd(a: _Args):
    b = a.algebra("algebra")
    nome = a.text("name") if a.has("name") else "w"
    return cayley_dickson(b, a.rational("alpha"), a.element("k", b.group), nome)


@register_constructor("cartan", ("group", "g1", "g2", "g3"), "Cartan-graded split octonions")
def _c_cartan(a: _Args):
    g = a.group("group")
    return cartan_octonion(a.element("g1", g), a.element("g2", g), a.element("g3", g))


# ── lacos e torcoes ─────────────────────────────────────────────────────────

@register_constructor("loop_real", ("algebra", "pi", "chi"), "real loop algebra L_pi^chi(A)")
def _c_loop_real(a: _Args):
    b = a.algebra("algebra")
    q = a.quotient("pi")
    return loop_real(b, q, a.character("chi", q.ambient) if a.has("chi") else None)


@register_constructor("loop_split", ("algebra", "pi"), "split loop algebra L_pi(A)")
def _c_loop_split(a: _Args):
    b = a.algebra("algebra")
    return loop_split(b, a.quotient("pi"))


@register_constructor("twist", ("algebra", "pi", "lam"), "cocycle twist A^lambda")
def _c_twist(a: _Args):
    b = a.algebra("algebra")
    q = a.quotient("pi")
    lam = a.raw("lam")
    if isinstance(lam, Node) and lam.kind == "list":
        pres, _ = q.subgroup.presentation
        lam = _posiciona_em(lam, sign_character, pres, a.signs("lam"))
    elif isinstance(lam, Node) and lam.kind == "map":
        lam = a.int_map("lam", q.ambient)
    elif not isinstance(lam, Character):
        raise a.av._mismatch(a.node("lam"), lam, "sign character")
    a.valores["lam"] = lam
    return cocycle_twist(b, lam, q)


# ── Jordan, complexificacao, produtos ───────────────────────────────────────

@register_constructor("jordan", ("group", "kappa", "sigma"), "J(V, b) from (kappa, sigma)")
def _c_jordan(a: _Args):
    g = a.group("group")
    sigma = a.int_map("sigma", g) if a.has("sigma") else {}
    return jordan_bilinear(g, a.int_map("kappa", g), sigma)


@register_constructor("jordan_complex", ("group", "kappa"), "complex J(V, b) from kappa")
def _c_jordan_complex(a: _Args):
    g = a.group("group")
    return jordan_complex(g, a.int_map("kappa", g))


@register_constructor("complexify", ("algebra",), "A (x) C, realified")
def _c_complexify(a: _Args):
    return complexify(a.algebra("algebra"))


@register_constructor("tensor", ("left", "right"), "graded tensor product over the product group")
def _c_tensor(a: _Args):
    return graded_tensor(a.algebra("left"), a.algebra("right"))


@register_constructor("induced", ("algebra", "hom"), "grading induced by a group hom")
def _c_induced(a: _Args):
    return induced_grading(a.algebra("algebra"), a.hom("hom"))


@register_constructor("family", ("tag", "T", "H", "chi", "mu", "K"), "named family of the classification")
def _c_family(a: _Args):
    tag = a.text("tag")
    t = a.group("T") if a.has("T") else None
    h = a.subgroup("H", t) if (t is not None and a.has("H")) else None
    chi = a.character("chi", t) if (t is not None and a.has("chi")) else None
    mu = a.signs("mu") if a.has("mu") else None
    k = a.group("K") if a.has("K") else None
    return named_family(tag, t, h, chi, mu, k)


# ── tabelas gravadas ────────────────────────────────────────────────────────

@register_constructor("load", ("path",), "multiplication table from a .txt or .json file")
def _c_load(a: _Args):
    nome = a.text("path")
    path = nome if os.path.isabs(nome) else os.path.join(a.av.doc.base_dir, nome)
    try:
        with open(path, "r", encoding="utf-8") as f:
            conteudo = f.read()
    except OSError as e:
        raise BindingError(f"cannot read {nome}: {e.strerror}", a.call.line, a.call.col) from None
    if path.endswith(".json"):
        try:
            return from_json(json.loads(conteudo))
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise BindingError(f"invalid table file {nome}: {e}", a.call.line, a.call.col) from None
    return parse_table(conteudo)


# ============================================================================
# API
# ============================================================================

def parse(texto: str, base_dir: str = ".") -> SpecDocument:
    """Le e avalia o documento; o primeiro erro sai como SpecSyntaxError/BindingError com posicao."""
    doc = SpecDocument(base_dir=base_dir)
    av = _Avaliador(doc)
    for tipo, t, corpo in _Parser(tokenize(texto)).statements():
        if tipo == "bind":
            if t.text in doc.bindings:
                raise BindingError(f"name {t.text!r} is already bound", t.line, t.col)
            if t.text in CONSTRUCTOR_REGISTRY or t.text in VERBOS:
                raise BindingError(f"{t.text!r} is a reserved word", t.line, t.col)
            valor = av.resolve(corpo)
            doc.bindings[t.text] = Binding(t.text, corpo, valor, t.line, t.col)
            log("CLI", f"{t.line}: {t.text} = {_tipo(valor)}")
            continue
        if t.text not in VERBOS:
            raise SpecSyntaxError(f"unknown verb {t.text!r} (expected one of {', '.join(VERBOS)})",
                                  t.line, t.col)
        alvos, flags, opcoes = [], [], {}
        for nome, no in corpo:
            if nome is not None:
                opcoes[nome] = no
            elif no.kind == "name" and no.value in doc.bindings:
                alvos.append(no.value)
            elif no.kind == "name":
                flags.append(no.value)
            else:
                raise SpecSyntaxError(f"unexpected {no.describe()} in command", no.line, no.col)
        doc.commands.append(Command(t.text, alvos, flags, opcoes, t.line, t.col))
    return doc


def parse_file(path: str) -> SpecDocument:
    with open(path, "r", encoding="utf-8") as f:
        texto = f.read()
    return parse(texto, base_dir=os.path.dirname(os.path.abspath(path)))
