"""Presentation language: tokenizer, recursive-descent parser, canonical renderer.

Example::

    algebra P1 {
      field: rationals;
      basis: [one:0, x:2];
      unit: one;
      t_degree: 4;
      n: 1;
      product {
        one*one = one;
        one*x = x;
        x*x = T*one;
      }
    }
    decompose;

Expressions are evaluated while parsing, so a ``Document`` holds exact
values; ``render`` prints the canonical text that parses back to an equal
document.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import DslSyntaxError, DuplicateName, ParseError, UnresolvedName
from .field_tower import QQ, NumberField, Novikov, nf_make, render, render_qpoly

KEYWORDS_RESERVED = {"t", "T"}
COMMANDS = ("check", "semisimple", "decompose", "sphere", "config", "dehn", "lattice")

_TOKEN = re.compile(r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)|(?P<int>\d+)"
                    r"|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<punct>[{}\[\]():;,*+\-/^=])")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "punct", "eof"
    text: str
    line: int
    col: int


def tokenize(source: str):
    tokens = []
    line, col, i = 1, 1, 0
    while i < len(source):
        m = _TOKEN.match(source, i)
        if not m:
            raise DslSyntaxError(line, col, "a token", source[i])
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind in ("int", "name", "punct"):
                tokens.append(Token(kind, text, line, col))
            col += len(text)
        i = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


# -- document nodes -------------------------------------------------------------

@dataclass(frozen=True)
class Pos:
    line: int
    col: int


@dataclass
class AlgebraBlock:
    name: str
    modulus: Optional[tuple]  # None for the rationals
    novikov_n: Optional[int]
    basis: tuple  # ((name, degree), ...)
    unit: tuple  # coordinates
    t_degree: Optional[int]
    n: Optional[int]
    products: tuple  # (((i, j), coords), ...)
    integration: Optional[tuple]
    spheres: tuple  # ((name, coords), ...)
    pos: Pos = field(default=Pos(0, 0), compare=False)

    @property
    def field(self) -> NumberField:
        return QQ if self.modulus is None else NumberField(self.modulus)

    @property
    def basis_names(self):
        return [b for b, _ in self.basis]


@dataclass
class ConfigBlock:
    name: str
    vertices: int
    edges: tuple  # 1-based pairs, in source order
    dynkin: Optional[tuple] = None  # ("D", 4) when declared by type
    pos: Pos = field(default=Pos(0, 0), compare=False)


@dataclass
class LatticeBlock:
    name: str
    k: int
    classes: tuple  # ((name, coeffs), ...) with coeffs = (h, e1..ek)
    torus: Optional[str] = None
    pos: Pos = field(default=Pos(0, 0), compare=False)


@dataclass
class Command:
    name: str
    target: Optional[str] = None  # algebra / config / lattice name
    args: tuple = ()  # sphere names, or (("class", coords),) for an inline sphere
    parity: Optional[str] = None
    pos: Pos = field(default=Pos(0, 0), compare=False)


@dataclass
class Document:
    blocks: list

    def algebras(self):
        return {b.name: b for b in self.blocks if isinstance(b, AlgebraBlock)}

    def configs(self):
        return {b.name: b for b in self.blocks if isinstance(b, ConfigBlock)}

    def lattices(self):
        return {b.name: b for b in self.blocks if isinstance(b, LatticeBlock)}

    def commands(self):
        return [b for b in self.blocks if isinstance(b, Command)]


# -- expression values ---------------------------------------------------------

class _Vec:
    __slots__ = ("c",)

    def __init__(self, c):
        self.c = c  # tuple of Novikov

    def __add__(self, o):
        return _Vec(tuple(a + b for a, b in zip(self.c, o.c)))

    def __sub__(self, o):
        return _Vec(tuple(a - b for a, b in zip(self.c, o.c)))

    def scale(self, s):
        return _Vec(tuple(s * a for a in self.c))


class _Env:
    """Name resolution and scalar domain for one expression."""

    def __init__(self, field=QQ, names=(), t_is_T=False, allow_T=True, what="basis element"):
        self.field = field
        self.names = {n: k for k, n in enumerate(names)}
        self.t_is_T = t_is_T
        self.allow_T = allow_T
        self.what = what

    def vec(self, k):
        z = Novikov.zero(self.field)
        one = Novikov.const(1, self.field)
        return _Vec(tuple(one if i == k else z for i in range(len(self.names))))


# -- parser -----------------------------------------------------------------------

class Parser:
    def __init__(self, source):
        self.toks = tokenize(source)
        self.i = 0
        self.algebras = {}
        self.configs = {}
        self.lattices = {}
        self.current_algebra = None

    # token helpers
    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, expected, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else tok.text
        return DslSyntaxError(tok.line, tok.col, expected, found)

    def at(self, text):
        return self.tok.text == text and self.tok.kind != "eof"

    def accept(self, text):
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.at(text):
            raise self.error(f"'{text}'")
        tok = self.tok
        self.i += 1
        return tok

    def name(self, what="a name"):
        if self.tok.kind != "name":
            raise self.error(what)
        tok = self.tok
        self.i += 1
        return tok

    def integer(self, what="an integer"):
        if self.tok.kind != "int":
            raise self.error(what)
        tok = self.tok
        self.i += 1
        return int(tok.text)

    # document
    def document(self):
        blocks = []
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind != "name":
                raise self.error("'algebra', 'config', 'lattice' or a command")
            if t.text == "algebra":
                blocks.append(self.algebra())
            elif t.text == "lattice" and self.toks[self.i + 2].text == "{":
                blocks.append(self.lattice())
            elif t.text == "config" and self.toks[self.i + 2].text == "{":
                blocks.append(self.config())
            elif t.text in COMMANDS:
                blocks.append(self.command())
            else:
                raise self.error("'algebra', 'config', 'lattice' or a command")
        return Document(blocks)

    def _declare(self, table, tok, kind):
        if tok.text in table:
            raise DuplicateName(f"duplicate {kind} '{tok.text}'", tok.line, tok.col)

    # algebra blocks
    def algebra(self):
        start = self.expect("algebra")
        name_tok = self.name("an algebra name")
        self._declare(self.algebras, name_tok, "algebra")
        self.expect("{")
        self.expect("field")
        self.expect(":")
        if self.accept("rationals"):
            modulus = None
            fld = QQ
        else:
            self.expect("extension")
            self.expect("(")
            ptok = self.tok
            poly = self.expr(_Env(t_is_T=True, allow_T=False))
            if isinstance(poly, _Vec) or not poly.is_laurent():
                raise ParseError("modulus must be a polynomial in t", ptok.line, ptok.col)
            coeffs = {}
            for c, e in poly.terms():
                if e.denominator != 1 or e < 0:
                    raise ParseError("modulus must be a polynomial in t", ptok.line, ptok.col)
                coeffs[int(e)] = c.coords[0]
            deg = max(coeffs) if coeffs else 0
            self.expect(")")
            try:
                fld = nf_make([coeffs.get(k, 0) for k in range(deg + 1)])
            except ParseError:
                raise
            except Exception as exc:
                raise ParseError(str(exc), ptok.line, ptok.col) from None
            modulus = fld.modulus
        self.expect(";")
        novikov_n = None
        if self.accept("novikov_n"):
            self.expect(":")
            novikov_n = self.integer()
            self.expect(";")
        self.expect("basis")
        self.expect(":")
        self.expect("[")
        basis = []
        seen = set()
        while True:
            bt = self.name("a basis name")
            if bt.text in KEYWORDS_RESERVED:
                raise ParseError(f"'{bt.text}' is reserved", bt.line, bt.col)
            if bt.text in seen:
                raise DuplicateName(f"duplicate basis name '{bt.text}'", bt.line, bt.col)
            seen.add(bt.text)
            self.expect(":")
            basis.append((bt.text, self.integer("a degree")))
            if not self.accept(","):
                break
        self.expect("]")
        self.expect(";")
        names = [b for b, _ in basis]
        env = _Env(fld, names)
        self.expect("unit")
        self.expect(":")
        unit = self.vector(env)
        self.expect(";")
        t_degree = None
        if self.accept("t_degree"):
            self.expect(":")
            t_degree = self.integer()
            self.expect(";")
        n = None
        if self.accept("n"):
            self.expect(":")
            n = self.integer()
            self.expect(";")
        self.expect("product")
        self.expect("{")
        products = []
        declared = {}
        while not self.at("}"):
            a = self.basis_ref(env)
            self.expect("*")
            b = self.basis_ref(env)
            self.expect("=")
            vec = self.vector(env, allow_zero=True)
            self.expect(";")
            key = (a, b)
            if key in declared:
                tok = self.toks[self.i - 1]
                raise DuplicateName(f"product {names[a]}*{names[b]} given twice", tok.line, tok.col)
            declared[key] = vec
            products.append((key, vec))
        self.expect("}")
        integration = None
        if self.accept("integration"):
            self.expect(":")
            self.expect("[")
            vals = [self.scalar(env)]
            while self.accept(","):
                vals.append(self.scalar(env))
            self.expect("]")
            self.expect(";")
            integration = tuple(vals)
        spheres = []
        while self.accept("sphere"):
            st = self.name("a sphere name")
            if st.text in dict(spheres) or st.text in seen:
                raise DuplicateName(f"duplicate name '{st.text}'", st.line, st.col)
            self.expect("=")
            spheres.append((st.text, self.vector(env)))
            self.expect(";")
        self.expect("}")
        block = AlgebraBlock(name_tok.text, modulus, novikov_n, tuple(basis), unit, t_degree, n,
                             tuple(products), integration, tuple(spheres),
                             Pos(start.line, start.col))
        self.algebras[block.name] = block
        self.current_algebra = block
        return block

    def basis_ref(self, env):
        tok = self.name("a basis name")
        if tok.text not in env.names:
            raise UnresolvedName(f"unknown {env.what} '{tok.text}'", tok.line, tok.col)
        return env.names[tok.text]

    def vector(self, env, allow_zero=False):
        tok = self.tok
        v = self.expr(env)
        if isinstance(v, Novikov):
            if allow_zero and not v:
                return tuple(Novikov.zero(env.field) for _ in env.names)
            raise ParseError(f"expected a combination of {env.what}s", tok.line, tok.col)
        return v.c

    def scalar(self, env):
        tok = self.tok
        v = self.expr(env)
        if isinstance(v, _Vec):
            raise ParseError("expected a scalar", tok.line, tok.col)
        return v

    # expressions
    def expr(self, env):
        v = self.term(env)
        while self.at("+") or self.at("-"):
            op = self.tok
            self.i += 1
            w = self.term(env)
            v = self._combine(op, v, w)
        return v

    def _combine(self, op, v, w):
        if isinstance(v, _Vec) != isinstance(w, _Vec):
            raise ParseError("cannot add a scalar to a vector", op.line, op.col)
        return v + w if op.text == "+" else v - w

    def term(self, env):
        v = self.factor(env)
        while self.at("*") or self.at("/"):
            op = self.tok
            self.i += 1
            w = self.factor(env)
            if op.text == "*":
                if isinstance(v, _Vec) and isinstance(w, _Vec):
                    raise ParseError("products of basis elements are not linear", op.line, op.col)
                if isinstance(v, _Vec):
                    v = v.scale(w)
                elif isinstance(w, _Vec):
                    v = w.scale(v)
                else:
                    v = v * w
            else:
                if isinstance(w, _Vec):
                    raise ParseError("cannot divide by a vector", op.line, op.col)
                if not w:
                    raise ParseError("division by zero", op.line, op.col)
                v = v.scale(1 / w) if isinstance(v, _Vec) else v / w
        return v

    def factor(self, env):
        if self.accept("-"):
            v = self.factor(env)
            return v.scale(-1) if isinstance(v, _Vec) else -v
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            base = Novikov.const(int(tok.text), env.field)
            if self.at("^"):
                self.i += 1
                return base ** self._int_exponent()
            return base
        if self.accept("("):
            v = self.expr(env)
            self.expect(")")
            if self.at("^"):
                if isinstance(v, _Vec):
                    raise self.error("no exponent on a vector")
                self.i += 1
                return v ** self._int_exponent()
            return v
        if tok.kind == "name":
            self.i += 1
            if tok.text == "T" and env.allow_T:
                e = Fraction(1)
                if self.accept("^"):
                    e = self._exponent()
                return Novikov.monomial(env.field.one, e, field=env.field)
            if tok.text == "t":
                base = Novikov.monomial(1, 1) if env.t_is_T else Novikov.const(env.field.gen, env.field)
                if self.accept("^"):
                    return base ** self._int_exponent()
                return base
            if tok.text in env.names:
                return env.vec(env.names[tok.text])
            raise UnresolvedName(f"unknown {env.what} '{tok.text}'", tok.line, tok.col)
        raise self.error("a number, 't', 'T', a name or '('")

    def _signed_int(self):
        neg = self.accept("-")
        k = self.integer("an exponent")
        return -k if neg else k

    def _int_exponent(self):
        if self.accept("{"):
            k = self._signed_int()
            self.expect("}")
            return k
        return self._signed_int()

    def _exponent(self):
        if self.accept("{"):
            p = self._signed_int()
            q = 1
            if self.accept("/"):
                q = self.integer("a denominator")
                if q == 0:
                    raise self.error("a nonzero denominator", self.toks[self.i - 1])
            self.expect("}")
            return Fraction(p, q)
        return Fraction(self._signed_int())

    # configs and lattices
    def config(self):
        start = self.expect("config")
        nt = self.name("a config name")
        self._declare(self.configs, nt, "config")
        self.expect("{")
        if self.accept("dynkin"):
            kt = self.name("a Dynkin type")
            m = self.integer()
            self.expect(";")
            self.expect("}")
            if kt.text not in ("A", "D", "E"):
                raise ParseError("Dynkin type must be A, D or E", kt.line, kt.col)
            block = ConfigBlock(nt.text, m, (), (kt.text, m), Pos(start.line, start.col))
        else:
            self.expect("vertices")
            n = self.integer("a vertex count")
            self.expect(";")
            edges = []
            seen = set()
            while self.accept("edge"):
                et = self.tok
                i = self.integer("a vertex index")
                j = self.integer("a vertex index")
                self.expect(";")
                if not (1 <= i <= n and 1 <= j <= n) or i == j:
                    raise ParseError(f"bad edge {i} {j}", et.line, et.col)
                key = frozenset((i, j))
                if key in seen:
                    raise DuplicateName(f"duplicate edge {i} {j}", et.line, et.col)
                seen.add(key)
                edges.append((i, j))
            self.expect("}")
            block = ConfigBlock(nt.text, n, tuple(edges), None, Pos(start.line, start.col))
        self.configs[block.name] = block
        return block

    def lattice(self):
        start = self.expect("lattice")
        nt = self.name("a lattice name")
        self._declare(self.lattices, nt, "lattice")
        self.expect("{")
        self.expect("k")
        self.expect(":")
        k = self.integer()
        self.expect(";")
        names = ["H"] + [f"E{i}" for i in range(1, k + 1)]
        env = _Env(QQ, names, allow_T=False, what="lattice generator")
        classes = []
        while self.accept("class"):
            ct = self.name("a class name")
            if ct.text in dict(classes):
                raise DuplicateName(f"duplicate class '{ct.text}'", ct.line, ct.col)
            self.expect("=")
            vt = self.tok
            vec = self.vector(env)
            coeffs = []
            for c in vec:
                q = c.coefficient(0) if c else QQ.zero
                if c and (not c.is_monomial() or c.valuation() != 0 or q.coords[0].denominator != 1):
                    raise ParseError("lattice classes need integer coefficients", vt.line, vt.col)
                coeffs.append(int(q.coords[0]))
            self.expect(";")
            classes.append((ct.text, tuple(coeffs)))
        torus = None
        if self.accept("torus"):
            torus = self.name("a torus name").text
            self.expect(";")
        self.expect("}")
        block = LatticeBlock(nt.text, k, tuple(classes), torus, Pos(start.line, start.col))
        self.lattices[block.name] = block
        return block

    # commands
    def command(self):
        tok = self.name()
        pos = Pos(tok.line, tok.col)
        kind = tok.text
        if kind in ("check", "semisimple", "decompose"):
            target = None
            if self.tok.kind == "name" and self.tok.text not in COMMANDS + ("algebra",):
                nt = self.name()
                if nt.text not in self.algebras:
                    raise UnresolvedName(f"unknown algebra '{nt.text}'", nt.line, nt.col)
                target = nt.text
            elif self.current_algebra is None:
                raise UnresolvedName(f"'{kind}' before any algebra", tok.line, tok.col)
            else:
                target = self.current_algebra.name
            self.accept(";")
            return Command(kind, target, pos=pos)
        if kind in ("sphere", "dehn"):
            alg = self.current_algebra
            if alg is None:
                raise UnresolvedName(f"'{kind}' before any algebra", tok.line, tok.col)
            spheres = dict(alg.spheres)
            args = []
            for _ in range(1 if kind == "sphere" else 2):
                if self.at("("):
                    self.expect("(")
                    coords = self.vector(_Env(alg.field, alg.basis_names))
                    self.expect(")")
                    args.append(("class", coords))
                else:
                    st = self.name("a sphere name or '('")
                    if st.text not in spheres:
                        raise UnresolvedName(f"unknown sphere '{st.text}'", st.line, st.col)
                    args.append(st.text)
            self.accept(";")
            return Command(kind, alg.name, tuple(args), pos=pos)
        if kind in ("config", "lattice"):
            nt = self.name(f"a {kind} name")
            table = self.configs if kind == "config" else self.lattices
            if nt.text not in table:
                raise UnresolvedName(f"unknown {kind} '{nt.text}'", nt.line, nt.col)
            parity = None
            if self.accept("parity"):
                self.expect("=")
                pt = self.name("'even' or 'oddgood'")
                if pt.text not in ("even", "oddgood"):
                    raise self.error("'even' or 'oddgood'", pt)
                parity = pt.text
            elif kind == "config":
                raise self.error("'parity'")
            self.accept(";")
            return Command(kind, nt.text, parity=parity, pos=pos)
        raise self.error("a command")


def parse(source: str) -> Document:
    return Parser(source).document()


def parse_scalar(text: str, field: NumberField = QQ) -> Novikov:
    p = Parser(text)
    v = p.scalar(_Env(field))
    if p.tok.kind != "eof":
        raise p.error("end of input")
    return v


# -- rendering ---------------------------------------------------------------------

def render_vector(coords, names):
    parts = []
    for c, name in zip(coords, names):
        if not c:
            continue
        text = render(c)
        if c.is_monomial() and c.is_laurent():
            neg = text.startswith("-")
            body = text[1:] if neg else text
            body = name if body == "1" else f"{body}*{name}"
        else:
            neg = False
            body = f"({text})*{name}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"


def _render_lattice(coeffs):
    names = ["H"] + [f"E{i}" for i in range(1, len(coeffs))]
    vec = tuple(Novikov.const(c) for c in coeffs)
    return render_vector(vec, names)


def render_document(doc: Document) -> str:
    out = []
    for b in doc.blocks:
        if isinstance(b, AlgebraBlock):
            names = b.basis_names
            fs = "rationals" if b.modulus is None else f"extension({render_qpoly(b.modulus, 't')})"
            out.append(f"algebra {b.name} {{")
            out.append(f"  field: {fs};")
            if b.novikov_n is not None:
                out.append(f"  novikov_n: {b.novikov_n};")
            out.append("  basis: [" + ", ".join(f"{n}:{d}" for n, d in b.basis) + "];")
            out.append(f"  unit: {render_vector(b.unit, names)};")
            if b.t_degree is not None:
                out.append(f"  t_degree: {b.t_degree};")
            if b.n is not None:
                out.append(f"  n: {b.n};")
            out.append("  product {")
            for (i, j), vec in b.products:
                out.append(f"    {names[i]}*{names[j]} = {render_vector(vec, names)};")
            out.append("  }")
            if b.integration is not None:
                out.append("  integration: [" + ", ".join(render(c) for c in b.integration) + "];")
            for name, vec in b.spheres:
                out.append(f"  sphere {name} = {render_vector(vec, names)};")
            out.append("}")
        elif isinstance(b, ConfigBlock):
            out.append(f"config {b.name} {{")
            if b.dynkin is not None:
                out.append(f"  dynkin {b.dynkin[0]} {b.dynkin[1]};")
            else:
                out.append(f"  vertices {b.vertices};")
                for i, j in b.edges:
                    out.append(f"  edge {i} {j};")
            out.append("}")
        elif isinstance(b, LatticeBlock):
            out.append(f"lattice {b.name} {{")
            out.append(f"  k: {b.k};")
            for name, coeffs in b.classes:
                out.append(f"  class {name} = {_render_lattice(coeffs)};")
            if b.torus is not None:
                out.append(f"  torus {b.torus};")
            out.append("}")
        else:
            out.append(_render_command(b, doc))
    return "\n".join(out) + "\n"


def _render_command(c: Command, doc: Document):
    if c.name in ("check", "semisimple", "decompose"):
        return f"{c.name} {c.target};"
    if c.name in ("sphere", "dehn"):
        names = doc.algebras()[c.target].basis_names
        args = [f"({render_vector(a[1], names)})" if isinstance(a, tuple) else a for a in c.args]
        return f"{c.name} " + " ".join(args) + ";"
    suffix = f" parity={c.parity}" if c.parity else ""
    return f"{c.name} {c.target}{suffix};"
