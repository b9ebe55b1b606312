"""The session-script language: lexer, recursive-descent parser, canonical printer.

A script is a sequence of ``;``-terminated statements::

    field QQ;                      # or: field Fp 3;
    base y1 y2;                    # optional
    positive x1 x2;
    ideal I = [x1^2, x1*x2];
    module M = coker { shifts: [(0,0,0,0)], matrix: [[x1, x2]] };
    reg M wrt (y1, y2)+R+ level 1;

Matrix rows index the generators of the free module (one row per shift);
columns are the relations.  Fine shifts (tuples, y-block first) select the
MULTIGRADED regime, integers the GENERAL one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .groebner import FreeModule, ModulePresentation, vec_to_polys
from .poly import (
    GENERAL,
    GF,
    MULTIGRADED,
    NOT_HOMOGENEOUS,
    QQ,
    AlgebraError,
    Polynomial,
    RingSpec,
    degree_of,
)
from .verify import STATEMENTS

__all__ = [
    "ScriptError",
    "ScriptSyntaxError",
    "ScriptSemanticError",
    "IdealRef",
    "Command",
    "SessionScript",
    "parse",
    "render_script",
    "render_presentation",
]


class ScriptError(Exception):
    def __init__(self, msg, line=0, col=0):
        self.msg = msg
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {msg}")


class ScriptSyntaxError(ScriptError):
    def __init__(self, msg, line=0, col=0, expected=()):
        self.expected = tuple(sorted(set(expected)))
        if self.expected:
            msg = f"{msg}; expected one of: {', '.join(self.expected)}"
        super().__init__(msg, line, col)


class ScriptSemanticError(ScriptError):
    pass


# ---------------------------------------------------------------- lexer

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<option>--[A-Za-z][A-Za-z0-9_-]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_.]*)
  | (?P<punct>[;=\[\](){},:+\-*^/])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    out = []
    line, start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ScriptSyntaxError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# ---------------------------------------------------------------- syntax tree

@dataclass
class IdealRef:
    """A named ideal or an explicit generator list, optionally plus R+."""

    name: str | None = None
    gens: list = field(default_factory=list)     # expression trees before resolution
    plus_rplus: bool = False
    polys: list = field(default_factory=list)    # resolved polynomials

    def render(self):
        if self.name:
            core = self.name
        elif self.polys or not self.plus_rplus:
            core = "(" + ", ".join(p.render() for p in self.polys) + ")"
        else:
            core = ""
        if self.plus_rplus:
            return f"{core}+R+" if core else "R+"
        return core


@dataclass
class Command:
    kind: str
    line: int
    col: int
    target: str | None = None
    ideal: IdealRef | None = None
    number: int | None = None
    options: dict = field(default_factory=dict)

    def render(self) -> str:
        k = self.kind
        if k == "gb":
            return f"gb {self.target}"
        if k == "resolve":
            return f"resolve {self.target}" + (f" {self.number}" if self.number is not None else "")
        if k == "betti":
            return f"betti {self.target}"
        if k == "reg":
            lvl = f" level {self.number}" if self.number else ""
            return f"reg {self.target} wrt {self.ideal.render()}{lvl}"
        if k == "end":
            return f"end {self.target} wrt {self.ideal.render()} at {self.number}"
        if k == "cd":
            return f"cd {self.target} wrt {self.ideal.render()}"
        if k == "grade":
            return f"grade {self.ideal.render()} on {self.target}"
        if k == "fdepth":
            return f"fdepth {self.target}"
        if k == "verify":
            opts = "".join(f" --{key} {v}" for key, v in sorted(self.options.items()))
            return f"verify {self.target}{opts}"
        raise AssertionError(k)


@dataclass
class SessionScript:
    ring: RingSpec
    ideals: dict
    modules: dict
    commands: list
    order: list  # declaration names in source order, as ("ideal"|"module", name)


# ---------------------------------------------------------------- parser

class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, expected=()):
        t = self.tok
        got = t.text or "end of input"
        raise ScriptSyntaxError(f"{msg} (found {got!r})", t.line, t.col, expected)

    def next(self):
        t = self.tok
        self.i += 1
        return t

    def at(self, text):
        return self.tok.text == text and self.tok.kind in ("punct", "name")

    def expect(self, text):
        if not self.at(text):
            self.error("unexpected token", [repr(text)])
        return self.next()

    def expect_kind(self, kind, what):
        if self.tok.kind != kind:
            self.error("unexpected token", [what])
        return self.next()

    def integer(self):
        neg = False
        if self.at("-"):
            self.next()
            neg = True
        t = self.expect_kind("int", "integer")
        return -int(t.text) if neg else int(t.text)

    # expressions -> trees
    def expr(self):
        node = self.term()
        while self.at("+") or self.at("-"):
            # "+R+" after an ideal list is handled by the caller
            if self.at("+") and self.toks[self.i + 1].text == "R" and self.toks[self.i + 2].text == "+":
                break
            op = self.next().text
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.at("*") or self.at("/"):
            op = self.next().text
            if op == "*":
                node = ("mul", node, self.factor())
            else:
                t = self.expect_kind("int", "integer")
                if int(t.text) == 0:
                    raise ScriptSemanticError("division by zero", t.line, t.col)
                node = ("div", node, int(t.text))
        return node

    def factor(self):
        if self.at("-"):
            t = self.next()
            return ("neg", self.factor(), t)
        base = self.atom()
        if self.at("^"):
            self.next()
            e = self.expect_kind("int", "integer exponent")
            return ("pow", base, int(e.text))
        return base

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.next()
            return ("num", int(t.text))
        if t.kind == "name":
            self.next()
            return ("var", t.text, t)
        if self.at("("):
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        self.error("expected an expression", ["integer", "variable", "'('"])

    def expr_list(self, close):
        out = []
        if self.at(close):
            return out
        out.append((self.tok, self.expr()))
        while self.at(","):
            self.next()
            out.append((self.tok, self.expr()))
        return out

    # statements
    def script(self):
        decls, cmds = [], []
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind != "name":
                self.error("expected a statement", _STATEMENT_WORDS)
            word = t.text
            if word == "field":
                self.next()
                if self.at("QQ"):
                    self.next()
                    decls.append(("field", t, None))
                elif self.at("Fp"):
                    self.next()
                    p = self.expect_kind("int", "prime")
                    decls.append(("field", t, (int(p.text), p)))
                else:
                    self.error("unknown field", ["QQ", "Fp"])
            elif word in ("base", "positive"):
                self.next()
                names = []
                while self.tok.kind == "name":
                    names.append(self.next())
                decls.append((word, t, names))
            elif word == "ideal":
                self.next()
                name = self.expect_kind("name", "ideal name")
                self.expect("=")
                self.expect("[")
                gens = self.expr_list("]")
                self.expect("]")
                decls.append(("ideal", name, gens))
            elif word == "module":
                self.next()
                name = self.expect_kind("name", "module name")
                self.expect("=")
                self.expect("coker")
                self.expect("{")
                self.expect("shifts")
                self.expect(":")
                self.expect("[")
                shifts = []
                if not self.at("]"):
                    shifts.append(self.shift())
                    while self.at(","):
                        self.next()
                        shifts.append(self.shift())
                self.expect("]")
                self.expect(",")
                self.expect("matrix")
                self.expect(":")
                self.expect("[")
                rows = []
                if not self.at("]"):
                    rows.append(self.row())
                    while self.at(","):
                        self.next()
                        rows.append(self.row())
                self.expect("]")
                self.expect("}")
                decls.append(("module", name, (shifts, rows)))
            elif word in _COMMANDS:
                cmds.append(self.command())
            else:
                self.error("expected a statement", _STATEMENT_WORDS)
            self.expect(";")
        return decls, cmds

    def shift(self):
        t = self.tok
        if self.at("("):
            self.next()
            vals = [self.integer()]
            while self.at(","):
                self.next()
                vals.append(self.integer())
            self.expect(")")
            return (tuple(vals), t)
        return (self.integer(), t)

    def row(self):
        t = self.tok
        self.expect("[")
        entries = self.expr_list("]")
        self.expect("]")
        return (t, entries)

    def ideal_ref(self):
        t = self.tok
        ref = IdealRef()
        if self.at("R") and self.toks[self.i + 1].text == "+":
            self.next()
            self.next()
            ref.plus_rplus = True
            return ref, t
        if self.at("("):
            self.next()
            ref.gens = self.expr_list(")")
            self.expect(")")
        elif self.tok.kind == "name" and self.tok.text not in _RESERVED:
            ref.name = self.next().text
        else:
            self.error("expected an ideal", ["ideal name", "'('", "R+"])
        if self.at("+"):
            self.next()
            self.expect("R")
            self.expect("+")
            ref.plus_rplus = True
        return ref, t

    def command(self):
        t = self.next()
        k = t.text
        cmd = Command(k, t.line, t.col)
        if k in ("gb", "betti", "fdepth"):
            cmd.target = self.expect_kind("name", "name").text
        elif k == "resolve":
            cmd.target = self.expect_kind("name", "module name").text
            if self.tok.kind == "int":
                cmd.number = int(self.next().text)
        elif k in ("reg", "end", "cd"):
            cmd.target = self.expect_kind("name", "module name").text
            self.expect("wrt")
            cmd.ideal, _ = self.ideal_ref()
            if k == "reg" and self.at("level"):
                self.next()
                cmd.number = int(self.expect_kind("int", "level").text)
            elif k == "reg":
                cmd.number = 0
            if k == "end":
                self.expect("at")
                cmd.number = int(self.expect_kind("int", "index").text)
        elif k == "grade":
            cmd.ideal, _ = self.ideal_ref()
            self.expect("on")
            cmd.target = self.expect_kind("name", "module name").text
        elif k == "verify":
            cmd.target = self.expect_kind("name", "statement id or 'all'").text
            while self.tok.kind == "option":
                opt = self.next()
                key = opt.text[2:]
                if key not in ("seed", "size"):
                    raise ScriptSyntaxError(f"unknown option {opt.text}", opt.line, opt.col,
                                            ["--seed", "--size"])
                cmd.options[key] = int(self.expect_kind("int", "integer").text)
        return cmd


_COMMANDS = ("gb", "resolve", "betti", "reg", "end", "cd", "grade", "fdepth", "verify")
_STATEMENT_WORDS = ("field", "base", "positive", "ideal", "module") + _COMMANDS
_RESERVED = set(_STATEMENT_WORDS) | {"R", "wrt", "on", "at", "level", "coker"}


# ---------------------------------------------------------------- semantics

def _eval(node, ring, names):
    kind = node[0]
    if kind == "num":
        return Polynomial.constant(ring, node[1])
    if kind == "var":
        _, name, t = node
        if name not in names:
            raise ScriptSemanticError(f"unknown variable {name!r}", t.line, t.col)
        return Polynomial.variable(ring, name)
    if kind == "neg":
        return -_eval(node[1], ring, names)
    if kind == "pow":
        return _eval(node[1], ring, names) ** node[2]
    if kind == "div":
        f = _eval(node[1], ring, names)
        if ring.field.char == 0:
            return f.scale(Fraction(1, node[2]))
        return f.scale(ring.field.inv(ring.field(node[2])))
    a = _eval(node[1], ring, names)
    b = _eval(node[2], ring, names)
    return {"add": a + b, "sub": a - b, "mul": a * b}[kind]


def _build(decls, cmds) -> SessionScript:
    fld = None
    ynames, xnames = [], []
    seen_vars = set()
    for kind, t, payload in decls:
        if kind == "field":
            if fld is not None:
                raise ScriptSemanticError("field declared twice", t.line, t.col)
            if payload is None:
                fld = QQ
            else:
                p, pt = payload
                try:
                    fld = GF(p)
                except AlgebraError:
                    raise ScriptSemanticError(f"{p} is not prime", pt.line, pt.col) from None
        elif kind in ("base", "positive"):
            for nt in payload:
                if nt.text in seen_vars or nt.text in _RESERVED:
                    raise ScriptSemanticError(f"variable name {nt.text!r} unavailable", nt.line, nt.col)
                seen_vars.add(nt.text)
                (ynames if kind == "base" else xnames).append(nt.text)
    first = decls[0][1] if decls else None
    if fld is None:
        raise ScriptSemanticError("missing field declaration", 1, 1)
    if not xnames and not ynames:
        line = first.line if first else 1
        raise ScriptSemanticError("no variables declared", line, 1)
    m, t = len(ynames), len(xnames)
    # regime from shift style
    styles = set()
    for kind, tok, payload in decls:
        if kind == "module":
            for val, st in payload[0]:
                styles.add("tuple" if isinstance(val, tuple) else "int")
    if len(styles) > 1:
        raise ScriptSemanticError("mixed integer and tuple shifts", 1, 1)
    regime = MULTIGRADED if (m or styles == {"tuple"}) else GENERAL
    if m and styles == {"int"}:
        raise ScriptSemanticError("base variables require fine (tuple) shifts", 1, 1)
    ring = RingSpec(fld, m, t, "grevlex", regime, tuple(ynames), tuple(xnames))
    names = set(ring.names)

    ideals, modules, order = {}, {}, []
    taken = set()
    for kind, nt, payload in decls:
        if kind not in ("ideal", "module"):
            continue
        if nt.text in taken or nt.text in names:
            raise ScriptSemanticError(f"name {nt.text!r} already used", nt.line, nt.col)
        taken.add(nt.text)
        if kind == "ideal":
            polys = []
            for tok, e in payload:
                f = _eval(e, ring, names)
                if f and degree_of(f, "fine" if ring.multigraded else "coarse") is NOT_HOMOGENEOUS:
                    what = "fine-multihomogeneous" if ring.multigraded else "homogeneous"
                    raise ScriptSemanticError(f"generator not {what}", tok.line, tok.col)
                polys.append(f)
            ideals[nt.text] = polys
        else:
            shifts_raw, rows = payload
            shifts = []
            for val, st in shifts_raw:
                if isinstance(val, tuple) and len(val) != ring.n:
                    raise ScriptSemanticError(f"shift needs {ring.n} entries", st.line, st.col)
                shifts.append(val)
            if len(rows) != len(shifts):
                raise ScriptSemanticError("matrix needs one row per shift", nt.line, nt.col)
            ncols = {len(r[1]) for r in rows}
            if len(ncols) > 1:
                raise ScriptSemanticError("matrix rows have different lengths", nt.line, nt.col)
            Fm = FreeModule(ring, tuple(shifts))
            cols = []
            for c in range(ncols.pop() if ncols else 0):
                v = {}
                anchor = None
                for r, (rt, entries) in enumerate(rows):
                    tok, e = entries[c]
                    anchor = anchor or tok
                    f = _eval(e, ring, names)
                    if ring.multigraded and len(f.terms) > 1:
                        raise ScriptSemanticError("entry not fine-multihomogeneous in MULTIGRADED regime",
                                                  tok.line, tok.col)
                    for exp, coef in f.terms.items():
                        v[(r, exp)] = coef
                cols.append((anchor, v))
            try:
                for anchor, v in cols:
                    ModulePresentation(Fm, [v])
            except AlgebraError as exc:
                raise ScriptSemanticError(f"column not graded: {exc}", anchor.line, anchor.col) from None
            modules[nt.text] = ModulePresentation(Fm, [v for _, v in cols])
        order.append((kind, nt.text))

    for cmd in cmds:
        if cmd.kind == "verify" and cmd.target != "all" and cmd.target not in STATEMENTS:
            raise ScriptSemanticError(f"unknown statement {cmd.target!r}", cmd.line, cmd.col)
        if cmd.target is not None and cmd.kind not in ("verify",):
            if cmd.kind == "gb":
                ok = cmd.target in ideals or cmd.target in modules
            elif cmd.kind == "fdepth":
                ok = cmd.target in ideals
            else:
                ok = cmd.target in modules
            if not ok:
                raise ScriptSemanticError(f"unknown name {cmd.target!r}", cmd.line, cmd.col)
            if cmd.kind == "fdepth":
                for f in ideals[cmd.target]:
                    if f and (not f.is_term() or any(any(e[ring.m:]) for e in f.terms)):
                        raise ScriptSemanticError("fdepth needs a monomial ideal of the base ring",
                                                  cmd.line, cmd.col)
                if ring.field.char == 0:
                    raise ScriptSemanticError("fdepth needs a field Fp", cmd.line, cmd.col)
        if cmd.ideal is not None:
            ref = cmd.ideal
            if ref.name is not None:
                if ref.name not in ideals:
                    raise ScriptSemanticError(f"unknown ideal {ref.name!r}", cmd.line, cmd.col)
                ref.polys = list(ideals[ref.name])
            else:
                ref.polys = [_eval(e, ring, names) for _, e in ref.gens]
            if cmd.kind in ("reg", "end", "cd"):
                for f in ref.polys:
                    if f and not f.is_term():
                        raise ScriptSemanticError("local cohomology needs monomial generators",
                                                  cmd.line, cmd.col)
    return SessionScript(ring, ideals, modules, cmds, order)


def parse(text: str) -> SessionScript:
    decls, cmds = _Parser(text).parse_all()
    return _build(decls, cmds)


_Parser.parse_all = _Parser.script


# ---------------------------------------------------------------- printer

def _shift_text(s):
    if isinstance(s, tuple):
        return "(" + ",".join(str(a) for a in s) + ")"
    return str(s)


def render_presentation(M: ModulePresentation) -> str:
    ring = M.ring
    Fm = M.module
    cols = [vec_to_polys(ring, v, Fm.rank) for v in M.columns]
    rows = []
    for r in range(Fm.rank):
        rows.append("[" + ", ".join(c[r].render() for c in cols) + "]")
    return (f"coker {{ shifts: [{', '.join(_shift_text(s) for s in Fm.shifts)}], "
            f"matrix: [{', '.join(rows)}] }}")


def render_script(s: SessionScript) -> str:
    ring = s.ring
    lines = [f"field {'QQ' if ring.field.char == 0 else f'Fp {ring.field.char}'};"]
    if ring.m:
        lines.append("base " + " ".join(ring.ynames) + ";")
    lines.append("positive " + " ".join(ring.xnames) + ";")
    for kind, name in s.order:
        if kind == "ideal":
            lines.append(f"ideal {name} = [{', '.join(f.render() for f in s.ideals[name])}];")
        else:
            lines.append(f"module {name} = {render_presentation(s.modules[name])};")
    for c in s.commands:
        lines.append(c.render() + ";")
    return "\n".join(lines) + "\n"
