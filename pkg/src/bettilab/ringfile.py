"""Reading and writing ring-spec files.

Grammar::

    ring <name> { prime = <int>; vars = <ident>(, <ident>)*; ideal = <poly>(, <poly>)*; }

A poly is a signed sum of integer multiples of monomials written with ``*``
and ``^``, e.g. ``u1^2 + 3*u1*u2``.  A file may hold several ring blocks; an
empty ``ideal =`` (or ``ideal = 0``) is the zero ideal.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from typing import Sequence

from .algebra import HomogPoly, RingSpec, monomial_text
from .errors import NonHomogeneous, RingSpecSyntaxError
from .fplinalg import check_prime

_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>[{}=;,+\-*^])")


class _Tokens:
    def __init__(self, text: str):
        self.toks: list[tuple[str, str, int, int]] = []
        line, line_start, pos = 1, 0, 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise RingSpecSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
            kind = m.lastgroup
            if kind:
                self.toks.append((kind, m.group(), line, pos - line_start + 1))
            chunk = m.group()
            nl = chunk.count("\n")
            if nl:
                line += nl
                line_start = pos + chunk.rfind("\n") + 1
            pos = m.end()
        self.end = ("eof", "", line, pos - line_start + 1)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else self.end

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        shown = tok[1] or "end of input"
        return RingSpecSyntaxError(f"{msg}, found {shown!r}", tok[2], tok[3])

    def expect(self, value=None, kind=None):
        t = self.peek()
        if (value is not None and t[1] != value) or (kind is not None and t[0] != kind):
            raise self.error(f"expected {value or kind}")
        return self.next()

    def at(self, value):
        return self.peek()[1] == value and self.peek()[0] == "sym"


def _parse_poly(tk: _Tokens, names: Sequence[str]) -> HomogPoly | None:
    index = {n: i for i, n in enumerate(names)}
    e = len(names)
    terms: dict[tuple[int, ...], int] = {}
    texts: dict[tuple[int, ...], str] = {}
    sign = 1
    if tk.at("+") or tk.at("-"):
        sign = -1 if tk.next()[1] == "-" else 1
    while True:
        coeff, exps = sign, [0] * e
        while True:
            t = tk.peek()
            if t[0] == "int":
                tk.next()
                coeff *= int(t[1])
            elif t[0] == "ident":
                tk.next()
                if t[1] not in index:
                    raise tk.error(f"unknown variable {t[1]!r}", t)
                power = 1
                if tk.at("^"):
                    tk.next()
                    power = int(tk.expect(kind="int")[1])
                exps[index[t[1]]] += power
            else:
                raise tk.error("expected a coefficient or variable")
            if tk.at("*"):
                tk.next()
                continue
            break
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
        texts.setdefault(key, monomial_text(key, names))
        if tk.at("+") or tk.at("-"):
            sign = -1 if tk.next()[1] == "-" else 1
            continue
        break
    terms = {k: c for k, c in terms.items() if c}
    if not terms:
        return None
    degrees = {sum(k) for k in terms}
    if len(degrees) > 1:
        first = sum(next(iter(terms)))
        bad = next(k for k in terms if sum(k) != first)
        raise NonHomogeneous(f"non-homogeneous generator: term {texts[bad]} has degree {sum(bad)}, "
                             f"expected {first}", texts[bad])
    return HomogPoly(terms, e, degrees.pop())


def _parse_ring(tk: _Tokens) -> RingSpec:
    tk.expect("ring")
    name = tk.expect(kind="ident")[1]
    tk.expect("{")
    prime, names, gens = None, None, []
    seen = set()
    while not tk.at("}"):
        key_tok = tk.expect(kind="ident")
        key = key_tok[1]
        if key in seen:
            raise tk.error(f"duplicate field {key!r}", key_tok)
        seen.add(key)
        tk.expect("=")
        if key == "prime":
            prime = int(tk.expect(kind="int")[1])
            check_prime(prime)
        elif key == "vars":
            names = []
            while True:
                t = tk.expect(kind="ident")
                if t[1] in names:
                    raise RingSpecSyntaxError(f"duplicate variable {t[1]!r}", t[2], t[3])
                names.append(t[1])
                if not tk.at(","):
                    break
                tk.next()
        elif key == "ideal":
            if names is None:
                raise tk.error("vars must be declared before ideal", key_tok)
            while not tk.at(";"):
                g = _parse_poly(tk, names)
                if g is not None:
                    if g.degree == 0:
                        raise NonHomogeneous("constant generator gives the unit ideal", g.to_text(names))
                    gens.append(g)
                if not tk.at(","):
                    break
                tk.next()
        else:
            raise tk.error(f"unknown field {key!r}", key_tok)
        tk.expect(";")
    tk.expect("}")
    if prime is None or names is None:
        raise tk.error("ring needs both prime and vars")
    return RingSpec(prime, tuple(names), tuple(gens), name)


def parse_ring_specs(text: str) -> dict[str, RingSpec]:
    """All ring blocks in ``text`` keyed by name, in file order."""
    tk = _Tokens(text)
    out: dict[str, RingSpec] = {}
    while tk.peek()[0] != "eof":
        t = tk.peek()
        ring = _parse_ring(tk)
        if ring.name in out:
            raise RingSpecSyntaxError(f"duplicate ring name {ring.name!r}", t[2], t[3])
        out[ring.name] = ring
    if not out:
        raise tk.error("expected a ring block")
    return out


def parse_ring_spec(text: str, name: str | None = None) -> RingSpec:
    rings = parse_ring_specs(text)
    if name is None:
        return next(iter(rings.values()))
    if name not in rings:
        raise KeyError(f"no ring named {name!r}; have {', '.join(rings)}")
    return rings[name]


def format_ring_spec(A: RingSpec) -> str:
    ideal = ", ".join(g.to_text(A.var_names) for g in A.gens)
    return (f"ring {A.name} {{\n  prime = {A.p};\n  vars = {', '.join(A.var_names)};\n"
            f"  ideal = {ideal};\n}}\n")


def read_ring_file(path, name: str | None = None) -> RingSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_ring_spec(fh.read(), name)
