"""Command-line front end: ring-description DSL, dispatch, reports, cache.

The DSL describes a presented ring in semicolon-terminated statements::

    char 2;              # prime characteristic (required, first error checked)
    ext a^2 + a + 1;     # optional: extend F_p by a root of a monic irreducible
    param t;             # optional: pass to the fraction field F_q(t)
    vars x y z;          # ambient variable names (required)
    rel z^4 + x*y*z^2;   # zero or more defining relations
    ideal m = (x, y, z); # named ideals
    elem f = x*y;        # named elements

``#`` starts a comment that runs to the end of the line.  Parsing,
pretty-printing, and reparsing is a fixed point: :func:`parse_spec`
followed by :meth:`RingSpecDocument.render` yields a canonical script that
parses back to the same document.

Every command prints a report envelope.  The JSON form is deterministic:
keys are sorted, lengths and other potentially large counts are decimal
strings, rationals are ``{"num": ..., "den": ...}`` objects, and the only
run-dependent field is ``timing``, which sits outside the payload.  CSV
and table forms render the same rows with exact entries.  Results can be
cached on disk keyed by a content digest of (spec, command, parameters);
cache writes go through a temporary file and an atomic rename.

Exit codes: 0 = computed; 2 = computed but the checked property failed
(a non-member verdict, a violated inequality, a missed target); 3 = bad
input (syntax, unknown names, non-prime characteristic, infinite
colengths, missing files).
"""

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
import time
from fractions import Fraction

from . import corpus
from .coeff import (
    ExtensionField,
    FieldElement,
    FieldError,
    PrimeField,
    RationalFunctionField,
    tokenize,
)
from .polyring import GREVLEX, LEX, Ideal, RingError, parse_polynomial, ring_make
from . import groebner
from .frobenius import (
    FrobeniusError,
    frobenius_closure_membership,
    frobenius_power,
    jacobian_candidate,
    tc_membership,
)
from .invariants import (
    InvariantError,
    assoc_check,
    descent_sequence,
    ehk_estimate,
    fsig_function,
    hk_function,
    hs_multiplicity,
    lech_check,
)
from .equimult import (
    WARRANTY,
    EquimultError,
    bm_gap_table,
    equimult_check,
    monsky_repro,
    rigidity_check,
    wy_inequality_check,
)

VERSION = "0.1.0"
CACHE_ENV = "FROBINV_CACHE"

_DOMAIN_ERRORS = (FieldError, RingError, FrobeniusError, InvariantError, EquimultError)


class SpecError(ValueError):
    """A positioned error in a ring-description script."""

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = "line %d, col %d: %s" % (line, col, message)
        super().__init__(message)
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# DSL parsing


def _statements(text):
    """Split a script into (line, col, statement-text) triples.

    Statements are terminated by ';'.  '#' comments run to end of line.
    Positions point at the first non-blank character of each statement.
    """
    out = []
    buf = []
    pos = None
    line, col = 1, 1
    comment = False
    for ch in text:
        if ch == "\n":
            comment = False
            if buf:
                buf.append(" ")
            line += 1
            col = 1
            continue
        if comment:
            col += 1
            continue
        if ch == "#":
            comment = True
            col += 1
            continue
        if ch == ";":
            stmt = "".join(buf).strip()
            if not stmt:
                raise SpecError("empty statement", line, col)
            out.append((pos[0], pos[1], stmt))
            buf = []
            pos = None
            col += 1
            continue
        if not ch.isspace() and pos is None:
            pos = (line, col)
        buf.append(ch)
        col += 1
    if "".join(buf).strip():
        raise SpecError("statement is missing its ';' terminator", pos[0], pos[1])
    return out


def _is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _is_name(s):
    return s.isidentifier()


def _split_top_commas(s):
    """Split on commas that are not nested inside parentheses."""
    parts = []
    depth = 0
    cur = []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_binding(rest, line, col, what):
    """Parse 'name = tail' and return (name, tail)."""
    if "=" not in rest:
        raise SpecError("expected '%s NAME = ...'" % what, line, col)
    name, tail = rest.split("=", 1)
    name = name.strip()
    tail = tail.strip()
    if not _is_name(name):
        raise SpecError("bad %s name %r" % (what, name), line, col)
    if not tail:
        raise SpecError("empty %s body" % what, line, col)
    return name, tail


class RingSpecDocument:
    """A parsed ring-description script.

    Holds the constructed ring together with the named ideals and elements,
    plus enough canonical text to pretty-print the document back out.
    """

    def __init__(self, char, ext, param, ring, ideals, elements):
        self.char = char
        self.ext = ext          # canonical modulus text, or None
        self.param = param      # parameter name, or None
        self.ring = ring
        self.ideals = ideals    # name -> Ideal
        self.elements = elements  # name -> Polynomial

    def render(self):
        lines = ["char %d;" % self.char]
        if self.ext is not None:
            lines.append("ext %s;" % self.ext)
        if self.param is not None:
            lines.append("param %s;" % self.param)
        lines.append("vars %s;" % " ".join(self.ring.varnames))
        for rel in self.ring.relations:
            lines.append("rel %s;" % rel)
        for name, ideal in self.ideals.items():
            gens = ", ".join(str(g) for g in ideal.gens)
            lines.append("ideal %s = (%s);" % (name, gens))
        for name, f in self.elements.items():
            lines.append("elem %s = %s;" % (name, f))
        return "\n".join(lines) + "\n"


def _build_extension(p, text, line, col):
    """Turn an 'ext' body into an ExtensionField plus its canonical text."""
    try:
        toks = tokenize(text)
    except FieldError as exc:
        raise SpecError(str(exc), line, col) from None
    names = sorted({val for kind, val in toks if kind == "name"})
    if len(names) != 1:
        raise SpecError(
            "extension modulus must use exactly one symbol, got %s"
            % (names or "none"), line, col)
    gen = names[0]
    helper = ring_make(PrimeField(p), (gen,))
    try:
        f = helper.parse(text)
    except RingError as exc:
        raise SpecError(str(exc), line, col) from None
    deg = f.degree()
    if deg < 2:
        raise SpecError("extension modulus must have degree >= 2", line, col)
    coeffs = [f.coefficient((k,)).payload for k in range(deg + 1)]
    if coeffs[-1] != 1:
        inv = pow(coeffs[-1], p - 2, p)
        coeffs = [(c * inv) % p for c in coeffs]
        f = f.scale(helper.field.from_int(inv))
    try:
        field = ExtensionField(p, tuple(coeffs), gen=gen)
    except FieldError as exc:
        raise SpecError(str(exc), line, col) from None
    return field, str(f)


def parse_spec(text):
    """Parse a ring-description script into a RingSpecDocument."""
    stmts = _statements(text)
    char = ext_t = param = varnames = None
    char_pos = ext_pos = param_pos = vars_pos = (1, 1)
    rels = []
    ideal_stmts = []
    elem_stmts = []
    for line, col, stmt in stmts:
        head, _, rest = stmt.partition(" ")
        rest = rest.strip()
        if head == "char":
            if char is not None:
                raise SpecError("duplicate 'char' statement", line, col)
            try:
                char = int(rest)
            except ValueError:
                raise SpecError("characteristic must be an integer, got %r"
                                % rest, line, col) from None
            char_pos = (line, col)
        elif head == "ext":
            if ext_t is not None:
                raise SpecError("duplicate 'ext' statement", line, col)
            if not rest:
                raise SpecError("empty 'ext' statement", line, col)
            ext_t, ext_pos = rest, (line, col)
        elif head == "param":
            if param is not None:
                raise SpecError("duplicate 'param' statement", line, col)
            if not _is_name(rest):
                raise SpecError("bad parameter name %r" % rest, line, col)
            param, param_pos = rest, (line, col)
        elif head == "vars":
            if varnames is not None:
                raise SpecError("duplicate 'vars' statement", line, col)
            names = rest.split()
            if not names:
                raise SpecError("empty 'vars' statement", line, col)
            for nm in names:
                if not _is_name(nm):
                    raise SpecError("bad variable name %r" % nm, line, col)
                if names.count(nm) > 1:
                    raise SpecError("duplicate variable %r" % nm, line, col)
            varnames, vars_pos = tuple(names), (line, col)
        elif head == "rel":
            if not rest:
                raise SpecError("empty 'rel' statement", line, col)
            rels.append((rest, (line, col)))
        elif head == "ideal":
            name, tail = _parse_binding(rest, line, col, "ideal")
            if not (tail.startswith("(") and tail.endswith(")")):
                raise SpecError("ideal generators must be parenthesized",
                                line, col)
            gens = [g.strip() for g in _split_top_commas(tail[1:-1])]
            if gens == [""]:
                gens = []
            if any(not g for g in gens):
                raise SpecError("empty ideal generator", line, col)
            ideal_stmts.append((name, gens, (line, col)))
        elif head == "elem":
            name, tail = _parse_binding(rest, line, col, "elem")
            elem_stmts.append((name, tail, (line, col)))
        else:
            raise SpecError("unknown statement %r" % head, line, col)

    if char is None:
        raise SpecError("missing 'char' statement", 1, 1)
    if not _is_prime(char):
        raise SpecError("characteristic %d is not prime" % char, *char_pos)
    if varnames is None:
        raise SpecError("missing 'vars' statement", 1, 1)

    field = PrimeField(char)
    ext_canonical = None
    if ext_t is not None:
        field, ext_canonical = _build_extension(char, ext_t, *ext_pos)
    if param is not None:
        try:
            field = RationalFunctionField(field, param)
        except FieldError as exc:
            raise SpecError(str(exc), *param_pos) from None

    try:
        ambient = ring_make(field, varnames)
    except RingError as exc:
        raise SpecError(str(exc), *vars_pos) from None
    rel_polys = []
    for txt, pos in rels:
        try:
            rel_polys.append(parse_polynomial(ambient, txt))
        except RingError as exc:
            raise SpecError(str(exc), *pos) from None
    try:
        ring = ring_make(field, varnames, relations=rel_polys)
    except RingError as exc:
        pos = rels[0][1] if rels else vars_pos
        raise SpecError(str(exc), *pos) from None

    seen = set()
    ideals = {}
    elements = {}
    for name, gens, pos in ideal_stmts:
        if name in seen:
            raise SpecError("duplicate name %r" % name, *pos)
        seen.add(name)
        polys = []
        for g in gens:
            try:
                polys.append(ring.parse(g))
            except RingError as exc:
                raise SpecError(str(exc), *pos) from None
        ideals[name] = Ideal(ring, polys)
    for name, txt, pos in elem_stmts:
        if name in seen:
            raise SpecError("duplicate name %r" % name, *pos)
        seen.add(name)
        try:
            elements[name] = ring.parse(txt)
        except RingError as exc:
            raise SpecError(str(exc), *pos) from None
    return RingSpecDocument(char, ext_canonical, param, ring, ideals, elements)


# ---------------------------------------------------------------------------
# JSON-safe rendering helpers


def _S(n):
    """Potentially large integer -> decimal string."""
    return str(int(n))


def _R(x):
    """Exact rational -> {"num","den"} with decimal-string parts."""
    f = Fraction(x)
    return {"num": str(f.numerator), "den": str(f.denominator)}


def _RS(x):
    """Exact rational -> compact cell text for CSV / table output."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


def _verdict_payload(v):
    if v is None:
        return None
    return {
        "status": v.status,
        "e_bound": v.e_bound,
        "multiplier": None if v.multiplier is None else str(v.multiplier),
    }


def _hk_rows(rows):
    return [[e, _S(q), _S(l), _R(nrm)] for e, q, l, nrm in rows]


def _hk_cells(rows):
    return [[str(e), _S(q), _S(l), _RS(nrm)] for e, q, l, nrm in rows]


# ---------------------------------------------------------------------------
# command handlers — each returns {"payload","exit","warranty","header","cells"}


def _get_ideal(doc, name):
    if name not in doc.ideals:
        raise SpecError("no ideal named %r in the spec" % name)
    return doc.ideals[name]


def _get_poly(doc, token):
    if token in doc.elements:
        return doc.elements[token]
    try:
        return doc.ring.parse(token)
    except RingError as exc:
        raise SpecError(str(exc)) from None


def _order_of(args):
    return {"grevlex": GREVLEX, "lex": LEX}[args.order]


def _ring_payload(doc):
    out = {"char": doc.char, "vars": list(doc.ring.varnames),
           "relations": [str(r) for r in doc.ring.relations]}
    if doc.ext is not None:
        out["ext"] = doc.ext
    if doc.param is not None:
        out["param"] = doc.param
    return out


def cmd_hk(doc, args):
    I = _get_ideal(doc, args.ideal)
    d = doc.ring.dim
    p = doc.ring.field.p
    rows = []
    for e in range(1, args.emax + 1):
        q = p ** e
        ell = hk_function(I, e)
        rows.append((e, q, ell, Fraction(ell, q ** d)))
    payload = {"ring": _ring_payload(doc), "ideal": args.ideal, "dim": d,
               "rows": _hk_rows(rows)}
    return {"payload": payload, "exit": 0, "warranty": [],
            "header": ["e", "q", "colength", "normalized"],
            "cells": _hk_cells(rows)}


def cmd_ehk(doc, args):
    I = _get_ideal(doc, args.ideal)
    rep = ehk_estimate(I, args.emax, jobs=args.jobs)
    payload = {"ring": _ring_payload(doc), "ideal": args.ideal,
               "dim": rep.dim, "rows": _hk_rows(rep.rows),
               "estimate": _R(rep.estimate), "method": rep.method,
               "error_band": _R(rep.error_band),
               "cauchy": [_R(c) for c in rep.cauchy]}
    return {"payload": payload, "exit": 0, "warranty": [],
            "header": ["e", "q", "colength", "normalized"],
            "cells": _hk_cells(rep.rows)}


def cmd_fsig(doc, args):
    rep = fsig_function(doc.ring, args.emax, jobs=args.jobs)
    payload = {"ring": _ring_payload(doc), "dim": rep.dim,
               "rows": _hk_rows(rep.rows), "estimate": _R(rep.estimate),
               "error_band": _R(rep.error_band)}
    return {"payload": payload, "exit": 0, "warranty": [],
            "header": ["e", "q", "a_e", "normalized"],
            "cells": _hk_cells(rep.rows)}


def cmd_mult(doc, args):
    x = _get_poly(doc, args.element)
    res = hs_multiplicity(doc.ring, x, n_cap=args.nmax)
    payload = {"ring": _ring_payload(doc), "element": str(x),
               "multiplicity": res.multiplicity, "cm_defect": res.cm_defect,
               "lengths": [_S(l) for l in res.lengths]}
    cells = [[str(n), _S(l)] for n, l in enumerate(res.lengths, 1)]
    return {"payload": payload, "exit": 0, "warranty": [],
            "header": ["n", "length"], "cells": cells}


def cmd_frobpow(doc, args):
    I = _get_ideal(doc, args.ideal)
    J = frobenius_power(I, args.emax)
    q = doc.ring.field.p ** args.emax
    gens = [str(g) for g in J.gens]
    payload = {"ring": _ring_payload(doc), "ideal": args.ideal,
               "e": args.emax, "q": _S(q), "generators": gens}
    return {"payload": payload, "exit": 0, "warranty": [],
            "header": ["generator"], "cells": [[g] for g in gens]}


def cmd_colon(doc, args):
    I = _get_ideal(doc, args.ideal)
    f = _get_poly(doc, args.element)
    Q = groebner.ideal_colon(I, f)
    gens = [str(g) for g in groebner.groebner_basis(Q, _order_of(args))]
    payload = {"ring": _ring_payload(doc), "ideal": args.ideal,
               "element": str(f), "order": args.order, "generators": gens}
    return {"payload": payload, "exit": 0, "warranty": [],
            "header": ["generator"], "cells": [[g] for g in gens]}


def cmd_saturate(doc, args):
    I = _get_ideal(doc, args.ideal)
    J = _get_ideal(doc, args.jideal)
    S = groebner.saturate(I, J)
    gens = [str(g) for g in groebner.groebner_basis(S, _order_of(args))]
    payload = {"ring": _ring_payload(doc), "ideal": args.ideal,
               "by": args.jideal, "order": args.order, "generators": gens}
    return {"payload": payload, "exit": 0, "warranty": [],
            "header": ["generator"], "cells": [[g] for g in gens]}


def cmd_tc_member(doc, args):
    z = _get_poly(doc, args.element)
    I = _get_ideal(doc, args.ideal)
    if args.testel is not None:
        c = _get_poly(doc, args.testel)
    else:
        c = jacobian_candidate(doc.ring)
    v = tc_membership(z, I, c, args.emax)
    payload = {"ring": _ring_payload(doc), "element": str(z),
               "ideal": args.ideal, "candidate": str(c),
               "verdict": _verdict_payload(v)}
    code = 2 if v.status.startswith("non-member") else 0
    cells = [["status", v.status], ["e_bound", str(v.e_bound)],
             ["candidate", str(c)]]
    return {"payload": payload, "exit": code, "warranty": [WARRANTY],
            "header": ["key", "value"], "cells": cells}


def cmd_fclosure_member(doc, args):
    z = _get_poly(doc, args.element)
    I = _get_ideal(doc, args.ideal)
    v = frobenius_closure_membership(z, I, args.emax)
    payload = {"ring": _ring_payload(doc), "element": str(z),
               "ideal": args.ideal, "verdict": _verdict_payload(v)}
    code = 2 if v.status.startswith("non-member") else 0
    cells = [["status", v.status], ["e_bound", str(v.e_bound)]]
    return {"payload": payload, "exit": code, "warranty": [],
            "header": ["key", "value"], "cells": cells}


def cmd_descent(doc, args):
    P = _get_ideal(doc, args.ideal)
    x = _get_poly(doc, args.element)
    rep = descent_sequence(P, x, args.nmax, args.emax, jobs=args.jobs)
    p = doc.ring.field.p
    rows = [[n, e, _S(p ** e), _R(v)]
            for (n, e), v in sorted(rep.table.items())]
    payload = {"ring": _ring_payload(doc), "prime": args.ideal,
               "element": str(x), "dim": rep.dim, "rows": rows,
               "per_n": [[n, _R(v)] for n, v in sorted(rep.per_n_estimates.items())],
               "monotone_in_n": rep.monotone_in_n,
               "hs_factor": rep.hs_factor,
               "prediction": None if rep.prediction is None else _R(rep.prediction)}
    code = 0 if rep.monotone_in_n else 2
    cells = [[str(n), str(e), _S(p ** e), _RS(v)]
             for (n, e), v in sorted(rep.table.items())]
    return {"payload": payload, "exit": code, "warranty": [],
            "header": ["n", "e", "q", "normalized"], "cells": cells}


def cmd_equimult(doc, args):
    P = _get_ideal(doc, args.ideal)
    if args.testel is not None:
        c = _get_poly(doc, args.testel)
    else:
        try:
            c = jacobian_candidate(doc.ring)
        except FrobeniusError:
            c = None
    v = equimult_check(P, c=c, e_max=args.emax, tc_e_max=args.tc_emax)
    records = []
    for e, checked in v.records:
        records.append([e, [{"element": str(z),
                             "fclosure": _verdict_payload(fv),
                             "tc": _verdict_payload(tv)}
                            for z, fv, tv in checked]])
    residuals = None
    if v.residuals is not None:
        residuals = {"hs_factor": v.residuals.hs_factor,
                     "rows": [[e, _S(q), _S(lhs), _S(rhs), _S(res)]
                              for e, q, lhs, rhs, res in v.residuals.rows],
                     "all_zero": v.residuals.all_zero}
    payload = {"ring": _ring_payload(doc), "prime": args.ideal,
               "status": v.status,
               "witness": None if v.witness is None else
               {"e": v.witness[0], "element": str(v.witness[1])},
               "records": records, "residuals": residuals}
    code = 2 if v.status == "violates-necessary-condition" else 0
    cells = [["status", v.status]]
    if v.witness is not None:
        cells.append(["witness", "e=%d %s" % (v.witness[0], v.witness[1])])
    return {"payload": payload, "exit": code, "warranty": [v.warranty],
            "header": ["key", "value"], "cells": cells}


def cmd_rigidity(doc, args):
    P = _get_ideal(doc, args.ideal)
    rep = rigidity_check(P, args.emax)
    rows = [[e, _S(q), _S(lhs), _S(rhs), bool(ok)]
            for e, q, lhs, rhs, ok in rep.rows]
    payload = {"ring": _ring_payload(doc), "prime": args.ideal,
               "rows": rows, "all_pass": rep.all_pass}
    cells = [[str(e), _S(q), _S(lhs), _S(rhs), "yes" if ok else "no"]
             for e, q, lhs, rhs, ok in rep.rows]
    return {"payload": payload, "exit": 0 if rep.all_pass else 2,
            "warranty": [],
            "header": ["e", "q", "colength", "q^dim * fiber", "equal"],
            "cells": cells}


def cmd_lech(doc, args):
    I = _get_ideal(doc, args.ideal)
    J = _get_ideal(doc, args.jideal)
    rep = lech_check(I, J, args.emax)
    rows = [[e, _S(lhs), _S(rhs), bool(ok)] for e, lhs, rhs, ok in rep.rows]
    payload = {"ring": _ring_payload(doc), "ideal": args.ideal,
               "inside": args.jideal, "rows": rows, "ok": rep.ok}
    cells = [[str(e), _S(lhs), _S(rhs), "yes" if ok else "no"]
             for e, lhs, rhs, ok in rep.rows]
    return {"payload": payload, "exit": 0 if rep.ok else 2, "warranty": [],
            "header": ["e", "lhs", "rhs", "ok"], "cells": cells}


def cmd_assoc(doc, args):
    factors = []
    for token in args.factors:
        base, _, mult = token.rpartition(":")
        if base and mult.isdigit():
            text, a = base, int(mult)
        else:
            text, a = token, 1
        if text in doc.elements:
            text = str(doc.elements[text])
        factors.append((text, a))
    rep = assoc_check(doc.ring, factors, args.emax, jobs=args.jobs)
    rows = [[e, _S(q), _R(lhs), _R(rhs), _R(diff)]
            for e, q, lhs, rhs, diff in rep.rows]
    payload = {"ring": _ring_payload(doc),
               "factors": [[str(f), a] for f, a in rep.factors],
               "rows": rows, "lhs_estimate": _R(rep.lhs_estimate),
               "rhs_estimate": _R(rep.rhs_estimate)}
    cells = [[str(e), _S(q), _RS(lhs), _RS(rhs), _RS(diff)]
             for e, q, lhs, rhs, diff in rep.rows]
    return {"payload": payload, "exit": 0, "warranty": [],
            "header": ["e", "q", "lhs", "rhs", "gap"], "cells": cells}


def cmd_wy(doc, args):
    I = _get_ideal(doc, args.ideal)
    rep = wy_inequality_check(I, args.emax)
    rows = [[e, _S(q), _S(lhs), _S(rhs), bool(ok)]
            for e, q, lhs, rhs, ok in rep.rows]
    pd, mp, dok = rep.derived
    payload = {"ring": _ring_payload(doc), "ideal": args.ideal, "rows": rows,
               "derived": [_S(pd), _S(mp), bool(dok)],
               "all_pass": rep.all_pass}
    cells = [[str(e), _S(q), _S(lhs), _S(rhs), "yes" if ok else "no"]
             for e, q, lhs, rhs, ok in rep.rows]
    return {"payload": payload, "exit": 0 if rep.all_pass else 2,
            "warranty": [],
            "header": ["e", "q", "lhs", "rhs", "ok"], "cells": cells}


_MONSKY_MODES = {
    "0": ("zero", Fraction(1, 10)),
    "1": ("algebraic", Fraction(1, 10)),
    "t": ("transcendental", Fraction(3, 20)),
}


def cmd_repro_monsky(doc, args):
    mode, tol = _MONSKY_MODES[args.alpha]
    rep = monsky_repro(mode, args.emax, jobs=args.jobs)
    ok = rep.within <= tol
    payload = {"alpha": args.alpha, "mode": mode,
               "rows": _hk_rows(rep.report.rows),
               "estimate": _R(rep.report.estimate), "target": _R(rep.target),
               "distance": _R(rep.within), "tolerance": _R(tol), "ok": ok}
    return {"payload": payload, "exit": 0 if ok else 2, "warranty": [],
            "header": ["e", "q", "colength", "normalized"],
            "cells": _hk_cells(rep.report.rows)}


def cmd_repro_bm(doc, args):
    K = ExtensionField(2, (1, 1, 1))
    zero = FieldElement(K, K.from_int(0))
    one = FieldElement(K, K.from_int(1))
    gen = FieldElement(K, K._fix((0, 1)))
    alphas = [zero, one, gen, gen + one]
    rep = bm_gap_table(alphas, e_min=2, e_max=args.emax, field=K,
                       jobs=args.jobs)
    threshold = Fraction(1, 50)
    ok = rep.min_gap >= threshold
    payload = {
        "fiber_rows": _hk_rows(rep.fiber_rows),
        "alphas": {key: [[e, _S(q), _S(l), _R(nrm), _R(gap)]
                         for e, q, l, nrm, gap in rows]
                   for key, rows in rep.alpha_rows.items()},
        "min_gap": _R(rep.min_gap), "threshold": _R(threshold), "ok": ok,
    }
    cells = []
    for key in sorted(rep.alpha_rows):
        for e, q, l, nrm, gap in rep.alpha_rows[key]:
            cells.append([key, str(e), _S(q), _S(l), _RS(nrm), _RS(gap)])
    return {"payload": payload, "exit": 0 if ok else 2, "warranty": [],
            "header": ["maximal ideal", "e", "q", "colength", "normalized",
                       "gap"],
            "cells": cells}


# name -> (handler, takes a spec argument)
_COMMANDS = {
    "hk": (cmd_hk, True),
    "ehk": (cmd_ehk, True),
    "fsig": (cmd_fsig, True),
    "mult": (cmd_mult, True),
    "frobpow": (cmd_frobpow, True),
    "colon": (cmd_colon, True),
    "saturate": (cmd_saturate, True),
    "tc-member": (cmd_tc_member, True),
    "fclosure-member": (cmd_fclosure_member, True),
    "descent": (cmd_descent, True),
    "equimult": (cmd_equimult, True),
    "rigidity": (cmd_rigidity, True),
    "lech": (cmd_lech, True),
    "assoc": (cmd_assoc, True),
    "wy": (cmd_wy, True),
    "repro-monsky": (cmd_repro_monsky, False),
    "repro-bm": (cmd_repro_bm, False),
}


# ---------------------------------------------------------------------------
# envelope, emission, cache


def _canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _digest(spec_text, command, params):
    blob = _canonical_json({"command": command, "parameters": params,
                            "spec": spec_text, "version": VERSION})
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _emit(envelope, result, fmt, out):
    if fmt == "json":
        out.write(json.dumps(envelope, sort_keys=True, indent=2))
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(result["header"])
        w.writerows(result["cells"])
    else:
        widths = [len(h) for h in result["header"]]
        for row in result["cells"]:
            for i, cell in enumerate(row):
                widths[i] = max(widths[i], len(cell))
        def fmt_row(row):
            return "  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
        out.write(fmt_row(result["header"]) + "\n")
        out.write(fmt_row(["-" * w for w in widths]) + "\n")
        for row in result["cells"]:
            out.write(fmt_row(row) + "\n")


def _cache_path(cdir, digest):
    return os.path.join(cdir, digest + ".json")


def _cache_load(cdir, digest):
    try:
        with open(_cache_path(cdir, digest), "r", encoding="utf-8") as fh:
            blob = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    if blob.get("version") != VERSION:
        return None
    return blob


def _cache_store(cdir, digest, blob):
    os.makedirs(cdir, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=cdir, prefix=".frobinv-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(blob, fh, sort_keys=True)
        os.replace(tmp, _cache_path(cdir, digest))
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_spec_text(source):
    if source.startswith("corpus:"):
        try:
            return corpus.corpus_text(source[len("corpus:"):])
        except KeyError as exc:
            raise SpecError(str(exc.args[0])) from None
    if source == "-":
        return sys.stdin.read()
    with open(source, "r", encoding="utf-8") as fh:
        return fh.read()


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _build_parser():
    top = argparse.ArgumentParser(
        prog="frobinv",
        description="Exact Frobenius invariants of positive-characteristic "
                    "rings: Hilbert-Kunz functions, F-signature, tight-"
                    "closure semidecisions, and localization diagnostics.")
    top.add_argument("--version", action="version",
                     version="frobinv %s" % VERSION)
    sub = top.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_text, spec=True, positionals=()):
        p = sub.add_parser(name, help=help_text)
        if spec:
            p.add_argument("spec", help="ring script: a file path, '-' for "
                           "stdin, or corpus:<name>")
        for argname, kw in positionals:
            p.add_argument(argname, **kw)
        p.add_argument("--emax", type=int, default=kwdefaults[name].get("emax", 3),
                       help="largest Frobenius exponent e (q = p^e)")
        p.add_argument("--nmax", type=int, default=kwdefaults[name].get("nmax", 3),
                       help="largest multiplier n where a command sweeps one")
        p.add_argument("--order", choices=("grevlex", "lex"),
                       default="grevlex", help="term order for reported bases")
        p.add_argument("--testel", default=None, metavar="POLY",
                       help="test-element candidate (named elem or polynomial)")
        p.add_argument("--format", choices=("json", "csv", "table"),
                       default="json", help="report format")
        p.add_argument("--cache", default=None, metavar="DIR",
                       help="result cache directory (default: $%s)" % CACHE_ENV)
        p.add_argument("--jobs", type=int, default=1,
                       help="worker processes for independent cells")
        return p

    kwdefaults = {
        "hk": {"emax": 3}, "ehk": {"emax": 4}, "fsig": {"emax": 4},
        "mult": {"nmax": 30}, "frobpow": {"emax": 1}, "colon": {},
        "saturate": {}, "tc-member": {"emax": 2}, "fclosure-member": {"emax": 2},
        "descent": {"emax": 3, "nmax": 3}, "equimult": {"emax": 2},
        "rigidity": {"emax": 3}, "lech": {"emax": 3}, "assoc": {"emax": 3},
        "wy": {"emax": 3}, "repro-monsky": {"emax": 5}, "repro-bm": {"emax": 3},
    }

    ideal_arg = ("ideal", {"nargs": "?", "default": "m",
                           "help": "ideal name (default m)"})
    prime_arg = ("ideal", {"nargs": "?", "default": "p",
                           "help": "prime ideal name (default p)"})
    elem_arg = ("element", {"help": "named element or polynomial text"})

    add("hk", "Hilbert-Kunz function of an ideal for e = 1..emax",
        positionals=[ideal_arg])
    add("ehk", "Hilbert-Kunz multiplicity estimate with error band",
        positionals=[ideal_arg])
    add("fsig", "F-signature function a_e and normalized estimate")
    add("mult", "Hilbert-Samuel multiplicity of a one-dimensional ring "
        "along a parameter", positionals=[elem_arg])
    add("frobpow", "generators of the bracket power I^[p^e]",
        positionals=[ideal_arg])
    add("colon", "reduced basis of the colon ideal (I : f)",
        positionals=[("ideal", {"help": "ideal name"}), elem_arg])
    add("saturate", "reduced basis of the saturation (I : J^infinity)",
        positionals=[("ideal", {"help": "ideal name"}),
                     ("jideal", {"nargs": "?", "default": "m",
                                 "help": "saturating ideal name (default m)"})])
    add("tc-member", "tight-closure membership semidecision for z in I*",
        positionals=[elem_arg, ("ideal", {"help": "ideal name"})])
    add("fclosure-member", "Frobenius-closure membership semidecision",
        positionals=[elem_arg, ("ideal", {"help": "ideal name"})])
    add("descent", "two-parameter descent table for l(R/(P^[q], x^{nq}))",
        positionals=[prime_arg, elem_arg])
    add("equimult", "equimultiplicity necessary-condition check at a prime",
        positionals=[prime_arg])
    add("rigidity", "colength rigidity l(R/m^[q]) = q^dim * fiber colength",
        positionals=[prime_arg])
    add("lech", "row-wise Lech-type bound between nested ideals",
        positionals=[("ideal", {"help": "smaller (contained) ideal name"}),
                     ("jideal", {"help": "larger ideal name"})])
    add("assoc", "additivity of HK rows over the factors of a hypersurface",
        positionals=[("factors", {"nargs": "+", "metavar": "FACTOR",
                                  "help": "factor (elem name or polynomial), "
                                  "optionally with ':mult'"})])
    add("wy", "iterated-power inequality rows for an ideal inside m^[p]",
        positionals=[("ideal", {"help": "ideal name"})])
    add("repro-monsky", "reproduce a quartic-family multiplicity estimate",
        spec=False)
    add("repro-bm", "reproduce the fiberwise multiplicity gap table",
        spec=False)

    monsky = sub.choices["repro-monsky"]
    monsky.add_argument("--alpha", choices=("0", "1", "t"), required=True,
                        help="family member: 0, 1, or the parameter t")

    # equimult forwards a separate stage bound to the tight-closure probe
    sub.choices["equimult"].add_argument(
        "--tc-emax", type=int, default=2, dest="tc_emax",
        help="stage bound for the tight-closure probes")
    return top


def _params_for_digest(args):
    skip = {"command", "spec", "format", "cache", "jobs"}
    out = {}
    for key, val in sorted(vars(args).items()):
        if key in skip:
            continue
        out[key] = val
    return out


def _run(args, out):
    handler, takes_spec = _COMMANDS[args.command]
    spec_text = ""
    doc = None
    if takes_spec:
        spec_text = _load_spec_text(args.spec)
        doc = parse_spec(spec_text)
    params = _params_for_digest(args)
    digest = _digest(spec_text, args.command, params)

    cdir = args.cache or os.environ.get(CACHE_ENV)
    cached = _cache_load(cdir, digest) if cdir else None

    start = time.perf_counter()
    if cached is not None:
        result = {"payload": cached["payload"], "exit": cached["exit"],
                  "warranty": cached["warranty"],
                  "header": cached["header"], "cells": cached["cells"]}
    else:
        result = handler(doc, args)
        if cdir:
            _cache_store(cdir, digest, {
                "version": VERSION, "payload": result["payload"],
                "exit": result["exit"], "warranty": result["warranty"],
                "header": result["header"], "cells": result["cells"]})
    elapsed = time.perf_counter() - start

    envelope = {
        "version": VERSION,
        "command": args.command,
        "parameters": params,
        "digest": digest,
        "payload": result["payload"],
        "warranty": result["warranty"],
        "timing": {"seconds": round(elapsed, 6)},
    }
    _emit(envelope, result, args.format, out)
    return result["exit"]


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args, sys.stdout)
    except SpecError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except _DOMAIN_ERRORS as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
