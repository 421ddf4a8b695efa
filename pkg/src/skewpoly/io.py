"""Text formats for towers, elements and skew polynomials.

    field   p=<prime>;f=<c_0>,<c_1>,...,<c_r>     (constant first, c_r = 1)
    element [<k_0>,...,<k_{r-1}>]                  (power-basis coordinates)
    poly    [[elem_0],[elem_1],...]                (constant first)

Elements shorter than r are padded with zeros. Syntax errors carry the line
and column of the offending character.
"""

from __future__ import annotations

import json
import re

import numpy as np


class ParseError(ValueError):
    def __init__(self, msg, line=1, col=1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


_FIELD_RE = re.compile(r"\s*p\s*=\s*(\d+)\s*;\s*f\s*=\s*(\d+(?:\s*,\s*\d+)*)\s*$")


def _position(text, index):
    line = text.count("\n", 0, index) + 1
    col = index - (text.rfind("\n", 0, index) + 1) + 1
    return line, col


def parse_field(text):
    """Return (p, f) from ``p=<prime>;f=c0,...,cr``."""
    m = _FIELD_RE.match(text)
    if m is None:
        # locate the first character where the expected shape breaks
        prefix = re.match(r"\s*(p(\s*=(\s*\d+(\s*;(\s*f(\s*=\s*(\d+(\s*,\s*\d+)*)?)?)?)?)?)?)?", text)
        raise ParseError("expected 'p=<prime>;f=<c_0>,...,<c_r>'", *_position(text, prefix.end()))
    p = int(m.group(1))
    f = []
    for tok in re.finditer(r"\d+", text[m.start(2) :]):
        c = int(tok.group())
        at = _position(text, m.start(2) + tok.start())
        if c >= p:
            raise ParseError(f"coefficient {c} is not in [0, {p})", *at)
        f.append(c)
    if f[-1] != 1:
        raise ParseError("modulus must be monic (c_r = 1)", *at)
    return p, f


def format_field(ring):
    return ring.describe()


def _load(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _locate(text, path):
    """(line, column) of the JSON value reached by the index path."""
    depth, counts, target = 0, [0], list(path)
    for i, ch in enumerate(text):
        if ch.isspace():
            continue
        if depth == len(target) and counts[1:] == target and ch not in ",]":
            return _position(text, i)
        if ch == "[":
            depth += 1
            counts.append(0)
        elif ch == "]":
            depth -= 1
            counts.pop()
        elif ch == ",":
            counts[-1] += 1
    return _position(text, len(text))


def _element(value, ring, where, text, path):
    def fail(msg, sub=()):
        raise ParseError(f"{where}: {msg}", *_locate(text, path + list(sub)))

    if not isinstance(value, list):
        fail("an element is a list of integers")
    for j, v in enumerate(value):
        if not isinstance(v, int) or isinstance(v, bool):
            fail("coordinates must be integers", [j])
        if not 0 <= v < ring.p:
            fail(f"coordinate {v} is not in [0, {ring.p})", [j])
    if len(value) > ring.r:
        fail(f"{len(value)} coordinates but the field has degree {ring.r}", [ring.r])
    return ring.elem(value + [0] * (ring.r - len(value)))


def parse_element(text, ring):
    return _element(_load(text), ring, "element", text, [])


def format_element(a, ring):
    return ring.format(a)


def parse_poly(text, ring):
    from .skew import SkewPoly

    value = _load(text)
    if not isinstance(value, list):
        raise ParseError("a polynomial is a list of elements", *_locate(text, []))
    coeffs = [_element(v, ring, f"coefficient {i}", text, [i]) for i, v in enumerate(value)]
    if not coeffs:
        return SkewPoly.zero(ring)
    return SkewPoly(ring, np.stack(coeffs))


def format_poly(a):
    return a.ring_format()


def parse_elements(text, ring):
    """A list of elements (a codeword or received word)."""
    value = _load(text)
    if not isinstance(value, list):
        raise ParseError("expected a list of elements", *_locate(text, []))
    return np.stack([_element(v, ring, f"entry {i}", text, [i]) for i, v in enumerate(value)]) if value else ring.zeros((0,))


def format_elements(values, ring):
    return "[" + ",".join(ring.format(v) for v in values) + "]"
