"""Line-oriented text serialization of FI-modules and FI-complexes.

The format is human-diffable and canonical: fixed field order, reduced
fractions ("a/b", integers bare), matrices as one whitespace-separated
row per line.  parse(serialize(x)) reproduces x exactly, and identical
objects serialize to identical bytes.  Lines starting with '#' are
comments and survive nowhere (they are for generator notices).
"""

from __future__ import annotations

from fractions import Fraction

from .complexes import FIComplex, validate_complex
from .fimodule import FIModule, FIMorphism, validate
from .linalg import Matrix, QQ, RINGS, ZZ


class ParseError(ValueError):
    """Malformed input text; carries a 1-based line locus."""

    def __init__(self, line_no, message):
        super().__init__("line %d: %s" % (line_no, message))
        self.line_no = line_no


class ValidationError(ValueError):
    """Input parsed but the object violates its relations."""

    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = tuple(violations)


def _fmt_entry(v):
    return str(v)


def _matrix_lines(M):
    if M.ncols == 0:
        return []  # no entries: rows are implied by the dims header
    out = []
    for i in range(M.nrows):
        row = M.rows[i]
        out.append(" ".join(_fmt_entry(row.get(j, 0)) for j in range(M.ncols)))
    return out


def serialize_module(V: FIModule) -> str:
    lines = ["fimodule"]
    if V.name:
        lines.append("name %s" % V.name)
    lines.append("ring %s" % V.ring)
    lines.append("truncation %d" % V.truncation)
    lines.append("dims %s" % " ".join(str(d) for d in V.dims))
    for n in range(V.truncation):
        lines.append("iota %d" % n)
        lines.extend(_matrix_lines(V.iota[n]))
    for n in range(V.truncation + 1):
        for i in range(1, n):
            lines.append("trans %d %d" % (n, i))
            lines.extend(_matrix_lines(V.transposition(n, i)))
    lines.append("end")
    return "\n".join(lines) + "\n"


def serialize_complex(W: FIComplex) -> str:
    lines = ["ficomplex",
             "ring %s" % W.ring,
             "truncation %d" % W.truncation,
             "qmin %d" % W.q_min,
             "modules %d" % len(W.modules)]
    for t, V in enumerate(W.modules):
        lines.append("module %d" % (W.q_min + t))
        body = serialize_module(V).rstrip("\n").split("\n")
        lines.extend(body[1:-1])  # strip the 'fimodule' and 'end' markers
        lines.append("endmodule")
    for t, d in enumerate(W.diffs):
        q = W.q_min + t + 1
        for n in range(W.truncation + 1):
            lines.append("diff %d level %d" % (q, n))
            lines.extend(_matrix_lines(d.levels[n]))
    lines.append("end")
    return "\n".join(lines) + "\n"


def serialize(obj) -> str:
    if isinstance(obj, FIModule):
        return serialize_module(obj)
    if isinstance(obj, FIComplex):
        return serialize_complex(obj)
    raise TypeError("cannot serialize %r" % type(obj).__name__)


# ---------------------------------------------------------------------------
# parsing


class _Cursor:
    def __init__(self, text):
        self.raw = text.split("\n")
        self.pos = 0

    def peek(self):
        while self.pos < len(self.raw):
            s = self.raw[self.pos].strip()
            if s and not s.startswith("#"):
                return s
            self.pos += 1
        return None

    def next(self):
        s = self.peek()
        if s is None:
            raise ParseError(len(self.raw), "unexpected end of input")
        self.pos += 1
        return s

    @property
    def line_no(self):
        return self.pos + 1


def _parse_entry(tok, ring, cur):
    try:
        if ring == ZZ:
            return int(tok)
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(cur.line_no - 1, "bad %s entry %r" % (ring, tok))


def _read_matrix(cur, ring, nrows, ncols, what):
    if ncols == 0:
        return Matrix.zeros(ring, nrows, 0)
    rows = []
    for _ in range(nrows):
        toks = cur.next().split()
        if len(toks) != ncols:
            raise ParseError(cur.line_no - 1,
                             "%s: expected %d entries, got %d" % (what, ncols, len(toks)))
        rows.append([_parse_entry(t, ring, cur) for t in toks])
    return Matrix.from_rows(ring, rows, ncols=ncols)


def _expect(cur, prefix):
    line = cur.next()
    if line != prefix and not line.startswith(prefix + " "):
        raise ParseError(cur.line_no - 1, "expected %r, got %r" % (prefix, line))
    return line


def _parse_module_body(cur, terminator):
    """Fields of one module, from 'name'/'ring' until the terminator line."""
    name = ""
    line = cur.next()
    if line.startswith("name "):
        name = line[5:].strip()
        line = cur.next()
    if not line.startswith("ring "):
        raise ParseError(cur.line_no - 1, "expected 'ring', got %r" % line)
    ring = line.split()[1]
    if ring not in RINGS:
        raise ParseError(cur.line_no - 1, "unknown ring %r" % ring)
    line = cur.next()
    if not line.startswith("truncation "):
        raise ParseError(cur.line_no - 1, "expected 'truncation', got %r" % line)
    try:
        N = int(line.split()[1])
    except ValueError:
        raise ParseError(cur.line_no - 1, "bad truncation")
    if N < 0:
        raise ParseError(cur.line_no - 1, "negative truncation")
    line = cur.next()
    if not line.startswith("dims"):
        raise ParseError(cur.line_no - 1, "expected 'dims', got %r" % line)
    try:
        dims = tuple(int(t) for t in line.split()[1:])
    except ValueError:
        raise ParseError(cur.line_no - 1, "bad dims entry")
    if len(dims) != N + 1:
        raise ParseError(cur.line_no - 1,
                         "dims has %d entries, truncation %d needs %d"
                         % (len(dims), N, N + 1))
    iotas = []
    for n in range(N):
        head = cur.next()
        if head != "iota %d" % n:
            raise ParseError(cur.line_no - 1, "expected 'iota %d', got %r" % (n, head))
        iotas.append(_read_matrix(cur, ring, dims[n + 1], dims[n], "iota %d" % n))
    trans = []
    for n in range(N + 1):
        mats = []
        for i in range(1, n):
            head = cur.next()
            if head != "trans %d %d" % (n, i):
                raise ParseError(cur.line_no - 1,
                                 "expected 'trans %d %d', got %r" % (n, i, head))
            mats.append(_read_matrix(cur, ring, dims[n], dims[n], "trans %d %d" % (n, i)))
        trans.append(tuple(mats))
    tail = cur.next()
    if tail != terminator:
        raise ParseError(cur.line_no - 1, "expected %r, got %r" % (terminator, tail))
    return FIModule(ring, N, dims, tuple(iotas), tuple(trans), name=name)


def parse_module(text) -> FIModule:
    cur = _Cursor(text)
    _expect(cur, "fimodule")
    V = _parse_module_body(cur, "end")
    bad = validate(V)
    if bad:
        raise ValidationError(bad)
    return V


def parse_complex(text) -> FIComplex:
    cur = _Cursor(text)
    _expect(cur, "ficomplex")
    ring = _expect(cur, "ring").split()[1]
    if ring not in RINGS:
        raise ParseError(cur.line_no - 1, "unknown ring %r" % ring)
    try:
        N = int(_expect(cur, "truncation").split()[1])
        q_min = int(_expect(cur, "qmin").split()[1])
        count = int(_expect(cur, "modules").split()[1])
    except ValueError:
        raise ParseError(cur.line_no - 1, "bad integer field")
    if count < 1:
        raise ParseError(cur.line_no - 1, "need at least one module")
    modules = []
    for t in range(count):
        head = cur.next()
        if head != "module %d" % (q_min + t):
            raise ParseError(cur.line_no - 1,
                             "expected 'module %d', got %r" % (q_min + t, head))
        V = _parse_module_body(cur, "endmodule")
        if V.ring != ring or V.truncation != N:
            raise ParseError(cur.line_no - 1,
                             "module %d does not match complex header" % (q_min + t))
        modules.append(V)
    diffs = []
    for t in range(count - 1):
        q = q_min + t + 1
        levels = []
        for n in range(N + 1):
            head = cur.next()
            if head != "diff %d level %d" % (q, n):
                raise ParseError(cur.line_no - 1,
                                 "expected 'diff %d level %d', got %r" % (q, n, head))
            levels.append(_read_matrix(cur, ring, modules[t].dims[n],
                                       modules[t + 1].dims[n],
                                       "diff %d level %d" % (q, n)))
        diffs.append(FIMorphism(modules[t + 1], modules[t], tuple(levels)))
    tail = cur.next()
    if tail != "end":
        raise ParseError(cur.line_no - 1, "expected 'end', got %r" % tail)
    try:
        W = FIComplex(ring, N, q_min, tuple(modules), tuple(diffs))
    except ValueError as e:
        raise ValidationError([str(e)])
    bad = validate_complex(W)
    if bad:
        raise ValidationError(bad)
    return W


def parse(source) -> object:
    """Parse a module or complex from a path, file object, or text."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = str(source)
        if "\n" not in text:
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read()
    cur = _Cursor(text)
    head = cur.peek()
    if head == "fimodule":
        return parse_module(text)
    if head == "ficomplex":
        return parse_complex(text)
    raise ParseError(cur.line_no, "expected 'fimodule' or 'ficomplex' header")
