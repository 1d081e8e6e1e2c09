"""The line-oriented algebra definition format.

    field Q            # or: field F 5
    flavor tensor      # tensor | exterior
    space
      basis 1 even
      basis x even
    map m 2
      m(1,1) = 1
      m(1,x) = x
      m(x,1) = x
    inner_product
      <1,x> = 1
    deformation lam 2 odd_parameter
      lam(x,x) = 1

'#' starts a comment.  Scalars are integers, fractions a/b, or F_p
residues.  Values are linear combinations like ``2*e + 1/2*f - h``
(the ``*`` is optional).  Diagnostics carry a code and the line number.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .cochain import Cochain, InnerProduct
from .fields import QQ, PrimeField
from .graded import EXTERIOR, SYMMETRIC, TENSOR, GradedSpace

E_DIRECTIVE = "E_DIRECTIVE"     # unknown or misplaced directive
E_FIELD = "E_FIELD"             # bad field declaration (non-prime p, ...)
E_FLAVOR = "E_FLAVOR"           # unknown flavor, or user-authored symmetric
E_SPACE = "E_SPACE"             # bad space block
E_NAME = "E_NAME"               # undeclared basis name
E_SCALAR = "E_SCALAR"           # unparsable coefficient
E_ARITY = "E_ARITY"             # tuple arity mismatch or bad arity
E_DUPLICATE = "E_DUPLICATE"     # duplicate assignment or block
E_PARITY = "E_PARITY"           # parity-inconsistent assignments
E_STRUCTURE = "E_STRUCTURE"     # missing field/flavor/space, bad inner product


class ParseError(ValueError):
    def __init__(self, code, line, message):
        self.code = code
        self.line = line
        super().__init__("line %d: %s [%s]" % (line, message, code))


@dataclass
class AlgebraFile:
    space: GradedSpace
    flavor: str
    parts: dict = dc_field(default_factory=dict)           # arity -> Cochain
    part_names: dict = dc_field(default_factory=dict)      # arity -> name
    inner_product: object = None
    deformations: dict = dc_field(default_factory=dict)    # name -> (parity, {arity: Cochain})

    def __eq__(self, other):
        if not isinstance(other, AlgebraFile):
            return NotImplemented
        ips = self.inner_product.matrix if self.inner_product else None
        ipo = other.inner_product.matrix if other.inner_product else None
        return (self.space == other.space and self.flavor == other.flavor
                and self.parts == other.parts
                and self.part_names == other.part_names
                and ips == ipo
                and self.deformations == other.deformations)


_assign_re = re.compile(r"^([A-Za-z_][\w']*)\(([^)]*)\)\s*=\s*(.+)$")
_pair_re = re.compile(r"^<\s*([^,<>]+?)\s*,\s*([^,<>]+?)\s*>\s*=\s*(.+)$")


def _strip(line):
    if "#" in line:
        line = line[:line.index("#")]
    return line.strip()


class _Parser:
    def __init__(self, text):
        self.lines = text.splitlines()
        self.field = None
        self.flavor = None
        self.basis = []
        self.space = None
        self.maps = {}          # arity -> (name, {tuple: vec}, lineno)
        self.defos = {}         # name -> [parity, {arity: entries}]
        self.ip_entries = None  # {(i, j): scalar}
        self.block = None

    def err(self, code, lineno, message):
        raise ParseError(code, lineno, message)

    def close_space(self, lineno):
        if not self.basis:
            self.err(E_SPACE, lineno, "space block declares no basis")
        try:
            self.space = GradedSpace(tuple(n for n, _ in self.basis),
                                     tuple(p for _, p in self.basis),
                                     self.field)
        except ValueError as exc:
            self.err(E_SPACE, lineno, str(exc))

    def end_block(self, lineno):
        if self.block is None:
            return
        kind = self.block[0]
        if kind == "space":
            self.close_space(lineno)
        self.block = None

    def need_space(self, lineno):
        if self.space is None:
            self.err(E_STRUCTURE, lineno,
                     "field, flavor and space must precede this block")

    def run(self):
        for lineno, raw in enumerate(self.lines, start=1):
            line = _strip(raw)
            if not line:
                continue
            self.dispatch(line, lineno)
        self.end_block(len(self.lines))
        if self.field is None:
            self.err(E_STRUCTURE, 0, "missing field line")
        if self.flavor is None:
            self.err(E_STRUCTURE, 0, "missing flavor line")
        if self.space is None:
            self.err(E_STRUCTURE, 0, "missing space block")
        return self.build()

    def dispatch(self, line, lineno):
        tokens = line.split()
        head = tokens[0]
        if head == "field":
            self.end_block(lineno)
            if self.field is not None:
                self.err(E_DUPLICATE, lineno, "second field line")
            if tokens[1:] == ["Q"]:
                self.field = QQ
            elif len(tokens) == 3 and tokens[1] == "F":
                try:
                    self.field = PrimeField(int(tokens[2]))
                except ValueError as exc:
                    self.err(E_FIELD, lineno, str(exc))
            else:
                self.err(E_FIELD, lineno, "expected 'field Q' or 'field F p'")
        elif head == "flavor":
            self.end_block(lineno)
            if self.flavor is not None:
                self.err(E_DUPLICATE, lineno, "second flavor line")
            if len(tokens) != 2 or tokens[1] not in (TENSOR, EXTERIOR, SYMMETRIC):
                self.err(E_FLAVOR, lineno,
                         "expected 'flavor tensor' or 'flavor exterior'")
            if tokens[1] == SYMMETRIC:
                self.err(E_FLAVOR, lineno,
                         "the symmetric flavor is the internal reversed side; "
                         "author tensor or exterior structures")
            self.flavor = tokens[1]
        elif head == "space":
            self.end_block(lineno)
            if self.space is not None:
                self.err(E_DUPLICATE, lineno, "second space block")
            if self.field is None:
                self.err(E_STRUCTURE, lineno, "field line must precede the space")
            self.block = ("space",)
        elif head == "basis":
            if self.block is None or self.block[0] != "space":
                self.err(E_DIRECTIVE, lineno, "basis line outside a space block")
            if len(tokens) != 3 or tokens[2] not in ("even", "odd"):
                self.err(E_SPACE, lineno, "expected 'basis <name> even|odd'")
            if any(n == tokens[1] for n, _ in self.basis):
                self.err(E_DUPLICATE, lineno,
                         "duplicate basis name %r" % tokens[1])
            self.basis.append((tokens[1], 0 if tokens[2] == "even" else 1))
        elif head == "map":
            self.end_block(lineno)
            self.need_space(lineno)
            if len(tokens) != 3:
                self.err(E_DIRECTIVE, lineno, "expected 'map <name> <arity>'")
            arity = self.parse_arity(tokens[2], lineno)
            if arity in self.maps:
                self.err(E_DUPLICATE, lineno,
                         "second map block of arity %d" % arity)
            self.maps[arity] = (tokens[1], {}, lineno)
            self.block = ("map", arity)
        elif head == "inner_product":
            self.end_block(lineno)
            self.need_space(lineno)
            if self.ip_entries is not None:
                self.err(E_DUPLICATE, lineno, "second inner_product block")
            self.ip_entries = {}
            self.block = ("ip",)
        elif head == "deformation":
            self.end_block(lineno)
            self.need_space(lineno)
            if len(tokens) != 4 or tokens[3] not in ("odd_parameter",
                                                     "even_parameter"):
                self.err(E_DIRECTIVE, lineno,
                         "expected 'deformation <name> <arity> "
                         "odd_parameter|even_parameter'")
            arity = self.parse_arity(tokens[2], lineno)
            parity = 1 if tokens[3] == "odd_parameter" else 0
            slot = self.defos.setdefault(tokens[1], [parity, {}])
            if slot[0] != parity:
                self.err(E_PARITY, lineno,
                         "deformation %r declared with both parameter parities"
                         % tokens[1])
            if arity in slot[1]:
                self.err(E_DUPLICATE, lineno,
                         "second block for deformation %r arity %d"
                         % (tokens[1], arity))
            slot[1][arity] = {}
            self.block = ("deformation", tokens[1], arity)
        elif self.block is not None and self.block[0] == "ip":
            self.parse_ip_line(line, lineno)
        elif self.block is not None and self.block[0] in ("map", "deformation"):
            self.parse_assignment(line, lineno)
        else:
            self.err(E_DIRECTIVE, lineno, "unknown directive %r" % head)

    def parse_arity(self, text, lineno):
        try:
            arity = int(text)
        except ValueError:
            self.err(E_ARITY, lineno, "bad arity %r" % text)
        if arity < 1:
            self.err(E_ARITY, lineno, "arity must be >= 1")
        return arity

    def parse_ip_line(self, line, lineno):
        m = _pair_re.match(line)
        if not m:
            self.err(E_DIRECTIVE, lineno, "expected '<a,b> = scalar'")
        try:
            i = self.space.index(m.group(1))
            j = self.space.index(m.group(2))
        except KeyError:
            self.err(E_NAME, lineno, "undeclared basis name in inner product")
        if (i, j) in self.ip_entries:
            self.err(E_DUPLICATE, lineno, "duplicate inner product entry")
        try:
            self.ip_entries[(i, j)] = self.space.field.parse(m.group(3).strip())
        except ValueError as exc:
            self.err(E_SCALAR, lineno, str(exc))

    def parse_assignment(self, line, lineno):
        m = _assign_re.match(line)
        if not m:
            self.err(E_DIRECTIVE, lineno, "unrecognized line %r" % line)
        name, args_s, value_s = m.groups()
        if self.block[0] == "map":
            arity = self.block[1]
            block_name, entries, _ = self.maps[arity]
        else:
            _, block_name, arity = self.block
            entries = self.defos[block_name][1][arity]
        if name != block_name:
            self.err(E_DIRECTIVE, lineno,
                     "assignment to %r inside the block of %r"
                     % (name, block_name))
        args = [a.strip() for a in args_s.split(",")] if args_s.strip() else []
        if len(args) != arity:
            self.err(E_ARITY, lineno,
                     "%d arguments for a map of arity %d" % (len(args), arity))
        try:
            t = tuple(self.space.index(a) for a in args)
        except KeyError as exc:
            self.err(E_NAME, lineno, "undeclared basis name %s" % exc.args[0])
        if t in entries:
            self.err(E_DUPLICATE, lineno,
                     "duplicate assignment for (%s)" % args_s)
        vec = self.parse_value(value_s, lineno)
        if vec:
            entries[t] = vec

    def parse_value(self, text, lineno):
        text = text.strip()
        if text == "0":
            return {}
        vec = {}
        for sign, term in self.split_terms(text, lineno):
            if "*" in term:
                coeff_s, _, name = term.partition("*")
                coeff_s, name = coeff_s.strip(), name.strip()
            else:
                tokens = term.split()
                if len(tokens) == 1:
                    # a bare token is a basis name when declared (names may
                    # be numeric, like the unit of the dual numbers)
                    coeff_s, name = None, tokens[0]
                elif len(tokens) == 2:
                    coeff_s, name = tokens
                else:
                    self.err(E_SCALAR, lineno, "cannot read term %r" % term)
            if not name:
                self.err(E_SCALAR, lineno, "cannot read term %r" % term)
            try:
                idx = self.space.index(name)
            except KeyError:
                self.err(E_NAME, lineno, "undeclared basis name %r" % name)
            try:
                coeff = (self.space.field.parse(coeff_s) if coeff_s
                         else self.space.field(1))
            except ValueError as exc:
                self.err(E_SCALAR, lineno, str(exc))
            cur = vec.get(idx, self.space.field(0)) + sign * coeff
            if cur:
                vec[idx] = cur
            else:
                vec.pop(idx, None)
        return vec

    def split_terms(self, text, lineno):
        """Split a linear combination at top-level +/- signs."""
        out = []
        sign = 1
        cur = []
        started = False
        for ch in text:
            if ch in "+-" and started and cur and cur[-1] not in "*/":
                out.append((sign, "".join(cur).strip()))
                sign = -1 if ch == "-" else 1
                cur = []
                continue
            if ch == "-" and not started and not cur:
                sign = -sign
                continue
            if ch == "+" and not started and not cur:
                continue
            cur.append(ch)
            if not ch.isspace():
                started = True
        if cur and "".join(cur).strip():
            out.append((sign, "".join(cur).strip()))
        if not out:
            self.err(E_SCALAR, lineno, "empty value")
        return out

    def cochain_from_entries(self, arity, entries, what, lineno,
                             declared_parity=None):
        space = self.space
        parity = None
        for t, vec in entries.items():
            tp = sum(space.parities[i] for i in t) & 1
            for b in vec:
                p = (space.parities[b] + tp) & 1
                if parity is None:
                    parity = p
                elif parity != p:
                    self.err(E_PARITY, lineno,
                             "%s mixes output parities" % what)
        if parity is None:
            parity = declared_parity if declared_parity is not None else arity & 1
        if declared_parity is not None and parity != declared_parity:
            self.err(E_PARITY, lineno,
                     "%s has parity %d but the declared parameter parity "
                     "forces %d" % (what, parity, declared_parity))
        try:
            return Cochain(space, self.flavor, arity, parity, entries)
        except ValueError as exc:
            self.err(E_ARITY, lineno, "%s: %s" % (what, exc))

    def build(self):
        parts = {}
        part_names = {}
        for arity in sorted(self.maps):
            name, entries, lineno = self.maps[arity]
            parts[arity] = self.cochain_from_entries(
                arity, entries, "map %s of arity %d" % (name, arity), lineno)
            part_names[arity] = name
        ip = None
        if self.ip_entries is not None:
            n = self.space.dim
            matrix = [[self.space.field(0)] * n for _ in range(n)]
            for (i, j), v in self.ip_entries.items():
                matrix[i][j] = v
            # absent mirror entries follow from graded symmetry
            for (i, j), v in self.ip_entries.items():
                if i != j and (j, i) not in self.ip_entries:
                    sign = -1 if (self.space.parities[i] &
                                  self.space.parities[j]) else 1
                    matrix[j][i] = sign * v
            try:
                ip = InnerProduct(self.space, matrix)
            except ValueError as exc:
                self.err(E_STRUCTURE, 0, "inner_product: %s" % exc)
        deformations = {}
        for name in sorted(self.defos):
            parity, blocks = self.defos[name]
            fam = {}
            for arity in sorted(blocks):
                want = (parity + arity) & 1
                fam[arity] = self.cochain_from_entries(
                    arity, blocks[arity],
                    "deformation %s of arity %d" % (name, arity), 0,
                    declared_parity=want)
            deformations[name] = (parity, fam)
        return AlgebraFile(self.space, self.flavor, parts, part_names, ip,
                           deformations)


def parse(text):
    """Parse the algebra format into an AlgebraFile, or raise ParseError."""
    return _Parser(text).run()


# --- serialization ----------------------------------------------------------

def render_vector(space, vec):
    if not vec:
        return "0"
    terms = []
    for b in sorted(vec):
        c = vec[b]
        s = space.field.render(c)
        if s == "1":
            terms.append(space.names[b])
        elif s == "-1":
            terms.append("-" + space.names[b])
        else:
            terms.append("%s*%s" % (s, space.names[b]))
    out = terms[0]
    for t in terms[1:]:
        if t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


def serialize(af):
    """Canonical text form; parse(serialize(x)) == x."""
    space = af.space
    lines = []
    if space.field == QQ:
        lines.append("field Q")
    else:
        lines.append("field F %d" % space.field.p)
    lines.append("flavor %s" % af.flavor)
    lines.append("space")
    for name, parity in zip(space.names, space.parities):
        lines.append("  basis %s %s" % (name, "odd" if parity else "even"))
    for arity in sorted(af.parts):
        name = af.part_names.get(arity, "m")
        lines.append("map %s %d" % (name, arity))
        part = af.parts[arity]
        for t in sorted(part.coeffs):
            args = ",".join(space.names[i] for i in t)
            lines.append("  %s(%s) = %s"
                         % (name, args, render_vector(space, part.coeffs[t])))
    if af.inner_product is not None:
        lines.append("inner_product")
        for i in range(space.dim):
            for j in range(space.dim):
                v = af.inner_product.matrix[i][j]
                if v:
                    lines.append("  <%s,%s> = %s"
                                 % (space.names[i], space.names[j],
                                    space.field.render(v)))
    for name in sorted(af.deformations):
        parity, fam = af.deformations[name]
        tag = "odd_parameter" if parity else "even_parameter"
        for arity in sorted(fam):
            lines.append("deformation %s %d %s" % (name, arity, tag))
            part = fam[arity]
            for t in sorted(part.coeffs):
                args = ",".join(space.names[i] for i in t)
                lines.append("  %s(%s) = %s"
                             % (name, args, render_vector(space, part.coeffs[t])))
    return "\n".join(lines) + "\n"
