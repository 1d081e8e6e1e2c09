"""Homotopy-associative and homotopy-Lie structures and their validation.

A structure is a finitely supported family {m_k} of cochains (tensor flavor
for the associative kind, exterior for the Lie kind) together with a sign
convention.  Validity means the family assembles to an odd codifferential
on the reversed side; on the V side this is the vanishing, for every n, of

    sum over a+b=n+1 of  S(a,b) * m_a ∘ (extension of m_b at level a)

with S(a,b) = (-1)^{(a-1)b} for w_of_v and (-1)^{a-1} for v_of_w, and
equivalently the vanishing of the modified self-bracket {m, m}.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .cochain import canonical_tuples, zero_cochain
from .coderivation import (CONVENTIONS, PARITY_ONLY, PRODUCT_FORM, W_OF_V,
                           compose, family_bracket, family_is_zero)
from .graded import EXTERIOR, TENSOR, GradedSpace
from .reversion import conjugate_family

A_INFINITY = "a_infinity"
L_INFINITY = "l_infinity"

KIND_FLAVOR = {A_INFINITY: TENSOR, L_INFINITY: EXTERIOR}
FLAVOR_KIND = {TENSOR: A_INFINITY, EXTERIOR: L_INFINITY}

DEFAULT_MAX_ARITY = 8


class StructureError(ValueError):
    """A structure violates a precondition (parity, arity, flavor)."""


@dataclass
class InfinityStructure:
    kind: str
    space: GradedSpace
    parts: dict = dc_field(default_factory=dict)
    convention: str = W_OF_V
    max_arity: int = DEFAULT_MAX_ARITY

    def __post_init__(self):
        if self.kind not in KIND_FLAVOR:
            raise StructureError("kind must be a_infinity or l_infinity")
        if self.convention not in CONVENTIONS:
            raise StructureError("unknown convention %r" % self.convention)
        flavor = KIND_FLAVOR[self.kind]
        clean = {}
        for k, part in self.parts.items():
            if part.is_zero():
                continue
            if k != part.degree:
                raise StructureError("part filed under arity %d has degree %d"
                                     % (k, part.degree))
            if k < 1:
                raise StructureError("structure parts have arity >= 1")
            if k > self.max_arity:
                raise StructureError("arity %d beyond the max_arity cap %d"
                                     % (k, self.max_arity))
            if part.flavor != flavor:
                raise StructureError("%s structures need %s-flavored parts"
                                     % (self.kind, flavor))
            if part.space != self.space:
                raise StructureError("part lives on a different space")
            clean[k] = part
        self.parts = clean

    @property
    def flavor(self):
        return KIND_FLAVOR[self.kind]

    @property
    def top_arity(self):
        return max(self.parts) if self.parts else 0

    def part_parity_ok(self):
        return all(c.parity == (k & 1) for k, c in self.parts.items())

    def reversed_parts(self):
        """The family conjugated to the reversed side (where validity means
        an odd codifferential for the plain parity grading)."""
        return conjugate_family(self.parts, self.convention, to_reversed=True)


@dataclass
class ValidationReport:
    ok: bool
    kind: str = "ok"           # ok | parity | relation
    n: int = 0
    letters: tuple = ()
    residual: dict = dc_field(default_factory=dict)

    def first_failure(self):
        return (self.n, self.letters, self.residual)


def relation_sign(convention, outer, inner):
    if convention == W_OF_V:
        return -1 if ((outer - 1) * inner) & 1 else 1
    return -1 if (outer - 1) & 1 else 1


def structure_residual(s, n):
    """The degree-n relation residual as a cochain (direct route)."""
    flavor = s.flavor
    parity = (n + 1) & 1  # residual of an odd family at arity n
    acc = None
    for a, outer in s.parts.items():
        b = n + 1 - a
        inner = s.parts.get(b)
        if inner is None:
            continue
        term = compose(outer, inner, PRODUCT_FORM)
        sgn = relation_sign(s.convention, a, b)
        if sgn < 0:
            from .cochain import scale
            term = scale(-1, term)
        if acc is None:
            acc = term
        else:
            from .cochain import add
            acc = add(acc, term)
    if acc is None:
        return zero_cochain(s.space, flavor, n, parity)
    return acc


def reversed_residual(parts_w, w_space, flavor_w, n):
    """Degree-n component of delta ∘ delta on the reversed side: the sum of
    delta_a ∘ delta_{b a} over a+b = n+1, parity grading, no extra signs."""
    acc = None
    from .cochain import add
    for a, outer in parts_w.items():
        b = n + 1 - a
        inner = parts_w.get(b)
        if inner is None:
            continue
        term = compose(outer, inner, PARITY_ONLY)
        acc = term if acc is None else add(acc, term)
    if acc is None:
        return zero_cochain(w_space, flavor_w, n, 0)
    return acc


def reversed_side_ok(s):
    """Third validation route: the conjugated family squares to zero on the
    reversed side."""
    parts_w = s.reversed_parts()
    if not parts_w:
        return True
    w_space = s.space.reversed()
    flavor_w = next(iter(parts_w.values())).flavor
    top = max(parts_w)
    for n in range(1, 2 * top):
        if not reversed_residual(parts_w, w_space, flavor_w, n).is_zero():
            return False
    return True


def validate(s):
    """Check the structure relations; returns a ValidationReport.

    Raises StructureError when the parity constraint |m_k| = k mod 2 fails
    (that check comes before any relation is evaluated).  Internally the
    direct relation route and the modified-bracket route are both evaluated
    and must agree.
    """
    for k, c in sorted(s.parts.items()):
        if c.parity != (k & 1):
            raise StructureError(
                "part of arity %d has parity %d, an odd codifferential needs %d"
                % (k, c.parity, k & 1))
    top = s.top_arity
    first_bad = None
    for n in range(1, 2 * top):
        res = structure_residual(s, n)
        if res.is_zero():
            continue
        for t in canonical_tuples(s.space, s.flavor, n):
            vec = res.coeffs.get(t)
            if vec:
                first_bad = (n, t, vec)
                break
        if first_bad:
            break
    # second route: {m, m} = 0; must agree with the direct relations
    if s.space.field.characteristic != 2:
        sq = family_bracket(s.parts, s.parts, convention=s.convention)
        if family_is_zero(sq) != (first_bad is None):
            raise RuntimeError("internal sign inconsistency: relation route and "
                               "bracket route disagree")
    if first_bad is None:
        return ValidationReport(True)
    n, t, vec = first_bad
    return ValidationReport(False, "relation", n,
                            tuple(s.space.names[i] for i in t), vec)


def validate_dga(d, m, convention=W_OF_V):
    """Check that a degree-1 and a degree-2 tensor cochain form a
    differential graded associative algebra (the n = 1, 2, 3 relations)."""
    parts = {}
    if not d.is_zero():
        parts[1] = d
    if not m.is_zero():
        parts[2] = m
    space = d.space if not d.is_zero() else m.space
    s = InfinityStructure(A_INFINITY, space, parts, convention)
    return validate(s)


@dataclass
class Deformation:
    """A first-order direction: parts {k: Cochain} with parities tied to a
    single parameter parity by |lambda_k| = parameter_parity + k mod 2."""

    base: InfinityStructure
    parts: dict
    parameter_parity: int

    def __post_init__(self):
        for k, c in self.parts.items():
            if c.is_zero():
                continue
            want = (self.parameter_parity + k) & 1
            if c.parity != want:
                raise StructureError(
                    "direction part of arity %d has parity %d, expected %d"
                    % (k, c.parity, want))
            if c.flavor != self.base.flavor or c.space != self.base.space:
                raise StructureError("direction does not match the structure")
        self.parts = {k: c for k, c in self.parts.items() if not c.is_zero()}


def deformation_parameter_parity(parts):
    """Infer the parameter parity from a family, or raise when the family
    cannot sit at first order of any single parameter."""
    seen = None
    for k, c in parts.items():
        if c.is_zero():
            continue
        p = (c.parity + k) & 1
        if seen is None:
            seen = p
        elif seen != p:
            raise StructureError("direction parts do not share a parameter parity")
    return 0 if seen is None else seen


def deform_check(s, parts):
    """Is l + u*lambda a structure to first order (u^2 = 0)?  True exactly
    when the direction is a cocycle: {lambda, m} = 0."""
    deformation_parameter_parity(parts)
    diff = family_bracket(parts, s.parts, convention=s.convention)
    return family_is_zero(diff)
