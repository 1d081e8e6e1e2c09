"""Extension of cochains to coderivations of T(V), S(V), /\\V, restrictions,
and the (modified) bracket of coderivations.

A degree-k cochain extends to a coderivation whose value on a degree-n word
is a signed sum over insertion positions (tensor) or unshuffles (symmetric,
exterior).  Tensor extensions come in two gradings: parity-only, where a
prefix of parity p contributes (-1)^{p |d|}, and the bidegree grading which
adds (-1)^{i(k-1)} for an insertion after i letters.  Symmetric extensions
require the parity grading, exterior extensions the bidegree grading.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cochain import Cochain, canonical_tuples, vec_add, zero_cochain
from .graded import (EXTERIOR, PARITY_ONLY, PRODUCT_FORM, SHIFTED_FORM,
                     SYMMETRIC, TENSOR, Word, canonical_word, grading_pair,
                     koszul_sign, permutation_sign, unshuffles, word_parity)

W_OF_V = "w_of_v"
V_OF_W = "v_of_w"
CONVENTIONS = (W_OF_V, V_OF_W)


def natural_mode(flavor):
    """The grading a coderivation theory of this flavor needs."""
    if flavor == SYMMETRIC:
        return PARITY_ONLY
    if flavor == EXTERIOR:
        return PRODUCT_FORM
    return PRODUCT_FORM  # tensor default: the bidegree grading on the V side


@dataclass
class CoderivationGenerator:
    """A cochain together with the grading mode of its extension."""

    base: Cochain
    mode: str

    def __post_init__(self):
        if self.mode not in (PARITY_ONLY, PRODUCT_FORM):
            raise ValueError("extension mode must be parity_only or product_form")
        if self.base.flavor == SYMMETRIC and self.mode != PARITY_ONLY:
            raise ValueError("symmetric coderivations need the parity grading")
        if self.base.flavor == EXTERIOR and self.mode != PRODUCT_FORM:
            raise ValueError("exterior coderivations need the bidegree grading")


def extend_letters(gen, letters, mode):
    """Value of the extended coderivation of ``gen`` on a pure word, as a
    dict {output letters: coefficient}.  Zero when deg(word) < k."""
    space = gen.space
    par = space.parities
    k = gen.degree
    n = len(letters)
    out = {}
    if gen.flavor == TENSOR:
        for i in range(n - k + 1):
            e = sum(par[x] for x in letters[:i]) * gen.parity
            if mode == PRODUCT_FORM:
                e += i * (k - 1)
            sign = -1 if e & 1 else 1
            vec = gen.coeffs.get(tuple(letters[i:i + k]))
            if not vec:
                continue
            for b, c in vec.items():
                key = letters[:i] + (b,) + letters[i + k:]
                cur = out.get(key, 0) + sign * c
                if cur:
                    out[key] = cur
                else:
                    out.pop(key, None)
        return out
    letter_par = [par[x] for x in letters]
    exterior = gen.flavor == EXTERIOR
    if n < k:
        return out
    for sigma in unshuffles(k, n - k):
        s = koszul_sign(sigma, letter_par)
        if exterior:
            s *= permutation_sign(sigma)
        head = tuple(letters[sigma[i] - 1] for i in range(k))
        rest = tuple(letters[sigma[i] - 1] for i in range(k, n))
        vec = gen.value(head)
        if not vec:
            continue
        for b, c in vec.items():
            cw = canonical_word(gen.flavor, (b,) + rest, par)
            if cw is None:
                continue
            s2, canon = cw
            cur = out.get(canon, 0) + s * s2 * c
            if cur:
                out[canon] = cur
            else:
                out.pop(canon, None)
    return out


def extend(gen, word, mode=None):
    """The coderivation extension applied to a Word; a list of Words."""
    if isinstance(gen, CoderivationGenerator):
        gen, mode = gen.base, gen.mode
    if mode is None:
        mode = natural_mode(gen.flavor)
    if word.flavor != gen.flavor:
        raise ValueError("flavor mismatch: %s generator on %s word"
                         % (gen.flavor, word.flavor))
    terms = extend_letters(gen, word.letters, mode)
    return [Word(word.space, word.flavor, t, word.coefficient * c)
            for t, c in sorted(terms.items())]


@dataclass
class Restriction:
    """The extended coderivation of a degree-k generator restricted to
    degree k+l-1 words, landing in degree-l words."""

    k: int
    l: int
    matrix: dict  # input tuple -> {output tuple: coefficient}


def restrict(gen, l, mode=None):
    if isinstance(gen, CoderivationGenerator):
        gen, mode = gen.base, gen.mode
    if mode is None:
        mode = natural_mode(gen.flavor)
    if l < 1:
        raise ValueError("restriction lands in degree >= 1")
    n = gen.degree + l - 1
    matrix = {}
    for t in canonical_tuples(gen.space, gen.flavor, n):
        row = extend_letters(gen, t, mode)
        if row:
            matrix[t] = row
    return Restriction(gen.degree, l, matrix)


def compose(outer, inner, mode=None):
    """outer ∘ (extension of inner restricted to land in outer's degree):
    a cochain of degree outer.degree + inner.degree - 1."""
    if outer.space != inner.space or outer.flavor != inner.flavor:
        raise ValueError("cochain mismatch in composition")
    if mode is None:
        mode = natural_mode(outer.flavor)
    n = outer.degree + inner.degree - 1
    if n < 0:
        return zero_cochain(outer.space, outer.flavor, 0,
                            (outer.parity + inner.parity) & 1)
    coeffs = {}
    for t in canonical_tuples(outer.space, outer.flavor, n):
        acc = {}
        for mid, c in extend_letters(inner, t, mode).items():
            vec_add(acc, outer.value(mid), c)
        if acc:
            coeffs[t] = acc
    return Cochain(outer.space, outer.flavor, n,
                   (outer.parity + inner.parity) & 1, coeffs)


def bracket(a, b, form=None):
    """[a_k, b_l] = a ∘ b_{lk} - (-1)^{<a,b>} b ∘ a_{kl} under the grading
    form (parity_only on a reversed side, product_form on the V side)."""
    if a.space != b.space or a.flavor != b.flavor:
        raise ValueError("cochain mismatch in bracket")
    if form is None:
        form = natural_mode(a.flavor)
    if form == SHIFTED_FORM:
        raise ValueError("the shifted form grades the modified bracket, "
                         "not the plain one")
    mode = form
    first = compose(a, b, mode)
    second = compose(b, a, mode)
    sign = -1 if grading_pair(form, a.bidegree, b.bidegree) else 1
    from .cochain import add, scale
    return add(first, scale(-sign, second))


def modified_bracket(a, b, convention=W_OF_V):
    """{a_k, b_l}: the bracket conjugated through the parity reversion.

    w_of_v twists by (-1)^{(k-1)|b|}; v_of_w by (-1)^{(k-1)(|b|+l-1)}.
    Both are graded Lie for the shifted form on bidegrees.
    """
    if convention not in CONVENTIONS:
        raise ValueError("unknown convention %r" % convention)
    base = bracket(a, b, PRODUCT_FORM)
    e = (a.degree - 1) * b.parity
    if convention == V_OF_W:
        e = (a.degree - 1) * (b.parity + b.degree - 1)
    if e & 1:
        from .cochain import scale
        return scale(-1, base)
    return base


# --- families -------------------------------------------------------------
#
# An inhomogeneous cochain is a family {degree: Cochain}; brackets act
# degree by degree via [a, b]_n = sum over k+l=n+1 of [a_k, b_l].

def family_add(fam_a, fam_b):
    from .cochain import add
    out = dict(fam_a)
    for k, c in fam_b.items():
        if k in out:
            out[k] = add(out[k], c)
        else:
            out[k] = c
    return {k: c for k, c in out.items() if not c.is_zero()}


def family_scale(s, fam):
    from .cochain import scale
    return {k: scale(s, c) for k, c in fam.items()}


def family_bracket(fam_a, fam_b, form=None, convention=None):
    """Componentwise bracket of families; pass ``convention`` to use the
    modified bracket instead of the plain one."""
    out = {}
    for k, a in fam_a.items():
        for l, b in fam_b.items():
            if convention is None:
                term = bracket(a, b, form)
            else:
                term = modified_bracket(a, b, convention)
            if term.is_zero():
                continue
            n = k + l - 1
            out[n] = add_into(out.get(n), term)
    return {n: c for n, c in out.items() if not c.is_zero()}


def add_into(existing, term):
    from .cochain import add
    if existing is None:
        return term
    return add(existing, term)


def family_is_zero(fam):
    return all(c.is_zero() for c in fam.values())
