"""Independent brute-force cross-checks, used only by the test suite.

Everything here deliberately avoids the sign machinery of the main modules:
Koszul signs come from the closed-form product over inversions instead of
transposition decomposition, exterior reordering is re-derived locally, and
rank computation is a plain dense elimination.  Dense and unoptimized on
purpose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cochain import Cochain, ScalarCochain, canonical_tuples
from .coderivation import W_OF_V
from .graded import EXTERIOR, TENSOR


@dataclass
class OracleReport:
    name: str
    agreement: bool
    first_discrepancy: object = None

    def __post_init__(self):
        if self.agreement == (self.first_discrepancy is not None):
            raise ValueError("agreement is false iff a discrepancy is present")


def compare_cochains(name, got, want, sign=1):
    """OracleReport for an exact comparison got == sign * want."""
    keys = sorted(set(got.coeffs) | set(want.coeffs))
    for t in keys:
        gv = got.coeffs.get(t, {})
        wv = want.coeffs.get(t, {})
        for b in sorted(set(gv) | set(wv)):
            g = gv.get(b, 0)
            w = sign * wv.get(b, 0)
            if g != w:
                return OracleReport(name, False, ((t, b), w, g))
    return OracleReport(name, True)


def koszul_sign_closed_form(images, parities):
    """epsilon(sigma; v) as the product over inversions of sigma of
    (-1)^{|v_{sigma(i)}| |v_{sigma(j)}|}."""
    n = len(images)
    sign = 1
    for a in range(n):
        for b in range(a + 1, n):
            if images[a] > images[b]:
                if parities[images[a] - 1] & parities[images[b] - 1]:
                    sign = -sign
    return sign


def dense_rank(matrix, field):
    """Plain forward elimination, no pivot normalization tricks."""
    if not matrix or not matrix[0]:
        return 0
    a = [row[:] for row in matrix]
    rows, cols = len(a), len(a[0])
    rank = 0
    for c in range(cols):
        piv = None
        for r in range(rank, rows):
            if a[r][c]:
                piv = r
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(rank + 1, rows):
            if a[r][c]:
                f = a[r][c] / a[rank][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def _inversion_sort(letters, parities):
    """Sort letters of an exterior word; returns (sign, sorted letters) or
    None when a repeated even letter kills the word.  Local re-derivation:
    (-1)^{#inversions} times the closed-form Koszul product."""
    n = len(letters)
    sign = 1
    for a in range(n):
        for b in range(a + 1, n):
            if letters[a] > letters[b]:
                sign = -sign
                if parities[letters[a]] & parities[letters[b]]:
                    sign = -sign
    srt = tuple(sorted(letters))
    for x, y in zip(srt, srt[1:]):
        if x == y and parities[x] == 0:
            return None
    return sign, srt


def _ext_value(coeffs, letters, parities):
    """Value of an exterior cochain on an arbitrary tuple, independent path."""
    res = _inversion_sort(tuple(letters), parities)
    if res is None:
        return {}
    sign, srt = res
    vec = coeffs.get(srt)
    if not vec:
        return {}
    return {b: sign * c for b, c in vec.items()}


def _mult(m2, i, j):
    return m2.coeffs.get((i, j), {})


def hochschild_coboundary(m2, phi):
    """The classical bar-complex coboundary for an associative product,
    with the graded first term:

    (d phi)(a_1..a_{p+1}) = (-1)^{|a_1||phi|} a_1 phi(a_2..a_{p+1})
        + sum_i (-1)^i phi(a_1,..,a_i a_{i+1},..,a_{p+1})
        + (-1)^{p+1} phi(a_1..a_p) a_{p+1}
    """
    space = m2.space
    par = space.parities
    p = phi.degree
    out = {}
    for t in itertools.product(range(space.dim), repeat=p + 1):
        acc = {}
        # a_1 . phi(rest)
        inner = phi.coeffs.get(t[1:], {})
        sgn = -1 if (par[t[0]] * phi.parity) & 1 else 1
        for b, c in inner.items():
            for bb, cc in _mult(m2, t[0], b).items():
                cur = acc.get(bb, 0) + sgn * c * cc
                if cur:
                    acc[bb] = cur
                else:
                    acc.pop(bb, None)
        # inner multiplications
        for i in range(1, p + 1):
            sgn = -1 if i & 1 else 1
            prod = _mult(m2, t[i - 1], t[i])
            for b, c in prod.items():
                args = t[:i - 1] + (b,) + t[i + 1:]
                for bb, cc in phi.coeffs.get(args, {}).items():
                    cur = acc.get(bb, 0) + sgn * c * cc
                    if cur:
                        acc[bb] = cur
                    else:
                        acc.pop(bb, None)
        # phi(front) . a_{p+1}
        sgn = -1 if (p + 1) & 1 else 1
        front = phi.coeffs.get(t[:p], {})
        for b, c in front.items():
            for bb, cc in _mult(m2, b, t[p]).items():
                cur = acc.get(bb, 0) + sgn * c * cc
                if cur:
                    acc[bb] = cur
                else:
                    acc.pop(bb, None)
        if acc:
            out[t] = acc
    return Cochain(space, TENSOR, p + 1, (phi.parity + m2.parity) & 1, out)


def chevalley_eilenberg_coboundary(l2, phi):
    """The classical Lie-algebra coboundary with adjoint coefficients on an
    all-even space:

    (d phi)(x_1..x_{p+1}) = sum_i (-1)^{i+1} [x_i, phi(.. no x_i ..)]
        + sum_{i<j} (-1)^{i+j} phi([x_i,x_j], .. no x_i, x_j ..)
    """
    space = l2.space
    par = space.parities
    if any(par):
        raise ValueError("this oracle is written for all-even spaces")
    p = phi.degree

    def bracket_vec(i, j):
        return _ext_value(l2.coeffs, (i, j), par)

    out = {}
    for t in canonical_tuples(space, EXTERIOR, p + 1):
        acc = {}
        for i in range(p + 1):
            rest = t[:i] + t[i + 1:]
            sgn = 1 if i % 2 == 0 else -1  # (-1)^{i+1} with 1-based i
            for b, c in _ext_value(phi.coeffs, rest, par).items():
                for bb, cc in bracket_vec(t[i], b).items():
                    cur = acc.get(bb, 0) + sgn * c * cc
                    if cur:
                        acc[bb] = cur
                    else:
                        acc.pop(bb, None)
        for i in range(p + 1):
            for j in range(i + 1, p + 1):
                sgn = 1 if (i + j + 2) % 2 == 0 else -1  # (-1)^{i+j}, 1-based
                rest = tuple(t[r] for r in range(p + 1) if r != i and r != j)
                for b, c in bracket_vec(t[i], t[j]).items():
                    args = (b,) + rest
                    for bb, cc in _ext_value(phi.coeffs, args, par).items():
                        cur = acc.get(bb, 0) + sgn * c * cc
                        if cur:
                            acc[bb] = cur
                        else:
                            acc.pop(bb, None)
        if acc:
            out[t] = acc
    return Cochain(space, EXTERIOR, p + 1, (phi.parity + l2.parity) & 1, out)


def chevalley_eilenberg_trivial_coboundary(l2, f):
    """Trivial-coefficient coboundary on an all-even space:
    (d f)(x_1..x_{p+1}) = sum_{i<j} (-1)^{i+j} f([x_i,x_j], .. no i, j ..)."""
    space = l2.space
    par = space.parities
    if any(par):
        raise ValueError("this oracle is written for all-even spaces")
    arity = f.arity + 1

    def f_value(letters):
        res = _inversion_sort(tuple(letters), par)
        if res is None:
            return 0
        sign, srt = res
        c = f.coeffs.get(srt, 0)
        return sign * c if c else 0

    out = {}
    for t in itertools.combinations(range(space.dim), arity):
        acc = space.field(0)
        for i in range(arity):
            for j in range(i + 1, arity):
                sgn = 1 if (i + j + 2) % 2 == 0 else -1
                rest = tuple(t[r] for r in range(arity) if r != i and r != j)
                for b, c in _ext_value(l2.coeffs, (t[i], t[j]), par).items():
                    acc = acc + sgn * c * f_value((b,) + rest)
        if acc:
            out[t] = acc
    return ScalarCochain(space, EXTERIOR, arity, 0, out)


def lie_trivial_cohomology_dims(l2, max_degree):
    """Dimensions of the trivial-coefficient cohomology in degrees
    0..max_degree, assembled densely and ranked with the local elimination."""
    space = l2.space
    field = space.field

    def basis_tuples(j):
        if j == 0:
            return [()]
        return list(itertools.combinations(range(space.dim), j))

    def delta_matrix(j):
        # rows: degree j+1 tuples, cols: degree j tuples
        src = basis_tuples(j)
        tgt = basis_tuples(j + 1)
        tgt_index = {t: r for r, t in enumerate(tgt)}
        cols = []
        for t in src:
            if j == 0:
                cols.append([field(0)] * len(tgt))
                continue
            f = ScalarCochain(space, EXTERIOR, j, 0, {t: field(1)})
            df = chevalley_eilenberg_trivial_coboundary(l2, f)
            col = [field(0)] * len(tgt)
            for u, c in df.coeffs.items():
                col[tgt_index[u]] = c
            cols.append(col)
        return [[cols[c][r] for c in range(len(src))] for r in range(len(tgt))]

    dims = {}
    ranks = {}
    for j in range(0, max_degree + 1):
        ranks[j] = dense_rank(delta_matrix(j), field)
    for j in range(0, max_degree + 1):
        kernel = len(basis_tuples(j)) - ranks[j]
        image = ranks[j - 1] if j > 0 else 0
        dims[j] = kernel - image
    return dims


def first_order_residuals(s, lam, param):
    """Expand the structure relations of m + u*lambda symbolically, discard
    u^2, and return the u-linear residual per relation degree as
    {n: {tuple: vector}}.  Re-derives every sign locally."""
    space = s.space
    par = space.parities
    field = space.field
    parts = s.parts
    degrees = sorted(set(list(parts) + list(lam)))
    if not degrees:
        return {}
    top = max(degrees)

    def rel_sign(a, b):
        if s.convention == W_OF_V:
            e = (a - 1) * b
        else:
            e = a - 1
        return -1 if e & 1 else 1

    def outer_value(coeffs, flavor, letters):
        if flavor == TENSOR:
            return coeffs.get(tuple(letters), {})
        return _ext_value(coeffs, letters, par)

    residuals = {}
    for n in range(1, 2 * top):
        per_tuple = {}
        for t in canonical_tuples(space, s.flavor, n):
            acc = {}
            for a in degrees:
                b = n + 1 - a
                if b not in degrees:
                    continue
                base = rel_sign(a, b)
                m_a = parts.get(a)
                m_b = parts.get(b)
                l_a = lam.get(a)
                l_b = lam.get(b)
                if s.flavor == TENSOR:
                    for i in range(n - b + 1):
                        pre = sum(par[x] for x in t[:i])
                        e = pre * b + i * (b - 1)
                        ext = -base if e & 1 else base
                        win, prefix, suffix = t[i:i + b], t[:i], t[i + b:]
                        if l_a is not None and m_b is not None:
                            for bb, c in m_b.coeffs.get(win, {}).items():
                                val = l_a.coeffs.get(prefix + (bb,) + suffix, {})
                                for o, cc in val.items():
                                    _acc(acc, o, ext * c * cc)
                        if m_a is not None and l_b is not None:
                            u_move = param * ((a & 1) + pre)
                            ext2 = -ext if u_move & 1 else ext
                            for bb, c in l_b.coeffs.get(win, {}).items():
                                val = m_a.coeffs.get(prefix + (bb,) + suffix, {})
                                for o, cc in val.items():
                                    _acc(acc, o, ext2 * c * cc)
                else:
                    idx = list(range(n))
                    for head_pos in itertools.combinations(idx, b):
                        tail_pos = [x for x in idx if x not in head_pos]
                        images = tuple(x + 1 for x in head_pos) + tuple(
                            x + 1 for x in tail_pos)
                        eps = koszul_sign_closed_form(
                            images, [par[x] for x in t])
                        inv = 0
                        for x in range(n):
                            for y in range(x + 1, n):
                                if images[x] > images[y]:
                                    inv += 1
                        sgn = base * eps * (1 if inv % 2 == 0 else -1)
                        head = tuple(t[x] for x in head_pos)
                        tail = tuple(t[x] for x in tail_pos)
                        if l_a is not None and m_b is not None:
                            for bb, c in _ext_value(m_b.coeffs, head, par).items():
                                for o, cc in _ext_value(
                                        l_a.coeffs, (bb,) + tail, par).items():
                                    _acc(acc, o, sgn * c * cc)
                        if m_a is not None and l_b is not None:
                            u_move = param * (a & 1)
                            sgn2 = -sgn if u_move & 1 else sgn
                            for bb, c in _ext_value(l_b.coeffs, head, par).items():
                                for o, cc in _ext_value(
                                        m_a.coeffs, (bb,) + tail, par).items():
                                    _acc(acc, o, sgn2 * c * cc)
            if acc:
                per_tuple[t] = acc
        if per_tuple:
            residuals[n] = per_tuple
    return residuals


def _acc(acc, key, val):
    if not val:
        return
    cur = acc.get(key, 0) + val
    if cur:
        acc[key] = cur
    else:
        acc.pop(key, None)
