"""Coboundary operators, exact cohomology of a structure, cyclic cochains
and cyclic cohomology, and classification of first-order deformations.

The coboundary is D(phi) = {phi, m}.  For a structure concentrated in one
arity the complex splits by cochain degree and windowed dimensions are
exact; for mixed arities the image of a degree-p cochain spreads over
degrees p..p+N-1, so a window only yields truncated coboundary spaces and
the report says so (membership tests remain reliable, dimensions are lower
bounds for coboundaries).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from . import linalg
from .cochain import (Cochain, ScalarCochain, canonical_tuples, scalar_add,
                      scalar_scale, tilde)
from .coderivation import family_bracket
from .graded import EXTERIOR, TENSOR, koszul_sign, permutation_sign, unshuffles
from .structures import deformation_parameter_parity, deform_check


class InvarianceError(ValueError):
    """The inner product fails to be invariant for some structure part."""

    def __init__(self, arity, letters):
        self.arity = arity
        self.letters = letters
        super().__init__("inner product is not invariant: part of arity %d "
                         "fails the cyclic identity at (%s)"
                         % (arity, ",".join(letters)))


# --- coboundary ------------------------------------------------------------

def coboundary(phi, s):
    """D(phi) = {phi, m} as a family {degree: Cochain}."""
    if phi.flavor != s.flavor or phi.space != s.space:
        raise ValueError("cochain does not live in the structure's complex")
    return family_bracket({phi.degree: phi}, s.parts, convention=s.convention)


def coboundary_family(fam, s):
    return family_bracket(fam, s.parts, convention=s.convention)


# --- windowed cohomology ----------------------------------------------------

@dataclass
class DegreeRow:
    degree: int
    cocycles: int
    coboundaries: int
    quotient: int
    representatives: list = dc_field(default_factory=list)


@dataclass
class CohomologyReport:
    window: tuple
    rows: list
    graded_exact: bool
    note: str = ""


def _window_report(field, window, spread, dim_of, apply_D, reconstruct,
                   graded_exact, note):
    """Shared window machinery.

    ``dim_of(p)`` is the dimension of the degree-p cochain space,
    ``apply_D(p, i)`` returns the differential of its i-th basis vector as
    {target degree: coordinate list}, ``reconstruct(p, coords)`` builds a
    representative from coordinates.
    """
    a, b = window
    if a < 0 or b < a:
        raise ValueError("window must satisfy 0 <= a <= b")
    src_low = max(0, a - spread)
    src_degrees = list(range(src_low, b + 1))
    tgt_degrees = list(range(src_low, b + spread + 1))
    tgt_offset = {}
    total_rows = 0
    for q in tgt_degrees:
        tgt_offset[q] = total_rows
        total_rows += dim_of(q)
    # columns per source degree
    cols = {p: [] for p in src_degrees}
    for p in src_degrees:
        for i in range(dim_of(p)):
            col = [field(0)] * total_rows
            for q, coords in apply_D(p, i).items():
                if q in tgt_offset:
                    off = tgt_offset[q]
                    for r, x in enumerate(coords):
                        col[off + r] = x
            cols[p].append(col)
    rows_out = []
    for p in range(a, b + 1):
        dim_p = dim_of(p)
        if dim_p == 0:
            rows_out.append(DegreeRow(p, 0, 0, 0, []))
            continue
        # cocycles: kernel of D restricted to degree-p sources (all rows)
        block = [[cols[p][j][r] for j in range(dim_p)] for r in range(total_rows)]
        kern = linalg.kernel_basis(block, field)
        z_dim = len(kern)
        # coboundaries landing exactly in degree p, from windowed sources
        all_cols = [c for q in src_degrees for c in cols[q]]
        n_src = len(all_cols)
        off_p = tgt_offset[p]
        off_rows = [r for r in range(total_rows) if not (off_p <= r < off_p + dim_p)]
        off_block = [[all_cols[j][r] for j in range(n_src)] for r in off_rows]
        feasible = linalg.kernel_basis(off_block, field) if off_rows else None
        images = []
        if feasible is None:
            # no off-degree constraints: the image of everything
            for j in range(n_src):
                images.append([all_cols[j][off_p + r] for r in range(dim_p)])
        else:
            for v in feasible:
                img = [field(0)] * dim_p
                for j, x in enumerate(v):
                    if x:
                        for r in range(dim_p):
                            img[r] = img[r] + x * all_cols[j][off_p + r]
                images.append(img)
        img_rows, img_pivots = linalg.rref(images, field) if images else ([], [])
        b_basis = [img_rows[i] for i in range(len(img_pivots))]
        b_dim = len(img_pivots)
        reps = []
        span = [row[:] for row in b_basis]
        for v in kern:
            if not linalg.in_span(span, v, field):
                reps.append(reconstruct(p, v))
                span.append(v)
        rows_out.append(DegreeRow(p, z_dim, b_dim, z_dim - b_dim, reps))
    return CohomologyReport(window, rows_out, graded_exact, note)


def _cochain_basis(space, flavor, p):
    return [(t, j) for t in canonical_tuples(space, flavor, p)
            for j in range(space.dim)]


def _basis_cochain(space, flavor, p, t, j):
    parity = (space.parities[j] + sum(space.parities[i] for i in t)) & 1
    return Cochain(space, flavor, p, parity, {t: {j: 1}})


def _coords_of_cochain(space, flavor, p, c):
    field = space.field
    out = []
    for t in canonical_tuples(space, flavor, p):
        vec = c.coeffs.get(t, {})
        for j in range(space.dim):
            out.append(field(vec.get(j, 0)))
    return out


def cohomology(s, window):
    """Exact windowed cohomology of the structure's coboundary D."""
    space, flavor, field = s.space, s.flavor, s.space.field
    arities = sorted(s.parts)
    spread = (max(arities) - 1) if arities else 0
    single = len(arities) <= 1
    note = "" if single else (
        "mixed arities: the complex does not split by degree; coboundary "
        "dimensions are truncated to sources in the window")

    def dim_of(p):
        return len(canonical_tuples(space, flavor, p)) * space.dim

    def apply_D(p, i):
        basis = _cochain_basis(space, flavor, p)
        t, j = basis[i]
        fam = coboundary(_basis_cochain(space, flavor, p, t, j), s)
        return {q: _coords_of_cochain(space, flavor, q, c)
                for q, c in fam.items()}

    def reconstruct(p, coords):
        basis = _cochain_basis(space, flavor, p)
        coeffs = {}
        parity = None
        for (t, j), x in zip(basis, coords):
            if x:
                coeffs.setdefault(t, {})[j] = x
                par = (space.parities[j] + sum(space.parities[i] for i in t)) & 1
                parity = par if parity is None else parity
        if parity is None:
            parity = 0
        return Cochain(space, flavor, p, parity, coeffs)

    return _window_report(field, tuple(window), spread, dim_of, apply_D,
                          reconstruct, single, note)


# --- cyclicity --------------------------------------------------------------

def is_cyclic(phi, ip):
    """A tensor cochain is cyclic when <phi(v_1..v_k), v_{k+1}> equals
    (-1)^{k + |v_1||phi|} <v_1, phi(v_2..v_{k+1})> on every tuple; an
    exterior cochain when its scalar form is graded antisymmetric."""
    space = phi.space
    if phi.flavor == EXTERIOR:
        return scalar_is_antisymmetric(tilde(phi, ip))
    k = phi.degree
    for t in itertools.product(range(space.dim), repeat=k + 1):
        lhs = ip.pair(phi.value(t[:k]), t[k])
        e = k + space.parities[t[0]] * phi.parity
        rhs = ip.pair({t[0]: 1}, phi.value(t[1:]))
        if e & 1:
            rhs = -rhs
        if lhs != rhs:
            return False
    return True


def scalar_is_antisymmetric(f):
    """Graded antisymmetry under adjacent swaps, checked on all tuples."""
    space = f.space
    for t in itertools.product(range(space.dim), repeat=f.arity):
        base = f.value(t)
        for i in range(f.arity - 1):
            swapped = t[:i] + (t[i + 1], t[i]) + t[i + 2:]
            sign = -1 if not (space.parities[t[i]] & space.parities[t[i + 1]]) else 1
            if f.value(swapped) != sign * base:
                return False
    return True


def is_cyclic_scalar(f):
    """The rotation identity f(v_1..v_{n+1}) = (-1)^{n + |v_1|(|v_2|+..)}
    f(v_2..v_{n+1}, v_1) on every tuple (tensor-flavored scalar cochains)."""
    space = f.space
    n = f.arity - 1
    for t in itertools.product(range(space.dim), repeat=f.arity):
        e = n + space.parities[t[0]] * sum(space.parities[i] for i in t[1:])
        rot = f.value(t[1:] + t[:1])
        if e & 1:
            rot = -rot
        if f.value(t) != rot:
            return False
    return True


def is_cyclic_scalar_blockwise(f):
    """Block form of the same condition: f(a ox b) = (-1)^{|a||b| + i n}
    f(b ox a) for every splitting after i letters."""
    space = f.space
    n = f.arity - 1
    for t in itertools.product(range(space.dim), repeat=f.arity):
        for i in range(1, f.arity):
            alpha, beta = t[:i], t[i:]
            pa = sum(space.parities[x] for x in alpha)
            pb = sum(space.parities[x] for x in beta)
            e = pa * pb + i * n
            val = f.value(beta + alpha)
            if e & 1:
                val = -val
            if f.value(t) != val:
                return False
    return True


def cyclicize(f):
    """Average a scalar cochain over signed rotations; the result is always
    cyclic, and equals (n+1) f when f already was."""
    if f.flavor != TENSOR:
        raise ValueError("cyclicize acts on tensor-flavored scalar cochains")
    space = f.space
    n = f.arity - 1
    out = {}
    for t in itertools.product(range(space.dim), repeat=f.arity):
        acc = space.field(0)
        for i in range(f.arity):
            pa = sum(space.parities[x] for x in t[:i])
            pb = sum(space.parities[x] for x in t[i:])
            e = pa * pb + n * i
            val = f.value(t[i:] + t[:i])
            acc = acc - val if e & 1 else acc + val
        if acc:
            out[t] = acc
    return ScalarCochain(space, TENSOR, f.arity, f.parity, out)


def structure_is_cyclic(s, ip):
    """Invariance of the inner product: every part is cyclic.  Returns
    (True, None) or (False, (arity, witness letters))."""
    for k in sorted(s.parts):
        part = s.parts[k]
        if part.flavor == EXTERIOR:
            ft = tilde(part, ip)
            space = part.space
            for t in itertools.product(range(space.dim), repeat=ft.arity):
                base = ft.value(t)
                for i in range(ft.arity - 1):
                    swapped = t[:i] + (t[i + 1], t[i]) + t[i + 2:]
                    sign = -1 if not (space.parities[t[i]] & space.parities[t[i + 1]]) else 1
                    if ft.value(swapped) != sign * base:
                        return False, (k, tuple(space.names[x] for x in swapped))
        else:
            space = part.space
            kk = part.degree
            for t in itertools.product(range(space.dim), repeat=kk + 1):
                lhs = ip.pair(part.value(t[:kk]), t[kk])
                e = kk + space.parities[t[0]] * part.parity
                rhs = ip.pair({t[0]: 1}, part.value(t[1:]))
                if e & 1:
                    rhs = -rhs
                if lhs != rhs:
                    return False, (k, tuple(space.names[x] for x in t))
    return True, None


# --- cyclic coboundary ------------------------------------------------------

def _rotation_sum(f, inner, extra_exp):
    """sum over rotations of (-1)^{(v_1+..+v_i)(v_{i+1}+..+v_{n+1}) + i n
    + extra} f(inner(u_1..u_l), u_{l+1}..) with u the rotated tuple; the
    shared shape of the cyclic bracket and the cyclic coboundary."""
    space = f.space
    l = inner.degree
    k = f.arity - 1
    n = k + l - 1
    out = {}
    for t in itertools.product(range(space.dim), repeat=n + 1):
        acc = space.field(0)
        for i in range(n + 1):
            pa = sum(space.parities[x] for x in t[:i])
            pb = sum(space.parities[x] for x in t[i:])
            e = pa * pb + i * n + extra_exp
            u = t[i:] + t[:i]
            head, tail = u[:l], u[l:]
            vec = inner.value(head)
            if not vec:
                continue
            term = space.field(0)
            for bidx, c in vec.items():
                term = term + c * f.value((bidx,) + tail)
            acc = acc - term if e & 1 else acc + term
        if acc:
            out[t] = acc
    parity = (f.parity + inner.parity) & 1
    return ScalarCochain(space, TENSOR, n + 1, parity, out)


def _unshuffle_sum(f, inner, extra_exp):
    """Exterior counterpart: sum over (l, k) unshuffles with the permutation
    and Koszul signs, producing an antisymmetric scalar cochain."""
    space = f.space
    l = inner.degree
    k = f.arity - 1
    n = k + l - 1
    par = space.parities
    out = {}
    for t in canonical_tuples(space, EXTERIOR, n + 1):
        letter_par = [par[x] for x in t]
        acc = space.field(0)
        for sigma in unshuffles(l, n + 1 - l):
            s = koszul_sign(sigma, letter_par) * permutation_sign(sigma)
            head = tuple(t[sigma[i] - 1] for i in range(l))
            tail = tuple(t[sigma[i] - 1] for i in range(l, n + 1))
            vec = inner.value(head)
            if not vec:
                continue
            term = space.field(0)
            for bidx, c in vec.items():
                term = term + c * f.value((bidx,) + tail)
            if (extra_exp & 1):
                term = -term
            acc = acc + s * term
        if acc:
            out[t] = acc
    parity = (f.parity + inner.parity) & 1
    return ScalarCochain(space, EXTERIOR, n + 1, parity, out)


def cyclic_coboundary(f, s):
    """The differential on cyclic scalar cochains, as a family keyed by
    scalar degree.  Requires a cyclic (tensor) or antisymmetric (exterior)
    input; with an invariant inner product it coincides with the scalar
    form of {untilde(f), m}."""
    if s.flavor == TENSOR:
        if f.flavor != TENSOR or not is_cyclic_scalar(f):
            raise ValueError("cyclic coboundary needs a cyclic scalar cochain")
        out = {}
        k = f.arity - 1
        for l, part in s.parts.items():
            term = _rotation_sum(f, part, (k - 1) * l)
            if not term.is_zero():
                out[term.arity - 1] = scalar_add(out[term.arity - 1], term) \
                    if (term.arity - 1) in out else term
        return out
    # exterior: the input must be graded antisymmetric
    if f.flavor == EXTERIOR:
        fa = f
    else:
        if not scalar_is_antisymmetric(f):
            raise ValueError("cyclic coboundary needs an antisymmetric scalar cochain")
        fa = _as_exterior_scalar(f)
    out = {}
    k = fa.arity - 1
    for l, part in s.parts.items():
        term = _unshuffle_sum(fa, part, (k - 1) * l)
        if not term.is_zero():
            out[term.arity - 1] = scalar_add(out[term.arity - 1], term) \
                if (term.arity - 1) in out else term
    return out


def _as_exterior_scalar(f):
    space = f.space
    out = {}
    for t in canonical_tuples(space, EXTERIOR, f.arity):
        v = f.value(t)
        if v:
            out[t] = v
    return ScalarCochain(space, EXTERIOR, f.arity, f.parity, out)


# --- cyclic cochain spaces and cyclic cohomology ----------------------------

def cyclic_scalar_basis(space, flavor, degree):
    """Deterministic basis of the degree-n cyclic scalar cochains (arity
    n+1): exterior complexes use the canonical-tuple dual basis; tensor
    complexes cyclicize the full dual basis and row-reduce.

    Returns (list of ScalarCochain, list of pivot tuples).
    """
    arity = degree + 1
    field = space.field
    if flavor == EXTERIOR:
        tuples = canonical_tuples(space, EXTERIOR, arity)
        basis = []
        for t in tuples:
            parity = sum(space.parities[i] for i in t) & 1
            basis.append(ScalarCochain(space, EXTERIOR, arity, parity,
                                       {t: field(1)}))
        return basis, list(tuples)
    all_tuples = list(itertools.product(range(space.dim), repeat=arity))
    index = {t: i for i, t in enumerate(all_tuples)}
    rows = []
    for t in all_tuples:
        parity = sum(space.parities[i] for i in t) & 1
        delta = ScalarCochain(space, TENSOR, arity, parity, {t: field(1)})
        cf = cyclicize(delta)
        if cf.is_zero():
            continue
        row = [field(0)] * len(all_tuples)
        for u, c in cf.coeffs.items():
            row[index[u]] = c
        rows.append(row)
    if not rows:
        return [], []
    red, pivots = linalg.rref(rows, field)
    basis, pivot_tuples = [], []
    for r, pc in enumerate(pivots):
        coeffs = {}
        parity = None
        for i, t in enumerate(all_tuples):
            if red[r][i]:
                coeffs[t] = red[r][i]
                parity = sum(space.parities[x] for x in t) & 1
        basis.append(ScalarCochain(space, TENSOR, arity, parity, coeffs))
        pivot_tuples.append(all_tuples[pc])
    return basis, pivot_tuples


def _scalar_coords(f, basis, pivot_tuples, field):
    """Coordinates of a scalar cochain in a pivoted basis, with an exact
    membership check."""
    coords = [field(f.value(t)) for t in pivot_tuples]
    recon = None
    for x, b in zip(coords, basis):
        if not x:
            continue
        piece = scalar_scale(x, b)
        recon = piece if recon is None else scalar_add(recon, piece)
    space = basis[0].space if basis else f.space
    for t in itertools.product(range(space.dim), repeat=f.arity):
        want = f.value(t)
        got = recon.value(t) if recon is not None else 0
        if want != got:
            raise RuntimeError("scalar cochain falls outside the cyclic space")
    return coords


def cyclic_cohomology(s, ip=None, window=(0, 3)):
    """Exact windowed cyclic cohomology.

    When an inner product is supplied it must be invariant (every part
    cyclic); the complex itself, built from scalar cochains, does not
    depend on it, which also covers structures with no invariant form.
    """
    if ip is not None:
        ok, witness = structure_is_cyclic(s, ip)
        if not ok:
            raise InvarianceError(*witness)
    space, field = s.space, s.space.field
    arities = sorted(s.parts)
    spread = (max(arities) - 1) if arities else 0
    single = len(arities) <= 1
    note = "" if single else (
        "mixed arities: coboundary dimensions are truncated to sources in "
        "the window")
    cache = {}

    def basis_of(p):
        if p not in cache:
            cache[p] = cyclic_scalar_basis(space, s.flavor, p)
        return cache[p]

    def dim_of(p):
        return len(basis_of(p)[0])

    def apply_D(p, i):
        f = basis_of(p)[0][i]
        fam = cyclic_coboundary(f, s)
        out = {}
        for q, g in fam.items():
            bb, pv = basis_of(q)
            out[q] = _scalar_coords(g, bb, pv, field)
        return out

    def reconstruct(p, coords):
        bb, _ = basis_of(p)
        acc = None
        for x, b in zip(coords, bb):
            if not x:
                continue
            piece = scalar_scale(x, b)
            acc = piece if acc is None else scalar_add(acc, piece)
        return acc

    return _window_report(field, tuple(window), spread, dim_of, apply_D,
                          reconstruct, single, note)


# --- deformation classification ---------------------------------------------

@dataclass
class DeformationClass:
    cocycle: bool
    coboundary: object  # True / False / None when undetermined
    preserves_ip: object = None
    note: str = ""


def classify_deformation(s, parts, ip=None):
    """Classify a first-order direction.

    cocycle: D(lambda) = 0.  coboundary: exact linear solve of
    D(beta) = lambda; without an inner product beta ranges over the full
    windowed complex, with one it ranges over the cyclic complex, matching
    the classification of deformations that preserve the form.
    """
    param = deformation_parameter_parity(parts)
    cocycle = deform_check(s, parts)
    preserves = None
    if ip is not None:
        preserves = all(is_cyclic(c, ip) for c in parts.values())
    live = {k: c for k, c in parts.items() if not c.is_zero()}
    if not live:
        return DeformationClass(cocycle, True, preserves, "zero direction")
    max_deg = max(live)
    if max_deg > s.max_arity:
        return DeformationClass(cocycle, None, preserves,
                                "undetermined at this truncation: direction "
                                "exceeds the max_arity cap")
    if ip is None:
        found = _solve_plain_coboundary(s, live, param, max_deg)
        return DeformationClass(cocycle, found, preserves)
    if not preserves:
        return DeformationClass(cocycle, False, preserves,
                                "direction is not cyclic, so it cannot be a "
                                "coboundary in the cyclic complex")
    found = _solve_cyclic_coboundary(s, live, param, max_deg, ip)
    note = "coboundary tested in the cyclic complex (inner product supplied)"
    return DeformationClass(cocycle, found, preserves, note)


def _solve_plain_coboundary(s, lam, param, max_deg):
    space, flavor, field = s.space, s.flavor, s.space.field
    spread = (max(s.parts) - 1) if s.parts else 0
    src_degrees = list(range(0, max_deg + 1))
    tgt_degrees = list(range(0, max_deg + spread + 1))
    src_basis = []
    for q in src_degrees:
        want = (param + q + 1) & 1
        for (t, j) in _cochain_basis(space, flavor, q):
            par = (space.parities[j] + sum(space.parities[i] for i in t)) & 1
            if par == want:
                src_basis.append((q, t, j))
    tgt_offset = {}
    total = 0
    for q in tgt_degrees:
        tgt_offset[q] = total
        total += len(canonical_tuples(space, flavor, q)) * space.dim
    matrix = [[field(0)] * len(src_basis) for _ in range(total)]
    for col, (q, t, j) in enumerate(src_basis):
        fam = coboundary(_basis_cochain(space, flavor, q, t, j), s)
        for n, c in fam.items():
            if n not in tgt_offset:
                continue
            coords = _coords_of_cochain(space, flavor, n, c)
            for r, x in enumerate(coords):
                matrix[tgt_offset[n] + r][col] = x
    rhs = [field(0)] * total
    for n, c in lam.items():
        coords = _coords_of_cochain(space, flavor, n, c)
        for r, x in enumerate(coords):
            rhs[tgt_offset[n] + r] = x
    return linalg.solve(matrix, rhs, field) is not None


def _solve_cyclic_coboundary(s, lam, param, max_deg, ip):
    space, field = s.space, s.space.field
    spread = (max(s.parts) - 1) if s.parts else 0
    cache = {}

    def basis_of(p):
        if p not in cache:
            cache[p] = cyclic_scalar_basis(space, s.flavor, p)
        return cache[p]

    src_cols = []
    for q in range(0, max_deg + 1):
        want = (param + q + 1) & 1
        bb, _ = basis_of(q)
        for i, f in enumerate(bb):
            if f.parity == want:
                src_cols.append((q, i))
    tgt_offset = {}
    total = 0
    for q in range(0, max_deg + spread + 1):
        tgt_offset[q] = total
        total += len(basis_of(q)[0])
    matrix = [[field(0)] * len(src_cols) for _ in range(total)]
    for col, (q, i) in enumerate(src_cols):
        fam = cyclic_coboundary(basis_of(q)[0][i], s)
        for n, g in fam.items():
            if n not in tgt_offset:
                continue
            bb, pv = basis_of(n)
            coords = _scalar_coords(g, bb, pv, field)
            for r, x in enumerate(coords):
                matrix[tgt_offset[n] + r][col] = x
    rhs = [field(0)] * total
    for k, c in lam.items():
        g = tilde(c, ip)
        bb, pv = basis_of(k)
        coords = _scalar_coords(g, bb, pv, field)
        for r, x in enumerate(coords):
            rhs[tgt_offset[k] + r] = x
    return linalg.solve(matrix, rhs, field) is not None
