"""Z2-graded basis bookkeeping, words in the three coalgebras, Koszul signs,
unshuffles and the reduced diagonals.

Permutations are 1-indexed tuples ``images`` with ``images[i-1] == sigma(i)``,
matching the usual convention for unshuffles.  All sign computations return
plain ints (+1/-1) so they mix with scalars from any exact field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .fields import QQ, PrimeField, Rationals

TENSOR = "tensor"
SYMMETRIC = "symmetric"
EXTERIOR = "exterior"
FLAVORS = (TENSOR, SYMMETRIC, EXTERIOR)

PARITY_ONLY = "parity_only"
PRODUCT_FORM = "product_form"
SHIFTED_FORM = "shifted_form"
GRADING_FORMS = (PARITY_ONLY, PRODUCT_FORM, SHIFTED_FORM)


@dataclass(frozen=True)
class GradedSpace:
    """A finite ordered homogeneous basis with Z2 parities over an exact field."""

    names: tuple
    parities: tuple
    field: object = QQ

    def __post_init__(self):
        if len(self.names) == 0:
            raise ValueError("a graded space needs dimension >= 1")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate basis names")
        if len(self.parities) != len(self.names):
            raise ValueError("one parity per basis element required")
        if any(p not in (0, 1) for p in self.parities):
            raise ValueError("parities must be 0 or 1")
        if not isinstance(self.field, (Rationals, PrimeField)):
            raise ValueError("unsupported field")

    @property
    def dim(self):
        return len(self.names)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError("unknown basis name %r" % name)

    def parity(self, i):
        return self.parities[i]

    def reversed(self):
        """The same basis with all parities flipped."""
        return GradedSpace(self.names, tuple(1 - p for p in self.parities), self.field)


def word_parity(space, letters):
    return sum(space.parities[i] for i in letters) & 1


def check_permutation(images):
    n = len(images)
    if sorted(images) != list(range(1, n + 1)):
        raise ValueError("not a permutation of 1..%d: %r" % (n, images))


def permutation_sign(images):
    """Ordinary sign (-1)^sigma."""
    check_permutation(images)
    seq = list(images)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1, i, -1):
            if seq[j - 1] > seq[j]:
                seq[j - 1], seq[j] = seq[j], seq[j - 1]
                sign = -sign
    return sign


def koszul_sign(images, parities):
    """The sign epsilon(sigma; v_1..v_n) accumulated while sorting the
    permuted word back into order: one factor (-1)^{|a||b|} per adjacent
    swap.  Independent of the chosen decomposition."""
    if len(images) != len(parities):
        raise ValueError("permutation size %d != parity vector size %d"
                         % (len(images), len(parities)))
    check_permutation(images)
    seq = list(images)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1, i, -1):
            if seq[j - 1] > seq[j]:
                if parities[seq[j - 1] - 1] & parities[seq[j] - 1]:
                    sign = -sign
                seq[j - 1], seq[j] = seq[j], seq[j - 1]
    return sign


@lru_cache(maxsize=None)
def unshuffles(p, q):
    """All permutations of p+q that increase on 1..p and on p+1..p+q,
    as 1-indexed image tuples in lexicographic order; there are C(p+q, p)."""
    if p < 0 or q < 0 or p + q < 1:
        raise ValueError("need p, q >= 0 and p + q >= 1")
    n = p + q
    out = []
    for first in itertools.combinations(range(1, n + 1), p):
        rest = tuple(i for i in range(1, n + 1) if i not in first)
        out.append(first + rest)
    return tuple(out)


def swap_sign(flavor, pa, pb):
    """Sign picked up when two adjacent letters of parities pa, pb trade
    places: Koszul for the symmetric algebra, extra -1 for the exterior."""
    s = -1 if (pa & pb) else 1
    return -s if flavor == EXTERIOR else s


def canonical_word(flavor, letters, parities):
    """Sort a word's letters into canonical nondecreasing order.

    Returns (sign, letters) or None when the word dies in the quotient:
    a repeated odd letter kills a symmetric word, a repeated even letter
    kills an exterior word.  (An odd letter may repeat in the exterior
    algebra: u^v = -(-1)^{|u||v|} v^u forces only even squares to vanish.)
    """
    if flavor == TENSOR:
        return 1, tuple(letters)
    seq = list(letters)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1, i, -1):
            if seq[j - 1] > seq[j]:
                sign *= swap_sign(flavor, parities[seq[j - 1]], parities[seq[j]])
                seq[j - 1], seq[j] = seq[j], seq[j - 1]
    for a, b in zip(seq, seq[1:]):
        if a == b:
            if flavor == SYMMETRIC and parities[a] == 1:
                return None
            if flavor == EXTERIOR and parities[a] == 0:
                return None
    return sign, tuple(seq)


@dataclass
class Word:
    """A coefficient times a pure word in T(V), S(V) or /\\V.

    Stored in canonical form: symmetric and exterior letters nondecreasing,
    with the reordering sign absorbed into the coefficient.
    """

    space: GradedSpace
    flavor: str
    letters: tuple
    coefficient: object = 1

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError("unknown flavor %r" % self.flavor)
        if len(self.letters) == 0:
            raise ValueError("words have degree >= 1")
        cw = canonical_word(self.flavor, self.letters, self.space.parities)
        if cw is None:
            self.letters = tuple(sorted(self.letters))
            self.coefficient = 0 * self.coefficient
        else:
            sign, canon = cw
            self.letters = canon
            self.coefficient = sign * self.coefficient

    @property
    def degree(self):
        return len(self.letters)

    @property
    def parity(self):
        return word_parity(self.space, self.letters)

    @property
    def bidegree(self):
        return (self.parity, self.degree)

    def is_zero(self):
        return not self.coefficient


def grading_pair(form, bid_a, bid_b):
    """The Z2 pairing <a,b> of two bidegrees under the chosen grading form."""
    pa, da = bid_a
    pb, db = bid_b
    if form == PARITY_ONLY:
        return (pa * pb) & 1
    if form == PRODUCT_FORM:
        return (pa * pb + da * db) & 1
    if form == SHIFTED_FORM:
        return ((pa + da) * (pb + db)) & 1
    raise ValueError("unknown grading form %r" % form)


def reduced_diagonal(word):
    """The reduced diagonal of a word as a list of (left, right) Word pairs.

    Tensor words split at every position; symmetric splits run over
    unshuffles weighted by epsilon(sigma); exterior splits carry the extra
    (-1)^sigma.  Degree-1 words map to the empty sum (the kernel is V).
    """
    n = word.degree
    if word.is_zero() or n == 1:
        return []
    par = word.space.parities
    letter_par = [par[i] for i in word.letters]
    out = []
    if word.flavor == TENSOR:
        for k in range(1, n):
            left = Word(word.space, TENSOR, word.letters[:k], word.coefficient)
            right = Word(word.space, TENSOR, word.letters[k:], 1)
            out.append((left, right))
        return out
    for k in range(1, n):
        for sigma in unshuffles(k, n - k):
            s = koszul_sign(sigma, letter_par)
            if word.flavor == EXTERIOR:
                s *= permutation_sign(sigma)
            lhs = tuple(word.letters[sigma[i] - 1] for i in range(k))
            rhs = tuple(word.letters[sigma[i] - 1] for i in range(k, n))
            left = Word(word.space, word.flavor, lhs, s * word.coefficient)
            right = Word(word.space, word.flavor, rhs, 1)
            if not left.is_zero() and not right.is_zero():
                out.append((left, right))
    return out


def pair_sum(pairs):
    """Collect (left, right) word pairs into a canonical dict keyed by
    (left letters, right letters); used to compare formal sums of splits."""
    acc = {}
    for left, right in pairs:
        c = left.coefficient * right.coefficient
        if not c:
            continue
        key = (left.letters, right.letters)
        cur = acc.get(key, 0)
        cur = cur + c
        if cur:
            acc[key] = cur
        else:
            acc.pop(key, None)
    return acc
