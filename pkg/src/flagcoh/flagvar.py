"""Flag shapes and formal bundle expressions.

A bundle expression is a nonnegative integer combination of monomials,
each a tensor product of rational Schur functors applied to tautological
bundles of a fixed flag shape: subbundles W_{d_i} (``sub``), quotients
V/W_{d_i} (``quot``) and consecutive quotients W_{d_j}/W_{d_(j-1)}
(``block``).  Everything is immutable and hashable so results can be
cached aggressively.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .schur import CharacterSum, _strip_zeros, pad, schur_dim, tensor_schur
from .weights import dual_weight, is_weakly_decreasing


@dataclass(frozen=True)
class FlagShape:
    """F(d_1, ..., d_s; V) with dim V = n.  ``dims=()`` is a point."""

    n: int
    dims: tuple

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        if self.n < 1:
            raise ValueError("ambient dimension must be >= 1")
        prev = 0
        for d in self.dims:
            if not prev < d < self.n:
                raise ValueError("dims must satisfy 0 < d_1 < ... < d_s < n")
            prev = d

    @property
    def s(self) -> int:
        return len(self.dims)

    def blocks(self) -> tuple:
        """Sizes of the consecutive quotients; a composition of n."""
        ds = (0,) + self.dims + (self.n,)
        return tuple(ds[i + 1] - ds[i] for i in range(len(ds) - 1))

    def dimension(self) -> int:
        b = self.blocks()
        return sum(b[i] * b[j] for i in range(len(b)) for j in range(i + 1, len(b)))

    def is_symmetric(self) -> bool:
        s = self.s
        return all(self.dims[i] + self.dims[s - i - 1] == self.n for i in range(s))

    def to_json(self):
        return {"n": self.n, "dims": list(self.dims)}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["n"]), tuple(int(d) for d in data["dims"]))


SUB, QUOT, BLOCK = "sub", "quot", "block"
_SLOT_ORDER = {SUB: 0, BLOCK: 1, QUOT: 2}


@dataclass(frozen=True)
class Slot:
    kind: str
    index: int  # 1-based

    def __post_init__(self):
        if self.kind not in (SUB, QUOT, BLOCK):
            raise ValueError("bad slot kind %r" % self.kind)

    def rank(self, shape: FlagShape) -> int:
        if self.kind == SUB:
            self._check(shape, shape.s)
            return shape.dims[self.index - 1]
        if self.kind == QUOT:
            self._check(shape, shape.s)
            return shape.n - shape.dims[self.index - 1]
        self._check(shape, shape.s + 1)
        return shape.blocks()[self.index - 1]

    def _check(self, shape: FlagShape, top: int):
        if not 1 <= self.index <= top:
            raise ValueError("slot %s(%d) invalid on %r" % (self.kind, self.index, shape))

    def sort_key(self):
        return (_SLOT_ORDER[self.kind], self.index)

    def __str__(self):
        return "%s(%d)" % (self.kind, self.index)


def _normalize_slot(slot: Slot, shape: FlagShape) -> Slot:
    # Block(1) is W_{d_1} and Block(s+1) is V/W_{d_s}; use one spelling.
    if slot.kind == BLOCK and shape.s >= 1:
        if slot.index == 1:
            return Slot(SUB, 1)
        if slot.index == shape.s + 1:
            return Slot(QUOT, shape.s)
    return slot


@dataclass(frozen=True)
class SchurMonomial:
    """Tensor product of Schur functors on distinct slots of one shape."""

    shape: FlagShape
    factors: tuple  # tuple[(Slot, weight)], canonical order, no trivial factors

    def __post_init__(self):
        seen = set()
        for slot, w in self.factors:
            if slot in seen:
                raise ValueError("repeated slot %s (merge via tensor first)" % slot)
            seen.add(slot)
            if len(w) != slot.rank(self.shape):
                raise ValueError("weight %r has wrong length for %s" % (w, slot))
            if not is_weakly_decreasing(w):
                raise ValueError("weight %r not weakly decreasing" % (w,))

    def rank(self) -> int:
        r = 1
        for slot, w in self.factors:
            r *= schur_dim(tuple(w), slot.rank(self.shape))
        return r

    def __str__(self):
        if not self.factors:
            return "O"
        return " (x) ".join(
            "S^%s(%s)" % (tuple(_strip_zeros(w)), slot) for slot, w in self.factors
        )


def make_monomial(shape: FlagShape, factors: Iterable) -> "BundleExpr":
    """Build a bundle expression from raw (slot, weight) pairs, merging
    repeated slots by Littlewood-Richardson at the slot rank."""
    by_slot: dict[Slot, list] = {}
    for slot, w in factors:
        slot = _normalize_slot(slot, shape)
        by_slot.setdefault(slot, []).append(tuple(w))
    expr = BundleExpr(shape, {SchurMonomial(shape, ()): 1})
    for slot, ws in sorted(by_slot.items(), key=lambda kv: kv[0].sort_key()):
        rank = slot.rank(shape)
        cs = CharacterSum(rank, {pad(ws[0], rank): 1})
        for w in ws[1:]:
            acc = CharacterSum(rank)
            for key, mult in cs.items():
                acc = acc + tensor_schur(key, pad(w, rank), rank).scale(mult)
            cs = acc
        terms = {}
        for mono, m in expr.terms.items():
            for key, mult in cs.items():
                new = _with_factor(mono, slot, key)
                terms[new] = terms.get(new, 0) + m * mult
        expr = BundleExpr(shape, terms)
    return expr


def _with_factor(mono: SchurMonomial, slot: Slot, weight: tuple) -> SchurMonomial:
    factors = list(mono.factors)
    if any(x != 0 for x in weight):
        factors.append((slot, tuple(weight)))
        factors.sort(key=lambda fw: fw[0].sort_key())
    return SchurMonomial(mono.shape, tuple(factors))


class BundleExpr:
    """Formal nonnegative combination of Schur monomials on one shape."""

    __slots__ = ("shape", "terms")

    def __init__(self, shape: FlagShape, terms: dict | None = None):
        self.shape = shape
        self.terms = {}
        if terms:
            for mono, m in terms.items():
                if mono.shape != shape:
                    raise ValueError("monomial shape mismatch")
                if m < 0:
                    raise ValueError("multiplicities must be nonnegative")
                if m:
                    self.terms[mono] = self.terms.get(mono, 0) + m

    def __eq__(self, other):
        return (
            isinstance(other, BundleExpr)
            and self.shape == other.shape
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.shape, frozenset(self.terms.items())))

    def __add__(self, other: "BundleExpr") -> "BundleExpr":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        terms = dict(self.terms)
        for mono, m in other.terms.items():
            terms[mono] = terms.get(mono, 0) + m
        return BundleExpr(self.shape, terms)

    def rank(self) -> int:
        return sum(m * mono.rank() for mono, m in self.terms.items())

    def monomials(self):
        return sorted(self.terms.items(), key=lambda kv: str(kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, m in self.monomials():
            parts.append(("%d*" % m if m != 1 else "") + str(mono))
        return " + ".join(parts)

    def to_json(self):
        return {
            "flag": self.shape.to_json(),
            "terms": [
                {
                    "mult": m,
                    "factors": [
                        {"slot": slot.kind, "index": slot.index, "weight": list(w)}
                        for slot, w in mono.factors
                    ],
                }
                for mono, m in self.monomials()
            ],
        }

    @classmethod
    def from_json(cls, data) -> "BundleExpr":
        shape = FlagShape.from_json(data["flag"])
        out = cls(shape)
        for term in data["terms"]:
            factors = [
                (Slot(f["slot"], int(f["index"])), tuple(int(x) for x in f["weight"]))
                for f in term["factors"]
            ]
            expr = make_monomial(shape, factors)
            for mono, m in expr.terms.items():
                out = out + BundleExpr(shape, {mono: m * int(term["mult"])})
        return out


def trivial(shape: FlagShape) -> BundleExpr:
    return BundleExpr(shape, {SchurMonomial(shape, ()): 1})


def dual(e: BundleExpr) -> BundleExpr:
    out = BundleExpr(e.shape)
    for mono, m in e.terms.items():
        factors = tuple(
            sorted(
                ((slot, dual_weight(w)) for slot, w in mono.factors),
                key=lambda fw: fw[0].sort_key(),
            )
        )
        out = out + BundleExpr(e.shape, {SchurMonomial(e.shape, factors): m})
    return out


def sigma_pullback(e: BundleExpr) -> BundleExpr:
    """Pullback along the duality automorphism of a symmetric shape:
    W_{d_i} goes to the dual of Q_{d_(s-i+1)}, and conversely."""
    shape = e.shape
    if not shape.is_symmetric():
        raise ValueError("sigma pullback needs a symmetric shape")
    s = shape.s
    out = BundleExpr(shape)
    for mono, m in e.terms.items():
        factors = []
        for slot, w in mono.factors:
            if slot.kind == SUB:
                new = Slot(QUOT, s - slot.index + 1)
            elif slot.kind == QUOT:
                new = Slot(SUB, s - slot.index + 1)
            else:
                new = _normalize_slot(Slot(BLOCK, s + 2 - slot.index), shape)
            factors.append((new, dual_weight(w)))
        factors.sort(key=lambda fw: fw[0].sort_key())
        out = out + BundleExpr(shape, {SchurMonomial(shape, tuple(factors)): m})
    return out


def tensor(e1: BundleExpr, e2: BundleExpr) -> BundleExpr:
    if e1.shape != e2.shape:
        raise ValueError("shape mismatch")
    out = BundleExpr(e1.shape)
    for m1, c1 in e1.terms.items():
        for m2, c2 in e2.terms.items():
            prod = make_monomial(e1.shape, list(m1.factors) + list(m2.factors))
            for mono, c in prod.terms.items():
                out = out + BundleExpr(e1.shape, {mono: c * c1 * c2})
    return out


def _referenced_dims(mono: SchurMonomial) -> set:
    shape = mono.shape
    refs = set()
    for slot, _w in mono.factors:
        if slot.kind in (SUB, QUOT):
            refs.add(shape.dims[slot.index - 1])
        else:
            j = slot.index
            if j >= 2:
                refs.add(shape.dims[j - 2])
            if j <= shape.s:
                refs.add(shape.dims[j - 1])
    return refs


def minimal_base(e: BundleExpr):
    """Drop flag steps not referenced by any slot of ``e``.

    Cohomology is unchanged: the forgotten steps are relative Grassmann
    bundles whose structure sheaves push forward to the base.
    """
    refs = set()
    for mono in e.terms:
        refs |= _referenced_dims(mono)
    new_dims = tuple(sorted(refs))
    if new_dims == e.shape.dims:
        return e.shape, e
    new_shape = FlagShape(e.shape.n, new_dims)
    pos = {d: i + 1 for i, d in enumerate(new_dims)}
    old = e.shape.dims
    out = BundleExpr(new_shape)
    for mono, m in e.terms.items():
        factors = []
        for slot, w in mono.factors:
            if slot.kind in (SUB, QUOT):
                new_slot = Slot(slot.kind, pos[old[slot.index - 1]])
            else:
                # block j = W_{d_j} / W_{d_(j-1)}; both endpoints retained,
                # hence adjacent in the new shape as well
                j = slot.index
                if j == 1:
                    new_slot = Slot(SUB, 1)
                elif j == e.shape.s + 1:
                    new_slot = Slot(QUOT, new_shape.s)
                else:
                    new_slot = _normalize_slot(Slot(BLOCK, pos[old[j - 1]]), new_shape)
            factors.append((new_slot, w))
        factors.sort(key=lambda fw: fw[0].sort_key())
        out = out + BundleExpr(new_shape, {SchurMonomial(new_shape, tuple(factors)): m})
    return new_shape, out


@dataclass(frozen=True)
class GradedMonomial:
    """One irreducible piece of the block-graded expansion: one weight per
    consecutive quotient of the flag."""

    shape: FlagShape
    block_weights: tuple  # tuple[tuple[int, ...]] of length s+1

    def __post_init__(self):
        sizes = self.shape.blocks()
        if len(self.block_weights) != len(sizes):
            raise ValueError("wrong number of block weights")
        for w, b in zip(self.block_weights, sizes):
            if len(w) != b or not is_weakly_decreasing(w):
                raise ValueError("bad block weight %r" % (w,))

    def rank(self) -> int:
        r = 1
        for w, b in zip(self.block_weights, self.shape.blocks()):
            r *= schur_dim(tuple(w), b)
        return r


@lru_cache(maxsize=None)
def _split_partition(p: tuple, ranks: tuple) -> tuple:
    """Decompose Sigma^p of a direct sum with the given summand ranks.

    Returns ((weights_per_summand, coeff), ...) where the coefficient is
    the iterated Littlewood-Richardson multiplicity.  Summands with too
    many rows for their rank are discarded.
    """
    from .schur import _lr_raw

    p = _strip_zeros(p)
    if len(ranks) == 1:
        if len(p) > ranks[0]:
            return ()
        return (((pad(p, ranks[0]),), 1),)
    head, last = ranks[:-1], ranks[-1]
    total = sum(p)
    out = {}
    for kappa in _subpartitions(p):
        rest = total - sum(kappa)
        for lam in _partitions_bounded(rest, last, p[0] if p else 0):
            coeff = 0
            for shape, c in _lr_raw(kappa, lam):
                if shape == p:
                    coeff = c
                    break
            if not coeff:
                continue
            for head_ws, c2 in _split_partition(kappa, head):
                key = head_ws + (pad(lam, last),)
                out[key] = out.get(key, 0) + coeff * c2
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def _subpartitions(p: tuple) -> tuple:
    """All partitions contained in p."""
    if not p:
        return ((),)
    out = set()

    def rec(i, prev, cur):
        if i == len(p):
            out.add(_strip_zeros(tuple(cur)))
            return
        for v in range(min(p[i], prev), -1, -1):
            cur.append(v)
            rec(i + 1, v, cur)
            cur.pop()

    rec(0, p[0], [])
    return tuple(sorted(out))


def _partitions_bounded(total: int, max_rows: int, max_width: int):
    if total == 0:
        yield ()
        return
    if max_rows == 0 or max_width == 0:
        return

    def rec(rem, width, rows, cur):
        if rem == 0:
            yield tuple(cur)
            return
        if rows == 0:
            return
        for v in range(min(rem, width), 0, -1):
            cur.append(v)
            yield from rec(rem - v, v, rows - 1, cur)
            cur.pop()

    yield from rec(total, max_width, max_rows, [])


def _split_weight(w: tuple, ranks: tuple) -> tuple:
    """Like _split_partition but for arbitrary weakly decreasing weights,
    absorbing negative entries into a determinant twist."""
    k = -min(w) if w and min(w) < 0 else 0
    p = tuple(x + k for x in w)
    pieces = _split_partition(p, ranks)
    if k == 0:
        return pieces
    out = []
    for ws, c in pieces:
        out.append((tuple(tuple(x - k for x in piece) for piece in ws), c))
    return tuple(out)


@lru_cache(maxsize=None)
def _expand_factor(shape: FlagShape, slot: Slot, w: tuple) -> tuple:
    """Graded pieces of a single Schur factor: ((block_weight_vector, coeff),
    ...) with one weight per block of the shape.  Returns the pieces of the
    associated graded of the natural filtration (Sub over blocks 1..i, Quot
    over blocks i+1..s+1)."""
    sizes = shape.blocks()
    nblocks = len(sizes)
    zero = tuple(pad((), b) for b in sizes)
    if slot.kind == BLOCK:
        vec = list(zero)
        vec[slot.index - 1] = pad(w, sizes[slot.index - 1])
        return (((tuple(vec)), 1),)
    if slot.kind == SUB:
        span = tuple(range(0, slot.index))
    else:
        span = tuple(range(slot.index, nblocks))
    ranks = tuple(sizes[j] for j in span)
    out = []
    for ws, c in _split_weight(tuple(w), ranks):
        vec = list(zero)
        for j, piece in zip(span, ws):
            vec[j] = piece
        out.append((tuple(vec), c))
    return tuple(out)


@lru_cache(maxsize=None)
def _expand_monomial(mono: SchurMonomial) -> tuple:
    """Graded pieces of a monomial: ((GradedMonomial, coeff), ...).

    Expands every factor, then merges per block by Littlewood-Richardson.
    """
    shape = mono.shape
    sizes = shape.blocks()
    pieces = {tuple(pad((), b) for b in sizes): 1}
    for slot, w in mono.factors:
        nxt = {}
        for vec, c in pieces.items():
            for fvec, fc in _expand_factor(shape, slot, tuple(w)):
                # tensor the two block-weight vectors blockwise
                options = [CharacterSum(sizes[j], {vec[j]: 1}) for j in range(len(sizes))]
                merged = []
                for j in range(len(sizes)):
                    if any(x != 0 for x in fvec[j]):
                        if any(x != 0 for x in vec[j]):
                            merged.append(tensor_schur(vec[j], fvec[j], sizes[j]))
                        else:
                            merged.append(CharacterSum(sizes[j], {fvec[j]: 1}))
                    else:
                        merged.append(options[j])
                _combine(nxt, merged, c * fc, sizes)
        pieces = nxt
    result = []
    for vec, c in pieces.items():
        result.append((GradedMonomial(shape, vec), c))
    result.sort(key=lambda gc: gc[0].block_weights, reverse=True)
    return tuple(result)


def _combine(acc: dict, per_block: list, mult: int, sizes: tuple):
    def rec(j, vec, c):
        if j == len(sizes):
            key = tuple(vec)
            acc[key] = acc.get(key, 0) + c
            return
        for wkey, m in per_block[j].items():
            vec.append(wkey)
            rec(j + 1, vec, c * m)
            vec.pop()

    rec(0, [], mult)


def graded_expansion(e: BundleExpr):
    """Expand into block-graded monomials.

    Returns a list of (GradedMonomial, multiplicity, filtration_level)
    with levels ordered so subbundle-side pieces precede quotient-side
    pieces (levels restart per monomial of the expression).
    """
    out = []
    for mono, m in e.monomials():
        for level, (gm, c) in enumerate(_expand_monomial(mono)):
            out.append((gm, c * m, level))
    return out
