"""Exceptional collections on flag shapes.

``enumerate_collection`` builds the collection
Sigma^{a_1}(W_{d_1}) (x) ... (x) Sigma^{a_s}(W_{d_s}) with a_r running
over partitions in a d_r x (d_{r+1} - d_r) box (d_{s+1} = n), ordered so
that strong exceptionality is expected to hold; ``check_strong_exceptional``
verifies it pair by pair with three-valued verdicts that are always sound:
a Refuted verdict carries a machine-checkable witness and Inconclusive is
reported whenever the engine's bound cannot decide.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import (
    EXACT,
    CohomologyOutcome,
    ext_groups_best,
)
from .flagvar import SUB, BundleExpr, FlagShape, Slot, make_monomial
from .schur import CharacterSum, pad

CONFIRMED = "confirmed"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

HIGHER = "higher"  # Ext^k must vanish for k > 0
TOTAL = "total"  # Ext^k must vanish for every k

_STATUS_RANK = {CONFIRMED: 0, INCONCLUSIVE: 1, REFUTED: 2}


def _box_partitions(rows: int, width: int):
    """Partitions fitting in a rows x width box, as full-length weights."""
    out = []

    def rec(i, prev, cur):
        if i == rows:
            out.append(tuple(cur))
            return
        for v in range(min(prev, width), -1, -1):
            cur.append(v)
            rec(i + 1, v, cur)
            cur.pop()

    rec(0, width, [])
    return out


@dataclass
class Collection:
    shape: FlagShape
    members: list  # list[BundleExpr], each a single SchurMonomial

    def __len__(self):
        return len(self.members)

    def to_json(self):
        return {
            "flag": self.shape.to_json(),
            "members": [m.to_json() for m in self.members],
        }

    @classmethod
    def from_json(cls, data):
        shape = FlagShape.from_json(data["flag"])
        members = [BundleExpr.from_json(m) for m in data["members"]]
        for m in members:
            if m.shape != shape:
                raise ValueError("member shape mismatch")
        return cls(shape, members)


def enumerate_collection(shape: FlagShape) -> Collection:
    """All box-bounded Schur monomials in the tautological subbundles.

    Ordered lexicographically descending on (|a_1|, ..., |a_s|), ties
    broken by descending comparison of the weight tuples; on a single
    Grassmann step this refines the containment order of Young diagrams
    (larger diagrams first, ending with the structure sheaf).
    """
    dims = shape.dims + (shape.n,)
    boxes = [
        _box_partitions(dims[r], dims[r + 1] - dims[r]) for r in range(shape.s)
    ]
    tuples = [()]
    for box in boxes:
        tuples = [t + (a,) for t in tuples for a in box]
    tuples.sort(key=lambda t: (tuple(sum(a) for a in t), t), reverse=True)
    members = []
    for t in tuples:
        factors = [(Slot(SUB, r + 1), a) for r, a in enumerate(t)]
        members.append(make_monomial(shape, factors))
    return Collection(shape, members)


def classify_vanishing(outcome: CohomologyOutcome, requirement: str):
    """Sound three-valued verdict on a vanishing requirement.

    ``higher`` asks for Ext^k = 0 (k > 0), ``total`` for Ext^k = 0 (all k).
    Confirmed whenever the (upper-bound) by_degree data is already zero in
    the forbidden range; Refuted on an exact nonzero group or on an Euler
    witness that forces one; Inconclusive otherwise.
    """
    if requirement not in (HIGHER, TOTAL):
        raise ValueError("unknown requirement %r" % requirement)
    offending = {
        d: cs
        for d, cs in outcome.by_degree.items()
        if cs and (requirement == TOTAL or d > 0)
    }
    if not offending:
        return CONFIRMED, None
    if outcome.grade == EXACT:
        d = min(offending)
        return REFUTED, {
            "kind": "exact_degree",
            "degree": d,
            "character": offending[d].to_json(),
        }
    if requirement == TOTAL:
        if outcome.euler:
            return REFUTED, {"kind": "euler_nonzero", "euler": outcome.euler.to_json()}
        return INCONCLUSIVE, None
    bound0 = outcome.character(0)
    for w, m in outcome.euler.items():
        if m < 0:
            # alternating sum negative at w: some odd-degree group is nonzero
            return REFUTED, {"kind": "euler_negative", "weight": list(w), "euler_mult": m}
        if m > bound0[w]:
            # exceeds the whole degree-0 bound: some positive even degree survives
            return REFUTED, {
                "kind": "euler_excess",
                "weight": list(w),
                "euler_mult": m,
                "hom_bound": bound0[w],
            }
    return INCONCLUSIVE, None


@dataclass
class PairVerdict:
    i: int
    j: int
    requirement: str
    status: str
    outcome: CohomologyOutcome
    witness: dict | None = None

    @property
    def hom_character(self) -> CharacterSum:
        return self.outcome.character(0)

    def to_json(self):
        return {
            "i": self.i,
            "j": self.j,
            "requirement": self.requirement,
            "status": self.status,
            "hom": self.hom_character.to_json(),
            "outcome": self.outcome.to_json(),
            "witness": self.witness,
        }


@dataclass
class PairReport:
    shape: FlagShape
    members: list
    pairs: list = field(default_factory=list)

    @property
    def overall(self) -> str:
        worst = CONFIRMED
        for p in self.pairs:
            if _STATUS_RANK[p.status] > _STATUS_RANK[worst]:
                worst = p.status
        return worst

    @property
    def exit_code(self) -> int:
        return {CONFIRMED: 0, REFUTED: 1, INCONCLUSIVE: 2}[self.overall]

    def refutations(self):
        return [p for p in self.pairs if p.status == REFUTED]

    def to_json(self):
        return {
            "flag": self.shape.to_json(),
            "members": [m.to_json() for m in self.members],
            "overall": self.overall,
            "pairs": [p.to_json() for p in self.pairs],
        }


def _as_members(c) -> tuple:
    if isinstance(c, Collection):
        return c.shape, list(c.members)
    members = list(c)
    if not members:
        raise ValueError("empty collection")
    shape = members[0].shape
    for m in members:
        if m.shape != shape:
            raise ValueError("members must share one shape")
    return shape, members


def check_strong_exceptional(c) -> PairReport:
    """Check the strong exceptional conditions on an ordered collection.

    For i < j: Ext^k(E_i, E_j) = 0 for k > 0.  For i > j: Ext^k(E_i, E_j)
    = 0 for every k.  On the diagonal: higher self-Exts vanish and
    Hom(E_i, E_i) = k.
    """
    shape, members = _as_members(c)
    report = PairReport(shape, members)
    for i in range(len(members)):
        for j in range(len(members)):
            outcome = ext_groups_best(members[i], members[j])
            requirement = TOTAL if i > j else HIGHER
            status, witness = classify_vanishing(outcome, requirement)
            if i == j and status == CONFIRMED:
                status, witness = _classify_simple(outcome, shape.n)
            report.pairs.append(
                PairVerdict(i, j, requirement, status, outcome, witness)
            )
    return report


def _classify_simple(outcome: CohomologyOutcome, n: int):
    """Given confirmed higher vanishing, decide whether Hom = k."""
    unit = CharacterSum(n, {pad((), n): 1})
    bound0 = outcome.character(0)
    if bound0 == unit:
        # Hom always contains the identity; a bound equal to k pins it
        return CONFIRMED, None
    if outcome.grade == EXACT:
        return REFUTED, {"kind": "hom_not_simple", "hom": bound0.to_json()}
    return INCONCLUSIVE, None


def hom_quiver(c) -> dict:
    """Degree-0 Hom characters and dimensions between all ordered pairs."""
    shape, members = _as_members(c)
    n = len(members)
    characters = [[None] * n for _ in range(n)]
    dims = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            hom = ext_groups_best(members[i], members[j]).character(0)
            characters[i][j] = hom
            dims[i][j] = hom.dimension()
    return {
        "flag": shape.to_json(),
        "dims": dims,
        "characters": [[cs.to_json() for cs in row] for row in characters],
    }
