"""Finite relation instances: projection, join, and dependency satisfaction.

This module doubles as the library's independent testing ground.  It can
build the classic two-row witness that refutes any non-implied dependency,
and it hosts :func:`oracle_implies`, a brute-force implication check that
never touches the closure machinery.

Relations have set semantics: duplicate rows collapse and row order never
affects a result.  Rendering sorts rows so golden files stay stable.
"""

from __future__ import annotations

import csv
import io
import random
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import (
    CoverageError,
    LimitExceededError,
    RelationFormatError,
    UnknownAttributeError,
)
from .fds import FD, Attribute, AttributeSet, AttrsLike, FDSet

__all__ = [
    "Row",
    "Relation",
    "join",
    "is_lossless_on",
    "two_tuple_witness",
    "oracle_implies",
    "random_satisfying_instance",
    "DEFAULT_ORACLE_LIMIT",
]

Token = Union[str, int]

DEFAULT_ORACLE_LIMIT = 12


class Row:
    """A tuple over a fixed attribute scheme: one value per attribute.

    Values are opaque atomic tokens compared structurally; they carry no
    ordering semantics.
    """

    __slots__ = ("_values", "_hash")

    def __init__(self, assignment: Mapping):
        values = {}
        for key, value in assignment.items():
            a = key if isinstance(key, Attribute) else Attribute(key)
            values[a] = value
        self._values = values
        self._hash = None

    @property
    def scheme(self) -> AttributeSet:
        return AttributeSet._from_frozen(frozenset(self._values))

    def __getitem__(self, attr) -> Token:
        if isinstance(attr, str):
            attr = Attribute(attr)
        try:
            return self._values[attr]
        except KeyError:
            raise UnknownAttributeError(f"attribute outside the row's scheme: {attr}")

    def restrict(self, y: AttrsLike) -> "Row":
        """The same row narrowed to the attributes ``y`` (a subset of the
        scheme).  Restricting to the full scheme is the identity."""
        y = AttributeSet(y)
        stray = y.members - frozenset(self._values)
        if stray:
            names = " ".join(sorted(a.name for a in stray))
            raise UnknownAttributeError(f"attributes outside the row's scheme: {names}")
        return Row({a: self._values[a] for a in y.members})

    def items(self):
        return sorted(self._values.items(), key=lambda kv: kv[0].name)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Row) and self._values == other._values

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._values.items()))
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{a.name}: {v!r}" for a, v in self.items())
        return f"Row({{{inner}}})"


class Relation:
    """A finite set of rows over a scheme."""

    __slots__ = ("_scheme", "_rows")

    def __init__(self, scheme: AttrsLike, rows: Iterable = ()):
        self._scheme = AttributeSet(scheme)
        collected = set()
        for r in rows:
            row = r if isinstance(r, Row) else Row(r)
            if frozenset(row._values) != self._scheme.members:
                raise ValueError(
                    f"row scheme {row.scheme} does not match relation scheme {self._scheme}"
                )
            collected.add(row)
        self._rows = frozenset(collected)

    @classmethod
    def from_rows(cls, scheme: AttrsLike, rows: Iterable[Sequence[Token]]) -> "Relation":
        """Build from positional value tuples in canonical attribute order."""
        scheme = AttributeSet(scheme)
        attrs = tuple(scheme)
        out = []
        for values in rows:
            values = tuple(values)
            if len(values) != len(attrs):
                raise ValueError(
                    f"expected {len(attrs)} values per row, got {len(values)}"
                )
            out.append(Row(dict(zip(attrs, values))))
        return cls(scheme, out)

    @property
    def scheme(self) -> AttributeSet:
        return self._scheme

    @property
    def rows(self) -> frozenset:
        return self._rows

    def sorted_rows(self) -> list:
        attrs = tuple(self._scheme)
        return sorted(self._rows, key=lambda r: tuple(str(r[a]) for a in attrs))

    def __iter__(self) -> Iterator[Row]:
        return iter(self.sorted_rows())

    def __len__(self) -> int:
        return len(self._rows)

    def __bool__(self) -> bool:
        return bool(self._rows)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Relation)
            and self._scheme == other._scheme
            and self._rows == other._rows
        )

    def __hash__(self) -> int:
        return hash((self._scheme, self._rows))

    def __repr__(self) -> str:
        return f"Relation({self._scheme!r}, {len(self._rows)} rows)"

    def project(self, y: AttrsLike) -> "Relation":
        """Projection onto ``y``: restrict every row, collapsing duplicates."""
        y = AttributeSet(y)
        if not y <= self._scheme:
            stray = y - self._scheme
            raise UnknownAttributeError(f"attributes outside the scheme: {stray}")
        wanted = y.members
        return Relation(
            y, (Row({a: row._values[a] for a in wanted}) for row in self._rows)
        )

    def satisfies(self, fd: FD) -> bool:
        """Whether no two rows agree on ``fd.lhs`` yet differ on ``fd.rhs``."""
        if not fd.attributes <= self._scheme:
            stray = fd.attributes - self._scheme
            raise UnknownAttributeError(f"attributes outside the scheme: {stray}")
        lhs = tuple(fd.lhs)
        rhs = tuple(fd.rhs)
        groups: dict = {}
        for row in self._rows:
            key = tuple(row._values[a] for a in lhs)
            image = tuple(row._values[a] for a in rhs)
            prior = groups.setdefault(key, image)
            if prior != image:
                return False
        return True

    def satisfies_all(self, sigma: FDSet) -> bool:
        return all(self.satisfies(fd) for fd in sigma)

    def to_csv(self) -> str:
        """Render as CSV: a header of attribute names in canonical order,
        then rows sorted lexicographically by their rendered values."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        attrs = tuple(self._scheme)
        writer.writerow([a.name for a in attrs])
        for row in self.sorted_rows():
            writer.writerow([str(row[a]) for a in attrs])
        return buffer.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "Relation":
        """Parse the CSV format written by :meth:`to_csv`.

        Values are kept as bare string tokens, so parse / render / parse
        is the identity once rows are sorted.
        """
        reader = csv.reader(io.StringIO(text))
        try:
            header = next(reader)
        except StopIteration:
            raise RelationFormatError("relation CSV needs a header row")
        try:
            attrs = [Attribute(name.strip()) for name in header]
        except ValueError as exc:
            raise RelationFormatError(str(exc))
        if len(set(attrs)) != len(attrs):
            raise RelationFormatError("duplicate attribute in CSV header")
        rows = []
        for lineno, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(attrs):
                raise RelationFormatError(
                    f"line {lineno}: expected {len(attrs)} values, got {len(record)}"
                )
            rows.append(Row(dict(zip(attrs, record))))
        return cls(AttributeSet(attrs), rows)


def _join2(left: Relation, right: Relation) -> Relation:
    common = tuple(left.scheme & right.scheme)
    out_scheme = left.scheme | right.scheme
    index: dict = {}
    for row in right.rows:
        key = tuple(row._values[a] for a in common)
        index.setdefault(key, []).append(row)
    out = []
    for row in left.rows:
        key = tuple(row._values[a] for a in common)
        for other in index.get(key, ()):
            merged = dict(other._values)
            merged.update(row._values)
            out.append(Row(merged))
    return Relation(out_scheme, out)


def join(relations: Sequence[Relation]) -> Relation:
    """Natural join: all tuples over the union scheme whose restriction to
    each input scheme appears in that input.

    Computed pairwise left to right; the result is independent of the
    order.  Disjoint schemes produce a full cross product.
    """
    if not relations:
        raise ValueError("join requires at least one relation")
    acc = relations[0]
    for rel in relations[1:]:
        acc = _join2(acc, rel)
    return acc


def is_lossless_on(instance: Relation, parts: Sequence[AttrsLike]) -> bool:
    """Whether joining the projections onto ``parts`` rebuilds ``instance``
    exactly.

    The join of projections always contains the original, so ``False``
    means strictly lossy for this instance.  The parts must cover the
    scheme.
    """
    parts = [AttributeSet(p) for p in parts]
    union = AttributeSet()
    for p in parts:
        union = union | p
    if union != instance.scheme:
        raise CoverageError(
            f"parts cover {union}, expected the full scheme {instance.scheme}"
        )
    return join([instance.project(p) for p in parts]) == instance


def two_tuple_witness(sigma: FDSet, x: AttrsLike) -> Relation:
    """The two-row relation over the universe whose rows agree exactly on
    the closure of ``x``.

    It satisfies ``sigma``, and it satisfies ``x -> Y`` exactly when ``Y``
    lies inside the closure, so it refutes every non-implied dependency
    with left side ``x``.  When the closure is the whole universe the two
    rows coincide and collapse to one.
    """
    x = AttributeSet(x)
    closure = sigma.closure(x)
    universe = sigma.universe
    u = {a: "0" for a in universe}
    v = {a: ("0" if a in closure else "1") for a in universe}
    return Relation(universe, [u, v])


def oracle_implies(sigma: FDSet, fd: FD, limit: int = DEFAULT_ORACLE_LIMIT) -> bool:
    """Brute-force implication check over all two-row relation patterns.

    Enumerates every pattern of two rows over the universe: the first row
    is a constant tuple and the second agrees with it exactly on a chosen
    subset ``W`` (encoded as a bitmask over the canonical attribute
    order).  Such a relation satisfies ``S -> T`` precisely when ``S`` not
    inside ``W`` or ``T`` inside ``W``.  The answer is ``False`` exactly
    when some pattern satisfies ``sigma`` but not ``fd``.

    Two-row patterns suffice to refute any non-implied dependency, and
    nothing here calls the closure machinery, so this is an independent
    oracle for :meth:`FDSet.implies`.  Universes beyond ``limit``
    attributes are refused.
    """
    sigma._require_members(fd.attributes, "dependency attributes")
    n = len(sigma.universe)
    if n > limit:
        raise LimitExceededError(
            f"oracle over {n} attributes exceeds the limit of {limit}"
        )
    position = {a: i for i, a in enumerate(sigma.universe)}

    def mask(attrs: AttributeSet) -> int:
        m = 0
        for a in attrs:
            m |= 1 << position[a]
        return m

    body = [(mask(f.lhs), mask(f.rhs)) for f in sigma]
    lhs_mask = mask(fd.lhs)
    rhs_mask = mask(fd.rhs)
    for w in range(1 << n):
        if lhs_mask & w == lhs_mask and rhs_mask & w != rhs_mask:
            for s, t in body:
                if s & w == s and t & w != t:
                    break
            else:
                return False
    return True


def random_satisfying_instance(
    sigma: FDSet,
    rng: random.Random,
    max_witnesses: int = 3,
    max_merges: int = 2,
) -> Relation:
    """A pseudo-random relation over the universe that satisfies ``sigma``.

    Starts from a union of two-row witnesses over random seeds (all rows
    share values on the closure of the empty set, other value spaces are
    disjoint, so every pairwise agreement set is closed and the union
    satisfies ``sigma``).  Optional merges copy one row's values onto
    another over a random closed set; any violations that introduces are
    repaired by unifying value tokens until the instance satisfies
    ``sigma`` again.
    """
    universe = sigma.universe
    if not universe:
        return Relation(universe, [Row({})])
    attrs = tuple(universe)
    base = sigma.closure(AttributeSet())
    rows: list = []
    for w in range(rng.randint(1, max_witnesses)):
        seed = AttributeSet([a for a in attrs if rng.random() < 0.5])
        closed = sigma.closure(seed)
        u = {a: f"{a.name}.{w}a" for a in attrs}
        v = {a: (u[a] if a in closed else f"{a.name}.{w}b") for a in attrs}
        for a in base:
            u[a] = f"{a.name}.base"
            v[a] = f"{a.name}.base"
        rows.append(u)
        rows.append(v)
    for _ in range(rng.randint(0, max_merges)):
        if len(rows) < 2:
            break
        i, j = rng.sample(range(len(rows)), 2)
        seed = AttributeSet([a for a in attrs if rng.random() < 0.5])
        for a in sigma.closure(seed):
            rows[j][a] = rows[i][a]
    # Token-unification repair: each step merges two value tokens, so the
    # number of distinct tokens strictly decreases and the loop terminates.
    while True:
        violation = None
        for fd in sigma:
            lhs = tuple(fd.lhs)
            rhs = tuple(fd.rhs)
            groups: dict = {}
            for row in rows:
                key = tuple(row[a] for a in lhs)
                prior = groups.setdefault(key, row)
                if prior is not row:
                    for a in rhs:
                        if prior[a] != row[a]:
                            violation = (prior[a], row[a])
                            break
                if violation:
                    break
            if violation:
                break
        if violation is None:
            break
        keep, drop = violation
        for row in rows:
            for a in attrs:
                if row[a] == drop:
                    row[a] = keep
    return Relation(universe, [Row(r) for r in rows])
