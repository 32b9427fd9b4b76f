"""Cover manipulation: reduced, non-redundant, canonical, and minimum covers.

A cover of a dependency set is any equivalent set.  The rewrites here are
deterministic: dependencies are scanned in collection order and attributes
inside a left side are tried in canonical (name) order, so equal inputs
always produce equal outputs.
"""

from __future__ import annotations

from itertools import combinations

from .errors import LimitExceededError
from .fds import FD, AttributeSet, AttrsLike, FDSet, _close

__all__ = [
    "reduced_cover",
    "nonredundant_cover",
    "canonical_cover",
    "minimum_cover",
    "project_fds",
    "DEFAULT_PROJECTION_LIMIT",
]

DEFAULT_PROJECTION_LIMIT = 20


def reduced_cover(sigma: FDSet) -> FDSet:
    """Equivalent cover in which no left side keeps a removable attribute.

    For each dependency ``X -> Y`` and each ``A`` of ``X`` in canonical
    order, ``A`` is dropped whenever the working set still implies
    ``(X - A) -> Y``.  Later dependencies are tested against the already
    rewritten set.
    """
    work = list(sigma)
    for i in range(len(work)):
        rhs = work[i].rhs
        lhs = work[i].lhs
        for a in tuple(lhs):
            trial = lhs - AttributeSet([a])
            if rhs.members <= _close(work, trial):
                lhs = trial
                work[i] = FD(lhs, rhs)
    return FDSet(work, universe=sigma.universe)


def nonredundant_cover(sigma: FDSet) -> FDSet:
    """Equivalent subset in which no member is implied by the others.

    Greedy scan in collection order; each removal is in place, so later
    members are tested against the already shrunk set.
    """
    work = list(sigma)
    i = 0
    while i < len(work):
        fd = work[i]
        rest = work[:i] + work[i + 1 :]
        if fd.rhs.members <= _close(rest, fd.lhs):
            work = rest
        else:
            i += 1
    return FDSet(work, universe=sigma.universe)


def canonical_cover(sigma: FDSet) -> FDSet:
    """Equivalent cover whose dependencies all have a single right-side
    attribute.

    ``X -> A1 ... Ak`` splits into one dependency per ``Ai`` in canonical
    order; dependencies with an empty right side are vacuous and dropped.
    """
    out = []
    for fd in sigma:
        for a in fd.rhs:
            out.append(FD(fd.lhs, AttributeSet([a])))
    return FDSet(out, universe=sigma.universe)


def minimum_cover(sigma: FDSet) -> FDSet:
    """Cover of minimum cardinality, with every right side closed.

    Each original dependency ``X -> Y`` is removed from the working set;
    if the remainder no longer implies it, ``X -> closure(X)`` (closure
    under the original input) is appended instead.  A final non-redundancy
    sweep removes survivors that later insertions made implied.  The
    result is closed and non-redundant, which guarantees minimum size
    among all covers.
    """
    work = list(sigma)
    for fd in sigma:
        work.remove(fd)
        if not fd.rhs.members <= _close(work, fd.lhs):
            closed = FD(fd.lhs, sigma.closure(fd.lhs))
            if closed not in work:
                work.append(closed)
    i = 0
    while i < len(work):
        fd = work[i]
        rest = work[:i] + work[i + 1 :]
        if fd.rhs.members <= _close(rest, fd.lhs):
            work = rest
        else:
            i += 1
    return FDSet(work, universe=sigma.universe)


def project_fds(
    sigma: FDSet, x: AttrsLike, limit: int = DEFAULT_PROJECTION_LIMIT
) -> FDSet:
    """Cover of every implied dependency whose attributes all lie in ``x``.

    Enumerates left sides ``S`` over subsets of ``x`` in (size, canonical)
    order and emits ``S -> (closure(S) & x) - S``.  Left sides with a
    removable attribute are skipped, since the smaller subset carries the
    same image, and the collected set is compressed with
    :func:`nonredundant_cover`.  The result's universe is ``x``.

    Exponential in ``len(x)`` by design; inputs beyond ``limit``
    attributes are refused with :class:`LimitExceededError`.
    """
    x = AttributeSet(x)
    sigma._require_members(x, "projection attributes")
    if len(x) > limit:
        raise LimitExceededError(
            f"projection over {len(x)} attributes exceeds the limit of {limit}"
        )
    members = tuple(x)
    out = []
    for size in range(len(members) + 1):
        for combo in combinations(members, size):
            s = AttributeSet(combo)
            image = sigma.closure(s) & x
            rhs = image - s
            if not rhs:
                continue
            reducible = any(
                (sigma.closure(s - AttributeSet([a])) & x) >= image for a in s
            )
            if reducible:
                continue
            out.append(FD(s, rhs))
    return nonredundant_cover(FDSet(out, universe=x))
