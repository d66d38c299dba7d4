"""Uniform combinatorial batch codes.

A storage layout replicating n items over m servers, one r-set of items per
server, can serve any e distinct requests reading one item per server
exactly when every collection of at most e servers has a system of distinct
representatives.  By Hall's theorem that is a span condition: every i <= e
edges must cover at least i vertices.  Both routes are implemented and kept
independent: a matching-based SDR check and a span-profile check.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from math import gcd

from .builder import construct
from .errors import BadRange, CertificationFailed, GcdCondition, SparseHgError, TooLarge
from .freeness import Verdict, check_profile, deficit_profile
from .hypergraph import Hypergraph


def find_sdr(sets: list[tuple[int, ...]]) -> tuple[int, ...] | None:
    """Distinct representatives, one per set, via augmenting paths.

    Returns a tuple x with x[i] in sets[i], all distinct, or None when no
    such choice exists.
    """
    owner: dict[int, int] = {}  # vertex -> set index currently using it

    def augment(i: int, banned: set[int]) -> bool:
        for x in sets[i]:
            if x in banned:
                continue
            banned.add(x)
            if x not in owner or augment(owner[x], banned):
                owner[x] = i
                return True
        return False

    for i in range(len(sets)):
        if not augment(i, set()):
            return None
    chosen = {i: x for x, i in owner.items()}
    return tuple(chosen[i] for i in range(len(sets)))


def check_sdr_all(
    h: Hypergraph, e: int, *, max_edges: int = 20, force: bool = False
) -> Verdict:
    """Does every subset of at most e edges admit distinct representatives?

    Subsets are scanned by increasing size, so the first failing subset is
    itself deficient (a Hall violator: it covers fewer vertices than its
    size).  e larger than the edge count clamps.
    """
    if e < 1:
        raise BadRange(f"need e >= 1, got {e}")
    if h.m > max_edges and not force:
        raise TooLarge(
            f"{h.m} edges exceeds the subset-enumeration guard ({max_edges}); "
            "pass force=True to override"
        )
    e = min(e, h.m)
    for size in range(1, e + 1):
        for subset in itertools.combinations(range(h.m), size):
            if find_sdr([h.edges[k] for k in subset]) is None:
                return Verdict(
                    holds=False,
                    witness=subset,
                    spanned=h.union_span(subset),
                )
    return Verdict(holds=True)


def check_cbc(h: Hypergraph, e: int, *, budget: int | None = None) -> Verdict:
    """Span-profile route to the same question: free of i edges covering
    fewer than i vertices, for every i <= e.  Independent of check_sdr_all
    by design; the two must agree on every input."""
    if e < 1:
        raise BadRange(f"need e >= 1, got {e}")
    return check_profile(h, deficit_profile(h.r, 0, e), budget=budget)


def containment_margins(r: int, e: int, q: int = 0) -> dict[int, int]:
    """Margins i*r - ceil((i-1)(er-v)/(e-1)) - (i-q-1) for v = e-q-1.

    Every margin must be nonnegative for the ladder profile at v = e-q-1
    to imply the deficit profile; this is the parameter-level sanity check
    run before any batch-code construction.
    """
    v = e - q - 1
    margins = {}
    for i in range(1, e + 1):
        f_i = math.ceil(Fraction((i - 1) * (e * r - v), e - 1))
        margins[i] = i * r - f_i - (i - q - 1)
    return margins


def construct_cbc(
    r: int,
    e: int,
    n: int,
    seed: int = 0,
    *,
    max_retries: int = 16,
    min_yield: int | None = None,
    min_expected_edges: float | None = None,
    budget: int = 10**6,
) -> Hypergraph:
    """Build a layout serving any e requests: the constructed hypergraph is
    certified free of i edges covering fewer than i vertices for all i <= e.

    Requires e > r >= 3 and gcd(e-1, r) = 1 (the deficit ladder needs
    integer rungs; with v = e-1, gcd(e-1, er-v) reduces to gcd(e-1, r)).
    """
    if not e > r >= 3:
        raise BadRange(f"need e > r >= 3, got e={e}, r={r}")
    if gcd(e - 1, r) != 1:
        raise GcdCondition(f"gcd(e-1, r) = gcd({e - 1}, {r}) != 1")
    margins = containment_margins(r, e)
    bad = {i: m for i, m in margins.items() if m < 0}
    if bad:
        raise SparseHgError(f"containment margins negative at {bad}")
    result = construct(
        r,
        e,
        e - 1,
        n,
        seed=seed,
        max_retries=max_retries,
        min_yield=min_yield,
        min_expected_edges=min_expected_edges,
        budget=budget,
    )
    h = result.hypergraph
    verdict = check_cbc(h, e, budget=budget)
    if not verdict.holds:
        raise CertificationFailed(f"certification failed: deficient subset {verdict.witness}")
    return h
