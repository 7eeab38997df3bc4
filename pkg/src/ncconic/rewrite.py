"""Degree-truncated noncommutative Groebner bases by overlap completion.

Rules map a leading word to a reducer polynomial whose words are strictly
smaller; the rule set is kept inter-reduced (no lead is a subword of another
lead), so at most one rule applies at any position of a word.  Overlap
ambiguities are queued by total degree ascending with the monomial order of
the overlap word as tie-break, which makes completion reproducible.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .freealg import Ambient, MonomialOrder, NcPoly, Word
from .scalars import zero


class TruncationTooSmall(Exception):
    pass


class DegreeExceedsTruncation(Exception):
    pass


@dataclass
class RewriteSystem:
    ambient: Ambient
    order: MonomialOrder
    rules: dict[Word, NcPoly]
    truncation: int
    confluent_up_to: int
    overflow: list[NcPoly] = field(default_factory=list)

    def leads(self) -> list[Word]:
        return sorted(self.rules, key=self.order.key)


def _find_redex(w: Word, leads_by_len: dict[int, set[Word]]) -> tuple[int, Word] | None:
    """Leftmost position where some lead occurs as a subword of w."""
    n = len(w)
    for pos in range(n):
        for ln, leads in leads_by_len.items():
            if pos + ln <= n and w[pos : pos + ln] in leads:
                return pos, w[pos : pos + ln]
    return None


class _Engine:
    def __init__(self, ambient: Ambient, order: MonomialOrder, D: int):
        self.ambient = ambient
        self.order = order
        self.D = D
        self.rules: dict[Word, NcPoly] = {}
        self.leads_by_len: dict[int, set[Word]] = {}
        self.overlap_heap: list = []
        self.counter = 0
        self.overflow: list[NcPoly] = []

    def reduce(self, f: NcPoly) -> NcPoly:
        spec = self.ambient.spec
        work = dict(f.terms)
        out: dict[Word, object] = {}
        z = zero(spec)
        key = self.order.key
        while work:
            w = max(work, key=key)
            c = work.pop(w)
            if c.is_zero():
                continue
            m = _find_redex(w, self.leads_by_len)
            if m is None:
                out[w] = out.get(w, z) + c
                continue
            pos, lead = m
            a, b = w[:pos], w[pos + len(lead) :]
            for v, cv in self.rules[lead].terms.items():
                nw = a + v + b
                work[nw] = work.get(nw, z) + c * cv
        return NcPoly(self.ambient, out)

    def _remove_rule(self, lead: Word):
        del self.rules[lead]
        self.leads_by_len[len(lead)].discard(lead)

    def _push_overlaps(self, u: Word):
        for v in list(self.rules):
            for a, s, b in _overlaps(u, v):
                self._queue(u, v, a, s, b)
            if v != u:
                for a, s, b in _overlaps(v, u):
                    self._queue(v, u, a, s, b)

    def _queue(self, u: Word, v: Word, a: Word, s: Word, b: Word):
        w = a + s + b
        if len(w) > self.D:
            return
        self.counter += 1
        heapq.heappush(self.overlap_heap, (len(w), self.order.key(w), self.counter, u, v, a, b))

    def add(self, f: NcPoly):
        f = self.reduce(f)
        if f.is_zero():
            return
        if f.degree() > self.D:
            self.overflow.append(f)
            return
        f = f.monic(self.order)
        lead, _ = f.leading(self.order)
        rest = NcPoly.monomial(self.ambient, lead) - f
        # evict rules whose lead contains the new lead, requeue their full polys
        requeue = []
        for other in list(self.rules):
            if _contains(other, lead):
                requeue.append(NcPoly.monomial(self.ambient, other) - self.rules[other])
                self._remove_rule(other)
        self.rules[lead] = rest
        self.leads_by_len.setdefault(len(lead), set()).add(lead)
        self._push_overlaps(lead)
        for g in requeue:
            self.add(g)

    def run(self):
        while self.overlap_heap:
            _, _, _, u, v, a, b = heapq.heappop(self.overlap_heap)
            if u not in self.rules or v not in self.rules:
                continue
            left = _mul_word(self.rules[u], right=b)
            right = _mul_word(self.rules[v], left=a)
            self.add(left - right)
        # canonicalize: reducers in normal form w.r.t. the final rule set
        for lead in list(self.rules):
            self.rules[lead] = self.reduce(self.rules[lead])


def _mul_word(p: NcPoly, left: Word = (), right: Word = ()) -> NcPoly:
    return NcPoly(p.ambient, {left + w + right: c for w, c in p.terms.items()})


def _contains(w: Word, sub: Word) -> bool:
    ls = len(sub)
    return any(w[i : i + ls] == sub for i in range(len(w) - ls + 1))


def _overlaps(u: Word, v: Word):
    """Proper overlaps u = a s, v = s b with nonempty s shorter than both."""
    for ls in range(1, min(len(u), len(v))):
        s = u[len(u) - ls :]
        if v[:ls] == s:
            yield u[: len(u) - ls], s, v[ls:]


def complete(
    relations: list[NcPoly],
    D: int,
    order: MonomialOrder | None = None,
    allow_inhomogeneous: bool = False,
) -> RewriteSystem:
    """Inter-reduced rewrite system with all overlaps of degree <= D resolved.

    Graded presentations are the primary clients; inhomogeneous input is
    accepted only for the finite-dimensional closure in findim, where the
    resulting basis is cross-validated against the degree horizon."""
    rels = [r for r in relations if not r.is_zero()]
    if not rels:
        raise ValueError("need at least one nonzero relation")
    ambient = rels[0].ambient
    if order is None:
        order = MonomialOrder.default(ambient.n)
    maxdeg = 0
    for r in rels:
        if not allow_inhomogeneous and not r.is_homogeneous():
            raise ValueError(f"relation {r} is not homogeneous")
        if r.degree() < 1:
            raise ValueError("degree-0 relation")
        maxdeg = max(maxdeg, r.degree())
    if D < maxdeg:
        raise TruncationTooSmall(f"D={D} below max relation degree {maxdeg}")
    eng = _Engine(ambient, order, D)
    for r in sorted(rels, key=lambda p: (p.degree(), order.key(p.leading(order)[0]))):
        eng.add(r)
    eng.run()
    confluent = D if not eng.overflow else min(D, min(f.degree() for f in eng.overflow) - 1)
    return RewriteSystem(ambient, order, eng.rules, D, confluent, eng.overflow)


def normal_form(rs: RewriteSystem, f: NcPoly) -> NcPoly:
    if f.degree() > rs.confluent_up_to:
        raise DegreeExceedsTruncation(
            f"degree {f.degree()} exceeds confluent range {rs.confluent_up_to}"
        )
    eng = _Engine(rs.ambient, rs.order, rs.truncation)
    eng.rules = rs.rules
    eng.leads_by_len = {}
    for lead in rs.rules:
        eng.leads_by_len.setdefault(len(lead), set()).add(lead)
    return eng.reduce(f)


def graded_basis(rs: RewriteSystem, d: int) -> list[Word]:
    """All degree-d words with no lead as subword, ascending in the order."""
    if d > rs.confluent_up_to:
        raise DegreeExceedsTruncation(f"degree {d} exceeds {rs.confluent_up_to}")
    leads_by_len: dict[int, set[Word]] = {}
    for lead in rs.rules:
        leads_by_len.setdefault(len(lead), set()).add(lead)
    n = rs.ambient.n
    letters = sorted(range(n), key=lambda i: rs.order.precedence[i])
    out: list[Word] = []

    def ok_suffix(w: Word) -> bool:
        for ln, leads in leads_by_len.items():
            if ln <= len(w) and w[len(w) - ln :] in leads:
                return False
        return True

    def rec(w: Word):
        if len(w) == d:
            out.append(w)
            return
        for i in letters:
            nw = w + (i,)
            if ok_suffix(nw):
                rec(nw)

    rec(())
    return out
