"""Buchberger kernel and the ideal-theoretic operations built on it.

The kernel works on raw term dicts (monomial tuple -> coefficient payload)
through a FieldSpec's raw ops, so the same code path serves F_p, F_{p^k},
and rational-function coefficients.  Pair pruning uses the Gebauer-Moeller
update (product + chain criteria); pair selection uses the sugar strategy
with ties broken by the lcm's order key, so runs are deterministic.

Colengths of zero-dimensional quotients are counted from the staircase of
leading monomials: inclusion-exclusion over the minimal generators when
there are at most 20 of them, otherwise a coordinate-by-coordinate lattice
sweep.  Both return exact big integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .polyring import (Polynomial, Ideal, PresentedRing, MonomialOrder,
                       GREVLEX, RingError,
                       mono_mul, mono_divides, mono_quot, mono_lcm)

# pair selection: "sugar" (degree-bounded, the default) or "normal"
# (pure lcm order).  Benchmarked on the quartic workloads; see README.
SELECTION = "sugar"


class _GEntry:
    __slots__ = ("terms", "lmono", "lkey", "sugar")

    def __init__(self, terms, keyfn, sugar):
        self.terms = terms
        self.lmono = max(terms, key=keyfn)
        self.lkey = keyfn(self.lmono)
        self.sugar = sugar


def _make_monic(F, terms, lmono):
    c = terms[lmono]
    if c == F.one:
        return terms
    ic = F.inv(c)
    return {m: F.mul(ic, v) for m, v in terms.items()}


def _reduce(F, keyfn, terms, basis, full, sugar=0):
    """Divide terms by the monic basis entries (sorted by ascending lead).

    full=False stops at the first irreducible leading term (top-reduction,
    used inside the main loop); full=True computes the normal form.  Returns
    (terms, sugar) with the sugar updated through every cancellation.
    """
    p = dict(terms)
    tail = {}
    while p:
        t = max(p, key=keyfn)
        c = p[t]
        hit = None
        for b in basis:
            if mono_divides(b.lmono, t):
                hit = b
                break
        if hit is None:
            if not full:
                p.update(tail)
                return p, sugar
            del p[t]
            tail[t] = c
            continue
        sh = mono_quot(t, hit.lmono)
        sugar = max(sugar, hit.sugar + sum(sh))
        for m, v in hit.terms.items():
            mm = mono_mul(m, sh)
            nv = F.sub(p.get(mm, F.zero), F.mul(c, v))
            if nv == F.zero:
                p.pop(mm, None)
            else:
                p[mm] = nv
    return tail, sugar


def _spoly(F, f, g):
    lcm = mono_lcm(f.lmono, g.lmono)
    shf = mono_quot(lcm, f.lmono)
    shg = mono_quot(lcm, g.lmono)
    d = {mono_mul(m, shf): v for m, v in f.terms.items()}
    for m, v in g.terms.items():
        mm = mono_mul(m, shg)
        nv = F.sub(d.get(mm, F.zero), v)
        if nv == F.zero:
            d.pop(mm, None)
        else:
            d[mm] = nv
    sugar = max(f.sugar + sum(shf), g.sugar + sum(shg))
    return d, sugar


def _buchberger(F, keyfn, gen_dicts, selection=None):
    """Reduced monic basis (list of term dicts, ascending leading key)."""
    selection = selection or SELECTION
    f = []          # all entries ever created
    G = set()       # indices of current basis entries
    P = set()       # pending pair indices (i, j), i < j

    def lms(i):
        return f[i].lmono

    def update(ih):
        # Gebauer-Moeller: prune new pairs against each other (chain
        # criterion), drop coprime-lead pairs (product criterion), prune the
        # old pair set, and evict basis leads the new lead divides.
        nonlocal P, G
        mh = lms(ih)
        cand = set(G)
        kept = set()
        while cand:
            ig = cand.pop()
            L = mono_lcm(mh, lms(ig))

            def dominated_by(ip):
                return mono_divides(mono_lcm(mh, lms(ip)), L)

            if mono_mul(mh, lms(ig)) == L or (
                    not any(dominated_by(ic) for ic in cand)
                    and not any(dominated_by(ik) for ik in kept)):
                kept.add(ig)
        new_pairs = {(min(ih, ig), max(ih, ig)) for ig in kept
                     if mono_mul(mh, lms(ig)) != mono_lcm(mh, lms(ig))}
        pruned = set()
        for i, j in P:
            L = mono_lcm(lms(i), lms(j))
            if (not mono_divides(mh, L)
                    or mono_lcm(lms(i), mh) == L
                    or mono_lcm(lms(j), mh) == L):
                pruned.add((i, j))
        P = pruned | new_pairs
        G = {ig for ig in G if not mono_divides(mh, lms(ig))}
        G.add(ih)

    def cur_basis():
        return [f[k] for k in sorted(G, key=lambda k: f[k].lkey)]

    for d in gen_dicts:
        if not d:
            continue
        entry = _GEntry(d, keyfn, max(sum(m) for m in d))
        red, sug = _reduce(F, keyfn, entry.terms, cur_basis(), False, entry.sugar)
        if red:
            lead = max(red, key=keyfn)
            f.append(_GEntry(_make_monic(F, red, lead), keyfn, sug))
            update(len(f) - 1)

    if selection == "sugar":
        def pair_key(ij):
            i, j = ij
            lcm = mono_lcm(lms(i), lms(j))
            sug = max(f[i].sugar + sum(mono_quot(lcm, lms(i))),
                      f[j].sugar + sum(mono_quot(lcm, lms(j))))
            return (sug, keyfn(lcm), i, j)
    else:
        def pair_key(ij):
            i, j = ij
            return (keyfn(mono_lcm(lms(i), lms(j))), i, j)

    while P:
        i, j = min(P, key=pair_key)
        P.discard((i, j))
        s, sug = _spoly(F, f[i], f[j])
        red, sug = _reduce(F, keyfn, s, cur_basis(), False, sug)
        if red:
            lead = max(red, key=keyfn)
            f.append(_GEntry(_make_monic(F, red, lead), keyfn, sug))
            update(len(f) - 1)

    # inter-reduce to the unique reduced basis
    idx = sorted(G, key=lambda k: f[k].lkey)
    out = []
    for i in idx:
        others = [f[j] for j in idx if j != i]
        red, _ = _reduce(F, keyfn, f[i].terms, others, True)
        if red:
            lead = max(red, key=keyfn)
            out.append(_make_monic(F, red, lead))
    out.sort(key=lambda d: keyfn(max(d, key=keyfn)))
    return out


# ---------------------------------------------------------------------------
# public basis/normal-form interface on polyring types

def groebner_basis(ideal, order=GREVLEX):
    """Reduced Groebner basis of (relations + generators), cached per order.

    The unit ideal yields [1].  The fill is idempotent, so a concurrent
    recomputation would store an identical tuple.
    """
    ck = order.cache_key()
    cached = ideal._basis_cache.get(ck)
    if cached is None:
        ring = ideal.ring
        gens = [g.terms for g in ideal.gens] + [r.terms for r in ring.relations]
        raw = _buchberger(ring.field, order.key, gens)
        cached = tuple(Polynomial(ring, d) for d in raw)
        ideal._basis_cache[ck] = cached
    return list(cached)


def normal_form(f, ideal, order=GREVLEX):
    basis = groebner_basis(ideal, order)
    entries = [_GEntry(g.terms, order.key, g.degree()) for g in basis]
    red, _ = _reduce(ideal.ring.field, order.key, f.terms, entries, True)
    return Polynomial(ideal.ring, red)


def is_member(f, ideal, order=GREVLEX):
    return normal_form(f, ideal, order).is_zero()


def ideal_equals(I, J):
    bi = groebner_basis(I)
    bj = groebner_basis(J)
    return ([g.canonical_key() for g in bi] == [g.canonical_key() for g in bj])


def ideal_contains(I, J):
    """True when J is a subset of I (generator-wise membership)."""
    return all(is_member(g, I) for g in J.gens)


# ---------------------------------------------------------------------------
# staircases, colengths, dimension

@dataclass
class Staircase:
    """Minimal leading monomials of an ideal and the standard-monomial count.

    count is None exactly when the quotient is infinite-dimensional, i.e.
    when some variable has no pure power among the generators.
    """
    ring: PresentedRing
    generators: tuple
    count: object  # big int, or None for infinite

    @property
    def is_finite(self):
        return self.count is not None


def minimalize_monomials(monos):
    """Drop monomials divisible by another; sort for determinism."""
    out = []
    for m in sorted(set(monos), key=lambda m: (sum(m), m)):
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


def _count_inclusion_exclusion(gens, box):
    """Standard monomials under the pure-power box via inclusion-exclusion.

    Subsets whose lcm already escapes the box contribute 0, as does every
    superset, so the recursion prunes on a zero factor.
    """
    n = len(box)
    k = len(gens)

    def vol(lcm):
        v = 1
        for i in range(n):
            side = box[i] - lcm[i]
            if side <= 0:
                return 0
            v *= side
        return v

    def rec(start, lcm, sign):
        v = vol(lcm)
        if v == 0:
            # every superset only grows the lcm, so the whole subtree is zero
            return 0
        total = sign * v
        for j in range(start, k):
            total += rec(j + 1, mono_lcm(lcm, gens[j]), -sign)
        return total

    return rec(0, (0,) * n, 1)


def _count_sweep(gens, nv):
    """Recursive last-coordinate sweep; None signals an infinite staircase."""
    if any(all(e == 0 for e in g) for g in gens):
        return 0
    if nv == 0:
        if not gens:
            return None
        return min(g[0] for g in gens)
    vals = sorted({g[nv] for g in gens} | {0})
    total = 0
    for a, b in zip(vals, vals[1:] + [None]):
        sect = minimalize_monomials([g[:nv] for g in gens if g[nv] <= a])
        c = _count_sweep(sect, nv - 1)
        if b is None:
            if c != 0:
                return None
        else:
            if c is None:
                return None
            total += c * (b - a)
    return total


def count_standard_monomials(leads, nvars):
    """Number of monomials outside the monomial ideal; None if infinite."""
    gens = minimalize_monomials(leads)
    if not gens:
        return None if nvars > 0 else 1
    if any(all(e == 0 for e in g) for g in gens):
        return 0
    # the staircase is finite iff every variable has a pure power
    box = [None] * nvars
    for g in gens:
        support = [i for i, e in enumerate(g) if e]
        if len(support) == 1:
            i = support[0]
            if box[i] is None or g[i] < box[i]:
                box[i] = g[i]
    if any(b is None for b in box):
        return None
    if len(gens) <= 20:
        return _count_inclusion_exclusion(gens, box)
    return _count_sweep(gens, nvars - 1)


def staircase(ideal, order=GREVLEX):
    basis = groebner_basis(ideal, order)
    leads = minimalize_monomials([g.leading_monomial(order) for g in basis])
    return Staircase(ideal.ring, tuple(leads),
                     count_standard_monomials(leads, ideal.ring.nvars))


def colength(ideal):
    """dim_k of the quotient by (relations + generators); None if infinite."""
    return staircase(ideal).count


def staircase_dimension(leads, nvars):
    """Krull dimension of the quotient by a monomial ideal: the largest
    coordinate subspace meeting the staircase in a full lattice cone."""
    gens = minimalize_monomials(leads)
    if any(all(e == 0 for e in g) for g in gens):
        return -1
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    for d in range(nvars, -1, -1):
        for U in combinations(range(nvars), d):
            su = set(U)
            if not any(s <= su for s in supports):
                return d
    return 0


def ideal_dimension(ideal):
    basis = groebner_basis(ideal)
    leads = [g.leading_monomial() for g in basis]
    return staircase_dimension(leads, ideal.ring.nvars)


# ---------------------------------------------------------------------------
# intersection, colon, saturation

def _fresh_name(names):
    cand = "w"
    n = 0
    while cand in names:
        n += 1
        cand = "w%d" % n
    return cand


def _eliminate_first(ring_ext, gens_ext):
    """Groebner basis of the input under block(1), keeping w-free elements."""
    order = MonomialOrder("block", 1)
    raw = _buchberger(ring_ext.field, order.key, [g.terms for g in gens_ext])
    out = []
    for d in raw:
        if all(m[0] == 0 for m in d):
            out.append({m[1:]: c for m, c in d.items()})
    return out


def ideal_intersection(I, J):
    """I cap J via the single-auxiliary-variable elimination trick."""
    ring = I.ring
    if J.ring != ring:
        raise RingError("intersection: ambient ring mismatch")
    ext = PresentedRing(ring.field, (_fresh_name(ring.varnames),) + ring.varnames)
    w = ext.var(0)
    one_minus_w = ext.one - w

    def lift(p):
        return Polynomial(ext, {(0,) + m: c for m, c in p.terms.items()})

    gens_ext = [w * lift(g) for g in list(I.gens) + list(ring.relations)]
    gens_ext += [one_minus_w * lift(g) for g in list(J.gens) + list(ring.relations)]
    cut = _eliminate_first(ext, gens_ext)
    out = Ideal(ring, [Polynomial(ring, d) for d in cut])
    return _canonicalize(out)


def _exact_div(num_terms, den_terms, F, keyfn):
    """Quotient of a known multiple; raises if the division leaves a remainder."""
    p = dict(num_terms)
    dl = max(den_terms, key=keyfn)
    dc = den_terms[dl]
    quo = {}
    while p:
        t = max(p, key=keyfn)
        if not mono_divides(dl, t):
            raise RingError("exact division left a remainder")
        sh = mono_quot(t, dl)
        c = F.mul(p[t], F.inv(dc))
        quo[sh] = c
        for m, v in den_terms.items():
            mm = mono_mul(m, sh)
            nv = F.sub(p.get(mm, F.zero), F.mul(c, v))
            if nv == F.zero:
                p.pop(mm, None)
            else:
                p[mm] = nv
    return quo


def ideal_colon(I, f):
    """(I : f) = (1/f)(I cap (f)) computed by elimination in the ambient ring."""
    ring = I.ring
    if isinstance(f, str):
        f = ring.parse(f)
    if f.is_zero():
        raise RingError("colon by the zero element")
    if f.constant_value() is not None:
        return _canonicalize(Ideal(ring, list(I.gens)))
    ext = PresentedRing(ring.field, (_fresh_name(ring.varnames),) + ring.varnames)
    w = ext.var(0)
    one_minus_w = ext.one - w

    def lift(p):
        return Polynomial(ext, {(0,) + m: c for m, c in p.terms.items()})

    gens_ext = [w * lift(g) for g in list(I.gens) + list(ring.relations)]
    gens_ext.append(one_minus_w * lift(f))
    cut = _eliminate_first(ext, gens_ext)
    F, keyfn = ring.field, GREVLEX.key
    quots = [Polynomial(ring, _exact_div(d, f.terms, F, keyfn)) for d in cut]
    return _canonicalize(Ideal(ring, quots))


def ideal_colon_ideal(I, J):
    """(I : J) as the intersection of the generator-wise colons."""
    gens = [g for g in J.gens if not g.is_zero()]
    if not gens:
        return _canonicalize(Ideal(I.ring, [I.ring.one]))
    result = ideal_colon(I, gens[0])
    for g in gens[1:]:
        result = ideal_intersection(result, ideal_colon(I, g))
    return result


def saturate(I, J):
    """Stable value of the chain I : J \\subseteq I : J^2 \\subseteq ...

    Each step colons the previous result by J; the chain is stable when two
    successive reduced bases agree.
    """
    current = _canonicalize(Ideal(I.ring, list(I.gens)))
    while True:
        nxt = ideal_colon_ideal(current, J)
        if _basis_keys(nxt) == _basis_keys(current):
            return current
        current = nxt


def _basis_keys(I):
    return [g.canonical_key() for g in groebner_basis(I)]


def _canonicalize(I):
    """Rewrite an ideal on its reduced basis (deterministic generators)."""
    basis = groebner_basis(I)
    out = Ideal(I.ring, basis)
    out._basis_cache[GREVLEX.cache_key()] = tuple(basis)
    return out
