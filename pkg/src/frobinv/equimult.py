"""Equimultiplicity diagnostics along dimension-one primes.

The localization R -> R_p is realized for primes p with R/p isomorphic to
k[t] for one distinguished variable t: the fiber presentation re-reads the
relations over the rational-function field k(t), moving t into the
coefficients.  Hilbert-Kunz data of the localization is then an ordinary
colength computation over k(t), and substituting t -> alpha recovers the
presentation at the maximal ideal (p, t - alpha) exactly.

On top of the fiber sit the diagnostics: the saturation/tight-closure
necessary condition for equimultiplicity, the colength-identity residual
table, the rigidity identity l(R/m^{[q]}) = q^{dim R/p} l_fiber(p^{[q]}),
filtration-hypothesis checks, and the quartic-family reproduction drivers.

Tight closure enters only through semidecisions; every verdict records the
multiplier used and the warranties (test element, formal unmixedness) it is
conditional on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeff import (PrimeField, ExtensionField, RationalFunctionField,
                    FieldElement)
from .polyring import Polynomial, Ideal, ring_make
from . import groebner, frobenius, invariants


class EquimultError(ValueError):
    pass


WARRANTY = ("conditional on the supplied multiplier being a test element "
            "and the ring being formally unmixed; neither is verified")


# ---------------------------------------------------------------------------
# fiber presentation

@dataclass
class FiberPresentation:
    """R localized at a prime p with R/p = k[t], presented over k(t)."""
    ring: object          # the original presented ring
    prime: object         # the prime ideal p
    t_index: int          # index of the distinguished variable in ring
    t_name: str
    fiber_ring: object    # same relations over k(t), t moved to coefficients

    def map_poly(self, f):
        """Push a polynomial of R into the fiber ring."""
        fr = self.fiber_ring
        K = fr.field
        base = K.base
        j = self.t_index
        out = {}
        for m, c in f.terms.items():
            k = m[j]
            mm = m[:j] + m[j + 1:]
            num = (base.zero,) * k + (c,)
            payload = K.make(num, (base.one,))
            out[mm] = K.add(out.get(mm, K.zero), payload)
        return Polynomial(fr, out)

    def map_ideal(self, I):
        return Ideal(self.fiber_ring, [self.map_poly(g) for g in I.gens])

    def specialize(self, alpha):
        """Substitute t -> alpha in the fiber presentation: the ring at the
        maximal ideal (p, t - alpha), presented over the finite field."""
        K = self.fiber_ring.field
        base = K.base
        if isinstance(alpha, int):
            alpha = FieldElement(base, base.from_int(alpha))
        if alpha.spec != base:
            raise EquimultError("specialization point must lie in %r" % base)

        def ev(upoly):
            acc = base.zero
            for c in reversed(upoly):
                acc = base.add(base.mul(acc, alpha.payload), c)
            return acc

        rels = []
        for r in self.fiber_ring.relations:
            terms = {}
            for m, (num, den) in r.terms.items():
                dv = ev(den)
                if dv == base.zero:
                    raise EquimultError("denominator vanishes at the "
                                        "specialization point")
                c = base.mul(ev(num), base.inv(dv))
                if c != base.zero:
                    terms[m] = c
            rels.append(terms)
        out = ring_make(base, self.fiber_ring.varnames)
        rel_polys = [Polynomial(out, t) for t in rels]
        return ring_make(base, self.fiber_ring.varnames,
                         relations=[r for r in rel_polys if not r.is_zero()])


def fiber_presentation(prime, t_name=None):
    """Build the k(t)-fiber at a prime with R/p = k[t].

    The shape check: the reduced basis of p (with the relations) must have
    degree-one leading terms covering every variable except one survivor.
    """
    ring = prime.ring
    if not isinstance(ring.field, (PrimeField, ExtensionField)):
        raise EquimultError("fiber presentations need a finite coefficient field")
    basis = groebner.groebner_basis(prime)
    lead_vars = set()
    for g in basis:
        lm = g.leading_monomial()
        if sum(lm) != 1:
            raise EquimultError("prime is not in the supported shape: "
                                "leading term %s is not a single variable"
                                % str(g))
        lead_vars.add(lm.index(1))
    survivors = [i for i in range(ring.nvars) if i not in lead_vars]
    if len(survivors) != 1:
        raise EquimultError("prime does not leave exactly one free variable")
    j = survivors[0]
    if t_name is not None and ring.varnames[j] != t_name:
        raise EquimultError("designated variable %r does not survive; %r does"
                            % (t_name, ring.varnames[j]))
    name = ring.varnames[j]
    K = RationalFunctionField(ring.field, name)
    varnames = ring.varnames[:j] + ring.varnames[j + 1:]
    shell = ring_make(K, varnames)
    fp = FiberPresentation(ring, prime, j, name, shell)
    rels = [fp.map_poly(r) for r in ring.relations]
    rels = [r for r in rels if not r.is_zero()]
    if rels:
        fp.fiber_ring = ring_make(K, varnames, relations=rels)
    return fp


def localized_hk(prime, e, fiber=None):
    """l over k(t) of the image of p^{[p^e]} in the fiber presentation."""
    fp = fiber or fiber_presentation(prime)
    image = fp.map_ideal(frobenius.frobenius_power(prime, e))
    c = groebner.colength(image)
    if c is None:
        raise EquimultError("fiber colength is infinite; prime not m-primary "
                            "in the fiber")
    return c


def localized_hk_report(prime, e_max, fiber=None, jobs=1):
    """HK rows of the localization, normalized by q^{dim R - 1}."""
    fp = fiber or fiber_presentation(prime)
    image = fp.map_ideal(prime)
    return invariants.ehk_estimate(image, e_max, jobs=jobs)


# ---------------------------------------------------------------------------
# colength identity, rigidity

@dataclass
class ColengthIdentityReport:
    prime: object
    parameter: object
    hs_factor: int      # e(x on R/p)
    rows: list          # (e, q, l(R/(p^[q]+xR)), hs_factor * l_fiber, residual)
    all_zero: bool


def colength_identity_check(prime, x, e_max, fiber=None):
    """Residuals l(R/(p^{[q]} + xR)) - e(x on R/p) * l_fiber(p^{[q]}).

    The identity with tight closures in place of p^{[q]} characterizes
    equimultiplicity; the computable surrogate reported here differs from it
    by the colength gap of the tight closure, so zero residuals are strong
    evidence and positive residuals are what failure looks like.
    """
    ring = prime.ring
    if isinstance(x, str):
        x = ring.parse(x)
    fp = fiber or fiber_presentation(prime)
    quotient = ring_make(ring.field, ring.varnames,
                         relations=[str(r) for r in ring.relations]
                         + [str(g) for g in prime.gens])
    hs = invariants.hs_multiplicity(quotient, str(x))
    rows = []
    for e in range(1, e_max + 1):
        q = ring.field.p ** e
        pq = frobenius.frobenius_power(prime, e)
        lhs = groebner.colength(Ideal(ring, list(pq.gens) + [x]))
        if lhs is None:
            raise EquimultError("(p^[q], x) is not origin-primary")
        rhs = hs.multiplicity * localized_hk(prime, e, fiber=fp)
        rows.append((e, q, lhs, rhs, lhs - rhs))
    return ColengthIdentityReport(prime, x, hs.multiplicity, rows,
                                  all(r[4] == 0 for r in rows))


@dataclass
class RigidityReport:
    prime: object
    rows: list          # (e, q, l(R/m^[q]), q^{dim R/p} * l_fiber, ok)
    all_pass: bool


def rigidity_check(prime, e_max, fiber=None):
    """Check l(R/m^{[q]}) = q^{dim R/p} * l_fiber(p^{[q]}) for e <= e_max.

    Under a weak F-regularity warranty the identity holds iff the numbers of
    minimal generators of F_*^e R and F_*^e R_p agree; a failing row
    certifies (conditionally) that the HK multiplicities differ.
    """
    ring = prime.ring
    fp = fiber or fiber_presentation(prime)
    dimq = groebner.ideal_dimension(prime)
    m = ring.origin_ideal()
    rows = []
    for e in range(1, e_max + 1):
        q = ring.field.p ** e
        lhs = invariants.hk_function(m, e)
        rhs = q ** dimq * localized_hk(prime, e, fiber=fp)
        rows.append((e, q, lhs, rhs, lhs == rhs))
    return RigidityReport(prime, rows, all(r[4] for r in rows))


# ---------------------------------------------------------------------------
# the equimultiplicity necessary condition

@dataclass
class EquimultVerdict:
    prime: object
    status: str            # consistent | violates-necessary-condition | inconclusive
    witness: object        # (e, polynomial) for a violation, else None
    records: list          # (e, [(z, fclosure verdict, tc verdict), ...])
    residuals: object      # ColengthIdentityReport or None
    warranty: str


def equimult_check(prime, c=None, e_max=3, tc_e_max=2):
    """Test the necessary condition: saturation adds nothing to p^{[q]}
    beyond its tight closure.

    For each e the saturation S_e = (p^{[q]} : m^infty) is computed; every
    reduced-basis element outside p^{[q]} is screened by Frobenius-closure
    and (when a multiplier is supplied) tight-closure membership in p^{[q]}.
    A certified non-member violates the necessary condition for
    equimultiplicity -- conditionally on the multiplier being a test element.
    """
    ring = prime.ring
    if groebner.ideal_dimension(prime) != 1:
        raise EquimultError("equimultiplicity check needs dim R/p = 1")
    if isinstance(c, str):
        c = ring.parse(c)
    m = ring.origin_ideal()
    records = []
    status = "consistent"
    witness = None
    undecided = False
    for e in range(1, e_max + 1):
        pq = frobenius.frobenius_power(prime, e)
        sat = groebner.saturate(pq, m)
        found = []
        for z in groebner.groebner_basis(sat):
            if groebner.is_member(z, pq):
                continue
            fcl = frobenius.frobenius_closure_membership(z, pq, tc_e_max)
            tc = None
            if c is not None:
                tc = frobenius.tc_membership(z, pq, c, tc_e_max)
            found.append((z, fcl, tc))
            if tc is not None and tc.status == "non-member":
                status = "violates-necessary-condition"
                if witness is None:
                    witness = (e, z)
            elif fcl.status != "definitive-member" and tc is None:
                undecided = True
        records.append((e, found))
    if status == "consistent" and undecided:
        status = "inconclusive"
    residuals = None
    try:
        fp = fiber_presentation(prime)
        t = ring.var(fp.t_index)
        residuals = colength_identity_check(prime, t, e_max, fiber=fp)
    except (EquimultError, invariants.InvariantError):
        pass
    return EquimultVerdict(prime, status, witness, records, residuals, WARRANTY)


# ---------------------------------------------------------------------------
# filtration hypotheses

@dataclass
class FiltrationReport:
    hypotheses_ok: bool
    failures: list       # strings describing failed containments
    rows: list           # (e, q, norm l(R/L_e), norm l(R/I^[q]), gap)
    trends_match: bool
    spot_checks: list    # (e, generator, ClosureVerdict) when c supplied


def filtration_check(I, seq, c=None, tc_e_max=2):
    """Verify the filtration hypotheses I^{[q]} subset L_e and
    L_e^{[p]} subset L_{e+1}, and compare normalized colength trends.

    Matching trends (final gap below 1/q_max -- a heuristic at the 1/q
    scale used throughout) plus the hypotheses constitute evidence for the
    containment of the L_e in the tight closure of I^{[q]}.
    """
    ring = I.ring
    p = ring.field.p
    d = ring.dim
    if isinstance(c, str):
        c = ring.parse(c)
    failures = []
    for idx, L in enumerate(seq, start=1):
        bracket = frobenius.frobenius_power(I, idx)
        if not groebner.ideal_contains(L, bracket):
            failures.append("I^[p^%d] is not inside L_%d" % (idx, idx))
    for idx in range(1, len(seq)):
        if not groebner.ideal_contains(seq[idx],
                                       frobenius.frobenius_power(seq[idx - 1], 1)):
            failures.append("L_%d^[p] is not inside L_%d" % (idx, idx + 1))
    rows = []
    for idx, L in enumerate(seq, start=1):
        q = p ** idx
        cl = groebner.colength(L)
        ci = invariants.hk_function(I, idx)
        if cl is None:
            raise EquimultError("L_%d has infinite colength" % idx)
        rows.append((idx, q, Fraction(cl, q ** d), Fraction(ci, q ** d),
                     abs(Fraction(cl, q ** d) - Fraction(ci, q ** d))))
    qmax = p ** len(seq)
    trends = bool(rows) and rows[-1][4] <= Fraction(1, qmax)
    spots = []
    if c is not None:
        for idx, L in enumerate(seq, start=1):
            bracket = frobenius.frobenius_power(I, idx)
            for z in L.gens:
                spots.append((idx, z,
                              frobenius.tc_membership(z, bracket, c, tc_e_max)))
    return FiltrationReport(not failures, failures, rows, trends, spots)


# ---------------------------------------------------------------------------
# quartic family drivers

QUARTIC_BODY = "z^4+x*y*z^2+(x^3+y^3)*z"
QUARTIC_PRODUCT_ZERO = "z*(x+y+z)*((x+y+z)^2+z*y)"


def quartic_ring(alpha):
    """Q_alpha = K[x,y,z]/(z^4+xyz^2+(x^3+y^3)z + alpha x^2 y^2) for a field
    element alpha, over alpha's own field."""
    K = alpha.spec
    shell = ring_make(K, ("x", "y", "z"))
    rel = shell.parse(QUARTIC_BODY) + shell.const(alpha) * shell.parse("x^2*y^2")
    return ring_make(K, ("x", "y", "z"), relations=[rel])


@dataclass
class MonskyRepro:
    alpha_spec: str
    ring: object
    report: object       # HKReport
    target: Fraction
    within: Fraction     # |estimate - target|


def monsky_repro(alpha_spec, e_max, lam_modulus=(1, 1, 1), jobs=1):
    """Reproduce the quartic family limits.

    alpha_spec selects the coefficient:
      "zero"          -- the split quartic z(x+y+z)((x+y+z)^2+zy); target 7/2.
      "algebraic"     -- alpha = lam^2 + lam for lam = the generator of
                         F_2[a]/(lam_modulus); target 3 + 4^{-m} with
                         m the degree of the modulus.
      "transcendental"-- alpha = t over F_2(t); target 3.
    """
    if alpha_spec == "zero":
        ring = ring_make(PrimeField(2), ("x", "y", "z"),
                         relations=[QUARTIC_PRODUCT_ZERO])
        target = Fraction(7, 2)
    elif alpha_spec == "algebraic":
        K = ExtensionField(2, lam_modulus)
        lam = FieldElement(K, K._fix((0, 1)))
        alpha = lam * lam + lam
        if not alpha:
            raise EquimultError("lam^2 + lam vanished; modulus does not give "
                                "an algebraic quartic")
        ring = quartic_ring(alpha)
        target = 3 + Fraction(1, 4 ** K.degree)
    elif alpha_spec == "transcendental":
        K = RationalFunctionField(PrimeField(2), "t")
        alpha = FieldElement(K, K.param_element())
        ring = quartic_ring(alpha)
        target = Fraction(3)
    else:
        raise EquimultError("alpha_spec must be zero | algebraic | transcendental")
    report = invariants.ehk_estimate(ring.origin_ideal(), e_max, jobs=jobs)
    return MonskyRepro(alpha_spec, ring, report,
                       target, abs(report.estimate - target))


def brenner_monsky_ring(field=None):
    """K[x,y,z,t]/(z^4 + xyz^2 + (x^3+y^3)z + t x^2 y^2), K finite."""
    K = field or ExtensionField(2, (1, 1, 1))
    if K.p != 2:
        raise EquimultError("the quartic family lives in characteristic 2")
    return ring_make(K, ("x", "y", "z", "t"),
                     relations=[QUARTIC_BODY + "+t*x^2*y^2"])


def bm_maximal_ideal(ring, alpha):
    """m_alpha = (x, y, z, t - alpha)."""
    if isinstance(alpha, int):
        alpha = FieldElement(ring.field, ring.field.from_int(alpha))
    t = ring.var(3)
    return Ideal(ring, [ring.var(0), ring.var(1), ring.var(2),
                        t - ring.const(alpha)])


@dataclass
class BMGapReport:
    ring: object
    fiber_rows: list     # (e, q, l_fiber, Fraction l_fiber/q^2)
    alpha_rows: dict     # alpha string -> [(e, q, l, Fraction l/q^3, gap)]
    min_gap: Fraction


def bm_gap_table(alphas, e_min=2, e_max=4, field=None, jobs=1):
    """Normalized HK at each m_alpha against the localized rows at
    p = (x,y,z): gap_e = l(R/m_alpha^{[q]})/q^3 - l_fiber(p^{[q]})/q^2."""
    ring = brenner_monsky_ring(field)
    prime = Ideal(ring, [ring.var(0), ring.var(1), ring.var(2)])
    fp = fiber_presentation(prime)
    fiber_rows = []
    fib = {}
    for e in range(e_min, e_max + 1):
        q = 2 ** e
        ell = localized_hk(prime, e, fiber=fp)
        fib[e] = Fraction(ell, q ** 2)
        fiber_rows.append((e, q, ell, fib[e]))
    ideals = [bm_maximal_ideal(ring, alpha) for alpha in alphas]
    es = list(range(e_min, e_max + 1))
    cells = [(m_alpha, e) for m_alpha in ideals for e in es]
    lengths = invariants._sweep(cells, jobs)
    alpha_rows = {}
    min_gap = None
    i = 0
    for m_alpha in ideals:
        rows = []
        for e in es:
            q = 2 ** e
            ell = lengths[i]
            i += 1
            norm = Fraction(ell, q ** 3)
            gap = norm - fib[e]
            rows.append((e, q, ell, norm, gap))
            min_gap = gap if min_gap is None else min(min_gap, gap)
        alpha_rows[str(m_alpha.gens[3])] = rows
    return BMGapReport(ring, fiber_rows, alpha_rows, min_gap)


@dataclass
class SpecializationReport:
    alpha: object
    relation_match: bool
    rows: list           # (e, q, l_specialized, l_direct, equal)
    all_equal: bool


def specialization_consistency(alpha, e_max, field=None):
    """Substituting t -> alpha into the fiber presentation must reproduce,
    exactly, the ring obtained by writing alpha into the quartic directly."""
    ring = brenner_monsky_ring(field)
    K = ring.field
    if isinstance(alpha, int):
        alpha = FieldElement(K, K.from_int(alpha))
    prime = Ideal(ring, [ring.var(0), ring.var(1), ring.var(2)])
    fp = fiber_presentation(prime)
    specialized = fp.specialize(alpha)
    direct = quartic_ring(alpha)
    rel_match = ([r.canonical_key() for r in specialized.relations]
                 == [r.canonical_key() for r in direct.relations])
    rows = []
    for e in range(1, e_max + 1):
        q = 2 ** e
        a = invariants.hk_function(specialized.origin_ideal(), e)
        b = invariants.hk_function(direct.origin_ideal(), e)
        rows.append((e, q, a, b, a == b))
    return SpecializationReport(alpha, rel_match, rows,
                                rel_match and all(r[4] for r in rows))


# ---------------------------------------------------------------------------
# the Watanabe-Yoshida style comparison

@dataclass
class WYReport:
    rows: list           # (e, q, lhs, rhs, ok)
    derived: tuple       # (p^d, l(R/m^[p]), ok)
    all_pass: bool


def wy_inequality_check(I, e_max):
    """Row-wise check of l(R/I^{[q]}) >= l(m^{[p][q]}/I^{[q]}) + p^d q^d.

    Both sides are assembled from exact colengths; since
    l(R/I^{[q]}) = l(m^{[p][q]}/I^{[q]}) + l(R/m^{[p q]}), each row reduces
    to the Kunz-type bound l(R/m^{[pq]}) >= (pq)^d, and the derived pair
    compares p^d with l(R/m^{[p]}).
    """
    ring = I.ring
    p = ring.field.p
    d = ring.dim
    m = ring.origin_ideal()
    mp = frobenius.frobenius_power(m, 1)
    if not groebner.ideal_contains(mp, I):
        raise EquimultError("wy check needs I inside m^{[p]}")
    rows = []
    for e in range(1, e_max + 1):
        q = p ** e
        iq = invariants.hk_function(I, e)
        mpq = invariants.hk_function(m, e + 1)
        lhs = (iq - mpq) + (p ** d) * (q ** d)
        rows.append((e, q, lhs, iq, iq >= lhs))
    mp_len = groebner.colength(mp)
    derived = (p ** d, mp_len, mp_len >= p ** d)
    return WYReport(rows, derived, derived[2] and all(r[4] for r in rows))
