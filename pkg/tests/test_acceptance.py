"""The nine acceptance criteria, each reported as one PASS/FAIL line."""

import time
from collections import Counter
from fractions import Fraction as F

import pytest

from conftest import ACCEPTANCE_LINES
from tricosine.cocycle import ModuleAction, h1_dim, kernel, noninner_cocycles
from tricosine.forge import catalog, diagonal, nsc, optimism
from tricosine.forge.search import SearchConfig, nsc_subgroup_generators, procedure51_search
from tricosine.gf2 import Quotient
from tricosine.mono import (MonoElt, exponent, gl_generators, is_abelian, orbit_signs,
                            perm_closure, perm_compose)
from tricosine.rm import anchor_words, build_rm, clean_weights, coset_clean_count, defect
from tricosine.spherecode import (association_scheme_check, binary_automorphism_group,
                                  cosine_set, distance_distribution,
                                  min_distance, nonlinearity_witness, reduced_cosines)

QUARTER = [F(-1, 4), F(0), F(1, 4)]


class Criterion:
    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.failures: list[str] = []

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def expect(self, cond, what: str) -> None:
        if not cond:
            self.failures.append(what)

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        if exc is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        if elapsed > self.limit:
            self.failures.append(f"took {elapsed:.1f}s > {self.limit:.0f}s")
        status = "FAIL" if self.failures else "PASS"
        line = f"{status} criterion {self.number}: {self.title} ({elapsed:.1f}s)"
        if self.failures:
            line += " -- " + "; ".join(self.failures)
        ACCEPTANCE_LINES.append(line)
        print(line)
        if exc is None:
            assert not self.failures, line
        return False


def test_criterion_1_reed_muller():
    with Criterion(1, "Reed-Muller dimension, weight law, clean counts, coset defects", 1) as c:
        rm2, rm1 = build_rm(2, 4), build_rm(1, 4)
        c.expect(rm2.dim == 11 and len(rm2) == 2048, "RM(2,4) size")
        anchor = anchor_words(4)
        for a in rm2:
            k = defect(rm2, a)
            if k.k == 0:
                continue
            w = a.bit_count()
            if (k.clean and w not in clean_weights(4, k.k)) or (not k.clean and w != 8):
                c.expect(False, f"weight law at {a:#06x}")
            if coset_clean_count(rm2, a, anchor) != 4 ** k.k:
                c.expect(False, f"clean count at {a:#06x}")
        reps = [r for r in Quotient(rm2.space, rm1.space).reps() if r]
        counts = Counter(defect(rm2, r).k for r in reps)
        c.expect(counts == {1: 35, 2: 28}, f"coset defect counts {dict(counts)}")


def _is_abelian_perms(elems):
    return all(perm_compose(a, b) == perm_compose(b, a) for a in elems for b in elems)


def test_criterion_2_cohomology():
    with Criterion(2, "Z1/H1 dimensions and noninner kernels", 60) as c:
        m3 = ModuleAction.linear(gl_generators(3), 3)
        c.expect(m3.z1_space().dim == 4 and h1_dim(m3) == 1, "GL(3,2) std dims")
        for _, f in noninner_cocycles(m3):
            ker = kernel(f)
            c.expect(len(ker) == 21 and not _is_abelian_perms(ker), "kernel 7:3")
        m6 = optimism.gl42_action()
        c.expect(h1_dim(m6) == 1, "GL(4,2) on M6: H1")
        orders = Counter(f.kernel_order() for _, f in noninner_cocycles(m6))
        c.expect(orders[2520] == 8, f"noninner kernel orders {dict(orders)}")


def test_criterion_3_optimism():
    with Criterion(3, "Optimism Code and the (16,256,6) code", 60) as c:
        rep = optimism.build_optigroup()
        oc = optimism.build_opticode()
        c.expect(len(oc) == 256, "|OC|")
        c.expect(cosine_set(oc) == [F(-1), F(-1, 4), F(0), F(1, 4)], "cosines")
        c.expect({w.bit_count() for w in rep.orbit} <= {0, 6, 8, 10, 16}, "weights")
        c.expect(rep.stabilizer_order == 40320 and rep.order == 256 * 40320, "stabilizer")
        b = optimism.build_bc16()
        c.expect(min_distance(b) == 6, "min distance")
        expected = {0: 1, 6: 112, 8: 30, 10: 112, 16: 1}
        c.expect(all(distance_distribution(b, w) == expected for w in b.words),
                 "distance distribution from every word")
        c.expect(nonlinearity_witness(b) is not None, "nonlinearity witness")
        h = nsc.build_h_and_nsc_family(materialize_x=False)
        c.expect(nsc.opticode_alternate_route(h.orbit) == set(rep.orbit), "alternate route")


def test_criterion_4_automorphisms():
    with Criterion(4, "binary automorphism group 2^4:Alt7", 600) as c:
        b = optimism.build_bc16()
        aut = binary_automorphism_group(b)
        c.expect(aut.order == 40320, f"order {aut.order}")
        elems = set(aut.elements)
        stab = optimism.stabilizer_generators()
        c.expect(all(g in elems for g in stab), "known 2^4:Alt7 generators")
        c.expect(len(perm_closure(stab)) == 40320, "known subgroup order")


def test_criterion_5_nsc_family():
    with Criterion(5, "NSC family against the published table, with the NSC15 erratum flagged", 120) as c:
        rep = nsc.build_h_and_nsc_family(materialize_x=True)
        c.expect(rep.x_order == 645120 and rep.lazy_agrees, "X closure")
        codes = rep.codes
        c.expect(len(codes["NSC_16_64"]) == 64 and cosine_set(codes["NSC_16_64"]) == QUARTER, "NSC16,64")
        c.expect(len(codes["NSC_14_64"]) == 64 and
                 cosine_set(codes["NSC_14_64"]) == [F(-3, 7), F(-1, 7), F(1, 7)], "NSC14,64")
        c.expect(len(codes["NSC_16_128"]) == 128 and cosine_set(codes["NSC_16_128"]) == QUARTER,
                 "NSC16,128")
        formula = reduced_cosines(4, 2, 1)
        c.expect(formula == [F(-1, 3), F(-1, 15), F(1, 5)], "reduction formula")
        for name in ("NSC_15_64", "NSC_15_128"):
            c.expect(cosine_set(codes[name]) == formula, f"{name} cosines")
        table = {r.name: r.status for r in catalog.verify_table1().rows}
        c.expect(table["NSC_15_64"] == table["NSC_15_128"] == "MISMATCH-WITH-ERRATUM",
                 "erratum flag")
        c.expect(all(table[n] == "PASS" for n in ("NSC_16_64", "NSC_14_64", "NSC_16_128")),
                 "table rows")


def test_criterion_6_structure():
    with Criterion(6, "|H|, O2(H) = 4^3 regular, H* nonsplit over E", 120) as c:
        rep = nsc.build_h_and_nsc_family(materialize_x=False)
        c.expect(rep.H.order == 10752, "|H|")
        o2 = rep.o2
        c.expect(o2.order == 64 and is_abelian(o2) and exponent(o2) == 4, "O2(H) shape")
        c.expect(sorted(orbit_signs(0, o2.generators)) == sorted(rep.orbit) and
                 len(rep.orbit) == o2.order, "regular action")
        hs = nsc.build_h_star_gl32_route()
        f = nsc.frame()
        E = [MonoElt.diag(e, 16) for e in f.E]
        res = nsc.nonsplit_complement_search(E, hs.generators[len(f.E.basis):], 168)
        c.expect(not res.split and res.tried == 64, f"split={res.split} tried={res.tried}")


def test_criterion_7_diagonal_codes():
    with Criterion(7, "diagonal Mersenne codes", 120) as c:
        r3 = diagonal.build_dsc(3, 3)
        c.expect(len(r3.code) == 64 and cosine_set(r3.code) == [F(-1, 2), F(0), F(1, 2)]
                 and r3.both_signs, "d=m=3")
        reps5 = [diagonal.build_dsc(5, 5, i) for i in range(len(diagonal.constituents(5, 5)))]
        c.expect(len(reps5) == 2 and all(len(r.code) == 1024 and r.both_signs for r in reps5),
                 "two 1024-vector codes with both signs")
        cos = sorted(tuple(cosine_set(r.code)) for r in reps5)
        want = sorted([(F(-1, 2), F(0), F(1, 2)), tuple(QUARTER)])
        c.expect(cos == want, "d=m=5 cosine sets: got "
                 + " and ".join("{" + ", ".join(map(str, s)) + "}" for s in cos)
                 + "; no defect-1 constituent exists")
        proj = sorted(tuple(cosine_set(diagonal.dsc_projection(r))) for r in reps5)
        want_p = sorted([tuple(reduced_cosines(5, 1, 1)), tuple(reduced_cosines(5, 2, 1))])
        c.expect(proj == want_p, "d=5 projections: got "
                 + " and ".join("{" + ", ".join(map(str, s)) + "}" for s in proj))


test_criterion_7_diagonal_codes = pytest.mark.xfail(
    strict=True,
    reason="both g-irreducible constituents at d=m=5 have defect 2 (weights 12, 16, 20 only), "
           "so the {0, ±1/2} code and its {-17/31, -1/31, 15/31} projection cannot arise",
)(test_criterion_7_diagonal_codes)


def test_criterion_7_reachable_parts():
    """Everything in the diagonal-code criterion that the construction can produce."""
    r3 = diagonal.build_dsc(3, 3)
    assert len(r3.code) == 64 and cosine_set(r3.code) == [F(-1, 2), F(0), F(1, 2)]
    for i in range(2):
        r = diagonal.build_dsc(5, 5, i)
        assert len(r.code) == 1024 and r.both_signs and cosine_set(r.code) == QUARTER
        assert cosine_set(diagonal.dsc_projection(r)) == [F(-9, 31), F(-1, 31), F(7, 31)]


def _orbit_ok(signs, n, h, antipodal_ok):
    from tricosine import kernels
    ips = {n - 2 * w for w in kernels.xor_weight_hist(list(signs))}
    allowed = {0, h, -h} | ({-n} if antipodal_ok else set())
    return ips <= allowed


def test_criterion_8_unidefect_property():
    with Criterion(8, "orbit inner products and orbit lengths of unidefect groups", 120) as c:
        og = optimism.build_optigroup()
        nd = og.near
        c.expect(_orbit_ok(og.orbit, 16, 4, True), "Optimism orbit inner products")
        c.expect(len(og.orbit) == og.group.predicted_orbit == 32 * nd.domain_order // nd.kernel_order,
                 "Optimism orbit length")
        # H: lower group E01, Q = the 1344 linear maps fixing ω1
        h = nsc.build_h_and_nsc_family(materialize_x=False)
        f = nsc.frame()
        p01 = perm_closure(f.P01_gens)
        ker = sum(1 for p in p01 if og.cocycle(p) == 0)
        c.expect(_orbit_ok(h.orbit, 16, 4, False), "H orbit inner products")
        c.expect(len(h.orbit) == 8 * len(p01) // ker, "H orbit length")
        hs = nsc.build_h_star_gl32_route()
        for cand in hs.candidates:
            gens = f.sign_gens(f.E) + [MonoElt(hs.quotient.lift(v), s)
                                       for v, s in zip(cand.full.gen_values(), f.Q_gens)]
            orb = orbit_signs(0, gens)
            c.expect(_orbit_ok(orb, 16, 4, False), "H* orbit inner products")
            kern = cand.full.kernel_order()
            c.expect(len(orb) == 8 * 168 // kern, "H* orbit length")
        for d, m in ((3, 3), (4, 3), (5, 5)):
            for i in range(len(diagonal.constituents(d, m))):
                r = diagonal.build_dsc(d, m, i)
                c.expect(_orbit_ok(r.words, 1 << d, 1 << (d - r.k), False), "DSC inner products")
                c.expect(len(r.words) == 1 << (m + d), "DSC orbit length")


def test_criterion_9_search_and_scheme():
    with Criterion(9, "orbit-union search and the NSC14,64 association scheme", 300) as c:
        res = procedure51_search(SearchConfig(4, nsc_subgroup_generators()))
        c.expect(res.a0_size == 2048, "|A0|")
        hits = [h for h in res.hits if h.size == 64 and len(h.cosines) == 3 and not h.antipodal]
        c.expect(bool(hits), "no 64-vector tricosine union")
        h = nsc.build_h_and_nsc_family(materialize_x=False)
        c.expect(any(set(res.union(x)) == set(h.orbit) for x in hits), "NSC16,64 rediscovered")
        rep = association_scheme_check(h.codes["NSC_14_64"])
        c.expect(rep.is_scheme and rep.intersection_numbers is not None, "scheme")
        c.expect(len(rep.relations) == 4, "relations")
