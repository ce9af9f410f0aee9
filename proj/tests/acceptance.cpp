// Acceptance harness: one pass/fail line per criterion, nonzero exit on any
// failure. Everything is checked against independent oracles (brute-force
// subset scans, table-for-table comparisons) rather than the module's own
// bookkeeping wherever possible.

#include <chrono>
#include <iostream>

#include "fixtures.hpp"

using namespace wemv;

namespace {

int g_failures = 0;
bool g_current = true;
std::string g_detail;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        g_current = false;
        if (g_detail.empty()) g_detail = what;
    }
}

void report(int n, const std::string& title) {
    if (g_current) {
        std::cout << "PASS criterion " << n << ": " << title << "\n";
    } else {
        std::cout << "FAIL criterion " << n << ": " << title << " [" << g_detail << "]\n";
        ++g_failures;
    }
    g_current = true;
    g_detail.clear();
}

SampleOptions sampled() {
    SampleOptions o;
    o.seed = 0;
    o.bound = 12;
    o.samples = 10000;
    return o;
}

using Op = Element (Algebra::*)(const Element&, const Element&) const;
const std::array<Op, 4> kOps = {(Op)&Algebra::join, (Op)&Algebra::meet, (Op)&Algebra::oplus,
                                (Op)&Algebra::ominus};

void criterion1() {
    for (const auto& f : fx::finite_fixtures()) {
        auto rep = validate(*f.alg);
        expect(rep.pass && rep.strategy == "exhaustive", f.name + " axiom failure");
    }
    auto o = sampled();
    for (const auto& f : fx::symbolic_fixtures()) {
        if (f.name == "L2xZ+") continue;  // covered in later criteria
        auto rep = validate(*f.alg, o);
        expect(rep.pass && rep.triples_checked == o.samples, f.name + " axiom failure");
    }
    auto bad = validate(*fx::corrupted_chain3());
    expect(!bad.pass, "corrupted 3-chain accepted");
    if (!bad.violations.empty()) {
        const auto& v = bad.violations.front();
        expect(v.axiom == "(vi)" && v.z == Element::fin(2) && v.x == Element::fin(1),
               "corrupted 3-chain: wrong axiom or witness");
    }
    report(1, "axiom suite on fixtures, corrupted chain rejected");
}

void criterion2() {
    auto o = sampled();
    o.samples = 2000;  // per-clause; 17 clauses x fixtures inside the budget
    for (const auto& f : fx::finite_fixtures()) {
        auto M = Validated::check(f.alg);
        for (const auto& r : identity_suite(M, o))
            expect(r.holds, f.name + ": " + r.name);
    }
    for (const auto& f : fx::symbolic_fixtures()) {
        auto M = Validated::check(f.alg, o);
        for (const auto& r : identity_suite(M, o))
            expect(r.holds, f.name + ": " + r.name);
    }
    report(2, "basic-properties suite, zero violations");
}

void criterion3() {
    for (const auto& f : fx::finite_fixtures()) {
        auto M = Validated::check(f.alg);
        for (const auto& a : M->elements()) {
            auto lm = local_mv(M, a);
            expect(lm.mv_ok, f.name + ": [0," + a.str() + "] fails MV axioms");
            expect(lm.ominus_matches_global,
                   f.name + ": interval difference differs from the global one");
        }
        if (M->size() < 2) continue;
        auto lm = local_mv(M, M->top());
        const std::size_t n = lm.carrier.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                int li = lm.lambda_a[i], lj = lm.lambda_a[j];
                Element lam = lm.carrier[(std::size_t)
                    lm.lambda_a[(std::size_t)lm.oplus_a[(std::size_t)li * n + lj]]];
                expect(lam == odot(*M, lm.carrier[i], lm.carrier[j]),
                       f.name + ": odot formula mismatch");
            }
    }
    report(3, "local MV oracle and odot table agreement");
}

void criterion4() {
    for (const auto& f : fx::finite_fixtures()) {
        auto M = Validated::check(f.alg);
        auto elems = M->elements();
        for (const auto& I : ideals(M)) {
            auto q = quotient(M, I);
            // Brute-force congruence compatibility for the four binary
            // operations (the constant 0 is trivially compatible).
            for (Op op : kOps)
                for (const auto& x : elems)
                    for (const auto& y : elems)
                        for (const auto& x2 : elems) {
                            if (q.project(M, x) != q.project(M, x2)) continue;
                            expect(q.project(M, ((*M).*op)(x, y)) ==
                                       q.project(M, ((*M).*op)(x2, y)),
                                   f.name + ": theta_I not compatible");
                            expect(q.project(M, ((*M).*op)(y, x)) ==
                                       q.project(M, ((*M).*op)(y, x2)),
                                   f.name + ": theta_I not compatible");
                        }
            expect(validate(*q.quotient).pass, f.name + ": quotient fails validation");
            if (is_proper(M, I))
                expect(quotient_is_chain(M, I) == is_prime(M, I),
                       f.name + ": chain/prime equivalence broken at " + I.str());
        }
    }
    report(4, "congruence/quotient oracle, chain iff prime");
}

void criterion5() {
    for (const auto& f : fx::finite_fixtures()) {
        if (f.alg->size() < 2) continue;
        auto M = Validated::check(f.alg);
        std::vector<Element> inter = M->elements();
        for (const auto& P : spec(M)) {
            std::vector<Element> next;
            for (const auto& x : inter)
                if (P.contains(x)) next.push_back(x);
            inter = std::move(next);
        }
        expect(inter.size() == 1 && inter[0] == M->bottom(),
               f.name + ": spec intersection is not {0}");
        auto emb = subdirect_embedding(M);
        expect(emb.injective && emb.homomorphism, f.name + ": subdirect embedding broken");
    }
    report(5, "spectral separation and subdirect embedding");
}

void criterion6() {
    auto o = sampled();
    auto M = Validated::check(
        make_product({make_chain(2), make_cone(1, GroupOrder::Product)}), o);
    auto d = decompose(M, o);
    expect(d.status == Decomposition::Status::Decomposed, "L2 x Z+ not decomposed");
    expect(d.hom_ok && d.bijective_ok, "L2 x Z+ iso checks failed");
    expect(d.m1.describe() == "{0,1,2} x {0}", "unexpected M1: " + d.m1.describe());
    expect(d.m2.describe() == "{0} x all", "unexpected M2: " + d.m2.describe());

    for (const auto& f : fx::finite_fixtures()) {
        auto fd = decompose(Validated::check(f.alg));
        expect(fd.status == Decomposition::Status::Decomposed && fd.quotient_iso_ok,
               f.name + ": M/M1 iso M2 failed");
    }

    // split_at_idempotent(L1 x L2, (1,0)) reproduces L1 and L2 exactly.
    auto P = Validated::check(make_product({make_chain(1), make_chain(2)}));
    auto s = split_at_idempotent(P, Element::tup({Element::fin(1), Element::fin(0)}));
    expect(s.iso_hom_ok && s.iso_bijective_ok, "split iso checks failed");
    auto L1 = make_chain(1);
    auto L2 = make_chain(2);
    expect(s.lower.algebra->oplus_table() == L1->oplus_table() &&
               s.lower.algebra->ominus_table() == L1->ominus_table(),
           "split lower factor is not L1");
    auto upper = restrict_algebra(*P, s.upper.elements());
    expect(upper.algebra->oplus_table() == L2->oplus_table() &&
               upper.algebra->ominus_table() == L2->ominus_table(),
           "split upper factor is not L2");
    report(6, "decomposition of L2 x Z+ and split of L1 x L2");
}

void criterion7() {
    auto o = sampled();
    struct Row {
        std::string name;
        Validated alg;
        bool can, perf, idem;
    };
    std::vector<Row> rows;
    rows.push_back({"L1", Validated::check(make_chain(1)), false, true, true});
    rows.push_back({"L2", Validated::check(make_chain(2)), false, false, false});
    rows.push_back({"Z+", Validated::check(make_cone(1, GroupOrder::Product), o), true, true, false});
    rows.push_back({"K1", Validated::check(make_kn(1), o), false, true, false});
    for (auto& r : rows) {
        auto vc = in_can(r.alg, o);
        auto vp = in_perf(r.alg, o);
        auto vi = in_idem(r.alg, o);
        expect(vc.holds == r.can, r.name + ": Can mismatch");
        expect(vp.holds == r.perf, r.name + ": Perf mismatch");
        expect(vi.holds == r.idem, r.name + ": Idem mismatch");
        for (const auto* v : {&vc, &vp, &vi})
            if (!v->holds)
                expect(v->witness && *v->lhs_val != *v->rhs_val,
                       r.name + ": refutation witness does not separate the sides");
        // Can is contained in Perf.
        if (vc.holds) expect(vp.holds, r.name + ": in Can but not in Perf");
    }
    report(7, "variety membership table with live witnesses");
}

void criterion8() {
    for (const auto& f : fx::finite_fixtures()) {
        auto r = check_pixley(Validated::check(f.alg));
        expect(r.all(), f.name + ": Pixley identity failed");
        expect(r.xyy.strategy == "exhaustive", f.name + ": not exhaustive");
    }
    report(8, "Pixley term identities on finite fixtures");
}

void criterion9() {
    auto o = sampled();
    auto M = Validated::check(make_cone(1, GroupOrder::Product), o);
    auto r = representing(M, o);
    auto* amb = dynamic_cast<const PerfectAlgebra*>(r.ambient.get());
    expect(amb && amb->rank() == 1 && amb->unit() == 1, "ambient is not K1");
    expect(r.member_description == "head 0", "image is not the head-0 part");
    expect(r.disjoint_ok, "image meets its complement set");
    expect(r.maximality_ok, "image is not maximal");
    expect(r.odot_closed_ok, "odot escapes the image");
    // Maximality restated directly: adjoining any sampled outsider forces the
    // ideal generated by the image up to the top.
    const Algebra& N = *r.ambient;
    std::mt19937_64 rng(o.seed);
    for (std::size_t i = 0; i < o.samples; ++i) {
        Element m = M->sample(rng, o.bound);
        Element z = r.complement(r.embed(m));      // outsider
        Element zc = N.ominus(N.top(), z);         // back in the image
        expect(!r.member(z), "outsider landed in the image");
        expect(r.member(zc) && N.oplus(z, zc) == N.top(),
               "image + outsider does not reach the top");
    }
    report(9, "representing algebra of Z+ is K1 with a maximal image");
}

void criterion10() {
    for (const auto& f : fx::finite_fixtures()) {
        if (f.alg->size() < 2 || f.alg->size() > 12) continue;
        auto M = Validated::check(f.alg);
        auto s = sections(M);
        // Spectrum size = atom count of the idempotent lattice.
        auto idems = idempotents(M);
        std::size_t atom_count = 0;
        for (const auto& a : idems) {
            if (a == M->bottom()) continue;
            bool minimal = true;
            for (const auto& b : idems)
                if (b != M->bottom() && b != a && M->leq(b, a)) minimal = false;
            if (minimal) ++atom_count;
        }
        expect(s.spectrum.points.size() == atom_count, f.name + ": spectrum size mismatch");
        expect(s.spectrum.basis_law_ok, f.name + ": V_a cap V_b law fails");
        expect(s.stalks_indecomposable, f.name + ": decomposable stalk");
        expect(s.sections_injective && s.section_algebra_ok,
               f.name + ": section algebra broken");
        for (const auto& st : s.stalks) {
            auto Q = Validated::check(st.quotient);
            expect(validate(*st.quotient).pass, f.name + ": stalk fails validation");
            bool chain = true;
            for (const auto& x : Q->elements())
                for (const auto& y : Q->elements())
                    if (!Q->leq(x, y) && !Q->leq(y, x)) chain = false;
            bool stone_indec =
                is_stone_lattice(Q, Q->top()) && idempotents(Q).size() <= 2;
            expect(chain == stone_indec, f.name + ": chain/Stone dichotomy fails");
        }
        auto e = semisimple_sheaf_embedding(M);
        expect(e.applicable && e.injective && e.hom_ok,
               f.name + ": semisimple sheaf embedding failed");
    }

    auto M = Validated::check(make_product({make_chain(1), make_chain(2)}));
    auto spec = boolean_spectrum(M);
    std::vector<Ideal> family;
    for (const auto& P : spec.points) family.push_back(stone_ideal(M, P));
    std::vector<std::vector<std::size_t>> discrete = {{}, {0}, {1}, {0, 1}};
    expect(custom_sheaf_check(M, 2, discrete, family).pass(),
           "discrete custom sheaf rejected");
    auto ind = custom_sheaf_check(M, 2, {{}, {0, 1}}, family);
    expect(!ind.membership_open && ind.zero_intersection,
           "indiscrete custom sheaf not refused at (b)");
    report(10, "Pierce sheaf suite");
}

void criterion11() {
    // Determinism across worker counts for a fixed seed, plus the wall-clock
    // budget enforced by the harness below.
    auto cone = make_cone(2, GroupOrder::Lex);
    SampleOptions w1 = sampled(), w4 = sampled();
    w1.workers = 1;
    w4.workers = 4;
    auto r1 = validate(*cone, w1);
    auto r4 = validate(*cone, w4);
    expect(r1.pass == r4.pass && r1.triples_checked == r4.triples_checked,
           "validation differs across worker counts");

    auto M1 = Validated::check(cone, w1);
    auto a = identity_suite(M1, w1);
    auto b = identity_suite(M1, w4);
    expect(a.size() == b.size(), "suite shape differs");
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
        expect(a[i].holds == b[i].holds && a[i].checked == b[i].checked,
               "suite verdicts differ across worker counts");
    report(11, "deterministic across runs and worker counts");
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    std::cout << "total wall clock: " << secs << "s\n";
    if (secs >= 300) {
        std::cout << "FAIL: exceeded the five-minute budget\n";
        ++g_failures;
    }
    return g_failures == 0 ? 0 : 1;
}
