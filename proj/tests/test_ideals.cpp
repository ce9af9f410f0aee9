#include <doctest.h>

#include "fixtures.hpp"

using namespace wemv;

namespace {

// Independent oracle: scan every subset containing 0 (carriers up to 12)
// and keep the ones that are down-sets closed under oplus, using nothing
// from the ideals module.
std::vector<std::vector<Element>> brute_force_ideals(const Validated& M) {
    auto elems = M->elements();
    const std::size_t n = elems.size();
    REQUIRE(n <= 12);
    std::vector<std::vector<Element>> out;
    for (std::size_t mask = 1; mask < (1u << n); ++mask) {
        if (!(mask & 1u)) continue;  // must contain 0 = index 0
        auto in = [&](const Element& e) -> bool {
            for (std::size_t i = 0; i < n; ++i)
                if (elems[i] == e) return (mask >> i) & 1u;
            return false;
        };
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!((mask >> i) & 1u)) continue;
            for (std::size_t j = 0; j < n && ok; ++j) {
                if (M->leq(elems[j], elems[i]) && !((mask >> j) & 1u)) ok = false;
                if (((mask >> j) & 1u) && !in(M->oplus(elems[i], elems[j]))) ok = false;
            }
        }
        if (!ok) continue;
        std::vector<Element> s;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1u) s.push_back(elems[i]);
        std::sort(s.begin(), s.end());
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("ideal enumeration matches the brute-force subset oracle") {
    for (const auto& f : fx::finite_fixtures()) {
        if (f.alg->size() > 12) continue;
        CAPTURE(f.name);
        auto M = Validated::check(f.alg);
        auto got = ideals(M);
        std::vector<std::vector<Element>> lists;
        for (const auto& I : got) lists.push_back(I.elems);
        CHECK(lists == brute_force_ideals(M));
        // Each one re-verifies against the definition check.
        for (const auto& I : got) CHECK(is_ideal(M, I.elems).ok);
    }
}

TEST_CASE("is_ideal rejects with a reason") {
    auto L2 = Validated::check(make_chain(2));
    CHECK_FALSE(is_ideal(L2, {}).ok);
    CHECK_FALSE(is_ideal(L2, {Element::fin(1)}).ok);  // missing 0
    auto v = is_ideal(L2, {Element::fin(0), Element::fin(2)});  // not a down-set
    REQUIRE_FALSE(v.ok);
    CHECK(v.reason.find("down-set") != std::string::npos);
    auto w = is_ideal(L2, {Element::fin(0), Element::fin(1)});  // 1+1=2 escapes
    REQUIRE_FALSE(w.ok);
    CHECK(w.reason.find("oplus") != std::string::npos);
}

TEST_CASE("generated ideal saturates") {
    auto P = Validated::check(make_product({make_chain(1), make_chain(2)}));
    auto I = generated_ideal(P, {}, {Element::tup({Element::fin(0), Element::fin(1)})});
    // 1 generates the whole L2 coordinate; the L1 coordinate stays at 0.
    CHECK(I.elems.size() == 3);
    for (const auto& e : I.elems) CHECK(e.as_tup()[0] == Element::fin(0));
}

TEST_CASE("prime ideals are exactly the chain quotients") {
    for (const auto& f : fx::finite_fixtures()) {
        CAPTURE(f.name);
        auto M = Validated::check(f.alg);
        for (const auto& I : ideals(M)) {
            if (!is_proper(M, I)) continue;
            CHECK(is_prime(M, I) == quotient_is_chain(M, I));
        }
    }
}

TEST_CASE("spec intersection is zero and the subdirect embedding works") {
    for (const auto& f : fx::finite_fixtures()) {
        if (f.alg->size() < 2) continue;
        CAPTURE(f.name);
        auto M = Validated::check(f.alg);
        auto primes = spec(M);
        REQUIRE_FALSE(primes.empty());
        std::vector<Element> inter = M->elements();
        for (const auto& P : primes) {
            std::vector<Element> next;
            for (const auto& x : inter)
                if (P.contains(x)) next.push_back(x);
            inter = std::move(next);
        }
        REQUIRE(inter.size() == 1);
        CHECK(inter[0] == M->bottom());

        auto emb = subdirect_embedding(M);
        CHECK(emb.injective);
        CHECK(emb.homomorphism);
        CHECK(emb.factors.size() == primes.size());
    }
}

TEST_CASE("quotients relabel with the zero class first and validate") {
    auto M = Validated::check(make_product({make_chain(1), make_chain(1)}));
    for (const auto& I : ideals(M)) {
        auto q = quotient(M, I);
        CHECK(q.class_reps[0] == M->bottom());
        CHECK(q.project(M, M->bottom()) == 0);
        CHECK(q.quotient->size() * I.elems.size() >= M->size());  // counting sanity
        CHECK(validate(*q.quotient).pass);
    }
    // Quotient by {0} is a relabeled copy of M.
    Ideal zero{std::vector<Element>{M->bottom()}};
    auto q0 = quotient(M, zero);
    CHECK(q0.quotient->size() == M->size());
}

TEST_CASE("quotient congruence is compatible with every operation") {
    auto M = Validated::check(make_product({make_chain(2), make_chain(2)}));
    for (const auto& I : ideals(M)) {
        auto q = quotient(M, I);
        auto elems = M->elements();
        using Op = Element (Algebra::*)(const Element&, const Element&) const;
        for (Op op : {(Op)&Algebra::join, (Op)&Algebra::meet, (Op)&Algebra::oplus,
                      (Op)&Algebra::ominus})
            for (const auto& x : elems)
                for (const auto& y : elems)
                    for (const auto& x2 : elems)
                        for (const auto& y2 : elems) {
                            if (q.project(M, x) != q.project(M, x2)) continue;
                            if (q.project(M, y) != q.project(M, y2)) continue;
                            CHECK(q.project(M, ((*M).*op)(x, y)) ==
                                  q.project(M, ((*M).*op)(x2, y2)));
                        }
    }
}

TEST_CASE("separating primes exist and are prime") {
    auto M = Validated::check(make_product({make_chain(1), make_chain(1)}));
    Ideal zero{std::vector<Element>{M->bottom()}};
    Element z = Element::tup({Element::fin(1), Element::fin(0)});
    auto P = separating_prime(M, zero, z);
    CHECK_FALSE(P.contains(z));
    CHECK(is_prime(M, P));
    CHECK(zero.subset_of(P));
    CHECK_THROWS_AS(separating_prime(M, P, P.elems[1]), InputError);
}

TEST_CASE("ideal scale caps are enforced") {
    auto big = Validated::check(make_product({make_chain(4), make_chain(4)}));  // 25 > 24
    CHECK_THROWS_AS(ideals(big), InputError);
    auto sym = Validated::check(make_cone(1, GroupOrder::Product),
                                SampleOptions{.seed = 0, .bound = 4, .samples = 100});
    CHECK_THROWS_AS(ideals(sym), InputError);
}
