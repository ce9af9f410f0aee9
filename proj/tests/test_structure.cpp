#include <doctest.h>

#include "fixtures.hpp"

using namespace wemv;

TEST_CASE("M1/M2 parts of a mixed product") {
    SampleOptions few;
    few.samples = 500;
    auto M = Validated::check(
        make_product({make_chain(2), make_cone(1, GroupOrder::Product)}), few);
    auto m1 = m1_part(M);
    auto m2 = m2_part(M);
    // M1 = L2 x {0}, M2 = {0} x Z+.
    CHECK(m1.contains(Element::tup({Element::fin(2), Element::vec({0})})));
    CHECK_FALSE(m1.contains(Element::tup({Element::fin(0), Element::vec({1})})));
    CHECK(m2.contains(Element::tup({Element::fin(0), Element::vec({9})})));
    CHECK_FALSE(m2.contains(Element::tup({Element::fin(1), Element::vec({0})})));
    CHECK(m1.enumerable());
    CHECK_FALSE(m2.enumerable());
    CHECK(m1.elements().size() == 3);
}

TEST_CASE("decomposition criterion picks the greatest meet") {
    auto M = Validated::check(
        make_product({make_chain(2), make_cone(1, GroupOrder::Product)}),
        SampleOptions{.seed = 0, .bound = 6, .samples = 500});
    Element x = Element::tup({Element::fin(2), Element::vec({5})});
    auto x1 = decomposition_criterion(M, x);
    REQUIRE(x1);
    CHECK(*x1 == Element::tup({Element::fin(2), Element::vec({0})}));
}

TEST_CASE("decompose splits L2 x Z+ into its parts") {
    SampleOptions opts;
    opts.samples = 1000;
    opts.bound = 8;
    auto M = Validated::check(
        make_product({make_chain(2), make_cone(1, GroupOrder::Product)}), opts);
    auto d = decompose(M, opts);
    REQUIRE(d.status == Decomposition::Status::Decomposed);
    CHECK(d.hom_ok);
    CHECK(d.bijective_ok);
    // phi((2, 5)) = ((2, 0), (0, 5)).
    Element x = Element::tup({Element::fin(2), Element::vec({5})});
    auto x1 = decomposition_criterion(M, x);
    REQUIRE(x1);
    CHECK(M->ominus(x, *x1) == Element::tup({Element::fin(0), Element::vec({5})}));
}

TEST_CASE("finite decompositions carry the quotient isomorphism") {
    for (const auto& f : fx::finite_fixtures()) {
        CAPTURE(f.name);
        auto M = Validated::check(f.alg);
        auto d = decompose(M);
        REQUIRE(d.status == Decomposition::Status::Decomposed);
        CHECK(d.hom_ok);
        CHECK(d.bijective_ok);
        CHECK(d.quotient_iso_ok);
    }
}

TEST_CASE("an incomplete candidate pool yields unknown status") {
    auto M = Validated::check(make_product({make_chain(1), make_chain(1)}));
    // Against the pool {(1,0),(0,1)} the element (1,1) has two incomparable
    // meets and no greatest one.
    std::vector<Element> pool = {Element::tup({Element::fin(1), Element::fin(0)}),
                                 Element::tup({Element::fin(0), Element::fin(1)})};
    auto d = decompose_over(M, pool, false);
    CHECK(d.status == Decomposition::Status::Unknown);
    REQUIRE(d.witness);
    CHECK(*d.witness == Element::tup({Element::fin(1), Element::fin(1)}));
    // The certified variant over the same pool refutes instead.
    CHECK(decompose_over(M, pool, true).status == Decomposition::Status::CriterionFailed);
}

TEST_CASE("restrict_algebra repackages closed subsets") {
    auto M = Validated::check(make_product({make_chain(1), make_chain(2)}));
    // [0, a] for idempotent a is closed under every operation.
    Element a = Element::tup({Element::fin(0), Element::fin(2)});
    auto r = restrict_algebra(*M, enumerate_interval(*M, a));
    CHECK(r.carrier.size() == 3);
    CHECK(r.carrier[0] == M->bottom());
    CHECK(validate(*r.algebra).pass);
    auto L2 = make_chain(2);
    CHECK(r.algebra->oplus_table() == L2->oplus_table());
    auto L3 = Validated::check(make_chain(3));
    CHECK_THROWS_AS(restrict_algebra(*L3, std::vector<Element>{Element::fin(1)}), InputError);
}

TEST_CASE("split at an idempotent of a bounded product") {
    auto M = Validated::check(make_product({make_chain(1), make_chain(2)}));
    Element a = Element::tup({Element::fin(1), Element::fin(0)});
    auto s = split_at_idempotent(M, a);
    CHECK(s.iso_hom_ok);
    CHECK(s.iso_bijective_ok);
    REQUIRE(s.a_complement);
    CHECK(*s.a_complement == Element::tup({Element::fin(0), Element::fin(2)}));
    // Lower factor is L1, upper factor is L2, table for table.
    auto L1 = make_chain(1);
    CHECK(s.lower.algebra->oplus_table() == L1->oplus_table());
    CHECK(s.lower.algebra->ominus_table() == L1->ominus_table());
    auto upper = restrict_algebra(*M, s.upper.elements());
    auto L2 = make_chain(2);
    CHECK(upper.algebra->join_table() == L2->join_table());
    CHECK(upper.algebra->meet_table() == L2->meet_table());
    CHECK(upper.algebra->oplus_table() == L2->oplus_table());
    CHECK(upper.algebra->ominus_table() == L2->ominus_table());
}

TEST_CASE("split rejects bad cut points") {
    auto M = Validated::check(make_chain(2));
    CHECK_THROWS_AS(split_at_idempotent(M, Element::fin(1)), InputError);  // not idempotent
    CHECK_THROWS_AS(split_at_idempotent(M, Element::fin(0)), InputError);  // trivial
    CHECK_THROWS_AS(split_at_idempotent(M, Element::fin(2)), InputError);  // trivial
}

TEST_CASE("split of a topless product keeps the strict coordinate whole") {
    SampleOptions opts;
    opts.samples = 2000;
    opts.bound = 8;
    auto M = Validated::check(
        make_product({make_chain(2), make_cone(1, GroupOrder::Product)}), opts);
    Element a = Element::tup({Element::fin(2), Element::vec({0})});
    auto s = split_at_idempotent(M, a, opts);
    CHECK(s.iso_hom_ok);
    CHECK(s.iso_bijective_ok);
    CHECK_FALSE(s.a_complement);
    CHECK(s.lower.carrier.size() == 3);
    REQUIRE(s.upper_maximal_ideal);
    CHECK(*s.upper_maximal_ideal);
}

TEST_CASE("representing algebra of the positive integers is K1") {
    SampleOptions opts;
    opts.samples = 2000;
    opts.bound = 10;
    auto M = Validated::check(make_cone(1, GroupOrder::Product), opts);
    auto r = representing(M, opts);
    auto* amb = dynamic_cast<const PerfectAlgebra*>(r.ambient.get());
    REQUIRE(amb);
    CHECK(amb->rank() == 1);
    CHECK(amb->unit() == 1);
    CHECK(r.member_description == "head 0");
    CHECK(r.embed(Element::vec({5})) == Element::bounded(0, {5}));
    CHECK(r.member(Element::bounded(0, {3})));
    CHECK_FALSE(r.member(Element::bounded(1, {-3})));
    CHECK(r.disjoint_ok);
    CHECK(r.maximality_ok);
    CHECK(r.odot_closed_ok);
}

TEST_CASE("representing a bounded algebra is the identity") {
    auto M = Validated::check(make_chain(3));
    auto r = representing(M);
    CHECK(r.ambient.get() == M.ptr().get());
    CHECK(r.member_description == "all");
    CHECK(r.disjoint_ok);
}

TEST_CASE("representing a mixed product goes componentwise") {
    SampleOptions opts;
    opts.samples = 1000;
    opts.bound = 8;
    auto M = Validated::check(
        make_product({make_chain(2), make_cone(1, GroupOrder::Product)}), opts);
    auto r = representing(M, opts);
    CHECK(r.member_description == "all x head 0");
    CHECK(r.disjoint_ok);
    CHECK(r.maximality_ok);
    CHECK(r.odot_closed_ok);
    Element m = Element::tup({Element::fin(1), Element::vec({4})});
    Element e = r.embed(m);
    CHECK(e.as_tup()[0] == Element::fin(1));
    CHECK(e.as_tup()[1] == Element::bounded(0, {4}));
    CHECK(r.member(e));
    CHECK_FALSE(r.member(r.complement(e)));
}
