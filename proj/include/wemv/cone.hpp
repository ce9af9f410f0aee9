#pragma once

#include <algorithm>

#include "wemv/algebra.hpp"

namespace wemv {

enum class GroupOrder { Product, Lex };

namespace detail {

// Order and lattice structure of the integer lattice Z^k.
inline int lex_cmp(const Element::Vec& a, const Element::Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    return 0;
}

inline Element::Vec vec_add(const Element::Vec& a, const Element::Vec& b) {
    Element::Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Element::Vec vec_sub(const Element::Vec& a, const Element::Vec& b) {
    Element::Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Element::Vec vec_join(GroupOrder o, const Element::Vec& a, const Element::Vec& b) {
    if (o == GroupOrder::Lex) return lex_cmp(a, b) >= 0 ? a : b;
    Element::Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline Element::Vec vec_meet(GroupOrder o, const Element::Vec& a, const Element::Vec& b) {
    if (o == GroupOrder::Lex) return lex_cmp(a, b) <= 0 ? a : b;
    Element::Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
    return r;
}

inline bool vec_nonneg(GroupOrder o, const Element::Vec& a) {
    if (o == GroupOrder::Lex) {
        for (auto c : a) {
            if (c > 0) return true;
            if (c < 0) return false;
        }
        return true;  // zero vector
    }
    return std::all_of(a.begin(), a.end(), [](long long c) { return c >= 0; });
}

}  // namespace detail

// Positive cone of Z^k under the product or lexicographic order.
// oplus is vector addition, ominus is (x - y) v 0 in the group order.
class ConeAlgebra final : public Algebra {
public:
    ConeAlgebra(std::size_t rank, GroupOrder order) : rank_(rank), order_(order) {
        if (rank_ < 1) throw InputError("cone rank must be >= 1");
    }

    std::size_t rank() const { return rank_; }
    GroupOrder order() const { return order_; }

    Element bottom() const override { return Element::vec(Element::Vec(rank_, 0)); }

    Element join(const Element& x, const Element& y) const override {
        return Element::vec(detail::vec_join(order_, at(x), at(y)));
    }
    Element meet(const Element& x, const Element& y) const override {
        return Element::vec(detail::vec_meet(order_, at(x), at(y)));
    }
    Element oplus(const Element& x, const Element& y) const override {
        return Element::vec(detail::vec_add(at(x), at(y)));
    }
    Element ominus(const Element& x, const Element& y) const override {
        auto d = detail::vec_sub(at(x), at(y));
        return Element::vec(detail::vec_join(order_, d, Element::Vec(rank_, 0)));
    }

    bool has_top() const override { return false; }
    bool is_finite() const override { return false; }

    bool contains(const Element& e) const {
        return e.is_vec() && e.as_vec().size() == rank_ && detail::vec_nonneg(order_, e.as_vec());
    }

    Element sample(std::mt19937_64& rng, long long bound) const override {
        if (order_ == GroupOrder::Product) {
            Element::Vec g(rank_);
            for (auto& c : g) c = sample_coord(rng, 0, bound);
            return Element::vec(g);
        }
        // Lex cone: zero, or first nonzero coordinate positive and later
        // coordinates of either sign.
        std::uniform_int_distribution<std::size_t> pos(0, rank_);
        std::size_t p = pos(rng);
        Element::Vec g(rank_, 0);
        if (p < rank_) {
            g[p] = sample_coord(rng, 1, bound);
            for (std::size_t i = p + 1; i < rank_; ++i) g[i] = sample_coord(rng, -bound, bound);
        }
        return Element::vec(g);
    }

    std::string kind() const override { return "cone"; }

private:
    const Element::Vec& at(const Element& e) const {
        if (!contains(e)) throw InputError("element " + e.str() + " not in the cone");
        return e.as_vec();
    }

    static long long sample_coord(std::mt19937_64& rng, long long lo, long long hi) {
        // Boundary values show up often on purpose.
        std::uniform_int_distribution<int> pick(0, 5);
        int k = pick(rng);
        if (k == 0) return lo;
        if (k == 1) return hi;
        std::uniform_int_distribution<long long> d(lo, hi);
        return d(rng);
    }

    std::size_t rank_;
    GroupOrder order_;
};

// Gamma(Z lex G, (unit, 0)) where G = Z^rank with the given order. Elements
// are (s, g) with 0 <= s <= unit; top is (unit, 0). This is the representing
// algebra for cones; K_n is the unit-n, rank-1 instance.
class PerfectAlgebra final : public Algebra {
public:
    PerfectAlgebra(std::size_t rank, long long unit = 1, GroupOrder tail_order = GroupOrder::Product)
        : rank_(rank), unit_(unit), tail_(tail_order) {
        if (rank_ < 1) throw InputError("perfect algebra rank must be >= 1");
        if (unit_ < 1) throw InputError("perfect algebra unit must be >= 1");
    }

    std::size_t rank() const { return rank_; }
    long long unit() const { return unit_; }
    GroupOrder tail_order() const { return tail_; }

    Element bottom() const override { return Element::bounded(0, Element::Vec(rank_, 0)); }
    Element top() const override { return Element::bounded(unit_, Element::Vec(rank_, 0)); }
    bool has_top() const override { return true; }
    bool is_finite() const override { return false; }

    Element join(const Element& x, const Element& y) const override {
        const auto& [s, g] = at(x);
        const auto& [t, h] = at(y);
        if (s > t) return x;
        if (s < t) return y;
        return Element::bounded(s, detail::vec_join(tail_, g, h));
    }
    Element meet(const Element& x, const Element& y) const override {
        const auto& [s, g] = at(x);
        const auto& [t, h] = at(y);
        if (s < t) return x;
        if (s > t) return y;
        return Element::bounded(s, detail::vec_meet(tail_, g, h));
    }
    Element oplus(const Element& x, const Element& y) const override {
        const auto& [s, g] = at(x);
        const auto& [t, h] = at(y);
        return trunc_meet_top(s + t, detail::vec_add(g, h));
    }
    Element ominus(const Element& x, const Element& y) const override {
        const auto& [s, g] = at(x);
        const auto& [t, h] = at(y);
        long long d = s - t;
        auto dg = detail::vec_sub(g, h);
        if (d < 0) return bottom();
        if (d == 0) return Element::bounded(0, detail::vec_join(tail_, dg, Element::Vec(rank_, 0)));
        return Element::bounded(d, std::move(dg));
    }

    bool contains(const Element& e) const {
        if (!e.is_bounded()) return false;
        const auto& [s, g] = e.as_bounded();
        if (g.size() != rank_ || s < 0 || s > unit_) return false;
        if (s == 0) return detail::vec_nonneg(tail_, g);
        if (s == unit_) {
            Element::Vec neg(g.size());
            for (std::size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
            return detail::vec_nonneg(tail_, neg);
        }
        return true;
    }

    // The image of the represented cone: head coordinate 0.
    bool in_ideal_part(const Element& e) const { return at(e).first == 0; }

    Element sample(std::mt19937_64& rng, long long bound) const override {
        std::uniform_int_distribution<long long> sd(0, unit_);
        long long s = sd(rng);
        Element::Vec g(rank_);
        if (s == 0 || s == unit_) {
            ConeAlgebra cone(rank_, tail_);
            g = cone.sample(rng, bound).as_vec();
            if (s == unit_)
                for (auto& c : g) c = -c;
        } else {
            std::uniform_int_distribution<long long> d(-bound, bound);
            for (auto& c : g) c = d(rng);
        }
        return Element::bounded(s, std::move(g));
    }

    std::string kind() const override { return "perfect"; }

private:
    const Element::Bounded& at(const Element& e) const {
        if (!contains(e)) throw InputError("element " + e.str() + " not in the perfect algebra");
        return e.as_bounded();
    }

    Element trunc_meet_top(long long s, Element::Vec g) const {
        if (s > unit_) return top();
        if (s == unit_)
            return Element::bounded(unit_, detail::vec_meet(tail_, g, Element::Vec(rank_, 0)));
        return Element::bounded(s, std::move(g));
    }

    std::size_t rank_;
    long long unit_;
    GroupOrder tail_;
};

}  // namespace wemv
