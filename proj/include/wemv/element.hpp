#pragma once

#include <compare>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wemv {

// An element of some algebra. Which alternative is active depends on the
// carrier: finite carriers use indices, cones use integer vectors, perfect
// algebras use a (head, tail-vector) pair, products use tuples of component
// elements.
class Element {
public:
    using Index = long long;
    using Vec = std::vector<long long>;
    using Bounded = std::pair<long long, std::vector<long long>>;
    using Tuple = std::vector<Element>;

    Element() : v_(Index{0}) {}

    static Element fin(long long i) { return Element(Storage{std::in_place_index<0>, i}); }
    static Element vec(Vec g) { return Element(Storage{std::in_place_index<1>, std::move(g)}); }
    static Element bounded(long long s, Vec g) {
        return Element(Storage{std::in_place_index<2>, Bounded{s, std::move(g)}});
    }
    static Element tup(Tuple parts) { return Element(Storage{std::in_place_index<3>, std::move(parts)}); }

    bool is_fin() const { return v_.index() == 0; }
    bool is_vec() const { return v_.index() == 1; }
    bool is_bounded() const { return v_.index() == 2; }
    bool is_tup() const { return v_.index() == 3; }

    Index idx() const { return std::get<0>(v_); }
    const Vec& as_vec() const { return std::get<1>(v_); }
    const Bounded& as_bounded() const { return std::get<2>(v_); }
    const Tuple& as_tup() const { return std::get<3>(v_); }

    friend bool operator==(const Element& a, const Element& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
    // Structural order, used only for canonical sorting of reports.
    friend bool operator<(const Element& a, const Element& b) { return a.v_ < b.v_; }

    std::string str() const {
        std::ostringstream os;
        print(os);
        return os.str();
    }

private:
    using Storage = std::variant<Index, Vec, Bounded, Tuple>;
    explicit Element(Storage s) : v_(std::move(s)) {}

    void print(std::ostream& os) const {
        switch (v_.index()) {
            case 0: os << idx(); break;
            case 1: {
                const auto& g = as_vec();
                if (g.size() == 1) { os << g[0]; break; }
                os << '(';
                for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
                os << ')';
                break;
            }
            case 2: {
                const auto& [s, g] = as_bounded();
                os << '(' << s;
                for (auto c : g) os << ',' << c;
                os << ')';
                break;
            }
            case 3: {
                os << '(';
                const auto& t = as_tup();
                for (std::size_t i = 0; i < t.size(); ++i) {
                    if (i) os << ',';
                    t[i].print(os);
                }
                os << ')';
                break;
            }
        }
    }

    Storage v_;
};

}  // namespace wemv
