#pragma once

#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wemv/element.hpp"

namespace wemv {

// Raised for malformed inputs (bad tables, unsupported shapes, schema
// violations). Distinct from axiom violations, which are reported as data.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

struct SampleOptions {
    std::uint64_t seed = 0;
    long long bound = 12;
    std::size_t samples = 10000;
    unsigned workers = 0;  // 0 = available parallelism
};

// Carrier with the five signature operations. Values are immutable after
// construction and safe to share across threads.
class Algebra {
public:
    virtual ~Algebra() = default;

    virtual Element bottom() const = 0;
    virtual Element join(const Element& x, const Element& y) const = 0;
    virtual Element meet(const Element& x, const Element& y) const = 0;
    virtual Element oplus(const Element& x, const Element& y) const = 0;
    virtual Element ominus(const Element& x, const Element& y) const = 0;

    virtual bool has_top() const = 0;
    virtual Element top() const { throw InputError(kind() + ": no top element"); }

    virtual bool is_finite() const = 0;
    virtual std::size_t size() const { throw InputError(kind() + ": infinite carrier"); }
    virtual std::vector<Element> elements() const {
        throw InputError(kind() + ": carrier not enumerable");
    }

    // One random element within the coordinate bound. Boundary values (0 and
    // the bound itself) appear with elevated probability so that degenerate
    // cases are always exercised.
    virtual Element sample(std::mt19937_64& rng, long long bound) const = 0;

    virtual std::string kind() const = 0;

    bool leq(const Element& x, const Element& y) const { return meet(x, y) == x; }
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

// Finite carrier {0..n-1} with row-major Cayley tables. Index 0 is the bottom.
class FiniteAlgebra final : public Algebra {
public:
    FiniteAlgebra(std::size_t n, std::vector<int> join, std::vector<int> meet,
                  std::vector<int> oplus, std::vector<int> ominus)
        : n_(n),
          join_(std::move(join)),
          meet_(std::move(meet)),
          oplus_(std::move(oplus)),
          ominus_(std::move(ominus)) {
        check_table("join", join_);
        check_table("meet", meet_);
        check_table("oplus", oplus_);
        check_table("ominus", ominus_);
    }

    Element bottom() const override { return Element::fin(0); }
    Element join(const Element& x, const Element& y) const override {
        return Element::fin(join_[at(x) * n_ + at(y)]);
    }
    Element meet(const Element& x, const Element& y) const override {
        return Element::fin(meet_[at(x) * n_ + at(y)]);
    }
    Element oplus(const Element& x, const Element& y) const override {
        return Element::fin(oplus_[at(x) * n_ + at(y)]);
    }
    Element ominus(const Element& x, const Element& y) const override {
        return Element::fin(ominus_[at(x) * n_ + at(y)]);
    }

    // Any finite wEMV-algebra has a greatest element (validate asserts it is
    // idempotent). Tables that lack one are still representable here; top()
    // then fails.
    bool has_top() const override { return find_top().has_value(); }
    Element top() const override {
        auto t = find_top();
        if (!t) throw InputError("finite algebra has no greatest element");
        return Element::fin(*t);
    }

    bool is_finite() const override { return true; }
    std::size_t size() const override { return n_; }
    std::vector<Element> elements() const override {
        std::vector<Element> out;
        out.reserve(n_);
        for (std::size_t i = 0; i < n_; ++i) out.push_back(Element::fin((long long)i));
        return out;
    }

    Element sample(std::mt19937_64& rng, long long) const override {
        std::uniform_int_distribution<std::size_t> d(0, n_ - 1);
        return Element::fin((long long)d(rng));
    }

    std::string kind() const override { return "finite"; }

    int jt(int i, int j) const { return join_[(std::size_t)i * n_ + j]; }
    int mt(int i, int j) const { return meet_[(std::size_t)i * n_ + j]; }
    int pt(int i, int j) const { return oplus_[(std::size_t)i * n_ + j]; }
    int st(int i, int j) const { return ominus_[(std::size_t)i * n_ + j]; }

    const std::vector<int>& join_table() const { return join_; }
    const std::vector<int>& meet_table() const { return meet_; }
    const std::vector<int>& oplus_table() const { return oplus_; }
    const std::vector<int>& ominus_table() const { return ominus_; }

private:
    std::size_t at(const Element& x) const {
        if (!x.is_fin() || x.idx() < 0 || (std::size_t)x.idx() >= n_)
            throw InputError("element " + x.str() + " not in finite carrier of size " +
                             std::to_string(n_));
        return (std::size_t)x.idx();
    }

    void check_table(const char* name, const std::vector<int>& t) const {
        if (t.size() != n_ * n_)
            throw InputError(std::string(name) + " table has " + std::to_string(t.size()) +
                             " entries, expected " + std::to_string(n_ * n_));
        for (std::size_t k = 0; k < t.size(); ++k)
            if (t[k] < 0 || (std::size_t)t[k] >= n_)
                throw InputError(std::string(name) + " table entry " + std::to_string(t[k]) +
                                 " at (" + std::to_string(k / n_) + "," + std::to_string(k % n_) +
                                 ") is outside the carrier");
    }

    std::optional<int> find_top() const {
        for (std::size_t t = 0; t < n_; ++t) {
            bool ok = true;
            for (std::size_t x = 0; x < n_ && ok; ++x) ok = mt((int)t, (int)x) == (int)x;
            if (ok) return (int)t;
        }
        return std::nullopt;
    }

    std::size_t n_;
    std::vector<int> join_, meet_, oplus_, ominus_;
};

}  // namespace wemv
