#pragma once

#include "wemv/algebra.hpp"

namespace wemv {

// Finite direct product of heterogeneous factors; all operations act
// componentwise. For a finite index set this coincides with the sum of
// Example-style families with finite support.
class ProductAlgebra final : public Algebra {
public:
    explicit ProductAlgebra(std::vector<AlgebraPtr> factors) : factors_(std::move(factors)) {
        if (factors_.empty()) throw InputError("product needs at least one factor");
    }

    const std::vector<AlgebraPtr>& factors() const { return factors_; }

    Element bottom() const override {
        Element::Tuple t;
        t.reserve(factors_.size());
        for (const auto& f : factors_) t.push_back(f->bottom());
        return Element::tup(std::move(t));
    }

    Element join(const Element& x, const Element& y) const override { return zip(x, y, &Algebra::join); }
    Element meet(const Element& x, const Element& y) const override { return zip(x, y, &Algebra::meet); }
    Element oplus(const Element& x, const Element& y) const override { return zip(x, y, &Algebra::oplus); }
    Element ominus(const Element& x, const Element& y) const override { return zip(x, y, &Algebra::ominus); }

    bool has_top() const override {
        for (const auto& f : factors_)
            if (!f->has_top()) return false;
        return true;
    }
    Element top() const override {
        Element::Tuple t;
        t.reserve(factors_.size());
        for (const auto& f : factors_) t.push_back(f->top());
        return Element::tup(std::move(t));
    }

    bool is_finite() const override {
        for (const auto& f : factors_)
            if (!f->is_finite()) return false;
        return true;
    }
    std::size_t size() const override {
        std::size_t n = 1;
        for (const auto& f : factors_) n *= f->size();
        return n;
    }
    std::vector<Element> elements() const override {
        std::vector<Element> out{Element::tup({})};
        for (const auto& f : factors_) {
            std::vector<Element> next;
            auto fe = f->elements();
            next.reserve(out.size() * fe.size());
            for (const auto& prefix : out)
                for (const auto& e : fe) {
                    auto t = prefix.as_tup();
                    t.push_back(e);
                    next.push_back(Element::tup(std::move(t)));
                }
            out = std::move(next);
        }
        return out;
    }

    Element sample(std::mt19937_64& rng, long long bound) const override {
        Element::Tuple t;
        t.reserve(factors_.size());
        for (const auto& f : factors_) t.push_back(f->sample(rng, bound));
        return Element::tup(std::move(t));
    }

    std::string kind() const override { return "product"; }

private:
    const Element::Tuple& at(const Element& e) const {
        if (!e.is_tup() || e.as_tup().size() != factors_.size())
            throw InputError("element " + e.str() + " has wrong arity for the product");
        return e.as_tup();
    }

    template <typename Op>
    Element zip(const Element& x, const Element& y, Op op) const {
        const auto& xs = at(x);
        const auto& ys = at(y);
        Element::Tuple t;
        t.reserve(factors_.size());
        for (std::size_t i = 0; i < factors_.size(); ++i)
            t.push_back(((*factors_[i]).*op)(xs[i], ys[i]));
        return Element::tup(std::move(t));
    }

    std::vector<AlgebraPtr> factors_;
};

}  // namespace wemv
