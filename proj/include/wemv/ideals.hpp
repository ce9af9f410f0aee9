#pragma once

#include <set>

#include "wemv/core_ops.hpp"

namespace wemv {

// Finite ideal: canonically sorted element list. The sort key is the
// structural element order, which on finite carriers is index order.
struct Ideal {
    std::vector<Element> elems;

    explicit Ideal(std::vector<Element> e) : elems(std::move(e)) {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    }

    bool contains(const Element& e) const {
        return std::binary_search(elems.begin(), elems.end(), e);
    }
    bool subset_of(const Ideal& o) const {
        return std::includes(o.elems.begin(), o.elems.end(), elems.begin(), elems.end());
    }
    friend bool operator==(const Ideal& a, const Ideal& b) { return a.elems == b.elems; }
    friend bool operator<(const Ideal& a, const Ideal& b) { return a.elems < b.elems; }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (i) s += ",";
            s += elems[i].str();
        }
        return s + "}";
    }
};

struct IdealVerdict {
    bool ok = false;
    std::string reason;
    std::vector<Element> witness;
};

// Definition check: nonempty down-set closed under oplus.
inline IdealVerdict is_ideal(const Validated& M, const std::vector<Element>& set) {
    Ideal I{std::vector<Element>(set)};
    if (I.elems.empty()) return {false, "empty set", {}};
    if (!I.contains(M->bottom())) return {false, "0 missing", {M->bottom()}};
    if (!M->is_finite()) throw InputError("is_ideal: only finite algebras are supported");
    for (const auto& x : I.elems) {
        for (const auto& d : M->elements())
            if (M->leq(d, x) && !I.contains(d))
                return {false, "not a down-set: " + d.str() + " <= " + x.str(), {d, x}};
        for (const auto& y : I.elems) {
            Element s = M->oplus(x, y);
            if (!I.contains(s))
                return {false, "not oplus-closed: " + x.str() + " (+) " + y.str() + " = " + s.str(),
                        {x, y}};
        }
    }
    return {true, "", {}};
}

namespace detail {

constexpr std::size_t kIdealCarrierCap = 24;

inline void require_ideal_scale(const Algebra& A, std::size_t cap) {
    if (!A.is_finite()) throw InputError("ideal enumeration: only finite algebras are supported");
    if (A.size() > cap)
        throw InputError("ideal enumeration: carrier size " + std::to_string(A.size()) +
                         " exceeds the cap " + std::to_string(cap));
}

}  // namespace detail

// All ideals. Every ideal of a finite algebra is the down-set of its greatest
// element, which is idempotent (g <= g (+) g <= g), so the ideals are exactly
// the principal down-sets of idempotents. A brute-force subset scan backs
// this up in the test suite.
inline std::vector<Ideal> ideals(const Validated& M, std::size_t cap = detail::kIdealCarrierCap) {
    detail::require_ideal_scale(*M, cap);
    std::vector<Ideal> out;
    for (const auto& a : idempotents(M)) {
        std::vector<Element> down;
        for (const auto& x : M->elements())
            if (M->leq(x, a)) down.push_back(x);
        out.emplace_back(std::move(down));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Smallest ideal containing base and the seeds: saturate under oplus and
// downward closure.
inline Ideal generated_ideal(const Validated& M, const std::vector<Element>& base,
                             const std::vector<Element>& seeds) {
    if (!M->is_finite()) throw InputError("generated_ideal: only finite algebras are supported");
    std::set<Element> cur(base.begin(), base.end());
    cur.insert(seeds.begin(), seeds.end());
    cur.insert(M->bottom());
    auto elems = M->elements();
    for (;;) {
        std::set<Element> next = cur;
        for (const auto& x : cur)
            for (const auto& y : cur) next.insert(M->oplus(x, y));
        for (const auto& x : next)
            for (const auto& d : elems)
                if (M->leq(d, x)) next.insert(d);
        if (next == cur) break;
        cur = std::move(next);
    }
    return Ideal(std::vector<Element>(cur.begin(), cur.end()));
}

inline bool is_proper(const Validated& M, const Ideal& I) { return I.elems.size() < M->size(); }

inline bool is_prime(const Validated& M, const Ideal& I) {
    if (!is_proper(M, I)) throw InputError("primality is asked of proper ideals only");
    for (const auto& x : M->elements())
        for (const auto& y : M->elements())
            if (I.contains(M->meet(x, y)) && !I.contains(x) && !I.contains(y)) return false;
    return true;
}

// Proper prime ideals in canonical (lexicographic-on-sorted-lists) order.
inline std::vector<Ideal> spec(const Validated& M, std::size_t cap = detail::kIdealCarrierCap) {
    std::vector<Ideal> out;
    for (auto& I : ideals(M, cap))
        if (is_proper(M, I) && is_prime(M, I)) out.push_back(std::move(I));
    return out;
}

// A maximal member of {J ideal : I subset J, z not in J}. Finitely many
// candidates, so maximality is decided exhaustively; the result must come
// out prime, and a non-prime result is a bug, not bad input.
inline Ideal separating_prime(const Validated& M, const Ideal& I, const Element& z,
                              std::size_t cap = detail::kIdealCarrierCap) {
    if (I.contains(z)) throw InputError("separating_prime: " + z.str() + " already in the ideal");
    auto all = ideals(M, cap);
    std::vector<Ideal> cand;
    for (auto& J : all)
        if (I.subset_of(J) && !J.contains(z)) cand.push_back(std::move(J));
    std::vector<Ideal> maximal;
    for (const auto& J : cand) {
        bool top = true;
        for (const auto& K : cand)
            if (!(K == J) && J.subset_of(K)) { top = false; break; }
        if (top) maximal.push_back(J);
    }
    if (maximal.empty()) throw InputError("separating_prime: no candidate ideal");
    std::sort(maximal.begin(), maximal.end());
    const Ideal& P = maximal.front();
    if (!is_prime(M, P))
        throw std::runtime_error("bug: maximal separating ideal " + P.str() + " is not prime");
    return P;
}

// Quotient by the congruence th_I = {(x,y) : x (-) y, y (-) x in I}.
struct SpectrumEntry {
    Ideal ideal;
    std::shared_ptr<const FiniteAlgebra> quotient;
    std::vector<Element> class_reps;   // least-index representative per class
    std::vector<int> projection;       // carrier position -> class index

    int project(const Validated& M, const Element& x) const {
        auto elems = M->elements();
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (elems[i] == x) return projection[i];
        throw InputError("element " + x.str() + " not in the carrier");
    }
};

inline SpectrumEntry quotient(const Validated& M, const Ideal& I) {
    if (!M->is_finite()) throw InputError("quotient: only finite algebras are supported");
    auto chk = is_ideal(M, I.elems);
    if (!chk.ok) throw InputError("quotient: not an ideal (" + chk.reason + ")");
    auto elems = M->elements();
    const std::size_t n = elems.size();
    auto related = [&](const Element& x, const Element& y) {
        return I.contains(M->ominus(x, y)) && I.contains(M->ominus(y, x));
    };

    std::vector<int> cls(n, -1);
    std::vector<Element> reps;
    for (std::size_t i = 0; i < n; ++i) {
        if (cls[i] >= 0) continue;
        int c = (int)reps.size();
        reps.push_back(elems[i]);  // first in carrier order = least index
        for (std::size_t j = i; j < n; ++j)
            if (cls[j] < 0 && related(elems[i], elems[j])) cls[j] = c;
    }

    const std::size_t q = reps.size();
    auto class_of = [&](const Element& r) {
        for (std::size_t i = 0; i < n; ++i)
            if (elems[i] == r) return cls[i];
        throw std::runtime_error("bug: quotient class lookup failed for " + r.str());
    };
    auto build = [&](Element (Algebra::*op)(const Element&, const Element&) const) {
        std::vector<int> t(q * q);
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t b = 0; b < q; ++b)
                t[a * q + b] = class_of(((*M).*op)(reps[a], reps[b]));
        return t;
    };
    auto jt = build(&Algebra::join);
    auto mt = build(&Algebra::meet);
    auto pt = build(&Algebra::oplus);
    auto st = build(&Algebra::ominus);
    auto Q = std::make_shared<FiniteAlgebra>(q, std::move(jt), std::move(mt), std::move(pt),
                                             std::move(st));
    // The congruence guarantees well-definedness; validate the result anyway.
    auto rep = validate(*Q);
    if (!rep.pass) throw std::runtime_error("bug: quotient by " + I.str() + " fails validation");
    return SpectrumEntry{I, Q, std::move(reps), std::move(cls)};
}

inline bool quotient_is_chain(const Validated& M, const Ideal& I) {
    auto q = quotient(M, I);
    const auto& Q = *q.quotient;
    for (const auto& x : Q.elements())
        for (const auto& y : Q.elements())
            if (!Q.leq(x, y) && !Q.leq(y, x)) return false;
    return true;
}

// phi(x) = (x / P)_{P in Spec(M)}, checked to be an injective homomorphism.
struct SubdirectEmbedding {
    std::vector<SpectrumEntry> factors;
    bool injective = false;
    bool homomorphism = false;

    std::vector<int> image(const Validated& M, const Element& x) const {
        std::vector<int> v;
        v.reserve(factors.size());
        for (const auto& f : factors) v.push_back(f.project(M, x));
        return v;
    }
};

inline SubdirectEmbedding subdirect_embedding(const Validated& M,
                                              std::size_t cap = detail::kIdealCarrierCap) {
    if (M->size() < 2) throw InputError("subdirect_embedding: algebra must be nonzero");
    SubdirectEmbedding out;
    for (const auto& P : spec(M, cap)) out.factors.push_back(quotient(M, P));
    auto elems = M->elements();
    out.injective = true;
    for (std::size_t i = 0; i < elems.size() && out.injective; ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j)
            if (out.image(M, elems[i]) == out.image(M, elems[j])) { out.injective = false; break; }
    out.homomorphism = true;
    using Op = Element (Algebra::*)(const Element&, const Element&) const;
    for (Op op : {(Op)&Algebra::join, (Op)&Algebra::meet, (Op)&Algebra::oplus, (Op)&Algebra::ominus})
        for (const auto& x : elems)
            for (const auto& y : elems) {
                Element r = ((*M).*op)(x, y);
                std::vector<int> lhs = out.image(M, r);
                std::vector<int> rhs;
                for (const auto& f : out.factors) {
                    const auto& Q = *f.quotient;
                    Element qr = (Q.*op)(Element::fin(f.project(M, x)), Element::fin(f.project(M, y)));
                    rhs.push_back((int)qr.idx());
                }
                if (lhs != rhs) out.homomorphism = false;
            }
    return out;
}

}  // namespace wemv
