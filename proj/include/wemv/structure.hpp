#pragma once

#include <functional>

#include "wemv/constructors.hpp"
#include "wemv/ideals.hpp"

namespace wemv {

// Subalgebra described per factor: everything, just {0}, or an explicit list.
// Non-product algebras use a single part.
struct SubPart {
    enum class Kind { All, Zero, Explicit } kind;
    std::vector<Element> elems;  // Explicit only

    bool contains(const Algebra& f, const Element& e) const {
        switch (kind) {
            case Kind::All: return true;
            case Kind::Zero: return e == f.bottom();
            case Kind::Explicit:
                return std::find(elems.begin(), elems.end(), e) != elems.end();
        }
        return false;
    }
    std::string describe() const {
        if (kind == Kind::All) return "all";
        if (kind == Kind::Zero) return "{0}";
        std::string s = "{";
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (i) s += ",";
            s += elems[i].str();
        }
        return s + "}";
    }
};

struct SubalgebraDesc {
    AlgebraPtr base;
    std::vector<SubPart> parts;
    // True when parts describe the factors of a product base one by one;
    // false when a single part lists whole elements of the base.
    bool per_factor = false;

    bool is_product() const { return per_factor; }

    bool contains(const Element& e) const {
        if (!is_product()) return parts[0].contains(*base, e);
        auto* p = dynamic_cast<const ProductAlgebra*>(base.get());
        const auto& t = e.as_tup();
        for (std::size_t i = 0; i < parts.size(); ++i)
            if (!parts[i].contains(*p->factors()[i], t[i])) return false;
        return true;
    }

    bool enumerable() const {
        for (const auto& p : parts)
            if (p.kind == SubPart::Kind::All) return false;
        return true;
    }

    std::vector<Element> elements() const {
        if (!is_product()) {
            if (parts[0].kind == SubPart::Kind::Zero) return {base->bottom()};
            if (parts[0].kind == SubPart::Kind::All) return base->elements();
            return parts[0].elems;
        }
        auto* p = dynamic_cast<const ProductAlgebra*>(base.get());
        std::vector<Element> out{Element::tup({})};
        for (std::size_t i = 0; i < parts.size(); ++i) {
            std::vector<Element> fi;
            if (parts[i].kind == SubPart::Kind::Zero) fi = {p->factors()[i]->bottom()};
            else if (parts[i].kind == SubPart::Kind::All) fi = p->factors()[i]->elements();
            else fi = parts[i].elems;
            std::vector<Element> next;
            for (const auto& prefix : out)
                for (const auto& e : fi) {
                    auto t = prefix.as_tup();
                    t.push_back(e);
                    next.push_back(Element::tup(std::move(t)));
                }
            out = std::move(next);
        }
        return out;
    }

    std::string describe() const {
        std::string s;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += " x ";
            s += parts[i].describe();
        }
        return s;
    }
};

namespace detail {

inline SubPart factor_m1(const Algebra& f) {
    if (f.is_finite()) {
        // Finite algebras have an idempotent top, so the whole carrier.
        return {SubPart::Kind::Explicit, f.elements()};
    }
    if (dynamic_cast<const ConeAlgebra*>(&f)) return {SubPart::Kind::Zero, {}};
    if (dynamic_cast<const PerfectAlgebra*>(&f)) return {SubPart::Kind::All, {}};
    throw InputError("m1_part unsupported for factor kind " + f.kind());
}

inline SubPart factor_m2(const Algebra& f) {
    if (f.is_finite()) {
        // x ^ a = 0 for every idempotent a; a = top forces x = 0.
        std::vector<Element> out;
        std::vector<Element> ids;
        for (const auto& e : f.elements())
            if (f.oplus(e, e) == e) ids.push_back(e);
        for (const auto& x : f.elements()) {
            bool ok = true;
            for (const auto& a : ids)
                if (f.meet(x, a) != f.bottom()) { ok = false; break; }
            if (ok) out.push_back(x);
        }
        return {SubPart::Kind::Explicit, std::move(out)};
    }
    if (dynamic_cast<const ConeAlgebra*>(&f)) return {SubPart::Kind::All, {}};
    if (dynamic_cast<const PerfectAlgebra*>(&f)) return {SubPart::Kind::Zero, {}};
    throw InputError("m2_part unsupported for factor kind " + f.kind());
}

}  // namespace detail

// M1 = down-set of the idempotents, M2 = {x : x ^ a = 0 for all idempotent a}.
inline SubalgebraDesc m1_part(const Validated& M) {
    SubalgebraDesc d{M.ptr(), {}};
    if (auto* p = dynamic_cast<const ProductAlgebra*>(M.ptr().get())) {
        d.per_factor = true;
        for (const auto& f : p->factors()) d.parts.push_back(detail::factor_m1(*f));
    } else {
        d.parts.push_back(detail::factor_m1(*M));
    }
    return d;
}

inline SubalgebraDesc m2_part(const Validated& M) {
    SubalgebraDesc d{M.ptr(), {}};
    if (auto* p = dynamic_cast<const ProductAlgebra*>(M.ptr().get())) {
        d.per_factor = true;
        for (const auto& f : p->factors()) d.parts.push_back(detail::factor_m2(*f));
    } else {
        d.parts.push_back(detail::factor_m2(*M));
    }
    return d;
}

// Greatest element of {x ^ a : a in I(M)} when one exists among the given
// candidate idempotents.
inline std::optional<Element> decomposition_criterion_over(const Validated& M, const Element& x,
                                                           const std::vector<Element>& cands) {
    std::vector<Element> meets;
    for (const auto& a : cands) meets.push_back(M->meet(x, a));
    for (const auto& c : meets) {
        bool greatest = true;
        for (const auto& d : meets)
            if (!M->leq(d, c)) { greatest = false; break; }
        if (greatest) return c;
    }
    return std::nullopt;
}

inline std::optional<Element> decomposition_criterion(const Validated& M, const Element& x) {
    return decomposition_criterion_over(M, x, idempotents(M));
}

struct Decomposition {
    enum class Status { Decomposed, CriterionFailed, Unknown };
    Status status = Status::Unknown;
    std::optional<Element> witness;
    SubalgebraDesc m1, m2;
    bool hom_ok = false;
    bool bijective_ok = false;
    bool quotient_iso_ok = false;  // finite only: M/M1 isomorphic to M2
    std::vector<std::pair<Element, std::pair<Element, Element>>> iso_sample;
};

// Core of decompose with an explicit candidate pool. certified=false means
// the pool may be incomplete, so a missing greatest element yields Unknown
// rather than a refutation.
inline Decomposition decompose_over(const Validated& M, const std::vector<Element>& cands,
                                    bool certified, const SampleOptions& opts = {}) {
    Decomposition out;
    out.m1 = m1_part(M);
    out.m2 = m2_part(M);

    auto phi = [&](const Element& x) -> std::optional<std::pair<Element, Element>> {
        auto x1 = decomposition_criterion_over(M, x, cands);
        if (!x1) return std::nullopt;
        return std::make_pair(*x1, M->ominus(x, *x1));
    };

    std::vector<Element> probes;
    if (M->is_finite()) {
        probes = M->elements();
    } else {
        std::mt19937_64 rng(opts.seed);
        for (std::size_t i = 0; i < opts.samples; ++i) probes.push_back(M->sample(rng, opts.bound));
        probes.push_back(M->bottom());
    }

    std::vector<std::pair<Element, std::pair<Element, Element>>> imgs;
    for (const auto& x : probes) {
        auto p = phi(x);
        if (!p) {
            out.status = certified ? Decomposition::Status::CriterionFailed
                                   : Decomposition::Status::Unknown;
            out.witness = x;
            return out;
        }
        imgs.emplace_back(x, *p);
    }
    out.status = Decomposition::Status::Decomposed;
    for (std::size_t i = 0; i < std::min<std::size_t>(imgs.size(), 5); ++i)
        out.iso_sample.push_back(imgs[i]);

    // Homomorphism: phi(x op y) = (x1 op y1, x2 op y2), componentwise in M
    // since both parts are closed.
    out.hom_ok = true;
    using Op = Element (Algebra::*)(const Element&, const Element&) const;
    const std::size_t pair_cap = M->is_finite() ? imgs.size() : 200;
    for (Op op : {(Op)&Algebra::join, (Op)&Algebra::meet, (Op)&Algebra::oplus, (Op)&Algebra::ominus})
        for (std::size_t i = 0; i < std::min(imgs.size(), pair_cap) && out.hom_ok; ++i)
            for (std::size_t j = 0; j < std::min(imgs.size(), pair_cap) && out.hom_ok; ++j) {
                Element r = ((*M).*op)(imgs[i].first, imgs[j].first);
                auto pr = phi(r);
                if (!pr) { out.hom_ok = false; break; }
                if (pr->first != ((*M).*op)(imgs[i].second.first, imgs[j].second.first) ||
                    pr->second != ((*M).*op)(imgs[i].second.second, imgs[j].second.second))
                    out.hom_ok = false;
            }

    if (M->is_finite()) {
        // Injectivity + counting surjectivity.
        out.bijective_ok = true;
        for (std::size_t i = 0; i < imgs.size(); ++i)
            for (std::size_t j = i + 1; j < imgs.size(); ++j)
                if (imgs[i].second == imgs[j].second) out.bijective_ok = false;
        if (out.m1.elements().size() * out.m2.elements().size() != M->size())
            out.bijective_ok = false;
    } else {
        // Sampled: distinct probes map to distinct pairs, and (u, v) with
        // u in M1, v in M2 is hit by u v v.
        out.bijective_ok = true;
        for (std::size_t i = 0; i < std::min(imgs.size(), pair_cap); ++i)
            for (std::size_t j = i + 1; j < std::min(imgs.size(), pair_cap); ++j)
                if (imgs[i].first != imgs[j].first && imgs[i].second == imgs[j].second)
                    out.bijective_ok = false;
        for (std::size_t i = 0; i < std::min(imgs.size(), pair_cap) && out.bijective_ok; ++i)
            for (std::size_t j = 0; j < std::min(imgs.size(), pair_cap); ++j) {
                const Element& u = imgs[i].second.first;
                const Element& v = imgs[j].second.second;
                auto p = phi(M->join(u, v));
                if (!p || p->first != u || p->second != v) { out.bijective_ok = false; break; }
            }
    }

    if (M->is_finite()) {
        // M / M1 is the strict part M2: the map class-of-r -> r2 must be a
        // bijection onto M2 compatible with all operations.
        auto m1e = out.m1.elements();
        auto chk = is_ideal(M, m1e);
        out.quotient_iso_ok = false;
        if (chk.ok) {
            auto q = quotient(M, Ideal(std::move(m1e)));
            auto m2e = out.m2.elements();
            std::sort(m2e.begin(), m2e.end());
            std::vector<Element> im;
            for (const auto& r : q.class_reps) im.push_back(phi(r)->second);
            auto sorted = im;
            std::sort(sorted.begin(), sorted.end());
            bool ok = sorted == m2e;
            const std::size_t qn = im.size();
            for (Op op : {(Op)&Algebra::join, (Op)&Algebra::meet, (Op)&Algebra::oplus,
                          (Op)&Algebra::ominus})
                for (std::size_t a = 0; a < qn && ok; ++a)
                    for (std::size_t b = 0; b < qn; ++b) {
                        Element qe = ((*q.quotient).*op)(Element::fin((long long)a),
                                                         Element::fin((long long)b));
                        if (im[(std::size_t)qe.idx()] != ((*M).*op)(im[a], im[b])) {
                            ok = false;
                            break;
                        }
                    }
            out.quotient_iso_ok = ok;
        }
    } else {
        out.quotient_iso_ok = true;  // not applicable; finite fixtures carry the check
    }
    return out;
}

inline Decomposition decompose(const Validated& M, const SampleOptions& opts = {}) {
    return decompose_over(M, idempotents(M), true, opts);
}

// A closed subset of M repackaged as a standalone finite algebra.
struct FiniteRestriction {
    std::shared_ptr<const FiniteAlgebra> algebra;
    std::vector<Element> carrier;  // M-elements in index order, bottom first

    int index_of(const Element& e) const {
        for (std::size_t i = 0; i < carrier.size(); ++i)
            if (carrier[i] == e) return (int)i;
        return -1;
    }
};

inline FiniteRestriction restrict_algebra(const Algebra& M, std::vector<Element> carrier) {
    std::sort(carrier.begin(), carrier.end());
    auto it = std::find(carrier.begin(), carrier.end(), M.bottom());
    if (it == carrier.end()) throw InputError("restriction carrier lacks 0");
    std::rotate(carrier.begin(), it, it + 1);
    const std::size_t n = carrier.size();
    auto idx = [&](const Element& e) {
        for (std::size_t i = 0; i < n; ++i)
            if (carrier[i] == e) return (int)i;
        throw std::runtime_error("bug: restriction carrier not closed at " + e.str());
    };
    std::vector<int> jt(n * n), mt(n * n), pt(n * n), st(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            jt[i * n + j] = idx(M.join(carrier[i], carrier[j]));
            mt[i * n + j] = idx(M.meet(carrier[i], carrier[j]));
            pt[i * n + j] = idx(M.oplus(carrier[i], carrier[j]));
            st[i * n + j] = idx(M.ominus(carrier[i], carrier[j]));
        }
    auto A = std::make_shared<FiniteAlgebra>(n, std::move(jt), std::move(mt), std::move(pt),
                                             std::move(st));
    return {std::move(A), std::move(carrier)};
}

// Representing algebra N = M union M*: an ambient algebra with top in which
// M sits as a maximal ideal. Finite algebras (and anything with a top) are
// their own ambient; a cone of rank k embeds into the perfect algebra over
// the same tail group; products go componentwise.
struct Representing {
    AlgebraPtr base;
    AlgebraPtr ambient;
    std::string member_description;
    bool disjoint_ok = false;
    bool maximality_ok = false;
    bool odot_closed_ok = false;

    Element embed(const Element& x) const { return embed_rec(*base, x); }
    bool member(const Element& e) const { return member_rec(*base, e); }
    Element complement(const Element& e) const { return ambient->ominus(ambient->top(), e); }

private:
    static Element embed_rec(const Algebra& m, const Element& x) {
        if (m.has_top()) return x;
        if (dynamic_cast<const ConeAlgebra*>(&m)) return Element::bounded(0, x.as_vec());
        if (auto* p = dynamic_cast<const ProductAlgebra*>(&m)) {
            Element::Tuple t;
            const auto& xs = x.as_tup();
            for (std::size_t i = 0; i < xs.size(); ++i)
                t.push_back(embed_rec(*p->factors()[i], xs[i]));
            return Element::tup(std::move(t));
        }
        throw InputError("representing unsupported for kind " + m.kind());
    }
    static bool member_rec(const Algebra& m, const Element& e) {
        if (m.has_top()) return true;
        if (dynamic_cast<const ConeAlgebra*>(&m)) return e.as_bounded().first == 0;
        if (auto* p = dynamic_cast<const ProductAlgebra*>(&m)) {
            const auto& es = e.as_tup();
            for (std::size_t i = 0; i < es.size(); ++i)
                if (!member_rec(*p->factors()[i], es[i])) return false;
            return true;
        }
        throw InputError("representing unsupported for kind " + m.kind());
    }
};

namespace detail {

inline AlgebraPtr representing_ambient(const AlgebraPtr& m, std::string& desc) {
    if (m->has_top()) {
        desc += "all";
        return m;
    }
    if (auto* c = dynamic_cast<const ConeAlgebra*>(m.get())) {
        desc += "head 0";
        return std::make_shared<PerfectAlgebra>(c->rank(), 1, c->order());
    }
    if (auto* p = dynamic_cast<const ProductAlgebra*>(m.get())) {
        std::vector<AlgebraPtr> amb;
        for (std::size_t i = 0; i < p->factors().size(); ++i) {
            if (i) desc += " x ";
            amb.push_back(representing_ambient(p->factors()[i], desc));
        }
        return std::make_shared<ProductAlgebra>(std::move(amb));
    }
    throw InputError("representing unsupported for kind " + m->kind());
}

}  // namespace detail

inline Representing representing(const Validated& M, const SampleOptions& opts = {}) {
    Representing rep;
    rep.base = M.ptr();
    rep.ambient = detail::representing_ambient(M.ptr(), rep.member_description);

    if (M->has_top()) {
        // N = M already; the construction below targets topless algebras.
        rep.disjoint_ok = rep.maximality_ok = rep.odot_closed_ok = true;
        return rep;
    }
    const Algebra& N = *rep.ambient;
    const Element one = N.top();
    std::mt19937_64 rng(opts.seed);
    rep.disjoint_ok = rep.maximality_ok = rep.odot_closed_ok = true;
    for (std::size_t i = 0; i < opts.samples; ++i) {
        Element m = M->sample(rng, opts.bound), m2 = M->sample(rng, opts.bound);
        Element x = rep.embed(m), y = rep.embed(m2);
        // M and M* = {1 - m} are disjoint.
        if (y == rep.complement(x)) rep.disjoint_ok = false;
        // Any outsider z = 1 - m generates the whole of N over the image:
        // z (+) (1 - z) = 1 and 1 - z is back in the image.
        Element z = rep.complement(x);
        Element zc = N.ominus(one, z);
        if (rep.member(z) || !rep.member(zc) || N.oplus(z, zc) != one) rep.maximality_ok = false;
        // The Claim: odot restricted to the image lands in the image.
        if (!rep.member(odot(N, x, y))) rep.odot_closed_ok = false;
    }
    return rep;
}

// M isomorphic to [0,a] x ([0,a'] intersect M) for an idempotent a, with
// a' the complement of a (taken in M when it has a top, in the representing
// algebra otherwise).
struct Split {
    Element a;
    std::optional<Element> a_complement;  // in M, when M has a top
    FiniteRestriction lower;              // [0,a]
    SubalgebraDesc upper;                 // [0,a'] intersect M
    bool iso_hom_ok = false;
    bool iso_bijective_ok = false;
    std::optional<bool> upper_maximal_ideal;  // topless case only
};

inline Split split_at_idempotent(const Validated& M, const Element& a,
                                 const SampleOptions& opts = {}) {
    if (M->oplus(a, a) != a) throw InputError(a.str() + " is not idempotent");
    if (a == M->bottom()) throw InputError("split at 0 is trivial");
    if (M->has_top() && a == M->top()) throw InputError("split at the top is trivial");

    Split out;
    out.a = a;
    out.lower = restrict_algebra(*M, enumerate_interval(*M, a));

    std::function<Element(const Element&)> psi2;  // x -> x ^ a'
    if (M->has_top()) {
        Element ac = M->ominus(M->top(), a);
        out.a_complement = ac;
        out.upper = SubalgebraDesc{M.ptr(), {{SubPart::Kind::Explicit, enumerate_interval(*M, ac)}}};
        psi2 = [&M, ac](const Element& x) { return M->meet(x, ac); };
    } else {
        auto* p = dynamic_cast<const ProductAlgebra*>(M.ptr().get());
        if (!p) throw InputError("split unsupported for topless kind " + M->kind());
        const auto& fs = p->factors();
        const auto& as = a.as_tup();
        SubalgebraDesc upper{M.ptr(), {}};
        upper.per_factor = true;
        std::vector<std::optional<Element>> acomp(fs.size());  // per-factor a'
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (fs[i]->has_top()) {
                Element ac = fs[i]->ominus(fs[i]->top(), as[i]);
                acomp[i] = ac;
                upper.parts.push_back({SubPart::Kind::Explicit, enumerate_interval(*fs[i], ac)});
            } else {
                if (as[i] != fs[i]->bottom())
                    throw std::runtime_error("bug: nonzero idempotent in a strict factor");
                upper.parts.push_back({SubPart::Kind::All, {}});
            }
        }
        out.upper = upper;
        psi2 = [p, acomp](const Element& x) {
            const auto& xs = x.as_tup();
            Element::Tuple t;
            for (std::size_t i = 0; i < xs.size(); ++i)
                t.push_back(acomp[i] ? p->factors()[i]->meet(xs[i], *acomp[i]) : xs[i]);
            return Element::tup(std::move(t));
        };
    }
    auto psi1 = [&M, &a](const Element& x) { return M->meet(x, a); };

    using Op = Element (Algebra::*)(const Element&, const Element&) const;
    const std::array<Op, 4> ops = {(Op)&Algebra::join, (Op)&Algebra::meet, (Op)&Algebra::oplus,
                                   (Op)&Algebra::ominus};
    if (M->is_finite()) {
        auto elems = M->elements();
        out.iso_hom_ok = true;
        for (Op op : ops)
            for (const auto& x : elems)
                for (const auto& y : elems) {
                    Element r = ((*M).*op)(x, y);
                    if (psi1(r) != ((*M).*op)(psi1(x), psi1(y)) ||
                        psi2(r) != ((*M).*op)(psi2(x), psi2(y)))
                        out.iso_hom_ok = false;
                }
        out.iso_bijective_ok = true;
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = i + 1; j < elems.size(); ++j)
                if (psi1(elems[i]) == psi1(elems[j]) && psi2(elems[i]) == psi2(elems[j]))
                    out.iso_bijective_ok = false;
        if (out.lower.carrier.size() * out.upper.elements().size() != M->size())
            out.iso_bijective_ok = false;
    } else {
        std::mt19937_64 rng(opts.seed);
        out.iso_hom_ok = out.iso_bijective_ok = true;
        std::vector<Element> probes;
        for (std::size_t i = 0; i < std::max<std::size_t>(opts.samples / 50, 64); ++i)
            probes.push_back(M->sample(rng, opts.bound));
        for (Op op : ops)
            for (const auto& x : probes)
                for (const auto& y : probes) {
                    Element r = ((*M).*op)(x, y);
                    if (psi1(r) != ((*M).*op)(psi1(x), psi1(y)) ||
                        psi2(r) != ((*M).*op)(psi2(x), psi2(y)))
                        out.iso_hom_ok = false;
                }
        for (std::size_t i = 0; i < probes.size(); ++i)
            for (std::size_t j = i + 1; j < probes.size(); ++j)
                if (probes[i] != probes[j] && psi1(probes[i]) == psi1(probes[j]) &&
                    psi2(probes[i]) == psi2(probes[j]))
                    out.iso_bijective_ok = false;
        // Surjectivity: (u, v) is hit by u v v.
        for (const auto& u : out.lower.carrier)
            for (const auto& x : probes) {
                Element v = psi2(x);
                Element w = M->join(u, v);
                if (psi1(w) != u || psi2(w) != v) out.iso_bijective_ok = false;
            }
        // [0,a'] intersect M is a maximal ideal of the ambient interval
        // [0,a'] in the representing algebra: every outsider is a complement
        // a' - v and regenerates a' together with v.
        auto rep = representing(M, opts);
        const Algebra& N = *rep.ambient;
        Element aN = rep.embed(a);
        Element acN = N.ominus(N.top(), aN);
        bool maximal = true;
        for (const auto& x : probes) {
            Element v = rep.embed(psi2(x));
            Element z = N.ominus(acN, v);
            Element zc = N.ominus(acN, z);
            if (rep.member(z) || !rep.member(zc) || N.oplus(z, zc) != acN) maximal = false;
        }
        out.upper_maximal_ideal = maximal;
    }
    return out;
}

}  // namespace wemv
