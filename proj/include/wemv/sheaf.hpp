#pragma once

#include "wemv/ideals.hpp"

namespace wemv {

namespace detail {

constexpr std::size_t kIdemCap = 16;  // subset enumeration over I(M)

inline bool idem_downset_joinclosed(const Algebra& A, const std::vector<Element>& idems,
                                    const std::vector<bool>& in) {
    for (std::size_t i = 0; i < idems.size(); ++i) {
        if (!in[i]) continue;
        for (std::size_t j = 0; j < idems.size(); ++j) {
            if (A.leq(idems[j], idems[i]) && !in[j]) return false;  // down-set in I(M)
            if (in[j]) {
                Element v = A.join(idems[i], idems[j]);
                auto it = std::find(idems.begin(), idems.end(), v);
                if (it == idems.end() || !in[(std::size_t)(it - idems.begin())]) return false;
            }
        }
    }
    return true;
}

}  // namespace detail

// Ideals of the lattice I(M) (idempotents with oplus = join), as sorted
// element lists over the canonical idempotent order.
inline std::vector<std::vector<Element>> idempotent_lattice_ideals(const Validated& M) {
    auto idems = idempotents(M);
    std::sort(idems.begin(), idems.end());
    if (idems.size() > detail::kIdemCap)
        throw InputError("idempotent lattice too large: " + std::to_string(idems.size()));
    std::vector<std::vector<Element>> out;
    for (std::size_t mask = 1; mask < (1u << idems.size()); ++mask) {
        std::vector<bool> in(idems.size(), false);
        for (std::size_t i = 0; i < idems.size(); ++i) in[i] = mask & (1u << i);
        if (!in[0]) continue;  // 0 is the least idempotent in canonical order
        if (detail::idem_downset_joinclosed(*M, idems, in)) {
            std::vector<Element> s;
            for (std::size_t i = 0; i < idems.size(); ++i)
                if (in[i]) s.push_back(idems[i]);
            out.push_back(std::move(s));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct BooleanSpectrum {
    std::vector<Element> idems;                  // I(M), canonical order
    std::vector<std::vector<Element>> points;    // prime ideals of I(M)
    std::vector<std::vector<std::size_t>> basis; // V_a per idempotent: point indices
    bool basis_law_ok = false;                   // V_a cap V_b = V_{a ^ b}
};

// Prime spectrum of I(M) with the hull-kernel basis V_a = {P : a not in P}.
inline BooleanSpectrum boolean_spectrum(const Validated& M) {
    if (!M->is_finite()) throw InputError("boolean_spectrum: only finite algebras are supported");
    auto emv = is_emv(M);
    if (!emv.emv) throw InputError("boolean_spectrum: not an EMV-algebra (" + emv.reason + ")");
    BooleanSpectrum out;
    out.idems = idempotents(M);
    std::sort(out.idems.begin(), out.idems.end());
    auto contains = [](const std::vector<Element>& s, const Element& e) {
        return std::binary_search(s.begin(), s.end(), e);
    };
    for (const auto& I : idempotent_lattice_ideals(M)) {
        if (I.size() == out.idems.size()) continue;  // proper only
        bool prime = true;
        for (const auto& a : out.idems)
            for (const auto& b : out.idems)
                if (contains(I, M->meet(a, b)) && !contains(I, a) && !contains(I, b)) prime = false;
        if (prime) out.points.push_back(I);
    }
    out.basis.resize(out.idems.size());
    for (std::size_t ai = 0; ai < out.idems.size(); ++ai)
        for (std::size_t pi = 0; pi < out.points.size(); ++pi)
            if (!contains(out.points[pi], out.idems[ai])) out.basis[ai].push_back(pi);
    out.basis_law_ok = true;
    for (std::size_t ai = 0; ai < out.idems.size(); ++ai)
        for (std::size_t bi = 0; bi < out.idems.size(); ++bi) {
            Element m = M->meet(out.idems[ai], out.idems[bi]);
            auto it = std::find(out.idems.begin(), out.idems.end(), m);
            std::vector<std::size_t> inter;
            std::set_intersection(out.basis[ai].begin(), out.basis[ai].end(),
                                  out.basis[bi].begin(), out.basis[bi].end(),
                                  std::back_inserter(inter));
            if (it == out.idems.end() ||
                inter != out.basis[(std::size_t)(it - out.idems.begin())])
                out.basis_law_ok = false;
        }
    return out;
}

// Stonean ideal: the down-closure in M of a prime ideal P of I(M).
inline Ideal stone_ideal(const Validated& M, const std::vector<Element>& P) {
    auto spec = boolean_spectrum(M);
    auto sorted = P;
    std::sort(sorted.begin(), sorted.end());
    if (std::find(spec.points.begin(), spec.points.end(), sorted) == spec.points.end())
        throw InputError("not a prime ideal of I(M)");
    std::vector<Element> down;
    for (const auto& x : M->elements())
        for (const auto& a : sorted)
            if (M->leq(x, a)) { down.push_back(x); break; }
    Ideal I(std::move(down));
    auto chk = is_ideal(M, I.elems);
    if (!chk.ok) throw std::runtime_error("bug: stone ideal is not an ideal: " + chk.reason);
    return I;
}

inline SpectrumEntry stalk(const Validated& M, const std::vector<Element>& P) {
    return quotient(M, stone_ideal(M, P));
}

struct SheafData {
    BooleanSpectrum spectrum;
    std::vector<SpectrumEntry> stalks;           // per point
    std::vector<std::vector<int>> sections;      // per carrier element: class per point
    bool stalks_indecomposable = false;          // <= 2 idempotents each
    bool sections_injective = false;
    bool section_algebra_ok = false;             // pointwise ops stay inside the section set
};

inline SheafData sections(const Validated& M) {
    SheafData out;
    out.spectrum = boolean_spectrum(M);
    for (const auto& P : out.spectrum.points) out.stalks.push_back(stalk(M, P));
    auto elems = M->elements();
    for (const auto& x : elems) {
        std::vector<int> sec;
        for (const auto& st : out.stalks) sec.push_back(st.project(M, x));
        out.sections.push_back(std::move(sec));
    }
    out.stalks_indecomposable = true;
    for (const auto& st : out.stalks) {
        std::size_t idem = 0;
        for (const auto& e : st.quotient->elements())
            if (st.quotient->oplus(e, e) == e) ++idem;
        if (idem > 2) out.stalks_indecomposable = false;
    }
    out.sections_injective = true;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j)
            if (out.sections[i] == out.sections[j]) out.sections_injective = false;
    // The pointwise operations keep the section set closed, so the sections
    // form an EMV-algebra isomorphic to M.
    out.section_algebra_ok = true;
    using Op = Element (Algebra::*)(const Element&, const Element&) const;
    for (Op op : {(Op)&Algebra::join, (Op)&Algebra::meet, (Op)&Algebra::oplus, (Op)&Algebra::ominus})
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = 0; j < elems.size(); ++j) {
                std::vector<int> pw;
                for (std::size_t k = 0; k < out.stalks.size(); ++k) {
                    const auto& Q = *out.stalks[k].quotient;
                    pw.push_back((int)(Q.*op)(Element::fin(out.sections[i][k]),
                                              Element::fin(out.sections[j][k]))
                                     .idx());
                }
                if (std::find(out.sections.begin(), out.sections.end(), pw) == out.sections.end())
                    out.section_algebra_ok = false;
            }
    return out;
}

// U(I, x) = {x / downarrow(P) : I not a subset of P} for an ideal I of I(M).
struct UBasisSet {
    std::vector<std::pair<std::size_t, int>> classes;  // (point index, stalk class)
};

inline UBasisSet u_basis(const Validated& M, const std::vector<Element>& I, const Element& x) {
    auto all = idempotent_lattice_ideals(M);
    auto sorted = I;
    std::sort(sorted.begin(), sorted.end());
    if (std::find(all.begin(), all.end(), sorted) == all.end())
        throw InputError("not an ideal of the lattice I(M)");
    auto spec = boolean_spectrum(M);
    UBasisSet out;
    for (std::size_t pi = 0; pi < spec.points.size(); ++pi) {
        const auto& P = spec.points[pi];
        bool subset = std::includes(P.begin(), P.end(), sorted.begin(), sorted.end());
        if (!subset) out.classes.emplace_back(pi, stalk(M, P).project(M, x));
    }
    return out;
}

// Quotient by x ~_a y iff x (.) a = y (.) a, with the restriction map
// M/~_b -> M/~_a for idempotents a <= b.
struct RestrictionMap {
    Element a, b;
    std::vector<Element> invariants_a, invariants_b;  // class keys x (.) a / x (.) b
    std::vector<int> map;                             // class index in b -> class index in a
    bool well_defined = false;
    bool surjective = false;
    bool ops_well_defined = false;  // induced operations depend only on classes
};

inline RestrictionMap idempotent_restriction(const Validated& M, const Element& a,
                                             const Element& b) {
    if (M->oplus(a, a) != a || M->oplus(b, b) != b)
        throw InputError("restriction endpoints must be idempotent");
    if (!M->leq(a, b)) throw InputError(a.str() + " is not below " + b.str());
    if (!M->is_finite()) throw InputError("idempotent_restriction: finite algebras only");

    RestrictionMap out;
    out.a = a;
    out.b = b;
    auto elems = M->elements();
    auto key = [&](const Element& x, const Element& e) { return odot(*M, x, e); };
    auto classes_of = [&](const Element& e) {
        std::vector<Element> keys;
        for (const auto& x : elems) {
            Element k = key(x, e);
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
        }
        std::sort(keys.begin(), keys.end());
        return keys;
    };
    out.invariants_a = classes_of(a);
    out.invariants_b = classes_of(b);
    auto cls = [&](const std::vector<Element>& keys, const Element& x, const Element& e) {
        Element k = key(x, e);
        return (int)(std::find(keys.begin(), keys.end(), k) - keys.begin());
    };

    // pi maps the b-class of x to the a-class of x; well-defined iff the
    // b-key determines the a-key.
    out.map.assign(out.invariants_b.size(), -1);
    out.well_defined = true;
    for (const auto& x : elems) {
        int cb = cls(out.invariants_b, x, b);
        int ca = cls(out.invariants_a, x, a);
        if (out.map[(std::size_t)cb] < 0) out.map[(std::size_t)cb] = ca;
        else if (out.map[(std::size_t)cb] != ca) out.well_defined = false;
    }
    out.surjective = true;
    for (std::size_t i = 0; i < out.invariants_a.size(); ++i)
        if (std::find(out.map.begin(), out.map.end(), (int)i) == out.map.end())
            out.surjective = false;

    // ~_a must be a congruence: the class of x op y depends only on the
    // classes of x and y.
    out.ops_well_defined = true;
    using Op = Element (Algebra::*)(const Element&, const Element&) const;
    for (Op op : {(Op)&Algebra::join, (Op)&Algebra::meet, (Op)&Algebra::oplus, (Op)&Algebra::ominus}) {
        std::map<std::pair<int, int>, int> table;
        for (const auto& x : elems)
            for (const auto& y : elems) {
                auto k = std::make_pair(cls(out.invariants_a, x, a), cls(out.invariants_a, y, a));
                int v = cls(out.invariants_a, ((*M).*op)(x, y), a);
                auto it = table.find(k);
                if (it == table.end()) table[k] = v;
                else if (it->second != v) out.ops_well_defined = false;
            }
    }
    return out;
}

inline std::vector<Ideal> maximal_ideals(const Validated& M,
                                         std::size_t cap = detail::kIdealCarrierCap) {
    auto all = ideals(M, cap);
    std::vector<Ideal> proper;
    for (auto& I : all)
        if (is_proper(M, I)) proper.push_back(std::move(I));
    std::vector<Ideal> out;
    for (const auto& I : proper) {
        bool maximal = true;
        for (const auto& J : proper)
            if (!(I == J) && I.subset_of(J)) maximal = false;
        if (maximal) out.push_back(I);
    }
    return out;
}

inline bool is_semisimple(const Validated& M) {
    if (M->size() == 1) return true;
    std::vector<Element> inter = M->elements();
    for (const auto& I : maximal_ideals(M)) {
        std::vector<Element> next;
        for (const auto& x : inter)
            if (I.contains(x)) next.push_back(x);
        inter = std::move(next);
    }
    return inter.size() == 1 && inter[0] == M->bottom();
}

struct ComparabilityVerdict {
    bool holds = true;
    std::optional<std::array<Element, 3>> witness;  // (a, x, y)
};

// General comparability: for every idempotent a and x, y <= a there is an
// idempotent e <= a with x ^ e <= y and y ^ (a - e) <= x.
inline ComparabilityVerdict has_general_comparability(const Validated& M) {
    if (!M->is_finite()) throw InputError("comparability: finite algebras only");
    auto idems = idempotents(M);
    for (const auto& a : idems) {
        std::vector<Element> below_a, idem_below;
        for (const auto& x : M->elements())
            if (M->leq(x, a)) below_a.push_back(x);
        for (const auto& e : idems)
            if (M->leq(e, a)) idem_below.push_back(e);
        for (const auto& x : below_a)
            for (const auto& y : below_a) {
                bool found = false;
                for (const auto& e : idem_below) {
                    if (M->leq(M->meet(x, e), y) &&
                        M->leq(M->meet(y, M->ominus(a, e)), x)) {
                        found = true;
                        break;
                    }
                }
                if (!found) return {false, std::array<Element, 3>{a, x, y}};
            }
    }
    return {true, std::nullopt};
}

struct SheafEmbedding {
    bool applicable = false;
    std::string reason;
    bool injective = false;
    bool hom_ok = false;
    SheafData data;
};

// Sheaf embedding x -> (x / downarrow(P))_P for semisimple EMV-algebras
// with general comparability.
inline SheafEmbedding semisimple_sheaf_embedding(const Validated& M) {
    SheafEmbedding out;
    auto emv = is_emv(M);
    if (!emv.emv) {
        out.reason = "not an EMV-algebra: " + emv.reason;
        return out;
    }
    if (!is_semisimple(M)) {
        out.reason = "not semisimple";
        return out;
    }
    if (!has_general_comparability(M).holds) {
        out.reason = "general comparability fails";
        return out;
    }
    out.applicable = true;
    out.data = sections(M);
    out.injective = out.data.sections_injective;
    out.hom_ok = out.data.section_algebra_ok;
    // The section set being operation-closed with the sections computed via
    // the quotient projections makes the map a homomorphism by construction;
    // verify the identities directly as well.
    using Op = Element (Algebra::*)(const Element&, const Element&) const;
    auto elems = M->elements();
    for (Op op : {(Op)&Algebra::join, (Op)&Algebra::meet, (Op)&Algebra::oplus, (Op)&Algebra::ominus})
        for (const auto& x : elems)
            for (const auto& y : elems) {
                Element r = ((*M).*op)(x, y);
                for (std::size_t k = 0; k < out.data.stalks.size(); ++k) {
                    const auto& st = out.data.stalks[k];
                    const auto& Q = *st.quotient;
                    Element q = (Q.*op)(Element::fin(st.project(M, x)),
                                        Element::fin(st.project(M, y)));
                    if ((int)q.idx() != st.project(M, r)) out.hom_ok = false;
                }
            }
    return out;
}

// Sheaf-representation check for a user-supplied finite topology and ideal
// family: the family must separate points, have open membership sets, and
// embed the algebra into the product of its quotients.
struct CustomSheafVerdict {
    bool zero_intersection = false;  // (a)
    bool membership_open = false;    // (b)
    bool embedding_ok = false;       // (c) injective homomorphism
    std::string detail;
    bool pass() const { return zero_intersection && membership_open && embedding_ok; }
};

inline CustomSheafVerdict custom_sheaf_check(const Validated& M, std::size_t points,
                                             const std::vector<std::vector<std::size_t>>& opens,
                                             const std::vector<Ideal>& family) {
    if (family.size() != points) throw InputError("ideal family size must match the point count");
    auto norm = [](std::vector<std::size_t> s) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    };
    std::vector<std::vector<std::size_t>> tops;
    for (auto o : opens) {
        for (auto p : o)
            if (p >= points) throw InputError("open set mentions an unknown point");
        tops.push_back(norm(std::move(o)));
    }
    std::vector<std::size_t> whole(points);
    for (std::size_t i = 0; i < points; ++i) whole[i] = i;
    auto has = [&](const std::vector<std::size_t>& s) {
        return std::find(tops.begin(), tops.end(), s) != tops.end();
    };
    if (!has({}) || !has(whole)) throw InputError("topology must contain the empty set and X");
    for (const auto& u : tops)
        for (const auto& v : tops) {
            std::vector<std::size_t> un, in;
            std::set_union(u.begin(), u.end(), v.begin(), v.end(), std::back_inserter(un));
            std::set_intersection(u.begin(), u.end(), v.begin(), v.end(), std::back_inserter(in));
            if (!has(un) || !has(in))
                throw InputError("topology is not closed under union/intersection");
        }
    for (const auto& I : family) {
        auto chk = is_ideal(M, I.elems);
        if (!chk.ok) throw InputError("family member is not an ideal: " + chk.reason);
    }

    CustomSheafVerdict out;
    auto elems = M->elements();
    // (a)
    out.zero_intersection = true;
    for (const auto& x : elems) {
        if (x == M->bottom()) continue;
        bool everywhere = true;
        for (const auto& I : family)
            if (!I.contains(x)) everywhere = false;
        if (everywhere) {
            out.zero_intersection = false;
            out.detail = "intersection contains " + x.str();
        }
    }
    // (b)
    out.membership_open = true;
    for (const auto& x : elems) {
        std::vector<std::size_t> where;
        for (std::size_t p = 0; p < points; ++p)
            if (family[p].contains(x)) where.push_back(p);
        if (!has(where)) {
            out.membership_open = false;
            if (out.detail.empty())
                out.detail = "membership set of " + x.str() + " is not open";
        }
    }
    // (c)
    std::vector<SpectrumEntry> qs;
    for (const auto& I : family) qs.push_back(quotient(M, I));
    auto img = [&](const Element& x) {
        std::vector<int> v;
        for (const auto& q : qs) v.push_back(q.project(M, x));
        return v;
    };
    out.embedding_ok = true;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j)
            if (img(elems[i]) == img(elems[j])) out.embedding_ok = false;
    using Op = Element (Algebra::*)(const Element&, const Element&) const;
    for (Op op : {(Op)&Algebra::join, (Op)&Algebra::meet, (Op)&Algebra::oplus, (Op)&Algebra::ominus})
        for (const auto& x : elems)
            for (const auto& y : elems) {
                Element r = ((*M).*op)(x, y);
                for (std::size_t k = 0; k < qs.size(); ++k) {
                    const auto& Q = *qs[k].quotient;
                    Element q = (Q.*op)(Element::fin(qs[k].project(M, x)),
                                        Element::fin(qs[k].project(M, y)));
                    if ((int)q.idx() != qs[k].project(M, r)) out.embedding_ok = false;
                }
            }
    return out;
}

// [0, a] is a Stone algebra: every annihilator {z <= a : z ^ x = 0} is the
// down-set of a complemented element of [0, a].
inline bool is_stone_lattice(const Validated& M, const Element& a) {
    auto box = enumerate_interval(*M, a);
    for (const auto& x : box) {
        std::vector<Element> ann;
        for (const auto& z : box)
            if (M->meet(z, x) == M->bottom()) ann.push_back(z);
        // principal: a greatest element b
        const Element* b = nullptr;
        for (const auto& c : ann) {
            bool greatest = true;
            for (const auto& d : ann)
                if (!M->leq(d, c)) greatest = false;
            if (greatest) { b = &c; break; }
        }
        if (!b) return false;
        // b complemented in [0, a]
        bool complemented = false;
        for (const auto& c : box)
            if (M->meet(*b, c) == M->bottom() && M->join(*b, c) == a) complemented = true;
        if (!complemented) return false;
    }
    return true;
}

inline bool is_stone_emv(const Validated& M) {
    if (!M->is_finite()) throw InputError("is_stone_emv: finite algebras only");
    auto idems = idempotents(M);
    for (const auto& x : M->elements()) {
        bool found = false;
        for (const auto& a : idems)
            if (M->leq(x, a) && is_stone_lattice(M, a)) { found = true; break; }
        if (!found) return false;
    }
    return true;
}

}  // namespace wemv
