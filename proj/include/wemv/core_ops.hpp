#pragma once

#include <map>

#include "wemv/cone.hpp"
#include "wemv/product.hpp"
#include "wemv/validate.hpp"

namespace wemv {

namespace detail {

inline Element cone_unit_vector(const ConeAlgebra& c) {
    Element::Vec g(c.rank(), 0);
    g[0] = 1;
    return Element::vec(std::move(g));
}

constexpr std::size_t kIntervalCap = 20000;

}  // namespace detail

// Enumerates the interval [0, a], or fails when it is infinite (lex cones
// and perfect algebras above the ideal part) or larger than the cap.
inline std::vector<Element> enumerate_interval(const Algebra& A, const Element& a,
                                               std::size_t cap = detail::kIntervalCap) {
    if (A.is_finite()) {
        std::vector<Element> out;
        for (const auto& e : A.elements())
            if (A.leq(e, a)) out.push_back(e);
        return out;
    }
    if (auto* c = dynamic_cast<const ConeAlgebra*>(&A)) {
        const auto& v = a.as_vec();
        if (c->order() == GroupOrder::Product) {
            std::size_t count = 1;
            for (auto h : v) {
                count *= (std::size_t)(h + 1);
                if (count > cap)
                    throw InputError("interval [0," + a.str() + "] exceeds the enumeration cap");
            }
            std::vector<Element> out;
            Element::Vec cur(v.size(), 0);
            for (;;) {
                out.push_back(Element::vec(cur));
                std::size_t i = 0;
                for (; i < cur.size(); ++i) {
                    if (cur[i] < v[i]) { ++cur[i]; break; }
                    cur[i] = 0;
                }
                if (i == cur.size()) break;
            }
            return out;
        }
        // Lex order: [0, a] is finite exactly when all but the last
        // coordinate of a vanish.
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            if (v[i] != 0)
                throw InputError("interval [0," + a.str() + "] is infinite in the lex cone");
        if ((std::size_t)v.back() + 1 > cap)
            throw InputError("interval [0," + a.str() + "] exceeds the enumeration cap");
        std::vector<Element> out;
        for (long long k = 0; k <= v.back(); ++k) {
            Element::Vec g(v.size(), 0);
            g.back() = k;
            out.push_back(Element::vec(std::move(g)));
        }
        return out;
    }
    if (auto* p = dynamic_cast<const PerfectAlgebra*>(&A)) {
        const auto& [s, g] = a.as_bounded();
        if (s != 0)
            throw InputError("interval [0," + a.str() + "] is infinite in the perfect algebra");
        ConeAlgebra tail(p->rank(), p->tail_order());
        auto ivl = enumerate_interval(tail, Element::vec(g), cap);
        std::vector<Element> out;
        out.reserve(ivl.size());
        for (const auto& e : ivl) out.push_back(Element::bounded(0, e.as_vec()));
        return out;
    }
    if (auto* p = dynamic_cast<const ProductAlgebra*>(&A)) {
        const auto& parts = a.as_tup();
        std::vector<Element> out{Element::tup({})};
        for (std::size_t i = 0; i < parts.size(); ++i) {
            auto fi = enumerate_interval(*p->factors()[i], parts[i], cap);
            std::vector<Element> next;
            if (out.size() * fi.size() > cap)
                throw InputError("interval [0," + a.str() + "] exceeds the enumeration cap");
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
    throw InputError("interval enumeration unsupported for kind " + A.kind());
}

// The exact idempotent set. All supported shapes have finitely many
// idempotents: cones contribute {0}, perfect algebras {0, top}.
inline std::vector<Element> idempotents(const Validated& M) {
    const Algebra& A = *M;
    if (A.is_finite()) {
        std::vector<Element> out;
        for (const auto& e : A.elements())
            if (A.oplus(e, e) == e) out.push_back(e);
        return out;
    }
    if (dynamic_cast<const ConeAlgebra*>(&A)) return {A.bottom()};
    if (dynamic_cast<const PerfectAlgebra*>(&A)) return {A.bottom(), A.top()};
    if (auto* p = dynamic_cast<const ProductAlgebra*>(&A)) {
        std::vector<Element> out{Element::tup({})};
        for (const auto& f : p->factors()) {
            std::vector<Element> fi;
            if (f->is_finite()) {
                for (const auto& e : f->elements())
                    if (f->oplus(e, e) == e) fi.push_back(e);
            } else if (dynamic_cast<const ConeAlgebra*>(f.get())) {
                fi = {f->bottom()};
            } else if (dynamic_cast<const PerfectAlgebra*>(f.get())) {
                fi = {f->bottom(), f->top()};
            } else {
                throw InputError("idempotents unsupported for factor kind " + f->kind());
            }
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
    throw InputError("idempotents unsupported for kind " + A.kind());
}

inline bool is_strict(const Validated& M) {
    auto id = idempotents(M);
    return id.size() == 1 && id[0] == M->bottom();
}

// Minimal nonzero elements of the lattice order (finite only).
inline std::vector<Element> atoms(const Validated& M) {
    if (!M->is_finite()) throw InputError("atoms: only finite algebras are enumerable");
    auto elems = M->elements();
    const Element zero = M->bottom();
    std::vector<Element> out;
    for (const auto& a : elems) {
        if (a == zero) continue;
        bool minimal = true;
        for (const auto& b : elems) {
            if (b == zero || b == a) continue;
            if (M->leq(b, a)) { minimal = false; break; }
        }
        if (minimal) out.push_back(a);
    }
    return out;
}

inline Element scalar(const Algebra& A, std::size_t n, const Element& x) {
    Element acc = A.bottom();
    for (std::size_t i = 0; i < n; ++i) acc = A.oplus(acc, x);
    return acc;
}

// x . y. Computed through the top when one exists, through the representing
// perfect algebra (where it is constantly 0) for cones, componentwise for
// products.
inline Element odot(const Algebra& A, const Element& x, const Element& y) {
    if (A.has_top()) {
        const Element t = A.top();
        return A.ominus(t, A.oplus(A.ominus(t, x), A.ominus(t, y)));
    }
    if (dynamic_cast<const ConeAlgebra*>(&A)) return A.bottom();
    if (auto* p = dynamic_cast<const ProductAlgebra*>(&A)) {
        const auto& xs = x.as_tup();
        const auto& ys = y.as_tup();
        Element::Tuple t;
        for (std::size_t i = 0; i < xs.size(); ++i)
            t.push_back(odot(*p->factors()[i], xs[i], ys[i]));
        return Element::tup(std::move(t));
    }
    throw InputError("odot unsupported for topless kind " + A.kind());
}

inline Element power(const Algebra& A, const Element& x, std::size_t n) {
    if (n == 0) {
        if (!A.has_top()) throw InputError("x^0 requires a top element");
        return A.top();
    }
    Element acc = x;
    for (std::size_t i = 1; i < n; ++i) acc = odot(A, acc, x);
    return acc;
}

// The MV-algebra on [0, a] with x (+)_a y = (x (+) y) ^ a and
// lambda_a(x) = a (-) x, plus the derived difference.
struct LocalMv {
    Element a;
    std::vector<Element> carrier;  // carrier[0] = 0
    std::vector<int> oplus_a;      // row-major over carrier indices
    std::vector<int> lambda_a;
    std::vector<int> ominus_a;     // lambda_a(lambda_a(x) (+)_a y)
    bool mv_ok = false;
    bool ominus_matches_global = false;  // x (-)_a y == x (-) y on [0,a]
    std::vector<std::string> failures;

    int index_of(const Element& e) const {
        for (std::size_t i = 0; i < carrier.size(); ++i)
            if (carrier[i] == e) return (int)i;
        return -1;
    }
};

inline LocalMv local_mv(const Validated& M, const Element& a) {
    LocalMv out;
    out.a = a;
    out.carrier = enumerate_interval(*M, a);
    // Canonical order: bottom first, then structural order.
    std::sort(out.carrier.begin(), out.carrier.end());
    const Element zero = M->bottom();
    auto it = std::find(out.carrier.begin(), out.carrier.end(), zero);
    if (it == out.carrier.end()) throw InputError("interval does not contain 0");
    std::rotate(out.carrier.begin(), it, it + 1);

    const std::size_t n = out.carrier.size();
    out.oplus_a.resize(n * n);
    out.ominus_a.resize(n * n);
    out.lambda_a.resize(n);
    auto idx = [&](const Element& e) {
        int i = out.index_of(e);
        if (i < 0) throw InputError("interval not closed: " + e.str());
        return i;
    };
    for (std::size_t i = 0; i < n; ++i) {
        out.lambda_a[i] = idx(M->ominus(a, out.carrier[i]));
        for (std::size_t j = 0; j < n; ++j)
            out.oplus_a[i * n + j] = idx(M->meet(M->oplus(out.carrier[i], out.carrier[j]), a));
    }
    auto P = [&](int i, int j) { return out.oplus_a[(std::size_t)i * n + j]; };
    auto L = [&](int i) { return out.lambda_a[(std::size_t)i]; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.ominus_a[i * n + j] = L(P(L((int)i), (int)j));

    int topi = idx(a);
    out.mv_ok = true;
    auto fail = [&](std::string m) {
        out.mv_ok = false;
        out.failures.push_back(std::move(m));
    };
    for (std::size_t x = 0; x < n && out.mv_ok; ++x) {
        if (L(L((int)x)) != (int)x) fail("x'' != x at " + out.carrier[x].str());
        if (P((int)x, topi) != topi) fail("x (+) 1 != 1 at " + out.carrier[x].str());
        if (P((int)x, 0) != (int)x) fail("x (+) 0 != x at " + out.carrier[x].str());
        for (std::size_t y = 0; y < n && out.mv_ok; ++y) {
            if (P((int)x, (int)y) != P((int)y, (int)x)) fail("oplus_a not commutative");
            if (P((int)x, L(P((int)x, L((int)y)))) != P((int)y, L(P((int)y, L((int)x)))))
                fail("Lukasiewicz axiom fails at x=" + out.carrier[x].str() +
                     " y=" + out.carrier[y].str());
            for (std::size_t z = 0; z < n && out.mv_ok; ++z)
                if (P(P((int)x, (int)y), (int)z) != P((int)x, P((int)y, (int)z)))
                    fail("oplus_a not associative");
        }
    }

    out.ominus_matches_global = true;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            Element g = M->ominus(out.carrier[x], out.carrier[y]);
            if (out.carrier[(std::size_t)out.ominus_a[x * n + y]] != g) {
                out.ominus_matches_global = false;
                out.failures.push_back("x (-)_a y != x (-) y at x=" + out.carrier[x].str() +
                                       " y=" + out.carrier[y].str());
            }
        }
    return out;
}

// Subalgebra generated by an atom: {m.a : m >= 0} with the least m0 making
// m0.a idempotent. The chain is an MV-chain isomorphic to Gamma((1/m0)Z, 1).
struct AtomSubalgebra {
    Element a;
    std::vector<Element> elems;  // 0.a, 1.a, ..., m0.a
    std::size_t m0 = 0;
    bool scalar_ominus_ok = false;  // m.a (-) n.a == (m - n)+ . a
};

inline AtomSubalgebra atom_subalgebra(const Validated& M, const Element& a) {
    auto at = atoms(M);
    if (std::find(at.begin(), at.end(), a) == at.end())
        throw InputError(a.str() + " is not an atom");
    AtomSubalgebra out;
    out.a = a;
    Element cur = M->bottom();
    out.elems.push_back(cur);
    for (std::size_t m = 1; m <= M->size() + 1; ++m) {
        cur = M->oplus(cur, a);
        if (cur == out.elems.back()) break;  // previous multiple was idempotent
        out.elems.push_back(cur);
        if (M->oplus(cur, cur) == cur) break;
    }
    out.m0 = out.elems.size() - 1;
    out.scalar_ominus_ok = true;
    for (std::size_t m = 0; m <= out.m0; ++m)
        for (std::size_t n = 0; n <= out.m0; ++n) {
            std::size_t d = m > n ? m - n : 0;
            if (M->ominus(out.elems[m], out.elems[n]) != out.elems[d])
                out.scalar_ominus_ok = false;
        }
    return out;
}

struct EmvVerdict {
    bool emv = false;
    std::optional<Element> witness;
    std::string reason;
};

// (E3) + (E4) checks. Finite algebras are checked exhaustively, symbolic
// shapes via their idempotent descriptions.
inline EmvVerdict is_emv(const Validated& M) {
    const Algebra& A = *M;
    if (A.is_finite()) {
        auto ids = idempotents(M);
        auto elems = A.elements();
        for (const auto& x : elems) {
            bool covered = false;
            for (const auto& a : ids)
                if (A.leq(x, a)) { covered = true; break; }
            if (!covered)
                return {false, x, "no idempotent above " + x.str() + " (E4)"};
        }
        for (const auto& a : ids) {
            auto lm = local_mv(M, a);
            if (!lm.mv_ok)
                return {false, a, "[0," + a.str() + "] is not an MV-algebra: " + lm.failures.front()};
            // lambda_a(x) must be the least z in [0,a] with x + z = a.
            for (const auto& x : lm.carrier) {
                std::vector<Element> cand;
                for (const auto& z : lm.carrier)
                    if (A.oplus(x, z) == a) cand.push_back(z);
                Element lam = A.ominus(a, x);
                bool is_min = std::find(cand.begin(), cand.end(), lam) != cand.end();
                for (const auto& z : cand)
                    if (!A.leq(lam, z)) is_min = false;
                if (!is_min)
                    return {false, x, "lambda_" + a.str() + "(" + x.str() + ") is not the minimum (E3)"};
            }
        }
        return {true, std::nullopt, "exhaustive"};
    }
    if (auto* c = dynamic_cast<const ConeAlgebra*>(&A)) {
        return {false, detail::cone_unit_vector(*c), "no idempotent above a nonzero cone element (E4)"};
    }
    if (dynamic_cast<const PerfectAlgebra*>(&A))
        return {true, std::nullopt, "top element is idempotent and bounds every element"};
    if (auto* p = dynamic_cast<const ProductAlgebra*>(&A)) {
        for (std::size_t i = 0; i < p->factors().size(); ++i) {
            auto sub = Validated::check(p->factors()[i]);
            auto v = is_emv(sub);
            if (!v.emv) {
                Element::Tuple t;
                for (std::size_t j = 0; j < p->factors().size(); ++j)
                    t.push_back(j == i ? *v.witness : p->factors()[j]->bottom());
                return {false, Element::tup(std::move(t)), "factor " + std::to_string(i) + ": " + v.reason};
            }
        }
        return {true, std::nullopt, "all factors are EMV"};
    }
    throw InputError("is_emv unsupported for kind " + A.kind());
}

struct CancellativityVerdict {
    bool cancellative = false;
    std::optional<std::array<Element, 3>> witness;  // x + y = x + z, y != z
};

inline CancellativityVerdict is_cancellative(const Validated& M, const SampleOptions& opts = {}) {
    const Algebra& A = *M;
    if (A.is_finite()) {
        auto elems = A.elements();
        for (const auto& x : elems)
            for (const auto& y : elems)
                for (const auto& z : elems)
                    if (y != z && A.oplus(x, y) == A.oplus(x, z))
                        return {false, std::array<Element, 3>{x, y, z}};
        return {true, std::nullopt};
    }
    if (dynamic_cast<const ConeAlgebra*>(&A)) {
        // Cancellative by construction; spot-check on samples.
        std::mt19937_64 rng(opts.seed);
        for (std::size_t i = 0; i < opts.samples; ++i) {
            Element x = A.sample(rng, opts.bound), y = A.sample(rng, opts.bound),
                    z = A.sample(rng, opts.bound);
            if (y != z && A.oplus(x, y) == A.oplus(x, z))
                return {false, std::array<Element, 3>{x, y, z}};
        }
        return {true, std::nullopt};
    }
    if (dynamic_cast<const PerfectAlgebra*>(&A)) {
        Element t = A.top();
        return {false, std::array<Element, 3>{t, t, A.bottom()}};
    }
    if (auto* p = dynamic_cast<const ProductAlgebra*>(&A)) {
        for (std::size_t i = 0; i < p->factors().size(); ++i) {
            auto v = is_cancellative(Validated::check(p->factors()[i]), opts);
            if (!v.cancellative) {
                std::array<Element, 3> w;
                for (int k = 0; k < 3; ++k) {
                    Element::Tuple t;
                    for (std::size_t j = 0; j < p->factors().size(); ++j)
                        t.push_back(j == i ? (*v.witness)[(std::size_t)k]
                                           : p->factors()[j]->bottom());
                    w[(std::size_t)k] = Element::tup(std::move(t));
                }
                return {false, w};
            }
        }
        return {true, std::nullopt};
    }
    throw InputError("is_cancellative unsupported for kind " + A.kind());
}

enum class LinearClass { NotLinear, Strict, HasTop };

struct LinearityReport {
    LinearClass cls;
    std::optional<std::pair<Element, Element>> incomparable;
};

namespace detail {

inline std::optional<std::pair<Element, Element>> incomparable_pair(const Algebra& A) {
    if (A.is_finite()) {
        auto elems = A.elements();
        for (const auto& x : elems)
            for (const auto& y : elems)
                if (!A.leq(x, y) && !A.leq(y, x)) return std::make_pair(x, y);
        return std::nullopt;
    }
    if (auto* c = dynamic_cast<const ConeAlgebra*>(&A)) {
        if (c->order() == GroupOrder::Lex || c->rank() == 1) return std::nullopt;
        Element::Vec a(c->rank(), 0), b(c->rank(), 0);
        a[0] = 1;
        b[1] = 1;
        return std::make_pair(Element::vec(a), Element::vec(b));
    }
    if (auto* p = dynamic_cast<const PerfectAlgebra*>(&A)) {
        if (p->tail_order() == GroupOrder::Lex || p->rank() == 1) return std::nullopt;
        Element::Vec a(p->rank(), 0), b(p->rank(), 0);
        a[0] = 1;
        b[1] = 1;
        return std::make_pair(Element::bounded(0, a), Element::bounded(0, b));
    }
    if (auto* p = dynamic_cast<const ProductAlgebra*>(&A)) {
        const auto& fs = p->factors();
        // A pair of factors with nonzero elements breaks linearity.
        std::vector<std::optional<Element>> nonzero(fs.size());
        std::mt19937_64 rng(1);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (fs[i]->is_finite()) {
                if (fs[i]->size() > 1) nonzero[i] = fs[i]->elements()[1];
            } else {
                for (int t = 0; t < 64; ++t) {
                    Element e = fs[i]->sample(rng, 4);
                    if (e != fs[i]->bottom()) { nonzero[i] = e; break; }
                }
            }
        }
        std::vector<std::size_t> nz;
        for (std::size_t i = 0; i < fs.size(); ++i)
            if (nonzero[i]) nz.push_back(i);
        if (nz.size() >= 2) {
            Element::Tuple ta, tb;
            for (std::size_t i = 0; i < fs.size(); ++i) {
                ta.push_back(i == nz[0] ? *nonzero[i] : fs[i]->bottom());
                tb.push_back(i == nz[1] ? *nonzero[i] : fs[i]->bottom());
            }
            return std::make_pair(Element::tup(std::move(ta)), Element::tup(std::move(tb)));
        }
        for (std::size_t i : nz)
            if (auto w = incomparable_pair(*fs[i])) {
                // Lift the factor witness.
                Element::Tuple ta, tb;
                for (std::size_t j = 0; j < fs.size(); ++j) {
                    ta.push_back(j == i ? w->first : fs[j]->bottom());
                    tb.push_back(j == i ? w->second : fs[j]->bottom());
                }
                return std::make_pair(Element::tup(std::move(ta)), Element::tup(std::move(tb)));
            }
        return std::nullopt;
    }
    throw InputError("linearity unsupported for kind " + A.kind());
}

}  // namespace detail

// Decides linearity, then reports which branch of the linear dichotomy
// (strict, or bounded and termwise MV) applies.
inline LinearityReport classify_linear(const Validated& M) {
    if (auto w = detail::incomparable_pair(*M)) return {LinearClass::NotLinear, w};
    if (is_strict(M)) return {LinearClass::Strict, std::nullopt};
    return {LinearClass::HasTop, std::nullopt};
}

}  // namespace wemv
