#pragma once

#include "wemv/constructors.hpp"
#include "wemv/term.hpp"

namespace wemv {

struct IdentityVerdict {
    bool holds = false;
    std::string strategy;  // "exhaustive" | "sampled"
    std::size_t count = 0;
    std::optional<Assignment> witness;
    std::optional<Element> lhs_val, rhs_val;
    std::uint64_t seed = 0;
    long long bound = 0;

    std::string witness_str() const {
        if (!witness) return "";
        std::string s;
        for (const auto& [k, v] : *witness) {
            if (!s.empty()) s += " ";
            s += k + "=" + v.str();
        }
        return s;
    }
};

namespace detail {

constexpr std::size_t kVarCap = 4;

template <typename OnAssignment>
inline IdentityVerdict scan_assignments(const Validated& M, const std::vector<std::string>& vars,
                                        const SampleOptions& opts, std::size_t var_cap,
                                        OnAssignment check) {
    IdentityVerdict v;
    v.seed = opts.seed;
    v.bound = opts.bound;
    v.holds = true;
    if (M->is_finite()) {
        if (vars.size() > var_cap)
            throw InputError("identity has " + std::to_string(vars.size()) +
                             " variables; the exhaustive cap is " + std::to_string(var_cap));
        v.strategy = "exhaustive";
        auto elems = M->elements();
        std::vector<std::size_t> idx(vars.size(), 0);
        for (;;) {
            Assignment env;
            for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = elems[idx[i]];
            ++v.count;
            if (!check(env, v)) return v;
            // Last variable varies fastest, so witnesses come out in
            // lexicographic order over the sorted variable names.
            bool done = true;
            for (std::size_t i = idx.size(); i > 0; --i) {
                if (++idx[i - 1] < elems.size()) { done = false; break; }
                idx[i - 1] = 0;
            }
            if (done) break;
        }
        return v;
    }
    v.strategy = "sampled";
    std::mt19937_64 rng(opts.seed);
    for (std::size_t s = 0; s < opts.samples; ++s) {
        Assignment env;
        for (const auto& name : vars) env[name] = M->sample(rng, opts.bound);
        ++v.count;
        if (!check(env, v)) return v;
    }
    return v;
}

}  // namespace detail

inline IdentityVerdict check_identity(const Validated& M, const TermPtr& lhs, const TermPtr& rhs,
                                      const SampleOptions& opts = {},
                                      std::size_t var_cap = detail::kVarCap) {
    if ((lhs->needs_top() || rhs->needs_top()) && !M->has_top())
        throw InputError("identity mentions 1 or x^0 but the algebra has no top");
    std::vector<std::string> vars;
    lhs->variables(vars);
    rhs->variables(vars);
    std::sort(vars.begin(), vars.end());
    return detail::scan_assignments(M, vars, opts, var_cap,
        [&](const Assignment& env, IdentityVerdict& v) {
            Element l = evaluate(*lhs, *M, env);
            Element r = evaluate(*rhs, *M, env);
            if (l == r) return true;
            v.holds = false;
            v.witness = env;
            v.lhs_val = l;
            v.rhs_val = r;
            // Witnesses must re-refute when replayed.
            if (evaluate(*lhs, *M, env) == evaluate(*rhs, *M, env))
                throw std::runtime_error("bug: witness does not re-evaluate to a violation");
            return false;
        });
}

inline IdentityVerdict check_identity(const Validated& M, const std::string& lhs,
                                      const std::string& rhs, const SampleOptions& opts = {}) {
    return check_identity(M, parse_term(lhs), parse_term(rhs), opts);
}

// Subvariety membership: Can is (x (+) y) (-) x = y, Perf is (2.x)^2 = 2.x^2,
// Idem is x (+) x = x.
inline IdentityVerdict in_can(const Validated& M, const SampleOptions& opts = {}) {
    return check_identity(M, "(x (+) y) (-) x", "y", opts);
}
inline IdentityVerdict in_perf(const Validated& M, const SampleOptions& opts = {}) {
    return check_identity(M, "(2.x)^2", "2.x^2", opts);
}
inline IdentityVerdict in_idem(const Validated& M, const SampleOptions& opts = {}) {
    return check_identity(M, "x (+) x", "x", opts);
}

// m(x,y,z) = ((x (-) y) (+) z) /\ (((z (-) y) (+) x) /\ (x \/ z)) is a
// Pixley term: m(x,y,y)=x, m(x,x,y)=y, m(x,y,x)=x.
struct PixleyReport {
    IdentityVerdict xyy, xxy, xyx;
    bool all() const { return xyy.holds && xxy.holds && xyx.holds; }
};

inline PixleyReport check_pixley(const Validated& M, const SampleOptions& opts = {}) {
    const std::string m = "((x (-) y) (+) z) /\\ (((z (-) y) (+) x) /\\ (x \\/ z))";
    auto subst = [&](const char* yv, const char* zv) {
        std::string s = m;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == 'y') s[i] = *yv;
            else if (s[i] == 'z') s[i] = *zv;
        }
        return s;
    };
    PixleyReport rep;
    rep.xyy = check_identity(M, subst("y", "y"), "x", opts);
    rep.xxy = check_identity(M, subst("x", "y"), "y", opts);
    rep.xyx = check_identity(M, subst("y", "x"), "x", opts);
    return rep;
}

// ---------------------------------------------------------------------------
// Stock-property suite: the basic laws every wEMV-algebra satisfies, checked
// directly over exhaustive (finite) or sampled (symbolic) triples.

struct SuiteResult {
    std::string name;
    bool holds = true;
    std::size_t checked = 0;
    std::string strategy;
    std::optional<std::array<Element, 3>> witness;
};

namespace detail {

struct TripleClause {
    const char* name;
    bool (*check)(const Algebra&, const Element&, const Element&, const Element&);
};

inline const std::vector<TripleClause>& suite_clauses() {
    using E = const Element&;
    static const std::vector<TripleClause> cs = {
        {"ordered monoid laws",
         [](const Algebra& A, E x, E y, E z) {
             if (A.leq(x, y) && !A.leq(A.oplus(x, z), A.oplus(y, z))) return false;
             if (A.leq(x, y) && A.oplus(x, A.ominus(y, x)) != y) return false;
             return A.leq(x, A.oplus(x, z));
         }},
        {"difference monotonicity",
         [](const Algebra& A, E x, E y, E z) {
             if (A.leq(x, y) && !A.leq(A.ominus(x, z), A.ominus(y, z))) return false;
             if (A.leq(y, z) && !A.leq(A.ominus(x, z), A.ominus(x, y))) return false;
             return true;
         }},
        {"difference below minuend",
         [](const Algebra& A, E x, E, E z) { return A.leq(A.ominus(z, x), z); }},
        {"join below sum",
         [](const Algebra& A, E x, E y, E) { return A.leq(A.join(x, y), A.oplus(x, y)); }},
        {"subtraction inverts below",
         [](const Algebra& A, E x, E, E z) {
             if (!A.leq(x, z)) return true;
             return A.oplus(A.ominus(z, x), x) == z && A.ominus(z, A.ominus(z, x)) == x;
         }},
        {"difference is least solution",
         [](const Algebra& A, E x, E y, E z) {
             if (!A.leq(x, z)) return true;
             Element d = A.ominus(z, x);
             if (A.oplus(x, d) != z) return false;
             if (A.leq(y, z) && A.oplus(x, y) == z && !A.leq(d, y)) return false;
             return true;
         }},
        {"order-theoretic difference",
         [](const Algebra& A, E x, E y, E z) {
             Element t = A.ominus(z, x);
             if (!A.leq(t, z) || A.oplus(t, A.meet(z, x)) != z) return false;
             if (A.leq(y, z) && A.oplus(y, A.meet(z, x)) == z && !A.leq(t, y)) return false;
             return true;
         }},
        {"adjointness",
         [](const Algebra& A, E x, E y, E z) {
             return A.leq(z, A.oplus(x, y)) == A.leq(A.ominus(z, x), y);
         }},
        {"units of the difference",
         [](const Algebra& A, E, E y, E z) {
             if (A.ominus(z, A.bottom()) != z || A.ominus(z, z) != A.bottom()) return false;
             return (A.ominus(z, y) == A.bottom()) == A.leq(z, y);
         }},
        {"separation",
         [](const Algebra& A, E x, E, E z) {
             if (A.leq(x, z) && A.ominus(z, x) == A.bottom() && z != x) return false;
             return true;
         }},
        {"triangle inequality",
         [](const Algebra& A, E x, E y, E z) {
             return A.leq(A.ominus(x, z), A.oplus(A.ominus(x, y), A.ominus(y, z)));
         }},
        {"x+y = (xvy)+(x^y)",
         [](const Algebra& A, E x, E y, E) {
             return A.oplus(x, y) == A.oplus(A.join(x, y), A.meet(x, y));
         }},
        {"(xvy)-z = (x-z)v(y-z)",
         [](const Algebra& A, E x, E y, E z) {
             return A.ominus(A.join(x, y), z) == A.join(A.ominus(x, z), A.ominus(y, z));
         }},
        {"disjoint sum is join",
         [](const Algebra& A, E x, E y, E) {
             if (A.meet(x, y) != A.bottom()) return true;
             return A.oplus(x, y) == A.join(x, y);
         }},
        {"interval laws",
         [](const Algebra& A, E x, E y, E z) {
             Element a = A.join(x, A.join(y, z));
             if (A.ominus(a, A.ominus(a, x)) != x) return false;
             if (A.meet(x, y) != A.ominus(a, A.join(A.ominus(a, x), A.ominus(a, y)))) return false;
             if (A.oplus(A.meet(x, y), z) != A.meet(A.oplus(x, z), A.oplus(y, z))) return false;
             return A.ominus(z, A.meet(x, y)) == A.join(A.ominus(z, x), A.ominus(z, y));
         }},
    };
    return cs;
}

// Known atom lists for the symbolic shapes, used for the atom clauses.
inline std::vector<Element> known_atoms(const Algebra& A) {
    if (auto* c = dynamic_cast<const ConeAlgebra*>(&A)) {
        std::vector<Element> out;
        if (c->order() == GroupOrder::Lex) {
            Element::Vec g(c->rank(), 0);
            g.back() = 1;
            out.push_back(Element::vec(g));
        } else {
            for (std::size_t i = 0; i < c->rank(); ++i) {
                Element::Vec g(c->rank(), 0);
                g[i] = 1;
                out.push_back(Element::vec(g));
            }
        }
        return out;
    }
    if (auto* p = dynamic_cast<const PerfectAlgebra*>(&A)) {
        ConeAlgebra tail(p->rank(), p->tail_order());
        std::vector<Element> out;
        for (const auto& a : known_atoms(tail)) out.push_back(Element::bounded(0, a.as_vec()));
        return out;
    }
    if (auto* p = dynamic_cast<const ProductAlgebra*>(&A)) {
        std::vector<Element> out;
        const auto& fs = p->factors();
        for (std::size_t i = 0; i < fs.size(); ++i) {
            std::vector<Element> fa;
            if (fs[i]->is_finite()) {
                for (const auto& e : fs[i]->elements()) {
                    if (e == fs[i]->bottom()) continue;
                    bool minimal = true;
                    for (const auto& d : fs[i]->elements())
                        if (d != fs[i]->bottom() && d != e && fs[i]->leq(d, e)) minimal = false;
                    if (minimal) fa.push_back(e);
                }
            } else {
                fa = known_atoms(*fs[i]);
            }
            for (const auto& a : fa) {
                Element::Tuple t;
                for (std::size_t j = 0; j < fs.size(); ++j)
                    t.push_back(j == i ? a : fs[j]->bottom());
                out.push_back(Element::tup(std::move(t)));
            }
        }
        return out;
    }
    throw InputError("no known atoms for kind " + A.kind());
}

}  // namespace detail

inline std::vector<SuiteResult> identity_suite(const Validated& M, const SampleOptions& opts = {}) {
    std::vector<SuiteResult> out;
    const std::string strat = M->is_finite() ? "exhaustive" : "sampled";

    std::vector<std::array<Element, 3>> triples;
    if (M->is_finite()) {
        auto elems = M->elements();
        for (const auto& x : elems)
            for (const auto& y : elems)
                for (const auto& z : elems) triples.push_back({x, y, z});
    } else {
        std::mt19937_64 rng(opts.seed);
        for (std::size_t i = 0; i < opts.samples; ++i)
            triples.push_back({M->sample(rng, opts.bound), M->sample(rng, opts.bound),
                               M->sample(rng, opts.bound)});
    }

    for (const auto& clause : detail::suite_clauses()) {
        SuiteResult r{clause.name, true, 0, strat, std::nullopt};
        for (const auto& t : triples) {
            ++r.checked;
            if (!clause.check(*M, t[0], t[1], t[2])) {
                r.holds = false;
                r.witness = t;
                break;
            }
        }
        out.push_back(std::move(r));
    }

    // Distinct atoms add like joins.
    {
        SuiteResult r{"atoms add as joins", true, 0, strat, std::nullopt};
        std::vector<Element> at =
            M->is_finite() ? atoms(M) : detail::known_atoms(*M);
        for (std::size_t i = 0; i < at.size(); ++i)
            for (std::size_t j = 0; j < at.size(); ++j) {
                if (i == j) continue;
                ++r.checked;
                if (M->join(at[i], at[j]) != M->oplus(at[i], at[j])) {
                    r.holds = false;
                    r.witness = {at[i], at[j], M->bottom()};
                }
            }
        if (at.size() >= 2) {
            Element j = at[0], s = at[0];
            for (std::size_t i = 1; i < at.size(); ++i) {
                j = M->join(j, at[i]);
                s = M->oplus(s, at[i]);
            }
            ++r.checked;
            if (j != s) r.holds = false;
        }
        out.push_back(std::move(r));
    }

    // Anything under a multiple of an atom is itself a multiple.
    {
        SuiteResult r{"atom multiples", true, 0, strat, std::nullopt};
        if (M->is_finite()) {
            for (const auto& a : atoms(M)) {
                auto sub = atom_subalgebra(M, a);
                const Element cap = sub.elems.back();  // m0.a, the largest multiple
                for (const auto& b : M->elements()) {
                    if (!M->leq(b, cap)) continue;
                    ++r.checked;
                    if (std::find(sub.elems.begin(), sub.elems.end(), b) == sub.elems.end()) {
                        r.holds = false;
                        r.witness = {a, b, cap};
                    }
                }
            }
        } else {
            std::mt19937_64 rng(opts.seed + 1);
            for (const auto& a : detail::known_atoms(*M)) {
                for (std::size_t s = 0; s < std::min<std::size_t>(opts.samples, 500); ++s) {
                    long long n = (long long)(rng() % (std::uint64_t)(opts.bound + 1));
                    Element na = scalar(*M, (std::size_t)n, a);
                    Element b = M->meet(M->sample(rng, opts.bound), na);
                    ++r.checked;
                    bool multiple = false;
                    for (long long m = 0; m <= n; ++m)
                        if (scalar(*M, (std::size_t)m, a) == b) { multiple = true; break; }
                    if (!multiple) {
                        r.holds = false;
                        r.witness = {a, b, na};
                    }
                }
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

// Sound refutation over the generating family of linearly ordered algebras:
// a failure anywhere refutes the identity in the whole variety; success is
// only "no counterexample found".
struct RefutationResult {
    bool refuted = false;
    std::string probe;
    IdentityVerdict verdict;
};

inline RefutationResult refute_in_variety(const TermPtr& lhs, const TermPtr& rhs,
                                          const SampleOptions& opts = {}) {
    if (lhs->needs_top() || rhs->needs_top())
        throw InputError("identity mentions 1 or x^0; the probe family has topless members");
    struct Probe {
        std::string name;
        AlgebraPtr alg;
    };
    std::vector<Probe> probes;
    for (std::size_t n = 1; n <= 6; ++n)
        probes.push_back({"L" + std::to_string(n), make_chain(n)});
    probes.push_back({"Z+", make_cone(1, GroupOrder::Product)});
    probes.push_back({"Z lex Z cone", make_cone(2, GroupOrder::Lex)});

    for (const auto& p : probes) {
        auto M = Validated::check(p.alg, opts);
        auto v = check_identity(M, lhs, rhs, opts);
        if (!v.holds) return {true, p.name, v};
    }
    return {false, "", {}};
}

inline RefutationResult refute_in_variety(const std::string& lhs, const std::string& rhs,
                                          const SampleOptions& opts = {}) {
    return refute_in_variety(parse_term(lhs), parse_term(rhs), opts);
}

}  // namespace wemv
