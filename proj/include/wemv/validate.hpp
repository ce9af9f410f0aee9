#pragma once

#include <algorithm>
#include <array>
#include <thread>

#include "wemv/algebra.hpp"

namespace wemv {

struct Violation {
    std::string axiom;  // "(i)".."(x)"
    Element x, y, z;
    std::string detail;

    friend bool operator<(const Violation& a, const Violation& b) {
        auto rank = [](const std::string& s) {
            static const std::array<const char*, 10> ids = {"(i)",  "(ii)", "(iii)", "(iv)", "(v)",
                                                            "(vi)", "(vii)", "(viii)", "(ix)", "(x)"};
            for (std::size_t i = 0; i < ids.size(); ++i)
                if (s == ids[i]) return i;
            return ids.size();
        };
        auto ra = rank(a.axiom), rb = rank(b.axiom);
        if (ra != rb) return ra < rb;
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    }
};

struct ValidationReport {
    bool pass = false;
    std::string strategy;  // "exhaustive" | "sampled"
    std::size_t triples_checked = 0;
    std::vector<Violation> violations;
    // Finite algebras are expected to have an idempotent greatest element.
    // A validated finite algebra without one would be a counterexample to
    // that and is flagged here at high priority.
    bool finite_top_ok = true;
    std::string note;
};

namespace detail {

// All ten defining identities evaluated at one triple. Appends a violation
// per failed axiom.
inline void check_triple(const Algebra& A, const Element& x, const Element& y, const Element& z,
                         std::vector<Violation>& out) {
    const Element zero = A.bottom();
    auto viol = [&](const char* ax, const std::string& d) { out.push_back({ax, x, y, z, d}); };
    auto eq = [&](const Element& a, const Element& b) { return a == b; };

    // (i) distributive lattice with least element 0
    if (!eq(A.join(x, y), A.join(y, x))) viol("(i)", "join not commutative");
    else if (!eq(A.meet(x, y), A.meet(y, x))) viol("(i)", "meet not commutative");
    else if (!eq(A.join(A.join(x, y), z), A.join(x, A.join(y, z)))) viol("(i)", "join not associative");
    else if (!eq(A.meet(A.meet(x, y), z), A.meet(x, A.meet(y, z)))) viol("(i)", "meet not associative");
    else if (!eq(A.join(x, A.meet(x, y)), x)) viol("(i)", "absorption x v (x ^ y) = x");
    else if (!eq(A.meet(x, A.join(x, y)), x)) viol("(i)", "absorption x ^ (x v y) = x");
    else if (!eq(A.meet(x, A.join(y, z)), A.join(A.meet(x, y), A.meet(x, z))))
        viol("(i)", "distributivity");
    else if (!eq(A.join(x, zero), x)) viol("(i)", "0 is not the least element");

    // (ii) commutative monoid
    if (!eq(A.oplus(x, y), A.oplus(y, x))) viol("(ii)", "oplus not commutative");
    else if (!eq(A.oplus(A.oplus(x, y), z), A.oplus(x, A.oplus(y, z)))) viol("(ii)", "oplus not associative");
    else if (!eq(A.oplus(x, zero), x)) viol("(ii)", "0 is not neutral for oplus");

    // (iii) (x + y) - x <= y
    {
        Element l = A.ominus(A.oplus(x, y), x);
        if (!A.leq(l, y)) viol("(iii)", "(x (+) y) (-) x = " + l.str() + " is not <= y");
    }
    // (iv) x + (y - x) = x v y
    if (!eq(A.oplus(x, A.ominus(y, x)), A.join(x, y))) viol("(iv)", "x (+) (y (-) x) != x v y");
    // (v) x - (x ^ y) = x - y
    if (!eq(A.ominus(x, A.meet(x, y)), A.ominus(x, y))) viol("(v)", "x (-) (x ^ y) != x (-) y");
    // (vi) z - (z - x) = x ^ z
    if (!eq(A.ominus(z, A.ominus(z, x)), A.meet(x, z))) {
        viol("(vi)", "z (-) (z (-) x) = " + A.ominus(z, A.ominus(z, x)).str() + " != x ^ z = " +
                         A.meet(x, z).str());
    }
    // (vii) z - (x v y) = (z - x) ^ (z - y)
    if (!eq(A.ominus(z, A.join(x, y)), A.meet(A.ominus(z, x), A.ominus(z, y))))
        viol("(vii)", "z (-) (x v y) != (z (-) x) ^ (z (-) y)");
    // (viii) (x ^ y) - z = (x - z) ^ (y - z)
    if (!eq(A.ominus(A.meet(x, y), z), A.meet(A.ominus(x, z), A.ominus(y, z))))
        viol("(viii)", "(x ^ y) (-) z != (x (-) z) ^ (y (-) z)");
    // (ix) x - (y + z) = (x - y) - z
    if (!eq(A.ominus(x, A.oplus(y, z)), A.ominus(A.ominus(x, y), z)))
        viol("(ix)", "x (-) (y (+) z) != (x (-) y) (-) z");
    // (x) x + (y v z) = (x + y) v (x + z)
    if (!eq(A.oplus(x, A.join(y, z)), A.join(A.oplus(x, y), A.oplus(x, z))))
        viol("(x)", "x (+) (y v z) != (x (+) y) v (x (+) z)");
}

inline unsigned worker_count(const SampleOptions& opts) {
    unsigned w = opts.workers ? opts.workers : std::thread::hardware_concurrency();
    return w ? w : 1;
}

// Runs fn over [0, total) partitioned across workers; each shard appends
// into its own violation buffer, merged and canonically sorted afterwards so
// results are independent of the partitioning.
template <typename Fn>
inline std::vector<Violation> parallel_scan(std::size_t total, unsigned workers, Fn fn) {
    workers = std::max(1u, std::min<unsigned>(workers, total ? (unsigned)total : 1u));
    std::vector<std::vector<Violation>> buf(workers);
    std::vector<std::thread> threads;
    std::size_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(total, lo + chunk);
        threads.emplace_back([&, lo, hi, w] {
            for (std::size_t i = lo; i < hi; ++i) fn(i, buf[w]);
        });
    }
    for (auto& t : threads) t.join();
    std::vector<Violation> out;
    for (auto& b : buf) out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// Checks all ten axioms: exhaustively over every triple for finite algebras,
// on a seeded sample of triples for symbolic ones.
inline ValidationReport validate(const Algebra& A, const SampleOptions& opts = {}) {
    ValidationReport rep;
    if (A.is_finite()) {
        auto elems = A.elements();
        const std::size_t n = elems.size();
        rep.strategy = "exhaustive";
        rep.triples_checked = n * n * n;
        rep.violations = detail::parallel_scan(n, detail::worker_count(opts),
            [&](std::size_t xi, std::vector<Violation>& buf) {
                for (std::size_t yi = 0; yi < n; ++yi)
                    for (std::size_t zi = 0; zi < n; ++zi)
                        detail::check_triple(A, elems[xi], elems[yi], elems[zi], buf);
            });
        rep.pass = rep.violations.empty();
        if (rep.pass) {
            // Finiteness should force an idempotent top. Anything else is a
            // counterexample worth shouting about.
            Element t = elems[0];
            for (const auto& e : elems) t = A.join(t, e);
            bool greatest = true;
            for (const auto& e : elems)
                if (!A.leq(e, t)) greatest = false;
            rep.finite_top_ok = greatest && A.oplus(t, t) == t;
            if (!rep.finite_top_ok)
                rep.note = "HIGH PRIORITY: finite algebra passed all axioms but lacks an "
                           "idempotent greatest element";
        }
        return rep;
    }

    rep.strategy = "sampled";
    std::mt19937_64 rng(opts.seed);
    std::vector<std::array<Element, 3>> triples;
    triples.reserve(opts.samples);
    for (std::size_t i = 0; i < opts.samples; ++i)
        triples.push_back({A.sample(rng, opts.bound), A.sample(rng, opts.bound),
                           A.sample(rng, opts.bound)});
    rep.triples_checked = triples.size();
    rep.violations = detail::parallel_scan(triples.size(), detail::worker_count(opts),
        [&](std::size_t i, std::vector<Violation>& buf) {
            detail::check_triple(A, triples[i][0], triples[i][1], triples[i][2], buf);
        });
    rep.pass = rep.violations.empty();
    return rep;
}

// Validated handle: structural operations require one, so unvalidated tables
// cannot reach them.
class Validated {
public:
    static Validated check(AlgebraPtr a, const SampleOptions& opts = {}) {
        auto rep = validate(*a, opts);
        if (!rep.pass) {
            const auto& v = rep.violations.front();
            throw InputError("not a wEMV-algebra: axiom " + v.axiom + " fails at x=" + v.x.str() +
                             " y=" + v.y.str() + " z=" + v.z.str() + " (" + v.detail + ")" +
                             (rep.violations.size() > 1
                                  ? " and " + std::to_string(rep.violations.size() - 1) + " more"
                                  : ""));
        }
        return Validated(std::move(a));
    }

    const Algebra& operator*() const { return *alg_; }
    const Algebra* operator->() const { return alg_.get(); }
    const AlgebraPtr& ptr() const { return alg_; }

private:
    explicit Validated(AlgebraPtr a) : alg_(std::move(a)) {}
    AlgebraPtr alg_;
};

struct DeriveOminusResult {
    std::optional<std::vector<int>> table;
    // Set when for some (z, x) the candidate set {t <= z : t + (z ^ x) = z}
    // is empty or has no minimum in the lattice order.
    std::optional<std::pair<int, int>> offending;
    std::string error;
};

// ominus[z][x] = min{t in [0,z] : t + (z ^ x) = z}, the order-theoretic
// characterization that determines the difference from the lattice and
// monoid tables alone. A later validate call decides wEMV-hood.
inline DeriveOminusResult derive_ominus(std::size_t n, const std::vector<int>& join,
                                        const std::vector<int>& meet,
                                        const std::vector<int>& oplus) {
    auto chk = [&](const char* name, const std::vector<int>& t) {
        if (t.size() != n * n)
            throw InputError(std::string(name) + " table has wrong dimensions");
        for (int e : t)
            if (e < 0 || (std::size_t)e >= n) throw InputError(std::string(name) + " table not closed");
    };
    chk("join", join);
    chk("meet", meet);
    chk("oplus", oplus);
    auto leq = [&](int a, int b) { return meet[(std::size_t)a * n + b] == a; };

    DeriveOminusResult res;
    std::vector<int> tab(n * n);
    for (std::size_t z = 0; z < n; ++z)
        for (std::size_t x = 0; x < n; ++x) {
            int zx = meet[z * n + x];
            std::vector<int> cand;
            for (std::size_t t = 0; t < n; ++t)
                if (leq((int)t, (int)z) && oplus[t * n + zx] == (int)z) cand.push_back((int)t);
            int best = -1;
            for (int c : cand) {
                bool min = true;
                for (int d : cand)
                    if (!leq(c, d)) { min = false; break; }
                if (min) { best = c; break; }
            }
            if (best < 0) {
                res.offending = {(int)z, (int)x};
                res.error = cand.empty() ? "candidate set empty" : "candidate set has no minimum";
                return res;
            }
            tab[z * n + x] = best;
        }
    res.table = std::move(tab);
    return res;
}

}  // namespace wemv
