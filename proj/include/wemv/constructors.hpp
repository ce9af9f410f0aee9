#pragma once

#include "wemv/cone.hpp"
#include "wemv/product.hpp"
#include "wemv/validate.hpp"

namespace wemv {

// Lukasiewicz chain L_n = Gamma(Z, n): carrier {0..n}, x + y = min(x+y, n),
// x - y = max(x-y, 0).
inline std::shared_ptr<const FiniteAlgebra> make_chain(std::size_t n) {
    std::size_t sz = n + 1;
    std::vector<int> jt(sz * sz), mt(sz * sz), pt(sz * sz), st(sz * sz);
    for (std::size_t i = 0; i < sz; ++i)
        for (std::size_t j = 0; j < sz; ++j) {
            jt[i * sz + j] = (int)std::max(i, j);
            mt[i * sz + j] = (int)std::min(i, j);
            pt[i * sz + j] = (int)std::min(i + j, n);
            st[i * sz + j] = (int)(i > j ? i - j : 0);
        }
    return std::make_shared<FiniteAlgebra>(sz, std::move(jt), std::move(mt), std::move(pt),
                                           std::move(st));
}

inline std::shared_ptr<const ConeAlgebra> make_cone(std::size_t rank, GroupOrder order) {
    return std::make_shared<ConeAlgebra>(rank, order);
}

inline std::shared_ptr<const PerfectAlgebra> make_perfect(std::size_t rank,
                                                          GroupOrder tail = GroupOrder::Product) {
    return std::make_shared<PerfectAlgebra>(rank, 1, tail);
}

// K_n = Gamma(Z lex Z, (n, 0)).
inline std::shared_ptr<const PerfectAlgebra> make_kn(long long unit) {
    return std::make_shared<PerfectAlgebra>(1, unit, GroupOrder::Lex);
}

inline std::shared_ptr<const ProductAlgebra> make_product(std::vector<AlgebraPtr> factors) {
    return std::make_shared<ProductAlgebra>(std::move(factors));
}

// Sum over a finite index set equals the product; infinite index sets are
// out of scope and rejected by the JSON loader.
inline std::shared_ptr<const ProductAlgebra> make_sum(std::vector<AlgebraPtr> factors) {
    return make_product(std::move(factors));
}

// Builds the wEMV-algebra of an MV-algebra given by its oplus and complement
// tables with designated 0 and top: x v y = x + (x + y')', x ^ y = x . (x' + y),
// x - y = x . y' where x . y = (x' + y')'.
inline std::shared_ptr<const FiniteAlgebra> mv_with_ominus(std::size_t n,
                                                           const std::vector<int>& oplus,
                                                           const std::vector<int>& neg,
                                                           int top) {
    if (oplus.size() != n * n) throw InputError("MV oplus table has wrong dimensions");
    if (neg.size() != n) throw InputError("MV complement table has wrong dimensions");
    if (top < 0 || (std::size_t)top >= n) throw InputError("MV top outside carrier");
    for (int e : oplus)
        if (e < 0 || (std::size_t)e >= n) throw InputError("MV oplus table not closed");
    for (int e : neg)
        if (e < 0 || (std::size_t)e >= n) throw InputError("MV complement table not closed");

    auto P = [&](int a, int b) { return oplus[(std::size_t)a * n + b]; };
    auto N = [&](int a) { return neg[(std::size_t)a]; };
    auto D = [&](int a, int b) { return N(P(N(a), N(b))); };  // odot

    // MV axioms on the input, with witnesses.
    for (std::size_t x = 0; x < n; ++x) {
        if (N((int)N((int)x)) != (int)x)
            throw InputError("MV axiom x'' = x fails at x=" + std::to_string(x));
        if (P((int)x, top) != top)
            throw InputError("MV axiom x (+) 1 = 1 fails at x=" + std::to_string(x));
        if (P((int)x, 0) != (int)x)
            throw InputError("MV axiom x (+) 0 = x fails at x=" + std::to_string(x));
        for (std::size_t y = 0; y < n; ++y) {
            if (P((int)x, (int)y) != P((int)y, (int)x))
                throw InputError("MV oplus not commutative at x=" + std::to_string(x) +
                                 " y=" + std::to_string(y));
            if (P((int)x, N(P((int)x, N((int)y)))) != P((int)y, N(P((int)y, N((int)x)))))
                throw InputError("MV axiom x(+)(x(+)y')' = y(+)(y(+)x')' fails at x=" +
                                 std::to_string(x) + " y=" + std::to_string(y));
            for (std::size_t z = 0; z < n; ++z)
                if (P(P((int)x, (int)y), (int)z) != P((int)x, P((int)y, (int)z)))
                    throw InputError("MV oplus not associative at x=" + std::to_string(x) +
                                     " y=" + std::to_string(y) + " z=" + std::to_string(z));
        }
    }

    std::vector<int> jt(n * n), mt(n * n), pt(oplus), st(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            jt[x * n + y] = P((int)x, N(P((int)x, N((int)y))));
            mt[x * n + y] = D((int)x, P(N((int)x), (int)y));
            st[x * n + y] = D((int)x, N((int)y));
        }
    if (mt[0] != 0 || jt[0] != 0)
        throw InputError("MV input: designated 0 is not the bottom of the derived lattice");
    // MV bottoms other than index 0 get relabeled nowhere; require 0 = bottom.
    for (std::size_t x = 0; x < n; ++x)
        if (mt[0 * n + x] != 0)
            throw InputError("MV input: index 0 is not the least element");
    return std::make_shared<FiniteAlgebra>(n, std::move(jt), std::move(mt), std::move(pt),
                                           std::move(st));
}

}  // namespace wemv
