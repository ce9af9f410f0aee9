#pragma once

#include "wemv/json_io.hpp"

namespace fx {

using namespace wemv;

// Corrupted 3-chain: oplus replaced by max. The lattice part is fine and
// ominus is still derivable, but axiom (vi) fails at z=2, x=1.
inline std::shared_ptr<const FiniteAlgebra> corrupted_chain3() {
    const std::size_t n = 3;
    std::vector<int> jt(n * n), mt(n * n), pt(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            jt[i * n + j] = (int)std::max(i, j);
            mt[i * n + j] = (int)std::min(i, j);
            pt[i * n + j] = (int)std::max(i, j);
        }
    auto d = derive_ominus(n, jt, mt, pt);
    if (!d.table) throw std::runtime_error("fixture: ominus underivable");
    return std::make_shared<FiniteAlgebra>(n, std::move(jt), std::move(mt), std::move(pt),
                                           std::move(*d.table));
}

struct Named {
    std::string name;
    AlgebraPtr alg;
};

inline std::vector<Named> finite_fixtures() {
    std::vector<Named> out;
    for (std::size_t n = 0; n <= 6; ++n)
        out.push_back({"L" + std::to_string(n), make_chain(n)});
    for (std::size_t a = 1; a <= 3; ++a)
        for (std::size_t b = a; b <= 3; ++b)
            out.push_back({"L" + std::to_string(a) + "xL" + std::to_string(b),
                           make_product({make_chain(a), make_chain(b)})});
    return out;
}

inline std::vector<Named> symbolic_fixtures() {
    std::vector<Named> out;
    for (std::size_t r = 1; r <= 3; ++r) {
        out.push_back({"cone" + std::to_string(r) + "p", make_cone(r, GroupOrder::Product)});
        out.push_back({"cone" + std::to_string(r) + "l", make_cone(r, GroupOrder::Lex)});
    }
    out.push_back({"K1", make_kn(1)});
    out.push_back({"K2", make_kn(2)});
    out.push_back({"L2xZ+", make_product({make_chain(2), make_cone(1, GroupOrder::Product)})});
    return out;
}

}  // namespace fx
