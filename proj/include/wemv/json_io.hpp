#pragma once

#include <fstream>

#include <json.hpp>

#include "wemv/identity.hpp"
#include "wemv/sheaf.hpp"
#include "wemv/structure.hpp"

namespace wemv {

using Json = nlohmann::ordered_json;

namespace detail {

inline GroupOrder parse_order(const Json& j, const std::string& locus) {
    std::string s = j.get<std::string>();
    if (s == "product") return GroupOrder::Product;
    if (s == "lex") return GroupOrder::Lex;
    throw InputError(locus + ": order must be \"product\" or \"lex\", got \"" + s + "\"");
}

inline const Json& field(const Json& j, const char* name, const std::string& locus) {
    if (!j.contains(name)) throw InputError(locus + "/" + name + ": missing field");
    return j.at(name);
}

inline std::vector<int> int_table(const Json& j, const char* name, std::size_t n,
                                  const std::string& locus) {
    const Json& t = field(j, name, locus);
    if (!t.is_array() || t.size() != n * n)
        throw InputError(locus + "/" + name + ": expected a row-major array of " +
                         std::to_string(n * n) + " indices");
    std::vector<int> out;
    out.reserve(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        const Json& e = t.at(k);
        if (!e.is_number_integer())
            throw InputError(locus + "/" + name + "/" + std::to_string(k) + ": not an integer");
        long long v = e.get<long long>();
        if (v < 0 || (std::size_t)v >= n)
            throw InputError(locus + "/" + name + "/" + std::to_string(k) + ": entry " +
                             std::to_string(v) + " outside the carrier 0.." + std::to_string(n - 1));
        out.push_back((int)v);
    }
    return out;
}

}  // namespace detail

inline AlgebraPtr load_algebra_json(const Json& j, const std::string& locus = "") {
    if (!j.is_object() || !j.contains("kind"))
        throw InputError(locus + ": expected an object with a \"kind\" field");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "chain_mv") {
        auto n = detail::field(j, "n", locus).get<long long>();
        if (n < 0) throw InputError(locus + "/n: must be >= 0");
        return make_chain((std::size_t)n);
    }
    if (kind == "cone") {
        auto rank = detail::field(j, "rank", locus).get<long long>();
        if (rank < 1) throw InputError(locus + "/rank: must be >= 1");
        return make_cone((std::size_t)rank,
                         detail::parse_order(detail::field(j, "order", locus), locus + "/order"));
    }
    if (kind == "perfect") {
        auto rank = detail::field(j, "rank", locus).get<long long>();
        if (rank < 1) throw InputError(locus + "/rank: must be >= 1");
        GroupOrder o = j.contains("order") ? detail::parse_order(j.at("order"), locus + "/order")
                                           : GroupOrder::Product;
        return make_perfect((std::size_t)rank, o);
    }
    if (kind == "kn") {
        auto unit = detail::field(j, "unit", locus).get<long long>();
        if (unit < 1) throw InputError(locus + "/unit: must be >= 1");
        return make_kn(unit);
    }
    if (kind == "product") {
        const Json& fs = detail::field(j, "factors", locus);
        if (!fs.is_array() || fs.empty())
            throw InputError(locus + "/factors: expected a nonempty array");
        std::vector<AlgebraPtr> factors;
        for (std::size_t i = 0; i < fs.size(); ++i)
            factors.push_back(load_algebra_json(fs.at(i), locus + "/factors/" + std::to_string(i)));
        return make_product(std::move(factors));
    }
    if (kind == "finite") {
        auto n = detail::field(j, "size", locus).get<long long>();
        if (n < 1) throw InputError(locus + "/size: must be >= 1");
        auto sz = (std::size_t)n;
        auto jt = detail::int_table(j, "join", sz, locus);
        auto mt = detail::int_table(j, "meet", sz, locus);
        auto pt = detail::int_table(j, "oplus", sz, locus);
        std::vector<int> st;
        if (j.contains("ominus")) {
            st = detail::int_table(j, "ominus", sz, locus);
        } else {
            auto d = derive_ominus(sz, jt, mt, pt);
            if (!d.table)
                throw InputError(locus + ": ominus not derivable (" + d.error + " at z=" +
                                 std::to_string(d.offending->first) + ", x=" +
                                 std::to_string(d.offending->second) + ")");
            st = std::move(*d.table);
        }
        return std::make_shared<FiniteAlgebra>(sz, std::move(jt), std::move(mt), std::move(pt),
                                               std::move(st));
    }
    throw InputError(locus + "/kind: unknown kind \"" + kind + "\"");
}

inline AlgebraPtr load_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError(path + ": invalid JSON: " + e.what());
    }
    return load_algebra_json(j, path);
}

// Emit the spec document for a built-in algebra; reloading gives operation
// tables equal to the original (finite) or the same symbolic parameters.
inline Json emit_algebra_spec(const Algebra& A) {
    if (auto* f = dynamic_cast<const FiniteAlgebra*>(&A)) {
        Json j;
        j["kind"] = "finite";
        j["size"] = f->size();
        j["join"] = f->join_table();
        j["meet"] = f->meet_table();
        j["oplus"] = f->oplus_table();
        j["ominus"] = f->ominus_table();
        return j;
    }
    if (auto* c = dynamic_cast<const ConeAlgebra*>(&A)) {
        Json j;
        j["kind"] = "cone";
        j["rank"] = c->rank();
        j["order"] = c->order() == GroupOrder::Lex ? "lex" : "product";
        return j;
    }
    if (auto* p = dynamic_cast<const PerfectAlgebra*>(&A)) {
        Json j;
        if (p->unit() != 1) {
            j["kind"] = "kn";
            j["unit"] = p->unit();
        } else {
            j["kind"] = "perfect";
            j["rank"] = p->rank();
            j["order"] = p->tail_order() == GroupOrder::Lex ? "lex" : "product";
        }
        return j;
    }
    if (auto* p = dynamic_cast<const ProductAlgebra*>(&A)) {
        Json j;
        j["kind"] = "product";
        j["factors"] = Json::array();
        for (const auto& f : p->factors()) j["factors"].push_back(emit_algebra_spec(*f));
        return j;
    }
    throw InputError("cannot emit spec for kind " + A.kind());
}

// ---------------------------------------------------------------------------
// Report documents. Key order is fixed by construction (ordered_json).

inline Json element_json(const Element& e) { return Json(e.str()); }

inline Json validation_json(const ValidationReport& r) {
    Json j;
    j["pass"] = r.pass;
    j["strategy"] = r.strategy;
    j["triples_checked"] = r.triples_checked;
    j["violations"] = Json::array();
    for (const auto& v : r.violations) {
        Json w;
        w["axiom"] = v.axiom;
        w["x"] = v.x.str();
        w["y"] = v.y.str();
        w["z"] = v.z.str();
        w["detail"] = v.detail;
        j["violations"].push_back(w);
    }
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline Json ideal_json(const Validated& M, const Ideal& I) {
    Json j = Json::array();
    if (M->is_finite()) {
        // Sorted index array over the canonical carrier order.
        auto elems = M->elements();
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (I.contains(elems[i])) idx.push_back(i);
        for (auto i : idx) j.push_back(i);
    } else {
        for (const auto& e : I.elems) j.push_back(e.str());
    }
    return j;
}

inline Json spectrum_json(const Validated& M) {
    Json j = Json::array();
    for (const auto& P : spec(M)) {
        Json e;
        e["ideal"] = ideal_json(M, P);
        e["quotient_size"] = quotient(M, P).quotient->size();
        e["is_chain"] = quotient_is_chain(M, P);
        j.push_back(e);
    }
    return j;
}

inline Json decomposition_json(const Decomposition& d) {
    Json j;
    switch (d.status) {
        case Decomposition::Status::Decomposed: j["status"] = "decomposed"; break;
        case Decomposition::Status::CriterionFailed: j["status"] = "criterion_failed"; break;
        case Decomposition::Status::Unknown: j["status"] = "unknown"; break;
    }
    if (d.witness) j["witness"] = d.witness->str();
    j["m1"] = d.m1.parts.empty() ? "" : d.m1.describe();
    j["m2"] = d.m2.parts.empty() ? "" : d.m2.describe();
    if (d.status == Decomposition::Status::Decomposed) {
        j["hom_ok"] = d.hom_ok;
        j["bijective_ok"] = d.bijective_ok;
        j["quotient_iso_ok"] = d.quotient_iso_ok;
        j["iso_sample"] = Json::array();
        for (const auto& [x, p] : d.iso_sample) {
            Json e;
            e["x"] = x.str();
            e["x1"] = p.first.str();
            e["x2"] = p.second.str();
            j["iso_sample"].push_back(e);
        }
    }
    return j;
}

inline Json representing_json(const Representing& r) {
    Json j;
    j["ambient_kind"] = r.ambient->kind();
    j["member_description"] = r.member_description;
    j["disjoint_checked"] = r.disjoint_ok;
    j["maximality_checked"] = r.maximality_ok;
    j["odot_closed_checked"] = r.odot_closed_ok;
    return j;
}

inline Json sheaf_json(const Validated& M, const SheafData& s) {
    Json j;
    j["points"] = Json::array();
    for (const auto& P : s.spectrum.points) {
        Json p = Json::array();
        for (const auto& e : P) p.push_back(e.str());
        j["points"].push_back(p);
    }
    j["basis"] = Json::object();
    for (std::size_t ai = 0; ai < s.spectrum.idems.size(); ++ai)
        j["basis"][s.spectrum.idems[ai].str()] = s.spectrum.basis[ai];
    j["stalks"] = Json::array();
    for (std::size_t k = 0; k < s.stalks.size(); ++k) {
        Json st;
        st["point"] = k;
        st["size"] = s.stalks[k].quotient->size();
        bool chain = true;
        const auto& Q = *s.stalks[k].quotient;
        for (const auto& x : Q.elements())
            for (const auto& y : Q.elements())
                if (!Q.leq(x, y) && !Q.leq(y, x)) chain = false;
        st["is_chain"] = chain;
        std::size_t idem = 0;
        for (const auto& e : Q.elements())
            if (Q.oplus(e, e) == e) ++idem;
        st["idempotent_count"] = idem;
        j["stalks"].push_back(st);
    }
    j["sections_sample"] = Json::array();
    auto elems = M->elements();
    for (std::size_t i = 0; i < std::min<std::size_t>(elems.size(), 8); ++i) {
        Json sec;
        sec["x"] = elems[i].str();
        sec["classes"] = s.sections[i];
        j["sections_sample"].push_back(sec);
    }
    return j;
}

inline Json verdict_json(const IdentityVerdict& v) {
    Json j;
    j["holds"] = v.holds;
    j["strategy"] = v.strategy;
    j["count"] = v.count;
    if (v.strategy == "sampled") {
        j["seed"] = v.seed;
        j["bound"] = v.bound;
    }
    if (!v.holds) {
        j["witness"] = Json::object();
        for (const auto& [k, e] : *v.witness) j["witness"][k] = e.str();
        j["lhs"] = v.lhs_val->str();
        j["rhs"] = v.rhs_val->str();
    }
    return j;
}

}  // namespace wemv
