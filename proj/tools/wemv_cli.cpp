// wemv: workbench CLI for wEMV/EMV-algebra computations.
//
// Exit codes: 0 = property holds / construction succeeded, 1 = property
// refuted or criterion failed (report carries a witness), 2 = input or
// usage error.

#include <iostream>

#include <CLI11.hpp>

#include "wemv/json_io.hpp"

namespace {

using namespace wemv;

struct CommonOpts {
    std::string algebra_path;
    SampleOptions sample;
    bool json = false;
    bool pretty = false;
};

// Pretty mode renders elements of a finite chain as fractions k/n.
std::string render(const Validated& M, const Element& e, bool pretty) {
    if (pretty && M->is_finite() && e.is_fin()) {
        const auto& A = *M;
        bool chain = true;
        auto elems = A.elements();
        for (const auto& x : elems)
            for (const auto& y : elems)
                if (!A.leq(x, y) && !A.leq(y, x)) chain = false;
        if (chain && A.size() > 1)
            return std::to_string(e.idx()) + "/" + std::to_string(A.size() - 1);
    }
    return e.str();
}

void emit(const Json& j, bool as_json) {
    if (as_json) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    // Text mode: same content, flattened key: value lines.
    std::function<void(const Json&, const std::string&)> walk = [&](const Json& v,
                                                                    const std::string& prefix) {
        if (v.is_object()) {
            for (auto it = v.begin(); it != v.end(); ++it)
                walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
        } else if (v.is_array()) {
            bool scalars = true;
            for (const auto& e : v)
                if (e.is_object() || e.is_array()) scalars = false;
            if (scalars) {
                std::string line;
                for (const auto& e : v)
                    line += (line.empty() ? "" : ", ") + e.dump();
                std::cout << prefix << ": [" << line << "]\n";
            } else {
                for (std::size_t i = 0; i < v.size(); ++i)
                    walk(v.at(i), prefix + "[" + std::to_string(i) + "]");
            }
        } else {
            std::cout << prefix << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                      << "\n";
        }
    };
    walk(j, "");
}

Element parse_element(const Algebra& A, const Json& j, const std::string& locus) {
    if (A.is_finite() && !dynamic_cast<const ProductAlgebra*>(&A)) {
        if (!j.is_number_integer()) throw InputError(locus + ": expected an element index");
        return Element::fin(j.get<long long>());
    }
    if (dynamic_cast<const ConeAlgebra*>(&A)) {
        if (!j.is_array()) throw InputError(locus + ": expected an integer vector");
        Element::Vec g;
        for (const auto& c : j) g.push_back(c.get<long long>());
        return Element::vec(std::move(g));
    }
    if (dynamic_cast<const PerfectAlgebra*>(&A)) {
        if (!j.is_array() || j.size() != 2 || !j.at(0).is_number_integer() || !j.at(1).is_array())
            throw InputError(locus + ": expected [head, [tail...]]");
        Element::Vec g;
        for (const auto& c : j.at(1)) g.push_back(c.get<long long>());
        return Element::bounded(j.at(0).get<long long>(), std::move(g));
    }
    if (auto* p = dynamic_cast<const ProductAlgebra*>(&A)) {
        if (!j.is_array() || j.size() != p->factors().size())
            throw InputError(locus + ": expected a tuple of " +
                             std::to_string(p->factors().size()) + " component elements");
        Element::Tuple t;
        for (std::size_t i = 0; i < j.size(); ++i)
            t.push_back(parse_element(*p->factors()[i], j.at(i),
                                      locus + "[" + std::to_string(i) + "]"));
        return Element::tup(std::move(t));
    }
    throw InputError(locus + ": cannot parse elements for kind " + A.kind());
}

Validated load(const CommonOpts& c) {
    return Validated::check(load_algebra_file(c.algebra_path), c.sample);
}

int cmd_validate(const CommonOpts& c) {
    auto A = load_algebra_file(c.algebra_path);
    auto rep = validate(*A, c.sample);
    emit(validation_json(rep), c.json);
    return rep.pass ? 0 : 1;
}

int cmd_report(const CommonOpts& c) {
    auto M = load(c);
    Json j;
    j["kind"] = M->kind();
    if (M->is_finite()) j["size"] = M->size();
    auto ids = idempotents(M);
    j["idempotents"] = Json::array();
    for (const auto& e : ids) j["idempotents"].push_back(render(M, e, c.pretty));
    if (M->is_finite()) {
        j["atoms"] = Json::array();
        for (const auto& e : atoms(M)) j["atoms"].push_back(render(M, e, c.pretty));
    }
    auto emv = is_emv(M);
    j["is_emv"] = emv.emv;
    if (!emv.emv) j["emv_witness"] = emv.witness->str();
    j["is_strict"] = is_strict(M);
    auto canc = is_cancellative(M, c.sample);
    j["is_cancellative"] = canc.cancellative;
    auto lin = classify_linear(M);
    j["linear"] = lin.cls == LinearClass::NotLinear ? "not_linear"
                  : lin.cls == LinearClass::Strict  ? "strict"
                                                    : "has_top";
    bool all = true;
    j["identity_suite"] = Json::array();
    for (const auto& r : identity_suite(M, c.sample)) {
        Json e;
        e["name"] = r.name;
        e["holds"] = r.holds;
        e["checked"] = r.checked;
        e["strategy"] = r.strategy;
        if (r.witness) {
            e["witness"] = Json::array();
            for (const auto& w : *r.witness) e["witness"].push_back(w.str());
        }
        all = all && r.holds;
        j["identity_suite"].push_back(e);
    }
    emit(j, c.json);
    return all ? 0 : 1;
}

int cmd_spectrum(const CommonOpts& c) {
    auto M = load(c);
    emit(spectrum_json(M), c.json);
    return 0;
}

int cmd_quotient(const CommonOpts& c, const std::string& ideal_spec) {
    auto M = load(c);
    Json ij = Json::parse(ideal_spec, nullptr, true);
    std::vector<Element> set;
    auto elems = M->elements();
    for (const auto& e : ij) {
        long long i = e.get<long long>();
        if (i < 0 || (std::size_t)i >= elems.size())
            throw InputError("ideal index " + std::to_string(i) + " outside the carrier");
        set.push_back(elems[(std::size_t)i]);
    }
    auto chk = is_ideal(M, set);
    if (!chk.ok) throw InputError("not an ideal: " + chk.reason);
    Ideal I{std::move(set)};
    auto q = quotient(M, I);
    Json j;
    j["ideal"] = ideal_json(M, I);
    j["quotient_size"] = q.quotient->size();
    j["is_chain"] = quotient_is_chain(M, I);
    j["is_prime"] = is_proper(M, I) ? is_prime(M, I) : false;
    j["class_representatives"] = Json::array();
    for (const auto& r : q.class_reps)
        j["class_representatives"].push_back(render(M, r, c.pretty));
    emit(j, c.json);
    return 0;
}

int cmd_decompose(const CommonOpts& c) {
    auto M = load(c);
    auto d = decompose(M, c.sample);
    emit(decomposition_json(d), c.json);
    return d.status == Decomposition::Status::Decomposed && d.hom_ok && d.bijective_ok ? 0 : 1;
}

int cmd_split(const CommonOpts& c, const std::string& at) {
    auto M = load(c);
    Element a = parse_element(*M, Json::parse(at), "--at");
    auto s = split_at_idempotent(M, a, c.sample);
    Json j;
    j["a"] = s.a.str();
    if (s.a_complement) j["a_complement"] = s.a_complement->str();
    j["lower_size"] = s.lower.carrier.size();
    j["upper"] = s.upper.describe();
    j["iso_hom_ok"] = s.iso_hom_ok;
    j["iso_bijective_ok"] = s.iso_bijective_ok;
    if (s.upper_maximal_ideal) j["upper_maximal_ideal"] = *s.upper_maximal_ideal;
    emit(j, c.json);
    return s.iso_hom_ok && s.iso_bijective_ok ? 0 : 1;
}

int cmd_represent(const CommonOpts& c) {
    auto M = load(c);
    auto r = representing(M, c.sample);
    emit(representing_json(r), c.json);
    return r.disjoint_ok && r.maximality_ok && r.odot_closed_ok ? 0 : 1;
}

int cmd_variety(const CommonOpts& c) {
    auto M = load(c);
    Json j;
    j["can"] = verdict_json(in_can(M, c.sample));
    j["perf"] = verdict_json(in_perf(M, c.sample));
    j["idem"] = verdict_json(in_idem(M, c.sample));
    emit(j, c.json);
    return 0;
}

int cmd_check(const CommonOpts& c, const std::string& identity) {
    auto [lhs, rhs] = parse_identity(identity);
    if (c.algebra_path.empty()) {
        auto r = refute_in_variety(lhs, rhs, c.sample);
        Json j;
        j["refuted"] = r.refuted;
        if (r.refuted) {
            j["probe"] = r.probe;
            j["verdict"] = verdict_json(r.verdict);
        } else {
            j["note"] = "no counterexample found (heuristic, not a proof)";
        }
        emit(j, c.json);
        return r.refuted ? 1 : 0;
    }
    auto M = load(c);
    auto v = check_identity(M, lhs, rhs, c.sample);
    emit(verdict_json(v), c.json);
    return v.holds ? 0 : 1;
}

int cmd_pixley(const CommonOpts& c) {
    auto M = load(c);
    auto r = check_pixley(M, c.sample);
    Json j;
    j["m_xyy_eq_x"] = verdict_json(r.xyy);
    j["m_xxy_eq_y"] = verdict_json(r.xxy);
    j["m_xyx_eq_x"] = verdict_json(r.xyx);
    emit(j, c.json);
    return r.all() ? 0 : 1;
}

int cmd_sheaf(const CommonOpts& c) {
    auto M = load(c);
    auto s = sections(M);
    emit(sheaf_json(M, s), c.json);
    return s.stalks_indecomposable && s.sections_injective && s.section_algebra_ok ? 0 : 1;
}

int cmd_sheaf_embed(const CommonOpts& c, const std::string& topology_path) {
    auto M = load(c);
    if (!topology_path.empty()) {
        // Custom topology + ideal family per the {points, opens, ideals} schema.
        std::ifstream in(topology_path);
        if (!in) throw InputError("cannot open " + topology_path);
        Json t;
        in >> t;
        std::size_t points = t.at("points").get<std::size_t>();
        std::vector<std::vector<std::size_t>> opens;
        for (const auto& o : t.at("opens")) opens.push_back(o.get<std::vector<std::size_t>>());
        std::vector<Ideal> family;
        auto elems = M->elements();
        for (const auto& f : t.at("ideals")) {
            std::vector<Element> set;
            for (const auto& e : f) set.push_back(elems.at(e.get<std::size_t>()));
            family.push_back(Ideal{std::move(set)});
        }
        auto v = custom_sheaf_check(M, points, opens, family);
        Json j;
        j["zero_intersection"] = v.zero_intersection;
        j["membership_open"] = v.membership_open;
        j["embedding_ok"] = v.embedding_ok;
        if (!v.detail.empty()) j["detail"] = v.detail;
        emit(j, c.json);
        return v.pass() ? 0 : 1;
    }
    auto e = semisimple_sheaf_embedding(M);
    Json j;
    j["applicable"] = e.applicable;
    if (!e.applicable) j["reason"] = e.reason;
    else {
        j["injective"] = e.injective;
        j["homomorphism"] = e.hom_ok;
        j["stalk_count"] = e.data.stalks.size();
    }
    emit(j, c.json);
    return e.applicable && e.injective && e.hom_ok ? 0 : 1;
}

int cmd_stone(const CommonOpts& c) {
    auto M = load(c);
    Json j;
    j["is_stone_emv"] = is_stone_emv(M);
    j["stone_intervals"] = Json::object();
    for (const auto& a : idempotents(M))
        j["stone_intervals"][render(M, a, c.pretty)] = is_stone_lattice(M, a);
    emit(j, c.json);
    return j["is_stone_emv"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wEMV-algebra workbench"};
    app.require_subcommand(1);

    CommonOpts c;
    std::string identity, ideal_spec, at_spec, topology_path;
    auto add_common = [&](CLI::App* s, bool need_algebra = true) {
        auto* opt = s->add_option("--algebra", c.algebra_path, "algebra spec JSON file");
        if (need_algebra) opt->required();
        s->add_option("--seed", c.sample.seed, "PRNG seed for sampled checks");
        s->add_option("--bound", c.sample.bound, "coordinate bound for symbolic sampling");
        s->add_option("--samples", c.sample.samples, "sample count for symbolic checks");
        s->add_option("--workers", c.sample.workers, "worker threads (0 = auto)");
        s->add_flag("--json", c.json, "JSON report output");
        bool* text_sink = new bool(false);
        s->add_flag("--text", *text_sink, "text report output (default)");
        s->add_flag("--pretty", c.pretty, "render chain elements as fractions k/n");
    };

    auto* sv = app.add_subcommand("validate", "check the ten defining axioms");
    add_common(sv);
    auto* sr = app.add_subcommand("report", "structural summary and stock-property suite");
    add_common(sr);
    auto* ss = app.add_subcommand("spectrum", "prime ideals and their quotients");
    add_common(ss);
    auto* sq = app.add_subcommand("quotient", "quotient by an ideal");
    add_common(sq);
    sq->add_option("--ideal", ideal_spec, "ideal as a JSON index array")->required();
    auto* sd = app.add_subcommand("decompose", "M1 x M2 direct decomposition");
    add_common(sd);
    auto* sp = app.add_subcommand("split", "split at an idempotent");
    add_common(sp);
    sp->add_option("--at", at_spec, "idempotent as a JSON element")->required();
    auto* sre = app.add_subcommand("represent", "representing algebra with top");
    add_common(sre);
    auto* sva = app.add_subcommand("variety", "Can / Perf / Idem membership");
    add_common(sva);
    auto* sc = app.add_subcommand("check", "check an identity \"lhs = rhs\"");
    add_common(sc, false);
    sc->add_option("identity", identity, "identity to check")->required();
    auto* spx = app.add_subcommand("pixley", "Pixley term identities");
    add_common(spx);
    auto* ssh = app.add_subcommand("sheaf", "Pierce sheaf data");
    add_common(ssh);
    auto* sse = app.add_subcommand("sheaf-embed", "sheaf embedding check");
    add_common(sse);
    sse->add_option("--topology", topology_path,
                    "custom topology + ideal family JSON (default: semisimple embedding)");
    auto* sst = app.add_subcommand("stone", "Stone EMV check");
    add_common(sst);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sv->parsed()) return cmd_validate(c);
        if (sr->parsed()) return cmd_report(c);
        if (ss->parsed()) return cmd_spectrum(c);
        if (sq->parsed()) return cmd_quotient(c, ideal_spec);
        if (sd->parsed()) return cmd_decompose(c);
        if (sp->parsed()) return cmd_split(c, at_spec);
        if (sre->parsed()) return cmd_represent(c);
        if (sva->parsed()) return cmd_variety(c);
        if (sc->parsed()) return cmd_check(c, identity);
        if (spx->parsed()) return cmd_pixley(c);
        if (ssh->parsed()) return cmd_sheaf(c);
        if (sse->parsed()) return cmd_sheaf_embed(c, topology_path);
        if (sst->parsed()) return cmd_stone(c);
    } catch (const wemv::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
