#include "defring/report.hpp"

namespace defring {

namespace {

const char* family_name(Family f) { return f == Family::twisted ? "twisted" : "standard"; }

Json vec_json(const std::optional<Vec>& v) { return v ? Json(*v) : Json(nullptr); }

Json elem_json(const ArtinLocalAlgebra& A, const AlgElem& e) {
    return Json(std::vector<std::int64_t>(e.c.begin(), e.c.begin() + static_cast<std::ptrdiff_t>(A.rank())));
}

ResidueMatrix matrix_from_json(const Zmod& R, const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw InvalidParameter("malformed matrix");
    const std::size_t rows = j.size(), cols = j[0].size();
    ResidueMatrix m(R, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (j[r].size() != cols) throw InvalidParameter("ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, j[r][c].get<std::int64_t>());
    }
    return m;
}

}  // namespace

Json to_json(const ResidueMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const ArtinLocalAlgebra& A, const AlgMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(elem_json(A, m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

Json instance_json(const Instance& inst) {
    const auto& s = inst.spec;
    Json j;
    j["instance"] = s.name();
    j["family"] = family_name(s.family);
    j["p"] = s.p;
    j["n"] = s.n;
    j["N"] = s.precision();
    if (s.family == Family::standard) j["d"] = s.d;
    j["G"] = {{"name", inst.G->name()}, {"order", inst.G->order()}};
    j["gamma_order"] = inst.sd.gamma->order();
    j["dim_V"] = inst.d();
    j["rank_K"] = inst.K.rank();
    Json gens = Json::array();
    for (std::size_t i = 0; i < inst.G->generators().size(); ++i) {
        Elem g = inst.G->generators()[i];
        gens.push_back({{"V_W", to_json(inst.V_W(g))}, {"K", to_json(inst.K(g))}});
    }
    j["G_generators"] = gens;
    j["reference_alpha"] = to_json(inst.reference_alpha);
    return j;
}

Json certificate_json(const Instance& inst, const Certificate& c) {
    Json j;
    j["instance"] = c.spec.name();
    j["family"] = family_name(c.spec.family);
    j["p"] = c.spec.p;
    j["n"] = c.spec.n;
    j["N"] = c.spec.precision();
    if (c.spec.family == Family::standard) j["d"] = c.spec.d;
    j["gamma_order"] = c.gamma_order;
    j["ring"] = c.ring;
    j["condition_a"] = {{"dim", c.condition_a_dim}, {"pass", c.condition_a}};

    const AlphaMap& a = c.alpha;
    Json b;
    b["alpha"] = to_json(a.matrix);
    b["equivariant"] = a.equivariant;
    b["injective"] = a.injective;
    b["nonzero_mod_p"] = a.nonzero_mod_p;
    b["witness"] = a.witness ? Json{{"g", a.witness->first}, {"h", a.witness->second}} : Json(nullptr);
    if (a.clause_p2n1) {
        Json v = Json::array();
        for (const auto& x : a.clause_p2n1->violators) v.push_back(vec_json(x));
        b["clause_p2n1"] = {{"violators", v}, {"pass", a.clause_p2n1->pass}};
    } else {
        b["clause_p2n1"] = nullptr;
    }
    b["bullet1"] = a.bullet1();
    b["bullet2"] = a.bullet2();
    b["pass"] = a.pass();
    b["failure"] = a.failure.empty() ? Json(nullptr) : Json(a.failure);
    j["condition_b"] = b;

    if (c.rho_R) {
        const RhoR& r = *c.rho_R;
        Json gens = Json::array();
        for (Elem g : inst.sd.gamma->generators())
            gens.push_back({{"element", g},
                            {"k", inst.sd.k_coords(g)},
                            {"g", inst.sd.g_part(g)},
                            {"matrix", to_json(*r.R, r.rho(g))}});
        Json orders = Json::array();
        for (std::size_t i = 0; i < r.orders.order_pairs.size(); ++i)
            orders.push_back({{"k_order", r.orders.order_pairs[i].first},
                              {"image_order", r.orders.order_pairs[i].second},
                              {"count", r.orders.order_counts[i]}});
        j["rho_R"] = {{"ring", r.R->name()},
                      {"basis", r.R->labels()},
                      {"generators", gens},
                      {"homomorphism", r.homomorphism()},
                      {"faithful", r.faithful()},
                      {"kernel_size", r.kernel.size()},
                      {"reduces_to_rho_bar", r.reduces_to_rho_bar},
                      {"specializes_to_rho_W", r.specializes_to_rho_W},
                      {"order_checks",
                       {{"kernel_identity", r.orders.kernel_identity},
                        {"orders_match", r.orders.orders_match},
                        {"orders", orders}}}};
    } else {
        j["rho_R"] = nullptr;
    }
    j["tangent_dim"] = c.tangent_dim;
    j["hom_invariants"] = c.hom_invariants;
    j["annotations"] = Json::array({"not a complete intersection"});
    j["verdict"] = c.verdict == Verdict::certified ? "certified" : "refuted";
    j["failed_stage"] = c.failed_stage.empty() ? Json(nullptr) : Json(c.failed_stage);
    return j;
}

Json functor_json(const FunctorReport& r, std::optional<double> runtime_ms) {
    Json classes = Json::array();
    for (const auto& c : r.hom_classes) classes.push_back(c ? Json(*c) : Json(nullptr));
    return {{"instance", r.instance},
            {"ring", r.ring},
            {"lift_count", r.lift_count},
            {"class_count", r.class_count},
            {"hom_count", r.hom_count},
            {"hom_classes", classes},
            {"injective", r.injective},
            {"surjective", r.surjective},
            {"bijective", r.bijective()},
            {"runtime_ms", runtime_ms ? Json(*runtime_ms) : Json(nullptr)}};
}

VerifyResult verify_certificate(const Json& cert, unsigned threads) {
    VerifyResult out;
    auto problem = [&](std::string s) { out.problems.push_back(std::move(s)); };
    Instance inst;
    ResidueMatrix alpha;
    try {
        inst = build_instance(parse_instance(cert.at("instance").get<std::string>(), cert.at("N").get<int>()));
        alpha = matrix_from_json(inst.K.ring(), cert.at("condition_b").at("alpha"));
    } catch (const Json::exception& e) {
        throw InvalidParameter(std::string("malformed certificate: ") + e.what());
    }
    const std::string verdict = cert.value("verdict", "");

    const auto a = evaluate_alpha(inst, alpha);
    const Json& b = cert["condition_b"];
    if (b.value("pass", false) != a.pass()) problem("condition (b) flag does not match the embedded alpha");
    if (b.value("injective", false) != a.injective) problem("injectivity flag does not match");
    if (b.value("bullet1", false) != a.bullet1()) problem("bullet 1 flag does not match");
    if (b.value("bullet2", false) != a.bullet2()) problem("bullet 2 flag does not match");

    const std::size_t dim_a = hom_space(inst.K.reduced(1), inst.M).dim();
    if (cert["condition_a"].value("dim", std::size_t{0}) != dim_a) problem("condition (a) dimension does not match");

    const auto rho = build_rho_R(inst, alpha, threads);
    const Json& jr = cert["rho_R"];
    if (jr.is_null()) {
        problem("certificate has no rho_R");
    } else {
        const auto& gens = inst.sd.gamma->generators();
        const Json& jg = jr.at("generators");
        if (jg.size() != gens.size()) problem("rho_R generator count does not match Gamma");
        for (std::size_t i = 0; i < std::min(jg.size(), gens.size()); ++i)
            if (jg[i].at("matrix") != to_json(*rho.R, rho.rho(gens[i])))
                problem("rho_R image of generator " + std::to_string(i) + " is not (1 + t alpha(k)) rho_W(g)");
        if (jr.value("faithful", false) != rho.faithful()) problem("faithfulness flag does not match");
        if (jr.value("homomorphism", false) != rho.homomorphism()) problem("homomorphism flag does not match");
    }
    const std::size_t h1 = h1_dim(inst.M.inflate(inst.sd.quotient));
    if (cert.value("tangent_dim", std::size_t{0}) != h1) problem("tangent dimension does not match H^1");

    const bool certified = dim_a == 1 && a.pass() && rho.pass() && h1 == 1 && hom_invariants_dim(inst.K, inst.M) == 1;
    if ((verdict == "certified") != certified) problem("verdict '" + verdict + "' does not follow from the checks");
    out.ok = out.problems.empty();
    return out;
}

}  // namespace defring
