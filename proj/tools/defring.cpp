// defring: build instances, certify deformation rings, run the brute-force
// oracle and report cohomology dimensions.
//
// Exit codes: 0 success, 1 refuted or failed check, 2 invalid input.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "defring/report.hpp"

using namespace defring;

namespace {

constexpr int kOk = 0, kRefuted = 1, kInvalid = 2;

struct Options {
    std::string target;
    std::int64_t p = 0;
    int n = 1, d = 0, N = 0;
    std::string variant;
    std::string json_path;
    unsigned threads = 0;
    bool timing = false;
};

class Timer {
public:
    double ms() const { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count(); }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

InstanceSpec resolve(const Options& o) {
    if (o.target == "twisted" || o.target == "standard") {
        if (o.p == 0) throw InvalidParameter("--p is required");
        InstanceSpec s;
        s.family = o.target == "twisted" ? Family::twisted : Family::standard;
        s.p = o.p;
        s.n = o.n;
        s.d = o.d;
        s.N = o.N;
        if (s.family == Family::standard && o.d == 0) throw InvalidParameter("--d is required");
        if (o.variant == "kgalois") s.variant = Variant::kgalois;
        else if (o.variant == "kscalar") s.variant = Variant::kscalar;
        else if (!o.variant.empty()) throw InvalidParameter("unknown variant '" + o.variant + "'");
        check_admissible(s);
        return s;
    }
    auto s = parse_instance(o.target, o.N);
    check_admissible(s);
    return s;
}

void emit(const Options& o, const Json& j) {
    if (o.json_path.empty()) return;
    const std::string text = j.dump(2) + "\n";
    if (o.json_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(o.json_path);
    if (!f) throw InvalidParameter("cannot write " + o.json_path);
    f << text;
}

// human-readable lines go to stderr when JSON is written to stdout
std::ostream& out(const Options& o) { return o.json_path == "-" ? std::cerr : std::cout; }

std::string yes(bool b) { return b ? "yes" : "no"; }

void print_certificate(std::ostream& os, const Certificate& c) {
    os << c.spec.name() << ": |Gamma| = " << c.gamma_order << ", target ring " << c.ring << "\n";
    os << "  condition (a): dim " << c.condition_a_dim << (c.condition_a ? " (pass)" : " (fail)") << "\n";
    const auto& a = c.alpha;
    os << "  condition (b): injective " << yes(a.injective) << ", non-commuting witness " << yes(a.bullet1());
    if (a.clause_p2n1) os << ", p=2 n=1 clause " << yes(a.bullet2());
    os << (a.pass() ? " (pass)" : " (fail: " + a.failure + ")") << "\n";
    if (c.rho_R)
        os << "  rho_R over " << c.rho_R->R->name() << ": homomorphism " << yes(c.rho_R->homomorphism())
           << ", faithful " << yes(c.rho_R->faithful()) << ", order identities "
           << yes(c.rho_R->orders.kernel_identity && c.rho_R->orders.orders_match) << "\n";
    os << "  tangent: h1 = " << c.tangent_dim << ", Hom(K/pK, M)^G = " << c.hom_invariants << "\n";
    os << "  verdict: " << (c.verdict == Verdict::certified ? "certified" : "refuted (" + c.failed_stage + ")") << "\n";
}

int cmd_example(const Options& o) {
    auto inst = build_instance(resolve(o));
    auto j = instance_json(inst);
    emit(o, j);
    auto& os = out(o);
    os << inst.spec.name() << ": G = " << inst.G->name() << " (order " << inst.G->order() << "), dim V = " << inst.d()
       << ", K of rank " << inst.K.rank() << " over Z/" << inst.K.ring().q << ", |Gamma| = " << inst.sd.gamma->order()
       << "\n";
    return kOk;
}

int cmd_certify(const Options& o) {
    Timer t;
    auto inst = build_instance(resolve(o));
    auto c = certify_instance(inst, {o.threads, {}});
    auto j = certificate_json(inst, c);
    j["runtime_ms"] = o.timing ? Json(t.ms()) : Json(nullptr);
    emit(o, j);
    print_certificate(out(o), c);
    return c.verdict == Verdict::certified ? kOk : kRefuted;
}

int cmd_oracle(const Options& o, const std::vector<std::string>& rings) {
    auto inst = build_instance(resolve(o));
    auto c = certify_instance(inst, {o.threads, {}});
    if (c.verdict != Verdict::certified) {
        out(o) << inst.spec.name() << " is not certified (" << c.failed_stage << "); the comparison needs rho_R\n";
        return kRefuted;
    }
    std::vector<std::string> names = rings.empty() ? standard_ring_names(inst.spec.p) : rings;
    Json reports = Json::array();
    bool all = true;
    for (const auto& name : names) {
        Timer t;
        auto r = functor_compare(inst, *c.rho_R, standard_ring(name), o.threads);
        reports.push_back(functor_json(r, o.timing ? std::optional(t.ms()) : std::nullopt));
        all = all && r.bijective();
        out(o) << r.instance << " over " << r.ring << ": lifts " << r.lift_count << ", classes " << r.class_count
               << ", homs " << r.hom_count << ", bijective=" << (r.bijective() ? "true" : "false") << "\n";
    }
    emit(o, reports.size() == 1 ? reports[0] : reports);
    return all ? kOk : kRefuted;
}

int cmd_cohomology(const Options& o, int degree) {
    auto inst = build_instance(resolve(o));
    const auto M = inst.M.inflate(inst.sd.quotient);
    std::size_t dim = 0;
    switch (degree) {
        case 0: dim = invariants_dim(M); break;
        case 1: dim = h1_dim(M); break;
        case 2: dim = h2_dim(M); break;
        default: throw InvalidParameter("--degree must be 0, 1 or 2");
    }
    Json j{{"instance", inst.spec.name()},
           {"group", inst.sd.gamma->name()},
           {"module", "End(V)"},
           {"degree", degree},
           {"dim", dim},
           {"hom_invariants", hom_invariants_dim(inst.K, inst.M)}};
    emit(o, j);
    out(o) << "dim H^" << degree << "(" << inst.sd.gamma->name() << ", End V) = " << dim << "\n";
    return kOk;
}

const std::vector<std::string> kBattery{"twisted-p2n1",  "twisted-p2n2",  "twisted-p3n1",  "twisted-p3n2",
                                        "twisted-p5n1",  "standard-d2p2", "standard-d2p5", "standard-d3p3",
                                        "standard-d4p2", "standard-d2p7"};
const std::vector<std::string> kControls{"twisted-p3n1-kgalois", "twisted-p2n2-kgalois", "twisted-p2n1-kscalar"};

int cmd_report(const Options& o) {
    Json certs = Json::array(), controls = Json::array(), oracle = Json::array();
    bool ok = true;
    auto& os = out(o);
    for (const auto& name : kBattery) {
        Timer t;
        auto inst = build_instance(parse_instance(name, o.N));
        auto c = certify_instance(inst, {o.threads, {}});
        auto j = certificate_json(inst, c);
        j["runtime_ms"] = o.timing ? Json(t.ms()) : Json(nullptr);
        certs.push_back(j);
        ok = ok && c.verdict == Verdict::certified;
        os << name << ": " << j["verdict"].get<std::string>() << "\n";
        if (name == "twisted-p2n1")
            for (const auto& ring : standard_ring_names(2)) {
                Timer tr;
                auto r = functor_compare(inst, *c.rho_R, standard_ring(ring), o.threads);
                oracle.push_back(functor_json(r, o.timing ? std::optional(tr.ms()) : std::nullopt));
                ok = ok && r.bijective();
                os << "  oracle " << ring << ": classes " << r.class_count << ", bijective "
                   << (r.bijective() ? "true" : "false") << "\n";
            }
    }
    for (const auto& name : kControls) {
        auto inst = build_instance(parse_instance(name, o.N));
        auto c = certify_instance(inst, {o.threads, {}});
        auto lift = exp_lift_on_kernel(inst.K, inst.reference_alpha, inst.spec.precision());
        controls.push_back({{"certificate", certificate_json(inst, c)},
                            {"kernel_lift", {{"variant", to_string(lift.variant)},
                                             {"ring", lift.ring->name()},
                                             {"homomorphism", lift.homomorphism},
                                             {"lifts_rho_R", lift.lifts_rho_R}}}});
        ok = ok && c.verdict == Verdict::refuted && lift.pass();
        os << name << ": " << (c.verdict == Verdict::certified ? "certified" : "refuted at " + c.failed_stage)
           << ", kernel lift over " << lift.ring->name() << (lift.pass() ? " verified" : " FAILED") << "\n";
    }
    emit(o, Json{{"certificates", certs}, {"negative_controls", controls}, {"oracle", oracle}});
    return ok ? kOk : kRefuted;
}

int cmd_verify(const Options& o, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidParameter("cannot read " + path);
    Json j;
    try {
        j = Json::parse(f);
    } catch (const Json::parse_error& e) {
        throw InvalidParameter(std::string("not JSON: ") + e.what());
    }
    auto r = verify_certificate(j, o.threads);
    for (const auto& p : r.problems) std::cout << "problem: " << p << "\n";
    std::cout << j.value("instance", "?") << ": certificate " << (r.ok ? "verified" : "rejected") << "\n";
    return r.ok ? kOk : kRefuted;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deformation ring certificates for split extensions K x| G"};
    app.require_subcommand(1);
    Options o;
    int degree = 1;
    bool all = false;
    std::vector<std::string> rings;
    std::string cert_path;

    auto add_instance = [&](CLI::App* sub) {
        sub->add_option("target", o.target, "twisted | standard | canonical name (twisted-p2n1, standard-d2p5)")->required();
        sub->add_option("--p", o.p, "prime");
        sub->add_option("--n", o.n, "exponent n of the ring W[[t]]/(p^n t, t^2)");
        sub->add_option("--d", o.d, "dimension d of the standard family");
        sub->add_option("--q", o.d, "alias of --d");
        sub->add_option("--variant", o.variant, "negative control: kgalois | kscalar");
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--N", o.N, "truncation W = Z/p^N (default n + 2)");
        sub->add_option("--json", o.json_path, "write JSON to this path, '-' for stdout");
        sub->add_option("--threads", o.threads, "worker threads (0 = hardware)");
        sub->add_flag("--timing", o.timing, "include runtime_ms in JSON");
    };

    auto* example = app.add_subcommand("example", "construct an instance");
    auto* certify = app.add_subcommand("certify", "certify an instance");
    auto* oracle = app.add_subcommand("oracle", "compare the deformation functor with Hom(R, A)");
    auto* cohomology = app.add_subcommand("cohomology", "dim H^k(Gamma, End V)");
    for (auto* sub : {example, certify, oracle, cohomology}) {
        add_instance(sub);
        add_common(sub);
    }
    oracle->add_option("--ring", rings, "test ring (F2eps, Z4, F2t3, Z8, Z4u, ...); default all");
    cohomology->add_option("--degree", degree, "0, 1 or 2");
    auto* report = app.add_subcommand("report", "certify the battery and run the oracle");
    report->add_flag("--all", all, "full battery (the only mode)");
    add_common(report);
    auto* verify = app.add_subcommand("verify", "re-check a certificate JSON");
    verify->add_option("certificate", cert_path)->required()->check(CLI::ExistingFile);
    verify->add_option("--threads", o.threads);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*example) return cmd_example(o);
        if (*certify) return cmd_certify(o);
        if (*oracle) return cmd_oracle(o, rings);
        if (*cohomology) return cmd_cohomology(o, degree);
        if (*report) return cmd_report(o);
        if (*verify) return cmd_verify(o, cert_path);
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
