// Acceptance checks 1-10. One [PASS]/[FAIL] line per criterion; the exit
// code is the number of failures. Each criterion runs under its time limit.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "defring/oracle.hpp"

using namespace defring;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream note;

    void expect(bool cond, const std::string& what) {
        if (!cond && pass) note << "first failure: " << what << "; ";
        pass = pass && cond;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void run(const std::string& id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.expect(false, std::string("exception: ") + e.what());
    }
    const double t = seconds_since(t0);
    o.expect(t < limit_s, "time limit");
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << " " << title << " (" << std::fixed << std::setprecision(2) << t
              << " s, limit " << limit_s << " s)";
    const std::string note = o.note.str();
    if (!note.empty()) std::cout << " " << note;
    std::cout << std::endl;
}

Instance inst(const std::string& name) { return build_instance(parse_instance(name)); }

const std::vector<std::string> kTwisted{"twisted-p2n1", "twisted-p2n2", "twisted-p3n1", "twisted-p3n2", "twisted-p5n1"};
const std::vector<std::string> kStandard{"standard-d2p2", "standard-d2p5", "standard-d3p3", "standard-d4p2",
                                         "standard-d2p7"};

std::vector<std::string> battery() {
    auto all = kTwisted;
    all.insert(all.end(), kStandard.begin(), kStandard.end());
    return all;
}

}  // namespace

int main() {
    run("AC1", "certification battery, each instance under 10 s", 10.0 * 10, [](Outcome& o) {
        for (const auto& name : battery()) {
            const auto t0 = Clock::now();
            auto c = certify_instance(inst(name));
            const double t = seconds_since(t0);
            o.expect(c.verdict == Verdict::certified, name + " certified");
            o.expect(c.condition_a_dim == 1, name + " condition (a) dimension 1");
            o.expect(c.alpha.bullet1() || c.alpha.bullet2(), name + " a (b) bullet passes");
            o.expect(t < 10.0, name + " under 10 s");
        }
    });

    run("AC2", "multiplicity identity on standard instances", 5.0, [](Outcome& o) {
        for (const auto& name : kStandard) {
            auto I = inst(name);
            const auto V = I.V_W.reduced(1);
            const std::size_t dim = hom_space(V, end_rep(V)).dim();
            const std::size_t orbits = orbit_count_triples(*I.G);
            o.expect(dim == 1, name + " dim Hom(V, M) = 1");
            o.expect(orbits == 5, name + " five orbits on triples");
            o.expect(dim + 4 == orbits, name + " dim = orbits - 4");
        }
    });

    run("AC3", "non-commutativity witnesses", 1.0, [](Outcome& o) {
        for (const auto& name : kStandard) {
            auto s = parse_instance(name);
            auto X = x_matrices(s.d, Zmod(s.p, 1));
            o.expect(!(X.x[0] * X.x[1] == X.x[1] * X.x[0]), name + " x1 x2 != x2 x1");
        }
        for (std::int64_t p : {2, 3, 5}) {
            auto V = galois_module_rep(p, 1);
            const auto& G = *V.group();
            const Elem z = G.generators()[0], s = G.generators()[1], zs = G.mul(z, s);
            o.expect(G.mul(s, zs) == G.pow(z, static_cast<std::uint64_t>(p)) && G.pow(z, static_cast<std::uint64_t>(p)) != z,
                     "sigma (zeta sigma) = zeta^p != zeta");
            o.expect(!(V(s) * V(zs) == V(zs) * V(s)), "sz != zs for p = " + std::to_string(p));
        }
    });

    run("AC4", "tangent identity", 30.0, [](Outcome& o) {
        for (const auto& name : battery()) {
            auto I = inst(name);
            const std::size_t h1 = h1_dim(I.M.inflate(I.sd.quotient));
            o.expect(h1 == 1 && hom_invariants_dim(I.K, I.M) == 1, name + " h1 = 1 = hom invariants");
        }
        auto I = inst("twisted-p2n1");
        auto C = deformation_classes(enumerate_lifts(I.rho_bar(), dual_numbers(2)));
        o.expect(I.sd.gamma->order() == 24, "Gamma = S4 has order 24");
        o.expect(C.class_count() == 2, "|Def(F2[eps])| = 2");
    });

    run("AC5", "universality at desk scale on S4", 300.0, [](Outcome& o) {
        auto I = inst("twisted-p2n1");
        auto c = certify_instance(I);
        o.expect(c.verdict == Verdict::certified, "instance certified");
        const std::vector<std::pair<std::string, std::size_t>> expected{
            {"F2eps", 2}, {"Z4", 2}, {"F2t3", 2}, {"Z8", 2}, {"Z4u", 4}};
        for (const auto& [ring, count] : expected) {
            auto A = standard_ring(ring);
            auto r = functor_compare(I, *c.rho_R, A);
            o.expect(r.bijective(), ring + " bijective");
            o.expect(r.class_count == count, ring + " class count");
            o.expect(r.hom_count == count_homs_from_R(1, *A).size() && r.hom_count == count, ring + " hom count");
        }
    });

    run("AC6", "order identities in R for p = 2, n = 2", 10.0, [](Outcome& o) {
        auto I = inst("twisted-p2n2");
        o.expect(I.sd.gamma->order() == 96, "|Gamma| = 96");
        auto r = build_rho_R(I, find_alpha(I).matrix);
        o.expect(r.homomorphism(), "rho_R is a homomorphism");
        o.expect(r.kernel == std::vector<Elem>{0}, "kernel scan = {1}");
        std::size_t order4 = 0;
        for (std::uint64_t k = 0; k < I.K.size(); ++k) {
            auto kc = I.K.element(k);
            if (kc[0] % 2 == 0 && kc[1] % 2 == 0) continue;
            ++order4;
            const auto& m = r.rho(I.sd.kernel[k]);
            o.expect(!m.pow(2).is_identity(), "rho_R(g)^2 != 1");
            o.expect(m.pow(4).is_identity(), "rho_R(g)^4 = 1");
        }
        o.expect(order4 == 12, "twelve elements of order 4");
    });

    run("AC7", "projectivity suite", 30.0, [](Outcome& o) {
        for (const auto& name : battery()) {
            auto I = inst(name);
            const auto V = I.V_W.reduced(1);
            o.expect(is_projective_higman(V).projective, name + " V projective");
            if (I.G->order() > 48) continue;
            const auto M = end_rep(V);
            o.expect(h1_dim(M) == 0 && h2_dim(M) == 0, name + " End V acyclic");
            o.expect(h1_dim(V) == 0 && h2_dim(V) == 0, name + " V acyclic");
        }
        auto S3 = symmetric_group(3);
        o.expect(!is_projective_higman(PModule::trivial(S3, Zmod(2, 1), 1)).projective, "trivial F2 S3 not projective");
    });

    run("AC8", "cohomology computations on A4 and (Z/3)^2", 60.0, [](Outcome& o) {
        auto S4 = symmetric_group(4);
        auto A4 = subgroup(S4, {*S4->find_permutation({1, 2, 0, 3}), *S4->find_permutation({1, 0, 3, 2})}, "A4").group;
        o.expect(A4->order() == 12, "|A4| = 12");
        o.expect(h2_dim(PModule::trivial(A4, Zmod(2, 1), 1)) != 0, "H^2(A4, F2) != 0");
        auto T = twisted_modules(3, 1, 2);
        auto w = wedge_cocycle(3, {T.K(T.G->generators()[0])});
        o.expect(w.cocycle, "wedge is a cocycle");
        o.expect(!w.coboundary, "wedge is not a coboundary");
        o.expect(w.invariant == true, "wedge class is invariant");
    });

    run("AC9", "negative controls", 10.0, [](Outcome& o) {
        for (std::string name : {"twisted-p3n1-kgalois", "twisted-p2n2-kgalois", "twisted-p2n1-kscalar"}) {
            auto I = inst(name);
            auto c = certify_instance(I);
            o.expect(c.verdict == Verdict::refuted, name + " refuted");
            auto L = exp_lift_on_kernel(I.K, I.reference_alpha, I.spec.precision());
            o.expect(L.pass(), name + " kernel lift over R' verified");
        }
    });

    run("AC10", "twisted p=2 n=1 and standard d=2 p=2 agree", 5.0, [](Outcome& o) {
        auto a = inst("twisted-p2n1"), b = inst("standard-d2p2");
        o.expect(find_isomorphism(a.sd.gamma, b.sd.gamma).has_value(), "Gamma isomorphic");
        o.expect(find_isomorphism(a.sd.gamma, symmetric_group(4)).has_value(), "Gamma = S4");
        o.expect(certify_instance(a).verdict == certify_instance(b).verdict, "identical verdicts");
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures;
}
