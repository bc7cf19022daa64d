#include "defring/certify.hpp"

#include <regex>

namespace defring {

namespace {

const char* variant_suffix(Variant v) {
    switch (v) {
        case Variant::kgalois: return "-kgalois";
        case Variant::kscalar: return "-kscalar";
        default: return "";
    }
}

std::size_t isqrt(std::size_t n) {
    std::size_t r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

ResidueMatrix alpha_at(const ResidueMatrix& alpha, const Vec& k) {
    const std::size_t d = isqrt(alpha.rows());
    return unvec(alpha.ring(), alpha.apply(k), d, d);
}

std::vector<ResidueMatrix> basis_images(const ResidueMatrix& alpha) {
    std::vector<ResidueMatrix> out;
    for (std::size_t i = 0; i < alpha.cols(); ++i) {
        Vec e(alpha.cols(), 0);
        e[i] = 1;
        out.push_back(alpha_at(alpha, e));
    }
    return out;
}

std::optional<std::pair<std::size_t, std::size_t>> noncommuting_basis_pair(const ResidueMatrix& alpha) {
    auto imgs = basis_images(alpha.reduced(1));
    for (std::size_t i = 0; i < imgs.size(); ++i)
        for (std::size_t j = i + 1; j < imgs.size(); ++j)
            if (!(imgs[i] * imgs[j] == imgs[j] * imgs[i])) return std::pair{i, j};
    return std::nullopt;
}

std::uint64_t additive_order(const Zmod& R, const Vec& v) {
    int val = R.N;
    for (auto x : v) val = std::min(val, valuation(x, R.p, R.N));
    return static_cast<std::uint64_t>(ipow(R.p, R.N - val));
}

std::string subscript(std::int64_t v) {
    static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    std::string s;
    for (char c : std::to_string(v)) s += digits[c - '0'];
    return s;
}

}  // namespace

std::string InstanceSpec::name() const {
    std::string base = family == Family::twisted
                           ? "twisted-p" + std::to_string(p) + "n" + std::to_string(n)
                           : "standard-d" + std::to_string(d) + "p" + std::to_string(p);
    return base + variant_suffix(variant);
}

InstanceSpec parse_instance(const std::string& name, int N) {
    static const std::regex tw("twisted-p(\\d+)n(\\d+)(-kgalois|-kscalar)?");
    static const std::regex st("standard-d(\\d+)p(\\d+)(-kscalar)?");
    std::smatch m;
    InstanceSpec s;
    s.N = N;
    if (std::regex_match(name, m, tw)) {
        s.family = Family::twisted;
        s.p = std::stoll(m[1]);
        s.n = std::stoi(m[2]);
    } else if (std::regex_match(name, m, st)) {
        s.family = Family::standard;
        s.d = std::stoi(m[1]);
        s.p = std::stoll(m[2]);
    } else {
        throw InvalidParameter("unknown instance '" + name + "' (expected twisted-pPnN or standard-dDpP)");
    }
    if (m[3] == "-kgalois") s.variant = Variant::kgalois;
    if (m[3] == "-kscalar") s.variant = Variant::kscalar;
    return s;
}

void check_admissible(const InstanceSpec& s) {
    if (!is_prime(s.p)) throw InvalidParameter("p must be prime");
    if (s.n < 1) throw InvalidParameter("n >= 1 required");
    if (s.precision() <= s.n) throw InvalidParameter("N > n required");
    if (s.precision() > 12) throw InvalidParameter("N <= 12 required");
    std::uint64_t k_order = 1, g_order = 0;
    if (s.family == Family::twisted) {
        if (s.p > 7) throw InvalidParameter("twisted family supports p <= 7");
        g_order = static_cast<std::uint64_t>(2 * (s.p * s.p - 1));
        k_order = static_cast<std::uint64_t>(s.variant == Variant::kscalar ? ipow(s.p, s.n) : ipow(s.p, 2 * s.n));
    } else {
        if (s.variant == Variant::kgalois) throw InvalidParameter("kgalois applies to the twisted family only");
        if (s.n != 1) throw InvalidParameter("standard family has n = 1");
        if (s.d < 2) throw InvalidParameter("d >= 2 required");
        if (!standard_admissible(s.d, s.p)) throw InvalidParameter("d < p-1 or d = p^f required");
        if (s.d >= s.p ? s.d > 9 : s.d > 7) throw InvalidParameter("standard family supports S_{d+1} for d <= 7 and PGL_2(F_d) for d <= 9");
        g_order = s.d >= s.p ? static_cast<std::uint64_t>(s.d) * (s.d - 1) * (s.d + 1) : 1;
        if (s.d < s.p)
            for (int i = 2; i <= s.d + 1; ++i) g_order *= static_cast<std::uint64_t>(i);
        k_order = static_cast<std::uint64_t>(s.variant == Variant::kscalar ? s.p : ipow(s.p, s.d));
    }
    if (k_order * g_order > kTableLimit)
        throw InvalidParameter("|Gamma| = " + std::to_string(k_order * g_order) + " exceeds " + std::to_string(kTableLimit));
}

Representation Instance::rho_bar() const { return V_W.reduced(1).inflate(sd.quotient); }

Instance build_instance(const InstanceSpec& spec) {
    check_admissible(spec);
    const int n = spec.n, N = spec.precision();
    const Zmod Rn(spec.p, n);
    Instance inst;
    inst.spec = spec;
    if (spec.family == Family::twisted) {
        auto T = twisted_modules(spec.p, n, N);
        inst.G = T.G;
        inst.V_W = T.V_W;
        inst.K = T.K;
        inst.reference_alpha = T.alpha;
        if (spec.variant == Variant::kgalois) {
            GaloisRing gr(spec.p, n);
            inst.K = Representation(T.G, Rn, {ResidueMatrix::identity(Rn, 2), gr.frobenius_matrix()});
            inst.reference_alpha = ResidueMatrix(Rn, 4, 2);
            for (std::size_t i = 0; i < 2; ++i) {
                Vec v = vec(gr.regular_matrix(i == 0 ? gr.one() : gr.x()));
                for (std::size_t r = 0; r < 4; ++r) inst.reference_alpha.set(r, i, v[r]);
            }
        }
    } else {
        inst.G = standard_group(spec.d, spec.p);
        inst.V_W = difference_rep(inst.G, Zmod(spec.p, N));
        inst.K = difference_rep(inst.G, Rn);
        auto X = x_matrices(spec.d, Rn);
        const auto d = static_cast<std::size_t>(spec.d);
        inst.reference_alpha = ResidueMatrix(Rn, d * d, d);
        for (std::size_t j = 0; j < d; ++j) {
            Vec v = vec(restrict_to_V(X.x[j]));
            for (std::size_t r = 0; r < d * d; ++r) inst.reference_alpha.set(r, j, v[r]);
        }
    }
    if (spec.variant == Variant::kscalar) {
        const std::size_t d = inst.V_W.rank();
        inst.K = PModule::trivial(inst.G, Rn, 1);
        inst.reference_alpha = ResidueMatrix(Rn, d * d, 1);
        for (std::size_t i = 0; i < d; ++i) inst.reference_alpha.set(i * d + i, 0, 1);
    }
    inst.M = end_rep(inst.V_W.reduced(1));
    inst.M_Wn = end_rep(inst.V_W.reduced(n));
    inst.sd = semidirect_product(inst.K, "Gamma(" + spec.name() + ")");
    return inst;
}

std::string ring_label(std::int64_t p, int n) {
    return "ℤ" + subscript(p) + "[[t]]/(" + std::to_string(ipow(p, n)) + "t, t²)";
}

ResidueMatrix AlphaMap::at(const Vec& k) const { return alpha_at(matrix, k); }

AlphaMap evaluate_alpha(const Instance& inst, const ResidueMatrix& alpha) {
    const std::size_t d = inst.d();
    if (alpha.rows() != d * d || alpha.cols() != inst.K.rank() || !(alpha.ring() == inst.K.ring()))
        throw InvalidParameter("alpha must be a " + std::to_string(d * d) + " x " + std::to_string(inst.K.rank()) +
                               " matrix over Z/p^n");
    AlphaMap a;
    a.matrix = alpha;
    a.equivariant = true;
    for (Elem g = 0; g < inst.G->order() && a.equivariant; ++g) {
        ResidueMatrix lhs = inst.M_Wn(g) * alpha, rhs = alpha * inst.K(g);
        if (lhs == rhs) continue;
        a.equivariant = false;
        for (std::size_t j = 0; j < alpha.cols(); ++j)
            for (std::size_t r = 0; r < alpha.rows(); ++r)
                if (lhs(r, j) != rhs(r, j) && !a.equivariance_defect) a.equivariance_defect = std::pair{g, j};
    }
    a.injective = kernel_basis(alpha).empty();
    a.nonzero_mod_p = !alpha.reduced(1).is_zero();
    if (auto w = noncommuting_basis_pair(alpha)) {
        Vec g(alpha.cols(), 0), h(alpha.cols(), 0);
        g[w->first] = 1;
        h[w->second] = 1;
        a.witness = std::pair{g, h};
    }
    if (inst.spec.p == 2 && inst.spec.n == 1) {
        ClauseP2N1 c;
        c.violators.resize(2);
        for (std::uint64_t idx = 0; idx < inst.K.size(); ++idx) {
            Vec k = inst.K.element(idx);
            ResidueMatrix A = a.at(k);
            for (std::int64_t s = 0; s < 2; ++s)
                if (!c.violators[s] && !(A * A == A.scaled(s))) c.violators[s] = k;
        }
        c.pass = c.violators[0] && c.violators[1];
        a.clause_p2n1 = c;
    }
    if (!a.equivariant)
        a.failure = "alpha is not equivariant";
    else if (!a.injective)
        a.failure = "alpha is not injective";
    else if (!a.nonzero_mod_p)
        a.failure = "image of alpha lies in p End(V_W)";
    else if (!a.bullet1() && !a.bullet2())
        a.failure = a.clause_p2n1 ? "commutative image and clause satisfied" : "commutative image";
    return a;
}

AlphaMap find_alpha(const Instance& inst) {
    auto H = hom_space(inst.K, inst.M_Wn);
    for (std::size_t i = 0; i < H.basis.size(); ++i) {
        AlphaMap a = evaluate_alpha(inst, H.basis[i]);
        a.generator_index = i;
        if (a.injective) return a;
    }
    const std::size_t d = inst.d();
    AlphaMap a = evaluate_alpha(inst, H.basis.empty() ? ResidueMatrix(inst.K.ring(), d * d, inst.K.rank()) : H.basis[0]);
    a.failure = "no injective generator";
    return a;
}

RhoR build_rho_R(const Instance& inst, const ResidueMatrix& alpha, unsigned threads) {
    const auto& sd = inst.sd;
    const std::int64_t p = inst.spec.p;
    const int n = inst.spec.n, N = inst.spec.precision();
    RhoR out;
    out.R = make_ring_R(p, n, N);
    std::vector<AlgMatrix> on_K, on_G;
    for (std::uint64_t k = 0; k < inst.K.size(); ++k) on_K.push_back(one_plus_t(out.R, alpha_at(alpha, inst.K.element(k))));
    for (Elem g = 0; g < inst.G->order(); ++g) on_G.push_back(to_algebra(out.R, inst.V_W(g)));
    std::vector<AlgMatrix> mats;
    mats.reserve(sd.gamma->order());
    for (Elem x = 0; x < sd.gamma->order(); ++x) mats.push_back(on_K[sd.k_index(x)] * on_G[sd.g_part(x)]);
    out.rho = AlgRepresentation::unverified(sd.gamma, out.R, std::move(mats));
    out.defect = out.rho.first_defect_all_pairs(threads);

    out.reduces_to_rho_bar = out.specializes_to_rho_W = true;
    for (Elem x = 0; x < sd.gamma->order(); ++x) {
        const Elem g = sd.g_part(x);
        const AlgMatrix& m = out.rho(x);
        out.reduces_to_rho_bar = out.reduces_to_rho_bar && m.residue() == inst.V_W(g).reduced(1);
        for (std::size_t i = 0; i < inst.d(); ++i)
            for (std::size_t j = 0; j < inst.d(); ++j)
                out.specializes_to_rho_W = out.specializes_to_rho_W && m(i, j).c[0] == inst.V_W(g)(i, j);
    }
    out.kernel = out.rho.kernel();

    OrderChecks& oc = out.orders;
    oc.kernel_identity = oc.orders_match = true;
    const auto pn = static_cast<std::uint64_t>(ipow(p, n));
    for (std::uint64_t k = 0; k < inst.K.size(); ++k) {
        const AlgMatrix& m = out.rho(sd.kernel[k]);
        oc.kernel_identity = oc.kernel_identity && m.pow(pn).is_identity();
        const std::uint64_t ok = additive_order(inst.K.ring(), inst.K.element(k)), om = m.order(2 * pn);
        oc.orders_match = oc.orders_match && ok == om;
        auto key = std::pair{ok, om};
        auto it = std::find(oc.order_pairs.begin(), oc.order_pairs.end(), key);
        if (it == oc.order_pairs.end()) {
            oc.order_pairs.push_back(key);
            oc.order_counts.push_back(1);
        } else {
            ++oc.order_counts[static_cast<std::size_t>(it - oc.order_pairs.begin())];
        }
    }
    return out;
}

std::string to_string(LiftVariant v) {
    switch (v) {
        case LiftVariant::exponential: return "exponential";
        case LiftVariant::cyclic: return "cyclic";
        default: return "p2n1";
    }
}

KernelLift exp_lift_on_kernel(const Representation& K, const ResidueMatrix& alpha, int N) {
    const Zmod Rn = K.ring();
    const std::int64_t p = Rn.p;
    const int n = Rn.N;
    if (!(alpha.ring() == Rn) || alpha.cols() != K.rank()) throw InvalidParameter("alpha does not match K");
    if (noncommuting_basis_pair(alpha)) throw InvalidParameter("reduced image of alpha does not commute; no kernel lift");
    const std::size_t d = isqrt(alpha.rows());
    const Zmod F(p, 1);

    KernelLift out;
    if (p == 2 && n == 1) {
        for (std::int64_t s = 0; s < 2 && !out.a; ++s) {
            bool all = true;
            for (std::uint64_t idx = 0; idx < K.size() && all; ++idx) {
                ResidueMatrix A = alpha_at(alpha, K.element(idx));
                all = A * A == A.scaled(s);
            }
            if (all) out.a = s;
        }
        if (!out.a) throw InvalidParameter("no a with alpha(g)^2 = a alpha(g) for all g; no kernel lift");
        out.variant = LiftVariant::p2n1;
        out.ring = make_ring_Rprime_2_1(*out.a, N);
    } else {
        out.variant = p == 2 ? LiftVariant::cyclic : LiftVariant::exponential;
        out.ring = make_ring_Rprime(p, n, N);
    }
    const AlgebraPtr& A = out.ring;

    for (std::uint64_t idx = 0; idx < K.size(); ++idx) {
        const Vec k = K.element(idx);
        if (out.variant == LiftVariant::exponential) {
            // 1 + t a + t^2 a^2 / 2, the t^2 coefficient read mod p
            ResidueMatrix a = alpha_at(alpha, k), sq = a.reduced(1) * a.reduced(1);
            AlgMatrix m = one_plus_t(A, a);
            const AlgElem t2 = A->basis(2);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) m(i, j) = A->add(m(i, j), A->scale(F.mul(sq(i, j), F.inv(2)), t2));
            out.images.push_back(m);
        } else {
            AlgMatrix m = AlgMatrix::identity(A, d);
            for (std::size_t i = 0; i < k.size(); ++i) {
                Vec e(k.size(), 0);
                e[i] = 1;
                m = m * one_plus_t(A, alpha_at(alpha, e)).pow(static_cast<std::uint64_t>(k[i]));
            }
            out.images.push_back(m);
        }
    }

    out.homomorphism = out.images[0].is_identity();
    for (std::uint64_t i = 0; i < K.size() && out.homomorphism; ++i) {
        const Vec ki = K.element(i);
        for (std::uint64_t j = 0; j < K.size() && out.homomorphism; ++j) {
            Vec kj = K.element(j);
            for (std::size_t c = 0; c < kj.size(); ++c) kj[c] = Rn.add(kj[c], ki[c]);
            out.homomorphism = out.images[i] * out.images[j] == out.images[K.index(kj)];
        }
    }

    // reduction mod t^2 is 1 + t alpha(k) in R
    const std::int64_t qN = ipow(p, N);
    out.lifts_rho_R = true;
    for (std::uint64_t idx = 0; idx < K.size(); ++idx) {
        ResidueMatrix a = alpha_at(alpha, K.element(idx));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const AlgElem& e = out.images[idx](i, j);
                out.lifts_rho_R = out.lifts_rho_R && e.c[0] % qN == (i == j ? 1 : 0) && Rn.reduce(e.c[1]) == a(i, j);
            }
    }
    return out;
}

Certificate certify_instance(const Instance& inst, const CertifyOptions& opts) {
    Certificate c;
    c.spec = inst.spec;
    c.gamma_order = inst.sd.gamma->order();
    c.ring = ring_label(inst.spec.p, inst.spec.n);
    c.condition_a_dim = hom_space(inst.K.reduced(1), inst.M).dim();
    c.condition_a = c.condition_a_dim == 1;
    c.alpha = opts.alpha ? evaluate_alpha(inst, *opts.alpha) : find_alpha(inst);
    c.rho_R = build_rho_R(inst, c.alpha.matrix, opts.threads);
    c.tangent_dim = h1_dim(inst.M.inflate(inst.sd.quotient));
    c.hom_invariants = hom_invariants_dim(inst.K, inst.M);
    c.tangent = c.tangent_dim == 1 && c.hom_invariants == 1;

    if (!c.condition_a)
        c.failed_stage = "condition_a";
    else if (!c.alpha.pass())
        c.failed_stage = "condition_b";
    else if (!c.rho_R->pass())
        c.failed_stage = "rho_R";
    else if (!c.tangent)
        c.failed_stage = "tangent";
    c.verdict = c.failed_stage.empty() ? Verdict::certified : Verdict::refuted;
    return c;
}

}  // namespace defring
