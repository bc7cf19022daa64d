#include "defring/modrep.hpp"
#include "doctest.h"

using namespace defring;

namespace {

// Brute-force search for C in 1 + p M_d(Z/p^N) with C A(s) C^{-1} = B(s) on
// every generator.
bool strictly_equivalent(const std::vector<ResidueMatrix>& A, const std::vector<ResidueMatrix>& B) {
    const Zmod R = A[0].ring();
    const std::size_t d = A[0].rows(), dd = d * d;
    const std::int64_t step = R.q / R.p;  // choices per entry of p X mod p^N
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < dd; ++i) total *= static_cast<std::uint64_t>(step);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        ResidueMatrix C = ResidueMatrix::identity(R, d);
        std::uint64_t r = idx;
        for (std::size_t e = 0; e < dd; ++e, r /= static_cast<std::uint64_t>(step))
            C.set(e / d, e % d, C(e / d, e % d) + R.p * static_cast<std::int64_t>(r % static_cast<std::uint64_t>(step)));
        bool ok = true;
        for (std::size_t s = 0; s < A.size() && ok; ++s) ok = C * A[s] == B[s] * C;
        if (ok) return true;
    }
    return false;
}

bool has_invariant_line(const Representation& V) {
    const Zmod F = V.ring();
    const std::size_t d = V.rank();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= static_cast<std::uint64_t>(F.q);
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        Vec v = V.element(idx);
        bool stable = true;
        for (Elem s : V.group()->generators()) {
            Vec w = V(s).apply(v);
            bool prop = false;
            for (std::int64_t c = 1; c < F.p && !prop; ++c) {
                bool eq = true;
                for (std::size_t i = 0; i < d; ++i) eq = eq && w[i] == F.mul(c, v[i]);
                prop = eq;
            }
            stable = stable && prop;
        }
        if (stable) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("standard permutation modules") {
    auto S3 = symmetric_group(3);
    auto S = standard_perm_rep(S3, Zmod(5, 1));
    CHECK(S.V.rank() == 2);
    CHECK(S.V(S3->generators()[0]) == ResidueMatrix(Zmod(5, 1), {{4, 1}, {0, 1}}));
    for (Elem g = 0; g < S3->order(); ++g) CHECK(S.T(g).is_identity());
    CHECK_THROWS_AS(standard_perm_rep(S3, Zmod(3, 1)), InvalidParameter);

    auto V2 = standard_perm_rep(pgl2(2), Zmod(2, 1)).V;
    CHECK_FALSE(has_invariant_line(V2));
    CHECK(hom_space(V2, V2).dim() == 1);
}

TEST_CASE("galois module representation") {
    auto V = galois_module_rep(2, 1);
    const auto& G = V.group();
    CHECK(V(G->generators()[0]) == ResidueMatrix(Zmod(2, 1), {{0, 1}, {1, 1}}));
    CHECK(V(G->generators()[1]) == ResidueMatrix(Zmod(2, 1), {{1, 1}, {0, 1}}));
    auto V3 = galois_module_rep(2, 3);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(V3(V3.group()->generators()[i]).reduced(1) == V(G->generators()[i]));
    for (std::int64_t p : {2, 3, 5}) {
        auto Vp = galois_module_rep(p, 1);
        CHECK(hom_space(Vp, Vp).dim() == 1);
        // sigma and zeta sigma do not commute
        const auto& Gp = Vp.group();
        Elem s = Gp->generators()[1], zs = Gp->mul(Gp->generators()[0], s);
        CHECK_FALSE(Vp(s) * Vp(zs) == Vp(zs) * Vp(s));
        auto Vw = galois_module_rep(p, 3);
        CHECK_FALSE(Vw.first_defect_all_pairs().has_value());
    }
}

TEST_CASE("endomorphism modules") {
    auto X = x_matrices(2, Zmod(5, 1));
    CHECK(X.D[0] == ResidueMatrix(Zmod(5, 1), {{1, -1, 0}, {-1, 1, 0}, {0, 0, 0}}));
    for (std::int64_t p : {2, 3, 5}) {
        auto M = end_rep(galois_module_rep(p, 1));
        CHECK(M.rank() == 4);
        auto dec = twisted_decomposition(p);
        CHECK(dec.complement_is_regular_G0);
        CHECK(dec.v_prime.size() == 2);
    }
    auto V = difference_rep(symmetric_group(4), Zmod(7, 1));
    auto M = end_rep(V);
    CHECK(M.rank() == 9);
    auto dual = dual_rep(V);
    auto VV = tensor_rep(V, dual);
    // End(V) = V (x) V* with matching coordinates
    for (Elem g = 0; g < V.group()->order(); ++g) CHECK(VV(g) == M(g));
}

TEST_CASE("twisted hom spaces") {
    SUBCASE("p = 2, n = 1") {
        auto T = twisted_modules(2, 1, 3);
        auto M = end_rep(T.V_W.reduced(1));
        auto H = hom_space(T.K, M);
        CHECK(H.dim() == 1);
        CHECK(H.invariant_factors == std::vector<std::int64_t>{2});
    }
    SUBCASE("p = 2, n = 2") {
        auto T = twisted_modules(2, 2, 4);
        auto M = end_rep(T.V_W.reduced(2));
        auto H = hom_space(T.K, M);
        CHECK(H.invariant_factors == std::vector<std::int64_t>{4});
        // the explicit alpha is equivariant
        ResidueMatrix a = T.alpha;
        for (Elem g = 0; g < T.G->order(); ++g) CHECK(M(g) * a == a * T.K(g));
    }
    SUBCASE("p = 3, n = 2") {
        auto T = twisted_modules(3, 2, 3);
        auto H = hom_space(T.K, end_rep(T.V_W.reduced(2)));
        CHECK(H.invariant_factors == std::vector<std::int64_t>{9});
    }
}

TEST_CASE("Higman criterion") {
    auto V = galois_module_rep(2, 1);
    auto h = is_projective_higman(V);
    REQUIRE(h.projective);
    ResidueMatrix sum(Zmod(2, 1), 2, 2);
    for (Elem g = 0; g < V.group()->order(); ++g) sum = sum + V(g) * *h.witness * V(V.group()->inv(g));
    CHECK(sum.is_identity());

    auto S3 = symmetric_group(3);
    auto triv = PModule::trivial(S3, Zmod(2, 1), 1);
    CHECK_FALSE(is_projective_higman(triv).projective);
    auto sylow = subgroup(S3, {S3->generators()[0]}, "C2");
    CHECK_FALSE(is_projective_higman(triv.restrict_to(sylow.group, sylow.embedding)).projective);
    auto sylow_reg = PModule(sylow.group, Zmod(2, 1), {ResidueMatrix(Zmod(2, 1), {{0, 1}, {1, 0}})});
    CHECK(is_projective_higman(sylow_reg).projective);

    // Maschke: |G|^{-1} id is a witness when p does not divide |G|
    auto W = difference_rep(S3, Zmod(5, 1));
    CHECK(is_projective_higman(W).projective);
    ResidueMatrix f = ResidueMatrix::identity(Zmod(5, 1), 2).scaled(Zmod(5, 1).inv(6));
    ResidueMatrix tr(Zmod(5, 1), 2, 2);
    for (Elem g = 0; g < S3->order(); ++g) tr = tr + W(g) * f * W(S3->inv(g));
    CHECK(tr.is_identity());
}

TEST_CASE("Hensel lifting") {
    SUBCASE("twisted p = 2 to precision 3") {
        auto V = galois_module_rep(2, 1);
        auto L = hensel_lift_rep(V, 3);
        CHECK(L.ring() == Zmod(2, 3));
        CHECK_FALSE(L.first_defect_all_pairs().has_value());
        CHECK(strictly_equivalent(L.generator_images(), galois_module_rep(2, 3).generator_images()));
        for (int level = 1; level <= 3; ++level) {
            auto Ll = L.reduced(level);
            CHECK_FALSE(Ll.first_defect_all_pairs().has_value());
        }
    }
    SUBCASE("standard d = 2, p = 5 to precision 2") {
        auto S3 = symmetric_group(3);
        auto V = difference_rep(S3, Zmod(5, 1));
        auto L = hensel_lift_rep(V, 2);
        CHECK_FALSE(L.first_defect_all_pairs().has_value());
        for (Elem g = 0; g < 6; ++g) CHECK(L(g).reduced(1) == V(g));
        CHECK(strictly_equivalent(L.generator_images(), difference_rep(S3, Zmod(5, 2)).generator_images()));
    }
    SUBCASE("precision one is the identity") {
        auto V = galois_module_rep(3, 1);
        CHECK(hensel_lift_rep(V, 1).matrices() == V.matrices());
    }
    SUBCASE("trivial module lifts") {
        auto S3 = symmetric_group(3);
        auto L = hensel_lift_rep(PModule::trivial(S3, Zmod(2, 1), 1), 3);
        CHECK_FALSE(L.first_defect_all_pairs().has_value());
    }
}

TEST_CASE("x matrices") {
    const Zmod F5(5, 1);
    auto X = x_matrices(2, F5);
    CHECK(X.x[0] == ResidueMatrix(F5, {{1, 0, -1}, {0, -1, 1}, {-1, 1, 0}}));
    CHECK(X.x[1] == ResidueMatrix(F5, {{0, -1, 1}, {-1, 1, 0}, {1, 0, -1}}));
    CHECK(X.x[0] == X.D[0] + X.D[1] + X.D[2]);
    CHECK_THROWS_AS(x_matrices(4, Zmod(5, 1)), InvalidParameter);
    CHECK(standard_admissible(3, 3));
    CHECK(standard_admissible(3, 7));
    CHECK_FALSE(standard_admissible(4, 5));
    CHECK(standard_admissible(4, 2));
    CHECK_FALSE(standard_admissible(3, 2));
}

TEST_CASE("multiplicity identity on standard instances") {
    for (auto [d, p] : std::vector<std::pair<int, std::int64_t>>{{2, 2}, {2, 5}, {3, 3}, {4, 2}, {2, 7}, {3, 7}}) {
        CAPTURE(d);
        CAPTURE(p);
        auto G = standard_group(d, p);
        const Zmod F(p, 1);
        auto V = difference_rep(G, F);
        auto M = end_rep(V);
        auto H = hom_space(V, M);
        CHECK(H.dim() == 1);
        CHECK(orbit_count_triples(*G) == 5);
        CHECK(H.dim() == orbit_count_triples(*G) - 4);
        auto X = x_matrices(d, F);
        CHECK_FALSE(X.x[0] * X.x[1] == X.x[1] * X.x[0]);
        // b_j - b_{j+1} -> x_j (restricted to V) spans the hom space
        ResidueMatrix alpha(F, static_cast<std::size_t>(d * d), static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            Vec v = vec(restrict_to_V(X.x[j]));
            for (int r = 0; r < d * d; ++r) alpha.set(r, j, v[r]);
        }
        for (Elem g = 0; g < G->order(); ++g) CHECK(M(g) * alpha == alpha * V(g));
        CHECK_FALSE(alpha.is_zero());
    }
}
