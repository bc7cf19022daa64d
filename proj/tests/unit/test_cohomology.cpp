#include "defring/cohomology.hpp"
#include "defring/modrep.hpp"
#include "doctest.h"

using namespace defring;

namespace {

GroupPtr cyclic(std::size_t m) {
    std::vector<std::uint16_t> t(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) t[a * m + b] = static_cast<std::uint16_t>((a + b) % m);
    return std::make_shared<FiniteGroup>("C" + std::to_string(m), m, std::move(t), std::vector<Elem>{m > 1 ? 1u : 0u});
}

GroupPtr alternating4() {
    auto S4 = symmetric_group(4);
    auto c3 = *S4->find_permutation({1, 2, 0, 3}), dbl = *S4->find_permutation({1, 0, 3, 2});
    return subgroup(S4, {c3, dbl}, "A4").group;
}

}  // namespace

TEST_CASE("h1 basics") {
    CHECK(h1_dim(PModule::trivial(cyclic(1), Zmod(2, 1), 3)) == 0);
    for (std::int64_t p : {2, 3, 5}) CHECK(h1_dim(PModule::trivial(cyclic(static_cast<std::size_t>(p)), Zmod(p, 1), 1)) == 1);
    CHECK(h1_dim(PModule::trivial(elementary_abelian_rank2(3), Zmod(3, 1), 1)) == 2);
    CHECK(h1_dim(PModule::trivial(cyclic(4), Zmod(3, 1), 1)) == 0);
}

TEST_CASE("h1 and h2 agree with the bar complex") {
    std::vector<PModule> cases{
        PModule::trivial(symmetric_group(3), Zmod(2, 1), 1),
        PModule::trivial(symmetric_group(3), Zmod(3, 1), 1),
        PModule::trivial(cyclic(4), Zmod(2, 1), 1),
        PModule::trivial(elementary_abelian_rank2(2), Zmod(2, 1), 1),
        PModule::trivial(elementary_abelian_rank2(3), Zmod(3, 1), 1),
        end_rep(galois_module_rep(2, 1)),
        difference_rep(symmetric_group(3), Zmod(3, 1)),
        difference_rep(symmetric_group(4), Zmod(2, 1)),
        PModule::trivial(alternating4(), Zmod(2, 1), 1),
    };
    for (const auto& M : cases) {
        CAPTURE(M.group()->name());
        CAPTURE(M.rank());
        BarComplex B(M);
        CHECK(h1_dim(M) == B.cohomology_dim(1));
        CHECK(h2_dim(M) == B.cohomology_dim(2));
    }
}

TEST_CASE("known cohomology dimensions") {
    // H^n(C_m, F_p) = F_p when p | m
    CHECK(h2_dim(PModule::trivial(cyclic(4), Zmod(2, 1), 1)) == 1);
    CHECK(h2_dim(PModule::trivial(cyclic(9), Zmod(3, 1), 1)) == 1);
    CHECK(h2_dim(PModule::trivial(elementary_abelian_rank2(3), Zmod(3, 1), 1)) == 3);
    CHECK(h2_dim(PModule::trivial(elementary_abelian_rank2(2), Zmod(2, 1), 1)) == 3);
    CHECK(h2_dim(PModule::trivial(cyclic(1), Zmod(5, 1), 2)) == 0);
    CHECK(h2_dim(PModule::trivial(alternating4(), Zmod(2, 1), 1)) == 1);
    CHECK(h2_dim(end_rep(galois_module_rep(2, 1))) == 0);
}

TEST_CASE("bar complex squares to zero") {
    auto M = difference_rep(symmetric_group(3), Zmod(2, 1));
    BarComplex B(M);
    std::uint64_t state = 12345;
    auto rnd = [&] {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<std::int64_t>((state >> 40) % 2);
    };
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::int64_t> c0(B.cochain_dim(0)), c1(B.cochain_dim(1));
        for (auto& x : c0) x = rnd();
        for (auto& x : c1) x = rnd();
        auto dd0 = B.coboundary(1, B.coboundary(0, c0));
        auto dd1 = B.coboundary(2, B.coboundary(1, c1));
        CHECK(std::all_of(dd0.begin(), dd0.end(), [](auto x) { return x == 0; }));
        CHECK(std::all_of(dd1.begin(), dd1.end(), [](auto x) { return x == 0; }));
        CHECK(B.is_cocycle(B.coboundary(1, c1)));
        CHECK(B.is_coboundary(B.coboundary(1, c1)));
    }
}

TEST_CASE("hom invariants") {
    auto G = symmetric_group(3);
    auto K = PModule::trivial(G, Zmod(3, 2), 2);
    auto M = PModule::trivial(G, Zmod(3, 1), 1);
    CHECK(hom_invariants_dim(K, M) == 2);
}

TEST_CASE("wedge cocycle") {
    auto T = twisted_modules(3, 1, 2);
    const Elem z = T.G->generators()[0], s = T.G->generators()[1];
    auto r3 = wedge_cocycle(3, {T.K(z)});
    CHECK(r3.alternating);
    CHECK(r3.cocycle);
    CHECK_FALSE(r3.coboundary);
    CHECK(r3.invariant == true);
    CHECK(r3.determinant_one == true);
    CHECK_FALSE(r3.inconclusive);
    auto r3s = wedge_cocycle(3, {T.K(s)});
    CHECK(r3s.invariant == false);

    auto r2 = wedge_cocycle(2);
    CHECK(r2.inconclusive);
    CHECK(r2.cocycle);
    CHECK(r2.coboundary);
    CHECK_FALSE(r2.invariant.has_value());

    auto r5 = wedge_cocycle(5);
    CHECK(r5.cocycle);
    CHECK_FALSE(r5.coboundary);
}

TEST_CASE("H2 of the index-two subgroup for p = 3") {
    auto T = twisted_modules(3, 1, 2);
    auto sd = semidirect_product(T.K, "Gamma");
    auto G0 = subgroup(sd.gamma, {sd.section(T.G->generators()[0]), sd.kernel[1], sd.kernel[3]}, "Gamma0");
    CHECK(G0.group->order() == 72);
    // H^2(K, F_3)^{zeta}: the Bockstein part has no invariants, the wedge part does
    CHECK(h2_dim(PModule::trivial(G0.group, Zmod(3, 1), 1)) == 1);
}

TEST_CASE("projective coefficients are acyclic") {
    for (std::int64_t p : {2, 3, 5}) {
        auto V = galois_module_rep(p, 1);
        auto M = end_rep(V);
        CHECK(is_projective_higman(M).projective);
        CHECK(h1_dim(M) == 0);
        CHECK(h2_dim(M) == 0);
        CHECK(h1_dim(V) == 0);
    }
    auto V3 = difference_rep(pgl2(3), Zmod(3, 1));
    CHECK(is_projective_higman(V3).projective);
    CHECK(h1_dim(end_rep(V3)) == 0);
    CHECK(h2_dim(end_rep(V3)) == 0);
}
