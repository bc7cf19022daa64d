#include <algorithm>

#include "defring/local_algebra.hpp"
#include "doctest.h"

using namespace defring;

namespace {

AlgElem drop_t2(const ArtinLocalAlgebra& R, const AlgElem& a) { return R.make({a.c[0], a.c[1]}); }

// Counts x in A for which t -> x defines a local ring map R -> A, by checking
// additivity and multiplicativity on every pair of elements of R.
std::size_t brute_force_hom_count(int n, const ArtinLocalAlgebra& A) {
    const int N = std::max(A.characteristic_exponent(), n + 1);
    auto R = make_ring_R(A.p(), n, N);
    const auto relems = R->elements();
    std::size_t count = 0;
    for (const auto& x : A.elements()) {
        if (!A.in_max_ideal(x)) continue;
        auto phi = [&](const AlgElem& u) { return A.add(A.from_int(u.c[0]), A.scale(u.c[1], x)); };
        bool ok = true;
        for (const auto& u : relems) {
            for (const auto& v : relems) {
                if (!(phi(R->mul(u, v)) == A.mul(phi(u), phi(v))) || !(phi(R->add(u, v)) == A.add(phi(u), phi(v)))) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        count += ok;
    }
    return count;
}

}  // namespace

TEST_CASE("make_ring_R relations") {
    auto R = make_ring_R(2, 1, 3);
    AlgElem one_t = R->make({1, 1});
    CHECK(R->pow(one_t, 2) == R->one());

    auto R2 = make_ring_R(2, 2, 4);
    AlgElem u = R2->make({1, 1});
    CHECK(R2->pow(u, 2) == R2->make({1, 2}));
    CHECK_FALSE(R2->pow(u, 2) == R2->one());
    CHECK(R2->pow(u, 4) == R2->one());

    CHECK(make_ring_R(3, 1, 2)->size() == 27);
    CHECK_THROWS_AS(make_ring_R(2, 2, 2), InvalidParameter);

    AlgElem t = R->basis(1);
    CHECK(R->mul(t, t) == R->zero());
    CHECK(R->scale(2, t) == R->zero());
    CHECK_FALSE(R->scale(2, R->one()) == R->zero());
}

TEST_CASE("make_ring_Rprime exponential identity for p = 3") {
    auto Rp = make_ring_Rprime(3, 1, 2);
    const std::int64_t half = 2;  // 1/2 in F_3
    auto expo = [&](std::int64_t a) { return Rp->make({1, a, a * a * half}); };
    for (std::int64_t a = 0; a < 3; ++a)
        for (std::int64_t b = 0; b < 3; ++b) {
            AlgElem prod = Rp->mul(expo(a), expo(b));
            CHECK(prod.c[1] == (a + b) % 3);
            CHECK(prod.c[2] == ((a + b) * (a + b) * half) % 3);
        }
    AlgElem t = Rp->basis(1), t2 = Rp->basis(2);
    CHECK(Rp->mul(t, t) == t2);
    CHECK(Rp->mul(t, t2) == Rp->zero());

    auto R22 = make_ring_Rprime(2, 2, 4);
    CHECK(R22->scale(2, R22->basis(2)) == R22->zero());
    CHECK(R22->scale(4, R22->basis(1)) == R22->zero());
    CHECK_FALSE(R22->scale(2, R22->basis(1)) == R22->zero());
}

TEST_CASE("make_ring_Rprime_2_1 rewriting") {
    for (int N : {2, 3}) {
        auto A1 = make_ring_Rprime_2_1(1, N);
        CHECK(A1->size() == (std::uint64_t{1} << (N + 2)));
        AlgElem u = A1->make({1, 1, 0});
        CHECK(A1->pow(u, 2) == A1->one());
        CHECK(A1->scale(2, A1->basis(1)) == A1->basis(2));  // 2t = -t^2 = t^2
        // oracle: enumerate every element and check 2t + t^2 = 0 and 2t^2 = 0 hold elementwise
        for (const auto& x : A1->elements()) {
            AlgElem tx = A1->mul(A1->basis(1), x);
            CHECK(A1->add(A1->scale(2, tx), A1->mul(A1->basis(2), x)) == A1->zero());
        }
        auto A0 = make_ring_Rprime_2_1(0, N);
        CHECK(A0->pow(A0->make({1, 1, 0}), 2) == A0->make({1, 0, 1}));
    }
}

TEST_CASE("quotient coherence of the small extensions") {
    struct Case {
        AlgebraPtr big, small;
    };
    for (const auto& [big, small] : {Case{make_ring_Rprime(3, 1, 3), make_ring_R(3, 1, 3)},
                                     Case{make_ring_Rprime(2, 2, 4), make_ring_R(2, 2, 4)},
                                     Case{make_ring_Rprime_2_1(1, 3), make_ring_R(2, 1, 3)},
                                     Case{make_ring_Rprime_2_1(0, 3), make_ring_R(2, 1, 3)}}) {
        const auto els = big->elements();
        for (std::size_t i = 0; i < els.size(); i += 3)
            for (std::size_t j = 0; j < els.size(); ++j) {
                const auto &a = els[i], &b = els[j];
                CHECK(drop_t2(*small, big->mul(a, b)) == small->mul(drop_t2(*small, a), drop_t2(*small, b)));
                CHECK(drop_t2(*small, big->add(a, b)) == small->add(drop_t2(*small, a), drop_t2(*small, b)));
            }
    }
}

TEST_CASE("standard rings") {
    auto eps = dual_numbers(2);
    CHECK(eps->size() == 4);
    CHECK(eps->max_ideal() == std::vector<AlgElem>{eps->zero(), eps->basis(1)});

    auto z4u = zp2_u(2);
    CHECK(z4u->size() == 8);
    CHECK(z4u->max_ideal() ==
          std::vector<AlgElem>{z4u->zero(), z4u->make({0, 1}), z4u->make({2, 0}), z4u->make({2, 1})});

    auto z8 = zmod_algebra(2, 3);
    CHECK(z8->max_ideal() == std::vector<AlgElem>{z8->from_int(0), z8->from_int(2), z8->from_int(4), z8->from_int(6)});
    CHECK(z8->nilpotency_index() == 3);
    CHECK(truncated_polynomial(2, 3)->nilpotency_index() == 3);
    CHECK(eps->nilpotency_index() == 2);

    CHECK(standard_ring("Z4u")->same_presentation(*z4u));
    CHECK(standard_ring("F2t3")->size() == 8);
    CHECK_THROWS_AS(standard_ring("Z6"), InvalidParameter);
    CHECK(standard_ring_names(2) == std::vector<std::string>{"F2eps", "Z4", "F2t3", "Z8", "Z4u"});
}

TEST_CASE("invalid presentations are rejected") {
    using C = ArtinLocalAlgebra::Coeffs;
    // e1^2 = 1 makes e1 a unit: not local
    std::vector<std::vector<C>> s{{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}};
    CHECK_THROWS_AS(ArtinLocalAlgebra(2, "bad", {"1", "e"}, {1, 1}, {{0, 0}, {0, 0}}, s), InvalidParameter);
    // non-commutative table
    std::vector<std::vector<C>> nc{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                                   {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}},
                                   {{0, 0, 1}, {0, 0, 1}, {0, 0, 0}}};
    CHECK_THROWS_AS(ArtinLocalAlgebra(2, "nc", {"1", "a", "b"}, {1, 1, 1}, std::vector<C>(3, C(3, 0)), nc),
                    InvalidParameter);
}

TEST_CASE("count_homs_from_R") {
    auto homs = count_homs_from_R(1, *dual_numbers(2));
    CHECK(homs.size() == 2);
    CHECK(count_homs_from_R(1, *zmod_algebra(2, 2)).size() == 2);
    auto z4u = zp2_u(2);
    CHECK(count_homs_from_R(1, *z4u) == z4u->max_ideal());
    for (const auto& name : standard_ring_names(2)) {
        auto A = standard_ring(name);
        CHECK(count_homs_from_R(1, *A).size() == brute_force_hom_count(1, *A));
    }
    for (const auto& name : standard_ring_names(3)) {
        auto A = standard_ring(name);
        if (A->size() > 64) continue;
        CHECK(count_homs_from_R(1, *A).size() == brute_force_hom_count(1, *A));
        CHECK(count_homs_from_R(2, *A).size() == brute_force_hom_count(2, *A));
    }
}

TEST_CASE("gl_ops over R") {
    auto R = make_ring_R(2, 2, 4);
    Zmod z4(2, 2);
    ResidueMatrix A(z4, {{1, 2}, {3, 1}}), B(z4, {{0, 1}, {1, 3}});
    auto one_plus_t = [&](const ResidueMatrix& X) {
        AlgMatrix m = AlgMatrix::identity(R, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) m(i, j) = R->add(m(i, j), R->make({0, X(i, j)}));
        return m;
    };
    AlgMatrix u = one_plus_t(A);
    CHECK(u.inverse() == one_plus_t(A.scaled(-1)));
    CHECK(u * one_plus_t(B) == one_plus_t(A + B));
    CHECK(u.pow(4).is_identity());
    CHECK_FALSE(u.pow(2).is_identity());
    CHECK(u.order() == 4);

    AlgMatrix g = AlgMatrix::from_integers(R, ResidueMatrix(Zmod(2, 4), {{1, 1}, {1, 2}}));
    CHECK((g * g.inverse()).is_identity());
    AlgMatrix sing = AlgMatrix::from_integers(R, ResidueMatrix(Zmod(2, 4), {{2, 0}, {0, 1}}));
    CHECK_THROWS_AS(sing.inverse(), NotAUnit);

    CHECK(kernel_of_reduction(zmod_algebra(2, 2), 2).size() == 16);
    for (const auto& k : kernel_of_reduction(dual_numbers(3), 2)) CHECK(k.residue().is_identity());
}

TEST_CASE("element tables agree with algebra arithmetic") {
    auto A = make_ring_Rprime_2_1(1, 2);
    ElementTable T(*A);
    const auto els = A->elements();
    for (std::size_t a = 0; a < els.size(); ++a)
        for (std::size_t b = 0; b < els.size(); ++b) {
            CHECK(els[T.mul(static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b))] == A->mul(els[a], els[b]));
            CHECK(els[T.add(static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b))] == A->add(els[a], els[b]));
        }
    CHECK(els[T.one()] == A->one());
}
