#include <random>
#include <set>

#include "defring/fp_linalg.hpp"
#include "defring/galois_ring.hpp"
#include "defring/howell.hpp"
#include "doctest.h"

using namespace defring;

namespace {

// Every element of the row span, by brute force over all coefficient vectors.
std::set<Vec> brute_span(const ResidueMatrix& m) {
    const Zmod& R = m.ring();
    std::set<Vec> out;
    std::vector<std::int64_t> coef(m.rows(), 0);
    while (true) {
        Vec v(m.cols(), 0);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) v[j] = R.add(v[j], R.mul(coef[i], m(i, j)));
        out.insert(v);
        std::size_t k = 0;
        while (k < coef.size() && ++coef[k] == R.q) coef[k++] = 0;
        if (k == coef.size()) break;
    }
    return out;
}

ResidueMatrix random_unimodular_mix(const ResidueMatrix& m, std::mt19937& rng) {
    const Zmod& R = m.ring();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) rows.emplace_back(m.row(i).begin(), m.row(i).end());
    std::uniform_int_distribution<std::int64_t> coef(0, R.q - 1);
    std::uniform_int_distribution<std::size_t> pick(0, rows.size() - 1);
    for (int step = 0; step < 20; ++step) {
        std::size_t a = pick(rng), b = pick(rng);
        if (a == b) continue;
        std::int64_t c = coef(rng);
        for (std::size_t j = 0; j < m.cols(); ++j) rows[a][j] = R.add(rows[a][j], R.mul(c, rows[b][j]));
        std::swap(rows[a], rows[b]);
    }
    rows.push_back(Vec(m.cols(), 0));  // a redundant zero row changes nothing
    std::vector<std::int64_t> flat;
    for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return ResidueMatrix(R, rows.size(), m.cols(), flat);
}

}  // namespace

TEST_CASE("residue arithmetic near the 2^62 budget") {
    Zmod big(2, 61);
    std::int64_t a = big.q - 1;
    CHECK(big.mul(a, a) == 1);
    CHECK(big.inv(3) * 3 % big.q == 1);
    CHECK_THROWS_AS(Zmod(2, 63), InvalidParameter);
    CHECK_THROWS_AS(big.inv(2), NotAUnit);
    Zmod z9(3, 2);
    ResidueInt x(z9, -1);
    CHECK(x.value() == 8);
    CHECK((x * x).value() == 1);
    CHECK(ResidueInt(z9, 3).valuation() == 1);
}

TEST_CASE("matrix inverse over Z/p^N") {
    Zmod z8(2, 3);
    ResidueMatrix a(z8, {{1, 2}, {3, 3}});
    CHECK((a * a.inverse()).is_identity());
    ResidueMatrix s(z8, {{2, 0}, {0, 1}});
    CHECK_THROWS_AS(s.inverse(), NotAUnit);
}

TEST_CASE("howell_form examples") {
    Zmod z4(2, 2);
    auto h = howell_form(ResidueMatrix(z4, {{2}}));
    REQUIRE(h.size() == 1);
    CHECK(h.generator(0) == Vec{2});
    CHECK(h.invariant_factors() == std::vector<std::int64_t>{2});

    Zmod z9(3, 2);
    auto id = howell_form(ResidueMatrix::identity(z9, 2));
    CHECK(id.size() == 2);
    CHECK(id.invariant_factors() == std::vector<std::int64_t>{9, 9});

    ResidueMatrix m(z4, {{2, 0}, {0, 1}});
    auto hb = howell_form(m);
    CHECK(hb.invariant_factors() == std::vector<std::int64_t>{4, 2});
    std::set<Vec> gens(hb.generators().begin(), hb.generators().end());
    CHECK(gens == std::set<Vec>{{0, 1}, {2, 0}});
    auto span = brute_span(m);
    CHECK(span.size() == 8);
    CHECK(hb.log_order() == 3);
    for (std::int64_t a = 0; a < 4; ++a)
        for (std::int64_t b = 0; b < 4; ++b) CHECK(hb.contains({a, b}) == (span.count({a, b}) > 0));

    CHECK(howell_form(ResidueMatrix(z4, 0, 3)).empty());
}

TEST_CASE("howell_form is canonical under row operations") {
    std::mt19937 rng(7);
    for (auto [p, N] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{5, 1}}) {
        Zmod R(p, N);
        std::uniform_int_distribution<std::int64_t> e(0, R.q - 1);
        for (int trial = 0; trial < 25; ++trial) {
            ResidueMatrix m(R, 3, 4);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 4; ++j) m.set(i, j, p * e(rng) * (j % 2) + e(rng) * (trial % 3 == 0 ? 0 : 1));
            auto h1 = howell_form(m);
            auto h2 = howell_form(random_unimodular_mix(m, rng));
            CHECK(h1 == h2);
            if (R.q <= 8) {
                auto span = brute_span(m);
                CHECK(span.size() == static_cast<std::size_t>(ipow(p, h1.log_order())));
                for (const auto& v : span) CHECK(h1.contains(v));
            }
        }
    }
}

TEST_CASE("solve_module examples") {
    Zmod z4(2, 2);
    auto s = solve_module(ResidueMatrix(z4, {{2}}), {0});
    REQUIRE(s);
    CHECK(s->particular == Vec{0});
    CHECK(s->kernel.generators() == std::vector<Vec>{{2}});

    CHECK_FALSE(solve_module(ResidueMatrix(z4, {{2}}), {1}));

    ResidueMatrix a(z4, {{1, 1}, {1, 3}});
    auto t = solve_module(a, {0, 2});
    REQUIRE(t);
    CHECK(t->particular == Vec{1, 3});
    CHECK(t->kernel.generators() == std::vector<Vec>{{2, 2}});
    // exhaustive oracle over (Z/4)^2
    std::set<Vec> sols;
    for (std::int64_t x = 0; x < 4; ++x)
        for (std::int64_t y = 0; y < 4; ++y)
            if ((x + y) % 4 == 0 && ((x - y) % 4 + 4) % 4 == 2) sols.insert({x, y});
    CHECK(sols == std::set<Vec>{{1, 3}, {3, 1}});
}

TEST_CASE("solve_module: particular plus kernel always solves") {
    std::mt19937 rng(11);
    Zmod R(3, 2);
    std::uniform_int_distribution<std::int64_t> e(0, R.q - 1);
    for (int trial = 0; trial < 40; ++trial) {
        ResidueMatrix m(R, 3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m.set(i, j, (trial % 2 ? 3 : 1) * e(rng));
        Vec x0{e(rng), e(rng), e(rng)};
        Vec rhs = m.apply(x0);
        auto s = solve_module(m, rhs);
        REQUIRE(s);
        CHECK(m.apply(s->particular) == rhs);
        for (const auto& k : s->kernel.generators()) {
            Vec y = s->particular;
            const std::int64_t c = e(rng);
            for (std::size_t j = 0; j < 3; ++j) y[j] = R.add(y[j], R.mul(c, k[j]));
            CHECK(m.apply(y) == rhs);
        }
        CHECK(s->kernel.contains(Vec{R.sub(x0[0], s->particular[0]), R.sub(x0[1], s->particular[1]),
                                     R.sub(x0[2], s->particular[2])}));
    }
}

TEST_CASE("FpEliminator rank") {
    FpEliminator e(5, 3);
    CHECK(e.insert(std::vector<std::int64_t>{1, 2, 3}));
    CHECK_FALSE(e.insert(std::vector<std::int64_t>{2, 4, 6}));
    CHECK(e.insert(std::vector<std::int64_t>{0, 1, 1}));
    CHECK(e.rank() == 2);
    CHECK(e.contains(std::vector<std::int64_t>{1, 3, 4}));
    CHECK_FALSE(e.contains(std::vector<std::int64_t>{0, 0, 1}));
}

TEST_CASE("gr_frobenius in GR(4,2)") {
    GaloisRing gr(2, 2);
    CHECK(gr.frobenius(gr.x()) == gr.make(3, 3));
    CHECK(gr.frobenius(gr.one()) == gr.one());
    // oracle: the roots of m in GR(4,2) by exhaustive search
    std::vector<GrElem> roots;
    for (std::uint64_t i = 0; i < gr.size(); ++i) {
        GrElem r = gr.element(i);
        GrElem v = gr.add(gr.add(gr.mul(r, r), r), gr.one());
        if (v == GrElem{0, 0}) roots.push_back(r);
    }
    CHECK(roots.size() == 2);
    CHECK(std::find(roots.begin(), roots.end(), gr.make(3, 3)) != roots.end());
}

TEST_CASE("gr_frobenius is an involutive ring automorphism") {
    for (auto [p, N] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{5, 1}, std::pair{2, 3}}) {
        GaloisRing gr(p, N);
        for (std::uint64_t i = 0; i < gr.size(); ++i) {
            GrElem a = gr.element(i);
            CHECK(gr.frobenius(gr.frobenius(a)) == a);
            for (std::uint64_t j = 0; j < gr.size(); j += 3) {
                GrElem b = gr.element(j);
                CHECK(gr.frobenius(gr.mul(a, b)) == gr.mul(gr.frobenius(a), gr.frobenius(b)));
                CHECK(gr.frobenius(gr.add(a, b)) == gr.add(gr.frobenius(a), gr.frobenius(b)));
            }
            // reduces to the p-th power mod p
            GaloisRing res(p, 1);
            GrElem ar = res.make(a.c0, a.c1);
            GrElem fr = gr.frobenius(a);
            CHECK(res.make(fr.c0, fr.c1) == res.pow(ar, static_cast<std::uint64_t>(p)));
        }
    }
}

TEST_CASE("teichmuller lifts") {
    GaloisRing gr(2, 2);
    CHECK(gr.teichmuller(gr.x()) == gr.x());
    CHECK(gr.pow(gr.x(), 3) == gr.one());
    CHECK(gr.teichmuller(gr.one()) == gr.one());
    CHECK(gr.teichmuller(gr.make(1, 2)) == gr.one());
    CHECK_THROWS_AS(gr.teichmuller(gr.make(2, 0)), NotAUnit);
    for (int N : {2, 3}) {
        GaloisRing g(2, N);
        for (std::uint64_t i = 0; i < g.size(); ++i) {
            GrElem u = g.element(i);
            if (!g.is_unit(u)) continue;
            GrElem t = g.teichmuller(u);
            CHECK(g.pow(t, 3) == g.one());
            GaloisRing res(2, 1);
            CHECK(res.make(t.c0, t.c1) == res.make(u.c0, u.c1));
        }
    }
    GaloisRing g9(3, 2);
    GrElem z = g9.generator();
    CHECK(g9.multiplicative_order(z) == 8);
    CHECK(g9.frobenius(z) == g9.pow(z, 3));
}

TEST_CASE("regular_matrix over F_4 and multiplicativity") {
    GaloisRing f4(2, 1);
    CHECK(f4.regular_matrix(f4.x()) == ResidueMatrix(f4.base(), {{0, 1}, {1, 1}}));
    CHECK(f4.frobenius_matrix() == ResidueMatrix(f4.base(), {{1, 1}, {0, 1}}));
    CHECK(f4.regular_matrix(f4.one()).is_identity());
    for (auto [p, N] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{7, 1}}) {
        GaloisRing gr(p, N);
        ResidueMatrix F = gr.frobenius_matrix();
        for (std::uint64_t i = 0; i < gr.size(); i += 2)
            for (std::uint64_t j = 0; j < gr.size(); j += 5) {
                GrElem a = gr.element(i), b = gr.element(j);
                CHECK(gr.regular_matrix(a) * gr.regular_matrix(b) == gr.regular_matrix(gr.mul(a, b)));
            }
        for (std::uint64_t i = 0; i < gr.size(); ++i) {
            GrElem a = gr.element(i);
            CHECK(F * gr.regular_matrix(a) == gr.regular_matrix(gr.frobenius(a)) * F);
        }
    }
}

TEST_CASE("modulus choice per prime") {
    CHECK(GaloisRing(2, 1).modulus() == std::array<std::int64_t, 2>{1, 1});
    CHECK(GaloisRing(3, 1).modulus() == std::array<std::int64_t, 2>{1, 0});
    CHECK(GaloisRing(5, 1).modulus() == std::array<std::int64_t, 2>{3, 0});  // x^2 - 2
    CHECK(GaloisRing(13, 1).modulus() == std::array<std::int64_t, 2>{11, 0});  // x^2 - 2
}
