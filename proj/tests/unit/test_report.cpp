#include "defring/report.hpp"
#include "doctest.h"

using namespace defring;

namespace {

Json certify_json(const std::string& name, unsigned threads = 1) {
    auto I = build_instance(parse_instance(name));
    return certificate_json(I, certify_instance(I, {threads, {}}));
}

}  // namespace

TEST_CASE("certificates re-verify") {
    for (std::string name : {"twisted-p2n1", "standard-d2p2", "twisted-p3n1", "twisted-p2n1-kscalar"}) {
        CAPTURE(name);
        auto j = certify_json(name);
        auto r = verify_certificate(Json::parse(j.dump()));
        CHECK(r.ok);
        CHECK(r.problems.empty());
    }
    auto j = certify_json("twisted-p2n1");
    CHECK(j["verdict"] == "certified");
    CHECK(j["condition_a"]["dim"] == 1);
    CHECK(j["rho_R"]["faithful"] == true);
    CHECK(j["ring"] == "ℤ₂[[t]]/(2t, t²)");
    CHECK(j["condition_b"]["clause_p2n1"]["pass"] == true);
}

TEST_CASE("tampered certificates are rejected") {
    auto j = certify_json("twisted-p3n1");
    SUBCASE("verdict") {
        j["verdict"] = "refuted";
        CHECK_FALSE(verify_certificate(j).ok);
    }
    SUBCASE("generator image") {
        auto& e = j["rho_R"]["generators"][0]["matrix"][0][1];
        e[1] = (e[1].get<int>() + 1) % 3;
        CHECK_FALSE(verify_certificate(j).ok);
    }
    SUBCASE("alpha replaced by a unit multiple without updating rho_R") {
        auto& a = j["condition_b"]["alpha"];
        for (auto& row : a)
            for (auto& x : row) x = (x.get<int>() * 2) % 3;
        auto r = verify_certificate(j);
        CHECK_FALSE(r.ok);
        // only the two kernel generators of Gamma see alpha
        CHECK(r.problems.size() == 2);
        for (const auto& msg : r.problems) CHECK(msg.find("rho_R image") != std::string::npos);
    }
    SUBCASE("dimension") {
        j["tangent_dim"] = 2;
        CHECK_FALSE(verify_certificate(j).ok);
    }
    SUBCASE("malformed") {
        j.erase("instance");
        CHECK_THROWS_AS(verify_certificate(j), InvalidParameter);
    }
}

TEST_CASE("output does not depend on the thread count") {
    CHECK(certify_json("twisted-p2n2", 1).dump() == certify_json("twisted-p2n2", 3).dump());
    auto I = build_instance(parse_instance("twisted-p2n1"));
    auto c = certify_instance(I);
    auto a = functor_json(functor_compare(I, *c.rho_R, standard_ring("Z4u"), 1));
    auto b = functor_json(functor_compare(I, *c.rho_R, standard_ring("Z4u"), 4));
    CHECK(a.dump() == b.dump());
    CHECK(a["runtime_ms"].is_null());
}
