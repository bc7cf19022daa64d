#pragma once

/**
 * @file report.hpp
 * @brief JSON forms of certificates and oracle reports, and re-verification
 * of a certificate from its embedded data.
 *
 * Keys are sorted and no timing is included unless requested, so identical
 * inputs give byte-identical output.
 */

#include <optional>
#include <string>
#include <vector>

#include "defring/oracle.hpp"
#include "json.hpp"

namespace defring {

using Json = nlohmann::json;

Json to_json(const ResidueMatrix& m);
Json to_json(const ArtinLocalAlgebra& A, const AlgMatrix& m);
Json instance_json(const Instance& inst);
Json certificate_json(const Instance& inst, const Certificate& c);
Json functor_json(const FunctorReport& r, std::optional<double> runtime_ms = std::nullopt);

struct VerifyResult {
    bool ok = false;
    std::vector<std::string> problems;
};
/// Rebuilds the instance named in the certificate and re-checks the embedded
/// alpha, the embedded generator images of rho_R and the recorded dimensions
/// and verdict. Throws InvalidParameter on malformed input.
VerifyResult verify_certificate(const Json& cert, unsigned threads = 0);

}  // namespace defring
