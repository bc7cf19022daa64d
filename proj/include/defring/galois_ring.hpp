#pragma once

/**
 * @file galois_ring.hpp
 * @brief The Galois ring GR(p^N, 2) = (Z/p^N)[x]/(m(x)).
 *
 * m(x) = x^2 + m1 x + m0 is fixed per prime: x^2+x+1 for p = 2, x^2+1 for
 * p = 3 mod 4, x^2-c for p = 1 mod 4 with c the smallest non-residue. The
 * coefficients are used verbatim at every precision, so reductions between
 * precisions commute with all operations.
 */

#include <array>
#include <string>

#include "defring/residue.hpp"

namespace defring {

struct GrElem {
    std::int64_t c0 = 0;  ///< coefficient of 1
    std::int64_t c1 = 0;  ///< coefficient of x
    bool operator==(const GrElem&) const = default;
};

class GaloisRing {
public:
    GaloisRing(std::int64_t p, int N);

    const Zmod& base() const { return R_; }
    std::int64_t p() const { return R_.p; }
    int precision() const { return R_.N; }
    /// (m0, m1) with m(x) = x^2 + m1 x + m0.
    std::array<std::int64_t, 2> modulus() const { return {m0_, m1_}; }
    std::string modulus_string() const;

    GrElem make(std::int64_t a0, std::int64_t a1) const { return {R_.reduce(a0), R_.reduce(a1)}; }
    GrElem one() const { return make(1, 0); }
    GrElem x() const { return make(0, 1); }

    GrElem add(const GrElem& a, const GrElem& b) const { return {R_.add(a.c0, b.c0), R_.add(a.c1, b.c1)}; }
    GrElem sub(const GrElem& a, const GrElem& b) const { return {R_.sub(a.c0, b.c0), R_.sub(a.c1, b.c1)}; }
    GrElem neg(const GrElem& a) const { return {R_.neg(a.c0), R_.neg(a.c1)}; }
    GrElem mul(const GrElem& a, const GrElem& b) const;
    GrElem scale(std::int64_t s, const GrElem& a) const { return {R_.mul(s, a.c0), R_.mul(s, a.c1)}; }
    GrElem pow(GrElem a, std::uint64_t e) const;

    bool is_unit(const GrElem& a) const;
    GrElem inv(const GrElem& a) const;
    /// Norm a * frobenius(a), an element of Z/p^N.
    std::int64_t norm(const GrElem& a) const;

    GrElem frobenius(const GrElem& a) const;
    /// The multiplicative lift of a mod p of order dividing p^2 - 1.
    GrElem teichmuller(const GrElem& u) const;
    /// Teichmuller lift of the first residue class (index order a0 + p*a1)
    /// of multiplicative order p^2 - 1.
    GrElem generator() const;

    /// 2x2 matrix of multiplication by a on the basis {1, x} (columns are images).
    ResidueMatrix regular_matrix(const GrElem& a) const;
    ResidueMatrix frobenius_matrix() const;

    /// All p^{2N} elements in index order c0 + p^N * c1.
    std::uint64_t size() const { return static_cast<std::uint64_t>(R_.q) * static_cast<std::uint64_t>(R_.q); }
    GrElem element(std::uint64_t index) const;

    std::uint64_t multiplicative_order(const GrElem& a) const;
    std::string to_string(const GrElem& a) const;

private:
    Zmod R_;
    std::int64_t m0_ = 0, m1_ = 0;
    GrElem frob_x_;
};

}  // namespace defring
