#pragma once

/**
 * @file local_algebra.hpp
 * @brief Finite commutative local algebras with residue field F_p.
 *
 * An algebra is presented by a basis e_0 = 1, e_1, ..., e_r with additive
 * orders p^{N_i}, carry relations p^{N_i} e_i = sum_{k>i} r_ik e_k, and
 * structure constants e_i e_j = sum_k c_ij^k e_k. Coordinates are kept in
 * canonical mixed radix form, which makes equality a coordinate compare.
 */

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "defring/residue.hpp"

namespace defring {

inline constexpr std::size_t kMaxBasis = 4;

struct AlgElem {
    std::array<std::int64_t, kMaxBasis> c{};
    bool operator==(const AlgElem&) const = default;
    auto operator<=>(const AlgElem&) const = default;
};

class ArtinLocalAlgebra {
public:
    using Coeffs = std::vector<std::int64_t>;

    /// carries[i] has length rank(); entries at k <= i must be zero.
    /// structure[i][j] has length rank().
    ArtinLocalAlgebra(std::int64_t p, std::string name, std::vector<std::string> labels, std::vector<int> log_orders,
                      std::vector<Coeffs> carries, std::vector<std::vector<Coeffs>> structure);

    std::int64_t p() const { return p_; }
    const std::string& name() const { return name_; }
    std::size_t rank() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<int>& log_orders() const { return log_orders_; }
    /// Smallest e with p^e * 1 = 0.
    int characteristic_exponent() const { return total_log_order_[0]; }
    int nilpotency_index() const { return nilpotency_; }

    AlgElem zero() const { return {}; }
    AlgElem one() const { return from_int(1); }
    AlgElem basis(std::size_t i) const;
    AlgElem from_int(std::int64_t a) const;
    /// Canonical element from (possibly unreduced) coordinates.
    AlgElem make(const Coeffs& coords) const;

    AlgElem add(const AlgElem& a, const AlgElem& b) const;
    AlgElem sub(const AlgElem& a, const AlgElem& b) const;
    AlgElem neg(const AlgElem& a) const;
    AlgElem scale(std::int64_t s, const AlgElem& a) const;
    AlgElem mul(const AlgElem& a, const AlgElem& b) const;
    AlgElem pow(AlgElem a, std::uint64_t e) const;

    /// Image in F_p.
    std::int64_t residue(const AlgElem& a) const;
    bool is_unit(const AlgElem& a) const { return residue(a) != 0; }
    bool in_max_ideal(const AlgElem& a) const { return residue(a) == 0; }
    AlgElem inv(const AlgElem& a) const;

    std::uint64_t size() const { return size_; }
    /// Lexicographic index, e_0's coordinate most significant.
    std::uint64_t index(const AlgElem& a) const;
    AlgElem element(std::uint64_t index) const;
    std::vector<AlgElem> elements() const;
    std::vector<AlgElem> max_ideal() const;

    std::string to_string(const AlgElem& a) const;
    const std::vector<Coeffs>& carries() const { return carries_; }
    const std::vector<std::vector<Coeffs>>& structure() const { return structure_; }

    /// Table equality of presentations (orders, carries, structure constants).
    bool same_presentation(const ArtinLocalAlgebra& o) const;

private:
    void normalize(std::array<__int128, kMaxBasis>& x, AlgElem& out) const;
    void validate();

    std::int64_t p_;
    std::string name_;
    std::vector<std::string> labels_;
    std::vector<int> log_orders_;
    std::vector<int> total_log_order_;  // additive order exponent of e_i in the group
    std::vector<std::int64_t> order_;   // p^{N_i}
    std::vector<std::int64_t> total_order_;
    std::vector<Coeffs> carries_;
    std::vector<std::vector<Coeffs>> structure_;
    std::uint64_t size_ = 1;
    int nilpotency_ = 0;
};

using AlgebraPtr = std::shared_ptr<const ArtinLocalAlgebra>;

/// R = W[[t]]/(p^n t, t^2) with the W-part truncated at p^N.
AlgebraPtr make_ring_R(std::int64_t p, int n, int N);
/// R' = W[[t]]/(p^n t, p t^2, t^3).
AlgebraPtr make_ring_Rprime(std::int64_t p, int n, int N);
/// R' = W[[t]]/(2t^2, t^3, 2t + a_hat t^2).
AlgebraPtr make_ring_Rprime_2_1(std::int64_t a_hat, int N);

AlgebraPtr dual_numbers(std::int64_t p);
/// F_p[t]/(t^m).
AlgebraPtr truncated_polynomial(std::int64_t p, int m);
/// Z/p^m.
AlgebraPtr zmod_algebra(std::int64_t p, int m);
/// (Z/p^2)[u]/(u^2, p u).
AlgebraPtr zp2_u(std::int64_t p);

/// Parses "F2eps", "F3t3", "Z8", "Z4u", ... ; throws InvalidParameter.
AlgebraPtr standard_ring(const std::string& name);
/// The catalogue names for a prime, ordered as reported.
std::vector<std::string> standard_ring_names(std::int64_t p);

/// {x in m_A : x^2 = 0, p^n x = 0}, in lexicographic order.
std::vector<AlgElem> count_homs_from_R(int n, const ArtinLocalAlgebra& A);

/// Square matrices over an ArtinLocalAlgebra.
class AlgMatrix {
public:
    AlgMatrix() = default;
    AlgMatrix(AlgebraPtr A, std::size_t d);
    static AlgMatrix identity(AlgebraPtr A, std::size_t d);
    /// Entrywise image of an integer matrix (entries read in W = Z/p^N).
    static AlgMatrix from_integers(AlgebraPtr A, const ResidueMatrix& m);

    const ArtinLocalAlgebra& algebra() const { return *A_; }
    const AlgebraPtr& algebra_ptr() const { return A_; }
    std::size_t dim() const { return d_; }

    const AlgElem& operator()(std::size_t i, std::size_t j) const { return e_[i * d_ + j]; }
    AlgElem& operator()(std::size_t i, std::size_t j) { return e_[i * d_ + j]; }
    const std::vector<AlgElem>& entries() const { return e_; }

    AlgMatrix operator+(const AlgMatrix& o) const;
    AlgMatrix operator-(const AlgMatrix& o) const;
    AlgMatrix operator*(const AlgMatrix& o) const;
    AlgMatrix scaled(const AlgElem& a) const;
    AlgMatrix pow(std::uint64_t e) const;
    /// Inverse by lifting the residue inverse through the nilpotent filtration.
    AlgMatrix inverse() const;

    bool is_identity() const;
    /// Reduction mod m_A as a matrix over F_p.
    ResidueMatrix residue() const;
    /// Multiplicative order, or 0 if it exceeds the cap.
    std::uint64_t order(std::uint64_t cap = 1u << 20) const;

    bool operator==(const AlgMatrix& o) const { return d_ == o.d_ && e_ == o.e_; }
    auto operator<=>(const AlgMatrix& o) const { return e_ <=> o.e_; }

    std::string to_string() const;

private:
    AlgebraPtr A_;
    std::size_t d_ = 0;
    std::vector<AlgElem> e_;
};

/// Every element of 1 + M_d(m_A), in lexicographic order of entries.
std::vector<AlgMatrix> kernel_of_reduction(const AlgebraPtr& A, std::size_t d);

/// Dense element tables for small algebras (at most 1024 elements).
class ElementTable {
public:
    explicit ElementTable(const ArtinLocalAlgebra& A);
    std::size_t size() const { return n_; }
    std::uint16_t add(std::uint16_t a, std::uint16_t b) const { return add_[a * n_ + b]; }
    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const { return mul_[a * n_ + b]; }
    std::uint16_t neg(std::uint16_t a) const { return neg_[a]; }
    std::uint16_t zero() const { return 0; }
    std::uint16_t one() const { return one_; }
    std::int64_t residue(std::uint16_t a) const { return residue_[a]; }

private:
    std::size_t n_;
    std::vector<std::uint16_t> add_, mul_, neg_;
    std::vector<std::int64_t> residue_;
    std::uint16_t one_;
};

}  // namespace defring
