#pragma once

/**
 * @file howell.hpp
 * @brief Howell normal form over Z/p^N and the linear solver built on it.
 *
 * Z/p^N is a chain ring, so every row span has a unique Howell basis: rows in
 * echelon position, pivots normalised to powers p^v, entries above a pivot
 * reduced into [0, p^v), and every span element with leading zeros through a
 * pivot column lying in the span of the rows below it. Membership testing is a
 * single top-down reduction against that basis.
 */

#include <optional>
#include <vector>

#include "defring/residue.hpp"

namespace defring {

using Vec = std::vector<std::int64_t>;

class HowellBasis {
public:
    HowellBasis(Zmod ring, std::size_t cols) : ring_(ring), cols_(cols) {}

    const Zmod& ring() const { return ring_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    const std::vector<Vec>& generators() const { return rows_; }
    const Vec& generator(std::size_t i) const { return rows_[i]; }
    std::size_t pivot_column(std::size_t i) const { return pivots_[i]; }
    int pivot_valuation(std::size_t i) const { return pivot_vals_[i]; }

    /// Additive orders p^{e_i} of the span's cyclic summands, largest first.
    const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
    /// Number of elements of the row span, as log_p.
    int log_order() const;

    /// Canonical representative of v modulo the span (zero iff v is in the span).
    Vec reduce(Vec v) const;
    bool contains(const Vec& v) const;

    /// The generators as the rows of a matrix.
    ResidueMatrix as_matrix() const;

    bool operator==(const HowellBasis& o) const {
        return ring_ == o.ring_ && cols_ == o.cols_ && rows_ == o.rows_;
    }

private:
    friend HowellBasis howell_form(Zmod ring, std::size_t cols, const std::vector<Vec>& rows);
    Zmod ring_;
    std::size_t cols_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<int> pivot_vals_;
    std::vector<std::int64_t> factors_;
};

/// Howell basis of the row span of m. Pivot selection: smallest column first,
/// then minimal valuation, then lowest row index.
HowellBasis howell_form(const ResidueMatrix& m);
HowellBasis howell_form(Zmod ring, std::size_t cols, const std::vector<Vec>& rows);

/// Invariant factors (additive orders p^{N-v} of the Smith diagonal), largest first.
std::vector<std::int64_t> smith_invariant_factors(const ResidueMatrix& m);

struct ModuleSolution {
    Vec particular;      ///< canonical: reduced modulo the kernel basis
    HowellBasis kernel;  ///< Howell basis of {x : m x = 0}
};

/// Solve m x = rhs over Z/p^N. Returns nullopt when the system is inconsistent.
std::optional<ModuleSolution> solve_module(const ResidueMatrix& m, const Vec& rhs);

/// Howell basis of the right kernel {x : m x = 0}.
HowellBasis kernel_basis(const ResidueMatrix& m);

}  // namespace defring
