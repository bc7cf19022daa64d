#pragma once

// Incremental row echelon over a prime field F_p, used for the large rank
// computations in cohomology where the Howell machinery would be overkill.

#include <cstdint>
#include <span>
#include <vector>

namespace defring {

class FpEliminator {
public:
    FpEliminator(std::int64_t p, std::size_t cols);

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }
    bool full() const { return rows_.size() == cols_; }

    /// Adds a row; returns true when it was independent of the rows so far.
    bool insert(std::span<const std::int64_t> v);
    /// Residue of v against the current echelon rows.
    std::vector<std::uint32_t> reduce(std::span<const std::int64_t> v) const;
    bool contains(std::span<const std::int64_t> v) const;

private:
    void reduce_in_place(std::vector<std::uint32_t>& w) const;

    std::uint32_t p_;
    std::size_t cols_;
    std::vector<std::vector<std::uint32_t>> rows_;  // sorted by pivot column
    std::vector<std::size_t> pivots_;
};

/// Rank over F_p of a row-major matrix with entries already reduced or not.
std::size_t fp_rank(std::int64_t p, std::size_t cols, const std::vector<std::vector<std::int64_t>>& rows);

}  // namespace defring
