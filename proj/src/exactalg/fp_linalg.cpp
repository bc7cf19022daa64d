#include "defring/fp_linalg.hpp"

#include <algorithm>

#include "defring/residue.hpp"

namespace defring {

FpEliminator::FpEliminator(std::int64_t p, std::size_t cols) : p_(static_cast<std::uint32_t>(p)), cols_(cols) {
    if (!is_prime(p) || p > 65521) throw InvalidParameter("FpEliminator needs a small prime");
}

void FpEliminator::reduce_in_place(std::vector<std::uint32_t>& w) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const std::size_t c = pivots_[r];
        const std::uint32_t f = w[c];
        if (f == 0) continue;
        const std::uint32_t m = p_ - f;  // rows are normalised to pivot 1
        const auto& row = rows_[r];
        for (std::size_t j = c; j < cols_; ++j)
            if (row[j]) w[j] = (w[j] + m * row[j]) % p_;
    }
}

std::vector<std::uint32_t> FpEliminator::reduce(std::span<const std::int64_t> v) const {
    std::vector<std::uint32_t> w(cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
        auto x = v[j] % static_cast<std::int64_t>(p_);
        w[j] = static_cast<std::uint32_t>(x < 0 ? x + p_ : x);
    }
    reduce_in_place(w);
    return w;
}

bool FpEliminator::contains(std::span<const std::int64_t> v) const {
    auto w = reduce(v);
    return std::all_of(w.begin(), w.end(), [](std::uint32_t x) { return x == 0; });
}

bool FpEliminator::insert(std::span<const std::int64_t> v) {
    if (full()) return false;
    auto w = reduce(v);
    std::size_t c = 0;
    while (c < cols_ && w[c] == 0) ++c;
    if (c == cols_) return false;
    // normalise pivot to 1 via Fermat inverse
    std::uint64_t inv = 1, b = w[c], e = p_ - 2;
    while (e) {
        if (e & 1) inv = inv * b % p_;
        b = b * b % p_;
        e >>= 1;
    }
    for (std::size_t j = c; j < cols_; ++j) w[j] = static_cast<std::uint32_t>(w[j] * inv % p_);
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), c) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, c);
    rows_.insert(rows_.begin() + pos, std::move(w));
    return true;
}

std::size_t fp_rank(std::int64_t p, std::size_t cols, const std::vector<std::vector<std::int64_t>>& rows) {
    FpEliminator e(p, cols);
    for (const auto& r : rows) {
        e.insert(r);
        if (e.full()) break;
    }
    return e.rank();
}

}  // namespace defring
