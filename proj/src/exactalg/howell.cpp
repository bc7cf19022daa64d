#include "defring/howell.hpp"

#include <algorithm>

namespace defring {

namespace {

void axpy(const Zmod& R, Vec& y, std::int64_t a, const Vec& x) {
    if (a == 0) return;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (x[i] != 0) y[i] = R.sub(y[i], R.mul(a, x[i]));
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

}  // namespace

HowellBasis howell_form(Zmod R, std::size_t cols, const std::vector<Vec>& input) {
    HowellBasis hb(R, cols);
    std::vector<Vec> work;
    work.reserve(input.size());
    for (const auto& r : input) {
        Vec v(cols);
        for (std::size_t j = 0; j < cols; ++j) v[j] = R.reduce(r[j]);
        if (!is_zero(v)) work.push_back(std::move(v));
    }

    for (std::size_t c = 0; c < cols && !work.empty(); ++c) {
        std::size_t best = work.size();
        int best_v = R.N;
        for (std::size_t i = 0; i < work.size(); ++i) {
            int v = R.val(work[i][c]);
            if (v < best_v) {
                best_v = v;
                best = i;
            }
        }
        if (best == work.size()) continue;
        Vec piv = std::move(work[best]);
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));

        const std::int64_t pv = ipow(R.p, best_v);
        const std::int64_t unit = R.inv(piv[c] / pv);
        for (auto& x : piv) x = R.mul(x, unit);

        for (auto& w : work)
            if (w[c] != 0) axpy(R, w, w[c] / pv, piv);
        if (best_v > 0) {
            Vec extra = piv;
            const std::int64_t ann = ipow(R.p, R.N - best_v);
            for (auto& x : extra) x = R.mul(x, ann);
            if (!is_zero(extra)) work.push_back(std::move(extra));
        }
        std::erase_if(work, [](const Vec& w) { return is_zero(w); });

        hb.rows_.push_back(std::move(piv));
        hb.pivots_.push_back(c);
        hb.pivot_vals_.push_back(best_v);
    }

    // reduce entries above each pivot into [0, p^v)
    for (std::size_t j = 0; j < hb.rows_.size(); ++j)
        for (std::size_t i = j + 1; i < hb.rows_.size(); ++i) {
            const std::int64_t pv = ipow(R.p, hb.pivot_vals_[i]);
            const std::int64_t k = hb.rows_[j][hb.pivots_[i]] / pv;
            axpy(R, hb.rows_[j], k, hb.rows_[i]);
        }

    if (!hb.rows_.empty())
        hb.factors_ = smith_invariant_factors(hb.as_matrix());
    return hb;
}

HowellBasis howell_form(const ResidueMatrix& m) {
    std::vector<Vec> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.emplace_back(m.row(i).begin(), m.row(i).end());
    return howell_form(m.ring(), m.cols(), rows);
}

int HowellBasis::log_order() const {
    int total = 0;
    for (int v : pivot_vals_) total += ring_.N - v;
    return total;
}

Vec HowellBasis::reduce(Vec v) const {
    for (auto& x : v) x = ring_.reduce(x);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::int64_t pv = ipow(ring_.p, pivot_vals_[i]);
        axpy(ring_, v, v[pivots_[i]] / pv, rows_[i]);
    }
    return v;
}

bool HowellBasis::contains(const Vec& v) const { return is_zero(reduce(v)); }

ResidueMatrix HowellBasis::as_matrix() const {
    std::vector<std::int64_t> flat;
    flat.reserve(rows_.size() * cols_);
    for (const auto& r : rows_) flat.insert(flat.end(), r.begin(), r.end());
    return ResidueMatrix(ring_, rows_.size(), cols_, std::move(flat));
}

std::vector<std::int64_t> smith_invariant_factors(const ResidueMatrix& m) {
    const Zmod& R = m.ring();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<Vec> a(rows, Vec(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j);

    std::vector<std::int64_t> factors;
    std::size_t k = 0;
    while (k < rows && k < cols) {
        int best_v = R.N;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < cols; ++j) {
                int v = R.val(a[i][j]);
                if (v < best_v) {
                    best_v = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best_v == R.N) break;
        std::swap(a[k], a[bi]);
        for (auto& r : a) std::swap(r[k], r[bj]);
        const std::int64_t pv = ipow(R.p, best_v);
        const std::int64_t unit_inv = R.inv(a[k][k] / pv);
        for (auto& x : a[k]) x = R.mul(x, unit_inv);
        for (std::size_t i = k + 1; i < rows; ++i)
            if (a[i][k] != 0) axpy(R, a[i], a[i][k] / pv, a[k]);
        // column operations: every entry of row k is a multiple of p^v
        for (std::size_t j = k + 1; j < cols; ++j) a[k][j] = 0;
        factors.push_back(ipow(R.p, R.N - best_v));
        ++k;
    }
    std::sort(factors.rbegin(), factors.rend());
    return factors;
}

namespace {

// Howell form of [m^T | I]; rows whose first m.rows() entries vanish carry the kernel.
HowellBasis augmented_transpose(const ResidueMatrix& m) {
    const std::size_t eq = m.rows(), var = m.cols();
    std::vector<Vec> rows(var, Vec(eq + var, 0));
    for (std::size_t x = 0; x < var; ++x) {
        for (std::size_t e = 0; e < eq; ++e) rows[x][e] = m(e, x);
        rows[x][eq + x] = 1;
    }
    return howell_form(m.ring(), eq + var, rows);
}

HowellBasis kernel_from(const HowellBasis& aug, std::size_t eq, std::size_t var) {
    std::vector<Vec> ker;
    for (std::size_t i = 0; i < aug.size(); ++i)
        if (aug.pivot_column(i) >= eq) {
            const Vec& r = aug.generator(i);
            ker.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(eq), r.end());
        }
    return howell_form(aug.ring(), var, ker);
}

}  // namespace

HowellBasis kernel_basis(const ResidueMatrix& m) {
    return kernel_from(augmented_transpose(m), m.rows(), m.cols());
}

std::optional<ModuleSolution> solve_module(const ResidueMatrix& m, const Vec& rhs) {
    const Zmod& R = m.ring();
    const std::size_t eq = m.rows(), var = m.cols();
    if (rhs.size() != eq) throw InvalidParameter("right-hand side length does not match the system");
    HowellBasis aug = augmented_transpose(m);

    Vec v(eq + var, 0);
    for (std::size_t e = 0; e < eq; ++e) v[e] = R.reduce(rhs[e]);
    for (std::size_t i = 0; i < aug.size(); ++i) {
        const std::size_t c = aug.pivot_column(i);
        if (c >= eq) break;
        const std::int64_t pv = ipow(R.p, aug.pivot_valuation(i));
        if (v[c] % pv != 0) return std::nullopt;
        axpy(R, v, v[c] / pv, aug.generator(i));
    }
    for (std::size_t e = 0; e < eq; ++e)
        if (v[e] != 0) return std::nullopt;

    HowellBasis ker = kernel_from(aug, eq, var);
    Vec x(var);
    for (std::size_t j = 0; j < var; ++j) x[j] = R.neg(v[eq + j]);
    return ModuleSolution{ker.reduce(std::move(x)), std::move(ker)};
}

}  // namespace defring
