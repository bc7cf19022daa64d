#include "defring/cohomology.hpp"

#include <algorithm>

#include "defring/fp_linalg.hpp"
#include "defring/modrep.hpp"

namespace defring {

namespace {

using Mat = std::vector<std::int64_t>;  // row-major over F_p

// Action of every element as an m x m matrix over F_p.
struct Action {
    std::int64_t p;
    std::size_t m;
    std::vector<Mat> mats;
};

std::size_t rank_of_rows(std::int64_t p, std::size_t cols, const std::vector<Mat>& rows) {
    FpEliminator E(p, cols);
    for (const auto& r : rows)
        if (E.insert(r) && E.full()) break;
    return E.rank();
}

// Crossed homomorphisms are determined by their values on the generators of
// G. L_g expresses f(g) linearly in those values, built along the BFS tree by
// f(parent * s) = f(parent) + parent . f(s); non-tree edges give the equations.
std::size_t h1_from_action(const FiniteGroup& G, const Action& A) {
    const std::size_t m = A.m, k = G.generators().size(), u = k * m, n = G.order();
    const std::int64_t p = A.p;
    if (m == 0) return 0;
    std::vector<Mat> L(n);
    L[0].assign(m * u, 0);
    for (std::size_t i = 1; i < n; ++i) {
        Elem g = G.bfs_order()[i], par = G.parent(g);
        std::size_t s = G.parent_generator(g);
        Mat Lg = L[par];
        const Mat& Ap = A.mats[par];
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) {
                auto& x = Lg[r * u + s * m + c];
                x = (x + Ap[r * m + c]) % p;
            }
        L[g] = std::move(Lg);
    }
    FpEliminator E(p, u);
    Mat row(u);
    for (Elem g = 0; g < n && !E.full(); ++g)
        for (std::size_t s = 0; s < k && !E.full(); ++s) {
            const Elem gs = G.mul(g, G.generators()[s]);
            if (gs != 0 && G.parent(gs) == g && G.parent_generator(gs) == s) continue;  // tree edge
            const Mat &Lg = L[g], &Lgs = L[gs], &Ag = A.mats[g];
            for (std::size_t r = 0; r < m && !E.full(); ++r) {
                for (std::size_t c = 0; c < u; ++c) row[c] = Lg[r * u + c] - Lgs[r * u + c];
                for (std::size_t c = 0; c < m; ++c) row[s * m + c] += Ag[r * m + c];
                E.insert(row);
            }
        }
    const std::size_t z1 = u - E.rank();
    // dim B^1 = m - dim M^G = rank of the stacked (A_s - 1)
    std::vector<Mat> rows;
    for (Elem s : G.generators()) {
        const Mat& As = A.mats[s];
        for (std::size_t r = 0; r < m; ++r) {
            Mat v(As.begin() + static_cast<std::ptrdiff_t>(r * m), As.begin() + static_cast<std::ptrdiff_t>((r + 1) * m));
            v[r] -= 1;
            rows.push_back(std::move(v));
        }
    }
    const std::size_t b1 = rank_of_rows(p, m, rows);
    return z1 - b1;
}

Action action_of(const PModule& M) {
    if (M.ring().N != 1) throw InvalidParameter("cohomology is computed with F_p coefficients");
    Action A{M.ring().p, M.rank(), {}};
    for (const auto& mat : M.matrices()) A.mats.push_back(mat.data());
    return A;
}

FiniteGroup pruned(const FiniteGroup& G) { return G.with_generators(prune_generators(G, G.generators())); }

}  // namespace

std::size_t h1_dim(const PModule& M) { return h1_from_action(pruned(*M.group()), action_of(M)); }

std::size_t h2_dim(const PModule& M) {
    const Action A = action_of(M);
    const FiniteGroup G = pruned(*M.group());
    const std::size_t n = G.order(), m = A.m, mc = (n - 1) * m;
    if (n * (n - 1) * m > 20000) throw InvalidParameter("h2_dim size guard exceeded");
    if (n == 1 || m == 0) return 0;
    const std::int64_t p = A.p;
    // C = Map(G, M) / M, each class represented by the f with f(1) = 0;
    // (g.f)(x) = g f(g^{-1} x) - g f(g^{-1}).
    Action C{p, mc, std::vector<Mat>(n, Mat(mc * mc, 0))};
    for (Elem g = 0; g < n; ++g) {
        const Mat& Ag = A.mats[g];
        const Elem gi = G.inv(g);
        Mat& out = C.mats[g];
        // column (y, j) is the unit cochain f = e_j at y
        for (Elem y = 1; y < n; ++y) {
            const Elem x = G.mul(g, y);  // g^{-1} x = y
            for (std::size_t j = 0; j < m; ++j) {
                const std::size_t col = (y - 1) * m + j;
                for (std::size_t r = 0; r < m; ++r) {
                    const std::int64_t a = Ag[r * m + j];
                    if (a == 0) continue;
                    if (x != 0) out[((x - 1) * m + r) * mc + col] += a;
                    if (gi == y)
                        for (Elem z = 1; z < n; ++z) out[((z - 1) * m + r) * mc + col] -= a;
                }
            }
        }
        for (auto& v : out) v = ((v % p) + p) % p;
    }
    return h1_from_action(G, C);
}

std::size_t hom_invariants_dim(const PModule& K, const PModule& M) {
    return hom_space(K.ring().N == 1 ? K : K.reduced(1), M).dim();
}

BarComplex::BarComplex(PModule M) : M_(std::move(M)) {
    if (M_.ring().N != 1) throw InvalidParameter("cohomology is computed with F_p coefficients");
    const double n = static_cast<double>(M_.group()->order());
    if (n * n * n * static_cast<double>(M_.rank()) > 1e7) throw InvalidParameter("bar complex size guard exceeded");
    n1_ = M_.group()->order() - 1;
}

std::size_t BarComplex::cochain_dim(int degree) const {
    std::size_t d = M_.rank();
    for (int i = 0; i < degree; ++i) d *= n1_;
    return d;
}

std::vector<std::int64_t> BarComplex::coboundary(int degree, const std::vector<std::int64_t>& c) const {
    const auto& G = *M_.group();
    const Zmod F = M_.ring();
    const std::size_t m = M_.rank(), n = G.order();
    if (degree < 0 || degree > 2) throw InvalidParameter("coboundary degree must be 0, 1 or 2");
    if (c.size() != cochain_dim(degree)) throw InvalidParameter("cochain has the wrong length");
    std::vector<std::int64_t> out(cochain_dim(degree + 1), 0);
    // value of a normalized cochain on a tuple, accumulated with a coefficient
    auto acc_val = [&](std::int64_t* dst, std::int64_t coef, std::initializer_list<Elem> args, Elem act) {
        std::size_t idx = 0;
        for (Elem a : args) {
            if (a == 0) return;
            idx = idx * n1_ + position(a);
        }
        const std::int64_t* v = c.data() + idx * m;
        if (act == 0) {
            for (std::size_t i = 0; i < m; ++i) dst[i] += coef * v[i];
        } else {
            const ResidueMatrix& A = M_(act);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) dst[i] += coef * A(i, j) * v[j];
        }
    };
    std::vector<std::int64_t> tmp(m);
    auto flush = [&](std::size_t idx) {
        for (std::size_t i = 0; i < m; ++i) out[idx * m + i] = F.reduce(tmp[i]);
        std::fill(tmp.begin(), tmp.end(), 0);
    };
    if (degree == 0) {
        for (Elem g = 1; g < n; ++g) {
            const ResidueMatrix& A = M_(g);
            for (std::size_t i = 0; i < m; ++i) {
                tmp[i] = -c[i];
                for (std::size_t j = 0; j < m; ++j) tmp[i] += A(i, j) * c[j];
            }
            flush(position(g));
        }
    } else if (degree == 1) {
        for (Elem g = 1; g < n; ++g)
            for (Elem h = 1; h < n; ++h) {
                acc_val(tmp.data(), 1, {h}, g);
                acc_val(tmp.data(), -1, {G.mul(g, h)}, 0);
                acc_val(tmp.data(), 1, {g}, 0);
                flush(position(g) * n1_ + position(h));
            }
    } else {
        for (Elem g = 1; g < n; ++g)
            for (Elem h = 1; h < n; ++h)
                for (Elem k = 1; k < n; ++k) {
                    acc_val(tmp.data(), 1, {h, k}, g);
                    acc_val(tmp.data(), -1, {G.mul(g, h), k}, 0);
                    acc_val(tmp.data(), 1, {g, G.mul(h, k)}, 0);
                    acc_val(tmp.data(), -1, {g, h}, 0);
                    flush((position(g) * n1_ + position(h)) * n1_ + position(k));
                }
    }
    return out;
}

std::size_t BarComplex::coboundary_rank(int degree) const {
    if (degree < 0) return 0;
    FpEliminator E(M_.ring().p, cochain_dim(degree + 1));
    std::vector<std::int64_t> e(cochain_dim(degree), 0);
    for (std::size_t i = 0; i < e.size() && !E.full(); ++i) {
        e[i] = 1;
        E.insert(coboundary(degree, e));
        e[i] = 0;
    }
    return E.rank();
}

std::size_t BarComplex::cohomology_dim(int degree) const {
    if (degree < 0 || degree > 2) throw InvalidParameter("cohomology degree must be 0, 1 or 2");
    return cochain_dim(degree) - coboundary_rank(degree) - coboundary_rank(degree - 1);
}

bool BarComplex::is_cocycle(const std::vector<std::int64_t>& c2) const {
    auto d = coboundary(2, c2);
    return std::all_of(d.begin(), d.end(), [](std::int64_t x) { return x == 0; });
}

bool BarComplex::is_coboundary(const std::vector<std::int64_t>& c2) const {
    FpEliminator E(M_.ring().p, cochain_dim(2));
    std::vector<std::int64_t> e(cochain_dim(1), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = 1;
        E.insert(coboundary(1, e));
        e[i] = 0;
    }
    return E.contains(c2);
}

std::vector<std::int64_t> BarComplex::cochain2(const std::function<std::vector<std::int64_t>(Elem, Elem)>& f) const {
    const std::size_t m = M_.rank(), n = M_.group()->order();
    std::vector<std::int64_t> c(cochain_dim(2));
    for (Elem g = 1; g < n; ++g)
        for (Elem h = 1; h < n; ++h) {
            auto v = f(g, h);
            for (std::size_t i = 0; i < m; ++i) c[(position(g) * n1_ + position(h)) * m + i] = M_.ring().reduce(v[i]);
        }
    return c;
}

GroupPtr elementary_abelian_rank2(std::int64_t p) {
    if (!is_prime(p)) throw InvalidParameter("p must be prime");
    const std::size_t q = static_cast<std::size_t>(p), n = q * q;
    std::vector<std::uint16_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            table[a * n + b] = static_cast<std::uint16_t>((a % q + b % q) % q + q * ((a / q + b / q) % q));
    return std::make_shared<FiniteGroup>("(Z/" + std::to_string(p) + ")^2", n, std::move(table),
                                         std::vector<Elem>{1, static_cast<Elem>(q)});
}

WedgeReport wedge_cocycle(std::int64_t p, const std::vector<ResidueMatrix>& action) {
    const Zmod F(p, 1);
    auto K = elementary_abelian_rank2(p);
    BarComplex B(PModule::trivial(K, F, 1));
    auto coords = [&](Elem g) { return std::array<std::int64_t, 2>{g % p, g / p}; };
    auto wedge = [&](const std::array<std::int64_t, 2>& u, const std::array<std::int64_t, 2>& v) {
        return F.reduce(u[0] * v[1] - u[1] * v[0]);
    };
    auto c = B.cochain2([&](Elem g, Elem h) { return std::vector<std::int64_t>{wedge(coords(g), coords(h))}; });

    WedgeReport r;
    r.p = p;
    r.inconclusive = p == 2;
    r.alternating = true;
    for (Elem g = 0; g < K->order(); ++g) r.alternating = r.alternating && wedge(coords(g), coords(g)) == 0;
    r.cocycle = B.is_cocycle(c);
    r.coboundary = B.is_coboundary(c);
    if (!action.empty()) {
        bool inv = true, det1 = true;
        for (const auto& A : action) {
            if (A.rows() != 2 || A.cols() != 2) throw InvalidParameter("wedge cocycle needs rank 2");
            det1 = det1 && F.reduce(A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0)) == 1;
            for (Elem g = 0; g < K->order(); ++g)
                for (Elem h = 0; h < K->order(); ++h) {
                    auto u = coords(g), v = coords(h);
                    std::array<std::int64_t, 2> Au{F.reduce(A(0, 0) * u[0] + A(0, 1) * u[1]),
                                                   F.reduce(A(1, 0) * u[0] + A(1, 1) * u[1])};
                    std::array<std::int64_t, 2> Av{F.reduce(A(0, 0) * v[0] + A(0, 1) * v[1]),
                                                   F.reduce(A(1, 0) * v[0] + A(1, 1) * v[1])};
                    inv = inv && wedge(Au, Av) == wedge(u, v);
                }
        }
        r.invariant = inv;
        r.determinant_one = det1;
    }
    return r;
}

}  // namespace defring
