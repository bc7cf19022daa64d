#include "defring/modrep.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "defring/fp_linalg.hpp"

namespace defring {

namespace {

void require_same_group(const Representation& X, const Representation& Y) {
    if (X.group().get() != Y.group().get()) throw InvalidParameter("representations live on different groups");
    if (!(X.ring() == Y.ring())) throw InvalidParameter("representations have different coefficient rings");
}

ResidueMatrix perm_on_differences(const Perm& g, Zmod R) {
    const std::size_t m = g.size(), d = m - 1;
    ResidueMatrix out(R, d, d);
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<std::int64_t> c(m, 0);
        c[g[j]] += 1;
        c[g[j + 1]] -= 1;
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < d; ++i) {
            acc += c[i];
            out.set(i, j, acc);
        }
    }
    return out;
}

ResidueMatrix perm_matrix(const Perm& g, Zmod R) {
    ResidueMatrix P(R, g.size(), g.size());
    for (std::size_t i = 0; i < g.size(); ++i) P.set(g[i], i, 1);
    return P;
}

// (sigma.X)[sigma(i)][sigma(j)] = X[i][j]
ResidueMatrix permute_entries(const ResidueMatrix& X, const Perm& s) {
    ResidueMatrix Y(X.ring(), X.rows(), X.cols());
    for (std::size_t i = 0; i < X.rows(); ++i)
        for (std::size_t j = 0; j < X.cols(); ++j) Y.set(s[i], s[j], X(i, j));
    return Y;
}

Representation galois_rep_on(const GroupPtr& G, std::int64_t p, int N) {
    GaloisRing R(p, N);
    return Representation(G, R.base(), {R.regular_matrix(R.generator()), R.frobenius_matrix()});
}

ResidueMatrix stack_rows(Zmod ring, std::size_t cols, const std::vector<ResidueMatrix>& blocks) {
    std::size_t rows = 0;
    for (const auto& b : blocks) rows += b.rows();
    ResidueMatrix out(ring, rows, cols);
    std::size_t r0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j) out.set(r0 + i, j, b(i, j));
        r0 += b.rows();
    }
    return out;
}

}  // namespace

Representation dual_rep(const Representation& V) {
    std::vector<ResidueMatrix> gens;
    for (const auto& m : V.generator_images()) gens.push_back(m.inverse().transpose());
    return Representation(V.group(), V.ring(), gens);
}

Representation tensor_rep(const Representation& X, const Representation& Y) {
    require_same_group(X, Y);
    std::vector<ResidueMatrix> gens;
    for (Elem s : X.group()->generators()) gens.push_back(kron(X(s), Y(s)));
    return Representation(X.group(), X.ring(), gens);
}

Representation end_rep(const Representation& V) {
    std::vector<ResidueMatrix> gens;
    for (const auto& m : V.generator_images()) gens.push_back(kron(m, m.inverse().transpose()));
    return Representation(V.group(), V.ring(), gens);
}

Representation difference_rep(const GroupPtr& G, Zmod ring) {
    if (!G->is_permutation_group()) throw InvalidParameter("difference_rep needs a permutation group");
    std::vector<ResidueMatrix> gens;
    for (Elem s : G->generators()) gens.push_back(perm_on_differences(G->permutation(s), ring));
    return Representation(G, ring, gens);
}

StandardModules standard_perm_rep(const GroupPtr& G, Zmod ring) {
    if (!G->is_permutation_group()) throw InvalidParameter("standard_perm_rep needs a permutation group");
    const std::size_t m = G->degree(), d = m - 1;
    if (static_cast<std::int64_t>(m) % ring.p == 0) throw InvalidParameter("p must not divide d+1");
    std::vector<ResidueMatrix> ngens, tgens;
    for (Elem s : G->generators()) {
        ngens.push_back(perm_matrix(G->permutation(s), ring));
        tgens.push_back(ResidueMatrix::identity(ring, 1));
    }
    StandardModules S{Representation(G, ring, ngens), Representation(G, ring, tgens), difference_rep(G, ring),
                      ResidueMatrix(ring, m, d), ResidueMatrix(ring, d, m), ResidueMatrix(ring, m, m),
                      ResidueMatrix(ring, m, m)};
    const std::int64_t inv_m = ring.inv(static_cast<std::int64_t>(m));
    for (std::size_t j = 0; j < d; ++j) {
        S.incl_V.set(j, j, 1);
        S.incl_V.set(j + 1, j, -1);
        for (std::size_t k = 0; k < m; ++k)
            S.proj_V.set(j, k, (k <= j ? 1 : 0) - ring.mul(static_cast<std::int64_t>(j + 1), inv_m));
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) S.idem_T.set(i, k, inv_m);
    S.idem_V = S.incl_V * S.proj_V;

    const auto I = ResidueMatrix::identity(ring, m);
    bool ok = S.idem_T + S.idem_V == I && S.idem_T * S.idem_T == S.idem_T && S.idem_V * S.idem_V == S.idem_V &&
              (S.proj_V * S.incl_V).is_identity();
    for (Elem s : G->generators()) {
        ok = ok && S.N(s) * S.idem_T == S.idem_T * S.N(s) && S.N(s) * S.idem_V == S.idem_V * S.N(s);
        ok = ok && S.N(s) * S.incl_V == S.incl_V * S.V(s);
    }
    if (!ok) throw std::logic_error("N = T + V decomposition check failed");
    return S;
}

Representation galois_module_rep(std::int64_t p, int N) { return galois_rep_on(twisted_frobenius_group(p), p, N); }

EquivariantHomSpace hom_space(const Representation& X, const Representation& Y) {
    require_same_group(X, Y);
    const Zmod R = X.ring();
    const std::size_t dx = X.rank(), dy = Y.rank(), u = dx * dy;
    const auto Ix = ResidueMatrix::identity(R, dx), Iy = ResidueMatrix::identity(R, dy);
    std::vector<ResidueMatrix> blocks;
    for (Elem s : X.group()->generators()) blocks.push_back(kron(Y(s), Ix) - kron(Iy, X(s).transpose()));
    HowellBasis ker = blocks.empty() ? howell_form(ResidueMatrix::identity(R, u)) : kernel_basis(stack_rows(R, u, blocks));
    EquivariantHomSpace H;
    H.invariant_factors = ker.invariant_factors();
    for (const auto& g : ker.generators()) H.basis.push_back(unvec(R, g, dy, dx));
    for (const auto& h : H.basis)
        for (Elem g = 0; g < X.group()->order(); ++g)
            if (!(Y(g) * h == h * X(g))) throw std::logic_error("hom_space basis element fails to intertwine");
    return H;
}

std::size_t invariants_dim(const Representation& M) {
    const std::size_t r = M.rank();
    std::vector<std::vector<std::int64_t>> rows;
    for (Elem s : M.group()->generators()) {
        ResidueMatrix D = M(s) - ResidueMatrix::identity(M.ring(), r);
        for (std::size_t i = 0; i < r; ++i) rows.emplace_back(D.row(i).begin(), D.row(i).end());
    }
    return r - fp_rank(M.ring().p, r, rows);
}

HigmanResult is_projective_higman(const Representation& V0) {
    const Representation V = V0.ring().N == 1 ? V0 : V0.reduced(1);
    const Zmod R = V.ring();
    const std::size_t d = V.rank();
    ResidueMatrix S(R, d * d, d * d);
    for (Elem g = 0; g < V.group()->order(); ++g) S = S + kron(V(g), V(V.group()->inv(g)).transpose());
    auto sol = solve_module(S, vec(ResidueMatrix::identity(R, d)));
    HigmanResult res;
    if (sol) {
        res.projective = true;
        res.witness = unvec(R, sol->particular, d, d);
    }
    return res;
}

Representation hensel_lift_rep(const Representation& rho_bar, int N) {
    if (rho_bar.ring().N != 1) throw InvalidParameter("hensel_lift_rep starts from F_p coefficients");
    if (N < 1) throw InvalidParameter("precision must be positive");
    const auto& G = rho_bar.group();
    const std::int64_t p = rho_bar.ring().p;
    const Zmod Fp(p, 1);
    const std::size_t d = rho_bar.rank(), dd = d * d, k = G->generators().size(), u = k * dd;
    const auto Id = ResidueMatrix::identity(Fp, d);

    std::vector<ResidueMatrix> gens = rho_bar.generator_images();
    for (int level = 1; level < N; ++level) {
        const Zmod R1(p, level + 1);
        const std::int64_t pl = ipow(p, level);
        std::vector<ResidueMatrix> lifted;
        for (const auto& m : gens) lifted.push_back(m.lifted(level + 1));

        // rho~ along the BFS tree, and L_g: derivative of rho'(g) in the corrections
        std::vector<ResidueMatrix> rt(G->order(), ResidueMatrix::identity(R1, d));
        std::vector<ResidueMatrix> L(G->order(), ResidueMatrix(Fp, dd, u));
        for (std::size_t i = 1; i < G->order(); ++i) {
            Elem g = G->bfs_order()[i], par = G->parent(g);
            std::size_t s = G->parent_generator(g);
            rt[g] = rt[par] * lifted[s];
            ResidueMatrix Lg = kron(Id, rho_bar(G->generators()[s]).transpose()) * L[par];
            ResidueMatrix B = kron(rho_bar(par), Id);
            for (std::size_t a = 0; a < dd; ++a)
                for (std::size_t b = 0; b < dd; ++b) Lg.set(a, s * dd + b, Lg(a, s * dd + b) + B(a, b));
            L[g] = Lg;
        }
        const std::size_t rows = G->order() * k * dd;
        ResidueMatrix A(Fp, rows, u);
        Vec rhs(rows, 0);
        std::size_t r0 = 0;
        for (Elem g = 0; g < G->order(); ++g)
            for (std::size_t s = 0; s < k; ++s, r0 += dd) {
                const Elem gs = G->mul(g, G->generators()[s]);
                ResidueMatrix defect = rt[g] * lifted[s] - rt[gs];
                ResidueMatrix Lrow = kron(Id, rho_bar(G->generators()[s]).transpose()) * L[g] - L[gs];
                ResidueMatrix B = kron(rho_bar(g), Id);
                for (std::size_t a = 0; a < dd; ++a) {
                    for (std::size_t c = 0; c < u; ++c) A.set(r0 + a, c, Lrow(a, c));
                    for (std::size_t b = 0; b < dd; ++b) A.set(r0 + a, s * dd + b, A(r0 + a, s * dd + b) + B(a, b));
                    const std::int64_t e = defect.data()[a];
                    if (e % pl != 0) throw std::logic_error("lift is not multiplicative at the previous level");
                    rhs[r0 + a] = Fp.neg(Fp.reduce(e / pl));
                }
            }
        auto sol = solve_module(A, rhs);
        if (!sol)
            throw InvalidParameter("lifting obstruction at precision " + std::to_string(level + 1) +
                                   ": the representation is not projective");
        for (std::size_t s = 0; s < k; ++s) {
            ResidueMatrix next = lifted[s];
            for (std::size_t a = 0; a < dd; ++a)
                next.set(a / d, a % d, next(a / d, a % d) + pl * sol->particular[s * dd + a]);
            gens[s] = next;
        }
    }
    return Representation(G, Zmod(p, N), gens);
}

bool standard_admissible(int d, std::int64_t p) {
    if (d < 1 || !is_prime(p)) return false;
    if (d < p - 1) return true;
    std::int64_t q = p;
    while (q < d) q *= p;
    return q == d;
}

XMatrices x_matrices(int d, Zmod ring) {
    if (!standard_admissible(d, ring.p)) throw InvalidParameter("d < p-1 or d = p^f required");
    const std::size_t m = static_cast<std::size_t>(d) + 1;
    XMatrices X;
    X.d = static_cast<std::size_t>(d);
    auto D = [&](std::size_t i, std::size_t j) -> const ResidueMatrix& { return X.D[(i - 1) * X.d + (j - 1)]; };
    for (std::size_t i = 1; i <= X.d; ++i)
        for (std::size_t j = 1; j <= X.d; ++j) {
            ResidueMatrix E(ring, m, m);
            E.set(i - 1, j - 1, 1);
            E.set(i - 1, j, -1);
            E.set(i, j - 1, -1);
            E.set(i, j, 1);
            X.D.push_back(E);
        }
    ResidueMatrix x1 = D(1, 1).scaled(d - 1);
    for (std::size_t l = 2; l <= X.d; ++l) x1 = x1 + (D(1, l) + D(l, 1)).scaled(static_cast<std::int64_t>(X.d + 1 - l));
    for (std::size_t j = 0; j < m; ++j) {
        const std::int64_t want = j == 0 ? d - 1 : (j == 1 ? 0 : -1);
        if (x1(0, j) != ring.reduce(want)) throw std::logic_error("x_1 first row does not match (d-1, 0, -1, ..., -1)");
    }
    Perm cycle(m);
    for (std::size_t i = 0; i < m; ++i) cycle[i] = static_cast<std::uint8_t>((i + 1) % m);
    X.x.push_back(x1);
    for (std::size_t j = 1; j < X.d; ++j) X.x.push_back(permute_entries(X.x.back(), cycle));

    // b_j - b_{j+1} -> x_j is S_{d+1}-equivariant on the generators (0 1), cycle
    Perm swap01(m);
    for (std::size_t i = 0; i < m; ++i) swap01[i] = static_cast<std::uint8_t>(i);
    std::swap(swap01[0], swap01[1]);
    for (const Perm& s : {swap01, cycle}) {
        ResidueMatrix Vs = perm_on_differences(s, ring);
        for (std::size_t j = 0; j < X.d; ++j) {
            ResidueMatrix rhs(ring, m, m);
            for (std::size_t i = 0; i < X.d; ++i) rhs = rhs + X.x[i].scaled(Vs(i, j));
            if (!(permute_entries(X.x[j], s) == rhs)) throw std::logic_error("span of the x_j is not a copy of V");
        }
    }
    return X;
}

ResidueMatrix restrict_to_V(const ResidueMatrix& X) {
    const std::size_t m = X.rows(), d = m - 1;
    ResidueMatrix B(X.ring(), m, d), P(X.ring(), d, m);
    for (std::size_t j = 0; j < d; ++j) {
        B.set(j, j, 1);
        B.set(j + 1, j, -1);
        for (std::size_t k = 0; k <= j; ++k) P.set(j, k, 1);
    }
    ResidueMatrix XB = X * B;
    for (std::size_t j = 0; j < d; ++j) {
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < m; ++i) sum += XB(i, j);
        if (X.ring().reduce(sum) != 0) throw InvalidParameter("matrix does not preserve the sum-zero sublattice");
    }
    return P * XB;
}

GroupPtr standard_group(int d, std::int64_t p) {
    if (!standard_admissible(d, p)) throw InvalidParameter("d < p-1 or d = p^f required");
    if (d >= p) {
        if (d > 9) throw InvalidParameter("PGL2(F_q) is supported for q <= 9");
        return pgl2(d);
    }
    if (d + 1 > 8) throw InvalidParameter("S_{d+1} is supported for d <= 7");
    return symmetric_group(d + 1);
}

TwistedModules twisted_modules(std::int64_t p, int n, int N) {
    if (n < 1 || N < n) throw InvalidParameter("twisted modules need 1 <= n <= N");
    TwistedModules T;
    T.G = twisted_frobenius_group(p);
    T.V_W = galois_rep_on(T.G, p, N);
    GaloisRing Rn(p, n);
    const GrElem zeta = Rn.generator();
    const std::int64_t e = p * p - p;
    T.K = Representation(T.G, Rn.base(), {Rn.regular_matrix(Rn.pow(zeta, static_cast<std::uint64_t>(e))), Rn.frobenius_matrix()});
    T.alpha = ResidueMatrix(Rn.base(), 4, 2);
    for (std::size_t i = 0; i < 2; ++i) {
        GrElem b = i == 0 ? Rn.one() : Rn.x();
        Vec v = vec(Rn.regular_matrix(b) * Rn.frobenius_matrix());
        for (std::size_t r = 0; r < 4; ++r) T.alpha.set(r, i, v[r]);
    }
    return T;
}

TwistedDecomposition twisted_decomposition(std::int64_t p) {
    const Representation V = galois_module_rep(p, 1);
    const Representation M = end_rep(V);
    const Zmod F = M.ring();
    const Elem z = M.group()->generators()[0], s = M.group()->generators()[1];
    const auto I = ResidueMatrix::identity(F, 4);
    const ResidueMatrix ZmI = M(z) - I;

    TwistedDecomposition out{howell_form(ZmI.transpose()), kernel_basis(ZmI), ResidueMatrix(F, 4, 4), false};
    ResidueMatrix acc = I, sum(F, 4, 4);
    const std::int64_t ord = p * p - 1;
    for (std::int64_t i = 0; i < ord; ++i, acc = acc * M(z)) sum = sum + acc;
    out.idempotent = sum.scaled(F.inv(ord));
    const ResidueMatrix& e = out.idempotent;
    bool ok = e * e == e && (e * ZmI).is_zero() && howell_form(e.transpose()) == out.complement &&
              howell_form((I - e).transpose()) == out.v_prime && out.v_prime.size() == 2 && out.complement.size() == 2;
    for (Elem g : M.group()->generators())
        for (const auto* basis : {&out.v_prime, &out.complement})
            for (const auto& v : basis->generators()) ok = ok && basis->contains(M(g).apply(v));
    if (!ok) throw std::logic_error("End(V) does not split as V' + complement");
    // the complement is free of rank one over F_p G_0: some x has {x, sigma x} spanning it
    for (std::int64_t a = 0; a < p && !out.complement_is_regular_G0; ++a)
        for (std::int64_t b = 0; b < p && !out.complement_is_regular_G0; ++b) {
            Vec x(4, 0);
            for (std::size_t c = 0; c < 4; ++c)
                x[c] = F.add(F.mul(a, out.complement.generator(0)[c]), F.mul(b, out.complement.generator(1)[c]));
            Vec sx = M(s).apply(x);
            out.complement_is_regular_G0 = howell_form(F, 4, {x, sx}) == out.complement;
        }
    return out;
}

// AlgRepresentation

AlgRepresentation::AlgRepresentation(GroupPtr G, AlgebraPtr A, std::vector<AlgMatrix> generator_images)
    : G_(std::move(G)), A_(std::move(A)) {
    if (generator_images.size() != G_->generators().size())
        throw InvalidParameter("one matrix per generator is required");
    d_ = generator_images.empty() ? 0 : generator_images[0].dim();
    for (const auto& m : generator_images)
        if (m.dim() != d_ || !m.algebra().same_presentation(*A_))
            throw InvalidParameter("generator matrices must share size and algebra");
    mats_.assign(G_->order(), AlgMatrix::identity(A_, d_));
    for (std::size_t i = 1; i < G_->order(); ++i) {
        Elem g = G_->bfs_order()[i];
        mats_[g] = mats_[G_->parent(g)] * generator_images[G_->parent_generator(g)];
    }
    for (Elem g = 0; g < G_->order(); ++g)
        for (std::size_t s = 0; s < generator_images.size(); ++s)
            if (!(mats_[g] * generator_images[s] == mats_[G_->mul(g, G_->generators()[s])]))
                throw InvalidParameter("generator matrices violate the relations of " + G_->name());
}

AlgRepresentation AlgRepresentation::from_elements(GroupPtr G, AlgebraPtr A, std::vector<AlgMatrix> element_images) {
    if (element_images.size() != G->order()) throw InvalidParameter("one matrix per element is required");
    std::vector<AlgMatrix> gens;
    for (Elem s : G->generators()) gens.push_back(element_images[s]);
    AlgRepresentation rho(G, A, std::move(gens));
    if (rho.mats_ != element_images) throw InvalidParameter("element matrices are not multiplicative");
    return rho;
}

AlgRepresentation AlgRepresentation::unverified(GroupPtr G, AlgebraPtr A, std::vector<AlgMatrix> element_images) {
    if (element_images.size() != G->order()) throw InvalidParameter("one matrix per element is required");
    AlgRepresentation rho;
    rho.G_ = std::move(G);
    rho.A_ = std::move(A);
    rho.d_ = element_images.empty() ? 0 : element_images[0].dim();
    rho.mats_ = std::move(element_images);
    return rho;
}

std::optional<std::pair<Elem, Elem>> AlgRepresentation::first_defect_all_pairs(unsigned threads) const {
    const std::size_t n = G_->order();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::vector<std::optional<std::pair<Elem, Elem>>> found(threads);
    // small algebras: matrices as element indices, products by table lookup
    std::optional<ElementTable> tab;
    std::vector<std::uint16_t> flat;
    const std::size_t dd = d_ * d_;
    if (A_->size() <= 1024) {
        tab.emplace(*A_);
        flat.resize(n * dd);
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t e = 0; e < dd; ++e) flat[g * dd + e] = static_cast<std::uint16_t>(A_->index(mats_[g].entries()[e]));
    }
    auto fast_equal = [&](std::size_t a, std::size_t b, std::size_t c) {
        const std::uint16_t *x = &flat[a * dd], *y = &flat[b * dd], *z = &flat[c * dd];
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = 0; j < d_; ++j) {
                std::uint16_t acc = tab->zero();
                for (std::size_t k = 0; k < d_; ++k) acc = tab->add(acc, tab->mul(x[i * d_ + k], y[k * d_ + j]));
                if (acc != z[i * d_ + j]) return false;
            }
        return true;
    };
    auto work = [&](unsigned t) {
        const std::size_t lo = n * t / threads, hi = n * (t + 1) / threads;
        for (std::size_t a = lo; a < hi; ++a)
            for (Elem b = 0; b < n; ++b) {
                const Elem c = G_->mul(static_cast<Elem>(a), b);
                if (tab ? !fast_equal(a, b, c) : !(mats_[a] * mats_[b] == mats_[c])) {
                    found[t] = std::make_pair(static_cast<Elem>(a), b);
                    return;
                }
            }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();
    for (const auto& f : found)
        if (f) return f;
    return std::nullopt;
}

std::vector<Elem> AlgRepresentation::kernel() const {
    std::vector<Elem> k;
    for (Elem g = 0; g < G_->order(); ++g)
        if (mats_[g].is_identity()) k.push_back(g);
    return k;
}

AlgMatrix to_algebra(const AlgebraPtr& A, const ResidueMatrix& m) {
    if (m.ring().N < A->characteristic_exponent())
        throw InvalidParameter("matrix precision is below the characteristic of " + A->name());
    return AlgMatrix::from_integers(A, m);
}

AlgMatrix one_plus_t(const AlgebraPtr& A, const ResidueMatrix& X) {
    AlgMatrix r = AlgMatrix::identity(A, X.rows());
    const AlgElem t = A->basis(1);
    for (std::size_t i = 0; i < X.rows(); ++i)
        for (std::size_t j = 0; j < X.cols(); ++j) r(i, j) = A->add(r(i, j), A->scale(X(i, j), t));
    return r;
}

}  // namespace defring
