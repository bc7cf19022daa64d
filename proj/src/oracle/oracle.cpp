#include "defring/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace defring {

namespace {

constexpr std::uint64_t kDefaultGuard = 100'000'000;

// d x d products and powers on element indices
struct FlatOps {
    const ElementTable& T;
    std::size_t d;

    void mul(const std::uint16_t* x, const std::uint16_t* y, std::uint16_t* out) const {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                std::uint16_t acc = T.zero();
                for (std::size_t k = 0; k < d; ++k) acc = T.add(acc, T.mul(x[i * d + k], y[k * d + j]));
                out[i * d + j] = acc;
            }
    }
    bool is_identity(const std::uint16_t* x) const {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (x[i * d + j] != (i == j ? T.one() : T.zero())) return false;
        return true;
    }
    FlatLift identity() const {
        FlatLift r(d * d, T.zero());
        for (std::size_t i = 0; i < d; ++i) r[i * d + i] = T.one();
        return r;
    }
};

std::uint64_t saturating_pow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = (b != 0 && r > UINT64_MAX / b) ? UINT64_MAX : r * b;
    return r;
}

std::string key_of(const FlatLift& v) { return std::string(reinterpret_cast<const char*>(v.data()), v.size() * 2); }

FlatLift flatten(const ArtinLocalAlgebra& A, const AlgMatrix& m) {
    FlatLift out;
    for (const auto& e : m.entries()) out.push_back(static_cast<std::uint16_t>(A.index(e)));
    return out;
}

}  // namespace

std::uint64_t enumeration_guard() {
    if (const char* env = std::getenv("DEFRING_GUARD_OVERRIDE")) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return kDefaultGuard;
}

std::vector<AlgMatrix> LiftSet::generator_images(std::size_t i) const {
    std::vector<AlgMatrix> out;
    const std::size_t dd = d * d;
    for (std::size_t s = 0; s * dd < lifts[i].size(); ++s) {
        AlgMatrix m(A, d);
        for (std::size_t e = 0; e < dd; ++e) m(e / d, e % d) = A->element(lifts[i][s * dd + e]);
        out.push_back(m);
    }
    return out;
}

LiftSet enumerate_lifts(const Representation& rho_bar, const AlgebraPtr& A, std::vector<Elem> generators,
                        unsigned threads) {
    const auto& G0 = *rho_bar.group();
    if (rho_bar.ring().N != 1 || rho_bar.ring().p != A->p())
        throw InvalidParameter("rho_bar must be over the residue field of " + A->name());
    if (generators.empty()) {
        if (auto pair = find_generating_pair(G0))
            generators = {pair->first, pair->second};
        else
            generators = prune_generators(G0, G0.generators());
    }
    if (generated_order(G0, generators) != G0.order()) throw InvalidParameter("the given elements do not generate the group");

    LiftSet out;
    out.A = A;
    out.d = rho_bar.rank();
    out.group = std::make_shared<FiniteGroup>(G0.with_generators(generators));
    const auto& G = *out.group;
    const std::size_t d = out.d, dd = d * d, ng = generators.size();
    const auto mA = A->max_ideal();
    out.search_space = saturating_pow(mA.size(), dd * ng);
    if (out.search_space > enumeration_guard())
        throw GuardExceeded("search space " + std::to_string(out.search_space) + " exceeds the enumeration guard " +
                            std::to_string(enumeration_guard()));

    const ElementTable T(*A);
    const FlatOps ops{T, d};

    // per generator: lifts of rho_bar(s) whose order divides ord(s)
    std::vector<std::vector<FlatLift>> candidates(ng);
    for (std::size_t s = 0; s < ng; ++s) {
        const ResidueMatrix& base = rho_bar(generators[s]);
        const std::uint64_t ord = G.element_order(generators[s]);
        const std::uint64_t per = saturating_pow(mA.size(), dd);
        FlatLift m(dd), acc(dd), tmp(dd);
        for (std::uint64_t idx = 0; idx < per; ++idx) {
            std::uint64_t r = idx;
            for (std::size_t e = 0; e < dd; ++e, r /= mA.size()) {
                AlgElem x = A->add(A->from_int(base(e / d, e % d)), mA[r % mA.size()]);
                m[e] = static_cast<std::uint16_t>(A->index(x));
            }
            acc = m;
            for (std::uint64_t k = 1; k < ord; ++k) {
                ops.mul(acc.data(), m.data(), tmp.data());
                acc.swap(tmp);
            }
            if (ops.is_identity(acc.data())) candidates[s].push_back(m);
        }
    }

    std::uint64_t total = 1;
    for (const auto& c : candidates) total *= c.size();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, total)));

    const std::size_t n = G.order();
    std::vector<std::vector<FlatLift>> found(threads);
    auto work = [&](unsigned t) {
        std::vector<std::uint16_t> img(n * dd);
        std::vector<std::uint16_t> prod(dd);
        const FlatLift id = ops.identity();
        const std::uint64_t lo = total * t / threads, hi = total * (t + 1) / threads;
        std::vector<const FlatLift*> pick(ng);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            std::uint64_t r = idx;
            for (std::size_t s = 0; s < ng; ++s) {
                pick[s] = &candidates[s][r % candidates[s].size()];
                r /= candidates[s].size();
            }
            std::copy(id.begin(), id.end(), img.begin());
            for (std::size_t i = 1; i < n; ++i) {
                const Elem g = G.bfs_order()[i];
                ops.mul(&img[G.parent(g) * dd], pick[G.parent_generator(g)]->data(), &img[g * dd]);
            }
            bool ok = true;
            for (Elem g = 0; g < n && ok; ++g)
                for (std::size_t s = 0; s < ng && ok; ++s) {
                    ops.mul(&img[g * dd], pick[s]->data(), prod.data());
                    ok = std::equal(prod.begin(), prod.end(), img.begin() + G.mul(g, generators[s]) * dd);
                }
            if (!ok) continue;
            FlatLift lift;
            for (std::size_t s = 0; s < ng; ++s) lift.insert(lift.end(), pick[s]->begin(), pick[s]->end());
            found[t].push_back(std::move(lift));
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();
    for (auto& f : found) out.lifts.insert(out.lifts.end(), f.begin(), f.end());
    std::sort(out.lifts.begin(), out.lifts.end());
    return out;
}

DeformationClassSet deformation_classes(const LiftSet& L) {
    const ElementTable T(*L.A);
    const FlatOps ops{T, L.d};
    const std::size_t dd = L.d * L.d;
    std::vector<FlatLift> conj, conj_inv;
    for (const auto& C : kernel_of_reduction(L.A, L.d)) {
        conj.push_back(flatten(*L.A, C));
        conj_inv.push_back(flatten(*L.A, C.inverse()));
    }
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < L.lifts.size(); ++i) index.emplace(key_of(L.lifts[i]), i);

    DeformationClassSet out;
    out.lift_count = L.lifts.size();
    out.conjugator_count = conj.size();
    constexpr auto unassigned = static_cast<std::size_t>(-1);
    out.class_of.assign(L.lifts.size(), unassigned);
    FlatLift img, tmp(dd);
    // lifts are sorted, so the first unassigned lift is the minimum of its orbit
    for (std::size_t i = 0; i < L.lifts.size(); ++i) {
        if (out.class_of[i] != unassigned) continue;
        const std::size_t cls = out.representatives.size();
        out.representatives.push_back(i);
        out.sizes.push_back(0);
        for (std::size_t c = 0; c < conj.size(); ++c) {
            img = L.lifts[i];
            for (std::size_t s = 0; s * dd < img.size(); ++s) {
                ops.mul(conj[c].data(), &L.lifts[i][s * dd], tmp.data());
                ops.mul(tmp.data(), conj_inv[c].data(), &img[s * dd]);
            }
            auto it = index.find(key_of(img));
            if (it == index.end()) throw std::logic_error("a conjugate of a lift is missing from the enumeration");
            if (out.class_of[it->second] == unassigned) {
                out.class_of[it->second] = cls;
                ++out.sizes[cls];
            }
        }
    }
    return out;
}

FunctorReport functor_compare(const Instance& inst, const RhoR& rho_R, const AlgebraPtr& A, unsigned threads) {
    const int N = inst.spec.precision();
    if (A->p() != inst.spec.p) throw InvalidParameter("test ring " + A->name() + " has the wrong residue characteristic");
    if (A->characteristic_exponent() > N)
        throw PrecisionInsufficient("precision insufficient: " + A->name() + " has characteristic p^" +
                                    std::to_string(A->characteristic_exponent()) + " > p^" + std::to_string(N) +
                                    "; raise N and retry");
    auto lifts = enumerate_lifts(inst.rho_bar(), A, {}, threads);
    auto classes = deformation_classes(lifts);
    const auto homs = count_homs_from_R(inst.spec.n, *A);

    FunctorReport r;
    r.instance = inst.spec.name();
    r.ring = A->name();
    r.lift_count = classes.lift_count;
    r.class_count = classes.class_count();
    r.hom_count = homs.size();
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < lifts.lifts.size(); ++i) index.emplace(key_of(lifts.lifts[i]), i);

    const auto& gens = lifts.group->generators();
    const std::size_t d = inst.d();
    for (const AlgElem& x : homs) {
        // phi_x(a + b t) = a + b x
        FlatLift img;
        for (Elem s : gens) {
            const AlgMatrix& m = rho_R.rho(s);
            for (std::size_t e = 0; e < d * d; ++e) {
                const AlgElem& v = m(e / d, e % d);
                img.push_back(static_cast<std::uint16_t>(A->index(A->add(A->from_int(v.c[0]), A->scale(v.c[1], x)))));
            }
        }
        auto it = index.find(key_of(img));
        r.hom_classes.push_back(it == index.end() ? std::nullopt : std::optional(classes.class_of[it->second]));
    }
    std::vector<std::size_t> seen;
    bool all_found = true;
    for (const auto& c : r.hom_classes) {
        all_found = all_found && c.has_value();
        if (c) seen.push_back(*c);
    }
    std::sort(seen.begin(), seen.end());
    const bool distinct = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    r.injective = all_found && distinct;
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    r.surjective = seen.size() == r.class_count;
    return r;
}

}  // namespace defring
