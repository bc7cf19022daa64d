#include "defring/groups.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace defring {

namespace {

std::string perm_key(const Perm& p) { return std::string(p.begin(), p.end()); }

Perm compose(const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
    return c;
}

Perm identity_perm(std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::size_t order, std::vector<std::uint16_t> table,
                         std::vector<Elem> generators)
    : name_(std::move(name)), order_(order), table_(std::move(table)), gens_(std::move(generators)) {
    if (order_ == 0 || order_ > kTableLimit) throw InvalidParameter("group order outside the table range");
    if (table_.size() != order_ * order_) throw InvalidParameter("multiplication table has the wrong size");
    for (Elem g : gens_)
        if (g >= order_) throw InvalidParameter("generator index out of range");
    inverse_.assign(order_, 0);
    for (Elem a = 0; a < order_; ++a) {
        bool found = false;
        for (Elem b = 0; b < order_ && !found; ++b)
            if (table_[a * order_ + b] == 0) {
                inverse_[a] = b;
                found = true;
            }
        if (!found) throw InvalidParameter("element without inverse in " + name_);
    }
    build_words();
}

FiniteGroup FiniteGroup::from_permutations(std::string name, std::size_t degree, const std::vector<Perm>& generators) {
    if (degree == 0 || degree > 255) throw InvalidParameter("permutation degree out of range");
    for (const auto& g : generators) {
        if (g.size() != degree) throw InvalidParameter("generator has the wrong degree");
        Perm s = g;
        std::sort(s.begin(), s.end());
        if (s != identity_perm(degree)) throw InvalidParameter("generator is not a permutation");
    }
    FiniteGroup G;
    G.name_ = std::move(name);
    G.degree_ = degree;
    G.perms_.push_back(identity_perm(degree));
    G.perm_index_.emplace(perm_key(G.perms_[0]), 0);
    for (const auto& g : generators) {
        auto [it, inserted] = G.perm_index_.emplace(perm_key(g), static_cast<Elem>(G.perms_.size()));
        if (inserted) G.perms_.push_back(g);
    }
    // closure under right multiplication by generators
    for (std::size_t i = 0; i < G.perms_.size(); ++i)
        for (const auto& g : generators) {
            Perm c = compose(G.perms_[i], g);
            auto [it, inserted] = G.perm_index_.emplace(perm_key(c), static_cast<Elem>(G.perms_.size()));
            if (inserted) G.perms_.push_back(std::move(c));
        }
    G.order_ = G.perms_.size();
    for (const auto& g : generators) G.gens_.push_back(G.perm_index_.at(perm_key(g)));

    G.inverse_.resize(G.order_);
    for (Elem a = 0; a < G.order_; ++a) {
        Perm inv(degree);
        for (std::size_t x = 0; x < degree; ++x) inv[G.perms_[a][x]] = static_cast<std::uint8_t>(x);
        G.inverse_[a] = G.perm_index_.at(perm_key(inv));
    }
    G.build_words();

    if (G.order_ <= kTableLimit) {
        // right multiplication by generators, then rows filled along the BFS tree
        const std::size_t n = G.order_, k = G.gens_.size();
        std::vector<Elem> right(n * k);
        for (Elem a = 0; a < n; ++a)
            for (std::size_t s = 0; s < k; ++s) right[a * k + s] = G.lazy_mul(a, G.gens_[s]);
        G.table_.assign(n * n, 0);
        for (Elem a = 0; a < n; ++a) {
            G.table_[a * n] = static_cast<std::uint16_t>(a);
            for (std::size_t i = 1; i < n; ++i) {
                Elem b = G.bfs_[i];
                Elem ap = G.table_[a * n + G.parent_[b]];
                G.table_[a * n + b] = static_cast<std::uint16_t>(right[ap * k + G.parent_gen_[b]]);
            }
        }
    }
    return G;
}

Elem FiniteGroup::lazy_mul(Elem a, Elem b) const { return perm_index_.at(perm_key(compose(perms_[a], perms_[b]))); }

void FiniteGroup::build_words() {
    parent_.assign(order_, 0);
    parent_gen_.assign(order_, 0);
    bfs_.clear();
    std::vector<bool> seen(order_, false);
    seen[0] = true;
    bfs_.push_back(0);
    for (std::size_t i = 0; i < bfs_.size(); ++i) {
        Elem x = bfs_[i];
        for (std::size_t s = 0; s < gens_.size(); ++s) {
            Elem c = mul(x, gens_[s]);
            if (!seen[c]) {
                seen[c] = true;
                parent_[c] = x;
                parent_gen_[c] = s;
                bfs_.push_back(c);
            }
        }
    }
    if (bfs_.size() != order_) throw InvalidParameter("generators do not generate " + name_);
}

Elem FiniteGroup::pow(Elem a, std::uint64_t e) const {
    Elem r = 0;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t FiniteGroup::element_order(Elem a) const {
    std::uint64_t k = 1;
    for (Elem x = a; x != 0; x = mul(x, a)) ++k;
    return k;
}

std::vector<std::size_t> FiniteGroup::word(Elem g) const {
    std::vector<std::size_t> w;
    for (; g != 0; g = parent_[g]) w.push_back(parent_gen_[g]);
    std::reverse(w.begin(), w.end());
    return w;
}

std::optional<Elem> FiniteGroup::find_permutation(const Perm& p) const {
    auto it = perm_index_.find(perm_key(p));
    if (it == perm_index_.end()) return std::nullopt;
    return it->second;
}

FiniteGroup FiniteGroup::with_generators(std::vector<Elem> generators, std::string name) const {
    FiniteGroup G = *this;
    for (Elem g : generators)
        if (g >= order_) throw InvalidParameter("generator index out of range");
    G.gens_ = std::move(generators);
    if (!name.empty()) G.name_ = std::move(name);
    G.build_words();
    return G;
}

void FiniteGroup::validate() const {
    for (Elem a = 0; a < order_; ++a) {
        if (mul(0, a) != a || mul(a, 0) != a) throw InvalidParameter(name_ + ": identity law fails");
        if (mul(a, inv(a)) != 0 || mul(inv(a), a) != 0) throw InvalidParameter(name_ + ": inverse law fails");
    }
    auto assoc = [&](Elem a, Elem b, Elem c) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw InvalidParameter(name_ + ": associativity fails");
    };
    if (order_ <= 200) {
        for (Elem a = 0; a < order_; ++a)
            for (Elem b = 0; b < order_; ++b)
                for (Elem c = 0; c < order_; ++c) assoc(a, b, c);
    } else {
        std::uint64_t state = 0x9e3779b97f4a7c15ULL;
        auto next = [&] {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            return static_cast<Elem>((state >> 33) % order_);
        };
        for (int i = 0; i < 200000; ++i) {
            Elem a = next(), b = next(), c = next();
            assoc(a, b, c);
        }
    }
}

std::uint64_t FiniteGroup::table_hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto feed = [&](std::uint64_t v) {
        for (int i = 0; i < 4; ++i) {
            h ^= (v >> (16 * i)) & 0xffff;
            h *= 1099511628211ULL;
        }
    };
    feed(order_);
    for (Elem s : gens_)
        for (Elem x = 0; x < order_; ++x) feed(mul(s, x));
    return h;
}

std::size_t generated_order(const FiniteGroup& G, const std::vector<Elem>& generators) {
    std::vector<bool> seen(G.order(), false);
    std::vector<Elem> queue{0};
    seen[0] = true;
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (Elem s : generators) {
            Elem c = G.mul(queue[i], s);
            if (!seen[c]) {
                seen[c] = true;
                queue.push_back(c);
            }
        }
    return queue.size();
}

std::vector<Elem> prune_generators(const FiniteGroup& G, const std::vector<Elem>& generators) {
    std::vector<Elem> kept;
    std::size_t current = 1;
    for (Elem s : generators) {
        kept.push_back(s);
        std::size_t o = generated_order(G, kept);
        if (o == current)
            kept.pop_back();
        else
            current = o;
    }
    return kept;
}

std::optional<std::pair<Elem, Elem>> find_generating_pair(const FiniteGroup& G) {
    for (Elem a = 1; a < G.order(); ++a)
        for (Elem b = a + 1; b < G.order(); ++b)
            if (generated_order(G, {a, b}) == G.order()) return std::make_pair(a, b);
    return std::nullopt;
}

Subgroup subgroup(const GroupPtr& G, const std::vector<Elem>& generators, std::string name) {
    std::vector<Elem> elems{0};
    std::vector<std::int64_t> local(G->order(), -1);
    local[0] = 0;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (Elem s : generators) {
            Elem c = G->mul(elems[i], s);
            if (local[c] < 0) {
                local[c] = static_cast<std::int64_t>(elems.size());
                elems.push_back(c);
            }
        }
    const std::size_t n = elems.size();
    std::vector<std::uint16_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            table[a * n + b] = static_cast<std::uint16_t>(local[G->mul(elems[a], elems[b])]);
    std::vector<Elem> gens;
    for (Elem s : generators) gens.push_back(static_cast<Elem>(local[s]));
    return {std::make_shared<FiniteGroup>(std::move(name), n, std::move(table), std::move(gens)), std::move(elems)};
}

GroupHom::GroupHom(GroupPtr source, GroupPtr target, std::vector<Elem> generator_images)
    : src_(std::move(source)), dst_(std::move(target)) {
    if (generator_images.size() != src_->generators().size())
        throw InvalidParameter("one image per generator is required");
    map_.assign(src_->order(), 0);
    for (std::size_t i = 1; i < src_->order(); ++i) {
        Elem g = src_->bfs_order()[i];
        map_[g] = dst_->mul(map_[src_->parent(g)], generator_images[src_->parent_generator(g)]);
    }
    check();
}

GroupHom GroupHom::from_map(GroupPtr source, GroupPtr target, std::vector<Elem> images) {
    if (images.size() != source->order()) throw InvalidParameter("element map has the wrong size");
    GroupHom f;
    f.src_ = std::move(source);
    f.dst_ = std::move(target);
    f.map_ = std::move(images);
    f.check();
    return f;
}

void GroupHom::check() const {
    const std::size_t n = src_->order();
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            if (map_[src_->mul(a, b)] != dst_->mul(map_[a], map_[b]))
                throw InvalidParameter("map " + src_->name() + " -> " + dst_->name() + " is not a homomorphism");
}

std::vector<Elem> GroupHom::kernel() const {
    std::vector<Elem> k;
    for (Elem g = 0; g < src_->order(); ++g)
        if (map_[g] == 0) k.push_back(g);
    return k;
}

bool GroupHom::is_injective() const { return kernel().size() == 1; }

bool GroupHom::is_surjective() const {
    std::vector<bool> hit(dst_->order(), false);
    for (Elem x : map_) hit[x] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::optional<GroupHom> find_isomorphism(const GroupPtr& A, const GroupPtr& B) {
    if (A->order() != B->order()) return std::nullopt;
    if (A->order() > 24) throw InvalidParameter("isomorphism search is limited to order 24");
    auto gens = prune_generators(*A, A->generators());
    auto A2 = std::make_shared<FiniteGroup>(A->with_generators(gens));
    std::vector<Elem> images(gens.size());
    std::optional<GroupHom> found;
    std::function<void(std::size_t)> search = [&](std::size_t i) {
        if (found) return;
        if (i == gens.size()) {
            try {
                GroupHom f(A2, B, images);
                if (f.is_injective()) found = GroupHom::from_map(A, B, f.images());
            } catch (const InvalidParameter&) {
            }
            return;
        }
        const auto want = A->element_order(gens[i]);
        for (Elem b = 0; b < B->order() && !found; ++b) {
            if (B->element_order(b) != want) continue;
            images[i] = b;
            search(i + 1);
        }
    };
    search(0);
    return found;
}

GroupPtr symmetric_group(int m) {
    if (m < 1 || m > 8) throw InvalidParameter("symmetric_group needs 1 <= m <= 8");
    std::vector<Perm> gens;
    if (m >= 2) {
        Perm t = identity_perm(m), c(m);
        std::swap(t[0], t[1]);
        for (int i = 0; i < m; ++i) c[i] = static_cast<std::uint8_t>((i + 1) % m);
        gens = {t, c};
    }
    auto G = FiniteGroup::from_permutations("S" + std::to_string(m), m, gens);
    return std::make_shared<FiniteGroup>(std::move(G));
}

SmallField::SmallField(int q) : q_(q) {
    if (q < 2 || q > 9) throw InvalidParameter("SmallField supports q <= 9");
    p_ = 0;
    for (int c = 2; c <= q; ++c)
        if (q % c == 0) {
            p_ = c;
            break;
        }
    f_ = 0;
    for (int r = q; r > 1; r /= p_) {
        if (r % p_ != 0) throw InvalidParameter("q = " + std::to_string(q) + " is not a prime power");
        ++f_;
    }
    auto digits = [&](int a) {
        std::vector<int> d(f_);
        for (int i = 0; i < f_; ++i, a /= p_) d[i] = a % p_;
        return d;
    };
    auto undigits = [&](const std::vector<int>& d) {
        int a = 0;
        for (int i = f_ - 1; i >= 0; --i) a = a * p_ + d[i];
        return a;
    };
    // smallest monic irreducible x^f + sum low[i] x^i: for f <= 3 no roots suffices
    std::vector<int> low(f_, 0);
    if (f_ > 1) {
        for (int idx = 0; idx < q; ++idx) {
            low = digits(idx);
            bool has_root = false;
            for (int x = 0; x < p_ && !has_root; ++x) {
                int v = 1;
                for (int i = 0; i < f_; ++i) v = v * x % p_;
                int xi = 1;
                for (int i = 0; i < f_; ++i, xi = xi * x % p_) v = (v + low[i] * xi) % p_;
                has_root = v == 0;
            }
            if (!has_root) break;
        }
    }
    add_.resize(q * q);
    mul_.resize(q * q);
    add_inv_.resize(q);
    for (int a = 0; a < q; ++a) {
        auto da = digits(a);
        std::vector<int> na(f_);
        for (int i = 0; i < f_; ++i) na[i] = (p_ - da[i]) % p_;
        add_inv_[a] = undigits(na);
        for (int b = 0; b < q; ++b) {
            auto db = digits(b);
            std::vector<int> s(f_);
            for (int i = 0; i < f_; ++i) s[i] = (da[i] + db[i]) % p_;
            add_[a * q + b] = undigits(s);
            std::vector<int> prod(2 * f_, 0);
            for (int i = 0; i < f_; ++i)
                for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            for (int k = 2 * f_ - 1; k >= f_; --k) {
                int c = prod[k];
                prod[k] = 0;
                for (int i = 0; i < f_; ++i) prod[k - f_ + i] = ((prod[k - f_ + i] - c * low[i]) % p_ + p_) % p_;
            }
            prod.resize(f_);
            mul_[a * q + b] = undigits(prod);
        }
    }
    for (int g = 1; g < q; ++g) {
        int x = g, ord = 1;
        while (x != 1) {
            x = mul(x, g);
            ++ord;
        }
        if (ord == q - 1) {
            primitive_ = g;
            break;
        }
    }
}

int SmallField::inv(int a) const {
    if (a == 0) throw NotAUnit("zero has no inverse in F_q");
    for (int b = 1; b < q_; ++b)
        if (mul(a, b) == 1) return b;
    throw NotAUnit("no inverse");
}

GroupPtr pgl2(int q) {
    SmallField F(q);
    const int inf = q;
    Perm shift(q + 1), scale(q + 1), invert(q + 1);
    for (int x = 0; x < q; ++x) {
        shift[x] = static_cast<std::uint8_t>(F.add(x, 1));
        scale[x] = static_cast<std::uint8_t>(F.mul(F.primitive(), x));
        invert[x] = static_cast<std::uint8_t>(x == 0 ? inf : F.inv(x));
    }
    shift[inf] = scale[inf] = static_cast<std::uint8_t>(inf);
    invert[inf] = 0;
    std::vector<Perm> gens;
    for (const auto& g : {shift, scale, invert})
        if (g != identity_perm(q + 1)) gens.push_back(g);
    auto G = std::make_shared<FiniteGroup>(
        FiniteGroup::from_permutations("PGL2(" + std::to_string(q) + ")", q + 1, gens));
    const std::size_t expected = static_cast<std::size_t>(q) * (q - 1) * (q + 1);
    if (G->order() != expected) throw InvalidParameter("PGL2 closure has the wrong order");
    // sharp 3-transitivity: the stabiliser of (0, 1, inf) is trivial
    for (Elem g = 1; g < G->order(); ++g) {
        const auto& pg = G->permutation(g);
        if (pg[0] == 0 && pg[1] == 1 && pg[inf] == inf) throw InvalidParameter("PGL2 action is not sharply 3-transitive");
    }
    return G;
}

GroupPtr twisted_frobenius_group(std::int64_t p) {
    if (!is_prime(p) || p > 7) throw InvalidParameter("twisted_frobenius_group needs a prime p <= 7");
    const std::size_t m = static_cast<std::size_t>(p * p - 1), n = 2 * m;
    std::vector<std::uint16_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t i1 = a % m, e1 = a / m, i2 = b % m, e2 = b / m;
            const std::size_t twist = e1 ? static_cast<std::size_t>(p) : 1;
            table[a * n + b] = static_cast<std::uint16_t>(((e1 + e2) % 2) * m + (i1 + twist * i2) % m);
        }
    return std::make_shared<FiniteGroup>("F" + std::to_string(p * p) + "*:G0", n, std::move(table),
                                         std::vector<Elem>{1, static_cast<Elem>(m)});
}

std::size_t orbit_count_triples(const FiniteGroup& G) {
    if (!G.is_permutation_group()) throw InvalidParameter("orbit count needs a permutation group");
    const std::size_t m = G.degree();
    UnionFind uf(m * m * m);
    std::size_t orbits = m * m * m;
    for (Elem s : G.generators()) {
        const auto& ps = G.permutation(s);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                for (std::size_t c = 0; c < m; ++c)
                    if (uf.unite((a * m + b) * m + c, (ps[a] * m + ps[b]) * m + ps[c])) --orbits;
    }
    return orbits;
}

// PModule

PModule::PModule(GroupPtr G, Zmod ring, std::vector<ResidueMatrix> generator_images)
    : G_(std::move(G)), ring_(ring) {
    if (generator_images.size() != G_->generators().size())
        throw InvalidParameter("one matrix per generator is required");
    rank_ = generator_images.empty() ? 0 : generator_images[0].rows();
    for (const auto& m : generator_images)
        if (!(m.ring() == ring_) || m.rows() != rank_ || m.cols() != rank_)
            throw InvalidParameter("generator matrices must be square of equal size over one ring");
    mats_.assign(G_->order(), ResidueMatrix::identity(ring_, rank_));
    for (std::size_t i = 1; i < G_->order(); ++i) {
        Elem g = G_->bfs_order()[i];
        mats_[g] = mats_[G_->parent(g)] * generator_images[G_->parent_generator(g)];
    }
    for (Elem g = 0; g < G_->order(); ++g)
        for (std::size_t s = 0; s < G_->generators().size(); ++s)
            if (!(mats_[g] * generator_images[s] == mats_[G_->mul(g, G_->generators()[s])]))
                throw InvalidParameter("generator matrices violate the relations of " + G_->name());
}

PModule PModule::from_elements(GroupPtr G, Zmod ring, std::vector<ResidueMatrix> element_images) {
    if (element_images.size() != G->order()) throw InvalidParameter("one matrix per element is required");
    std::vector<ResidueMatrix> gens;
    for (Elem s : G->generators()) gens.push_back(element_images[s]);
    PModule M(G, ring, std::move(gens));
    if (M.mats_ != element_images) throw InvalidParameter("element matrices are not multiplicative");
    return M;
}

PModule PModule::trivial(GroupPtr G, Zmod ring, std::size_t rank) {
    std::vector<ResidueMatrix> gens(G->generators().size(), ResidueMatrix::identity(ring, rank));
    return PModule(std::move(G), ring, std::move(gens));
}

std::vector<ResidueMatrix> PModule::generator_images() const {
    std::vector<ResidueMatrix> out;
    for (Elem s : G_->generators()) out.push_back(mats_[s]);
    return out;
}

PModule PModule::reduced(int precision) const {
    if (precision > ring_.N || precision < 1) throw InvalidParameter("can only reduce to a lower precision");
    PModule M = *this;
    M.ring_ = ring_.with_precision(precision);
    for (auto& m : M.mats_) m = m.reduced(precision);
    return M;
}

PModule PModule::inflate(const GroupHom& f) const {
    if (f.target().get() != G_.get()) throw InvalidParameter("inflation along a map into a different group");
    PModule M;
    M.G_ = f.source();
    M.ring_ = ring_;
    M.rank_ = rank_;
    M.mats_.reserve(M.G_->order());
    for (Elem h = 0; h < M.G_->order(); ++h) M.mats_.push_back(mats_[f(h)]);
    return M;
}

PModule PModule::restrict_to(const GroupPtr& H, const std::vector<Elem>& embedding) const {
    if (embedding.size() != H->order()) throw InvalidParameter("embedding has the wrong size");
    PModule M;
    M.G_ = H;
    M.ring_ = ring_;
    M.rank_ = rank_;
    for (Elem h = 0; h < H->order(); ++h) M.mats_.push_back(mats_[embedding[h]]);
    return M;
}

std::optional<std::pair<Elem, Elem>> PModule::first_defect_all_pairs() const {
    for (Elem a = 0; a < G_->order(); ++a)
        for (Elem b = 0; b < G_->order(); ++b)
            if (!(mats_[a] * mats_[b] == mats_[G_->mul(a, b)])) return std::make_pair(a, b);
    return std::nullopt;
}

std::uint64_t PModule::size() const {
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < rank_; ++i) {
        if (s > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(ring_.q)) return 0;
        s *= static_cast<std::uint64_t>(ring_.q);
    }
    return s;
}

std::vector<std::int64_t> PModule::element(std::uint64_t index) const {
    std::vector<std::int64_t> v(rank_);
    for (std::size_t i = 0; i < rank_; ++i, index /= static_cast<std::uint64_t>(ring_.q))
        v[i] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(ring_.q));
    return v;
}

std::uint64_t PModule::index(std::span<const std::int64_t> v) const {
    std::uint64_t idx = 0;
    for (std::size_t i = rank_; i-- > 0;) idx = idx * static_cast<std::uint64_t>(ring_.q) + ring_.reduce(v[i]);
    return idx;
}

SemidirectProduct semidirect_product(const PModule& K, std::string name) {
    const auto& G = K.group();
    const std::uint64_t nK = K.size();
    const std::size_t nG = G->order();
    if (nK == 0 || nK * nG > kTableLimit) throw InvalidParameter("semidirect product exceeds the table limit");
    const std::size_t n = static_cast<std::size_t>(nK) * nG;

    std::vector<std::vector<std::int64_t>> coords(nK);
    for (std::uint64_t k = 0; k < nK; ++k) coords[k] = K.element(k);
    std::vector<std::uint32_t> act(nG * nK), add(nK * nK);
    for (Elem g = 0; g < nG; ++g)
        for (std::uint64_t k = 0; k < nK; ++k) act[g * nK + k] = static_cast<std::uint32_t>(K.index(K(g).apply(coords[k])));
    for (std::uint64_t a = 0; a < nK; ++a)
        for (std::uint64_t b = 0; b < nK; ++b) {
            std::vector<std::int64_t> s(K.rank());
            for (std::size_t i = 0; i < K.rank(); ++i) s[i] = coords[a][i] + coords[b][i];
            add[a * nK + b] = static_cast<std::uint32_t>(K.index(s));
        }
    std::vector<std::uint16_t> table(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t k1 = x / nG, g1 = x % nG;
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t k2 = y / nG, g2 = y % nG;
            table[x * n + y] = static_cast<std::uint16_t>(add[k1 * nK + act[g1 * nK + k2]] * nG + G->mul(g1, g2));
        }
    }
    std::vector<Elem> gens;
    for (Elem s : G->generators()) gens.push_back(s);
    for (std::size_t i = 0; i < K.rank(); ++i) {
        std::vector<std::int64_t> e(K.rank(), 0);
        e[i] = 1;
        gens.push_back(static_cast<Elem>(K.index(e) * nG));
    }
    SemidirectProduct sd;
    sd.gamma = std::make_shared<FiniteGroup>(std::move(name), n, std::move(table), std::move(gens));
    sd.K = K;
    std::vector<Elem> q(n), sec(nG);
    for (std::size_t x = 0; x < n; ++x) q[x] = static_cast<Elem>(x % nG);
    for (Elem g = 0; g < nG; ++g) sec[g] = g;
    sd.quotient = GroupHom::from_map(sd.gamma, G, std::move(q));
    sd.section = GroupHom::from_map(G, sd.gamma, std::move(sec));
    for (std::uint64_t k = 0; k < nK; ++k) sd.kernel.push_back(static_cast<Elem>(k * nG));
    return sd;
}

}  // namespace defring
