#pragma once

/**
 * @file groups.hpp
 * @brief Finite groups by multiplication table, the group families used for
 * deformation certificates, and modules over Z/p^n carrying a group action.
 *
 * Elements are indices 0..order-1 with the identity at 0. Every group carries
 * a generator list and a BFS spanning tree (child = parent * generator) that
 * fixes a normal word for each element. Groups above kTableLimit elements
 * must be permutation groups; products are then computed on demand.
 */

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "defring/residue.hpp"

namespace defring {

using Elem = std::uint32_t;
using Perm = std::vector<std::uint8_t>;

inline constexpr std::size_t kTableLimit = 10000;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
public:
    /// Table constructor. table[a * order + b] = ab, identity at index 0.
    FiniteGroup(std::string name, std::size_t order, std::vector<std::uint16_t> table, std::vector<Elem> generators);

    /// Closure of permutations of {0..degree-1}; element 0 is the identity
    /// and the remaining elements are numbered in BFS discovery order.
    static FiniteGroup from_permutations(std::string name, std::size_t degree, const std::vector<Perm>& generators);

    const std::string& name() const { return name_; }
    std::size_t order() const { return order_; }
    Elem identity() const { return 0; }
    bool has_table() const { return !table_.empty(); }

    Elem mul(Elem a, Elem b) const {
        return has_table() ? table_[static_cast<std::size_t>(a) * order_ + b] : lazy_mul(a, b);
    }
    Elem inv(Elem a) const { return inverse_[a]; }
    Elem pow(Elem a, std::uint64_t e) const;
    Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
    std::uint64_t element_order(Elem a) const;

    const std::vector<Elem>& generators() const { return gens_; }
    /// Elements in BFS order from the identity.
    const std::vector<Elem>& bfs_order() const { return bfs_; }
    /// For g != 1, g = parent(g) * generators()[parent_generator(g)].
    Elem parent(Elem g) const { return parent_[g]; }
    std::size_t parent_generator(Elem g) const { return parent_gen_[g]; }
    /// Normal word of g as generator indices (left to right).
    std::vector<std::size_t> word(Elem g) const;

    /// Permutation of g when constructed from permutations.
    bool is_permutation_group() const { return degree_ > 0; }
    std::size_t degree() const { return degree_; }
    const Perm& permutation(Elem g) const { return perms_.at(g); }
    std::optional<Elem> find_permutation(const Perm& p) const;

    /// Same elements and table, different generators and words.
    FiniteGroup with_generators(std::vector<Elem> generators, std::string name = {}) const;

    /// Identity, inverses and associativity; associativity is exhaustive up
    /// to order 200 and uses a fixed pseudo-random sample above.
    void validate() const;

    /// FNV-1a over the table rows of the generators (stable across runs).
    std::uint64_t table_hash() const;

private:
    FiniteGroup() = default;
    void build_words();
    Elem lazy_mul(Elem a, Elem b) const;

    std::string name_;
    std::size_t order_ = 0;
    std::vector<std::uint16_t> table_;
    std::vector<Elem> inverse_;
    std::vector<Elem> gens_;
    std::vector<Elem> bfs_;
    std::vector<Elem> parent_;
    std::vector<std::size_t> parent_gen_;

    std::size_t degree_ = 0;
    std::vector<Perm> perms_;
    std::unordered_map<std::string, Elem> perm_index_;
};

/// Subgroup generated by `generators` of G, with embedding into G.
struct Subgroup {
    GroupPtr group;
    std::vector<Elem> embedding;  // subgroup index -> G index
};
Subgroup subgroup(const GroupPtr& G, const std::vector<Elem>& generators, std::string name);

/// Drops generators that lie in the subgroup generated by the earlier ones.
std::vector<Elem> prune_generators(const FiniteGroup& G, const std::vector<Elem>& generators);
/// Lexicographically first pair (a, b) with a < b generating G, if any.
std::optional<std::pair<Elem, Elem>> find_generating_pair(const FiniteGroup& G);
/// Size of the subgroup generated by `generators`.
std::size_t generated_order(const FiniteGroup& G, const std::vector<Elem>& generators);

/// A homomorphism given by generator images, extended along normal words.
class GroupHom {
public:
    GroupHom() = default;
    /// Throws InvalidParameter when the images do not define a homomorphism
    /// (checked on all pairs of source elements).
    GroupHom(GroupPtr source, GroupPtr target, std::vector<Elem> generator_images);
    /// From a full element map; checked on all pairs.
    static GroupHom from_map(GroupPtr source, GroupPtr target, std::vector<Elem> images);

    const GroupPtr& source() const { return src_; }
    const GroupPtr& target() const { return dst_; }
    Elem operator()(Elem g) const { return map_[g]; }
    const std::vector<Elem>& images() const { return map_; }
    std::vector<Elem> kernel() const;
    bool is_injective() const;
    bool is_surjective() const;

private:
    void check() const;
    GroupPtr src_, dst_;
    std::vector<Elem> map_;
};

/// Backtracking over generator images; only for |A|, |B| <= 24.
std::optional<GroupHom> find_isomorphism(const GroupPtr& A, const GroupPtr& B);

/// S_m on {0..m-1}, generated by (0 1) and (0 1 ... m-1). m <= 8.
GroupPtr symmetric_group(int m);

/// F_q for q = p^f <= 9: elements are coefficient vectors in base p,
/// modulo the smallest monic irreducible of degree f.
class SmallField {
public:
    explicit SmallField(int q);
    int q() const { return q_; }
    int p() const { return p_; }
    int add(int a, int b) const { return add_[a * q_ + b]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int neg(int a) const { return add_inv_[a]; }
    int inv(int a) const;
    /// Smallest element of multiplicative order q - 1.
    int primitive() const { return primitive_; }

private:
    int q_, p_, f_;
    std::vector<int> add_, mul_, add_inv_;
    int primitive_ = 1;
};

/// PGL_2(F_q) as a permutation group on P^1(F_q) = {0..q-1} u {inf = q},
/// generated by z+1, g z (g primitive) and 1/z; trivial maps are skipped.
/// Faithfulness and sharp 3-transitivity are verified.
GroupPtr pgl2(int q);

/// F_{p^2}^* x| G_0: element zeta^i sigma^e has index e (p^2-1) + i and
/// (zeta^i sigma^e)(zeta^j sigma^f) = zeta^{i + p^e j} sigma^{e+f}.
/// Generators are zeta then sigma.
GroupPtr twisted_frobenius_group(std::int64_t p);

/// Number of orbits of G on ordered triples of points (G a permutation group).
std::size_t orbit_count_triples(const FiniteGroup& G);

/// A free Z/p^n-module of finite rank with a linear action of a finite group.
/// The action is stored for every element, computed from the generator images
/// along the BFS tree and checked against every product g * s with s a
/// generator, which forces multiplicativity on all pairs.
class PModule {
public:
    PModule() = default;
    PModule(GroupPtr G, Zmod ring, std::vector<ResidueMatrix> generator_images);
    /// From an action on every element (verified the same way).
    static PModule from_elements(GroupPtr G, Zmod ring, std::vector<ResidueMatrix> element_images);
    static PModule trivial(GroupPtr G, Zmod ring, std::size_t rank);

    const GroupPtr& group() const { return G_; }
    const Zmod& ring() const { return ring_; }
    std::size_t rank() const { return rank_; }
    const ResidueMatrix& operator()(Elem g) const { return mats_[g]; }
    const std::vector<ResidueMatrix>& matrices() const { return mats_; }
    std::vector<ResidueMatrix> generator_images() const;

    /// The module mod p^m for m <= n.
    PModule reduced(int precision) const;
    /// Pull back along a homomorphism H -> group(). Not re-verified.
    PModule inflate(const GroupHom& f) const;
    /// Restrict along an injective element map H -> group(). Not re-verified.
    PModule restrict_to(const GroupPtr& H, const std::vector<Elem>& embedding) const;

    /// rho(a) rho(b) = rho(ab) for all pairs; returns the first failure.
    std::optional<std::pair<Elem, Elem>> first_defect_all_pairs() const;

    /// Cardinality p^{n rank}, or 0 when above 2^62.
    std::uint64_t size() const;
    /// Coordinates of index i (base q digits, coordinate 0 least significant).
    std::vector<std::int64_t> element(std::uint64_t index) const;
    std::uint64_t index(std::span<const std::int64_t> v) const;

private:
    GroupPtr G_;
    Zmod ring_;
    std::size_t rank_ = 0;
    std::vector<ResidueMatrix> mats_;
};

/// Gamma = K x| G together with its structure maps. K is stored at index
/// kidx * |G| + g where kidx is the base-q index of the K coordinates.
struct SemidirectProduct {
    GroupPtr gamma;
    PModule K;
    GroupHom quotient;  // Gamma -> G
    GroupHom section;   // G -> Gamma, g -> (0, g)
    std::vector<Elem> kernel;  // kidx -> element (k, 1)

    std::uint64_t k_index(Elem x) const { return x / K.group()->order(); }
    Elem g_part(Elem x) const { return static_cast<Elem>(x % K.group()->order()); }
    std::vector<std::int64_t> k_coords(Elem x) const { return K.element(k_index(x)); }
    Elem make(std::uint64_t kidx, Elem g) const {
        return static_cast<Elem>(kidx * K.group()->order() + g);
    }
};

/// (k1, g1)(k2, g2) = (k1 + g1 k2, g1 g2). Generators: (0, s) for each
/// generator s of G, then (e_i, 1). |K| |G| must not exceed kTableLimit.
SemidirectProduct semidirect_product(const PModule& K, std::string name);

}  // namespace defring
