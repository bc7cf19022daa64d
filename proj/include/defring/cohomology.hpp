#pragma once

/**
 * @file cohomology.hpp
 * @brief Group cohomology of finite groups with F_p-module coefficients.
 *
 * H^1 is computed from crossed homomorphisms f(gh) = f(g) + g f(h), which
 * are determined by their values on generators. H^2 is reduced to H^1 by
 * dimension shifting through the coinduced module Map(G, M). The normalized
 * bar complex is kept for small groups as an independent cross-check and for
 * testing explicit 2-cochains.
 */

#include <optional>
#include <vector>

#include "defring/groups.hpp"

namespace defring {

/// dim_F_p H^1(G, M). M must have F_p coefficients.
std::size_t h1_dim(const PModule& M);
/// dim_F_p H^2(G, M) via H^2(G, M) = H^1(G, Map(G, M) / M).
/// Requires |G| (|G| - 1) rank(M) <= 2e4.
std::size_t h2_dim(const PModule& M);
/// dim Hom_G(K / pK, M).
std::size_t hom_invariants_dim(const PModule& K, const PModule& M);

/// Normalized bar cochains C^i = maps (G \ 1)^i -> M, degrees 0..3.
/// Coordinates of a cochain are ordered by (tuple of non-identity elements
/// in lexicographic order, module coordinate).
class BarComplex {
public:
    /// Requires |G|^3 rank(M) <= 1e7.
    explicit BarComplex(PModule M);

    const PModule& module() const { return M_; }
    std::size_t cochain_dim(int degree) const;
    /// Image of a cochain under the coboundary d^degree (degree 0..2).
    std::vector<std::int64_t> coboundary(int degree, const std::vector<std::int64_t>& cochain) const;
    std::size_t coboundary_rank(int degree) const;
    /// dim H^degree for degree 0..2.
    std::size_t cohomology_dim(int degree) const;

    bool is_cocycle(const std::vector<std::int64_t>& c2) const;
    bool is_coboundary(const std::vector<std::int64_t>& c2) const;
    /// Coordinate vector of a 2-cochain given as a function of (g, h).
    std::vector<std::int64_t> cochain2(const std::function<std::vector<std::int64_t>(Elem, Elem)>& f) const;

private:
    std::size_t position(Elem g) const { return g - 1; }
    PModule M_;
    std::size_t n1_;  // |G| - 1
};

/// The additive group (Z/p)^2 as a FiniteGroup: index u1 + p u2.
GroupPtr elementary_abelian_rank2(std::int64_t p);

struct WedgeReport {
    std::int64_t p = 0;
    bool alternating = false;
    bool cocycle = false;
    bool coboundary = false;
    /// Set when an action was supplied: c(gu, gv) = c(u, v) for every matrix.
    std::optional<bool> invariant;
    /// Every supplied matrix has determinant 1.
    std::optional<bool> determinant_one;
    /// For p = 2 the form is symmetric and non-vanishing of the class cannot
    /// be argued from antisymmetry.
    bool inconclusive = false;
};
/// c((u1,u2),(v1,v2)) = u1 v2 - u2 v1 on K = (Z/p)^2 with trivial F_p
/// coefficients. `action` are matrices over F_p acting on K.
WedgeReport wedge_cocycle(std::int64_t p, const std::vector<ResidueMatrix>& action = {});

}  // namespace defring
