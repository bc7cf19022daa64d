#pragma once

/**
 * @file modrep.hpp
 * @brief Matrix representations over Z/p^N and over local algebras, the
 * concrete modules of the two instance families, and equivariant solvers.
 */

#include <optional>
#include <vector>

#include "defring/galois_ring.hpp"
#include "defring/groups.hpp"
#include "defring/howell.hpp"
#include "defring/local_algebra.hpp"

namespace defring {

using Representation = PModule;

/// rho(g)^{-T}: the contragredient.
Representation dual_rep(const Representation& V);
Representation tensor_rep(const Representation& X, const Representation& Y);
/// End(V) with g.f = rho(g) f rho(g)^{-1}, coordinates = row-major entries.
Representation end_rep(const Representation& V);

/// Permutation module N of a permutation group on d+1 points, the trivial
/// line T spanned by the sum of the basis, and V with basis b_i - b_{i+1}.
struct StandardModules {
    Representation N, T, V;
    ResidueMatrix incl_V;  ///< (d+1) x d, columns b_j - b_{j+1}
    ResidueMatrix proj_V;  ///< d x (d+1), coordinates of the V-component
    ResidueMatrix idem_T;  ///< (d+1) x (d+1) idempotent onto T
    ResidueMatrix idem_V;  ///< (d+1) x (d+1) idempotent onto V
};
/// Requires p not dividing d+1.
StandardModules standard_perm_rep(const GroupPtr& G, Zmod ring);
/// The lattice V alone; valid for every p.
Representation difference_rep(const GroupPtr& G, Zmod ring);

/// twisted_frobenius_group(p) acting on GR(p^N, 2): zeta by multiplication
/// with the Teichmuller generator, sigma by Frobenius.
Representation galois_module_rep(std::int64_t p, int N);

/// Equivariant maps X -> Y as matrices (rank Y x rank X).
struct EquivariantHomSpace {
    std::vector<ResidueMatrix> basis;  ///< Howell generators, unvectorised
    std::vector<std::int64_t> invariant_factors;
    std::size_t dim() const { return basis.size(); }
};
/// Solves rho_Y(s) H = H rho_X(s) over the generators, then checks every
/// basis element on every group element.
EquivariantHomSpace hom_space(const Representation& X, const Representation& Y);

/// Rank of the fixed submodule M^G over F_p.
std::size_t invariants_dim(const Representation& M);

struct HigmanResult {
    bool projective = false;
    std::optional<ResidueMatrix> witness;  ///< f with sum_g g f g^{-1} = id
};
/// Relative trace criterion over F_p.
HigmanResult is_projective_higman(const Representation& V);

/// Lifts a representation over F_p to Z/p^N one precision at a time by
/// solving for generator corrections over F_p. Throws when a level has no
/// solution.
Representation hensel_lift_rep(const Representation& rho_bar, int N);

/// D_{ij} (1 <= i, j <= d) and x_1..x_d in Mat_{d+1}, integral entries read
/// in the given ring, with the admissibility check on (d, p).
struct XMatrices {
    std::size_t d = 0;
    std::vector<ResidueMatrix> D;  ///< D[(i-1) d + (j-1)]
    std::vector<ResidueMatrix> x;  ///< x[j-1]
};
bool standard_admissible(int d, std::int64_t p);
XMatrices x_matrices(int d, Zmod ring);
/// Restriction of X in Mat_{d+1} (preserving V, killing T) to End(V) in
/// the b_i - b_{i+1} basis.
ResidueMatrix restrict_to_V(const ResidueMatrix& X);

/// Group of the standard family: S_{d+1} when d < p-1, PGL_2(F_d) when d
/// is a power of p.
GroupPtr standard_group(int d, std::int64_t p);

/// The twisted family: G = twisted_frobenius_group(p), V_W over Z/p^N,
/// K = GR(p^n, 2) with zeta acting by zeta^{1-p} and sigma by Frobenius,
/// and the explicit map alpha(b) = mult(b) o Frobenius into End(V_W) mod p^n.
struct TwistedModules {
    GroupPtr G;
    Representation V_W;
    Representation K;
    ResidueMatrix alpha;  ///< 4 x 2 over Z/p^n: coordinates of alpha(e_i)
};
TwistedModules twisted_modules(std::int64_t p, int n, int N);

/// Decomposition of End(V) over F_p for the twisted family into the
/// Frobenius-semilinear part V' = Im(Z - 1) and its complement ker(Z - 1),
/// Z the action of zeta; both spans as Howell bases of row vectors.
struct TwistedDecomposition {
    HowellBasis v_prime, complement;
    ResidueMatrix idempotent;  ///< projector of End(V) onto the complement
    bool complement_is_regular_G0 = false;
};
TwistedDecomposition twisted_decomposition(std::int64_t p);

/// A representation over a finite local algebra, stored per element.
class AlgRepresentation {
public:
    AlgRepresentation() = default;
    /// From generator images, checked on every product g * s.
    AlgRepresentation(GroupPtr G, AlgebraPtr A, std::vector<AlgMatrix> generator_images);
    static AlgRepresentation from_elements(GroupPtr G, AlgebraPtr A, std::vector<AlgMatrix> element_images);
    /// Stores element images as given; follow with first_defect_all_pairs.
    static AlgRepresentation unverified(GroupPtr G, AlgebraPtr A, std::vector<AlgMatrix> element_images);

    const GroupPtr& group() const { return G_; }
    const AlgebraPtr& algebra() const { return A_; }
    std::size_t dim() const { return d_; }
    const AlgMatrix& operator()(Elem g) const { return mats_[g]; }
    const std::vector<AlgMatrix>& matrices() const { return mats_; }

    /// rho(a) rho(b) = rho(ab) over all pairs, split across threads; the
    /// lowest failing a is reported.
    std::optional<std::pair<Elem, Elem>> first_defect_all_pairs(unsigned threads = 0) const;
    /// Elements acting as the identity.
    std::vector<Elem> kernel() const;

private:
    GroupPtr G_;
    AlgebraPtr A_;
    std::size_t d_ = 0;
    std::vector<AlgMatrix> mats_;
};

/// Entrywise image of an integral matrix under W -> A.
AlgMatrix to_algebra(const AlgebraPtr& A, const ResidueMatrix& m);
/// 1 + t X in GL_d(A) where t is the basis element e_1 of A.
AlgMatrix one_plus_t(const AlgebraPtr& A, const ResidueMatrix& X);

}  // namespace defring
