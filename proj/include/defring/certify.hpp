#pragma once

/**
 * @file certify.hpp
 * @brief Finite certificates that a universal deformation ring is
 * W[[t]]/(p^n t, t^2) and that Gamma acts faithfully on the universal lift.
 *
 * An instance is a split extension Gamma = K x| G with V_W a projective
 * W G-lattice and K a finite G-module over Z/p^n. The certificate checks
 *   (a) dim Hom_G(K / pK, End V) = 1,
 *   (b) an injective equivariant alpha: K -> End(V_W) mod p^n whose reduced
 *       image does not commute (or, for p = 2, n = 1, is not of the form
 *       alpha(g)^2 = a alpha(g)),
 * then builds rho_R(k, g) = (1 + t alpha(k)) rho_W(g) over R and checks it
 * exhaustively, and compares the tangent dimension with H^1(Gamma, End V).
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "defring/cohomology.hpp"
#include "defring/modrep.hpp"

namespace defring {

enum class Family { twisted, standard };
/// Negative controls replace K by a module whose alpha-image commutes:
/// kgalois is GR(p^n, 2) with zeta acting trivially, kscalar is Z/p^n with
/// trivial action and alpha(1) = id.
enum class Variant { none, kgalois, kscalar };

struct InstanceSpec {
    Family family = Family::twisted;
    Variant variant = Variant::none;
    std::int64_t p = 2;
    int n = 1;
    int d = 0;  ///< standard family only
    int N = 0;  ///< W truncation; 0 means n + 2

    int precision() const { return N > 0 ? N : n + 2; }
    /// Canonical name: twisted-p2n1, standard-d2p5, twisted-p3n1-kgalois.
    std::string name() const;
};
/// Parses a canonical name; throws InvalidParameter.
InstanceSpec parse_instance(const std::string& name, int N = 0);
/// Throws InvalidParameter naming the violated condition.
void check_admissible(const InstanceSpec& spec);

struct Instance {
    InstanceSpec spec;
    GroupPtr G;
    Representation V_W;   ///< over Z/p^N
    Representation K;     ///< over Z/p^n
    Representation M;     ///< End(V) over F_p
    Representation M_Wn;  ///< End(V_W) mod p^n
    SemidirectProduct sd;
    ResidueMatrix reference_alpha;  ///< the explicit map of the construction

    std::size_t d() const { return V_W.rank(); }
    /// rho_bar inflated to Gamma.
    Representation rho_bar() const;
};
Instance build_instance(const InstanceSpec& spec);

/// "Z_2[[t]]/(2t, t^2)" with unicode subscripts and superscripts.
std::string ring_label(std::int64_t p, int n);

struct ClauseP2N1 {
    /// violators[a]: coordinates of the first g in K with alpha(g)^2 != a alpha(g).
    std::vector<std::optional<Vec>> violators;
    bool pass = false;
};

struct AlphaMap {
    ResidueMatrix matrix;  ///< d^2 x rank K over Z/p^n
    std::size_t generator_index = 0;
    bool equivariant = false;
    std::optional<std::pair<Elem, std::size_t>> equivariance_defect;  ///< (g, K basis index)
    bool injective = false;
    bool nonzero_mod_p = false;
    std::optional<std::pair<Vec, Vec>> witness;
    std::optional<ClauseP2N1> clause_p2n1;
    std::string failure;

    bool bullet1() const { return witness.has_value(); }
    bool bullet2() const { return clause_p2n1 && clause_p2n1->pass; }
    bool pass() const { return failure.empty(); }
    /// alpha(k) as a d x d matrix over Z/p^n.
    ResidueMatrix at(const Vec& k) const;
};
/// Checks a given alpha; the witness search runs over pairs of K basis
/// vectors, which decides commutativity of the image by bilinearity.
AlphaMap evaluate_alpha(const Instance& inst, const ResidueMatrix& alpha);
/// The first Howell generator of Hom_G(K, End(V_W) mod p^n) that is injective.
AlphaMap find_alpha(const Instance& inst);

struct OrderChecks {
    bool kernel_identity = false;  ///< (1 + t alpha(k))^{p^n} = 1 for every k
    bool orders_match = false;     ///< ord rho_R(k) = ord k for every k
    /// (order in K, order of the image) with multiplicities.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> order_pairs;
    std::vector<std::size_t> order_counts;
};

struct RhoR {
    AlgebraPtr R;
    AlgRepresentation rho;
    std::optional<std::pair<Elem, Elem>> defect;
    bool reduces_to_rho_bar = false;
    bool specializes_to_rho_W = false;
    std::vector<Elem> kernel;
    OrderChecks orders;

    bool homomorphism() const { return !defect.has_value(); }
    bool faithful() const { return kernel.size() == 1; }
    bool pass() const {
        return homomorphism() && reduces_to_rho_bar && specializes_to_rho_W && faithful() && orders.kernel_identity &&
               orders.orders_match;
    }
};
RhoR build_rho_R(const Instance& inst, const ResidueMatrix& alpha, unsigned threads = 0);

enum class LiftVariant { exponential, cyclic, p2n1 };
std::string to_string(LiftVariant v);

struct KernelLift {
    LiftVariant variant = LiftVariant::exponential;
    AlgebraPtr ring;
    std::optional<std::int64_t> a;  ///< p = 2, n = 1: alpha(g)^2 = a alpha(g)
    std::vector<AlgMatrix> images;  ///< indexed by K element index
    bool homomorphism = false;
    bool lifts_rho_R = false;
    bool pass() const { return homomorphism && lifts_rho_R; }
};
/// The lift of rho_R restricted to K over R' that exists when the reduced
/// image of alpha commutes: the exponential for p odd, products of
/// 1 + t alpha(e_i) over a basis for p = 2 (over R'_{2,1}(a) when n = 1).
/// Throws InvalidParameter when the precondition fails.
KernelLift exp_lift_on_kernel(const Representation& K, const ResidueMatrix& alpha, int N);

enum class Verdict { certified, refuted };

struct Certificate {
    InstanceSpec spec;
    std::size_t gamma_order = 0;
    std::string ring;
    std::size_t condition_a_dim = 0;
    bool condition_a = false;
    AlphaMap alpha;
    std::optional<RhoR> rho_R;
    std::size_t tangent_dim = 0;
    std::size_t hom_invariants = 0;
    bool tangent = false;
    Verdict verdict = Verdict::refuted;
    std::string failed_stage;
};

struct CertifyOptions {
    unsigned threads = 0;
    /// Use this alpha instead of searching the hom space.
    std::optional<ResidueMatrix> alpha;
};
Certificate certify_instance(const Instance& inst, const CertifyOptions& opts = {});

}  // namespace defring
