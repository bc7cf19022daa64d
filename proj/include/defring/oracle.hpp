#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force deformation functor on small Artinian rings.
 *
 * Lifts of rho_bar over A are enumerated on a generating set of Gamma and
 * accepted when the extension along normal words respects every product
 * g * s. Strict equivalence classes are orbits under conjugation by
 * 1 + M_d(m_A). Nothing here uses cohomology, so the counts are an
 * independent check of the certificate.
 */

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "defring/certify.hpp"

namespace defring {

/// Search-space limit; DEFRING_GUARD_OVERRIDE replaces the default 1e8.
std::uint64_t enumeration_guard();

class GuardExceeded : public InvalidParameter {
public:
    using InvalidParameter::InvalidParameter;
};
class PrecisionInsufficient : public InvalidParameter {
public:
    using InvalidParameter::InvalidParameter;
};

/// Matrices over a small algebra are stored as element indices, row-major,
/// one block of d^2 entries per generator.
using FlatLift = std::vector<std::uint16_t>;

struct LiftSet {
    AlgebraPtr A;
    GroupPtr group;  ///< Gamma with the enumeration generators
    std::size_t d = 0;
    std::uint64_t search_space = 0;
    std::vector<FlatLift> lifts;  ///< sorted

    std::vector<AlgMatrix> generator_images(std::size_t i) const;
};
/// `generators` defaults to the first generating pair of Gamma.
LiftSet enumerate_lifts(const Representation& rho_bar, const AlgebraPtr& A, std::vector<Elem> generators = {},
                        unsigned threads = 0);

struct DeformationClassSet {
    std::vector<std::size_t> representatives;  ///< lift index of each class (its lexicographic minimum)
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> class_of;  ///< per lift
    std::size_t lift_count = 0;
    std::size_t conjugator_count = 0;  ///< |1 + M_d(m_A)|
    std::size_t class_count() const { return representatives.size(); }
};
DeformationClassSet deformation_classes(const LiftSet& lifts);

struct FunctorReport {
    std::string instance, ring;
    std::size_t lift_count = 0, class_count = 0, hom_count = 0;
    std::vector<std::optional<std::size_t>> hom_classes;  ///< class of the pushforward along each hom
    bool injective = false, surjective = false;
    bool bijective() const { return injective && surjective; }
};
/// Pushes rho_R forward along every hom R -> A (t -> x) and locates the
/// result among the deformation classes.
FunctorReport functor_compare(const Instance& inst, const RhoR& rho_R, const AlgebraPtr& A, unsigned threads = 0);

}  // namespace defring
