#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "leekit/abelian.hpp"
#include "leekit/lee.hpp"

namespace leekit {

/// Homomorphism Z^n -> G, determined by the images of the standard basis.
struct GroupHomomorphism {
    int source_dim = 0;
    AbelianGroup target;
    std::vector<GroupElement> images;
};

GroupHomomorphism make_homomorphism(int source_dim, AbelianGroup target,
                                    std::vector<GroupElement> images);

/// phi(x) = sum x_i * a_i.
GroupElement hom_apply(const GroupHomomorphism& phi, const LatticePoint& x);

/// Outcome of restricting phi to a shape: either a bijection onto G or a
/// witnessed collision.
struct BijectionResult {
    bool bijective = false;
    std::optional<std::pair<LatticePoint, LatticePoint>> collision;
};

/// True iff phi restricted to V hits |G| pairwise distinct values.
/// |V| != |G| is a structural error (std::invalid_argument), not `false`.
BijectionResult bijection_check(const GroupHomomorphism& phi, const LeeShape& v);

/// Independent reformulation of the same criterion: no difference of two
/// distinct points of V may lie in ker(phi).
bool packing_crosscheck(const GroupHomomorphism& phi, const LeeShape& v);

/// True when the images generate the whole target group.
bool is_surjective(const GroupHomomorphism& phi);

/// Generator matrix of ker(phi) in Hermite normal form (rows generate).
struct CodeLattice {
    std::vector<std::vector<std::int64_t>> basis;
    std::int64_t determinant = 0;
};

/// Requires phi surjective (std::invalid_argument otherwise); the HNF
/// determinant then equals |G|.
CodeLattice kernel_basis(const GroupHomomorphism& phi);

/// Row-style Hermite normal form of a full-rank square integer matrix:
/// upper triangular, positive diagonal, entries above a pivot reduced into
/// [0, pivot). Exposed for direct testing.
std::vector<std::vector<std::int64_t>> hermite_normal_form(
    std::vector<std::vector<std::int64_t>> rows);

}  // namespace leekit
