#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leekit/abelian.hpp"
#include "leekit/groupring.hpp"
#include "leekit/tiling.hpp"

namespace leekit {

/// Candidate for the diameter-6 criterion: a 2n-element inverse-closed
/// subset T of an abelian group of order 2n^2+1 whose square satisfies
/// T^2 = 2H - T^(2) + (2n-2)e. A verified witness is equivalent to a
/// linear diameter-6 perfect Lee code in dimension n.
struct Witness {
    std::int64_t n = 0;
    AbelianGroup home;
    std::vector<GroupElement> elements;  // sorted, duplicate-free
};

/// Sorts, deduplicates and checks membership. Does not verify conditions.
Witness make_witness(std::int64_t n, AbelianGroup home, std::vector<GroupElement> elements);

struct ConditionReport {
    bool passed = false;
    std::string detail;
};

struct WitnessVerdict {
    ConditionReport cardinality;      // |T| = 2n
    ConditionReport inverse_closed;   // T = T^(-1), identity excluded
    ConditionReport square_identity;  // T^2 = 2H - T^(2) + (2n-2)e
    bool ok() const {
        return cardinality.passed && inverse_closed.passed && square_identity.passed;
    }
};

/// Checks the three defining conditions. |home| != 2n^2+1 or n < 3 is a
/// structural error (std::invalid_argument), not a failed verdict.
WitnessVerdict verify_witness(const Witness& w);

/// The dimension-11 construction: T is the order-22 subgroup of the
/// multiplicative group of GF(3^5), read additively in [3,3,3,3,3].
struct Dpl11Construction {
    std::vector<int> modulus;          // ascending GF(3) coefficients, degree 5
    GroupElement primitive_element;    // least field element of order 242
    int exponent_step = 11;
    Witness witness;
};

Dpl11Construction construct_dpl11_detailed();
Witness construct_dpl11();

/// The dimension-3 witness over [19]; the lexicographically least witness
/// found by exhaustive search, shipped as a verified constant.
Witness construct_dpl3();

/// One representative per inverse pair (the lexicographically smaller
/// member), in increasing order. Throws when T is not inverse-closed or
/// contains a self-inverse element (impossible in odd-order groups).
std::vector<GroupElement> pair_representatives(const Witness& w);

/// Lifts a verified witness to a homomorphism Z^n -> Z_2 x H whose
/// restriction to DS_{n,2}(0, e_1) is a bijection. The bijection check is
/// always run; failure throws std::runtime_error.
GroupHomomorphism lift_to_code(const Witness& w);

struct CharacterScanResult {
    bool all_nonzero = false;
    std::int64_t characters_checked = 0;
    std::optional<Character> vanishing;
};

/// Exact scan of all nontrivial character sums over an arbitrary subset.
CharacterScanResult character_scan(const AbelianGroup& home,
                                   const std::vector<GroupElement>& set);

/// Scan specialized to a witness; every valid witness passes.
CharacterScanResult character_nonvanishing(const Witness& w);

struct IdentityCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// The exact group-ring identities every verified witness satisfies:
/// the square identity, the cube and fifth-power expansions of the
/// products with the doubled and quadrupled images, the coefficient
/// dichotomy, disjointness from the tripled image, closure of the doubled
/// image under the defining conditions, and character nonvanishing.
std::vector<IdentityCheck> witness_identity_suite(const Witness& w);

}  // namespace leekit
