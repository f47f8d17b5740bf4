#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "leekit/groupring.hpp"
#include "leekit/witness.hpp"

namespace leekit {

/// Which product of the witness set with one of its power images is being
/// profiled.
enum class ProductSource { TT2, TT4, TT5 };

std::string to_string(ProductSource s);

/// Multiplicity profile of T*T^(s) together with the counting identities it
/// must satisfy: the partition covers the group, the weighted class sizes
/// account for the full mass 4n^2, and the inclusion-exclusion identity
/// involving the overlap parameters holds.
struct CountingProfile {
    ProductSource source = ProductSource::TT2;
    MultiplicityPartition partition;
    std::int64_t beta = 0;   // |T intersect T^(2)| / 2
    std::int64_t gamma = 0;  // |T intersect T^(4)| / 2
    std::int64_t weighted_size_sum = 0;  // sum_i i*|class_i|
    std::int64_t class_size_sum = 0;     // sum_i |class_i|, class 0 included
};

/// Regular partial-difference-set parameters.
struct PdsParams {
    std::int64_t v = 0;
    std::int64_t k = 0;
    std::int64_t lambda = 0;
    std::int64_t mu = 0;

    std::int64_t delta() const { return (lambda - mu) * (lambda - mu) + 4 * (k - mu); }
};

// ------------------------------------------------------------- certificates

struct QuadraticSumEvidence {
    std::int64_t anticode_order = 0;  // 4n^2 + 2
    std::vector<PrimePower> factorization;
    bool squarefree = false;
    std::int64_t n_mod_9 = 0;
    std::int64_t axis_coefficient = 0;        // 2n^2 + 8n + 9
    std::int64_t cross_coefficient = 0;       // 8n + 8
    std::int64_t axis_coefficient_mod_3 = 0;  // must be 0
    std::int64_t cross_coefficient_mod_3 = 0; // must be 0
    std::int64_t square_sum_mod_3 = 0;        // must be nonzero
};

struct PdsCase5Evidence {
    std::int64_t group_order = 0;  // 2n^2 + 1
    std::int64_t delta = 0;        // 8n - 7
    std::vector<PrimePower> group_order_factorization;
    std::vector<PrimePower> delta_factorization;
    bool group_order_power_of_3 = false;
    bool delta_power_of_3 = false;
    int group_order_exponent = 0;  // valid when the flag above holds
    int delta_exponent = 0;
};

struct CountingViolationEvidence {
    AbelianGroup group;
    std::vector<GroupElement> set;
    ProductSource source = ProductSource::TT2;
    std::string identity;  // which identity failed
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
};

/// Self-contained, independently re-checkable record of a nonexistence (or
/// route-refutation) argument for a given dimension.
struct ObstructionCertificate {
    std::int64_t n = 0;
    enum class Kind { quadratic_sum_mod3, pds_power_of_3, counting_violation };
    Kind kind = Kind::quadratic_sum_mod3;
    std::variant<QuadraticSumEvidence, PdsCase5Evidence, CountingViolationEvidence> evidence;
};

std::string to_string(ObstructionCertificate::Kind k);

/// Thrown when a profiled witness violates a counting identity; carries the
/// re-checkable certificate.
class CountingViolation : public std::runtime_error {
  public:
    CountingViolation(std::string msg, ObstructionCertificate cert)
        : std::runtime_error(std::move(msg)), certificate(std::move(cert)) {}
    ObstructionCertificate certificate;
};

// --------------------------------------------------------------- operations

/// Profiles T*T^(2), T*T^(4) or T*T^(5) of a verified witness and validates
/// the counting identities (for TT5: the exact sixth-power expansion and the
/// mod-5 congruence between T*T^(5) and T^6). Identity violations raise
/// CountingViolation.
CountingProfile counting_profile(const Witness& w, ProductSource source);

/// Residue-of-n-mod-3 structure of T*T^(2).
struct Mod3Profile {
    int residue = 0;             // n mod 3
    bool congruence_ok = false;  // the mod-3 congruence for this residue class
    // Extra structure available only for n = 0 mod 3:
    bool closed_forms_checked = false;
    std::int64_t x0 = -1, x1 = -1, x2 = -1, x3 = -1;
    bool class1_equals_set = false;
    bool exact_identity_ok = false;  // T*T^(2) = T + 2T^(3) + 3*X_3
    bool beta_zero = false;          // T intersect T^(2) empty
    bool ok() const;
};

Mod3Profile mod3_classify(const Witness& w);

/// Case-5 route arithmetic: both 2n^2+1 and 8n-7 powers of 3.
struct PowerOf3Route {
    std::int64_t n = 0;
    bool both_powers = false;
    int group_order_exponent = 0;
    int delta_exponent = 0;
    bool below_scope = false;  // n < 3: reported, not interpreted
};

PowerOf3Route pds_route_check(std::int64_t n);

/// Certificate that the self-doubled route is refuted for this n (at least
/// one of the two values is not a power of 3). Throws when the route in
/// fact passes (as it does for n = 11).
ObstructionCertificate pds_case5_certificate(std::int64_t n);

/// Quadratic-sum residue obstruction: applicable when n = 5, 8 (mod 9) and
/// 4n^2+2 is squarefree; returns nullopt outside the hypothesis.
std::optional<ObstructionCertificate> quadratic_sum_obstruction(std::int64_t n);

bool is_squarefree(std::int64_t m);

struct PdsVerdict {
    bool equation_ok = false;
    bool divisor_condition_ok = false;
    std::string detail;
    bool ok() const { return equation_ok && divisor_condition_ok; }
};

/// Verifies D*D^(-1) = mu*G + (lambda-mu)*D + (k-mu)*e exactly, then the
/// same-prime-divisors condition on (v, Delta, v^2/Delta). Structural
/// violations of regularity throw std::invalid_argument.
PdsVerdict pds_check(const AbelianGroup& g, const std::vector<GroupElement>& d,
                     const PdsParams& params);

/// Re-derives every number in the evidence and compares; independent of the
/// emitting code path.
bool verify_certificate(const ObstructionCertificate& c);

}  // namespace leekit
