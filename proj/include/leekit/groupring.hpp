#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "leekit/abelian.hpp"

namespace leekit {

/// Mass bound for products: |G| * this multiplier unless overridden.
inline constexpr std::int64_t kDefaultMassMultiplier = 1LL << 16;

/// Element of the integral group ring Z[G], stored sparsely as
/// flat-element-index -> nonzero coefficient. Keys iterate in the group's
/// lexicographic element order, so serialization and scans are
/// deterministic. Immutable in spirit: operations return fresh values.
class GroupRingElement {
  public:
    explicit GroupRingElement(AbelianGroup group);

    const AbelianGroup& group() const { return group_; }
    const std::map<std::int64_t, std::int64_t>& terms() const { return terms_; }

    std::int64_t coefficient(const GroupElement& g) const;
    std::int64_t coefficient_at(std::int64_t index) const;
    /// Sum of |a_g|.
    std::int64_t mass() const;
    /// Sum of a_g (the trivial character).
    std::int64_t total() const;
    std::int64_t support_size() const { return static_cast<std::int64_t>(terms_.size()); }
    bool is_zero() const { return terms_.empty(); }

    /// Support as sorted elements (coefficient order ignored).
    std::vector<GroupElement> support() const;

    void set_coefficient(std::int64_t index, std::int64_t value);
    void add_coefficient(std::int64_t index, std::int64_t delta);

    bool operator==(const GroupRingElement& rhs) const {
        return group_ == rhs.group_ && terms_ == rhs.terms_;
    }

  private:
    AbelianGroup group_;
    std::map<std::int64_t, std::int64_t> terms_;
};

/// 0/1 element from a set. Throws on elements outside the group.
GroupRingElement gr_from_set(const AbelianGroup& g, const std::vector<GroupElement>& s);
/// The all-ones element (the whole group as a sum).
GroupRingElement gr_all_ones(const AbelianGroup& g);
/// The ring unit: coefficient 1 at the identity.
GroupRingElement gr_unit(const AbelianGroup& g);

GroupRingElement gr_add(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement gr_sub(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement gr_scale(std::int64_t c, const GroupRingElement& a);

/// Exact convolution product. mass_bound <= 0 selects the default bound
/// |G| * kDefaultMassMultiplier; the product of operand masses must stay
/// within the bound or the call throws std::overflow_error.
GroupRingElement gr_mul(const GroupRingElement& a, const GroupRingElement& b,
                        std::int64_t mass_bound = 0);

/// A^(t): pushes each coefficient to the t-th power of its element,
/// accumulating where images coincide.
GroupRingElement gr_power_map(const GroupRingElement& a, std::int64_t t);

/// Level sets of a non-negative element: class i holds the elements of
/// coefficient exactly i; class 0 is the complement of the support.
struct MultiplicityPartition {
    AbelianGroup group;
    /// multiplicity -> sorted flat indices; key 0 always present.
    std::map<std::int64_t, std::vector<std::int64_t>> classes;
    std::int64_t max_multiplicity = 0;

    std::int64_t class_size(std::int64_t i) const;
    /// Class as a 0/1 group ring element.
    GroupRingElement class_indicator(std::int64_t i) const;
};

/// Throws std::invalid_argument when a negative coefficient is present or
/// the group exceeds the enumeration bound.
MultiplicityPartition multiplicity_partition(const GroupRingElement& a);

}  // namespace leekit
