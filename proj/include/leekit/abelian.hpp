#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "leekit/numtheory.hpp"

namespace leekit {

class GroupRingElement;  // groupring.hpp

/// Element of a finite abelian group, stored as its residue tuple.
/// residues[i] lies in [0, m_i) where m_i is the i-th invariant factor
/// of the owning group.
struct GroupElement {
    std::vector<std::int64_t> residues;

    auto operator<=>(const GroupElement&) const = default;
    bool is_identity() const;
    std::string to_string() const;
};

/// Finite abelian group in invariant-factor form: m_1 | m_2 | ... | m_k,
/// every m_i >= 2. Construction canonicalizes, so isomorphic inputs such
/// as [3,11] and [33] compare equal. Immutable after construction.
class AbelianGroup {
  public:
    /// Trivial placeholder (order 1, no factors); real groups come from the
    /// canonicalizing constructor below.
    AbelianGroup() = default;

    /// Canonicalizes an arbitrary factor list (entries >= 2) into the
    /// divisibility chain. Throws std::invalid_argument on bad entries.
    explicit AbelianGroup(std::vector<std::int64_t> factors);

    const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
    std::int64_t order() const { return order_; }
    std::int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }
    int rank() const { return static_cast<int>(factors_.size()); }

    bool operator==(const AbelianGroup& other) const { return factors_ == other.factors_; }

    GroupElement identity() const;
    /// Validates residue count and reduces each residue into range.
    GroupElement element(std::vector<std::int64_t> residues) const;
    bool contains(const GroupElement& g) const;

    GroupElement combine(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& a) const;
    /// t-fold combine; t may be negative, power(g, -1) == inverse(g).
    GroupElement power(const GroupElement& a, std::int64_t t) const;
    std::int64_t element_order(const GroupElement& a) const;

    /// Mixed-radix flat index; index order equals lexicographic order on
    /// residue tuples.
    std::int64_t index_of(const GroupElement& g) const;
    GroupElement element_at(std::int64_t index) const;

    /// Index-level arithmetic used by the hot search loop.
    std::int64_t index_combine(std::int64_t a, std::int64_t b) const;
    std::int64_t index_inverse(std::int64_t a) const;
    std::int64_t index_scale(std::int64_t a, std::int64_t t) const;

    std::string to_string() const;

  private:
    std::vector<std::int64_t> factors_;
    std::vector<std::int64_t> radix_;  // radix_[i] = prod of factors after i
    std::int64_t order_ = 1;
};

/// Spec-level constructor name.
AbelianGroup make_group(const std::vector<std::int64_t>& invariant_factors);

inline constexpr std::int64_t kDefaultEnumerationBound = 1'000'000;

/// All elements in lexicographic residue order. Throws std::overflow_error
/// when the order exceeds the bound.
std::vector<GroupElement> enumerate_elements(const AbelianGroup& g,
                                             std::int64_t bound = kDefaultEnumerationBound);

/// One group per isomorphism class of order v, deterministic order.
std::vector<AbelianGroup> abelian_groups_of_order(std::int64_t v);

/// Exact element of Z[zeta_m], zeta_m a primitive m-th root of unity,
/// stored reduced modulo the m-th cyclotomic polynomial. The zero test is
/// exact, which is what the character scans rely on.
class CyclotomicValue {
  public:
    static CyclotomicValue zero(std::int64_t m);
    static CyclotomicValue integer(std::int64_t m, std::int64_t value);
    /// zeta_m^e, e taken mod m.
    static CyclotomicValue root_power(std::int64_t m, std::int64_t e);
    /// Reduces a raw coefficient-by-exponent vector (size m) mod Phi_m.
    static CyclotomicValue from_exponent_vector(std::int64_t m, std::vector<std::int64_t> acc);

    std::int64_t conductor() const { return m_; }
    bool is_zero() const;
    bool is_integer(std::int64_t value) const;
    const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

    CyclotomicValue operator+(const CyclotomicValue& rhs) const;
    CyclotomicValue operator-(const CyclotomicValue& rhs) const;
    CyclotomicValue operator*(const CyclotomicValue& rhs) const;
    bool operator==(const CyclotomicValue& rhs) const = default;

  private:
    CyclotomicValue(std::int64_t m, std::vector<std::int64_t> coeffs);
    std::int64_t m_ = 1;
    std::vector<std::int64_t> coeffs_;  // size deg(Phi_m)
};

/// Coefficients of the m-th cyclotomic polynomial, ascending degree, monic.
std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t m);

/// Character of an abelian group: g with residues r_i evaluates to
/// zeta^(sum c_i * r_i * (m/m_i)) where m is the group exponent.
struct Character {
    AbelianGroup group;
    std::vector<std::int64_t> exponents;  // c_i in [0, m_i)

    bool is_trivial() const;
    /// Exponent of zeta_m for a single element.
    std::int64_t root_exponent(const GroupElement& g) const;
    CyclotomicValue evaluate(const GroupElement& g) const;
};

/// All |G| characters, lexicographic on exponent tuples (trivial first).
std::vector<Character> all_characters(const AbelianGroup& g);

/// chi(A) = sum a_g chi(g), exact.
CyclotomicValue character_sum(const Character& chi, const GroupRingElement& a);

}  // namespace leekit
