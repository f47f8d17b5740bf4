#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace leekit {

/// Prime-power part of a factorization: prime and its exponent.
struct PrimePower {
    std::int64_t prime = 0;
    int exponent = 0;
    bool operator==(const PrimePower&) const = default;
};

/// Factor m >= 1 by trial division. Primes are returned in increasing order.
/// Throws std::overflow_error for m > 10^12 (trial divisor cap 10^6).
std::vector<PrimePower> factorize(std::int64_t m);

/// Exact binomial coefficient; 0 when k < 0 or k > n.
std::int64_t binomial(std::int64_t n, std::int64_t k);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

/// a*b with overflow detection.
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

/// Non-negative representative of a mod m (m > 0).
std::int64_t mod_floor(std::int64_t a, std::int64_t m);

/// Descending partitions of n (n >= 0) in reverse-lexicographic order,
/// i.e. [n], [n-1,1], ..., [1,1,...,1].
std::vector<std::vector<int>> partitions_of(int n);

/// True when e = 3^k for some k >= 0; the exponent is written to *exp_out.
bool is_power_of_3(std::int64_t e, int* exp_out = nullptr);

}  // namespace leekit
