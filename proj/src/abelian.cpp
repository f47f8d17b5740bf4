#include "leekit/abelian.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "leekit/groupring.hpp"

namespace leekit {

// ---------------------------------------------------------------- numtheory

std::vector<PrimePower> factorize(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("factorize: argument must be >= 1");
    if (m > 1'000'000'000'000LL)
        throw std::overflow_error("factorize: argument exceeds trial-division bound");
    std::vector<PrimePower> out;
    for (std::int64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p != 0) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (m > 1) out.push_back({m, 1});
    return out;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r = checked_mul(r, n - k + i);
        r /= i;
    }
    return r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiply");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in add");
    return r;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

static void partitions_rec(int n, int max_part, std::vector<int>& cur,
                           std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(n - p, p, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> partitions_of(int n) {
    if (n < 0) throw std::invalid_argument("partitions_of: negative argument");
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    partitions_rec(n, n == 0 ? 1 : n, cur, out);
    return out;
}

bool is_power_of_3(std::int64_t e, int* exp_out) {
    if (e < 1) return false;
    int k = 0;
    while (e % 3 == 0) {
        e /= 3;
        ++k;
    }
    if (e != 1) return false;
    if (exp_out) *exp_out = k;
    return true;
}

// ------------------------------------------------------------- GroupElement

bool GroupElement::is_identity() const {
    return std::all_of(residues.begin(), residues.end(), [](std::int64_t r) { return r == 0; });
}

std::string GroupElement::to_string() const {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < residues.size(); ++i) {
        if (i) os << ',';
        os << residues[i];
    }
    os << ')';
    return os.str();
}

// ------------------------------------------------------------- AbelianGroup

AbelianGroup::AbelianGroup(std::vector<std::int64_t> factors) {
    if (factors.empty()) throw std::invalid_argument("AbelianGroup: empty factor list");
    // Regroup prime powers so the result is a divisibility chain.
    std::map<std::int64_t, std::vector<int>> exponents;  // prime -> descending exponents
    for (std::int64_t m : factors) {
        if (m < 2) throw std::invalid_argument("AbelianGroup: every factor must be >= 2");
        for (const PrimePower& pp : factorize(m)) exponents[pp.prime].push_back(pp.exponent);
    }
    size_t chain_len = 0;
    for (auto& [p, es] : exponents) {
        std::sort(es.begin(), es.end(), std::greater<int>());
        chain_len = std::max(chain_len, es.size());
    }
    std::vector<std::int64_t> chain(chain_len, 1);  // chain[0] = largest factor
    for (const auto& [p, es] : exponents) {
        for (size_t i = 0; i < es.size(); ++i) {
            std::int64_t q = 1;
            for (int j = 0; j < es[i]; ++j) q = checked_mul(q, p);
            chain[i] = checked_mul(chain[i], q);
        }
    }
    std::reverse(chain.begin(), chain.end());
    factors_ = std::move(chain);
    order_ = 1;
    for (std::int64_t m : factors_) order_ = checked_mul(order_, m);
    radix_.assign(factors_.size(), 1);
    for (int i = static_cast<int>(factors_.size()) - 2; i >= 0; --i)
        radix_[i] = checked_mul(radix_[i + 1], factors_[i + 1]);
}

GroupElement AbelianGroup::identity() const {
    return GroupElement{std::vector<std::int64_t>(factors_.size(), 0)};
}

GroupElement AbelianGroup::element(std::vector<std::int64_t> residues) const {
    if (residues.size() != factors_.size())
        throw std::invalid_argument("AbelianGroup::element: residue count mismatch");
    for (size_t i = 0; i < residues.size(); ++i) residues[i] = mod_floor(residues[i], factors_[i]);
    return GroupElement{std::move(residues)};
}

bool AbelianGroup::contains(const GroupElement& g) const {
    if (g.residues.size() != factors_.size()) return false;
    for (size_t i = 0; i < factors_.size(); ++i)
        if (g.residues[i] < 0 || g.residues[i] >= factors_[i]) return false;
    return true;
}

static void require_member(const AbelianGroup& g, const GroupElement& a, const char* op) {
    if (!g.contains(a))
        throw std::invalid_argument(std::string(op) + ": element does not belong to the group");
}

GroupElement AbelianGroup::combine(const GroupElement& a, const GroupElement& b) const {
    require_member(*this, a, "combine");
    require_member(*this, b, "combine");
    GroupElement out = a;
    for (size_t i = 0; i < factors_.size(); ++i) {
        out.residues[i] += b.residues[i];
        if (out.residues[i] >= factors_[i]) out.residues[i] -= factors_[i];
    }
    return out;
}

GroupElement AbelianGroup::inverse(const GroupElement& a) const {
    require_member(*this, a, "inverse");
    GroupElement out = a;
    for (size_t i = 0; i < factors_.size(); ++i)
        if (out.residues[i] != 0) out.residues[i] = factors_[i] - out.residues[i];
    return out;
}

GroupElement AbelianGroup::power(const GroupElement& a, std::int64_t t) const {
    require_member(*this, a, "power");
    GroupElement out = identity();
    for (size_t i = 0; i < factors_.size(); ++i) {
        // (a_i * t) mod m_i without overflow: reduce t mod m_i first.
        std::int64_t tm = mod_floor(t, factors_[i]);
        out.residues[i] = (a.residues[i] * tm) % factors_[i];
    }
    return out;
}

std::int64_t AbelianGroup::element_order(const GroupElement& a) const {
    require_member(*this, a, "element_order");
    std::int64_t ord = 1;
    for (size_t i = 0; i < factors_.size(); ++i) {
        std::int64_t m = factors_[i];
        std::int64_t o = m / std::gcd(a.residues[i], m);
        ord = ord / std::gcd(ord, o) * o;
    }
    return ord;
}

std::int64_t AbelianGroup::index_of(const GroupElement& g) const {
    require_member(*this, g, "index_of");
    std::int64_t idx = 0;
    for (size_t i = 0; i < factors_.size(); ++i) idx += g.residues[i] * radix_[i];
    return idx;
}

GroupElement AbelianGroup::element_at(std::int64_t index) const {
    if (index < 0 || index >= order_)
        throw std::invalid_argument("AbelianGroup::element_at: index out of range");
    GroupElement out = identity();
    for (size_t i = 0; i < factors_.size(); ++i) {
        out.residues[i] = index / radix_[i];
        index %= radix_[i];
    }
    return out;
}

std::int64_t AbelianGroup::index_combine(std::int64_t a, std::int64_t b) const {
    std::int64_t out = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
        std::int64_t ra = a / radix_[i], rb = b / radix_[i];
        a %= radix_[i];
        b %= radix_[i];
        std::int64_t r = ra + rb;
        if (r >= factors_[i]) r -= factors_[i];
        out += r * radix_[i];
    }
    return out;
}

std::int64_t AbelianGroup::index_inverse(std::int64_t a) const {
    std::int64_t out = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
        std::int64_t ra = a / radix_[i];
        a %= radix_[i];
        if (ra != 0) ra = factors_[i] - ra;
        out += ra * radix_[i];
    }
    return out;
}

std::int64_t AbelianGroup::index_scale(std::int64_t a, std::int64_t t) const {
    std::int64_t out = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
        std::int64_t ra = a / radix_[i];
        a %= radix_[i];
        std::int64_t tm = mod_floor(t, factors_[i]);
        out += ((ra * tm) % factors_[i]) * radix_[i];
    }
    return out;
}

std::string AbelianGroup::to_string() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << ',';
        os << factors_[i];
    }
    os << ']';
    return os.str();
}

AbelianGroup make_group(const std::vector<std::int64_t>& invariant_factors) {
    return AbelianGroup(invariant_factors);
}

std::vector<GroupElement> enumerate_elements(const AbelianGroup& g, std::int64_t bound) {
    if (g.order() > bound)
        throw std::overflow_error("enumerate_elements: group order exceeds bound");
    std::vector<GroupElement> out;
    out.reserve(static_cast<size_t>(g.order()));
    for (std::int64_t i = 0; i < g.order(); ++i) out.push_back(g.element_at(i));
    return out;
}

std::vector<AbelianGroup> abelian_groups_of_order(std::int64_t v) {
    if (v < 1) throw std::invalid_argument("abelian_groups_of_order: order must be >= 1");
    if (v == 1) throw std::invalid_argument("abelian_groups_of_order: trivial group unsupported");
    const std::vector<PrimePower> pf = factorize(v);
    // Per-prime partition choices, combined in deterministic order.
    std::vector<std::vector<std::vector<int>>> choices;
    for (const PrimePower& pp : pf) choices.push_back(partitions_of(pp.exponent));
    std::vector<AbelianGroup> out;
    std::vector<size_t> pick(pf.size(), 0);
    while (true) {
        size_t chain_len = 0;
        for (size_t i = 0; i < pf.size(); ++i)
            chain_len = std::max(chain_len, choices[i][pick[i]].size());
        std::vector<std::int64_t> chain(chain_len, 1);  // chain[0] = largest
        for (size_t i = 0; i < pf.size(); ++i) {
            const std::vector<int>& parts = choices[i][pick[i]];  // descending
            for (size_t j = 0; j < parts.size(); ++j) {
                std::int64_t q = 1;
                for (int e = 0; e < parts[j]; ++e) q = checked_mul(q, pf[i].prime);
                chain[j] = checked_mul(chain[j], q);
            }
        }
        std::reverse(chain.begin(), chain.end());
        out.push_back(AbelianGroup(chain));
        // Next combination.
        size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) break;
    }
    return out;
}

// --------------------------------------------------------------- cyclotomic

namespace {

// Exact division of polynomials with integer coefficients (ascending order);
// the divisor must be monic up to sign of its leading coefficient +1.
std::vector<std::int64_t> poly_divide_exact(std::vector<std::int64_t> num,
                                            const std::vector<std::int64_t>& den) {
    const size_t dd = den.size() - 1;
    if (num.size() < den.size()) throw std::runtime_error("poly_divide_exact: degree underflow");
    std::vector<std::int64_t> quot(num.size() - dd, 0);
    for (size_t i = num.size(); i-- > den.size() - 1;) {
        if (i < dd) break;
        std::int64_t c = num[i];
        if (c == 0) continue;
        quot[i - dd] = c;
        for (size_t j = 0; j <= dd; ++j) num[i - dd + j] -= checked_mul(c, den[j]);
    }
    for (std::int64_t c : num)
        if (c != 0) throw std::runtime_error("poly_divide_exact: inexact division");
    return quot;
}

std::vector<std::int64_t> compute_cyclotomic(std::int64_t m) {
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    std::vector<std::int64_t> num(static_cast<size_t>(m) + 1, 0);
    num[0] = -1;
    num[static_cast<size_t>(m)] = 1;
    for (std::int64_t d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        num = poly_divide_exact(std::move(num), cyclotomic_polynomial(d));
    }
    return num;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("cyclotomic_polynomial: m must be >= 1");
    static std::map<std::int64_t, std::vector<std::int64_t>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }
    std::vector<std::int64_t> phi =
        (m == 1) ? std::vector<std::int64_t>{-1, 1} : compute_cyclotomic(m);
    {
        std::lock_guard<std::mutex> lk(mu);
        cache.emplace(m, phi);
    }
    return phi;
}

CyclotomicValue::CyclotomicValue(std::int64_t m, std::vector<std::int64_t> coeffs)
    : m_(m), coeffs_(std::move(coeffs)) {}

CyclotomicValue CyclotomicValue::zero(std::int64_t m) {
    const size_t deg = cyclotomic_polynomial(m).size() - 1;
    return CyclotomicValue(m, std::vector<std::int64_t>(deg, 0));
}

CyclotomicValue CyclotomicValue::integer(std::int64_t m, std::int64_t value) {
    CyclotomicValue v = zero(m);
    if (!v.coeffs_.empty())
        v.coeffs_[0] = value;
    else if (value != 0)
        throw std::runtime_error("CyclotomicValue: degree-0 field cannot hold nonzero");
    return v;
}

CyclotomicValue CyclotomicValue::root_power(std::int64_t m, std::int64_t e) {
    std::vector<std::int64_t> acc(static_cast<size_t>(m), 0);
    acc[static_cast<size_t>(mod_floor(e, m))] = 1;
    return from_exponent_vector(m, std::move(acc));
}

CyclotomicValue CyclotomicValue::from_exponent_vector(std::int64_t m,
                                                      std::vector<std::int64_t> acc) {
    const std::vector<std::int64_t> phi = cyclotomic_polynomial(m);
    const size_t deg = phi.size() - 1;
    // Synthetic division: eliminate coefficients from the top down.
    for (size_t i = acc.size(); i-- > deg;) {
        std::int64_t c = acc[i];
        if (c == 0) continue;
        acc[i] = 0;
        for (size_t j = 0; j < deg; ++j) acc[i - deg + j] =
            checked_add(acc[i - deg + j], checked_mul(-c, phi[j]));
    }
    acc.resize(deg);
    return CyclotomicValue(m, std::move(acc));
}

bool CyclotomicValue::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

bool CyclotomicValue::is_integer(std::int64_t value) const {
    if (coeffs_.empty()) return value == 0;
    if (coeffs_[0] != value) return false;
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                       [](std::int64_t c) { return c == 0; });
}

static void require_same_conductor(const CyclotomicValue& a, const CyclotomicValue& b) {
    if (a.conductor() != b.conductor())
        throw std::invalid_argument("CyclotomicValue: conductor mismatch");
}

CyclotomicValue CyclotomicValue::operator+(const CyclotomicValue& rhs) const {
    require_same_conductor(*this, rhs);
    CyclotomicValue out = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        out.coeffs_[i] = checked_add(out.coeffs_[i], rhs.coeffs_[i]);
    return out;
}

CyclotomicValue CyclotomicValue::operator-(const CyclotomicValue& rhs) const {
    require_same_conductor(*this, rhs);
    CyclotomicValue out = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        out.coeffs_[i] = checked_add(out.coeffs_[i], -rhs.coeffs_[i]);
    return out;
}

CyclotomicValue CyclotomicValue::operator*(const CyclotomicValue& rhs) const {
    require_same_conductor(*this, rhs);
    std::vector<std::int64_t> prod(2 * coeffs_.size(), 0);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j)
            prod[i + j] = checked_add(prod[i + j], checked_mul(coeffs_[i], rhs.coeffs_[j]));
    }
    return from_exponent_vector(m_, std::move(prod));
}

// --------------------------------------------------------------- characters

bool Character::is_trivial() const {
    return std::all_of(exponents.begin(), exponents.end(), [](std::int64_t c) { return c == 0; });
}

std::int64_t Character::root_exponent(const GroupElement& g) const {
    if (!group.contains(g))
        throw std::invalid_argument("Character: element does not belong to the group");
    const std::int64_t m = group.exponent();
    std::int64_t e = 0;
    const std::vector<std::int64_t>& f = group.invariant_factors();
    for (size_t i = 0; i < f.size(); ++i) {
        std::int64_t step = m / f[i];
        e = (e + (exponents[i] % m) * (g.residues[i] % m) % m * (step % m)) % m;
    }
    return mod_floor(e, m);
}

CyclotomicValue Character::evaluate(const GroupElement& g) const {
    return CyclotomicValue::root_power(group.exponent(), root_exponent(g));
}

std::vector<Character> all_characters(const AbelianGroup& g) {
    std::vector<Character> out;
    out.reserve(static_cast<size_t>(g.order()));
    for (std::int64_t i = 0; i < g.order(); ++i)
        out.push_back(Character{g, g.element_at(i).residues});
    return out;
}

CyclotomicValue character_sum(const Character& chi, const GroupRingElement& a) {
    if (!(chi.group == a.group()))
        throw std::invalid_argument("character_sum: character and element group mismatch");
    const std::int64_t m = chi.group.exponent();
    std::vector<std::int64_t> acc(static_cast<size_t>(m), 0);
    for (const auto& [idx, coeff] : a.terms()) {
        const std::int64_t e = chi.root_exponent(chi.group.element_at(idx));
        acc[static_cast<size_t>(e)] = checked_add(acc[static_cast<size_t>(e)], coeff);
    }
    return CyclotomicValue::from_exponent_vector(m, std::move(acc));
}

}  // namespace leekit
