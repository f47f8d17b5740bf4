#include "leekit/groupring.hpp"

#include <cstdlib>
#include <stdexcept>

namespace leekit {

GroupRingElement::GroupRingElement(AbelianGroup group) : group_(std::move(group)) {}

std::int64_t GroupRingElement::coefficient(const GroupElement& g) const {
    return coefficient_at(group_.index_of(g));
}

std::int64_t GroupRingElement::coefficient_at(std::int64_t index) const {
    auto it = terms_.find(index);
    return it == terms_.end() ? 0 : it->second;
}

std::int64_t GroupRingElement::mass() const {
    std::int64_t m = 0;
    for (const auto& [idx, c] : terms_) m = checked_add(m, std::llabs(c));
    return m;
}

std::int64_t GroupRingElement::total() const {
    std::int64_t m = 0;
    for (const auto& [idx, c] : terms_) m = checked_add(m, c);
    return m;
}

std::vector<GroupElement> GroupRingElement::support() const {
    std::vector<GroupElement> out;
    out.reserve(terms_.size());
    for (const auto& [idx, c] : terms_) out.push_back(group_.element_at(idx));
    return out;
}

void GroupRingElement::set_coefficient(std::int64_t index, std::int64_t value) {
    if (index < 0 || index >= group_.order())
        throw std::invalid_argument("GroupRingElement: index out of range");
    if (value == 0)
        terms_.erase(index);
    else
        terms_[index] = value;
}

void GroupRingElement::add_coefficient(std::int64_t index, std::int64_t delta) {
    if (delta == 0) return;
    if (index < 0 || index >= group_.order())
        throw std::invalid_argument("GroupRingElement: index out of range");
    auto [it, inserted] = terms_.try_emplace(index, delta);
    if (!inserted) {
        it->second = checked_add(it->second, delta);
        if (it->second == 0) terms_.erase(it);
    }
}

GroupRingElement gr_from_set(const AbelianGroup& g, const std::vector<GroupElement>& s) {
    GroupRingElement out(g);
    for (const GroupElement& e : s) {
        if (!g.contains(e))
            throw std::invalid_argument("gr_from_set: element does not belong to the group");
        out.add_coefficient(g.index_of(e), 1);
    }
    return out;
}

GroupRingElement gr_all_ones(const AbelianGroup& g) {
    if (g.order() > kDefaultEnumerationBound)
        throw std::overflow_error("gr_all_ones: group order exceeds enumeration bound");
    GroupRingElement out(g);
    for (std::int64_t i = 0; i < g.order(); ++i) out.set_coefficient(i, 1);
    return out;
}

GroupRingElement gr_unit(const AbelianGroup& g) {
    GroupRingElement out(g);
    out.set_coefficient(g.index_of(g.identity()), 1);
    return out;
}

static void require_same_group(const GroupRingElement& a, const GroupRingElement& b,
                               const char* op) {
    if (!(a.group() == b.group()))
        throw std::invalid_argument(std::string(op) + ": operand group mismatch");
}

GroupRingElement gr_add(const GroupRingElement& a, const GroupRingElement& b) {
    require_same_group(a, b, "gr_add");
    GroupRingElement out = a;
    for (const auto& [idx, c] : b.terms()) out.add_coefficient(idx, c);
    return out;
}

GroupRingElement gr_sub(const GroupRingElement& a, const GroupRingElement& b) {
    require_same_group(a, b, "gr_sub");
    GroupRingElement out = a;
    for (const auto& [idx, c] : b.terms()) out.add_coefficient(idx, -c);
    return out;
}

GroupRingElement gr_scale(std::int64_t c, const GroupRingElement& a) {
    GroupRingElement out(a.group());
    if (c == 0) return out;
    for (const auto& [idx, v] : a.terms()) out.set_coefficient(idx, checked_mul(c, v));
    return out;
}

GroupRingElement gr_mul(const GroupRingElement& a, const GroupRingElement& b,
                        std::int64_t mass_bound) {
    require_same_group(a, b, "gr_mul");
    const AbelianGroup& g = a.group();
    if (mass_bound <= 0) mass_bound = checked_mul(g.order(), kDefaultMassMultiplier);
    if (checked_mul(a.mass(), b.mass()) > mass_bound)
        throw std::overflow_error("gr_mul: product mass exceeds bound");
    GroupRingElement out(g);
    for (const auto& [ia, ca] : a.terms())
        for (const auto& [ib, cb] : b.terms())
            out.add_coefficient(g.index_combine(ia, ib), checked_mul(ca, cb));
    return out;
}

GroupRingElement gr_power_map(const GroupRingElement& a, std::int64_t t) {
    const AbelianGroup& g = a.group();
    GroupRingElement out(g);
    for (const auto& [idx, c] : a.terms()) out.add_coefficient(g.index_scale(idx, t), c);
    return out;
}

std::int64_t MultiplicityPartition::class_size(std::int64_t i) const {
    auto it = classes.find(i);
    return it == classes.end() ? 0 : static_cast<std::int64_t>(it->second.size());
}

GroupRingElement MultiplicityPartition::class_indicator(std::int64_t i) const {
    GroupRingElement out(group);
    auto it = classes.find(i);
    if (it == classes.end()) return out;
    for (std::int64_t idx : it->second) out.set_coefficient(idx, 1);
    return out;
}

MultiplicityPartition multiplicity_partition(const GroupRingElement& a) {
    const AbelianGroup& g = a.group();
    if (g.order() > kDefaultEnumerationBound)
        throw std::invalid_argument("multiplicity_partition: group exceeds enumeration bound");
    MultiplicityPartition out{g, {}, 0};
    out.classes[0] = {};
    std::int64_t cursor = 0;
    for (const auto& [idx, c] : a.terms()) {
        if (c < 0)
            throw std::invalid_argument("multiplicity_partition: negative coefficient present");
        while (cursor < idx) out.classes[0].push_back(cursor++);
        out.classes[c].push_back(idx);
        cursor = idx + 1;
        out.max_multiplicity = std::max(out.max_multiplicity, c);
    }
    while (cursor < g.order()) out.classes[0].push_back(cursor++);
    return out;
}

}  // namespace leekit
