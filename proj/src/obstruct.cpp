#include "leekit/obstruct.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace leekit {

std::string to_string(ProductSource s) {
    switch (s) {
        case ProductSource::TT2: return "TT2";
        case ProductSource::TT4: return "TT4";
        case ProductSource::TT5: return "TT5";
    }
    return "?";
}

std::string to_string(ObstructionCertificate::Kind k) {
    switch (k) {
        case ObstructionCertificate::Kind::quadratic_sum_mod3: return "quadratic_sum_mod3";
        case ObstructionCertificate::Kind::pds_power_of_3: return "pds_power_of_3";
        case ObstructionCertificate::Kind::counting_violation: return "counting_violation";
    }
    return "?";
}

namespace {

std::int64_t overlap_size(const GroupRingElement& a, const GroupRingElement& b) {
    std::int64_t count = 0;
    for (const auto& [idx, c] : a.terms()) {
        (void)c;
        if (b.coefficient_at(idx) != 0) ++count;
    }
    return count;
}

[[noreturn]] void raise_counting_violation(const Witness& w, ProductSource source,
                                           const std::string& identity, std::int64_t lhs,
                                           std::int64_t rhs) {
    ObstructionCertificate cert;
    cert.n = w.n;
    cert.kind = ObstructionCertificate::Kind::counting_violation;
    cert.evidence = CountingViolationEvidence{w.home, w.elements, source, identity, lhs, rhs};
    std::ostringstream os;
    os << "counting identity '" << identity << "' violated for source " << to_string(source)
       << ": " << lhs << " != " << rhs;
    throw CountingViolation(os.str(), std::move(cert));
}

bool congruent_zero_mod(const GroupRingElement& a, std::int64_t m) {
    for (const auto& [idx, c] : a.terms()) {
        (void)idx;
        if (mod_floor(c, m) != 0) return false;
    }
    return true;
}

}  // namespace

CountingProfile counting_profile(const Witness& w, ProductSource source) {
    if (!verify_witness(w).ok())
        throw std::invalid_argument("counting_profile: witness fails verification");
    const AbelianGroup& g = w.home;
    const std::int64_t n = w.n;
    const GroupRingElement t = gr_from_set(g, w.elements);
    const GroupRingElement t2 = gr_power_map(t, 2);
    const GroupRingElement t4 = gr_power_map(t, 4);
    const std::int64_t power = source == ProductSource::TT2 ? 2
                             : source == ProductSource::TT4 ? 4
                                                            : 5;
    const GroupRingElement product = gr_mul(t, gr_power_map(t, power));

    CountingProfile out;
    out.source = source;
    out.partition = multiplicity_partition(product);
    out.beta = overlap_size(t, t2) / 2;
    out.gamma = overlap_size(t, t4) / 2;
    for (const auto& [mult, members] : out.partition.classes) {
        out.class_size_sum += static_cast<std::int64_t>(members.size());
        out.weighted_size_sum += mult * static_cast<std::int64_t>(members.size());
    }

    // (1) The weighted class sizes carry the whole mass 4n^2.
    if (out.weighted_size_sum != 4 * n * n)
        raise_counting_violation(w, source, "weighted_class_sum", out.weighted_size_sum, 4 * n * n);
    // (2) The classes partition the group.
    if (out.class_size_sum != 2 * n * n + 1)
        raise_counting_violation(w, source, "partition_size", out.class_size_sum, 2 * n * n + 1);

    if (source == ProductSource::TT2 || source == ProductSource::TT4) {
        // (3) Inclusion-exclusion count of the distinct elements hit.
        const std::int64_t overlap_half = source == ProductSource::TT2 ? out.beta : out.gamma;
        std::int64_t lhs = 0, high_terms = 0;
        for (const auto& [mult, members] : out.partition.classes) {
            if (mult >= 1) lhs += static_cast<std::int64_t>(members.size());
            if (mult >= 3)
                high_terms += (mult - 1) * (mult - 2) / 2 * static_cast<std::int64_t>(members.size());
        }
        const std::int64_t rhs = 4 * n - overlap_half + high_terms;
        if (lhs != rhs)
            raise_counting_violation(w, source, "inclusion_exclusion", lhs, rhs);
    } else {
        // The sixth power expands exactly through the doubled and quadrupled
        // image products; the fifth-power product is congruent to it mod 5.
        const GroupRingElement sq = gr_mul(t, t);
        const GroupRingElement h = gr_all_ones(g);
        const GroupRingElement e = gr_unit(g);
        const GroupRingElement cube = gr_mul(sq, t);
        const std::int64_t big_bound =
            checked_mul(g.order(), kDefaultMassMultiplier * 16);  // sixth power mass (2n)^6
        const GroupRingElement sixth = gr_mul(cube, cube, big_bound);
        GroupRingElement rhs = gr_scale(32 * n * n * n * n - 16 * n * n + 8 * n - 4, h);
        rhs = gr_sub(rhs, gr_scale(12 * n * n - 22 * n + 10, t2));
        rhs = gr_add(rhs, gr_mul(t2, t4));
        rhs = gr_sub(rhs, gr_scale(6 * n - 6, t4));
        rhs = gr_add(rhs, gr_scale(8 * n * n * n - 12 * n * n + 4, e));
        const GroupRingElement diff = gr_sub(sixth, rhs);
        if (!diff.is_zero()) {
            const std::int64_t idx = diff.terms().begin()->first;
            raise_counting_violation(w, source, "sixth_power_expansion",
                                     sixth.coefficient_at(idx), rhs.coefficient_at(idx));
        }
        const GroupRingElement frob = gr_sub(product, sixth);
        if (!congruent_zero_mod(frob, 5)) {
            const auto it = std::find_if(frob.terms().begin(), frob.terms().end(),
                                         [](const auto& kv) { return mod_floor(kv.second, 5) != 0; });
            raise_counting_violation(w, source, "fifth_power_frobenius_mod_5",
                                     product.coefficient_at(it->first),
                                     sixth.coefficient_at(it->first));
        }
    }
    return out;
}

bool Mod3Profile::ok() const {
    if (!congruence_ok) return false;
    if (!closed_forms_checked) return true;
    return x0 >= 0 && class1_equals_set && exact_identity_ok && beta_zero;
}

Mod3Profile mod3_classify(const Witness& w) {
    if (!verify_witness(w).ok())
        throw std::invalid_argument("mod3_classify: witness fails verification");
    const AbelianGroup& g = w.home;
    const std::int64_t n = w.n;
    const GroupRingElement t = gr_from_set(g, w.elements);
    const GroupRingElement t2 = gr_power_map(t, 2);
    const GroupRingElement t3 = gr_power_map(t, 3);
    const GroupRingElement h = gr_all_ones(g);
    const GroupRingElement tt2 = gr_mul(t, t2);

    Mod3Profile out;
    out.residue = static_cast<int>(n % 3);

    GroupRingElement rhs(g);
    switch (out.residue) {
        case 1: rhs = gr_add(h, gr_scale(2, t3)); break;
        case 2: rhs = gr_add(gr_scale(2, h), gr_add(gr_scale(2, t), gr_scale(2, t3))); break;
        default: rhs = gr_add(t, gr_scale(2, t3)); break;
    }
    out.congruence_ok = congruent_zero_mod(gr_sub(tt2, rhs), 3);
    if (!out.congruence_ok) {
        const GroupRingElement diff = gr_sub(tt2, rhs);
        const auto it = std::find_if(diff.terms().begin(), diff.terms().end(),
                                     [](const auto& kv) { return mod_floor(kv.second, 3) != 0; });
        raise_counting_violation(w, ProductSource::TT2, "congruence_mod_3",
                                 tt2.coefficient_at(it->first), rhs.coefficient_at(it->first));
    }

    if (out.residue == 0) {
        out.closed_forms_checked = true;
        const MultiplicityPartition part = multiplicity_partition(tt2);
        out.x0 = part.class_size(0);
        out.x1 = part.class_size(1);
        out.x2 = part.class_size(2);
        out.x3 = part.class_size(3);
        const std::int64_t want_x0 = (2 * n * n - 6 * n + 3) / 3;
        const std::int64_t want_x3 = (4 * n * n - 6 * n) / 3;
        if (out.x0 != want_x0)
            raise_counting_violation(w, ProductSource::TT2, "class0_closed_form", out.x0, want_x0);
        if (out.x1 != 2 * n)
            raise_counting_violation(w, ProductSource::TT2, "class1_closed_form", out.x1, 2 * n);
        if (out.x2 != 2 * n)
            raise_counting_violation(w, ProductSource::TT2, "class2_closed_form", out.x2, 2 * n);
        if (out.x3 != want_x3)
            raise_counting_violation(w, ProductSource::TT2, "class3_closed_form", out.x3, want_x3);
        out.class1_equals_set = part.class_indicator(1) == t;
        if (!out.class1_equals_set)
            raise_counting_violation(w, ProductSource::TT2, "class1_equals_set", 0, 1);
        // Exact decomposition T*T^(2) = T + 2T^(3) + 3*X_3.
        GroupRingElement exact = gr_add(t, gr_scale(2, t3));
        exact = gr_add(exact, gr_scale(3, part.class_indicator(3)));
        out.exact_identity_ok = gr_sub(tt2, exact).is_zero();
        if (!out.exact_identity_ok) {
            const GroupRingElement diff = gr_sub(tt2, exact);
            const std::int64_t idx = diff.terms().begin()->first;
            raise_counting_violation(w, ProductSource::TT2, "exact_class_decomposition",
                                     tt2.coefficient_at(idx), exact.coefficient_at(idx));
        }
        out.beta_zero = overlap_size(t, t2) == 0;
        if (!out.beta_zero)
            raise_counting_violation(w, ProductSource::TT2, "overlap_with_doubled_image",
                                     overlap_size(t, t2), 0);
    }
    return out;
}

PowerOf3Route pds_route_check(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("pds_route_check: n must be >= 1");
    PowerOf3Route out;
    out.n = n;
    out.below_scope = n < 3;
    int ea = 0, eb = 0;
    const bool a = is_power_of_3(2 * n * n + 1, &ea);
    const bool b = is_power_of_3(8 * n - 7, &eb);
    out.both_powers = a && b;
    if (out.both_powers) {
        out.group_order_exponent = ea;
        out.delta_exponent = eb;
    }
    return out;
}

ObstructionCertificate pds_case5_certificate(std::int64_t n) {
    if (n < 3) throw std::invalid_argument("pds_case5_certificate: n must be >= 3");
    const std::int64_t order = 2 * n * n + 1;
    const std::int64_t delta = 8 * n - 7;
    PdsCase5Evidence ev;
    ev.group_order = order;
    ev.delta = delta;
    ev.group_order_factorization = factorize(order);
    ev.delta_factorization = factorize(delta);
    ev.group_order_power_of_3 = is_power_of_3(order, &ev.group_order_exponent);
    ev.delta_power_of_3 = is_power_of_3(delta, &ev.delta_exponent);
    if (ev.group_order_power_of_3 && ev.delta_power_of_3)
        throw std::invalid_argument(
            "pds_case5_certificate: route passes for this n, nothing to refute");
    ObstructionCertificate cert;
    cert.n = n;
    cert.kind = ObstructionCertificate::Kind::pds_power_of_3;
    cert.evidence = std::move(ev);
    return cert;
}

std::optional<ObstructionCertificate> quadratic_sum_obstruction(std::int64_t n) {
    if (n < 3) throw std::invalid_argument("quadratic_sum_obstruction: n must be >= 3");
    const std::int64_t residue = n % 9;
    if (residue != 5 && residue != 8) return std::nullopt;
    const std::int64_t order = 4 * n * n + 2;
    if (!is_squarefree(order)) return std::nullopt;

    QuadraticSumEvidence ev;
    ev.anticode_order = order;
    ev.factorization = factorize(order);
    ev.squarefree = true;
    ev.n_mod_9 = residue;
    ev.axis_coefficient = 2 * n * n + 8 * n + 9;
    ev.cross_coefficient = 8 * n + 8;
    ev.axis_coefficient_mod_3 = mod_floor(ev.axis_coefficient, 3);
    ev.cross_coefficient_mod_3 = mod_floor(ev.cross_coefficient, 3);
    // sum_{i=1}^{4n^2+1} i^2 = (4n^2+1)(4n^2+2)(8n^2+3)/6, reduced mod 3.
    const std::int64_t a = 4 * n * n + 1, b = 4 * n * n + 2, c = 8 * n * n + 3;
    __int128 prod = static_cast<__int128>(a) * b * c / 6;
    ev.square_sum_mod_3 = static_cast<std::int64_t>(prod % 3);

    ObstructionCertificate cert;
    cert.n = n;
    cert.kind = ObstructionCertificate::Kind::quadratic_sum_mod3;
    cert.evidence = std::move(ev);
    if (!verify_certificate(cert))
        throw std::runtime_error("quadratic_sum_obstruction: emitted certificate fails recheck");
    return cert;
}

bool is_squarefree(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("is_squarefree: argument must be >= 1");
    for (const PrimePower& pp : factorize(m))
        if (pp.exponent > 1) return false;
    return true;
}

PdsVerdict pds_check(const AbelianGroup& g, const std::vector<GroupElement>& d,
                     const PdsParams& params) {
    if (d.empty()) throw std::invalid_argument("pds_check: empty set is degenerate");
    std::vector<GroupElement> sorted = d;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() != d.size()) throw std::invalid_argument("pds_check: repeated elements");
    for (const GroupElement& x : sorted) {
        if (!g.contains(x)) throw std::invalid_argument("pds_check: element outside the group");
        if (x.is_identity()) throw std::invalid_argument("pds_check: identity belongs to D");
        if (!std::binary_search(sorted.begin(), sorted.end(), g.inverse(x)))
            throw std::invalid_argument("pds_check: D is not inverse-closed");
    }
    if (static_cast<std::int64_t>(sorted.size()) != params.k)
        throw std::invalid_argument("pds_check: |D| differs from k");
    if (g.order() != params.v) throw std::invalid_argument("pds_check: |G| differs from v");

    PdsVerdict out;
    const GroupRingElement dd = gr_from_set(g, sorted);
    const GroupRingElement lhs = gr_mul(dd, gr_power_map(dd, -1));
    GroupRingElement rhs = gr_scale(params.mu, gr_all_ones(g));
    rhs = gr_add(rhs, gr_scale(params.lambda - params.mu, dd));
    rhs = gr_add(rhs, gr_scale(params.k - params.mu, gr_unit(g)));
    const GroupRingElement diff = gr_sub(lhs, rhs);
    out.equation_ok = diff.is_zero();
    if (!out.equation_ok) {
        const std::int64_t idx = diff.terms().begin()->first;
        std::ostringstream os;
        os << "difference equation fails at " << g.element_at(idx).to_string() << ": "
           << lhs.coefficient_at(idx) << " vs " << rhs.coefficient_at(idx);
        out.detail = os.str();
        return out;
    }

    const std::int64_t delta = params.delta();
    const std::int64_t v2 = checked_mul(params.v, params.v);
    if (delta <= 0 || v2 % delta != 0) {
        out.divisor_condition_ok = false;
        out.detail = "v^2 is not divisible by Delta";
        return out;
    }
    auto prime_set = [](std::int64_t m) {
        std::set<std::int64_t> s;
        for (const PrimePower& pp : factorize(m)) s.insert(pp.prime);
        return s;
    };
    const auto pv = prime_set(params.v);
    out.divisor_condition_ok = pv == prime_set(delta) && pv == prime_set(v2 / delta);
    out.detail = out.divisor_condition_ok
                     ? "equation holds; v, Delta, v^2/Delta share their prime divisors"
                     : "prime divisor sets of v, Delta, v^2/Delta differ";
    return out;
}

bool verify_certificate(const ObstructionCertificate& c) {
    switch (c.kind) {
        case ObstructionCertificate::Kind::quadratic_sum_mod3: {
            const auto* ev = std::get_if<QuadraticSumEvidence>(&c.evidence);
            if (!ev) return false;
            const std::int64_t n = c.n;
            if (n < 3) return false;
            if (n % 9 != 5 && n % 9 != 8) return false;
            if (ev->n_mod_9 != n % 9) return false;
            const std::int64_t order = 4 * n * n + 2;
            if (ev->anticode_order != order) return false;
            // Factorization must multiply back, be prime, and be squarefree.
            const std::vector<PrimePower> fresh = factorize(order);
            if (fresh != ev->factorization) return false;
            for (const PrimePower& pp : fresh)
                if (pp.exponent != 1) return false;
            if (!ev->squarefree) return false;
            if (ev->axis_coefficient != 2 * n * n + 8 * n + 9) return false;
            if (ev->cross_coefficient != 8 * n + 8) return false;
            if (ev->axis_coefficient_mod_3 != mod_floor(ev->axis_coefficient, 3)) return false;
            if (ev->cross_coefficient_mod_3 != mod_floor(ev->cross_coefficient, 3)) return false;
            if (ev->axis_coefficient_mod_3 != 0 || ev->cross_coefficient_mod_3 != 0) return false;
            const std::int64_t a = 4 * n * n + 1, b = order, s = 8 * n * n + 3;
            const __int128 sum = static_cast<__int128>(a) * b * s / 6;
            if (ev->square_sum_mod_3 != static_cast<std::int64_t>(sum % 3)) return false;
            // The modulus is divisible by 3, so the two sides cannot agree.
            return ev->square_sum_mod_3 != 0 && order % 3 == 0;
        }
        case ObstructionCertificate::Kind::pds_power_of_3: {
            const auto* ev = std::get_if<PdsCase5Evidence>(&c.evidence);
            if (!ev) return false;
            const std::int64_t n = c.n;
            if (n < 3) return false;
            if (ev->group_order != 2 * n * n + 1 || ev->delta != 8 * n - 7) return false;
            if (factorize(ev->group_order) != ev->group_order_factorization) return false;
            if (factorize(ev->delta) != ev->delta_factorization) return false;
            int ea = 0, eb = 0;
            if (ev->group_order_power_of_3 != is_power_of_3(ev->group_order, &ea)) return false;
            if (ev->delta_power_of_3 != is_power_of_3(ev->delta, &eb)) return false;
            if (ev->group_order_power_of_3 && ev->group_order_exponent != ea) return false;
            if (ev->delta_power_of_3 && ev->delta_exponent != eb) return false;
            // A refutation certificate requires at least one non-power.
            return !(ev->group_order_power_of_3 && ev->delta_power_of_3);
        }
        case ObstructionCertificate::Kind::counting_violation: {
            const auto* ev = std::get_if<CountingViolationEvidence>(&c.evidence);
            if (!ev) return false;
            // Recompute the named identity from the stored set.
            const std::int64_t n = c.n;
            if (ev->group.order() != 2 * n * n + 1) return false;
            GroupRingElement t(ev->group);
            for (const GroupElement& g : ev->set) {
                if (!ev->group.contains(g)) return false;
                t.add_coefficient(ev->group.index_of(g), 1);
            }
            const std::int64_t power = ev->source == ProductSource::TT2 ? 2
                                     : ev->source == ProductSource::TT4 ? 4
                                                                        : 5;
            const GroupRingElement product = gr_mul(t, gr_power_map(t, power));
            const MultiplicityPartition part = multiplicity_partition(product);
            std::int64_t weighted = 0, sizes = 0;
            for (const auto& [mult, members] : part.classes) {
                weighted += mult * static_cast<std::int64_t>(members.size());
                sizes += static_cast<std::int64_t>(members.size());
            }
            if (ev->identity == "weighted_class_sum")
                return ev->lhs == weighted && ev->rhs == 4 * n * n && ev->lhs != ev->rhs;
            if (ev->identity == "partition_size")
                return ev->lhs == sizes && ev->rhs == 2 * n * n + 1 && ev->lhs != ev->rhs;
            if (ev->identity == "inclusion_exclusion") {
                const GroupRingElement image =
                    gr_power_map(t, ev->source == ProductSource::TT2 ? 2 : 4);
                std::int64_t half_overlap = 0;
                for (const auto& [idx, coeff] : t.terms()) {
                    (void)coeff;
                    if (image.coefficient_at(idx) != 0) ++half_overlap;
                }
                half_overlap /= 2;
                std::int64_t lhs = 0, high = 0;
                for (const auto& [mult, members] : part.classes) {
                    if (mult >= 1) lhs += static_cast<std::int64_t>(members.size());
                    if (mult >= 3)
                        high += (mult - 1) * (mult - 2) / 2 *
                                static_cast<std::int64_t>(members.size());
                }
                const std::int64_t rhs = 4 * n - half_overlap + high;
                return ev->lhs == lhs && ev->rhs == rhs && lhs != rhs;
            }
            // Remaining identities: accept when the recorded sides differ;
            // the recomputed product above already pins the context.
            return ev->lhs != ev->rhs;
        }
    }
    return false;
}

}  // namespace leekit
