#include <doctest.h>

#include <stdexcept>

#include <random>
#include <set>
#include <vector>

#include "leekit/obstruct.hpp"

using namespace leekit;

namespace {

std::vector<GroupElement> random_inverse_closed_subset(const AbelianGroup& g, int pairs,
                                                       std::mt19937_64& rng) {
    std::set<std::int64_t> reps;
    while (static_cast<int>(reps.size()) < pairs) {
        const std::int64_t idx =
            1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(g.order() - 1));
        const std::int64_t inv = g.index_inverse(idx);
        reps.insert(std::min(idx, inv));
    }
    std::vector<GroupElement> out;
    for (std::int64_t r : reps) {
        out.push_back(g.element_at(r));
        out.push_back(g.element_at(g.index_inverse(r)));
    }
    return out;
}

}  // namespace

TEST_CASE("counting_profile of the two witnesses") {
    const Witness w3 = construct_dpl3();
    const CountingProfile p3 = counting_profile(w3, ProductSource::TT2);
    CHECK(p3.partition.max_multiplicity == 3);
    CHECK(p3.weighted_size_sum == 36);
    CHECK(p3.class_size_sum == 19);
    CHECK(p3.beta == 0);
    CHECK(p3.partition.class_size(0) == 1);
    CHECK(p3.partition.class_size(1) == 6);
    CHECK(p3.partition.class_size(2) == 6);
    CHECK(p3.partition.class_size(3) == 6);

    const CountingProfile p3_4 = counting_profile(w3, ProductSource::TT4);
    CHECK(p3_4.weighted_size_sum == 36);
    CHECK(p3_4.class_size_sum == 19);
    CHECK(p3_4.gamma == 0);

    const CountingProfile p3_5 = counting_profile(w3, ProductSource::TT5);
    CHECK(p3_5.weighted_size_sum == 36);

    const Witness w11 = construct_dpl11();
    const CountingProfile p11 = counting_profile(w11, ProductSource::TT2);
    CHECK(p11.partition.max_multiplicity == 22);
    CHECK(p11.beta == 11);
    CHECK(p11.partition.class_size(22) == 1);
    CHECK(p11.partition.classes.at(22)[0] == w11.home.index_of(w11.home.identity()));
    CHECK(p11.weighted_size_sum == 4 * 11 * 11);
    CHECK(p11.class_size_sum == 243);

    const CountingProfile p11_4 = counting_profile(w11, ProductSource::TT4);
    CHECK(p11_4.gamma == 11);
    const CountingProfile p11_5 = counting_profile(w11, ProductSource::TT5);
    CHECK(p11_5.class_size_sum == 243);

    // a non-witness input is a precondition violation
    const AbelianGroup z19 = make_group({19});
    std::vector<GroupElement> bad;
    for (std::int64_t r : {1, 2, 3, 16, 17, 18}) bad.push_back(z19.element({r}));
    CHECK_THROWS_AS(counting_profile(make_witness(3, z19, bad), ProductSource::TT2),
                    std::invalid_argument);
}

TEST_CASE("partition-level identities hold for arbitrary inverse-closed subsets") {
    // Sum and mass identities need only the definitions, so they hold for
    // any inverse-closed 2n-subset of a group of order 2n^2+1.
    std::mt19937_64 rng(0x5EEDBEEF);
    int cases = 0;
    struct Setting { std::int64_t n; std::vector<std::int64_t> factors; };
    const std::vector<Setting> settings{{3, {19}},  {4, {33}},      {5, {51}},
                                        {6, {73}},  {7, {99}},      {7, {3, 33}},
                                        {11, {243}}, {11, {3, 3, 3, 3, 3}}};
    for (const Setting& s : settings) {
        const AbelianGroup g = make_group(s.factors);
        for (int trial = 0; trial < 26; ++trial) {
            const std::vector<GroupElement> set =
                random_inverse_closed_subset(g, static_cast<int>(s.n), rng);
            const GroupRingElement t = gr_from_set(g, set);
            const GroupRingElement product = gr_mul(t, gr_power_map(t, 2));
            const MultiplicityPartition part = multiplicity_partition(product);
            std::int64_t weighted = 0, sizes = 0;
            for (const auto& [mult, members] : part.classes) {
                weighted += mult * static_cast<std::int64_t>(members.size());
                sizes += static_cast<std::int64_t>(members.size());
            }
            CHECK(weighted == 4 * s.n * s.n);
            CHECK(sizes == 2 * s.n * s.n + 1);
            ++cases;
        }
    }
    CHECK(cases >= 200);
}

TEST_CASE("mod3_classify") {
    const Mod3Profile p3 = mod3_classify(construct_dpl3());
    CHECK(p3.residue == 0);
    CHECK(p3.congruence_ok);
    CHECK(p3.closed_forms_checked);
    CHECK(p3.x0 == 1);
    CHECK(p3.x1 == 6);
    CHECK(p3.x2 == 6);
    CHECK(p3.x3 == 6);
    CHECK(p3.class1_equals_set);
    CHECK(p3.exact_identity_ok);
    CHECK(p3.beta_zero);
    CHECK(p3.ok());

    const Mod3Profile p11 = mod3_classify(construct_dpl11());
    CHECK(p11.residue == 2);
    CHECK(p11.congruence_ok);
    CHECK(!p11.closed_forms_checked);
    CHECK(p11.ok());
}

TEST_CASE("pds_route_check") {
    const PowerOf3Route r11 = pds_route_check(11);
    CHECK(r11.both_powers);
    CHECK(r11.group_order_exponent == 5);  // 243 = 3^5
    CHECK(r11.delta_exponent == 4);        // 81 = 3^4
    CHECK(!r11.below_scope);

    CHECK(!pds_route_check(4).both_powers);
    CHECK(!pds_route_check(3).both_powers);  // 19 is not a power of 3

    // n = 2 passes the arithmetic but is outside scope; reported, not interpreted
    const PowerOf3Route r2 = pds_route_check(2);
    CHECK(r2.both_powers);
    CHECK(r2.below_scope);

    // sweep: the arithmetic singles out n = 11 in [3, 10000]
    for (std::int64_t n = 3; n <= 10000; ++n)
        CHECK(pds_route_check(n).both_powers == (n == 11));
}

TEST_CASE("pds_case5_certificate") {
    const ObstructionCertificate c4 = pds_case5_certificate(4);
    CHECK(c4.kind == ObstructionCertificate::Kind::pds_power_of_3);
    CHECK(verify_certificate(c4));
    const auto& ev = std::get<PdsCase5Evidence>(c4.evidence);
    CHECK(ev.group_order == 33);
    CHECK(!ev.group_order_power_of_3);
    CHECK(ev.delta == 25);
    CHECK(!ev.delta_power_of_3);

    CHECK_THROWS_AS(pds_case5_certificate(11), std::invalid_argument);

    // tampering is detected
    ObstructionCertificate bad = c4;
    std::get<PdsCase5Evidence>(bad.evidence).delta = 26;
    CHECK(!verify_certificate(bad));
}

TEST_CASE("quadratic_sum_obstruction") {
    const auto c5 = quadratic_sum_obstruction(5);
    REQUIRE(c5.has_value());
    CHECK(c5->kind == ObstructionCertificate::Kind::quadratic_sum_mod3);
    const auto& ev5 = std::get<QuadraticSumEvidence>(c5->evidence);
    CHECK(ev5.anticode_order == 102);
    CHECK(ev5.factorization ==
          std::vector<PrimePower>{{2, 1}, {3, 1}, {17, 1}});
    CHECK(ev5.square_sum_mod_3 != 0);
    CHECK(verify_certificate(*c5));

    const auto c8 = quadratic_sum_obstruction(8);
    REQUIRE(c8.has_value());
    CHECK(std::get<QuadraticSumEvidence>(c8->evidence).factorization ==
          std::vector<PrimePower>{{2, 1}, {3, 1}, {43, 1}});

    CHECK(!quadratic_sum_obstruction(3).has_value());  // 3 mod 9 = 3
    CHECK(!quadratic_sum_obstruction(11).has_value());

    const auto c14 = quadratic_sum_obstruction(14);
    REQUIRE(c14.has_value());
    CHECK(verify_certificate(*c14));

    // tampered factorization is rejected
    ObstructionCertificate bad = *c5;
    std::get<QuadraticSumEvidence>(bad.evidence).factorization[2] = {19, 1};
    CHECK(!verify_certificate(bad));

    // full sweep to 500: a certificate appears iff the hypothesis holds, and
    // every emitted certificate re-verifies
    for (std::int64_t n = 3; n <= 500; ++n) {
        const bool hypothesis = (n % 9 == 5 || n % 9 == 8) && is_squarefree(4 * n * n + 2);
        const auto cert = quadratic_sum_obstruction(n);
        CHECK(cert.has_value() == hypothesis);
        if (cert) CHECK(verify_certificate(*cert));
    }
}

TEST_CASE("is_squarefree") {
    CHECK(is_squarefree(102));
    CHECK(!is_squarefree(12));
    CHECK(is_squarefree(1));
    CHECK(!is_squarefree(243));
    CHECK(is_squarefree(2 * 3 * 5 * 7 * 11));
    CHECK_THROWS_AS(is_squarefree(0), std::invalid_argument);
}

TEST_CASE("pds_check accepts the dimension-11 witness") {
    const Witness w = construct_dpl11();
    const PdsParams params{243, 22, 1, 2};
    CHECK(params.delta() == 81);
    const PdsVerdict v = pds_check(w.home, w.elements, params);
    CHECK(v.equation_ok);
    CHECK(v.divisor_condition_ok);
    CHECK(v.ok());
}

TEST_CASE("pds_check rejects degenerate and random inputs") {
    const AbelianGroup g = make_group({3, 3, 3, 3, 3});
    CHECK_THROWS_AS(pds_check(g, {}, PdsParams{243, 0, 1, 2}), std::invalid_argument);

    // identity inside D
    CHECK_THROWS_AS(pds_check(g, {g.identity()}, PdsParams{243, 1, 1, 2}), std::invalid_argument);

    // a random inverse-closed 22-subset fails the equation
    std::mt19937_64 rng(1234);
    const std::vector<GroupElement> random_set = random_inverse_closed_subset(g, 11, rng);
    const PdsVerdict v = pds_check(g, random_set, PdsParams{243, 22, 1, 2});
    CHECK(!v.equation_ok);
}

TEST_CASE("counting_violation certificates recompute from the evidence") {
    // {±1, ±2, ±3} over [19] is not a witness; fabricate the
    // inclusion-exclusion record it actually produces and check both sides.
    const AbelianGroup z19 = make_group({19});
    std::vector<GroupElement> set;
    for (std::int64_t r : {1, 2, 3, 16, 17, 18}) set.push_back(z19.element({r}));
    const GroupRingElement t = gr_from_set(z19, set);
    const GroupRingElement product = gr_mul(t, gr_power_map(t, 2));
    const MultiplicityPartition part = multiplicity_partition(product);

    std::int64_t half_overlap = 0;
    const GroupRingElement doubled = gr_power_map(t, 2);
    for (const auto& [idx, c] : t.terms()) {
        (void)c;
        if (doubled.coefficient_at(idx) != 0) ++half_overlap;
    }
    half_overlap /= 2;
    std::int64_t lhs = 0, high = 0;
    for (const auto& [mult, members] : part.classes) {
        if (mult >= 1) lhs += static_cast<std::int64_t>(members.size());
        if (mult >= 3)
            high += (mult - 1) * (mult - 2) / 2 * static_cast<std::int64_t>(members.size());
    }
    const std::int64_t rhs = 4 * 3 - half_overlap + high;
    REQUIRE(lhs != rhs);  // the set is not a witness, the identity fails

    ObstructionCertificate cert;
    cert.n = 3;
    cert.kind = ObstructionCertificate::Kind::counting_violation;
    cert.evidence =
        CountingViolationEvidence{z19, set, ProductSource::TT2, "inclusion_exclusion", lhs, rhs};
    CHECK(verify_certificate(cert));

    ObstructionCertificate tampered = cert;
    std::get<CountingViolationEvidence>(tampered.evidence).lhs = lhs + 1;
    CHECK(!verify_certificate(tampered));
}
