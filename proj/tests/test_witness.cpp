#include <doctest.h>

#include <stdexcept>

#include <array>
#include <map>
#include <vector>

#include "leekit/witness.hpp"

using namespace leekit;

namespace {

// Test-side GF(3)[x] oracle, independent of the library implementation.
using TPoly = std::vector<int>;

TPoly tmod(TPoly a, const TPoly& m) {
    const int dm = static_cast<int>(m.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
        const int c = a[static_cast<size_t>(i)] % 3;
        if (c == 0) continue;
        for (int j = 0; j <= dm; ++j) {
            int& t = a[static_cast<size_t>(i - dm + j)];
            t = ((t - c * m[static_cast<size_t>(j)]) % 3 + 3) % 3;
        }
    }
    a.resize(static_cast<size_t>(dm));
    return a;
}

std::array<int, 5> tmul(const std::array<int, 5>& a, const std::array<int, 5>& b,
                        const TPoly& modulus) {
    TPoly prod(9, 0);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            prod[static_cast<size_t>(i + j)] =
                (prod[static_cast<size_t>(i + j)] + a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)]) % 3;
    const TPoly red = tmod(prod, modulus);
    std::array<int, 5> out{};
    for (int i = 0; i < 5; ++i) out[static_cast<size_t>(i)] = red[static_cast<size_t>(i)];
    return out;
}

std::array<int, 5> tpow(std::array<int, 5> base, int e, const TPoly& modulus) {
    std::array<int, 5> acc{1, 0, 0, 0, 0};
    while (e > 0) {
        if (e & 1) acc = tmul(acc, base, modulus);
        base = tmul(base, base, modulus);
        e >>= 1;
    }
    return acc;
}

// Counts of T*T^(2) coefficients computed with plain loops, no group ring.
std::map<int, int> brute_tt2_multiplicities_z19(const std::vector<int>& t_set) {
    std::vector<int> coeff(19, 0);
    for (int a : t_set)
        for (int b : t_set) coeff[static_cast<size_t>((a + 2 * b) % 19)] += 1;
    std::map<int, int> sizes;
    for (int h = 0; h < 19; ++h) ++sizes[coeff[static_cast<size_t>(h)]];
    return sizes;
}

}  // namespace

TEST_CASE("construct_dpl11 satisfies every stated property") {
    const Dpl11Construction c = construct_dpl11_detailed();
    const Witness& w = c.witness;
    CHECK(w.n == 11);
    CHECK(w.home == make_group({3, 3, 3, 3, 3}));
    CHECK(w.elements.size() == 22);

    const WitnessVerdict verdict = verify_witness(w);
    CHECK(verdict.ok());

    // T is fixed by doubling, and T^2 = 2H - T + 20e.
    const GroupRingElement t = gr_from_set(w.home, w.elements);
    CHECK(gr_power_map(t, 2) == t);
    const GroupRingElement lhs = gr_mul(t, t);
    GroupRingElement rhs = gr_sub(gr_scale(2, gr_all_ones(w.home)), t);
    rhs = gr_add(rhs, gr_scale(20, gr_unit(w.home)));
    CHECK(lhs == rhs);

    // modulus: degree 5, irreducible over GF(3) by the test-side oracle
    REQUIRE(c.modulus.size() == 6);
    const TPoly modulus(c.modulus.begin(), c.modulus.end());
    for (int deg = 1; deg <= 2; ++deg) {
        const int count = deg == 1 ? 3 : 9;
        for (int v = 0; v < count; ++v) {
            TPoly div(static_cast<size_t>(deg) + 1, 0);
            div[0] = v % 3;
            if (deg == 2) div[1] = (v / 3) % 3;
            div[static_cast<size_t>(deg)] = 1;
            TPoly m2(modulus);
            const TPoly rem = tmod(m2, div);
            bool zero = true;
            for (int x : rem) zero = zero && x % 3 == 0;
            CHECK(!zero);
        }
    }

    // primitive element has multiplicative order exactly 242
    std::array<int, 5> g{};
    for (int i = 0; i < 5; ++i)
        g[static_cast<size_t>(i)] = static_cast<int>(c.primitive_element.residues[static_cast<size_t>(i)]);
    const std::array<int, 5> one{1, 0, 0, 0, 0};
    CHECK(tpow(g, 242, modulus) == one);
    CHECK(tpow(g, 121, modulus) != one);
    CHECK(tpow(g, 22, modulus) != one);
    CHECK(c.exponent_step == 11);

    // T is exactly the 22 powers of g^11 (test-side recomputation)
    const std::array<int, 5> step = tpow(g, 11, modulus);
    std::vector<GroupElement> expected;
    std::array<int, 5> cur = one;
    for (int i = 0; i < 22; ++i) {
        expected.push_back(w.home.element({cur[0], cur[1], cur[2], cur[3], cur[4]}));
        cur = tmul(cur, step, modulus);
    }
    std::sort(expected.begin(), expected.end());
    CHECK(expected == w.elements);
}

TEST_CASE("construct_dpl3 is the shipped order-19 witness") {
    const Witness w = construct_dpl3();
    CHECK(w.n == 3);
    CHECK(w.home == make_group({19}));
    REQUIRE(w.elements.size() == 6);
    std::vector<std::int64_t> residues;
    for (const GroupElement& e : w.elements) residues.push_back(e.residues[0]);
    CHECK(residues == std::vector<std::int64_t>{1, 7, 8, 11, 12, 18});
    CHECK(verify_witness(w).ok());

    // brute multiplicity profile of T*T^(2): |X_0|=1, |X_1|=6, |X_2|=6, |X_3|=6
    const std::map<int, int> profile = brute_tt2_multiplicities_z19({1, 7, 8, 11, 12, 18});
    CHECK(profile.at(0) == 1);
    CHECK(profile.at(1) == 6);
    CHECK(profile.at(2) == 6);
    CHECK(profile.at(3) == 6);
}

TEST_CASE("verify_witness flags each failing condition") {
    const AbelianGroup z19 = make_group({19});

    // condition (1): element removed
    {
        std::vector<GroupElement> elems;
        for (std::int64_t r : {1, 7, 8, 11, 12}) elems.push_back(z19.element({r}));
        const WitnessVerdict v = verify_witness(make_witness(3, z19, elems));
        CHECK(!v.cardinality.passed);
    }
    // condition (2): not inverse-closed
    {
        std::vector<GroupElement> elems;
        for (std::int64_t r : {1, 7, 8, 11, 12, 17}) elems.push_back(z19.element({r}));
        const WitnessVerdict v = verify_witness(make_witness(3, z19, elems));
        CHECK(v.cardinality.passed);
        CHECK(!v.inverse_closed.passed);
    }
    // condition (3): {±1, ±2, ±3} has coefficient 3 at element 2
    {
        std::vector<GroupElement> elems;
        for (std::int64_t r : {1, 2, 3, 16, 17, 18}) elems.push_back(z19.element({r}));
        const Witness w = make_witness(3, z19, elems);
        const WitnessVerdict v = verify_witness(w);
        CHECK(v.cardinality.passed);
        CHECK(v.inverse_closed.passed);
        CHECK(!v.square_identity.passed);
        const GroupRingElement sq = gr_mul(gr_from_set(z19, elems), gr_from_set(z19, elems));
        CHECK(sq.coefficient(z19.element({2})) == 3);
    }
    // structural error: group order != 2n^2+1
    {
        const AbelianGroup z21 = make_group({21});
        CHECK_THROWS_AS(verify_witness(make_witness(3, z21, {})), std::invalid_argument);
    }
}

TEST_CASE("pair_representatives") {
    const Witness w3 = construct_dpl3();
    const auto reps3 = pair_representatives(w3);
    REQUIRE(reps3.size() == 3);
    CHECK(reps3[0].residues[0] == 1);
    CHECK(reps3[1].residues[0] == 7);
    CHECK(reps3[2].residues[0] == 8);

    CHECK(pair_representatives(construct_dpl11()).size() == 11);

    const AbelianGroup z19 = make_group({19});
    std::vector<GroupElement> open;
    for (std::int64_t r : {1, 2, 3, 16, 17, 15}) open.push_back(z19.element({r}));
    const Witness bad{3, z19, open};
    CHECK_THROWS_AS(pair_representatives(bad), std::invalid_argument);
}

TEST_CASE("lift_to_code produces tiling homomorphisms") {
    const GroupHomomorphism phi3 = lift_to_code(construct_dpl3());
    CHECK(phi3.target == make_group({38}));
    CHECK(phi3.source_dim == 3);
    const LeeShape ds3 = canonical_double_sphere(3, 2);
    CHECK(bijection_check(phi3, ds3).bijective);
    CHECK(packing_crosscheck(phi3, ds3));
    CHECK(kernel_basis(phi3).determinant == 38);

    const GroupHomomorphism phi11 = lift_to_code(construct_dpl11());
    CHECK(phi11.target == make_group({3, 3, 3, 3, 6}));
    CHECK(kernel_basis(phi11).determinant == 486);

    // images carry odd parity: the image of e_i has odd last residue
    for (const GroupElement& a : phi11.images) CHECK(a.residues.back() % 2 == 1);

    // a non-witness is rejected before lifting
    const AbelianGroup z19 = make_group({19});
    std::vector<GroupElement> elems;
    for (std::int64_t r : {1, 2, 3, 16, 17, 18}) elems.push_back(z19.element({r}));
    CHECK_THROWS_AS(lift_to_code(make_witness(3, z19, elems)), std::invalid_argument);
}

TEST_CASE("translate disjointness for the accepted codes") {
    for (const Witness& w : {construct_dpl3(), construct_dpl11()}) {
        const GroupHomomorphism phi = lift_to_code(w);
        const LeeShape ds = canonical_double_sphere(static_cast<int>(w.n), 2);
        // no difference of two distinct anticode points lies in the kernel:
        // exactly the packing crosscheck, restated as translate disjointness
        CHECK(packing_crosscheck(phi, ds));
    }
}

TEST_CASE("character_nonvanishing") {
    const CharacterScanResult r3 = character_nonvanishing(construct_dpl3());
    CHECK(r3.all_nonzero);
    CHECK(r3.characters_checked == 18);

    const CharacterScanResult r11 = character_nonvanishing(construct_dpl11());
    CHECK(r11.all_nonzero);
    CHECK(r11.characters_checked == 242);

    // a coset-structured set in [9] has a vanishing character sum
    const AbelianGroup z9 = make_group({9});
    const CharacterScanResult toy =
        character_scan(z9, {z9.element({0}), z9.element({3}), z9.element({6})});
    CHECK(!toy.all_nonzero);
    REQUIRE(toy.vanishing.has_value());
    // the reported character indeed vanishes
    const GroupRingElement a =
        gr_from_set(z9, {z9.element({0}), z9.element({3}), z9.element({6})});
    CHECK(character_sum(*toy.vanishing, a).is_zero());
}

TEST_CASE("witness identity suite passes on both constructions") {
    for (const Witness& w : {construct_dpl3(), construct_dpl11()}) {
        const auto checks = witness_identity_suite(w);
        REQUIRE(checks.size() >= 7);
        for (const IdentityCheck& c : checks) {
            INFO(c.name, ": ", c.detail);
            CHECK(c.passed);
        }
    }
}

TEST_CASE("n = 11 witness is fixed by doubling and quadrupling") {
    const Witness w = construct_dpl11();
    const GroupRingElement t = gr_from_set(w.home, w.elements);
    CHECK(gr_power_map(t, 2) == t);
    CHECK(gr_power_map(t, 4) == t);
}

TEST_CASE("make_witness validates membership") {
    const AbelianGroup z19 = make_group({19});
    CHECK_THROWS_AS(make_witness(3, z19, {GroupElement{{1, 0}}}), std::invalid_argument);
    // duplicates collapse
    const Witness w = make_witness(3, z19, {z19.element({1}), z19.element({1}), z19.element({18})});
    CHECK(w.elements.size() == 2);
}
