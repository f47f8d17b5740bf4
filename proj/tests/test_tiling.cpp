#include <doctest.h>

#include <stdexcept>

#include <random>

#include "leekit/tiling.hpp"

using namespace leekit;

TEST_CASE("hom_apply") {
    const AbelianGroup z6 = make_group({6});
    const GroupHomomorphism phi = make_homomorphism(1, z6, {z6.element({1})});
    CHECK(hom_apply(phi, zero_point(1)) == z6.identity());
    CHECK(hom_apply(phi, unit_point(1, 0)) == z6.element({1}));
    CHECK(hom_apply(phi, LatticePoint{{-2}}) == z6.element({4}));

    const AbelianGroup z36 = make_group({3, 6});
    const GroupHomomorphism psi =
        make_homomorphism(2, z36, {z36.element({1, 2}), z36.element({2, 0})});
    CHECK(hom_apply(psi, unit_point(2, 0)) == z36.element({1, 2}));
    CHECK(hom_apply(psi, unit_point(2, 1)) == z36.element({2, 0}));
    CHECK_THROWS_AS(hom_apply(psi, zero_point(3)), std::invalid_argument);
}

TEST_CASE("hom_apply additivity on random pairs") {
    std::mt19937_64 rng(4242);
    const AbelianGroup g = make_group({4, 12});
    const GroupHomomorphism phi =
        make_homomorphism(3, g, {g.element({1, 5}), g.element({2, 7}), g.element({3, 1})});
    for (int trial = 0; trial < 60; ++trial) {
        LatticePoint u = zero_point(3), v = zero_point(3);
        for (int i = 0; i < 3; ++i) {
            u.coords[static_cast<size_t>(i)] = static_cast<std::int64_t>(rng() % 21) - 10;
            v.coords[static_cast<size_t>(i)] = static_cast<std::int64_t>(rng() % 21) - 10;
        }
        CHECK(hom_apply(phi, point_add(u, v)) ==
              g.combine(hom_apply(phi, u), hom_apply(phi, v)));
    }
}

TEST_CASE("bijection_check on the 1-dimensional anticode") {
    const AbelianGroup z6 = make_group({6});
    const LeeShape ds = canonical_double_sphere(1, 2);  // {-2..3}
    REQUIRE(ds.size() == 6);

    const GroupHomomorphism good = make_homomorphism(1, z6, {z6.element({1})});
    CHECK(bijection_check(good, ds).bijective);

    const GroupHomomorphism bad = make_homomorphism(1, z6, {z6.element({2})});
    const BijectionResult res = bijection_check(bad, ds);
    CHECK(!res.bijective);
    REQUIRE(res.collision.has_value());
    const auto& [p, q] = *res.collision;
    CHECK(!(p == q));
    CHECK(hom_apply(bad, p) == hom_apply(bad, q));

    // structural error, not a false verdict
    const LeeShape small = lee_sphere(1, 1, zero_point(1));
    CHECK_THROWS_AS(bijection_check(good, small), std::invalid_argument);
}

TEST_CASE("packing_crosscheck agrees with bijection_check") {
    const AbelianGroup z6 = make_group({6});
    const LeeShape ds = canonical_double_sphere(1, 2);
    CHECK(packing_crosscheck(make_homomorphism(1, z6, {z6.element({1})}), ds));
    CHECK(!packing_crosscheck(make_homomorphism(1, z6, {z6.element({3})}), ds));

    // equivalence over every 1- and 2-dimensional image choice
    for (std::int64_t a = 0; a < 6; ++a) {
        const GroupHomomorphism phi = make_homomorphism(1, z6, {z6.element({a})});
        CHECK(bijection_check(phi, ds).bijective == packing_crosscheck(phi, ds));
    }
    const LeeShape ds2 = canonical_double_sphere(2, 2);
    std::mt19937_64 rng(777);
    for (const AbelianGroup& g : abelian_groups_of_order(18)) {
        for (int trial = 0; trial < 40; ++trial) {
            const GroupElement a =
                g.element_at(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(g.order())));
            const GroupElement b =
                g.element_at(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(g.order())));
            const GroupHomomorphism phi = make_homomorphism(2, g, {a, b});
            CHECK(bijection_check(phi, ds2).bijective == packing_crosscheck(phi, ds2));
        }
    }
}

TEST_CASE("hermite_normal_form") {
    // known small case
    const auto h = hermite_normal_form({{2, 0}, {1, 1}});
    CHECK(h == std::vector<std::vector<std::int64_t>>{{1, 1}, {0, 2}});

    // idempotence and determinant preservation on a 3x3 basis
    const std::vector<std::vector<std::int64_t>> m{{4, 2, 7}, {0, 3, 1}, {2, 2, 2}};
    const auto hm = hermite_normal_form(m);
    CHECK(hermite_normal_form(hm) == hm);
    std::int64_t det = 1;
    for (size_t i = 0; i < hm.size(); ++i) {
        det *= hm[i][i];
        CHECK(hm[i][i] > 0);
        for (size_t j = 0; j < i; ++j) CHECK(hm[i][j] == 0);            // lower part zero
        for (size_t j = 0; j < i; ++j) CHECK(hm[j][i] < hm[i][i]);      // reduced above
        for (size_t j = 0; j < i; ++j) CHECK(hm[j][i] >= 0);
    }
    CHECK(det == 22);  // |det(m)| = 22

    CHECK_THROWS_AS(hermite_normal_form({{1, 2}, {2, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(hermite_normal_form({{1, 2, 3}, {4, 5, 6}}), std::invalid_argument);
}

TEST_CASE("kernel_basis") {
    const AbelianGroup z6 = make_group({6});
    const CodeLattice k1 = kernel_basis(make_homomorphism(1, z6, {z6.element({1})}));
    CHECK(k1.basis == std::vector<std::vector<std::int64_t>>{{6}});
    CHECK(k1.determinant == 6);

    const AbelianGroup z5 = make_group({5});
    const CodeLattice k2 =
        kernel_basis(make_homomorphism(2, z5, {z5.element({1}), z5.element({2})}));
    CHECK(k2.determinant == 5);

    // every basis row lies in the kernel (also asserted internally)
    const GroupHomomorphism phi =
        make_homomorphism(2, z5, {z5.element({1}), z5.element({2})});
    for (const auto& row : k2.basis)
        CHECK(hom_apply(phi, LatticePoint{row}) == z5.identity());

    // non-surjective map is rejected
    CHECK_THROWS_AS(kernel_basis(make_homomorphism(1, z6, {z6.element({2})})),
                    std::invalid_argument);
}

TEST_CASE("is_surjective") {
    const AbelianGroup z6 = make_group({6});
    CHECK(is_surjective(make_homomorphism(1, z6, {z6.element({1})})));
    CHECK(is_surjective(make_homomorphism(1, z6, {z6.element({5})})));
    CHECK(!is_surjective(make_homomorphism(1, z6, {z6.element({2})})));
    const AbelianGroup z33 = make_group({3, 3});
    CHECK(!is_surjective(make_homomorphism(1, z33, {z33.element({1, 1})})));
    CHECK(is_surjective(
        make_homomorphism(2, z33, {z33.element({1, 0}), z33.element({1, 1})})));
}
