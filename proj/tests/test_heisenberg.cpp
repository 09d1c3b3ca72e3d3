#include <doctest.h>

#include "dhmono/heisenberg.hpp"
#include "test_helpers.hpp"

using namespace dhmono;
using dhmono::testing::random_element;

TEST_CASE("generator relations") {
    int n = 3;
    auto s = dh_sigma(n), a = dh_a(n), al = dh_alpha(n), e = dh_identity(n);
    CHECK(dh_mul(s, s) == e);
    // a * alpha picks up one central twist, alpha * a does not
    CHECK(dh_mul(a, al) == heis(n, 1, 1, 1));
    CHECK(dh_mul(al, a) == heis(n, 0, 1, 1));
    // commutator [a, alpha] is central with exponent 1
    auto comm = dh_mul(dh_mul(a, al), dh_mul(dh_inverse(a), dh_inverse(al)));
    CHECK(comm == heis(n, 1, 0, 0));
    // sigma conjugation inverts a
    CHECK(dh_mul(dh_mul(s, a), s) == dh_inverse(a));
    CHECK(dh_inverse(a) == heis(n, 0, -1, 0));
}

TEST_CASE("inverse and associativity on seeded samples") {
    Rng rng(0x77AAull);
    for (int n : {3, 5}) {
        auto e = dh_identity(n);
        for (int t = 0; t < 500; ++t) {
            auto x = random_element(rng, n);
            auto y = random_element(rng, n);
            auto z = random_element(rng, n);
            REQUIRE(dh_mul(dh_mul(x, y), z) == dh_mul(x, dh_mul(y, z)));
            REQUIRE(dh_mul(x, dh_inverse(x)) == e);
            REQUIRE(dh_mul(dh_inverse(x), x) == e);
        }
    }
}

TEST_CASE("subgroup generation") {
    for (int n : {3, 5, 7}) {
        auto group = dh_generate({dh_sigma(n), dh_a(n), dh_alpha(n)});
        CHECK(static_cast<int>(group.size()) == 2 * n * n * n);
    }
    CHECK(dh_generate({dh_identity(3)}).size() == 1);
    CHECK(dh_generate({dh_a(5)}).size() == 5);
}

TEST_CASE("abelianized quotient is a homomorphism") {
    Rng rng(0x8181ull);
    int n = 3;
    CHECK(dh_quotient_abelianized(dh_sigma(n)) == AbelianizedElement{-1, 0, 0});
    CHECK(dh_quotient_abelianized(heis(n, 2, 1, 1)) == AbelianizedElement{1, 1, 1});
    for (int t = 0; t < 100; ++t) {
        auto x = random_element(rng, n);
        auto y = random_element(rng, n);
        auto lhs = dh_quotient_abelianized(dh_mul(x, y));
        auto rhs = ab_mul(dh_quotient_abelianized(x), dh_quotient_abelianized(y), n);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("center of H_3 is exactly mu_3") {
    int n = 3;
    std::vector<DihedralElement> h3;
    for (int l = 0; l < n; ++l)
        for (int a = 0; a < n; ++a)
            for (int al = 0; al < n; ++al) h3.push_back(heis(n, l, a, al));
    std::vector<DihedralElement> center;
    for (const auto& x : h3) {
        bool central = true;
        for (const auto& y : h3)
            if (dh_mul(x, y) != dh_mul(y, x)) { central = false; break; }
        if (central) center.push_back(x);
    }
    REQUIRE(center.size() == 3);
    for (const auto& z : center) {
        CHECK(z.h.a == 0);
        CHECK(z.h.alpha == 0);
    }
}

TEST_CASE("mismatched n rejected") {
    CHECK_THROWS_AS(dh_mul(dh_a(3), dh_a(5)), std::invalid_argument);
}
