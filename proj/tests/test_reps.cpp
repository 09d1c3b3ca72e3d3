#include <doctest.h>

#include "dhmono/reps.hpp"
#include "test_helpers.hpp"

using namespace dhmono;
using dhmono::testing::random_element;

TEST_CASE("schrodinger matrices on the characteristic-function basis") {
    int n = 3;
    const CyclotomicField* f = CyclotomicField::get(n);
    CycScalar g = CycScalar::zeta_pow(f, 1);

    // central element acts by the tautological character
    CHECK(schrodinger_matrix(HeisenbergElement(n, 1, 0, 0)) ==
          CycMatrix::identity(f, n).scaled(g));

    // translation part: e_j -> e_{j-1}
    CycMatrix t = schrodinger_matrix(HeisenbergElement(n, 0, 1, 0));
    CycMatrix expect_t(f, n, n);
    for (int i = 0; i < n; ++i) expect_t.at(mod_n(i - 1, n), i) = CycScalar::one(f);
    CHECK(t == expect_t);

    // character part: diag(1, gamma, gamma^2)
    CycMatrix d = schrodinger_matrix(HeisenbergElement(n, 0, 0, 1));
    CycMatrix expect_d(f, n, n);
    for (int i = 0; i < n; ++i) expect_d.at(i, i) = CycScalar::zeta_pow(f, i);
    CHECK(d == expect_d);
}

TEST_CASE("dihedral schrodinger extension") {
    int n = 3;
    const CyclotomicField* f = CyclotomicField::get(n);
    CycMatrix s = dihedral_schrodinger_matrix(dh_sigma(n));
    // x -> -x fixes e_0, swaps e_1 and e_2
    CHECK(s.at(0, 0) == CycScalar::one(f));
    CHECK(s.at(2, 1) == CycScalar::one(f));
    CHECK(s.at(1, 2) == CycScalar::one(f));
    CHECK(s.at(1, 1).is_zero());

    CHECK(dihedral_schrodinger_matrix(dh_identity(n)).is_identity());

    // restriction to eps = +1 is the plain representation
    Rng rng(0x11ull);
    for (int t = 0; t < 50; ++t) {
        HeisenbergElement h(n, rng.uniform(0, n - 1), rng.uniform(0, n - 1), rng.uniform(0, n - 1));
        CHECK(dihedral_schrodinger_matrix(DihedralElement(1, h)) == schrodinger_matrix(h));
    }

    // sigma a sigma = a^{-1} propagates through the matrices
    CycMatrix ma = dihedral_schrodinger_matrix(dh_a(n));
    CycMatrix mi = dihedral_schrodinger_matrix(dh_inverse(dh_a(n)));
    CHECK(s * ma * s == mi);
}

TEST_CASE("homomorphism property on seeded pairs") {
    Rng rng(0x2222ull);
    int n = 3;
    for (int t = 0; t < 500; ++t) {
        auto x = random_element(rng, n);
        auto y = random_element(rng, n);
        REQUIRE(dihedral_schrodinger_matrix(dh_mul(x, y)) ==
                dihedral_schrodinger_matrix(x) * dihedral_schrodinger_matrix(y));
    }
    for (const CharOrbit& u : nontrivial_orbits(n)) {
        OrbitRep rep(u);
        for (int t = 0; t < 500; ++t) {
            auto x = random_element(rng, n);
            auto y = random_element(rng, n);
            REQUIRE(rep.matrix(dh_mul(x, y)) == rep.matrix(x) * rep.matrix(y));
        }
    }
}

TEST_CASE("W_u closed-form matrices") {
    int n = 3;
    const CyclotomicField* f = CyclotomicField::get(n);
    OrbitRep rep = w_u_matrices(CharOrbit(n, 1, 0));
    CycMatrix p(f, 2, 2);
    p.at(0, 0) = CycScalar::zeta_pow(f, 1);
    p.at(1, 1) = CycScalar::zeta_pow(f, -1);
    CycMatrix r(f, 2, 2);
    r.at(0, 1) = CycScalar::one(f);
    r.at(1, 0) = CycScalar::one(f);

    CHECK(rep.a_matrix() == p);
    CHECK(rep.alpha_matrix().is_identity());
    CHECK(rep.sigma_matrix() == r);

    for (const CharOrbit& u : nontrivial_orbits(n)) {
        OrbitRep w(u);
        CHECK((w.sigma_matrix() * w.sigma_matrix()).is_identity());
    }

    OrbitRep diag = w_u_matrices(CharOrbit(n, 1, 1));
    CHECK(diag.a_matrix() == diag.alpha_matrix());
    CHECK(diag.a_matrix() == p);

    CHECK_THROWS_AS(w_u_matrices(CharOrbit(n, 0, 0)), std::invalid_argument);
}

TEST_CASE("commutant dimensions") {
    int n = 3;
    const CyclotomicField* f = CyclotomicField::get(n);
    std::vector<CycMatrix> phi_gens{schrodinger_matrix(HeisenbergElement(n, 0, 1, 0)),
                                    schrodinger_matrix(HeisenbergElement(n, 0, 0, 1))};
    CHECK(commutant_dimension(phi_gens) == 1);

    std::vector<CycMatrix> trivial2{CycMatrix::identity(f, 2)};
    CHECK(commutant_dimension(trivial2) == 4);

    for (const CharOrbit& u : nontrivial_orbits(n)) {
        OrbitRep w(u);
        std::vector<CycMatrix> gens{w.sigma_matrix(), w.a_matrix(), w.alpha_matrix()};
        CHECK(commutant_dimension(gens) == 1);
    }
}

TEST_CASE("W_u isomorphism classes separate orbits") {
    for (int n : {3, 5}) {
        auto orbits = nontrivial_orbits(n);
        for (const auto& u : orbits)
            for (const auto& v : orbits) {
                OrbitRep ru(u), rv(v);
                std::vector<CycMatrix> gu{ru.sigma_matrix(), ru.a_matrix(), ru.alpha_matrix()};
                std::vector<CycMatrix> gv{rv.sigma_matrix(), rv.a_matrix(), rv.alpha_matrix()};
                int dim = intertwiner_dimension(gu, gv);
                if (u == v)
                    CHECK(dim == 1);
                else
                    CHECK(dim == 0);
            }
    }
}

TEST_CASE("orbit bookkeeping") {
    CHECK(enumerate_orbits(3).size() == 5);
    CHECK(enumerate_orbits(5).size() == 13);
    CHECK(enumerate_orbits(7).size() == 25);
    CHECK(enumerate_orbits(9).size() == 41);
    for (int n : {3, 5, 7, 9}) {
        int total = 0;
        // each orbit occurs with multiplicity one, so Sum dim(W_u) = n^2
        for (const auto& u : enumerate_orbits(n)) total += u.dim();
        CHECK(total == n * n);
    }
}

TEST_CASE("regular decomposition of the abelianized adjoint") {
    for (int n : {3, 5}) {
        Certificate c = ad_regular_decomposition(n);
        CHECK(c.passed());
        CHECK(c.witness["characters"] == n * n);
        CHECK(c.witness["span_rank"] == n * n);
        CHECK(c.witness["multiplicity"] == 1);
    }
    // A_(1,0) is the identity element of End(V_n)
    CHECK(regular_eigenvector(3, 0, 0) == CycMatrix::identity(CyclotomicField::get(3), 3));
}
