#include <doctest.h>

#include "dhmono/curve.hpp"

using namespace dhmono;

namespace {

CycMatrix wu(const CharOrbit& u, const DihedralElement& d) { return OrbitRep(u).matrix(d); }

} // namespace

TEST_CASE("preset validation") {
    CHECK_THROWS_WITH_AS(preset_config(5, 3, "irr"), doctest::Contains("genus >= 6"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(preset_config(6, 4, "irr"), doctest::Contains("odd"),
                         std::invalid_argument);
    CHECK_THROWS_AS(preset_config(6, 3, "bogus"), std::invalid_argument);
    BranchConfig cfg = preset_config(6, 3, "irr");
    CHECK(cfg.passing.size() == 7);
    CHECK(!cfg.identity_warning);
}

TEST_CASE("preset passing matrices match the closed forms") {
    int g = 6, n = 3;
    CharOrbit u(n, 1, 0);
    OrbitRep rep(u);
    auto s = dh_sigma(n), a = dh_a(n), al = dh_alpha(n);

    CycMatrix r = rep.matrix(s);
    CycMatrix pb = rep.matrix(a);
    CycMatrix pc = rep.matrix(al);

    auto mats = passing_matrices(preset_config(g, n, "irr"), u);
    CHECK(mats[0] == r);
    CHECK(mats[1] == pb * r);
    CHECK(mats[2] == pc * r);
    CHECK(mats[3] == pb);
    CHECK(mats[4] == pc);
    CHECK(mats[5].is_identity());
    CHECK(mats[6].is_identity());

    auto span = passing_matrices(preset_config(g, n, "span"), u);
    CHECK(span[0] == pb);
    CHECK(span[1] == pc);
    CHECK(span[2] == pb * r);
    CHECK(span[3] == pc * r);
    CHECK(span[4] == r);
    CHECK(span[5].is_identity());

    auto eq = passing_matrices(preset_config(g, n, "span-bc-equal"), u);
    CHECK(eq[0] == pb);
    CHECK(eq[1] == pc);
    CHECK(eq[2].is_identity());
    CHECK(eq[3] == pb * r);
    CHECK(eq[4] == pc * r);
    CHECK(eq[5] == r);
    CHECK(eq[6].is_identity());
}

TEST_CASE("pinned monodromies") {
    int g = 6, n = 3;
    for (const CharOrbit& u : nontrivial_orbits(n)) {
        OrbitRep rep(u);
        BranchConfig irr = preset_config(g, n, "irr");

        auto m12 = loop_monodromy(irr, u, 1, 2);
        CHECK(m12.kind == MonodromyKind::Identity);
        CHECK(m12.matrix.is_identity());

        auto m211 = loop_monodromy(irr, u, 2, 11);
        CHECK(m211.kind == MonodromyKind::Reflection);
        CHECK(m211.matrix == rep.sigma_matrix());

        auto m27 = loop_monodromy(irr, u, 2, 7);
        CHECK(m27.matrix == rep.matrix(dh_mul(dh_inverse(dh_a(n)), dh_sigma(n)))); // P^{-b} R

        BranchConfig span = preset_config(g, n, "span");
        auto m29 = loop_monodromy(span, u, 2, 9);
        CHECK(m29.matrix == rep.matrix(dh_mul(dh_sigma(n), dh_a(n)))); // R P^b
        auto m49 = loop_monodromy(span, u, 4, 9);
        CHECK(m49.matrix == rep.matrix(dh_mul(dh_sigma(n), dh_alpha(n)))); // R P^c
    }
}

TEST_CASE("trichotomy is exhaustive and literal") {
    int g = 6;
    for (int n : {3, 5}) {
        BranchConfig cfg = preset_config(g, n, "irr");
        const CyclotomicField* f = CyclotomicField::get(n);
        for (const CharOrbit& u : nontrivial_orbits(n)) {
            for (int i = 1; i <= cfg.points(); ++i)
                for (int j = i + 1; j <= cfg.points(); ++j) {
                    auto mc = loop_monodromy(cfg, u, i, j);
                    const CycMatrix& m = mc.matrix;
                    switch (mc.kind) {
                        case MonodromyKind::Identity:
                            CHECK(m.is_identity());
                            break;
                        case MonodromyKind::Reflection:
                            // of the form P^k R: antidiagonal, square is 1, trace 0
                            CHECK(m.at(0, 0).is_zero());
                            CHECK(m.at(1, 1).is_zero());
                            CHECK((m * m).is_identity());
                            CHECK(m.trace().is_zero());
                            break;
                        case MonodromyKind::Rotation:
                            // nontrivial power of P: diagonal, never -I for odd n
                            CHECK(m.at(0, 1).is_zero());
                            CHECK(m.at(1, 0).is_zero());
                            CHECK(!m.is_identity());
                            CHECK(m != CycMatrix::identity(f, 2).scaled(-CycScalar::one(f)));
                            break;
                    }
                }
        }
    }
}

TEST_CASE("loops close up and single-point monodromy is trivial") {
    const CurveDiagram& dia = CurveDiagram::get(6);
    for (int r = 0; r < dia.loop_count(); ++r)
        CHECK(dia.loop(r).events.size() % 2 == 0);

    // crossing one cut twice with opposite sheet transitions cancels
    BranchConfig cfg = preset_config(6, 3, "irr");
    for (int cut = 1; cut <= cfg.cuts(); ++cut) {
        const DihedralElement& p = cfg.cut_passing(cut);
        CHECK(dh_mul(dh_inverse(p), p) == dh_identity(3));
    }
}

TEST_CASE("fixed vectors per class") {
    int g = 6, n = 3;
    const CyclotomicField* f = CyclotomicField::get(n);
    CharOrbit u(n, 1, 0);
    BranchConfig irr = preset_config(g, n, "irr");

    auto whole = fixed_vector(loop_monodromy(irr, u, 1, 2));
    CHECK(whole.vectors.size() == 2);

    auto line = fixed_vector(loop_monodromy(irr, u, 2, 11)); // M = R
    REQUIRE(line.vectors.size() == 1);
    CHECK(line.vectors[0][0] == CycScalar::one(f));
    CHECK(line.vectors[0][1] == CycScalar::one(f));

    BranchConfig span = preset_config(g, n, "span");
    auto rpb = fixed_vector(loop_monodromy(span, u, 2, 9)); // M = R P^b -> (1, gamma^b)
    REQUIRE(rpb.vectors.size() == 1);
    CHECK(rpb.vectors[0][0] == CycScalar::one(f));
    CHECK(rpb.vectors[0][1] == CycScalar::zeta_pow(f, u.b));

    // rotations have no invariant vectors
    bool found_rotation = false;
    for (int i = 1; i <= irr.points() && !found_rotation; ++i)
        for (int j = i + 1; j <= irr.points(); ++j) {
            auto mc = loop_monodromy(irr, u, i, j);
            if (mc.kind == MonodromyKind::Rotation) {
                CHECK(fixed_vector(mc).vectors.empty());
                found_rotation = true;
                break;
            }
        }
    CHECK(found_rotation);
}

TEST_CASE("image subgroup") {
    int g = 6, n = 3;
    CHECK(image_subgroup(preset_config(g, n, "irr")).size() == 54);

    std::vector<DihedralElement> all_id(static_cast<std::size_t>(g + 1), dh_identity(n));
    BranchConfig degenerate = make_config(g, n, all_id);
    CHECK(degenerate.identity_warning == false); // plenty of identity cuts
    CHECK(image_subgroup(degenerate).size() == 1);

    std::vector<DihedralElement> only_sigma = all_id;
    only_sigma[0] = dh_sigma(n);
    CHECK(image_subgroup(make_config(g, n, only_sigma)).size() == 2);
}
