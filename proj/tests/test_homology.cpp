#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fnops/homology.hpp"

using namespace fnops;

TEST_CASE("chain ranks match the enumeration") {
    auto c = build_G_complex(3, Height::inf(), 4, ExecMode::Serial);
    // G_d(3) has d unlabeled generators, each with a free S_3-orbit
    for (int d = 1; d <= 4; ++d)
        CHECK(c.basis[d].size() == static_cast<size_t>(6 * d));
    CHECK(c.basis[0].empty());   // no reduced 3-tip tree of dimension 0

    auto c2 = build_G_complex(2, Height::inf(), 6, ExecMode::Serial);
    for (int d = 0; d <= 6; ++d) CHECK(c2.basis[d].size() == 2);
}

TEST_CASE("the arity-2 colimit computes the infinite sphere") {
    auto c = build_G_complex(2, Height::inf(), 7, ExecMode::Serial);
    auto h0 = homology(c, 0);
    CHECK(h0.rank == 1);
    CHECK(h0.torsion.empty());
    for (int d = 1; d <= 6; ++d) {
        auto h = homology(c, d);
        CHECK(h.rank == 0);
        CHECK(h.torsion.empty());
    }
}

TEST_CASE("height-1 complexes are a single free layer") {
    for (int n = 2; n <= 5; ++n) {
        auto c = build_G_complex(n, Height::of(1), n - 1, ExecMode::Serial);
        long long fact = 1;
        for (int i = 2; i <= n; ++i) fact *= i;
        CHECK(c.basis[n - 2].size() == static_cast<size_t>(fact));
        for (int d = 0; d <= n - 2; ++d)
            if (d != n - 2) CHECK(c.basis[d].empty());
        auto h = homology(c, n - 2);
        CHECK(h.rank == fact);
        CHECK(h.torsion.empty());
    }
}

TEST_CASE("homology of G(3) is concentrated in degree one with rank two") {
    auto c = build_G_complex(3, Height::inf(), 5, ExecMode::Serial);
    auto h1 = homology(c, 1);
    CHECK(h1.rank == 2);
    CHECK(h1.torsion.empty());
    for (int d : {0, 2, 3, 4}) {
        auto h = homology(c, d);
        CHECK(h.rank == 0);
        CHECK(h.torsion.empty());
    }
}

TEST_CASE("homology of G(4) vanishes away from degree two") {
    auto c = build_G_complex(4, Height::inf(), 5, ExecMode::Parallel);
    auto h2 = homology(c, 2);
    CHECK(h2.rank == 6);
    CHECK(h2.torsion.empty());
    for (int d : {0, 1, 3, 4}) {
        auto h = homology(c, d);
        CHECK(h.rank == 0);
        CHECK(h.torsion.empty());
    }
}

TEST_CASE("the finite-height complex for three points in the plane") {
    auto c = build_G_complex(3, Height::of(2), 4, ExecMode::Serial);
    // ranks (2, 3, 1) in degrees (1, 2, 3)
    auto h1 = homology(c, 1);
    auto h2 = homology(c, 2);
    auto h3 = homology(c, 3);
    CHECK(h1.rank == 2);
    CHECK(h2.rank == 3);
    CHECK(h3.rank == 1);
    CHECK(h1.torsion.empty());
    CHECK(h2.torsion.empty());
    CHECK(h3.torsion.empty());
    auto h0 = homology(c, 0);
    CHECK(h0.rank == 0);
}

TEST_CASE("boundary window is enforced") {
    auto c = build_G_complex(3, Height::inf(), 3, ExecMode::Serial);
    CHECK_THROWS_AS(homology(c, 3), validation_error);
    CHECK_THROWS_AS(build_G_complex(9, Height::inf(), 3, ExecMode::Serial),
                    capacity_error);
}

TEST_CASE("serial and parallel builds agree") {
    auto a = build_G_complex(4, Height::of(2), 5, ExecMode::Serial);
    auto b = build_G_complex(4, Height::of(2), 5, ExecMode::Parallel);
    for (int d = 0; d <= 5; ++d) {
        REQUIRE(a.basis[d].size() == b.basis[d].size());
        CHECK(a.boundary[d].to_matrix_market() == b.boundary[d].to_matrix_market());
    }
}
