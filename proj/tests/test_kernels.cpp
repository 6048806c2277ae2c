#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fnops/kernels.hpp"

using namespace fnops;

TEST_CASE("labeled bases are sorted and complete") {
    auto b = labeled_basis(3, 1, 0);
    CHECK(b.size() == 6);
    for (size_t i = 0; i + 1 < b.size(); ++i) CHECK(b[i].barcode() < b[i + 1].barcode());
    auto b2 = labeled_basis(3, 2, 2);
    CHECK(b2.size() == 12);   // two shapes, six labelings each
    auto b3 = labeled_basis(2, 3, 2);
    CHECK(b3.empty());        // [1||||2] needs height four
}

TEST_CASE("sweeps pass and agree across execution modes") {
    auto gens = labeled_basis(4, 3, 0);
    CHECK(d2_zero_sweep(gens, ExecMode::Serial));
    CHECK(d2_zero_sweep(gens, ExecMode::Parallel));
    CHECK(route_agreement_sweep(gens, ExecMode::Serial));
    CHECK(route_agreement_sweep(gens, ExecMode::Parallel));
    CHECK(equivariance_sweep(gens, ExecMode::Serial));
    CHECK(equivariance_sweep(gens, ExecMode::Parallel));
}

TEST_CASE("boundary matrices are identical in both modes") {
    auto upper = labeled_basis(4, 3, 0);
    auto lower = labeled_basis(4, 2, 0);
    std::map<std::string, int> index;
    for (size_t i = 0; i < lower.size(); ++i)
        index.emplace(lower[i].barcode(), static_cast<int>(i));
    auto a = boundary_matrix(upper, index, static_cast<int>(lower.size()),
                             ExecMode::Serial);
    auto b = boundary_matrix(upper, index, static_cast<int>(lower.size()),
                             ExecMode::Parallel);
    CHECK(a.to_matrix_market() == b.to_matrix_market());
    CHECK(a.nonzeros() > 0);
}
