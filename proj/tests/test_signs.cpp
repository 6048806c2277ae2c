#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <functional>
#include <json.hpp>

#include "fnops/signs.hpp"

using namespace fnops;

static LabeledTree bc(const std::string& s) { return LabeledTree::parse_barcode(s); }

static const SignTable& table() {
    static SignTable st = SignTable::solve(5, 4);
    return st;
}

TEST_CASE("the eight published formulas are reproduced term by term") {
    std::ifstream in(std::string(FNOPS_FIXTURE_DIR) + "/boundary_formulas.json");
    REQUIRE(in.good());
    nlohmann::json fx;
    in >> fx;
    for (const auto& entry : fx["formulas"]) {
        auto gen = bc(entry["generator"].get<std::string>());
        FormalSum expect(Ring::Z);
        for (const auto& term : entry["boundary"])
            expect.add(Term::parse_extended_barcode(term["term"].get<std::string>()),
                       term["coef"].get<long long>());
        auto got = table().d_reg_signed(gen);
        CHECK_MESSAGE(got == expect, "generator ", entry["generator"].get<std::string>(),
                      ": got ", got.to_string(), " expected ", expect.to_string());
    }
}

TEST_CASE("d squares to zero on the regular range") {
    auto check_zero = [&](const LevelTree& shape) {
        auto t = LabeledTree::identity_labeled(shape);
        FormalSum dd(Ring::Z);
        FormalSum dt = table().d_reg_signed(t);
        for (const auto& [k, tc] : dt.entries())
            dd.add(table().boundary(tc.first), tc.second);
        CHECK_MESSAGE(dd.is_zero(), shape.barcode(), " -> ", dd.to_string());
    };
    for (int d = 1; d <= 3; ++d)
        for (const auto& shape : enumerate_reduced(d))
            if (shape.tips() <= 4) check_zero(shape);
    for (int d = 1; d <= 4; ++d)
        for (const auto& shape : enumerate_reduced(d, 5)) check_zero(shape);
}

TEST_CASE("the quasibijection part is exactly the linear differential") {
    for (int d = 1; d <= 4; ++d)
        for (const auto& shape : enumerate_reduced(d)) {
            if (shape.tips() > 5) continue;
            if (shape.tips() > 3 && shape.dim() >= shape.tips()) continue;
            auto t = LabeledTree::identity_labeled(shape);
            FormalSum linear_part(Ring::Z);
            const auto& faces = table().faces_of(shape.barcode());
            for (size_t i = 0; i < faces.size(); ++i)
                if (faces[i].morphism.is_quasibijection())
                    linear_part.add(faces[i].c_sigma,
                                    table().eps(shape.barcode(), faces[i].serial));
            CHECK(linear_part == d_lin(t));
            // every decomposable face involves only arities < n
            for (const auto& f : faces)
                if (!f.morphism.is_quasibijection()) {
                    CHECK_FALSE(f.c_sigma.is_single_generator());
                    std::function<void(const Term&)> rec = [&](const Term& x) {
                        if (x.is_leaf()) return;
                        CHECK(x.deco().tips() < t.arity());
                        for (const auto& s : x.items()) rec(s);
                    };
                    CHECK(f.c_sigma.deco().tips() < t.arity());
                    for (const auto& s : f.c_sigma.items()) rec(s);
                }
        }
}

TEST_CASE("equivariance of the signed boundary") {
    for (const auto& code : {"[1|2||3]", "[1||2|3]", "[1|2|3]"}) {
        auto t = bc(code);
        for (const auto& s : all_perms(3))
            CHECK(table().d_reg_signed(t.act(s)) == table().d_reg_signed(t).act(s));
    }
    auto t4 = bc("[1|2||3|4]");
    Perm s4({2, 4, 1, 3});
    CHECK(table().d_reg_signed(t4.act(s4)) == table().d_reg_signed(t4).act(s4));
}

TEST_CASE("bad cells are rejected, out-of-range queries raise capacity errors") {
    CHECK_THROWS_AS(table().d_reg_signed(bc("[1|2|||3|4]")), validation_error);
    CHECK_THROWS_AS(table().d_reg_signed(bc("[1|2|3|4|5|6]")), capacity_error);
    CHECK_THROWS_AS(SignTable::solve(9, 9), capacity_error);
}

TEST_CASE("sign table serialization is keyed by source, serial, target") {
    auto js = table().to_json();
    CHECK(js.find("\"source\":\"[1|2|3]\"") != std::string::npos);
    CHECK(js.find("\"serial\":") != std::string::npos);
    CHECK(js.find("\"target\":\"[[1|2]|3]\"") != std::string::npos);
    auto parsed = nlohmann::json::parse(js);
    CHECK(parsed.is_array());
    CHECK(parsed.size() > 100);
}

TEST_CASE("boundary extends as a derivation over Z") {
    auto t = Term::parse_extended_barcode("[[1||3]|2]");
    FormalSum dd(Ring::Z);
    FormalSum bt = table().boundary(t);
    for (const auto& [k, tc] : bt.entries())
        dd.add(table().boundary(tc.first), tc.second);
    CHECK(dd.is_zero());

    auto t2 = Term::parse_extended_barcode("[[1|2||3]|4]");
    FormalSum dd2(Ring::Z);
    FormalSum bt2 = table().boundary(t2);
    for (const auto& [k, tc] : bt2.entries())
        dd2.add(table().boundary(tc.first), tc.second);
    CHECK(dd2.is_zero());
}
