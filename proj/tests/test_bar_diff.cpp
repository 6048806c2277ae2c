#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "fnops/bar.hpp"

using namespace fnops;

static LabeledTree bc(const std::string& s) { return LabeledTree::parse_barcode(s); }

static FormalSum sum_of(std::vector<std::pair<long long, std::string>> terms) {
    FormalSum f(Ring::Z);
    for (auto& [c, s] : terms) f.add(Term::generator(bc(s)), c);
    return f;
}

static FormalSum d_lin_via_bar(const LabeledTree& t) {
    FormalSum f(Ring::Z);
    for (const auto& [sign, term] : d_lin_terms_bar(t))
        f.add(Term::generator(term), sign);
    return f;
}

TEST_CASE("omega structure on the printed examples") {
    auto m = omega(bc("[1|2|3]"));
    REQUIRE(m.word.size() == 3);
    CHECK(m.height == 1);
    for (int i = 0; i < 3; ++i) CHECK(m.word[i].label == i + 1);

    // omega(g of [1||2|3]) = down^3( up(up x1) (x) up(up x2 (x) up x3) )
    auto r = omega(bc("[1||2|3]"));
    REQUIRE(r.word.size() == 2);
    CHECK(r.height == 2);
    REQUIRE(r.word[0].word.size() == 1);
    CHECK(r.word[0].word[0].label == 1);
    REQUIRE(r.word[1].word.size() == 2);
    CHECK(r.word[1].word[0].label == 2);
    CHECK(r.word[1].word[1].label == 3);

    CHECK_THROWS_AS(omega(bc("[1|2]").suspend()), validation_error);
}

TEST_CASE("omega inverse is a structural bijection") {
    for (int d = 0; d <= 4; ++d)
        for (const auto& shape : enumerate_reduced(d)) {
            int n = shape.tips();
            if (n > 4) continue;
            for (const auto& s : all_perms(n)) {
                auto t = LabeledTree::identity_labeled(shape).act(s);
                CHECK(omega_inv(omega(t)) == t);
            }
        }
}

TEST_CASE("the four quoted linear formulas hold with exact signs") {
    CHECK(d_lin(bc("[1|2]")).is_zero());
    CHECK(d_lin(bc("[1||2]")) == sum_of({{1, "[1|2]"}, {-1, "[2|1]"}}));
    CHECK(d_lin(bc("[1|2||3]")) ==
          sum_of({{1, "[1|2|3]"}, {-1, "[1|3|2]"}, {1, "[3|1|2]"}}));
    CHECK(d_lin(bc("[1|2|||3]")) == sum_of({{1, "[1|2||3]"}, {-1, "[3||1|2]"}}));
}

TEST_CASE("further published linear parts") {
    CHECK(d_lin(bc("[1|2|3]")).is_zero());
    CHECK(d_lin(bc("[1|2|3|4]")).is_zero());
    CHECK(d_lin(bc("[1|||2]")) == sum_of({{1, "[1||2]"}, {1, "[2||1]"}}));
    CHECK(d_lin(bc("[1||2|3]")) ==
          sum_of({{1, "[1|2|3]"}, {-1, "[2|1|3]"}, {1, "[2|3|1]"}}));
    CHECK(d_lin(bc("[1||2||3]")) ==
          sum_of({{1, "[1|2||3]"}, {-1, "[2|1||3]"}, {-1, "[1||2|3]"}, {1, "[1||3|2]"}}));
    // the superfluous-generator identity
    CHECK(d_lin(bc("[1|2||3]")) == d_lin(bc("[3||1|2]")));
}

TEST_CASE("top-degree signed-unshuffle formula") {
    // A height-2 tree with two level-1 vertices carrying s and t tips maps
    // to the signed sum of corollas over all (s,t)-interleavings.
    for (int n = 2; n <= 5; ++n)
        for (int s = 1; s < n; ++s) {
            std::vector<int> gaps(n - 1, 1);
            gaps[s - 1] = 2;
            auto t = LabeledTree::identity_labeled(LevelTree::from_gaps(gaps));
            FormalSum expect(Ring::Z);
            for (const auto& pat : interleavings(s, n - s)) {
                std::vector<int> labels;
                int ia = 1, ib = s + 1;
                for (int bit : pat) labels.push_back(bit == 0 ? ia++ : ib++);
                int sgn = interleaving_inversions(pat) % 2 == 0 ? 1 : -1;
                expect.add(Term::generator(
                               LabeledTree(LevelTree::corolla(n), Perm(labels))),
                           sgn);
            }
            CHECK(d_lin(t) == expect);
        }
}

TEST_CASE("bar transport and merge-unshuffle agree term by term") {
    for (int d = 0; d <= 4; ++d)
        for (const auto& shape : enumerate_reduced(d)) {
            int n = shape.tips();
            if (n > 4) continue;
            auto t = LabeledTree::identity_labeled(shape);
            CHECK(d_lin_via_bar(t) == d_lin(t));
            // and on a nontrivially labeled representative
            if (n >= 2) {
                std::vector<int> tu(n);
                for (int i = 0; i < n; ++i) tu[i] = (i + 1) % n + 1;
                auto tt = t.act(Perm(tu));
                CHECK(d_lin_via_bar(tt) == d_lin(tt));
            }
        }
}

TEST_CASE("homogeneity: every term drops dimension by one") {
    for (int d = 1; d <= 5; ++d)
        for (const auto& shape : enumerate_reduced(d)) {
            if (shape.tips() > 5) continue;
            auto t = LabeledTree::identity_labeled(shape);
            for (const auto& [sign, term] : d_lin_terms_merge(t)) {
                CHECK(term.dim() == d - 1);
                CHECK(term.shape().is_reduced());
                CHECK(std::abs(sign) == 1);
            }
        }
}

TEST_CASE("d_lin squares to zero (small range; the sweep runs in acceptance)") {
    for (int d = 1; d <= 5; ++d)
        for (const auto& shape : enumerate_reduced(d)) {
            if (shape.tips() > 4) continue;
            auto t = LabeledTree::identity_labeled(shape);
            FormalSum dd(Ring::Z);
            for (const auto& [s1, u] : d_lin_terms_merge(t))
                for (const auto& [s2, v] : d_lin_terms_merge(u))
                    dd.add(Term::generator(v), s1 * s2);
            CHECK(dd.is_zero());
        }
}

TEST_CASE("equivariance of d_lin, exhaustive for n = 3") {
    for (int d = 1; d <= 4; ++d)
        for (const auto& shape : enumerate_reduced(d, 3)) {
            auto t = LabeledTree::identity_labeled(shape);
            for (const auto& s : all_perms(3))
                CHECK(d_lin(t.act(s)) == d_lin(t).act(s));
        }
}

TEST_CASE("suspension invariance through the colimit") {
    // d_lin of a suspended tree equals the suspension of d_lin termwise:
    // compute on the reduced tree, then compare against the reduced
    // normal forms of the suspended computation.
    for (int d = 1; d <= 4; ++d)
        for (const auto& shape : enumerate_reduced(d)) {
            if (shape.tips() > 4) continue;
            auto t = LabeledTree::identity_labeled(shape);
            // suspension is invisible after reduce(); check d_lin factors
            // through the reduction of a trunked pruned tree
            auto squashed = t.suspend().reduced();
            CHECK(d_lin(squashed) == d_lin(t));
        }
}
