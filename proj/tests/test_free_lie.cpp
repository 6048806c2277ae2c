#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fnops/free_lie.hpp"

using namespace fnops;

TEST_CASE("left-normed expansion") {
    auto b2 = expand_left_normed(Perm::identity(1));
    CHECK(b2.coeff({1, 2}) == 1);
    CHECK(b2.coeff({2, 1}) == -1);
    CHECK(b2.entries().size() == 2);

    // n = 3, lambda = id: [x1,[x2,x3]] = 123 - 132 - 231 + 321
    auto b3 = expand_left_normed(Perm::identity(2));
    CHECK(b3.coeff({1, 2, 3}) == 1);
    CHECK(b3.coeff({1, 3, 2}) == -1);
    CHECK(b3.coeff({2, 3, 1}) == -1);
    CHECK(b3.coeff({3, 2, 1}) == 1);
    CHECK(b3.entries().size() == 4);

    // 2^{n-1} words, and the leading word has coefficient one
    for (int n = 2; n <= 5; ++n)
        for (const auto& lambda : all_perms(n - 1)) {
            auto b = expand_left_normed(lambda);
            CHECK(b.entries().size() == (1u << (n - 1)));
            TensorWord lead(lambda.tuple().begin(), lambda.tuple().end());
            lead.push_back(n);
            CHECK(b.coeff(lead) == 1);
            // and no other basis element contains that word
            for (const auto& mu : all_perms(n - 1)) {
                if (mu == lambda) continue;
                CHECK(expand_left_normed(mu).coeff(lead) == 0);
            }
        }
}

TEST_CASE("Ree criterion basics") {
    TensorElement lie2(2);
    lie2.add({1, 2}, 1);
    lie2.add({2, 1}, -1);
    CHECK(ree_test(lie2));

    TensorElement not_lie(2);
    not_lie.add({1, 2}, 1);
    CHECK_FALSE(ree_test(not_lie));

    TensorElement word3(3);
    word3.add({1, 2, 3}, 1);
    CHECK_FALSE(ree_test(word3));

    for (int n = 2; n <= 5; ++n)
        for (const auto& lambda : all_perms(n - 1))
            CHECK(ree_test(expand_left_normed(lambda)));
}

TEST_CASE("coordinates reconstruct and reject") {
    auto b_id = expand_left_normed(Perm::identity(2));
    auto b_sw = expand_left_normed(Perm({2, 1}));
    auto f = b_id * 3 - b_sw * 2;
    auto coords = lie_coordinates(f);
    REQUIRE(coords.has_value());
    CHECK((*coords)[{1, 2}] == 3);
    CHECK((*coords)[{2, 1}] == -2);

    TensorElement word(3);
    word.add({1, 2, 3}, 1);
    CHECK_FALSE(lie_coordinates(word).has_value());

    // unit coordinate at lambda
    for (const auto& lambda : all_perms(3)) {
        auto c = lie_coordinates(expand_left_normed(lambda));
        REQUIRE(c.has_value());
        CHECK(c->size() == 1);
        CHECK((*c)[lambda.tuple()] == 1);
    }
}

TEST_CASE("Ree agrees with span membership on random elements") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> density(0, 2);
    int trials = 0;
    for (int n = 3; n <= 5; ++n) {
        auto perms = all_perms(n);
        auto lambdas = all_perms(n - 1);
        std::uniform_int_distribution<size_t> pick(0, lambdas.size() - 1);
        for (int t = 0; t < 70; ++t, ++trials) {
            TensorElement f(n);
            if (t % 2 == 0) {
                f = expand_left_normed(lambdas[pick(rng)]) * coef(rng) +
                    expand_left_normed(lambdas[pick(rng)]) * coef(rng);
            } else {
                for (const auto& p : perms)
                    if (density(rng) == 0)
                        f.add(TensorWord(p.tuple().begin(), p.tuple().end()), coef(rng));
            }
            CHECK(ree_test(f) == lie_coordinates(f).has_value());
        }
    }
    CHECK(trials >= 200);
}

TEST_CASE("unshuffle quotient reports") {
    long long fact[7] = {1, 1, 2, 6, 24, 120, 720};
    for (int n = 2; n <= 5; ++n)
        for (bool use_sign : {false, true}) {
            auto rep = ush_quotient_report(n, use_sign);
            for (const auto& d : rep.divisors) CHECK(d == 1);
            CHECK(rep.quotient_rank == fact[n - 1]);
            CHECK(rep.pairing_unimodular);
            CHECK(rep.pairing_det == 1);
            CHECK(rep.basis_certified);
        }
    auto r3 = ush_quotient_report(3, false);
    CHECK(r3.ush_rank == 4);
    CHECK(r3.divisors.size() == 4);
    auto r2 = ush_quotient_report(2, false);
    CHECK(r2.ush_rank == 1);
    CHECK(r2.quotient_rank == 1);
}

TEST_CASE("the sign twist exchanges the two unshuffle spans") {
    for (int n = 2; n <= 5; ++n) CHECK(psi_exchanges_ush(n));
}
