#include <relwit/arith.hpp>

#include <catch_amalgamated.hpp>

#include <random>

using namespace relwit;

TEST_CASE("p-adic valuation of integers", "[arith]") {
    CHECK(vp(63, 3) == 2);
    CHECK(vp(1, 5) == 0);
    CHECK(vp(0, 3).is_infinite());
    CHECK(vp(-27, 3) == 3);
    CHECK_THROWS_AS(vp(10, 4), std::invalid_argument);
}

TEST_CASE("valuation is additive on products, ultrametric on sums", "[arith]") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        ExactInt p = (t % 2) ? 3 : 5;
        ExactInt a = int_pow(p, rng() % 5) * static_cast<long long>(1 + rng() % 1000);
        ExactInt b = int_pow(p, rng() % 5) * static_cast<long long>(1 + rng() % 1000);
        CHECK(vp(a * b, p).value() == vp(a, p).value() + vp(b, p).value());
        if (a + b != 0)
            CHECK(vp(a + b, p).value() >= std::min(vp(a, p).value(), vp(b, p).value()));
    }
}

TEST_CASE("valuation of unit powers minus one", "[arith]") {
    CHECK(unit_power_valuation(3, 3, 3) == 2);  // v_3(4^3 - 1) = v_3(63)
    CHECK(unit_power_valuation(3, 3, 1) == 1);
    CHECK(unit_power_valuation(2, 4, 2) == 3);  // v_2(5^2 - 1) = v_2(24)

    SECTION("agrees with direct expansion for small exponents") {
        std::mt19937_64 rng(11);
        for (int t = 0; t < 100; ++t) {
            ExactInt p = (t % 2) ? 3 : 7;
            unsigned long va = 1 + rng() % 3;
            long long w = static_cast<long long>(1 + rng() % 20);
            while (w % static_cast<long long>(p) == 0) ++w;
            ExactInt alpha = int_pow(p, va) * w;
            ExactInt n = static_cast<long long>(1 + rng() % 200);
            ExactInt expanded = 1;
            for (ExactInt i = 0; i < n; ++i) expanded *= 1 + alpha;
            CHECK(unit_power_valuation(p, alpha, n) == vp(expanded - 1, p).value());
        }
    }

    SECTION("domain preconditions") {
        CHECK_THROWS_AS(unit_power_valuation(3, 0, 1), std::domain_error);
        CHECK_THROWS_AS(unit_power_valuation(3, 5, 2), std::domain_error);
        CHECK_THROWS_AS(unit_power_valuation(2, 2, 2), std::domain_error);  // v_2 = 1 < 2
        CHECK_THROWS_AS(unit_power_valuation(3, 3, 0), std::domain_error);
    }
}

TEST_CASE("truncated p-adic integers", "[arith]") {
    PadicInt a(3, 4, 85);
    CHECK(a.residue() == 4);  // 85 mod 81
    CHECK(a.precision() == 4);
    CHECK((a * a.inverse()).residue() == 1);
    CHECK(a.pow(2).residue() == 16);
    CHECK(PadicInt(3, 4, 0).valuation().is_infinite());
    CHECK(PadicInt(3, 4, 18).valuation() == 2);

    SECTION("precision is the minimum across operands") {
        PadicInt b(3, 2, 4);
        CHECK((a + b).precision() == 2);
        CHECK((a * b).precision() == 2);
        CHECK(a.with_precision(2).precision() == 2);
        CHECK_THROWS_AS(a.with_precision(9), std::invalid_argument);
    }

    SECTION("equality compares at the shared precision") {
        CHECK(PadicInt(3, 4, 4) == PadicInt(3, 2, 4));
        CHECK(PadicInt(3, 4, 4 + 9) == PadicInt(3, 2, 4));
        CHECK(!(PadicInt(3, 4, 4 + 9) == PadicInt(3, 4, 4)));
    }

    CHECK_THROWS_AS(PadicInt(3, 4, 1).inverse() * PadicInt(5, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(PadicInt(3, 3, 3).inverse(), std::domain_error);
}

TEST_CASE("p-adic logarithm", "[arith]") {
    CHECK(padic_log(PadicInt(3, 6, 1)).residue() == 0);
    CHECK(padic_log(PadicInt(5, 8, 1)).residue() == 0);

    SECTION("roundtrip with exp") {
        PadicInt u(3, 6, 4);
        CHECK(padic_exp(padic_log(u)) == u);
        PadicInt v(3, 6, 7);
        CHECK(padic_exp(padic_log(v)) == v);
    }

    SECTION("homomorphism into the additive group") {
        PadicInt u(3, 6, 4), v(3, 6, 7);
        CHECK(padic_log(u * v) == padic_log(u) + padic_log(v));
    }

    SECTION("log(1 + p^k u) has valuation exactly k") {
        for (long long p : {3, 5})
            for (unsigned k : {1u, 2u})
                for (long long u = 1; u < p; ++u) {
                    ExactInt pk = int_pow(ExactInt(p), k);
                    PadicInt base(p, 10, 1 + pk * u);
                    CHECK(padic_log(base).valuation() == k);
                }
    }

    CHECK_THROWS_AS(padic_log(PadicInt(3, 6, 2)), std::domain_error);
    CHECK_THROWS_AS(padic_log(PadicInt(2, 6, 3)), std::domain_error);  // v_2(x) = 1 < 2
}

TEST_CASE("p-adic exponential", "[arith]") {
    CHECK(padic_exp(PadicInt(3, 6, 0)).residue() == 1);
    CHECK(padic_log(padic_exp(PadicInt(5, 8, 5))) == PadicInt(5, 8, 5));
    CHECK(padic_log(padic_exp(PadicInt(3, 7, 6))) == PadicInt(3, 7, 6));
    CHECK(padic_exp(PadicInt(2, 8, 4)) == padic_exp(PadicInt(2, 8, 4)));
    CHECK(padic_log(padic_exp(PadicInt(2, 8, 4))) == PadicInt(2, 8, 4));
    CHECK_THROWS_AS(padic_exp(PadicInt(3, 6, 1)), std::domain_error);
}

TEST_CASE("solving for the exponent relating two principal units", "[arith]") {
    SECTION("u = 1 forces v = 1") {
        auto v = solve_power_exponent(3, 1, PadicInt(3, 8, 1), 8);
        CHECK(v.residue() == 1);
        CHECK(v.precision() == 7);
    }

    SECTION("verified by modular powering") {
        auto check = [](long long p, unsigned k, long long u, unsigned n) {
            auto v = solve_power_exponent(p, k, PadicInt(p, n, u), n);
            REQUIRE(v.precision() == n - k);
            ExactInt pk = int_pow(ExactInt(p), k);
            ExactInt mod = int_pow(ExactInt(p), n - k);
            ExactInt pw = boost::multiprecision::powm(ExactInt(1 + pk * u), v.residue(),
                                                      int_pow(ExactInt(p), n));
            CHECK((pw - (1 + pk)) % mod == 0);
        };
        check(3, 1, 2, 6);  // 7^v = 4 mod 3^5
        check(5, 1, 3, 6);  // 16^v = 6 mod 5^5
        check(3, 2, 2, 10);
        check(5, 2, 4, 9);
    }

    CHECK_THROWS_AS(solve_power_exponent(2, 1, PadicInt(2, 8, 1), 8), std::domain_error);
    CHECK_THROWS_AS(solve_power_exponent(3, 1, PadicInt(3, 8, 3), 8), std::invalid_argument);
    CHECK_THROWS_AS(solve_power_exponent(3, 8, PadicInt(3, 8, 1), 8), std::invalid_argument);
}
