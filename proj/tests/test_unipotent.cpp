#include <relwit/unipotent.hpp>

#include <catch_amalgamated.hpp>

using namespace relwit;

TEST_CASE("unit upper-triangular matrix arithmetic", "[unipotent]") {
    UnipotentGroup u(4, 3);

    SECTION("elementary matrices multiply into the expected entries") {
        auto a = u.mul(u.elementary(0, 1), u.elementary(1, 2));
        CHECK(u.at(a, 0, 1) == 1);
        CHECK(u.at(a, 1, 2) == 1);
        CHECK(u.at(a, 0, 2) == 1);  // the product picks up the fill-in entry
    }

    SECTION("inverses are exact") {
        auto m = u.mul(u.mul(u.elementary(0, 1), u.elementary(1, 3)), u.elementary(2, 3));
        CHECK(u.encode(u.mul(m, u.inverse(m))) == u.encode(u.identity()));
        CHECK(u.encode(u.mul(u.inverse(m), m)) == u.encode(u.identity()));
    }

    SECTION("associativity spot-check over a small subgroup") {
        auto h = closure(u, {u.elementary(0, 1), u.elementary(1, 2)});
        for (const auto& a : h.elements)
            for (const auto& b : h.elements)
                for (const auto& c : h.elements)
                    CHECK(u.encode(u.mul(u.mul(a, b), c)) ==
                          u.encode(u.mul(a, u.mul(b, c))));
    }

    CHECK_THROWS_AS(u.set(u.identity(), 1, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(u.set(u.identity(), 2, 1, 1), std::invalid_argument);
}

TEST_CASE("witness generators", "[unipotent]") {
    SECTION("p=3, k=1") {
        WitnessGroupSpec spec(3, 1);
        auto c = witness_carrier(spec);
        auto [x, y] = build_generators(spec, c);
        CHECK(c.encode(x) == c.encode(c.elementary(0, 1)));
        CHECK(c.encode(y) == c.encode(c.elementary(1, 2)));
    }

    SECTION("p=5, k=2") {
        WitnessGroupSpec spec(5, 2);
        auto c = witness_carrier(spec);
        auto [x, y] = build_generators(spec, c);
        auto expected = c.set(c.set(c.identity(), 0, 1, 1), 1, 2, 1);
        CHECK(c.encode(x) == c.encode(expected));
        CHECK(c.encode(y) == c.encode(c.elementary(2, 3)));
    }

    SECTION("k out of range") {
        CHECK_THROWS_AS(WitnessGroupSpec(3, 3), std::invalid_argument);
        CHECK_THROWS_AS(WitnessGroupSpec(3, 0), std::invalid_argument);
    }
}

TEST_CASE("iterated commutators of the witness generators", "[unipotent]") {
    SECTION("i = 0 returns the second generator") {
        WitnessGroupSpec spec(3, 1);
        auto c = witness_carrier(spec);
        auto [x, y] = build_generators(spec, c);
        CHECK(c.encode(iterated_matrix_commutator(c, x, y, 0)) == c.encode(y));
    }

    SECTION("closed form I + E_{k+1-i,k+2}") {
        for (auto [p, k] : {std::pair<std::int64_t, int>{3, 1}, {5, 2}, {7, 3}}) {
            WitnessGroupSpec spec(p, k);
            auto c = witness_carrier(spec);
            auto [x, y] = build_generators(spec, c);
            for (int i = 0; i <= k; ++i) {
                auto got = iterated_matrix_commutator(c, x, y, static_cast<unsigned>(i));
                CHECK(c.encode(got) == c.encode(c.elementary(k - i, k + 1)));
            }
        }
    }
}

TEST_CASE("witness group structure report", "[unipotent]") {
    SECTION("p=3, k=1") {
        auto rep = witness_group_check(WitnessGroupSpec(3, 1));
        CHECK(rep.all_pass());
    }
    SECTION("p=3, k=2") {
        auto rep = witness_group_check(WitnessGroupSpec(3, 2));
        CHECK(rep.all_pass());
    }
    SECTION("p=5, k=3") {
        auto rep = witness_group_check(WitnessGroupSpec(5, 3));
        CHECK(rep.all_pass());
    }
    SECTION("resource bound") {
        CHECK_THROWS_AS(witness_group_check(WitnessGroupSpec(5, 3), 100),
                        ResourceLimitError);
    }
}

TEST_CASE("normal form in the witness group", "[unipotent]") {
    WitnessGroupSpec spec(3, 1);
    auto c = witness_carrier(spec);
    auto [x, y] = build_generators(spec, c);
    WitnessNormalForm nf(spec, c);

    SECTION("identity and single generators") {
        CHECK(nf.decompose(c, c.identity()) == std::vector<int>{0, 0, 0});
        CHECK(nf.decompose(c, x) == std::vector<int>{0, 0, 1});
        CHECK(nf.decompose(c, y) == std::vector<int>{0, 1, 0});
    }

    SECTION("decompose inverts compose on every tuple") {
        for (int e2 = 0; e2 < 3; ++e2)
            for (int e1 = 0; e1 < 3; ++e1)
                for (int e0 = 0; e0 < 3; ++e0) {
                    std::vector<int> tuple{e2, e1, e0};
                    CHECK(nf.decompose(c, nf.compose(c, tuple)) == tuple);
                }
    }

    SECTION("membership failure raises") {
        WitnessGroupSpec big(3, 2);
        auto cb = witness_carrier(big);
        WitnessNormalForm nfb(big, cb);
        // the top-left elementary matrix is not a normal-form product
        CHECK_THROWS_AS(nfb.decompose(cb, cb.elementary(0, 1)), std::domain_error);
    }
}

TEST_CASE("perturbation congruence for iterated commutators", "[unipotent]") {
    SECTION("exhaustive at p=3") {
        auto rep = perturbation_congruence_check(3);
        CHECK(rep.all_pass());
    }

    SECTION("unperturbed generators give equality at every step") {
        WitnessGroupSpec spec(3, 2);
        auto c = witness_carrier(spec);
        auto [x, y] = build_generators(spec, c);
        for (unsigned i = 1; i <= 2; ++i)
            CHECK(c.encode(iterated_group_commutator(c, x, y, i)) ==
                  c.encode(c.elementary(2 - static_cast<int>(i), 3)));
    }

    SECTION("sampling is deterministic in the seed") {
        auto a = perturbation_congruence_check(5, 42, 50);
        auto b = perturbation_congruence_check(5, 42, 50);
        CHECK(a.all_pass());
        CHECK(a.to_json() == b.to_json());
    }
}
