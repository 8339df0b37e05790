#include <relwit/obstruction.hpp>

#include <catch_amalgamated.hpp>

using namespace relwit;

namespace {

const Alphabet kAlphabet = Alphabet::standard(4);

Word simple_tail() { return parse_word("[y1,y2]", kAlphabet); }

}  // namespace

TEST_CASE("cyclic quotient obstruction", "[obstruction]") {
    SECTION("p=3, m=2, l=1: image g^3 of order 3") {
        auto w = check_cyclic_quotient(3, 2, 1, 1, simple_tail(),
                                       TailTag::InDerivedTimesT, kAlphabet);
        CHECK(w.obstructed());
        CHECK(w.all_pass());
        CHECK(w.image == "g^3");
        CHECK(w.image_order == 3);
    }

    SECTION("p=3, m=3, l=2, u=2: commutators die, image g^18") {
        auto tail = parse_word("[x,y1] y2", kAlphabet);
        auto w = check_cyclic_quotient(3, 3, 2, 2, tail, TailTag::InDerivedTimesT,
                                       kAlphabet);
        CHECK(w.obstructed());
        CHECK(w.all_pass());
        CHECK(w.image == "g^18");
        CHECK(w.image_order == 3);
    }

    SECTION("hypothesis violations") {
        CHECK_THROWS_AS(check_cyclic_quotient(3, 2, 2, 1, simple_tail(),
                                              TailTag::InDerivedTimesT, kAlphabet),
                        HypothesisViolation);
        CHECK_THROWS_AS(check_cyclic_quotient(3, 2, 1, 1, simple_tail(), TailTag::InT,
                                              kAlphabet),
                        HypothesisViolation);
        CHECK_THROWS_AS(check_cyclic_quotient(3, 2, 1, 3, simple_tail(),
                                              TailTag::InDerivedTimesT, kAlphabet),
                        HypothesisViolation);
    }
}

TEST_CASE("metacyclic quotient obstruction", "[obstruction]") {
    SECTION("x^3 [y1,y2] at p=3, k=1, m=2") {
        auto rel = parse_word("x^3 [y1,y2]", kAlphabet);
        auto w = check_metacyclic_quotient(3, 1, 2, 1, 1, rel, kAlphabet);
        CHECK(w.obstructed());
        CHECK(w.all_pass());
        CHECK(w.image_order == 3);
    }

    SECTION("the product-of-commutators shape x^9 [y1,y2][y3,y4]") {
        auto rel = parse_word("x^9 [y1,y2] [y3,y4]", kAlphabet);
        auto w = check_metacyclic_quotient(3, 1, 3, 2, 1, rel, kAlphabet);
        CHECK(w.obstructed());
        CHECK(w.all_pass());
        CHECK(w.image_order == 3);
    }

    SECTION("a pair involving x violates the hypothesis") {
        auto rel = parse_word("x^3 [x,y1]", kAlphabet);
        CHECK_THROWS_AS(check_metacyclic_quotient(3, 1, 2, 1, 1, rel, kAlphabet),
                        HypothesisViolation);
    }

    SECTION("leading term must match the declared exponent") {
        auto rel = parse_word("x^4 [y1,y2]", kAlphabet);
        CHECK_THROWS_AS(check_metacyclic_quotient(3, 1, 2, 1, 1, rel, kAlphabet),
                        HypothesisViolation);
    }

    SECTION("the verdict is invariant under the y-assignment") {
        auto rel = parse_word("x^3 [y1,y2]", kAlphabet);
        auto base = check_metacyclic_quotient(3, 1, 2, 1, 1, rel, kAlphabet);
        for (std::vector<std::int64_t> exps :
             {std::vector<std::int64_t>{2, 1, 1, 2}, {1, 1, 1, 1}, {0, 2, 1, 0}}) {
            auto w = check_metacyclic_quotient(3, 1, 2, 1, 1, rel, kAlphabet, exps);
            CHECK(w.obstructed());
            CHECK(w.image == base.image);
            CHECK(w.image_order == base.image_order);
        }
    }
}

TEST_CASE("root-action obstruction", "[obstruction]") {
    SECTION("case 1: the root-action exponent is the leading exponent") {
        auto w = check_root_action(3, 1, 1, 2, 2);
        CHECK(w.obstructed());
        CHECK(w.all_pass());
        CHECK(w.params["case"] == 1);
        CHECK(w.image == "tau^6");
    }

    SECTION("case 2 at p=3, k=1, w=1, l=1: N = 21 with valuation 1") {
        auto w = check_root_action(3, 1, 1, 1, 2, 1);
        CHECK(w.obstructed());
        CHECK(w.all_pass());
        CHECK(w.params["case"] == 2);
        // independent computation: N = (4^3 - 1)/3 = 21
        ExactInt n = (int_pow(ExactInt(4), 3) - 1) / 3;
        CHECK(n == 21);
        CHECK(vp(n, 3) == 1);
    }

    SECTION("case 2 at p=3, k=1, w=2, l=2, m=3") {
        auto w = check_root_action(3, 1, 2, 1, 3, 2);
        CHECK(w.obstructed());
        CHECK(w.all_pass());
        ExactInt n = (int_pow(ExactInt(4), 18) - 1) / (int_pow(ExactInt(4), 2) - 1);
        CHECK(vp(n, 3) == 2);
    }

    SECTION("w divisible by the sigma order falls back to case 1") {
        auto w = check_root_action(3, 1, 1, 1, 2, 3);
        CHECK(w.params["case"] == 1);
    }

    SECTION("hypothesis violations") {
        CHECK_THROWS_AS(check_root_action(3, 1, 2, 1, 2), HypothesisViolation);
        CHECK_THROWS_AS(check_root_action(3, 1, 1, 3, 2), HypothesisViolation);
    }
}

TEST_CASE("filtration quotient obstruction", "[obstruction]") {
    SECTION("p=3, k=1, l=2: deep term trivial, image of order 3") {
        auto w = check_filtration_quotient(3, 1, 2, 1, simple_tail(), kAlphabet, true);
        CHECK(w.obstructed());
        CHECK(w.all_pass());
        CHECK(w.image == "tau^3");
        CHECK(w.image_order == 3);
    }

    SECTION("p=5, k=1, l=2, u=3: image tau^15 of order 5") {
        auto w = check_filtration_quotient(5, 1, 2, 3, simple_tail(), kAlphabet);
        CHECK(w.obstructed());
        CHECK(w.all_pass());
        CHECK(w.image == "tau^15");
        CHECK(w.image_order == 5);
    }

    SECTION("l = 1 is rejected") {
        CHECK_THROWS_AS(check_filtration_quotient(3, 1, 1, 1, simple_tail(), kAlphabet),
                        HypothesisViolation);
    }
}

TEST_CASE("parameter sweep", "[obstruction]") {
    SECTION("hypothesis-satisfying grid is fully obstructed") {
        SweepGrid grid;
        grid.theorems = {"metacyclic-quotient"};
        grid.ps = {3, 5};
        grid.ks = {1};
        grid.m_max = 3;
        grid.us = {1, 2};
        auto sw = sweep(grid);
        CHECK(sw.failures == 0);
        CHECK(sw.obstructed > 0);
        for (const auto& r : sw.reports)
            if (r.verdict != "hypothesis-violation") CHECK(r.verdict == "obstructed");
    }

    SECTION("empty grid gives an empty result") {
        SweepGrid grid;
        grid.theorems.clear();
        auto sw = sweep(grid);
        CHECK(sw.reports.empty());
        CHECK(sw.all_pass());
    }

    SECTION("out-of-range points are partitioned into violations") {
        SweepGrid grid;
        grid.theorems = {"cyclic-quotient"};
        grid.ps = {3};
        grid.ks = {1};
        grid.m_max = 2;
        grid.us = {1};
        auto sw = sweep(grid);
        CHECK(sw.violations > 0);
        CHECK(sw.obstructed > 0);
        CHECK(sw.failures == 0);
    }

    SECTION("deterministic ordering and serialization") {
        SweepGrid grid;
        grid.theorems = {"root-action"};
        grid.m_max = 2;
        auto a = sweep(grid).to_json().dump();
        auto b = sweep(grid).to_json().dump();
        CHECK(a == b);
    }
}

TEST_CASE("witness reports serialize with stable keys", "[obstruction]") {
    auto w = check_cyclic_quotient(3, 2, 1, 1, simple_tail(), TailTag::InDerivedTimesT,
                                   kAlphabet);
    auto j = w.to_json();
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"theorem", "params", "quotient", "assignment",
                                           "image", "image_order", "verdict", "note",
                                           "checks"});
    CHECK(j["verdict"] == "obstructed");
    CHECK(j["image_order"] == "3");
}
