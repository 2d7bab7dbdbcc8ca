#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cbp/dynamics.hpp"
#include "cbp/instances.hpp"
#include "cbp/json_io.hpp"
#include "cbp/oracle.hpp"

#include <map>

using namespace cbp;

namespace {

std::map<Rational, int> size_histogram(const GameInstance& game) {
    std::map<Rational, int> hist;
    for (const Item& item : game.items()) {
        ++hist[item.size];
    }
    return hist;
}

int color_total(const GameInstance& game, Color color) {
    int total = 0;
    for (const Item& item : game.items()) {
        total += item.color == color ? 1 : 0;
    }
    return total;
}

}  // namespace

TEST_CASE("improvement cycle game") {
    auto generated = gen_improvement_cycle();
    CHECK(generated.instance.n() == 6);
    CHECK(generated.instance.colors() == 2);
    CHECK(color_total(generated.instance, 1) == 3);
    CHECK(color_total(generated.instance, 2) == 3);
    for (const Item& item : generated.instance.items()) {
        CHECK(item.size == Rational::of(1, 4));
    }
    CHECK(generated.instance.uniform()->kappa == 4);
    CHECK(optimal_bins(generated.instance).opt == 2);
    CHECK(generated.expected.at("opt") == Rational(2));
}

TEST_CASE("multicolor egalitarian family at (m=3, h=2, k=3)") {
    auto generated = gen_pos_multicolor_egalitarian(3, 2, 3);
    const Rational delta = Rational::of(1, 48);  // 1/(2hk(k+1))
    // Strictly inside the required bound delta < 1/(hk(k+1)).
    CHECK(delta < Rational::of(1, 24));
    auto hist = size_histogram(generated.instance);
    CHECK(hist.at(Rational::of(1, 3) - Rational(2) * delta) == 6);
    CHECK(hist.at(delta) == 4);
    CHECK(color_total(generated.instance, 2) == 2);
    CHECK(color_total(generated.instance, 3) == 2);

    const Profile& star = generated.witnesses.at("sigma_star");
    CHECK(is_feasible(star, generated.instance));
    CHECK(social_cost(star) == 2);
    CHECK(generated.expected.at("ne_bins_lower_bound") == Rational(0));
}

TEST_CASE("multicolor egalitarian family rejects bad parameters") {
    CHECK_THROWS_AS(gen_pos_multicolor_egalitarian(3, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(gen_pos_multicolor_egalitarian(3, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(gen_pos_multicolor_egalitarian(2, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(gen_pos_multicolor_egalitarian(3, 3, 6), std::invalid_argument);
}

TEST_CASE("multicolor proportional family at n=8") {
    auto generated = gen_pos_multicolor_proportional(8);
    auto hist = size_histogram(generated.instance);
    CHECK(hist.at(Rational::of(7, 8)) == 1);
    CHECK(hist.at(Rational::of(1, 8)) == 3);
    CHECK(hist.at(Rational::of(1, 32)) == 4);
    CHECK(color_total(generated.instance, 1) == 4);
    CHECK(color_total(generated.instance, 2) == 2);
    CHECK(color_total(generated.instance, 3) == 2);

    // The big item still fits together with every tiny item.
    Rational tiny_total = Rational::of(1, 32) * Rational(4);
    CHECK(Rational::of(7, 8) + tiny_total <= Rational(1));
    // But the whole instance does not fit in one bin.
    Rational total;
    for (const Item& item : generated.instance.items()) {
        total += item.size;
    }
    CHECK(total > Rational(1));

    CHECK(social_cost(generated.witnesses.at("sigma_star")) == 2);
    CHECK(optimal_bins(generated.instance).opt == 2);
    CHECK(generated.expected.at("min_singleton_small") == Rational(-1));
    CHECK_THROWS_AS(gen_pos_multicolor_proportional(10), std::invalid_argument);
}

TEST_CASE("multicolor proportional family at n=16: equilibria strand small items") {
    auto generated = gen_pos_multicolor_proportional(16);
    auto build = greedy_packing_equilibrium(generated.instance);
    REQUIRE(is_nash(build.profile, generated.instance));
    const Rational small = Rational::of(1, 16);
    int singleton_small = 0;
    for (const Bin& bin : build.profile.bins) {
        if (bin.count() == 1 && generated.instance.size_of(bin.contents.front()) == small) {
            ++singleton_small;
        }
    }
    CHECK(Rational(singleton_small) >= generated.expected.at("min_singleton_small"));
    CHECK(generated.expected.at("min_singleton_small") == Rational(3));
}

TEST_CASE("black and white PoS family, egalitarian, k=4") {
    auto generated = gen_pos_bw_egalitarian(4);
    auto hist = size_histogram(generated.instance);
    const Rational delta = Rational::of(1, 80);
    CHECK(delta < Rational::of(1, 40));  // k+1 type-1 items must not fit
    CHECK(hist.at(Rational::of(1, 4) - Rational(2) * delta) == 8);
    CHECK(hist.at(Rational(1)) == 2);
    CHECK(hist.at(delta) == 8);
    CHECK(hist.at(Rational(0)) == 4);

    CHECK(social_cost(generated.witnesses.at("sigma")) == 7);
    CHECK(social_cost(generated.witnesses.at("sigma_star")) == 4);
    CHECK(is_nash(generated.witnesses.at("sigma"), generated.instance));
    CHECK(is_feasible(generated.witnesses.at("sigma_star"), generated.instance));
    CHECK(generated.expected.at("ratio") == Rational::of(7, 4));
    CHECK(generated.expected.at("ratio") ==
          Rational(3) - Rational(10) / Rational(4 + 4));
}

TEST_CASE("black and white PoS family, proportional, k=4 and k=2") {
    auto generated = gen_pos_bw_proportional(4);
    const Rational delta = Rational::of(1, 184);  // 1/(2k(5k+3))
    CHECK(delta < Rational::of(1, 92));
    auto hist = size_histogram(generated.instance);
    CHECK(hist.at(Rational::of(1, 4) - Rational(3) * delta) == 8);
    CHECK(hist.at(Rational(1) - Rational(20) * delta) == 2);
    CHECK(hist.at(delta) == 12);  // types (3) and (4) share the size

    CHECK(social_cost(generated.witnesses.at("sigma")) == 7);
    CHECK(social_cost(generated.witnesses.at("sigma_star")) == 4);
    CHECK(generated.expected.at("ratio") == Rational::of(7, 4));

    auto small = gen_pos_bw_proportional(2);
    CHECK(social_cost(small.witnesses.at("sigma")) == 4);
    CHECK(social_cost(small.witnesses.at("sigma_star")) == 3);
    CHECK(small.expected.at("ratio") == Rational(3) - Rational(10) / Rational(2 + 4));
}

TEST_CASE("uniform even PoS family") {
    auto k2 = gen_pos_uniform_even(2);
    CHECK(k2.instance.n() == 3);
    CHECK(color_total(k2.instance, 2) == 2);
    CHECK(color_total(k2.instance, 1) == 1);
    CHECK(k2.instance.uniform()->kappa == 2);
    CHECK(social_cost(k2.witnesses.at("sigma")) == 2);
    CHECK(social_cost(k2.witnesses.at("sigma_star")) == 2);

    auto k4 = gen_pos_uniform_even(4);
    CHECK(k4.instance.n() == 10);
    CHECK(color_total(k4.instance, 2) == 6);
    CHECK(color_total(k4.instance, 1) == 4);
    CHECK(social_cost(k4.witnesses.at("sigma")) == 4);
    CHECK(social_cost(k4.witnesses.at("sigma_star")) == 3);
    CHECK(optimal_bins(k4.instance).opt == 3);
    CHECK(k4.expected.at("ratio") == Rational::of(4, 3));
    CHECK(k4.expected.at("ratio") == Rational(4) / Rational(4 / 2 + 1));
    CHECK_THROWS_AS(gen_pos_uniform_even(3), std::invalid_argument);
}

TEST_CASE("unbounded PoA uniform family") {
    for (int k = 1; k <= 2; ++k) {
        for (bool odd : {false, true}) {
            auto generated = gen_poa_uniform_multicolor(k, odd);
            CHECK(generated.instance.n() == (odd ? 4 * k + 1 : 4 * k));
            CHECK(generated.instance.uniform()->kappa == (odd ? 4 * k + 1 : 4 * k));
            CHECK(generated.instance.uniform()->odd == odd);
            CHECK(social_cost(generated.witnesses.at("sigma")) == 2 * k);
            CHECK(social_cost(generated.witnesses.at("sigma_star")) == 1);
            CHECK(is_nash(generated.witnesses.at("sigma"), generated.instance));
            CHECK(optimal_bins(generated.instance).opt == 1);
        }
    }
    auto k1 = gen_poa_uniform_multicolor(1, false);
    CHECK(color_total(k1.instance, 1) == 2);
    CHECK(color_total(k1.instance, 2) == 1);
    CHECK(color_total(k1.instance, 3) == 1);
}

TEST_CASE("odd-kappa black and white PoA family at k=3") {
    auto generated = gen_poa_bw_odd(3);
    CHECK(generated.instance.n() == 9);
    CHECK(color_total(generated.instance, 2) == 5);
    CHECK(color_total(generated.instance, 1) == 4);
    CHECK(generated.instance.uniform()->kappa == 3);

    const Profile& sigma = generated.witnesses.at("sigma");
    CHECK(social_cost(sigma) == 5);
    CHECK(is_nash(sigma, generated.instance));
    CHECK(social_cost(generated.witnesses.at("sigma_star")) == 3);
    CHECK(generated.expected.at("ratio") == Rational::of(5, 3));
    CHECK(generated.expected.at("ratio") == Rational(3) - Rational(8) / Rational(3 + 3));
    CHECK(generated.expected.at("ratio") ==
          Rational(3 * 3 + 1) / Rational(3 + 3));
    CHECK_THROWS_AS(gen_poa_bw_odd(4), std::invalid_argument);
}

TEST_CASE("random generator is deterministic and honors its family") {
    RandomSpec spec;
    spec.n = 6;
    spec.m = 3;
    spec.family = SizeFamily::Grid;
    spec.grid_denom = 12;
    spec.seed = 7;
    auto a = gen_random(spec);
    auto b = gen_random(spec);
    REQUIRE(a.n() == b.n());
    for (ItemId id = 1; id <= a.n(); ++id) {
        CHECK(a.size_of(id) == b.size_of(id));
        CHECK(a.color_of(id) == b.color_of(id));
        CHECK(BigInt(12) % a.size_of(id).den() == 0);  // grid multiples of 1/12
    }

    spec.seed = 8;
    auto c = gen_random(spec);
    bool any_difference = false;
    for (ItemId id = 1; id <= a.n(); ++id) {
        any_difference = any_difference || a.size_of(id) != c.size_of(id) ||
                         a.color_of(id) != c.color_of(id);
    }
    CHECK(any_difference);

    spec.family = SizeFamily::Uniform;
    spec.kappa = 3;
    auto u = gen_random(spec);
    for (ItemId id = 1; id <= u.n(); ++id) {
        CHECK(u.size_of(id) == Rational::of(1, 3));
    }

    spec.family = SizeFamily::ZeroHeavy;
    spec.n = 30;
    auto z = gen_random(spec);
    int zeros = 0;
    for (ItemId id = 1; id <= z.n(); ++id) {
        zeros += z.size_of(id).is_zero() ? 1 : 0;
    }
    CHECK(zeros > 0);
    CHECK(zeros < 30);
}

TEST_CASE("random profiles are reproducible and capacity-valid") {
    RandomSpec spec;
    spec.n = 7;
    spec.m = 2;
    spec.family = SizeFamily::Grid;
    spec.grid_denom = 5;
    spec.seed = 3;
    auto game = gen_random(spec);
    auto p = random_profile(game, 11);
    auto q = random_profile(game, 11);
    CHECK(canonical_key(p) == canonical_key(q));
    for (const Bin& bin : p.bins) {
        CHECK(bin_load(bin, game) <= Rational(1));
    }
}

TEST_CASE("generated cases round trip through JSON") {
    auto generated = gen_pos_bw_egalitarian(4);
    auto back = case_from_json(case_to_json(generated));
    CHECK(back.provenance == "pos-bw-egalitarian");
    CHECK(back.params.at("k") == 4);
    CHECK(back.instance.n() == generated.instance.n());
    CHECK(canonical_key(back.witnesses.at("sigma")) ==
          canonical_key(generated.witnesses.at("sigma")));
    CHECK(back.expected.at("ratio") == Rational::of(7, 4));
}
