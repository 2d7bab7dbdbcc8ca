#include "cbp/instances.hpp"

#include "cbp/dynamics.hpp"
#include "cbp/equilibria.hpp"

#include <algorithm>
#include <stdexcept>

namespace cbp {

namespace {

// Appends `count` items of the given size and color, ids continuing from the
// current end; returns the new ids.
std::vector<ItemId> add_items(std::vector<Item>& items, int count, const Rational& size,
                              Color color) {
    std::vector<ItemId> ids;
    for (int i = 0; i < count; ++i) {
        const ItemId id = static_cast<ItemId>(items.size()) + 1;
        items.push_back(Item{id, size, color});
        ids.push_back(id);
    }
    return ids;
}

std::vector<Item> items_of(const GameInstance& game, const std::vector<ItemId>& ids) {
    std::vector<Item> out;
    for (ItemId id : ids) {
        out.push_back(game.item(id));
    }
    return out;
}

std::vector<ItemId> ordered_bin(const GameInstance& game, const std::vector<ItemId>& ids) {
    auto bin = order_bin(items_of(game, ids), game);
    if (!bin) {
        throw std::logic_error("generator produced an unorderable bin multiset");
    }
    return bin->contents;
}

// Every generated witness is machine-checked; parameters whose witnesses do
// not verify are refused instead of emitted.
void verify_case(const GeneratedCase& generated) {
    for (const auto& [name, profile] : generated.witnesses) {
        if (name == "sigma" && !is_nash(profile, generated.instance)) {
            throw std::invalid_argument(generated.provenance +
                                        ": sigma witness is not a Nash equilibrium");
        }
        if (name == "sigma_star" && !is_feasible(profile, generated.instance)) {
            throw std::invalid_argument(generated.provenance +
                                        ": sigma_star witness is not feasible");
        }
    }
    const auto check_f = [&](const std::string& key, const std::string& witness) {
        const auto expected = generated.expected.find(key);
        const auto profile = generated.witnesses.find(witness);
        if (expected != generated.expected.end() && profile != generated.witnesses.end() &&
            Rational(social_cost(profile->second)) != expected->second) {
            throw std::invalid_argument(generated.provenance + ": " + key +
                                        " does not match the witness");
        }
    };
    check_f("F_sigma", "sigma");
    check_f("F_sigma_star", "sigma_star");
}

}  // namespace

GeneratedCase gen_improvement_cycle() {
    std::vector<Item> items;
    const Rational quarter = Rational::of(1, 4);
    add_items(items, 3, quarter, 1);  // black
    add_items(items, 3, quarter, 2);  // white
    GeneratedCase generated{GameInstance(std::move(items), 2, CostModel::Egalitarian),
                            {},
                            {{"opt", Rational(2)}},
                            {},
                            "improvement-cycle"};
    verify_case(generated);
    return generated;
}

GeneratedCase gen_pos_multicolor_egalitarian(int m, int h, int k) {
    if (m < 3 || h < 2 || k < 1 || k % m != 0 || (h * (k - 1)) % (m - 1) != 0) {
        throw std::invalid_argument(
            "gen_pos_multicolor_egalitarian needs m >= 3, h >= 2, m | k and (m-1) | h(k-1)");
    }
    const Rational delta(BigInt(1), BigInt(2) * h * k * (k + 1));
    const Rational white_size = Rational::of(1, k) - Rational(h) * delta;
    const int per_color = h * (k - 1) / (m - 1);

    std::vector<Item> items;
    const std::vector<ItemId> whites = add_items(items, h * k, white_size, 1);
    std::vector<ItemId> non_whites;
    for (Color c = 2; c <= m; ++c) {
        for (ItemId id : add_items(items, per_color, delta, c)) {
            non_whites.push_back(id);
        }
    }
    GameInstance game(std::move(items), m, CostModel::Egalitarian);

    // h bins, each holding k whites and k-1 non-whites.
    std::vector<std::vector<ItemId>> bins;
    for (int t = 0; t < h; ++t) {
        std::vector<ItemId> members(whites.begin() + static_cast<long>(t) * k,
                                    whites.begin() + static_cast<long>(t + 1) * k);
        members.insert(members.end(),
                       non_whites.begin() + static_cast<long>(t) * (k - 1),
                       non_whites.begin() + static_cast<long>(t + 1) * (k - 1));
        bins.push_back(ordered_bin(game, members));
    }
    Profile sigma_star = make_profile(game, std::move(bins));

    const Rational bound =
        Rational(k) * (Rational(h - 1) - Rational(BigInt(h), BigInt(m - 1)));
    GeneratedCase generated{std::move(game),
                            {{"sigma_star", std::move(sigma_star)}},
                            {{"F_sigma_star", Rational(h)}, {"ne_bins_lower_bound", bound}},
                            {{"m", m}, {"h", h}, {"k", k}},
                            "pos-multicolor-egalitarian"};
    verify_case(generated);
    return generated;
}

GeneratedCase gen_pos_multicolor_proportional(int n) {
    if (n < 8 || n % 4 != 0) {
        throw std::invalid_argument(
            "gen_pos_multicolor_proportional needs n >= 8, a multiple of 4");
    }
    // epsilon = 1/n inside (0, 2/n); the tiny size sits exactly at its bound.
    const Rational big = Rational(1) - Rational::of(1, n);          // 1 - 2/n + epsilon
    const Rational small = Rational::of(1, n);                      // 1 - big
    const Rational tiny(BigInt(2), BigInt(n) * n);                  // (2/n)(2/n - epsilon)

    std::vector<Item> items;
    const std::vector<ItemId> big_id = add_items(items, 1, big, 1);
    std::vector<ItemId> rest = add_items(items, n / 2 - 1, small, 1);
    for (ItemId id : add_items(items, n / 4, tiny, 2)) {
        rest.push_back(id);
    }
    for (ItemId id : add_items(items, n / 4, tiny, 3)) {
        rest.push_back(id);
    }
    GameInstance game(std::move(items), 3, CostModel::Proportional);

    std::vector<std::vector<ItemId>> bins;
    bins.push_back({big_id.front()});
    bins.push_back(ordered_bin(game, rest));
    Profile sigma_star = make_profile(game, std::move(bins));

    GeneratedCase generated{std::move(game),
                            {{"sigma_star", std::move(sigma_star)}},
                            {{"F_sigma_star", Rational(2)},
                             {"opt", Rational(2)},
                             {"min_singleton_small", Rational(n / 2 - 5)}},
                            {{"n", n}},
                            "pos-multicolor-proportional"};
    verify_case(generated);
    return generated;
}

namespace {

// Shared frame of the two black-and-white price-of-stability families: item
// types (1)-(4), sigma with 3k/2 + 1 bins, sigma_star with k/2 + 2 bins.
GeneratedCase build_pos_bw(int k, CostModel model, const Rational& type1_size,
                           const Rational& type2_size, const Rational& type3_size,
                           const Rational& type4_size, const std::string& provenance) {
    if (k < 2 || k % 2 != 0) {
        throw std::invalid_argument(provenance + " needs an even k >= 2");
    }
    std::vector<Item> items;
    const auto type1 = add_items(items, 2 * k, type1_size, 2);  // white
    const auto type2 = add_items(items, k / 2, type2_size, 1);  // black
    const auto type3 = add_items(items, 2 * k, type3_size, 1);  // black
    const auto type4 = add_items(items, k, type4_size, 2);      // white
    GameInstance game(std::move(items), 2, model);

    // sigma: one bin with k type-1, all type-4 and all type-3 items (load
    // exactly 1), the remaining type-1 and type-2 items in singletons.
    std::vector<std::vector<ItemId>> sigma_bins;
    {
        std::vector<ItemId> first(type1.begin(), type1.begin() + k);
        first.insert(first.end(), type4.begin(), type4.end());
        first.insert(first.end(), type3.begin(), type3.end());
        sigma_bins.push_back(ordered_bin(game, first));
    }
    for (int i = k; i < 2 * k; ++i) {
        sigma_bins.push_back({type1[static_cast<size_t>(i)]});
    }
    for (ItemId id : type2) {
        sigma_bins.push_back({id});
    }
    Profile sigma = make_profile(game, std::move(sigma_bins));

    // sigma_star: two bins with k type-1 and k type-3 each, then k/2 bins
    // with one type-2 and two type-4 items.
    std::vector<std::vector<ItemId>> star_bins;
    for (int half = 0; half < 2; ++half) {
        std::vector<ItemId> members(type1.begin() + static_cast<long>(half) * k,
                                    type1.begin() + static_cast<long>(half + 1) * k);
        members.insert(members.end(), type3.begin() + static_cast<long>(half) * k,
                       type3.begin() + static_cast<long>(half + 1) * k);
        star_bins.push_back(ordered_bin(game, members));
    }
    for (int i = 0; i < k / 2; ++i) {
        star_bins.push_back(ordered_bin(
            game, {type2[static_cast<size_t>(i)], type4[static_cast<size_t>(2 * i)],
                   type4[static_cast<size_t>(2 * i + 1)]}));
    }
    Profile sigma_star = make_profile(game, std::move(star_bins));

    const Rational f_sigma(3 * k / 2 + 1);
    const Rational f_star(k / 2 + 2);
    GeneratedCase generated{std::move(game),
                            {{"sigma", std::move(sigma)}, {"sigma_star", std::move(sigma_star)}},
                            {{"F_sigma", f_sigma},
                             {"F_sigma_star", f_star},
                             {"ratio", f_sigma / f_star}},
                            {{"k", k}},
                            provenance};
    verify_case(generated);
    return generated;
}

}  // namespace

GeneratedCase gen_pos_bw_egalitarian(int k) {
    const Rational delta(BigInt(1), BigInt(4) * k * (k + 1));
    return build_pos_bw(k, CostModel::Egalitarian,
                        Rational::of(1, k) - Rational(2) * delta,  // type (1)
                        Rational(1),                               // type (2)
                        delta,                                     // type (3)
                        Rational(0),                               // type (4)
                        "pos-bw-egalitarian");
}

GeneratedCase gen_pos_bw_proportional(int k) {
    const Rational delta(BigInt(1), BigInt(2) * k * (5 * k + 3));
    return build_pos_bw(k, CostModel::Proportional,
                        Rational::of(1, k) - Rational(3) * delta,      // type (1)
                        Rational(1) - Rational(5 * k) * delta,         // type (2)
                        delta,                                         // type (3)
                        delta,                                         // type (4)
                        "pos-bw-proportional");
}

GeneratedCase gen_pos_uniform_even(int k) {
    if (k < 2 || k % 2 != 0) {
        throw std::invalid_argument("gen_pos_uniform_even needs an even k >= 2");
    }
    const Rational size = Rational::of(1, k);
    std::vector<Item> items;
    const auto blacks = add_items(items, k * k / 4, size, 1);
    const auto whites = add_items(items, k * k / 4 + k / 2, size, 2);
    GameInstance game(std::move(items), 2, CostModel::Egalitarian);

    // sigma: k/2 full bins (k/2 of each color) plus k/2 white singletons.
    std::vector<std::vector<ItemId>> sigma_bins;
    for (int t = 0; t < k / 2; ++t) {
        std::vector<ItemId> members(blacks.begin() + static_cast<long>(t) * (k / 2),
                                    blacks.begin() + static_cast<long>(t + 1) * (k / 2));
        members.insert(members.end(), whites.begin() + static_cast<long>(t) * (k / 2),
                       whites.begin() + static_cast<long>(t + 1) * (k / 2));
        sigma_bins.push_back(ordered_bin(game, members));
    }
    for (int i = k * k / 4; i < k * k / 4 + k / 2; ++i) {
        sigma_bins.push_back({whites[static_cast<size_t>(i)]});
    }
    Profile sigma = make_profile(game, std::move(sigma_bins));

    // sigma_star: k/2 bins with k/2 whites and k/2 - 1 blacks, one full bin
    // with k/2 of each color.
    std::vector<std::vector<ItemId>> star_bins;
    size_t black_at = 0;
    size_t white_at = 0;
    for (int t = 0; t < k / 2; ++t) {
        std::vector<ItemId> members;
        for (int i = 0; i < k / 2; ++i) {
            members.push_back(whites[white_at++]);
        }
        for (int i = 0; i < k / 2 - 1; ++i) {
            members.push_back(blacks[black_at++]);
        }
        star_bins.push_back(ordered_bin(game, members));
    }
    {
        std::vector<ItemId> members;
        for (int i = 0; i < k / 2; ++i) {
            members.push_back(whites[white_at++]);
        }
        for (int i = 0; i < k / 2; ++i) {
            members.push_back(blacks[black_at++]);
        }
        star_bins.push_back(ordered_bin(game, members));
    }
    Profile sigma_star = make_profile(game, std::move(star_bins));

    const Rational f_sigma(k);
    const Rational f_star(k / 2 + 1);
    GeneratedCase generated{std::move(game),
                            {{"sigma", std::move(sigma)}, {"sigma_star", std::move(sigma_star)}},
                            {{"F_sigma", f_sigma},
                             {"F_sigma_star", f_star},
                             {"opt", f_star},
                             {"ratio", f_sigma / f_star}},
                            {{"k", k}},
                            "pos-uniform-even"};
    verify_case(generated);
    return generated;
}

GeneratedCase gen_poa_uniform_multicolor(int k, bool odd_variant) {
    if (k < 1) {
        throw std::invalid_argument("gen_poa_uniform_multicolor needs k >= 1");
    }
    const int blacks_total = odd_variant ? 2 * k + 1 : 2 * k;
    const Rational size = Rational(BigInt(1), BigInt(odd_variant ? 4 * k + 1 : 4 * k));
    std::vector<Item> items;
    const auto blacks = add_items(items, blacks_total, size, 1);
    const auto color2 = add_items(items, k, size, 2);
    const auto color3 = add_items(items, k, size, 3);
    GameInstance game(std::move(items), 3, CostModel::Egalitarian);

    std::vector<ItemId> everything;
    for (const Item& item : game.items()) {
        everything.push_back(item.id);
    }
    Profile sigma_star = make_profile(game, {ordered_bin(game, everything)});

    // sigma: the non-black items alternate in one bin with a black item on
    // top (and, in the odd variant, the extra black at the bottom); the other
    // 2k - 1 blacks sit in singletons.
    std::vector<ItemId> big;
    if (odd_variant) {
        big.push_back(blacks.back());
    }
    for (int i = 0; i < k; ++i) {
        big.push_back(color2[static_cast<size_t>(i)]);
        big.push_back(color3[static_cast<size_t>(i)]);
    }
    big.push_back(blacks.front());
    std::vector<std::vector<ItemId>> sigma_bins{big};
    for (int i = 1; i < 2 * k; ++i) {
        sigma_bins.push_back({blacks[static_cast<size_t>(i)]});
    }
    Profile sigma = make_profile(game, std::move(sigma_bins));

    GeneratedCase generated{std::move(game),
                            {{"sigma", std::move(sigma)}, {"sigma_star", std::move(sigma_star)}},
                            {{"F_sigma", Rational(2 * k)},
                             {"opt", Rational(1)},
                             {"ratio", Rational(2 * k)}},
                            {{"k", k}, {"odd", odd_variant ? 1 : 0}},
                            "poa-uniform-multicolor"};
    verify_case(generated);
    return generated;
}

GeneratedCase gen_poa_bw_odd(int k) {
    if (k < 3 || k % 2 == 0) {
        throw std::invalid_argument("gen_poa_bw_odd needs an odd k >= 3");
    }
    const Rational size = Rational::of(1, k);
    std::vector<Item> items;
    const auto blacks = add_items(items, (k + 1) * (k + 1) / 4, size, 1);
    const auto whites = add_items(items, (k * k + 4 * k - 1) / 4, size, 2);
    GameInstance game(std::move(items), 2, CostModel::Egalitarian);

    // sigma: (k+1)/2 full bins with (k+1)/2 blacks and (k-1)/2 whites each,
    // plus k white singletons.
    std::vector<std::vector<ItemId>> sigma_bins;
    size_t black_at = 0;
    size_t white_at = 0;
    for (int t = 0; t < (k + 1) / 2; ++t) {
        std::vector<ItemId> members;
        for (int i = 0; i < (k + 1) / 2; ++i) {
            members.push_back(blacks[black_at++]);
        }
        for (int i = 0; i < (k - 1) / 2; ++i) {
            members.push_back(whites[white_at++]);
        }
        sigma_bins.push_back(ordered_bin(game, members));
    }
    for (int i = 0; i < k; ++i) {
        sigma_bins.push_back({whites[white_at++]});
    }
    Profile sigma = make_profile(game, std::move(sigma_bins));

    // sigma_star: (k+1)/2 bins with (k+1)/2 whites and (k-1)/2 blacks, one
    // bin with (k-1)/2 whites and (k+1)/2 blacks.
    std::vector<std::vector<ItemId>> star_bins;
    black_at = 0;
    white_at = 0;
    for (int t = 0; t < (k + 1) / 2; ++t) {
        std::vector<ItemId> members;
        for (int i = 0; i < (k + 1) / 2; ++i) {
            members.push_back(whites[white_at++]);
        }
        for (int i = 0; i < (k - 1) / 2; ++i) {
            members.push_back(blacks[black_at++]);
        }
        star_bins.push_back(ordered_bin(game, members));
    }
    {
        std::vector<ItemId> members;
        for (int i = 0; i < (k - 1) / 2; ++i) {
            members.push_back(whites[white_at++]);
        }
        for (int i = 0; i < (k + 1) / 2; ++i) {
            members.push_back(blacks[black_at++]);
        }
        star_bins.push_back(ordered_bin(game, members));
    }
    Profile sigma_star = make_profile(game, std::move(star_bins));

    const Rational f_sigma((3 * k + 1) / 2);
    const Rational f_star((k + 3) / 2);
    GeneratedCase generated{std::move(game),
                            {{"sigma", std::move(sigma)}, {"sigma_star", std::move(sigma_star)}},
                            {{"F_sigma", f_sigma},
                             {"F_sigma_star", f_star},
                             {"opt", f_star},
                             {"ratio", f_sigma / f_star}},
                            {{"k", k}},
                            "poa-bw-odd"};
    verify_case(generated);
    return generated;
}

namespace {

struct SplitMix {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    long long below(long long bound) {
        return static_cast<long long>(next() % static_cast<std::uint64_t>(bound));
    }
};

}  // namespace

GameInstance gen_random(const RandomSpec& spec) {
    if (spec.n < 1 || spec.m < 2) {
        throw std::invalid_argument("gen_random needs n >= 1 and m >= 2");
    }
    SplitMix rng{spec.seed};
    std::vector<Item> items;
    for (int i = 0; i < spec.n; ++i) {
        Rational size;
        switch (spec.family) {
            case SizeFamily::Uniform:
                if (spec.kappa < 2) {
                    throw std::invalid_argument("gen_random: uniform family needs kappa >= 2");
                }
                size = Rational(BigInt(1), BigInt(spec.kappa));
                break;
            case SizeFamily::Grid:
                size = Rational(BigInt(1 + rng.below(spec.grid_denom)),
                                BigInt(spec.grid_denom));
                break;
            case SizeFamily::ZeroHeavy:
                size = rng.below(2) == 0
                           ? Rational(0)
                           : Rational(BigInt(1 + rng.below(spec.grid_denom)),
                                      BigInt(spec.grid_denom));
                break;
        }
        const Color color = static_cast<Color>(1 + rng.below(spec.m));
        items.push_back(Item{i + 1, size, color});
    }
    return GameInstance(std::move(items), spec.m, spec.cost_model);
}

Profile random_profile(const GameInstance& game, std::uint64_t seed) {
    SplitMix rng{seed};
    std::vector<std::vector<ItemId>> bins;
    std::vector<Rational> loads;
    const Rational one(1);
    for (const Item& item : game.items()) {
        std::vector<size_t> fits;
        for (size_t b = 0; b < bins.size(); ++b) {
            if (loads[b] + item.size <= one) {
                fits.push_back(b);
            }
        }
        const bool can_open = static_cast<int>(bins.size()) < game.bin_count();
        const long long options =
            static_cast<long long>(fits.size()) + (can_open ? 1 : 0);
        const long long pick = rng.below(options);
        if (pick < static_cast<long long>(fits.size())) {
            bins[fits[static_cast<size_t>(pick)]].push_back(item.id);
            loads[fits[static_cast<size_t>(pick)]] += item.size;
        } else {
            bins.push_back({item.id});
            loads.push_back(item.size);
        }
    }
    return make_profile(game, std::move(bins));
}

}  // namespace cbp
