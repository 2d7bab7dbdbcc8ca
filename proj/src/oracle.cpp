#include "cbp/oracle.hpp"

#include "cbp/dynamics.hpp"
#include "cbp/equilibria.hpp"
#include "cbp/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace cbp {

bool feasible_multiset(const std::vector<int>& color_counts, const Rational& total_size) {
    if (total_size > Rational(1)) {
        return false;
    }
    int total = 0;
    int dominant = 0;
    for (int count : color_counts) {
        total += count;
        dominant = std::max(dominant, count);
    }
    return dominant <= (total + 1) / 2;
}

bool feasible_multiset(const std::vector<Item>& items, int color_count) {
    std::vector<int> counts(static_cast<size_t>(color_count), 0);
    Rational total;
    for (const Item& item : items) {
        ++counts[static_cast<size_t>(item.color - 1)];
        total += item.size;
    }
    return feasible_multiset(counts, total);
}

OptResult optimal_bins(const GameInstance& game, int cap) {
    const int n = game.n();
    if (n > cap) {
        throw CapExceeded("optimal_bins: n = " + std::to_string(n) + " exceeds cap " +
                          std::to_string(cap));
    }
    const BigInt& denom_big = game.common_denominator();
    if (denom_big > BigInt(1000000000)) {
        throw CapExceeded("optimal_bins: size denominators too large to scale");
    }
    const long long denom = denom_big.convert_to<long long>();

    std::vector<long long> weight(static_cast<size_t>(n));
    std::vector<Color> color(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Item& item = game.item(i + 1);
        weight[static_cast<size_t>(i)] = item.size.num().convert_to<long long>() *
                                         (denom / item.size.den().convert_to<long long>());
        color[static_cast<size_t>(i)] = item.color;
    }

    const size_t masks = size_t{1} << n;
    std::vector<Color> present;
    for (int i = 0; i < n; ++i) {
        if (std::find(present.begin(), present.end(), color[static_cast<size_t>(i)]) ==
            present.end()) {
            present.push_back(color[static_cast<size_t>(i)]);
        }
    }

    // Scaled loads and per-color counts, built from the lowest set bit.
    std::vector<long long> load(masks, 0);
    std::vector<std::vector<std::uint8_t>> count(present.size(),
                                                 std::vector<std::uint8_t>(masks, 0));
    std::vector<std::uint8_t> feasible(masks, 0);
    for (size_t mask = 1; mask < masks; ++mask) {
        const size_t low = mask & (~mask + 1);
        const int bit = std::countr_zero(low);
        load[mask] = load[mask ^ low] + weight[static_cast<size_t>(bit)];
        int popcount = std::popcount(mask);
        int dominant = 0;
        for (size_t c = 0; c < present.size(); ++c) {
            count[c][mask] = static_cast<std::uint8_t>(
                count[c][mask ^ low] +
                (color[static_cast<size_t>(bit)] == present[c] ? 1 : 0));
            dominant = std::max(dominant, static_cast<int>(count[c][mask]));
        }
        feasible[mask] = load[mask] <= denom && dominant <= (popcount + 1) / 2;
    }

    const int kInf = n + 1;
    std::vector<std::uint8_t> dp(masks, static_cast<std::uint8_t>(kInf));
    std::vector<std::uint32_t> parent(masks, 0);
    dp[0] = 0;
    for (size_t mask = 1; mask < masks; ++mask) {
        const size_t low = mask & (~mask + 1);
        for (size_t sub = mask; sub; sub = (sub - 1) & mask) {
            if (!(sub & low) || !feasible[sub]) {
                continue;
            }
            if (dp[mask ^ sub] + 1 < dp[mask]) {
                dp[mask] = static_cast<std::uint8_t>(dp[mask ^ sub] + 1);
                parent[mask] = static_cast<std::uint32_t>(sub);
            }
        }
    }

    OptResult result;
    result.opt = dp[masks - 1];
    std::vector<std::vector<ItemId>> bins;
    for (size_t mask = masks - 1; mask;) {
        const size_t sub = parent[mask];
        std::vector<Item> members;
        for (int i = 0; i < n; ++i) {
            if (sub & (size_t{1} << i)) {
                members.push_back(game.item(i + 1));
            }
        }
        auto bin = order_bin(members, game);
        if (!bin) {
            throw std::logic_error("optimal_bins: witness bin not orderable");
        }
        bins.push_back(bin->contents);
        mask ^= sub;
    }
    result.witness = make_profile(game, std::move(bins));
    return result;
}

namespace {

struct ProfileEnumerator {
    const GameInstance& game;
    const std::function<void(const Profile&)>& visit;
    std::vector<std::vector<ItemId>> bins;
    std::vector<Rational> loads;

    void run(ItemId id) {
        if (id > game.n()) {
            Profile profile;
            profile.bins.reserve(static_cast<size_t>(game.bin_count()));
            for (const auto& contents : bins) {
                profile.bins.push_back(Bin{contents});
            }
            profile.bins.resize(static_cast<size_t>(game.bin_count()));
            visit(profile);
            return;
        }
        const Rational& size = game.size_of(id);
        const Rational one(1);
        for (size_t b = 0; b < bins.size(); ++b) {
            if (loads[b] + size > one) {
                continue;
            }
            loads[b] += size;
            for (size_t pos = 0; pos <= bins[b].size(); ++pos) {
                bins[b].insert(bins[b].begin() + static_cast<long>(pos), id);
                run(id + 1);
                bins[b].erase(bins[b].begin() + static_cast<long>(pos));
            }
            loads[b] -= size;
        }
        if (static_cast<int>(bins.size()) < game.bin_count()) {
            bins.push_back({id});
            loads.push_back(size);
            run(id + 1);
            bins.pop_back();
            loads.pop_back();
        }
    }
};

}  // namespace

void for_each_profile(const GameInstance& game,
                      const std::function<void(const Profile&)>& visit) {
    ProfileEnumerator enumerator{game, visit, {}, {}};
    enumerator.run(1);
}

std::vector<Profile> enumerate_nash(const GameInstance& game, int cap) {
    if (game.n() > cap) {
        throw CapExceeded("enumerate_nash: n = " + std::to_string(game.n()) +
                          " exceeds cap " + std::to_string(cap));
    }
    std::vector<Profile> out;
    for_each_profile(game, [&](const Profile& profile) {
        if (is_nash(profile, game)) {
            out.push_back(canonical_profile(game, profile));
        }
    });
    std::sort(out.begin(), out.end(), [](const Profile& a, const Profile& b) {
        return canonical_key(a) < canonical_key(b);
    });
    return out;
}

RatioReport exact_ratios(const GameInstance& game, int opt_cap, int ne_cap) {
    RatioReport report;
    report.opt = optimal_bins(game, opt_cap).opt;
    const std::vector<Profile> equilibria = enumerate_nash(game, ne_cap);
    if (equilibria.empty()) {
        throw std::logic_error("exact_ratios: no Nash equilibrium found");
    }
    report.ne_count = equilibria.size();
    report.best_ne = game.n() + 1;
    report.worst_ne = 0;
    for (const Profile& ne : equilibria) {
        const int f = social_cost(ne);
        report.best_ne = std::min(report.best_ne, f);
        report.worst_ne = std::max(report.worst_ne, f);
    }
    report.pos = Rational(BigInt(report.best_ne), BigInt(report.opt));
    report.poa = Rational(BigInt(report.worst_ne), BigInt(report.opt));
    return report;
}

BWDecomposition bw_decompose(const Profile& profile, const GameInstance& game) {
    if (game.colors() != 2) {
        throw std::invalid_argument("bw_decompose requires a black and white game (m = 2)");
    }
    BWDecomposition d;
    for (const Item& item : game.items()) {
        if (item.color == 1) {
            ++d.black_items;
        } else {
            ++d.white_items;
        }
    }
    for (const Bin& bin : profile.bins) {
        if (bin.empty()) {
            continue;
        }
        const Color top = game.color_of(bin.contents.back());
        if (bin.count() == 1) {
            (top == 1 ? d.singleton_black : d.singleton_white) += 1;
        } else {
            (top == 1 ? d.multi_black_top : d.multi_white_top) += 1;
        }
    }
    return d;
}

int bw_singleton_surplus(const BWDecomposition& d) {
    return d.singleton_black - d.singleton_white - d.multi_white_top;
}

bool bw_surplus_bound_holds(const Profile& profile, const GameInstance& game, int opt_cap) {
    if (!is_feasible(profile, game)) {
        throw std::invalid_argument("bw_surplus_bound_holds expects a feasible profile");
    }
    const BWDecomposition d = bw_decompose(profile, game);
    return bw_singleton_surplus(d) <= optimal_bins(game, opt_cap).opt;
}

namespace {

void check_pool_cap(const std::vector<Item>& pool, int cap, const char* what) {
    if (pool.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty pool");
    }
    if (static_cast<int>(pool.size()) > cap) {
        throw CapExceeded(std::string(what) + ": pool size exceeds cap " +
                          std::to_string(cap));
    }
}

}  // namespace

int brute_force_max_cardinality(const std::vector<Item>& pool, int color_count, int cap) {
    check_pool_cap(pool, cap, "brute_force_max_cardinality");
    const size_t n = pool.size();
    int best = 0;
    for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
        std::vector<Item> subset;
        for (size_t i = 0; i < n; ++i) {
            if (mask & (size_t{1} << i)) {
                subset.push_back(pool[i]);
            }
        }
        if (feasible_multiset(subset, color_count)) {
            best = std::max(best, static_cast<int>(subset.size()));
        }
    }
    return best;
}

Rational brute_force_max_size(const std::vector<Item>& pool, int color_count, int cap) {
    check_pool_cap(pool, cap, "brute_force_max_size");
    const size_t n = pool.size();
    Rational best;
    for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
        std::vector<Item> subset;
        Rational total;
        for (size_t i = 0; i < n; ++i) {
            if (mask & (size_t{1} << i)) {
                subset.push_back(pool[i]);
                total += pool[i].size;
            }
        }
        if (feasible_multiset(subset, color_count) && total > best) {
            best = total;
        }
    }
    return best;
}

}  // namespace cbp
