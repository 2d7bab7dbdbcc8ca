#ifndef CBP_ORACLE_HPP
#define CBP_ORACLE_HPP

#include "cbp/model.hpp"

#include <functional>
#include <vector>

namespace cbp {

/// True iff the multiset fits one feasible bin: total size at most 1 and the
/// dominant color at most ceil(total/2) of the items.
bool feasible_multiset(const std::vector<int>& color_counts, const Rational& total_size);
bool feasible_multiset(const std::vector<Item>& items, int color_count);

struct OptResult {
    int opt = 0;
    Profile witness;
};

/// Exact social optimum by subset DP over feasible bins. Capped (default
/// n <= 20); beyond the cap the call refuses with CapExceeded.
OptResult optimal_bins(const GameInstance& game, int cap = 20);

/// Visits every capacity-valid ordered packing of the items, one profile per
/// bin-renumbering class. Items are inserted in id order at every position of
/// every bin, so arbitrary stack orders are covered exactly once.
void for_each_profile(const GameInstance& game,
                      const std::function<void(const Profile&)>& visit);

/// All Nash equilibria up to bin renumbering, in canonical form, sorted.
/// Capped (default n <= 8).
std::vector<Profile> enumerate_nash(const GameInstance& game, int cap = 8);

struct RatioReport {
    int opt = 0;
    int best_ne = 0;
    int worst_ne = 0;
    Rational pos;
    Rational poa;
    std::size_t ne_count = 0;
};

RatioReport exact_ratios(const GameInstance& game, int opt_cap = 20, int ne_cap = 8);

/// Bin classes of a black and white profile: singleton bins by stored color,
/// non-singleton bins by top color.
struct BWDecomposition {
    int singleton_black = 0;
    int singleton_white = 0;
    int multi_black_top = 0;
    int multi_white_top = 0;
    int black_items = 0;
    int white_items = 0;
};

/// Rejects games with m != 2. Color 1 is black, color 2 is white.
BWDecomposition bw_decompose(const Profile& profile, const GameInstance& game);

/// For any feasible black and white profile, the singleton surplus
/// s_b - s_w - m_w never exceeds the social optimum.
int bw_singleton_surplus(const BWDecomposition& d);
bool bw_surplus_bound_holds(const Profile& profile, const GameInstance& game, int opt_cap = 20);

/// Exhaustive-subset validation oracles for the two bin solvers.
int brute_force_max_cardinality(const std::vector<Item>& pool, int color_count, int cap = 12);
Rational brute_force_max_size(const std::vector<Item>& pool, int color_count, int cap = 12);

}  // namespace cbp

#endif  // CBP_ORACLE_HPP
