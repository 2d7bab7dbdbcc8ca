#ifndef CBP_EQUILIBRIA_HPP
#define CBP_EQUILIBRIA_HPP

#include "cbp/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cbp {

/// Per-color multiplicities of a candidate bin's items.
struct ColorCounts {
    std::vector<int> counts;  // index color-1
    int total = 0;
    Color dominant_color = 0;
    int dominant_count = 0;
};

ColorCounts color_counts(const std::vector<Item>& items, int color_count);

/// A multiset can be ordered without same-color adjacency iff its dominant
/// color count is at most ceil(total/2).
bool orderable(const ColorCounts& counts);

/// Arranges the multiset bottom-to-top with no equal-color adjacency by
/// repeatedly placing a most-frequent remaining color different from the
/// previous one (ties to lowest color, then lowest item id). Returns nullopt
/// when the dominant color is too frequent; total size above capacity is a
/// precondition violation.
std::optional<Bin> order_bin(const std::vector<Item>& items, const GameInstance& game);

/// Maximum-cardinality subset of the pool packable into one feasible bin.
/// Guesses the dominant color and its count, keeps the smallest items of
/// every other color, and greedily extends by ascending size.
std::vector<Item> max_cardinality_colorful_packing(const std::vector<Item>& pool,
                                                   const GameInstance& game);

/// Maximum-total-size subset of the pool packable into one feasible bin.
/// All sizes must be integer multiples of 1/denominator. Per-color
/// (count, scaled size) reachability tables are convolved across colors for
/// each guess of the dominant color and its count.
std::vector<Item> colorful_subset_sum(const std::vector<Item>& pool, const GameInstance& game,
                                      const BigInt& denominator);

struct BinChoice {
    std::string subroutine;  // "max-cardinality", "subset-sum" or "uniform-greedy"
    std::vector<ItemId> items;
};

struct EquilibriumBuild {
    Profile profile;
    std::vector<BinChoice> choices;
};

/// Repeatedly extracts a subproblem-optimal bin from the remaining pool
/// (max-cardinality packing under the egalitarian cost function, subset sum
/// under the proportional one) until every item is packed. The result is a
/// Nash equilibrium for every egalitarian game and every proportional game
/// with positive sizes; zero-size items under the proportional zero-load
/// equal-split extension can escape the guarantee, so callers should check
/// is_nash on the output in that corner.
EquilibriumBuild greedy_packing_equilibrium(const GameInstance& game);

/// Greedy fill for uniform sizes: keep adding an item of the most frequent
/// remaining color different from the last one placed until the bin is full
/// or no such color remains, then open the next bin. Returns a Nash
/// equilibrium with F = OPT when kappa is odd and F <= 2*OPT when kappa is
/// even. Rejects non-uniform input (and kappa <= 1).
EquilibriumBuild uniform_greedy_equilibrium(const GameInstance& game);

}  // namespace cbp

#endif  // CBP_EQUILIBRIA_HPP
