#ifndef CBP_MODEL_HPP
#define CBP_MODEL_HPP

#include "cbp/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cbp {

using ItemId = int;  // 1..n
using Color = int;   // 1..m

enum class CostModel { Egalitarian, Proportional };

std::string cost_model_name(CostModel model);
CostModel cost_model_from_name(const std::string& name);

/// An indivisible colored item controlled by one player.
struct Item {
    ItemId id = 0;
    Rational size;  // in [0, 1]
    Color color = 0;
};

struct UniformMeta {
    long long kappa = 0;  // floor(1/s), the per-bin item capacity
    bool odd = false;
    Rational size;
};

/// A colorful bin packing game: n items, m >= 2 colors, n unit-capacity bins
/// and one of the two cost sharing functions. Immutable after construction.
class GameInstance {
public:
    GameInstance(std::vector<Item> items, int color_count, CostModel cost_model);

    int n() const { return static_cast<int>(items_.size()); }
    int bin_count() const { return n(); }
    int colors() const { return color_count_; }
    CostModel cost_model() const { return cost_model_; }

    const std::vector<Item>& items() const { return items_; }
    const Item& item(ItemId id) const;
    const Rational& size_of(ItemId id) const { return item(id).size; }
    Color color_of(ItemId id) const { return item(id).color; }

    /// Least common multiple of all size denominators: every size becomes an
    /// integer once scaled by this value.
    const BigInt& common_denominator() const { return size_lcm_; }

    /// Present iff all sizes are equal and positive with kappa > 1.
    const std::optional<UniformMeta>& uniform() const { return uniform_; }

private:
    std::vector<Item> items_;  // position id-1 holds item id
    int color_count_;
    CostModel cost_model_;
    BigInt size_lcm_;
    std::optional<UniformMeta> uniform_;
};

/// One ordered bin; index 0 is the bottom of the stack.
struct Bin {
    std::vector<ItemId> contents;

    bool empty() const { return contents.empty(); }
    int count() const { return static_cast<int>(contents.size()); }
};

/// A strategy profile: one bin per player (empty bins permitted), each item
/// in exactly one bin, every bin within capacity.
struct Profile {
    std::vector<Bin> bins;

    int bin_count() const { return static_cast<int>(bins.size()); }
};

/// Validating constructor for profiles. Pads with empty bins up to the
/// instance's bin count; rejects duplicate/unknown items and over-full bins.
Profile make_profile(const GameInstance& game, std::vector<std::vector<ItemId>> bins);

Rational bin_load(const Bin& bin, const GameInstance& game);
std::optional<Color> top_color(const Bin& bin, const GameInstance& game);

/// A bin is feasible when no two adjacent items share a color.
bool bin_is_feasible(const Bin& bin, const GameInstance& game);

/// True iff some same-color item sits directly above or below this one.
bool is_misplaced(const Profile& profile, ItemId id, const GameInstance& game);

bool is_feasible(const Profile& profile, const GameInstance& game);

/// Number of open (nonempty) bins.
int social_cost(const Profile& profile);

struct CostValue {
    static CostValue infinite() { return CostValue{true, Rational()}; }
    static CostValue finite(Rational v) { return CostValue{false, std::move(v)}; }

    bool is_infinite = false;
    Rational value;  // meaningful iff !is_infinite

    friend bool operator==(const CostValue& a, const CostValue& b) {
        if (a.is_infinite || b.is_infinite) {
            return a.is_infinite == b.is_infinite;
        }
        return a.value == b.value;
    }
    friend bool operator<(const CostValue& a, const CostValue& b) {
        if (a.is_infinite) {
            return false;
        }
        if (b.is_infinite) {
            return true;
        }
        return a.value < b.value;
    }

    std::string str() const { return is_infinite ? "inf" : value.str(); }
};

/// Infinite when the item is misplaced; otherwise 1/|bin| (egalitarian) or
/// s_i / load (proportional). A proportional bin of load zero falls back to
/// the equal split 1/|bin| so zero-size items keep a well-defined cost.
CostValue player_cost(const Profile& profile, ItemId id, const GameInstance& game);

/// Bin index currently holding the item, or -1.
int bin_of(const Profile& profile, ItemId id);

/// Nonempty bins sorted by (item count, content sequence): profiles equal up
/// to bin renumbering share one canonical form.
std::vector<std::vector<ItemId>> canonical_bins(const Profile& profile);
std::string canonical_key(const Profile& profile);
Profile canonical_profile(const GameInstance& game, const Profile& profile);

}  // namespace cbp

#endif  // CBP_MODEL_HPP
