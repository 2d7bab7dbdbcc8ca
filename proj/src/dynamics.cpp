#include "cbp/dynamics.hpp"

#include "cbp/errors.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace cbp {

namespace {

struct BinStats {
    int count = 0;
    Rational load;
    std::optional<Color> top;
    bool feasible = true;
};

std::vector<BinStats> collect_stats(const Profile& profile, const GameInstance& game) {
    std::vector<BinStats> stats(profile.bins.size());
    for (size_t b = 0; b < profile.bins.size(); ++b) {
        const Bin& bin = profile.bins[b];
        stats[b].count = bin.count();
        stats[b].load = bin_load(bin, game);
        stats[b].top = top_color(bin, game);
        stats[b].feasible = bin_is_feasible(bin, game);
    }
    return stats;
}

// Cost the mover would pay after landing on top of a bin currently described
// by `target` (count/load before the move).
CostValue landing_cost(const BinStats& target, const Item& item, CostModel model) {
    if (target.top.has_value() && *target.top == item.color) {
        return CostValue::infinite();
    }
    if (model == CostModel::Egalitarian) {
        return CostValue::finite(Rational(BigInt(1), BigInt(target.count + 1)));
    }
    const Rational new_load = target.load + item.size;
    if (new_load.is_zero()) {
        return CostValue::finite(Rational(BigInt(1), BigInt(target.count + 1)));
    }
    return CostValue::finite(item.size / new_load);
}

template <typename Visitor>
void for_each_improving(const Profile& profile, const GameInstance& game, Visitor&& visit) {
    const std::vector<BinStats> stats = collect_stats(profile, game);
    const Rational one(1);
    int first_empty = -1;
    for (size_t b = 0; b < profile.bins.size(); ++b) {
        if (stats[b].count == 0) {
            first_empty = static_cast<int>(b);
            break;
        }
    }
    for (ItemId id = 1; id <= game.n(); ++id) {
        const int from = bin_of(profile, id);
        const Item& item = game.item(id);
        const CostValue current = player_cost(profile, id, game);
        for (int to = 0; to < profile.bin_count(); ++to) {
            if (to == from) {
                continue;
            }
            const BinStats& target = stats[static_cast<size_t>(to)];
            if (target.count == 0 && to != first_empty) {
                continue;  // all empty bins are interchangeable
            }
            if (target.load + item.size > one) {
                continue;
            }
            if (landing_cost(target, item, game.cost_model()) < current) {
                Deviation dev{id, from, to, target.feasible};
                if (!visit(dev)) {
                    return;
                }
            }
        }
    }
}

}  // namespace

std::vector<Deviation> enumerate_improving_deviations(const Profile& profile,
                                                      const GameInstance& game) {
    std::vector<Deviation> out;
    for_each_improving(profile, game, [&](const Deviation& dev) {
        out.push_back(dev);
        return true;
    });
    return out;
}

bool has_improving_deviation(const Profile& profile, const GameInstance& game) {
    bool found = false;
    for_each_improving(profile, game, [&](const Deviation&) {
        found = true;
        return false;
    });
    return found;
}

bool is_nash(const Profile& profile, const GameInstance& game) {
    return !has_improving_deviation(profile, game);
}

Profile apply_deviation(const Profile& profile, const Deviation& dev, const GameInstance& game) {
    if (dev.to_bin < 0 || dev.to_bin >= profile.bin_count() || dev.to_bin == dev.from_bin) {
        throw std::invalid_argument("deviation target out of range");
    }
    Profile next = profile;
    auto& from = next.bins[static_cast<size_t>(bin_of(profile, dev.item))].contents;
    const auto it = std::find(from.begin(), from.end(), dev.item);
    if (it == from.end()) {
        throw std::invalid_argument("deviation item not found in its bin");
    }
    from.erase(it);
    Bin& target = next.bins[static_cast<size_t>(dev.to_bin)];
    if (bin_load(target, game) + game.size_of(dev.item) > Rational(1)) {
        throw std::invalid_argument("deviation violates bin capacity");
    }
    target.contents.push_back(dev.item);
    return next;
}

Potential potential_egalitarian(const Profile& profile, const GameInstance& game) {
    Potential total = 0;
    for (const Bin& bin : profile.bins) {
        if (bin.empty() || !bin_is_feasible(bin, game)) {
            continue;
        }
        total += boost::multiprecision::pow(BigInt(bin.count()),
                                            static_cast<unsigned>(bin.count()));
    }
    return total;
}

Potential potential_proportional(const Profile& profile, const GameInstance& game) {
    const BigInt& denom = game.common_denominator();
    if (denom > BigInt(10000000)) {
        throw CapExceeded("common denominator too large for the proportional potential");
    }
    Potential total = 0;
    for (const Bin& bin : profile.bins) {
        if (bin.empty() || !bin_is_feasible(bin, game)) {
            continue;
        }
        const Rational load = bin_load(bin, game);
        const BigInt exponent = load.num() * (denom / load.den());
        total += boost::multiprecision::pow(BigInt(3), exponent.convert_to<unsigned>());
    }
    return total;
}

Potential potential(const Profile& profile, const GameInstance& game) {
    return game.cost_model() == CostModel::Egalitarian
               ? potential_egalitarian(profile, game)
               : potential_proportional(profile, game);
}

Policy policy_from_name(const std::string& name, std::uint64_t seed) {
    if (name == "first") {
        return Policy{PolicyKind::First, seed};
    }
    if (name == "random") {
        return Policy{PolicyKind::Random, seed};
    }
    if (name == "max-gain") {
        return Policy{PolicyKind::MaxGain, seed};
    }
    throw std::invalid_argument("unknown policy '" + name + "'");
}

namespace {

// splitmix64; deterministic across platforms, unlike <random> distributions.
struct Rng {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::size_t below(std::size_t bound) { return static_cast<std::size_t>(next() % bound); }
};

// Larger gain first: any escape from infinite cost beats every finite
// improvement; infinite movers rank by lowest landing cost, finite movers by
// largest exact cost drop. Ties resolve to the earlier enumerated deviation.
size_t pick_max_gain(const Profile& profile, const GameInstance& game,
                     const std::vector<Deviation>& candidates) {
    size_t best = 0;
    bool best_from_inf = false;
    Rational best_key;
    for (size_t i = 0; i < candidates.size(); ++i) {
        const Deviation& dev = candidates[i];
        const CostValue before = player_cost(profile, dev.item, game);
        const CostValue after =
            player_cost(apply_deviation(profile, dev, game), dev.item, game);
        const bool from_inf = before.is_infinite;
        const Rational key = from_inf ? -after.value : before.value - after.value;
        if (i == 0 || (from_inf && !best_from_inf) ||
            (from_inf == best_from_inf && key > best_key)) {
            best = i;
            best_from_inf = from_inf;
            best_key = key;
        }
    }
    return best;
}

}  // namespace

DynamicsTrace run_valid_dynamics(const GameInstance& game, const Profile& initial,
                                 const Policy& policy, std::size_t max_steps) {
    DynamicsTrace trace;
    trace.initial = initial;
    trace.initial_potential = potential(initial, game);
    Profile current = initial;
    Rng rng{policy.seed};
    for (std::size_t step = 0; step < max_steps; ++step) {
        std::vector<Deviation> valid;
        for (const Deviation& dev : enumerate_improving_deviations(current, game)) {
            if (dev.valid) {
                valid.push_back(dev);
            }
        }
        if (valid.empty()) {
            trace.terminal = current;
            trace.terminated = true;
            return trace;
        }
        size_t choice = 0;
        switch (policy.kind) {
            case PolicyKind::First:
                choice = 0;
                break;
            case PolicyKind::Random:
                choice = rng.below(valid.size());
                break;
            case PolicyKind::MaxGain:
                choice = pick_max_gain(current, game, valid);
                break;
        }
        current = apply_deviation(current, valid[choice], game);
        trace.steps.push_back(DynamicsStep{valid[choice], current, potential(current, game)});
    }
    trace.terminal = current;
    trace.terminated = false;
    return trace;
}

namespace {

struct CycleDfs {
    const GameInstance& game;
    bool allow_nonvalid;
    std::size_t state_cap;

    // 1 = on the current DFS path, 2 = fully explored.
    std::unordered_map<std::string, int> mark;
    std::size_t states = 0;
    bool capped = false;

    std::vector<Profile> successors(const Profile& profile) {
        std::vector<Profile> out;
        std::unordered_set<std::string> seen;
        for (const Deviation& dev : enumerate_improving_deviations(profile, game)) {
            if (!allow_nonvalid && !dev.valid) {
                continue;
            }
            Profile next =
                canonical_profile(game, apply_deviation(profile, dev, game));
            if (seen.insert(canonical_key(next)).second) {
                out.push_back(std::move(next));
            }
        }
        return out;
    }

    // Returns the cycle as a closed walk if one is reachable.
    std::optional<std::vector<Profile>> run(const Profile& start) {
        struct Frame {
            Profile profile;
            std::string key;
            std::vector<Profile> next;
            std::size_t pos = 0;
        };
        std::vector<Frame> stack;
        const Profile root = canonical_profile(game, start);
        const std::string root_key = canonical_key(root);
        if (mark.count(root_key)) {
            return std::nullopt;
        }
        mark[root_key] = 1;
        ++states;
        stack.push_back(Frame{root, root_key, successors(root), 0});
        while (!stack.empty()) {
            Frame& frame = stack.back();
            if (frame.pos == frame.next.size()) {
                mark[frame.key] = 2;
                stack.pop_back();
                continue;
            }
            Profile next = frame.next[frame.pos++];
            const std::string key = canonical_key(next);
            const auto it = mark.find(key);
            if (it != mark.end()) {
                if (it->second == 1) {
                    std::vector<Profile> cycle;
                    auto entry = std::find_if(stack.begin(), stack.end(),
                                              [&](const Frame& f) { return f.key == key; });
                    for (auto walk = entry; walk != stack.end(); ++walk) {
                        cycle.push_back(walk->profile);
                    }
                    cycle.push_back(next);
                    return cycle;
                }
                continue;
            }
            if (states >= state_cap) {
                capped = true;
                return std::nullopt;
            }
            mark[key] = 1;
            ++states;
            stack.push_back(Frame{next, key, successors(next), 0});
        }
        return std::nullopt;
    }
};

}  // namespace

CycleSearchResult find_deviation_cycle(const GameInstance& game,
                                       const std::vector<Profile>& starts, bool allow_nonvalid,
                                       std::size_t state_cap) {
    CycleDfs dfs{game, allow_nonvalid, state_cap, {}, 0, false};
    CycleSearchResult result;
    for (const Profile& start : starts) {
        if (auto cycle = dfs.run(start)) {
            result.status = CycleSearchStatus::CycleFound;
            result.cycle = std::move(*cycle);
            result.states_explored = dfs.states;
            return result;
        }
        if (dfs.capped) {
            break;
        }
    }
    result.status = dfs.capped ? CycleSearchStatus::Inconclusive : CycleSearchStatus::NoCycle;
    result.states_explored = dfs.states;
    return result;
}

CycleSearchResult find_deviation_cycle(const GameInstance& game, const Profile& start,
                                       bool allow_nonvalid, std::size_t state_cap) {
    return find_deviation_cycle(game, std::vector<Profile>{start}, allow_nonvalid, state_cap);
}

}  // namespace cbp
