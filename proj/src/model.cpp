#include "cbp/model.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cbp {

std::string cost_model_name(CostModel model) {
    return model == CostModel::Egalitarian ? "egalitarian" : "proportional";
}

CostModel cost_model_from_name(const std::string& name) {
    if (name == "egalitarian") {
        return CostModel::Egalitarian;
    }
    if (name == "proportional") {
        return CostModel::Proportional;
    }
    throw std::invalid_argument("unknown cost model '" + name + "'");
}

GameInstance::GameInstance(std::vector<Item> items, int color_count, CostModel cost_model)
    : items_(std::move(items)), color_count_(color_count), cost_model_(cost_model), size_lcm_(1) {
    if (items_.empty()) {
        throw std::invalid_argument("instance needs at least one item");
    }
    if (color_count_ < 2) {
        throw std::invalid_argument("instance needs m >= 2 colors");
    }
    std::sort(items_.begin(), items_.end(),
              [](const Item& a, const Item& b) { return a.id < b.id; });
    const Rational one(1);
    for (int i = 0; i < n(); ++i) {
        const Item& it = items_[static_cast<size_t>(i)];
        if (it.id != i + 1) {
            throw std::invalid_argument("item ids must be exactly 1..n");
        }
        if (it.color < 1 || it.color > color_count_) {
            throw std::invalid_argument("item color out of range 1..m");
        }
        if (it.size.sign() < 0 || it.size > one) {
            throw std::invalid_argument("item size must lie in [0, 1]");
        }
        size_lcm_ = lcm(size_lcm_, it.size.den());
    }

    bool all_equal = true;
    for (const Item& it : items_) {
        all_equal = all_equal && it.size == items_.front().size;
    }
    if (all_equal && items_.front().size.sign() > 0) {
        const Rational& s = items_.front().size;
        BigInt kappa = s.den() / s.num();  // floor(1/s) since 0 < s <= 1
        if (kappa > 1) {
            UniformMeta meta;
            meta.kappa = kappa.convert_to<long long>();
            meta.odd = (meta.kappa % 2) != 0;
            meta.size = s;
            uniform_ = meta;
        }
    }
}

const Item& GameInstance::item(ItemId id) const {
    if (id < 1 || id > n()) {
        throw std::invalid_argument("unknown item id " + std::to_string(id));
    }
    return items_[static_cast<size_t>(id - 1)];
}

Profile make_profile(const GameInstance& game, std::vector<std::vector<ItemId>> bins) {
    if (static_cast<int>(bins.size()) > game.bin_count()) {
        throw std::invalid_argument("profile has more bins than players");
    }
    std::vector<bool> seen(static_cast<size_t>(game.n()) + 1, false);
    const Rational one(1);
    for (const auto& contents : bins) {
        Rational load;
        for (ItemId id : contents) {
            if (id < 1 || id > game.n()) {
                throw std::invalid_argument("profile references unknown item id " +
                                            std::to_string(id));
            }
            if (seen[static_cast<size_t>(id)]) {
                throw std::invalid_argument("item " + std::to_string(id) +
                                            " appears in two bins");
            }
            seen[static_cast<size_t>(id)] = true;
            load += game.size_of(id);
        }
        if (load > one) {
            throw std::invalid_argument("bin load exceeds unit capacity");
        }
    }
    for (ItemId id = 1; id <= game.n(); ++id) {
        if (!seen[static_cast<size_t>(id)]) {
            throw std::invalid_argument("item " + std::to_string(id) + " is unpacked");
        }
    }
    Profile profile;
    profile.bins.reserve(static_cast<size_t>(game.bin_count()));
    for (auto& contents : bins) {
        profile.bins.push_back(Bin{std::move(contents)});
    }
    profile.bins.resize(static_cast<size_t>(game.bin_count()));
    return profile;
}

Rational bin_load(const Bin& bin, const GameInstance& game) {
    Rational load;
    for (ItemId id : bin.contents) {
        load += game.size_of(id);
    }
    return load;
}

std::optional<Color> top_color(const Bin& bin, const GameInstance& game) {
    if (bin.empty()) {
        return std::nullopt;
    }
    return game.color_of(bin.contents.back());
}

bool bin_is_feasible(const Bin& bin, const GameInstance& game) {
    for (size_t i = 1; i < bin.contents.size(); ++i) {
        if (game.color_of(bin.contents[i]) == game.color_of(bin.contents[i - 1])) {
            return false;
        }
    }
    return true;
}

int bin_of(const Profile& profile, ItemId id) {
    for (int b = 0; b < profile.bin_count(); ++b) {
        for (ItemId member : profile.bins[static_cast<size_t>(b)].contents) {
            if (member == id) {
                return b;
            }
        }
    }
    return -1;
}

bool is_misplaced(const Profile& profile, ItemId id, const GameInstance& game) {
    const int b = bin_of(profile, id);
    if (b < 0) {
        throw std::invalid_argument("item " + std::to_string(id) + " not in profile");
    }
    const auto& contents = profile.bins[static_cast<size_t>(b)].contents;
    const Color c = game.color_of(id);
    for (size_t pos = 0; pos < contents.size(); ++pos) {
        if (contents[pos] != id) {
            continue;
        }
        if (pos > 0 && game.color_of(contents[pos - 1]) == c) {
            return true;
        }
        if (pos + 1 < contents.size() && game.color_of(contents[pos + 1]) == c) {
            return true;
        }
        return false;
    }
    return false;
}

bool is_feasible(const Profile& profile, const GameInstance& game) {
    for (const Bin& bin : profile.bins) {
        if (!bin_is_feasible(bin, game)) {
            return false;
        }
    }
    return true;
}

int social_cost(const Profile& profile) {
    int open = 0;
    for (const Bin& bin : profile.bins) {
        if (!bin.empty()) {
            ++open;
        }
    }
    return open;
}

CostValue player_cost(const Profile& profile, ItemId id, const GameInstance& game) {
    if (is_misplaced(profile, id, game)) {
        return CostValue::infinite();
    }
    const Bin& bin = profile.bins[static_cast<size_t>(bin_of(profile, id))];
    if (game.cost_model() == CostModel::Egalitarian) {
        return CostValue::finite(Rational(BigInt(1), BigInt(bin.count())));
    }
    const Rational load = bin_load(bin, game);
    if (load.is_zero()) {
        return CostValue::finite(Rational(BigInt(1), BigInt(bin.count())));
    }
    return CostValue::finite(game.size_of(id) / load);
}

std::vector<std::vector<ItemId>> canonical_bins(const Profile& profile) {
    std::vector<std::vector<ItemId>> bins;
    for (const Bin& bin : profile.bins) {
        if (!bin.empty()) {
            bins.push_back(bin.contents);
        }
    }
    std::sort(bins.begin(), bins.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        return a < b;
    });
    return bins;
}

std::string canonical_key(const Profile& profile) {
    std::ostringstream out;
    for (const auto& bin : canonical_bins(profile)) {
        for (size_t i = 0; i < bin.size(); ++i) {
            if (i) {
                out << ',';
            }
            out << bin[i];
        }
        out << '|';
    }
    return out.str();
}

Profile canonical_profile(const GameInstance& game, const Profile& profile) {
    return make_profile(game, canonical_bins(profile));
}

}  // namespace cbp
