#include "cbp/equilibria.hpp"

#include "cbp/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace cbp {

ColorCounts color_counts(const std::vector<Item>& items, int color_count) {
    ColorCounts cc;
    cc.counts.assign(static_cast<size_t>(color_count), 0);
    for (const Item& item : items) {
        ++cc.counts[static_cast<size_t>(item.color - 1)];
        ++cc.total;
    }
    for (int c = 0; c < color_count; ++c) {
        if (cc.counts[static_cast<size_t>(c)] > cc.dominant_count) {
            cc.dominant_count = cc.counts[static_cast<size_t>(c)];
            cc.dominant_color = c + 1;
        }
    }
    return cc;
}

bool orderable(const ColorCounts& counts) {
    return counts.dominant_count <= (counts.total + 1) / 2;
}

std::optional<Bin> order_bin(const std::vector<Item>& items, const GameInstance& game) {
    Rational total;
    for (const Item& item : items) {
        total += item.size;
    }
    if (total > Rational(1)) {
        throw std::invalid_argument("order_bin: multiset exceeds bin capacity");
    }
    if (!orderable(color_counts(items, game.colors()))) {
        return std::nullopt;
    }

    // Per-color queues in ascending id order.
    std::map<Color, std::vector<ItemId>> queues;
    for (const Item& item : items) {
        queues[item.color].push_back(item.id);
    }
    for (auto& [color, ids] : queues) {
        std::sort(ids.begin(), ids.end());
    }

    Bin bin;
    Color previous = 0;
    for (size_t placed = 0; placed < items.size(); ++placed) {
        Color pick = 0;
        size_t pick_count = 0;
        for (const auto& [color, ids] : queues) {
            if (color == previous || ids.empty()) {
                continue;
            }
            if (ids.size() > pick_count) {
                pick = color;
                pick_count = ids.size();
            }
        }
        if (pick == 0) {
            throw std::logic_error("order_bin: greedy ran out of colors on an orderable set");
        }
        auto& ids = queues[pick];
        bin.contents.push_back(ids.front());
        ids.erase(ids.begin());
        previous = pick;
    }
    return bin;
}

namespace {

bool size_then_id(const Item& a, const Item& b) {
    if (a.size != b.size) {
        return a.size < b.size;
    }
    return a.id < b.id;
}

std::map<Color, std::vector<Item>> group_by_color(const std::vector<Item>& pool) {
    std::map<Color, std::vector<Item>> groups;
    for (const Item& item : pool) {
        groups[item.color].push_back(item);
    }
    for (auto& [color, items] : groups) {
        std::sort(items.begin(), items.end(), size_then_id);
    }
    return groups;
}

}  // namespace

std::vector<Item> max_cardinality_colorful_packing(const std::vector<Item>& pool,
                                                   const GameInstance& /*game*/) {
    if (pool.empty()) {
        throw std::invalid_argument("max_cardinality_colorful_packing: empty pool");
    }
    const auto groups = group_by_color(pool);
    const Rational one(1);

    std::vector<Item> best;
    for (const auto& [dominant, dominant_items] : groups) {
        Rational base;
        for (size_t take = 1; take <= dominant_items.size(); ++take) {
            base += dominant_items[take - 1].size;
            if (base > one) {
                break;  // larger counts of this color only grow the base
            }
            // Candidates from every other color, capped at `take` per color so
            // the guessed color stays dominant; extend by ascending size.
            std::vector<Item> others;
            for (const auto& [color, items] : groups) {
                if (color == dominant) {
                    continue;
                }
                for (size_t i = 0; i < items.size() && i < take; ++i) {
                    others.push_back(items[i]);
                }
            }
            std::sort(others.begin(), others.end(), size_then_id);
            std::vector<Item> chosen(dominant_items.begin(),
                                     dominant_items.begin() + static_cast<long>(take));
            Rational load = base;
            for (const Item& item : others) {
                if (load + item.size > one) {
                    break;
                }
                load += item.size;
                chosen.push_back(item);
            }
            // Needs at least take-1 separators to order feasibly.
            if (chosen.size() < 2 * take - 1) {
                continue;
            }
            if (chosen.size() > best.size()) {
                best = std::move(chosen);
            }
        }
    }
    return best;
}

namespace {

// Bit row over scaled sizes 0..denom.
struct BitRow {
    std::vector<std::uint64_t> words;

    explicit BitRow(long long denom = 0)
        : words(static_cast<size_t>(denom / 64 + 1), 0) {}

    bool test(long long v) const {
        return (words[static_cast<size_t>(v >> 6)] >> (v & 63)) & 1;
    }
    void set(long long v) { words[static_cast<size_t>(v >> 6)] |= 1ull << (v & 63); }

    // this |= other << shift, truncated to the row width.
    void or_shifted(const BitRow& other, long long shift) {
        const size_t word_shift = static_cast<size_t>(shift >> 6);
        const unsigned bit_shift = static_cast<unsigned>(shift & 63);
        for (size_t i = words.size(); i-- > word_shift;) {
            std::uint64_t chunk = other.words[i - word_shift] << bit_shift;
            if (bit_shift && i > word_shift) {
                chunk |= other.words[i - word_shift - 1] >> (64 - bit_shift);
            }
            words[i] |= chunk;
        }
    }

    // Largest set bit <= limit, or -1.
    long long highest_below(long long limit) const {
        for (long long v = limit; v >= 0; --v) {
            if (test(v)) {
                return v;
            }
        }
        return -1;
    }
};

// Reachable (count, scaled size) pairs over one color's items, kept
// item-by-item so a witness selection can be rebuilt deterministically.
struct ColorTable {
    std::vector<Item> items;  // ascending id
    std::vector<long long> weights;
    std::vector<std::vector<BitRow>> at;  // at[i][j]: rows over v, first i items
    std::vector<BitRow> reach;            // at[n]

    std::vector<Item> reconstruct(int count, long long value) const {
        std::vector<Item> out;
        int j = count;
        long long v = value;
        for (size_t i = items.size(); i > 0; --i) {
            if (at[i - 1][static_cast<size_t>(j)].test(v)) {
                continue;  // prefer skipping the highest-id item
            }
            out.push_back(items[i - 1]);
            --j;
            v -= weights[i - 1];
        }
        std::reverse(out.begin(), out.end());
        return out;
    }
};

ColorTable build_color_table(const std::vector<Item>& items, long long denom) {
    ColorTable table;
    table.items = items;
    std::sort(table.items.begin(), table.items.end(),
              [](const Item& a, const Item& b) { return a.id < b.id; });
    const size_t n = table.items.size();
    for (const Item& item : table.items) {
        const Rational& s = item.size;
        if (denom % s.den().convert_to<long long>() != 0) {
            throw std::invalid_argument("colorful_subset_sum: size is not a multiple of 1/D");
        }
        table.weights.push_back(s.num().convert_to<long long>() *
                                (denom / s.den().convert_to<long long>()));
    }
    table.at.assign(n + 1, std::vector<BitRow>(n + 1, BitRow(denom)));
    table.at[0][0].set(0);
    for (size_t i = 1; i <= n; ++i) {
        const long long w = table.weights[i - 1];
        for (size_t j = 0; j <= i; ++j) {
            table.at[i][j] = table.at[i - 1][j];
            if (j > 0) {
                table.at[i][j].or_shifted(table.at[i - 1][j - 1], w);
            }
        }
    }
    table.reach = table.at[n];
    return table;
}

// Convolution of the non-dominant colors: acc[t] holds the scaled sizes
// reachable with t items, every color contributing at most `cap` of them.
std::vector<BitRow> convolve_others(const std::vector<Color>& colors, Color dominant, int cap,
                                    const std::map<Color, ColorTable>& tables,
                                    long long denom) {
    std::vector<BitRow> acc(1, BitRow(denom));
    acc[0].set(0);
    for (Color other : colors) {
        if (other == dominant) {
            continue;
        }
        const ColorTable& table = tables.at(other);
        const int color_cap = std::min<int>(cap, static_cast<int>(table.items.size()));
        std::vector<BitRow> next(acc.size() + static_cast<size_t>(color_cap), BitRow(denom));
        for (size_t t = 0; t < acc.size(); ++t) {
            for (int j = 0; j <= color_cap; ++j) {
                const BitRow& reach = table.reach[static_cast<size_t>(j)];
                for (long long u = 0; u <= denom; ++u) {
                    if (reach.test(u)) {
                        next[t + static_cast<size_t>(j)].or_shifted(acc[t], u);
                    }
                }
            }
        }
        acc = std::move(next);
    }
    return acc;
}

}  // namespace

std::vector<Item> colorful_subset_sum(const std::vector<Item>& pool, const GameInstance& /*game*/,
                                      const BigInt& denominator) {
    if (pool.empty()) {
        throw std::invalid_argument("colorful_subset_sum: empty pool");
    }
    if (denominator > BigInt(8192)) {
        throw CapExceeded("colorful_subset_sum: scaled denominator too large");
    }
    const long long denom = denominator.convert_to<long long>();
    const auto groups = group_by_color(pool);

    std::vector<Color> colors;
    std::map<Color, ColorTable> tables;
    for (const auto& [color, items] : groups) {
        colors.push_back(color);
        tables.emplace(color, build_color_table(items, denom));
    }

    struct Best {
        long long total = -1;
        Color dominant = 0;
        int dominant_count = 0;
        long long dominant_value = 0;
        int other_count = 0;
        long long other_value = 0;
    } best;

    for (Color dominant : colors) {
        const ColorTable& dom = tables.at(dominant);
        for (int take = 1; take <= static_cast<int>(dom.items.size()); ++take) {
            const auto acc = convolve_others(colors, dominant, take, tables, denom);
            // Union of all rows with enough separators (t >= take - 1).
            BitRow pool_row(denom);
            std::vector<int> owner(static_cast<size_t>(denom) + 1, -1);
            for (size_t t = static_cast<size_t>(std::max(0, take - 1)); t < acc.size(); ++t) {
                for (long long v = 0; v <= denom; ++v) {
                    if (acc[t].test(v) && !pool_row.test(v)) {
                        pool_row.set(v);
                        owner[static_cast<size_t>(v)] = static_cast<int>(t);
                    }
                }
            }
            for (long long dv = 0; dv <= denom; ++dv) {
                if (!dom.reach[static_cast<size_t>(take)].test(dv)) {
                    continue;
                }
                const long long ov = pool_row.highest_below(denom - dv);
                if (ov >= 0 && dv + ov > best.total) {
                    best = Best{dv + ov, dominant, take, dv, owner[static_cast<size_t>(ov)],
                                ov};
                }
            }
        }
    }

    // Rebuild the winning selection: walk the convolution back one color at a
    // time, preferring the smallest per-color count, then the smallest value.
    std::vector<Item> chosen =
        tables.at(best.dominant).reconstruct(best.dominant_count, best.dominant_value);
    std::vector<Color> others;
    std::vector<std::vector<BitRow>> stages;
    {
        std::vector<BitRow> acc(1, BitRow(denom));
        acc[0].set(0);
        stages.push_back(acc);
        for (Color other : colors) {
            if (other == best.dominant) {
                continue;
            }
            others.push_back(other);
            const ColorTable& table = tables.at(other);
            const int cap = std::min<int>(best.dominant_count,
                                          static_cast<int>(table.items.size()));
            std::vector<BitRow> next(acc.size() + static_cast<size_t>(cap), BitRow(denom));
            for (size_t t = 0; t < acc.size(); ++t) {
                for (int j = 0; j <= cap; ++j) {
                    for (long long u = 0; u <= denom; ++u) {
                        if (table.reach[static_cast<size_t>(j)].test(u)) {
                            next[t + static_cast<size_t>(j)].or_shifted(acc[t], u);
                        }
                    }
                }
            }
            acc = next;
            stages.push_back(std::move(next));
        }
    }
    int t = best.other_count;
    long long v = best.other_value;
    for (size_t idx = others.size(); idx > 0; --idx) {
        const Color color = others[idx - 1];
        const ColorTable& table = tables.at(color);
        const auto& prev = stages[idx - 1];
        const int cap = std::min<int>(best.dominant_count,
                                      static_cast<int>(table.items.size()));
        bool found = false;
        for (int j = 0; j <= std::min(cap, t) && !found; ++j) {
            for (long long u = 0; u <= v && !found; ++u) {
                if (table.reach[static_cast<size_t>(j)].test(u) &&
                    static_cast<size_t>(t - j) < prev.size() &&
                    prev[static_cast<size_t>(t - j)].test(v - u)) {
                    for (const Item& item : table.reconstruct(j, u)) {
                        chosen.push_back(item);
                    }
                    t -= j;
                    v -= u;
                    found = true;
                }
            }
        }
        if (!found) {
            throw std::logic_error("colorful_subset_sum: reconstruction failed");
        }
    }
    std::sort(chosen.begin(), chosen.end(),
              [](const Item& a, const Item& b) { return a.id < b.id; });
    return chosen;
}

EquilibriumBuild greedy_packing_equilibrium(const GameInstance& game) {
    std::vector<Item> pool = game.items();
    const bool egalitarian = game.cost_model() == CostModel::Egalitarian;
    const BigInt denom = game.common_denominator();

    EquilibriumBuild build;
    std::vector<std::vector<ItemId>> bins;
    while (!pool.empty()) {
        std::vector<Item> picked = egalitarian
                                       ? max_cardinality_colorful_packing(pool, game)
                                       : colorful_subset_sum(pool, game, denom);
        auto bin = order_bin(picked, game);
        if (!bin) {
            throw std::logic_error("subproblem solver returned an unorderable set");
        }
        BinChoice choice;
        choice.subroutine = egalitarian ? "max-cardinality" : "subset-sum";
        choice.items = bin->contents;
        build.choices.push_back(choice);
        bins.push_back(bin->contents);
        std::erase_if(pool, [&](const Item& item) {
            return std::find(bin->contents.begin(), bin->contents.end(), item.id) !=
                   bin->contents.end();
        });
    }
    build.profile = make_profile(game, std::move(bins));
    return build;
}

EquilibriumBuild uniform_greedy_equilibrium(const GameInstance& game) {
    const auto& meta = game.uniform();
    if (!meta) {
        throw std::invalid_argument(
            "uniform_greedy_equilibrium requires uniform positive sizes with kappa > 1");
    }
    const long long kappa = meta->kappa;

    std::map<Color, std::vector<ItemId>> remaining;
    for (const Item& item : game.items()) {
        remaining[item.color].push_back(item.id);
    }
    for (auto& [color, ids] : remaining) {
        std::sort(ids.begin(), ids.end());
    }
    size_t left = static_cast<size_t>(game.n());

    EquilibriumBuild build;
    std::vector<std::vector<ItemId>> bins;
    std::vector<ItemId> current;
    Color last = 0;
    while (left > 0) {
        Color pick = 0;
        size_t pick_count = 0;
        if (static_cast<long long>(current.size()) < kappa) {
            for (const auto& [color, ids] : remaining) {
                if (color == last || ids.empty()) {
                    continue;
                }
                if (ids.size() > pick_count) {
                    pick = color;
                    pick_count = ids.size();
                }
            }
        }
        if (pick == 0) {
            bins.push_back(current);
            current.clear();
            last = 0;
            continue;
        }
        auto& ids = remaining[pick];
        current.push_back(ids.front());
        ids.erase(ids.begin());
        last = pick;
        --left;
    }
    if (!current.empty()) {
        bins.push_back(current);
    }
    for (const auto& bin : bins) {
        build.choices.push_back(BinChoice{"uniform-greedy", bin});
    }
    build.profile = make_profile(game, std::move(bins));
    return build;
}

}  // namespace cbp
