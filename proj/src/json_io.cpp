#include "cbp/json_io.hpp"

#include <fstream>

namespace cbp {

Json instance_to_json(const GameInstance& game) {
    Json items = Json::array();
    for (const Item& item : game.items()) {
        items.push_back(Json{{"id", item.id}, {"size", item.size.str()}, {"color", item.color}});
    }
    return Json{{"m", game.colors()},
                {"cost_model", cost_model_name(game.cost_model())},
                {"items", std::move(items)}};
}

GameInstance instance_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("cost_model") ||
        !j.contains("items")) {
        throw std::invalid_argument("instance JSON needs m, cost_model and items");
    }
    std::vector<Item> items;
    for (const Json& entry : j.at("items")) {
        items.push_back(Item{entry.at("id").get<int>(),
                             Rational::parse(entry.at("size").get<std::string>()),
                             entry.at("color").get<int>()});
    }
    return GameInstance(std::move(items), j.at("m").get<int>(),
                        cost_model_from_name(j.at("cost_model").get<std::string>()));
}

Json profile_to_json(const Profile& profile) {
    size_t last = profile.bins.size();
    while (last > 0 && profile.bins[last - 1].empty()) {
        --last;
    }
    Json bins = Json::array();
    for (size_t b = 0; b < last; ++b) {
        bins.push_back(profile.bins[b].contents);
    }
    return Json{{"bins", std::move(bins)}};
}

Profile profile_from_json(const Json& j, const GameInstance& game) {
    if (!j.is_object() || !j.contains("bins")) {
        throw std::invalid_argument("profile JSON needs a bins array");
    }
    std::vector<std::vector<ItemId>> bins;
    for (const Json& bin : j.at("bins")) {
        bins.push_back(bin.get<std::vector<ItemId>>());
    }
    return make_profile(game, std::move(bins));
}

Json case_to_json(const GeneratedCase& generated) {
    Json witnesses = Json::object();
    for (const auto& [name, profile] : generated.witnesses) {
        witnesses[name] = profile_to_json(profile);
    }
    Json expected = Json::object();
    for (const auto& [name, value] : generated.expected) {
        expected[name] = value.str();
    }
    Json params = Json::object();
    for (const auto& [name, value] : generated.params) {
        params[name] = value;
    }
    return Json{{"provenance", generated.provenance},
                {"instance", instance_to_json(generated.instance)},
                {"witnesses", std::move(witnesses)},
                {"expected", std::move(expected)},
                {"params", std::move(params)}};
}

GeneratedCase case_from_json(const Json& j) {
    GameInstance game = instance_from_json(j.at("instance"));
    std::map<std::string, Profile> witnesses;
    if (j.contains("witnesses")) {
        for (const auto& [name, profile] : j.at("witnesses").items()) {
            witnesses.emplace(name, profile_from_json(profile, game));
        }
    }
    std::map<std::string, Rational> expected;
    if (j.contains("expected")) {
        for (const auto& [name, value] : j.at("expected").items()) {
            expected.emplace(name, Rational::parse(value.get<std::string>()));
        }
    }
    std::map<std::string, long long> params;
    if (j.contains("params")) {
        for (const auto& [name, value] : j.at("params").items()) {
            params.emplace(name, value.get<long long>());
        }
    }
    return GeneratedCase{std::move(game), std::move(witnesses), std::move(expected),
                         std::move(params), j.value("provenance", std::string())};
}

Json trace_to_json(const DynamicsTrace& trace) {
    Json steps = Json::array();
    for (const DynamicsStep& step : trace.steps) {
        steps.push_back(Json{{"item", step.deviation.item},
                             {"from", step.deviation.from_bin},
                             {"to", step.deviation.to_bin},
                             {"valid", step.deviation.valid},
                             {"open_bins", social_cost(step.after)},
                             {"potential", step.potential.str()}});
    }
    return Json{{"initial", profile_to_json(trace.initial)},
                {"initial_potential", trace.initial_potential.str()},
                {"steps", std::move(steps)},
                {"terminal", profile_to_json(trace.terminal)},
                {"open_bins", social_cost(trace.terminal)},
                {"terminated", trace.terminated}};
}

Json cycle_to_json(const CycleSearchResult& result) {
    Json profiles = Json::array();
    for (const Profile& profile : result.cycle) {
        profiles.push_back(profile_to_json(profile));
    }
    std::string status;
    switch (result.status) {
        case CycleSearchStatus::NoCycle:
            status = "no-cycle";
            break;
        case CycleSearchStatus::CycleFound:
            status = "cycle-found";
            break;
        case CycleSearchStatus::Inconclusive:
            status = "inconclusive";
            break;
    }
    return Json{{"cycle", result.status == CycleSearchStatus::CycleFound},
                {"status", status},
                {"states_explored", result.states_explored},
                {"cycle_profiles", std::move(profiles)}};
}

Json opt_to_json(const OptResult& result) {
    return Json{{"opt", result.opt}, {"witness", profile_to_json(result.witness)}};
}

Json report_to_json(const RatioReport& report) {
    return Json{{"opt", report.opt},
                {"best_ne", report.best_ne},
                {"worst_ne", report.worst_ne},
                {"pos", report.pos.str()},
                {"poa", report.poa.str()},
                {"ne_count", report.ne_count}};
}

Json build_to_json(const EquilibriumBuild& build, const GameInstance& game,
                   const std::string& algorithm) {
    Json choices = Json::array();
    for (const BinChoice& choice : build.choices) {
        choices.push_back(Json{{"subroutine", choice.subroutine}, {"items", choice.items}});
    }
    return Json{{"algorithm", algorithm},
                {"profile", profile_to_json(build.profile)},
                {"open_bins", social_cost(build.profile)},
                {"is_nash", is_nash(build.profile, game)},
                {"choices", std::move(choices)}};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& err) {
        throw std::invalid_argument("bad JSON in " + path + ": " + err.what());
    }
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot write " + path);
    }
    out << j.dump(2) << '\n';
}

}  // namespace cbp
