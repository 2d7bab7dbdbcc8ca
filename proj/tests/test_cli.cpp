#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cbp/json_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// Exercises the installed binary end to end; the path arrives in CBP_CLI.

namespace fs = std::filesystem;

namespace {

std::string cli() {
    const char* path = std::getenv("CBP_CLI");
    REQUIRE_MESSAGE(path != nullptr, "CBP_CLI must point at the binary");
    return path;
}

fs::path scratch() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "cbp_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& command) {
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

const std::string kUniformFour = R"({
  "m": 3,
  "cost_model": "egalitarian",
  "items": [
    {"id": 1, "size": "1/4", "color": 1},
    {"id": 2, "size": "1/4", "color": 1},
    {"id": 3, "size": "1/4", "color": 2},
    {"id": 4, "size": "1/4", "color": 3}
  ]
})";

}  // namespace

TEST_CASE("generate and verify a worst-case family") {
    const fs::path case_path = scratch() / "bw4.json";
    CHECK(run(cli() + " generate pos-bw-egalitarian --k 4 --out " + case_path.string()) == 0);
    const auto j = cbp::read_json_file(case_path.string());
    CHECK(j.at("provenance") == "pos-bw-egalitarian");
    CHECK(j.at("expected").at("ratio") == "7/4");

    const fs::path log_path = scratch() / "verify.log";
    CHECK(run(cli() + " verify " + case_path.string() + " > " + log_path.string()) == 0);
    const std::string log = slurp(log_path);
    CHECK(log.find("[PASS] witness sigma is a Nash equilibrium") != std::string::npos);
    CHECK(log.find("VERDICT: pass") != std::string::npos);
    CHECK(log.find("[FAIL]") == std::string::npos);
}

TEST_CASE("verify rejects a tampered witness") {
    const fs::path case_path = scratch() / "bw2.json";
    REQUIRE(run(cli() + " generate pos-bw-egalitarian --k 2 --out " + case_path.string()) == 0);
    auto j = cbp::read_json_file(case_path.string());
    const auto game = cbp::instance_from_json(j.at("instance"));
    // Stack one type-(1) singleton onto the other: still capacity-valid, but
    // two whites end up adjacent, so sigma is no longer an equilibrium.
    auto& bins = j.at("witnesses").at("sigma").at("bins");
    std::vector<size_t> small_singletons;
    for (size_t b = 0; b < bins.size(); ++b) {
        if (bins.at(b).size() == 1 &&
            game.size_of(bins.at(b).at(0).get<int>()) < cbp::Rational(1)) {
            small_singletons.push_back(b);
        }
    }
    REQUIRE(small_singletons.size() >= 2);
    bins.at(small_singletons[0]).push_back(bins.at(small_singletons[1]).at(0));
    bins.erase(small_singletons[1]);
    cbp::write_json_file((scratch() / "tampered.json").string(), j);
    CHECK(run(cli() + " verify " + (scratch() / "tampered.json").string() +
              " > /dev/null") == 2);
}

TEST_CASE("solve with the uniform greedy algorithm") {
    const fs::path inst = scratch() / "uniform4.json";
    write(inst, kUniformFour);
    const fs::path out = scratch() / "solved.json";
    CHECK(run(cli() + " solve --alg alg2 " + inst.string() + " --out " + out.string()) == 0);
    const auto j = cbp::read_json_file(out.string());
    CHECK(j.at("open_bins") == 1);
    CHECK(j.at("is_nash") == true);
    CHECK(j.at("choices").size() == 1);
}

TEST_CASE("alg2 rejects non-uniform input with the bad-input exit code") {
    const fs::path inst = scratch() / "nonuniform.json";
    write(inst, R"({"m": 2, "cost_model": "egalitarian", "items": [
        {"id": 1, "size": "1/2", "color": 1}, {"id": 2, "size": "1/4", "color": 2}]})");
    CHECK(run(cli() + " solve --alg alg2 " + inst.string() + " > /dev/null 2>&1") == 4);
}

TEST_CASE("dynamics reports the cycle on the non-convergent game") {
    const fs::path case_path = scratch() / "cycle.json";
    REQUIRE(run(cli() + " generate improvement-cycle --out " + case_path.string()) == 0);

    const fs::path cycle_out = scratch() / "cycle_report.json";
    CHECK(run(cli() + " dynamics --allow-nonvalid " + case_path.string() + " --out " +
              cycle_out.string()) == 0);
    const auto report = cbp::read_json_file(cycle_out.string());
    CHECK(report.at("cycle") == true);
    CHECK(report.at("scanned_all_starts") == true);

    const fs::path dag_out = scratch() / "dag_report.json";
    CHECK(run(cli() + " dynamics --cycle-search " + case_path.string() + " --out " +
              dag_out.string()) == 0);
    CHECK(cbp::read_json_file(dag_out.string()).at("cycle") == false);
}

TEST_CASE("dynamics trace has a strictly increasing potential column") {
    const fs::path case_path = scratch() / "cycle2.json";
    REQUIRE(run(cli() + " generate improvement-cycle --out " + case_path.string()) == 0);
    const fs::path out = scratch() / "trace.json";
    CHECK(run(cli() + " dynamics --policy random --seed 5 " + case_path.string() +
              " --out " + out.string()) == 0);
    const auto trace = cbp::read_json_file(out.string());
    CHECK(trace.at("terminated") == true);
    cbp::BigInt previous(trace.at("initial_potential").get<std::string>());
    for (const auto& step : trace.at("steps")) {
        cbp::BigInt current(step.at("potential").get<std::string>());
        CHECK(current > previous);
        previous = current;
    }
}

TEST_CASE("identical command and seed give byte-identical output") {
    const fs::path a = scratch() / "rand_a.json";
    const fs::path b = scratch() / "rand_b.json";
    const std::string args = " generate random --n 7 --m 3 --size-family grid --grid-d 12"
                             " --seed 99 --out ";
    REQUIRE(run(cli() + args + a.string()) == 0);
    REQUIRE(run(cli() + args + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("ratios emits oracle rows and witness fallbacks") {
    const fs::path inst = scratch() / "two.json";
    write(inst, R"({"m": 2, "cost_model": "egalitarian", "items": [
        {"id": 1, "size": "1/4", "color": 1}, {"id": 2, "size": "1/4", "color": 2}]})");
    const fs::path big_case = scratch() / "poa5.json";
    REQUIRE(run(cli() + " generate poa-bw-odd --k 5 --out " + big_case.string()) == 0);

    const fs::path csv = scratch() / "out.csv";
    CHECK(run(cli() + " ratios " + inst.string() + " " + big_case.string() + " --csv " +
              csv.string()) == 0);
    const std::string rows = slurp(csv);
    CHECK(rows.find("two,2,2,egalitarian,1,1,1,1,1,") != std::string::npos);
    // k=5 is beyond the enumeration cap: witness-level ratio (3k+1)/(k+3) = 2.
    CHECK(rows.find("poa5,20,2,egalitarian,4,8,8,2,2,") != std::string::npos);
    CHECK(rows.find(",witness") != std::string::npos);
}

TEST_CASE("hitting the step cap in valid mode is an error") {
    const fs::path case_path = scratch() / "cycle3.json";
    REQUIRE(run(cli() + " generate improvement-cycle --out " + case_path.string()) == 0);
    CHECK(run(cli() + " dynamics --max-steps 1 " + case_path.string() +
              " > /dev/null 2>&1") == 2);
}

TEST_CASE("random black and white sweep stays within three times the optimum") {
    const fs::path csv = scratch() / "sweep.csv";
    REQUIRE(run(cli() + " ratios --sweep-random 12 --n 6 --m 2 --size-family grid"
                        " --grid-d 6 --seed 17 --csv " +
                csv.string()) == 0);
    std::istringstream rows(slurp(csv));
    std::string line;
    std::getline(rows, line);  // header
    int checked = 0;
    while (std::getline(rows, line)) {
        REQUIRE(line.find(",ok") != std::string::npos);
        // poa_dec is the second-to-last column.
        const auto end = line.rfind(',');
        const auto begin = line.rfind(',', end - 1);
        CHECK(std::stod(line.substr(begin + 1, end - begin - 1)) <= 3.0);
        ++checked;
    }
    CHECK(checked == 12);
}

TEST_CASE("oracle respects the cap override from the environment") {
    const fs::path case_path = scratch() / "odd3.json";
    REQUIRE(run(cli() + " generate poa-bw-odd --k 3 --out " + case_path.string()) == 0);
    CHECK(run("CBP_OPT_CAP=5 " + cli() + " oracle " + case_path.string() +
              " > /dev/null 2>&1") == 3);
    const fs::path out = scratch() / "oracle3.json";
    CHECK(run(cli() + " oracle " + case_path.string() + " --out " + out.string()) == 0);
    CHECK(cbp::read_json_file(out.string()).at("opt") == 3);
}

TEST_CASE("solved profiles re-validate on load") {
    const fs::path inst = scratch() / "uniform4b.json";
    write(inst, kUniformFour);
    const fs::path out = scratch() / "solved2.json";
    REQUIRE(run(cli() + " solve --alg alg1 " + inst.string() + " --out " + out.string()) == 0);
    const auto game = cbp::instance_from_json(cbp::read_json_file(inst.string()));
    const auto profile =
        cbp::profile_from_json(cbp::read_json_file(out.string()).at("profile"), game);
    CHECK(cbp::is_feasible(profile, game));
}
