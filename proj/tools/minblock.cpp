// Command-line front end: verifies strong blocking sets, checks minimal
// codes, classifies orbits, runs searches, and emits quadric point sets.
// Every subcommand prints one JSON report to stdout.
//
// Exit codes: 0 the answer is affirmative, 1 it is negative, 2 usage or
// input error, 3 a computation budget was exceeded.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "minblock/minblock.hpp"

namespace {

using nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";
constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::optional<std::uint64_t> env_budget() {
    const char* raw = std::getenv("MINBLOCK_BUDGET");
    if (!raw || !*raw) return std::nullopt;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(raw, &used);
        if (used != std::string(raw).size()) return std::nullopt;
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string coord_string(const minblock::Vec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(static_cast<unsigned>(v[i]));
    }
    return s;
}

ordered_json points_json(const minblock::Geometry& g, std::uint64_t mask) {
    ordered_json arr = ordered_json::array();
    for (std::uint64_t m = mask; m; m &= m - 1) {
        const auto p = static_cast<std::uint32_t>(std::countr_zero(m));
        arr.push_back(coord_string(g.point(p).coords));
    }
    return arr;
}

ordered_json report_shell(const std::string& command, ordered_json inputs) {
    ordered_json r;
    r["command"] = command;
    r["version"] = kVersion;
    r["inputs"] = std::move(inputs);
    return r;
}

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(ordered_json& report, const Stopwatch& watch) {
    report["elapsed_seconds"] = watch.seconds();
    std::cout << report.dump(2) << '\n';
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw minblock::ParseError("cannot open '" + path + "'", 0);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

int run_verify(const std::string& path, bool total) {
    Stopwatch watch;
    auto in = open_input(path);
    const auto blocks = minblock::read_pointset_blocks(in);

    ordered_json report =
        report_shell("verify", {{"file", path}, {"sets", blocks.size()}, {"total", total}});
    ordered_json sets = ordered_json::array();
    bool all_strong = true;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const minblock::Geometry g(blocks[i].k, blocks[i].q);
        const minblock::PointSet s = minblock::bind_pointset(blocks[i], g);
        const auto check = minblock::is_strong_blocking_set(s, total);
        all_strong = all_strong && check.is_strong;

        ordered_json entry;
        entry["index"] = i + 1;
        entry["k"] = g.k();
        entry["q"] = g.q();
        entry["size"] = s.size();
        entry["lower_bound"] = minblock::lower_bound(g.k(), g.q());
        entry["strong"] = check.is_strong;
        entry["intersection_profile"] = check.intersection_profile;
        ordered_json failures = ordered_json::array();
        for (const auto& f : check.failing_hyperplanes) {
            failures.push_back({{"hyperplane", f.hyperplane},
                                {"coefficients", coord_string(g.hyperplane_coeffs(f.hyperplane))},
                                {"attained_rank", f.attained_rank},
                                {"required_rank", g.k() - 1}});
        }
        entry["failing_hyperplanes"] = std::move(failures);
        sets.push_back(std::move(entry));
    }
    report["payload"] = {{"all_strong", all_strong}, {"sets", std::move(sets)}};
    emit(report, watch);
    return all_strong ? kExitYes : kExitNo;
}

int run_code_check(const std::string& path, bool all_witnesses, std::uint64_t budget) {
    Stopwatch watch;
    auto in = open_input(path);
    const minblock::RawCode raw = minblock::read_code_file(in);
    const minblock::LinearCode code(raw.rows, raw.q);
    const auto minimality = minblock::is_minimal_code(code, all_witnesses, budget);

    ordered_json report = report_shell(
        "code-check",
        {{"file", path}, {"all_witnesses", all_witnesses}, {"codeword_budget", budget}});
    ordered_json payload;
    payload["n"] = code.n();
    payload["k"] = code.k();
    payload["q"] = code.q();
    payload["codewords"] = code.codeword_count();
    payload["minimal"] = minimality.minimal;
    ordered_json witnesses = ordered_json::array();
    for (const auto& [nonminimal, contained] : minimality.witnesses) {
        witnesses.push_back({{"codeword", coord_string(nonminimal.vector)},
                             {"weight", nonminimal.weight},
                             {"contained_witness", coord_string(contained.vector)},
                             {"witness_weight", contained.weight}});
    }
    payload["witnesses"] = std::move(witnesses);

    const minblock::Geometry g(code.k(), code.q());
    try {
        const auto derived = minblock::pointset_from_code(code, g);
        const bool strong = minblock::is_strong_blocking_set(derived.set).is_strong;
        payload["pointset"] = {{"degenerate", false},
                               {"distinct_points", derived.distinct_points},
                               {"collapsed_columns", derived.collapsed_columns},
                               {"strong", strong},
                               {"matches_minimality", strong == minimality.minimal},
                               {"points", points_json(g, derived.set.mask)}};
    } catch (const minblock::DegenerateCode&) {
        payload["pointset"] = {{"degenerate", true}};
    }
    report["payload"] = std::move(payload);
    emit(report, watch);
    return minimality.minimal ? kExitYes : kExitNo;
}

int run_classify(unsigned k, unsigned q, unsigned size, std::uint64_t budget, bool golden) {
    Stopwatch watch;
    if (golden && (k != 4 || q != 2 || size != 9))
        throw CLI::ValidationError("--golden applies to -k 4 -q 2 --size 9 only");
    const minblock::Geometry g(k, q);
    const minblock::Group group(g);
    const auto orbits = minblock::classify_subsets(g, size, group, budget);

    ordered_json report = report_shell("classify", {{"k", k},
                                                    {"q", q},
                                                    {"size", size},
                                                    {"subset_budget", budget},
                                                    {"golden", golden}});
    ordered_json payload;
    payload["points"] = g.num_points();
    payload["group_order"] = group.order();
    payload["subsets"] = minblock::binomial(static_cast<unsigned>(g.num_points()), size);
    payload["orbit_count"] = orbits.size();
    ordered_json list = ordered_json::array();
    std::uint64_t covered = 0;
    for (const auto& o : orbits) {
        covered += o.orbit_size;
        list.push_back({{"representative", points_json(g, o.representative)},
                        {"orbit_size", o.orbit_size},
                        {"stabilizer_order", o.stabilizer_order},
                        {"signature", o.signature},
                        {"strong", o.is_strong}});
    }
    payload["orbits"] = std::move(list);
    payload["orbit_sizes_cover_all_subsets"] =
        covered == minblock::binomial(static_cast<unsigned>(g.num_points()), size);

    bool matched = true;
    if (golden) {
        const std::vector<std::uint64_t> expected{2520, 1680, 420, 280, 105};
        std::vector<std::uint64_t> got;
        for (const auto& o : orbits) got.push_back(o.orbit_size);
        std::sort(got.begin(), got.end(), std::greater<>());
        matched = got == expected;
        payload["golden_expected"] = expected;
        payload["golden_matched"] = matched;
    }
    report["payload"] = std::move(payload);
    emit(report, watch);
    return matched ? kExitYes : kExitNo;
}

int run_search(unsigned k, unsigned q, unsigned size, const std::string& mode_name,
               std::uint64_t budget, std::uint64_t seed, unsigned workers,
               const std::string& emit_path) {
    Stopwatch watch;
    minblock::SearchConfig cfg;
    if (mode_name == "exhaustive")
        cfg.mode = minblock::SearchMode::Exhaustive;
    else if (mode_name == "pruned")
        cfg.mode = minblock::SearchMode::PrunedExhaustive;
    else if (mode_name == "line-union")
        cfg.mode = minblock::SearchMode::RandomLineUnion;
    else
        throw CLI::ValidationError("--mode must be exhaustive, pruned, or line-union");
    cfg.budget = budget;
    cfg.seed = seed;
    cfg.workers = workers;

    const minblock::Geometry g(k, q);
    const auto result = minblock::run_search(g, size, cfg);

    ordered_json report = report_shell("search", {{"k", k},
                                                  {"q", q},
                                                  {"size", size},
                                                  {"mode", mode_name},
                                                  {"budget", budget},
                                                  {"seed", seed},
                                                  {"workers", workers}});
    ordered_json payload;
    payload["nodes_explored"] = result.nodes_explored;
    payload["exhausted"] = result.exhausted;
    payload["found_count"] = result.found.size();
    constexpr std::size_t kListCap = 100;
    ordered_json list = ordered_json::array();
    for (std::size_t i = 0; i < result.found.size() && i < kListCap; ++i)
        list.push_back(points_json(g, result.found[i]));
    payload["found"] = std::move(list);
    payload["found_truncated"] = result.found.size() > kListCap;
    if (!emit_path.empty()) {
        auto out = open_output(emit_path);
        minblock::write_pointsets(out, g, result.found);
        payload["emitted"] = emit_path;
    }
    report["payload"] = std::move(payload);
    emit(report, watch);
    if (!result.found.empty()) return kExitYes;
    return result.exhausted ? kExitNo : kExitBudget;
}

int run_quadric(unsigned k, const std::string& out_path) {
    Stopwatch watch;
    if (k != 4 && k != 5)
        throw CLI::ValidationError("--k must be 4 (hyperbolic) or 5 (parabolic)");
    const minblock::Geometry g(k, 2);
    const minblock::PointSet quad =
        k == 4 ? minblock::hyperbolic_quadric(g) : minblock::parabolic_quadric(g);
    const auto check = minblock::is_strong_blocking_set(quad);

    ordered_json report = report_shell("quadric", {{"k", k}, {"q", 2}});
    ordered_json payload;
    payload["kind"] = k == 4 ? "hyperbolic" : "parabolic";
    payload["size"] = quad.size();
    payload["lower_bound"] = minblock::lower_bound(k, 2);
    payload["strong"] = check.is_strong;
    payload["intersection_profile"] = check.intersection_profile;
    payload["points"] = points_json(g, quad.mask);
    if (!out_path.empty()) {
        auto out = open_output(out_path);
        minblock::write_pointset(out, g, quad.mask,
                                 k == 4 ? "hyperbolic quadric" : "parabolic quadric");
        payload["emitted"] = out_path;
    }
    report["payload"] = std::move(payload);
    emit(report, watch);
    return check.is_strong ? kExitYes : kExitNo;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"strong blocking sets and minimal linear codes in PG(k-1,q)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    const std::uint64_t default_budget = env_budget().value_or(0);

    auto* verify = app.add_subcommand("verify", "check point sets from a file");
    std::string verify_file;
    bool verify_total = false;
    verify->add_option("file", verify_file, "point-set file")->required();
    verify->add_flag("--total", verify_total, "report every failing hyperplane");

    auto* code_check = app.add_subcommand("code-check", "check a generator matrix for minimality");
    std::string code_file;
    bool code_all_witnesses = false;
    std::uint64_t code_budget =
        default_budget ? default_budget : minblock::defaults::codeword_budget;
    code_check->add_option("file", code_file, "generator-matrix file")->required();
    code_check->add_flag("--all-witnesses", code_all_witnesses,
                         "report one witness per non-minimal codeword instead of stopping at "
                         "the first");
    code_check->add_option("--budget", code_budget, "codeword enumeration cap");

    auto* classify = app.add_subcommand("classify", "orbit classification of fixed-size subsets");
    unsigned cl_k = 0, cl_q = 0, cl_size = 0;
    std::uint64_t cl_budget = default_budget ? default_budget : minblock::defaults::classify_budget;
    bool cl_golden = false;
    classify->add_option("-k,--k", cl_k, "ambient dimension")->required();
    classify->add_option("-q,--q", cl_q, "field order")->required();
    classify->add_option("-s,--size", cl_size, "subset size")->required();
    classify->add_option("--budget", cl_budget, "subset enumeration cap");
    classify->add_flag("--golden", cl_golden, "compare against the known PG(3,2) 9-point orbits");

    auto* search = app.add_subcommand("search", "look for strong blocking sets of a given size");
    unsigned se_k = 0, se_q = 0, se_size = 0, se_workers = 1;
    std::string se_mode = "exhaustive", se_emit;
    std::uint64_t se_budget = default_budget, se_seed = 0;
    search->add_option("-k,--k", se_k, "ambient dimension")->required();
    search->add_option("-q,--q", se_q, "field order")->required();
    search->add_option("-s,--size", se_size, "target point count")->required();
    search->add_option("--mode", se_mode, "exhaustive | pruned | line-union");
    search->add_option("--budget", se_budget, "subsets / nodes / trials, by mode");
    search->add_option("--seed", se_seed, "random seed (line-union mode)");
    search->add_option("--workers", se_workers, "worker threads");
    search->add_option("--emit", se_emit, "write found sets to this file");

    auto* quadric = app.add_subcommand("quadric", "emit a quadric point set");
    unsigned qu_k = 4;
    std::string qu_out;
    quadric->add_option("-k,--k", qu_k, "4 for hyperbolic, 5 for parabolic")->required();
    quadric->add_option("-o,--out", qu_out, "write the point set to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*verify) return run_verify(verify_file, verify_total);
        if (*code_check) return run_code_check(code_file, code_all_witnesses, code_budget);
        if (*classify) return run_classify(cl_k, cl_q, cl_size, cl_budget, cl_golden);
        if (*search)
            return run_search(se_k, se_q, se_size, se_mode, se_budget, se_seed, se_workers,
                              se_emit);
        if (*quadric) return run_quadric(qu_k, qu_out);
    } catch (const minblock::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
