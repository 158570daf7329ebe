// structshift command-line interface.
//
//   structshift compare --input table.csv --baseline I [--against V] ...
//   structshift critical-value --alpha 0.05 --k 5 --cv-policy embedded
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "structshift/error.hpp"
#include "structshift/ingest.hpp"
#include "structshift/number_format.hpp"
#include "structshift/report.hpp"

namespace ss = structshift;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ss::DataError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::optional<ss::CriticalValueTable> external_table() {
    const char* path = std::getenv("STRUCTSHIFT_CV_TABLE");
    if (!path || !*path) return std::nullopt;
    return ss::CriticalValueTable::from_file(path);
}

const std::map<std::string, ss::CvPolicy> kPolicies{
    {"embedded", ss::CvPolicy::embedded_only},
    {"embedded-then-mc", ss::CvPolicy::embedded_then_mc},
    {"mc", ss::CvPolicy::mc_only},
};

struct McFlags {
    std::uint64_t replicates = 1'000'000;
    std::uint64_t seed = 0;
    unsigned threads = 0;

    ss::MonteCarloConfig config() const { return {replicates, seed, threads}; }
};

void add_mc_flags(CLI::App* cmd, McFlags& mc) {
    cmd->add_option("--mc-replicates", mc.replicates, "Monte Carlo replicates")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", mc.seed, "Monte Carlo seed")->capture_default_str();
    cmd->add_option("--threads", mc.threads, "Monte Carlo worker threads (0 = all cores)")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure similarity and distinctive-change analysis for frequency tables"};
    app.set_version_flag("--version", std::string(ss::kToolVersion));
    app.require_subcommand(1);

    // compare
    auto* compare = app.add_subcommand("compare", "Compare a baseline population with one or all others");
    std::string input, baseline, plot_path;
    std::optional<std::string> against;
    std::string format = "csv", mode = "counts", out = "json", policy_name = "embedded";
    double alpha = 0.05;
    McFlags compare_mc;
    compare->add_option("--input", input, "Table file")->required()->check(CLI::ExistingFile);
    compare->add_option("--format", format, "Input format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    compare->add_option("--mode", mode, "Interpret values as counts or shares")
        ->check(CLI::IsMember({"counts", "shares"}))
        ->capture_default_str();
    compare->add_option("--baseline", baseline, "Reference population id")->required();
    compare->add_option("--against", against, "Single population to compare (default: all others)");
    compare->add_option("--alpha", alpha, "Significance level")->capture_default_str();
    compare->add_option("--cv-policy", policy_name, "Critical value source")
        ->check(CLI::IsMember({"embedded", "embedded-then-mc", "mc"}))
        ->capture_default_str();
    add_mc_flags(compare, compare_mc);
    compare->add_option("--out", out, "Report format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    compare->add_option("--plot-data", plot_path, "Also write plot data (JSON) to this path");

    // critical-value
    auto* cv = app.add_subcommand("critical-value", "Print z(alpha, k) with provenance");
    double cv_alpha = 0.05;
    int cv_k = 0;
    std::string cv_policy_name = "embedded";
    McFlags cv_mc;
    cv->add_option("--alpha", cv_alpha, "Significance level")->capture_default_str();
    cv->add_option("--k", cv_k, "Number of categories")->required();
    cv->add_option("--cv-policy", cv_policy_name, "Critical value source")
        ->check(CLI::IsMember({"embedded", "embedded-then-mc", "mc"}))
        ->capture_default_str();
    add_mc_flags(cv, cv_mc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        const auto table_override = external_table();
        const auto* external = table_override ? &*table_override : nullptr;

        if (*cv) {
            const auto src = ss::critical_value(cv_alpha, cv_k, kPolicies.at(cv_policy_name), cv_mc.config(),
                                                external);
            std::cout << ss::shortest(src.value) << "\n";
            std::cout << "kind: " << ss::to_string(src.kind) << "\n";
            std::cout << "alpha: " << ss::shortest(src.alpha) << "\n";
            std::cout << "k: " << src.k << "\n";
            std::cout << "origin: " << src.origin << "\n";
            if (src.mc) {
                std::cout << "replicates: " << src.mc->replicates << "\n";
                std::cout << "seed: " << src.mc->seed << "\n";
                std::cout << "null_model: " << src.mc->null_model << "\n";
            }
            return 0;
        }

        const auto table = ss::parse_table(read_file(input),
                                           format == "json" ? ss::InputFormat::json : ss::InputFormat::csv_wide,
                                           mode == "shares" ? ss::ValueMode::shares : ss::ValueMode::counts);
        ss::CompareOptions options;
        options.alpha = alpha;
        options.policy = kPolicies.at(policy_name);
        options.mc = compare_mc.config();
        options.external_table = external;

        const auto report_format = out == "json"  ? ss::ReportFormat::json
                                   : out == "csv" ? ss::ReportFormat::csv
                                                  : ss::ReportFormat::text;
        std::string rendered, plot;
        if (against) {
            const auto report = ss::compare_pair(table, baseline, *against, options);
            rendered = ss::render_report(report, report_format);
            if (!plot_path.empty()) plot = ss::emit_plot_data(report);
        } else {
            const auto report = ss::compare_series(table, baseline, options);
            rendered = ss::render_report(report, report_format);
            if (!plot_path.empty()) plot = ss::emit_plot_data(report);
        }
        std::cout << rendered;
        if (!plot_path.empty()) {
            std::ofstream f(plot_path, std::ios::binary);
            if (!f || !(f << plot)) throw ss::DataError("cannot write plot data to '" + plot_path + "'");
        }
        return 0;
    } catch (const ss::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ss::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
