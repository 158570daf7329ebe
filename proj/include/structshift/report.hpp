#pragma once

#include <string>
#include <vector>

#include "structshift/change_analysis.hpp"
#include "structshift/similarity.hpp"
#include "structshift/sokolowski.hpp"
#include "structshift/structures.hpp"

namespace structshift {

inline constexpr std::string_view kToolName = "structshift";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct CompareOptions {
    double alpha = 0.05;
    CvPolicy policy = CvPolicy::embedded_only;
    MonteCarloConfig mc;
    /// Consulted before the embedded table when set.
    const CriticalValueTable* external_table = nullptr;
};

/// Everything known about one reference-vs-compared comparison.
struct ComparisonReport {
    std::string reference;
    std::string compared;
    AlignedPair pair;
    SimilarityResult similarity;
    TestOutcome test;
    DifferenceProfile profile;
    DistinctiveChanges distinctive;
    ChangeDiagnostics diagnostics;
    std::string tool_version;
    std::string input_digest;
};

struct SeriesReport {
    std::string baseline;
    std::vector<ComparisonReport> comparisons;
};

ComparisonReport compare_pair(const FrequencyTable& table, const std::string& reference,
                              const std::string& compared, const CompareOptions& options = {});

/// Baseline against every other population, in table order. The critical
/// value is resolved once and shared by all comparisons.
SeriesReport compare_series(const FrequencyTable& table, const std::string& baseline,
                            const CompareOptions& options = {});

enum class ReportFormat { json, csv, text };

std::string render_report(const ComparisonReport& report, ReportFormat format);
std::string render_report(const SeriesReport& report, ReportFormat format);

/// JSON with d_i points, the +/-S and +/-3S bands and distinctive flags.
std::string emit_plot_data(const ComparisonReport& report);
std::string emit_plot_data(const SeriesReport& report);

}  // namespace structshift
