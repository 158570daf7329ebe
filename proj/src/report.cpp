#include "structshift/report.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "structshift/error.hpp"
#include "structshift/ingest.hpp"
#include "structshift/number_format.hpp"

namespace structshift {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kConsistencyTolerance = 1e-12;

ComparisonReport assemble(const FrequencyTable& table, const std::string& reference,
                          const std::string& compared, const CriticalValueSource& critical,
                          const std::string& digest) {
    auto pair = align(normalize(table, reference), normalize(table, compared));
    auto similarity = similarity_index(pair);
    auto test = decide(similarity.omega_p, critical);
    auto profile = difference_profile(pair, similarity.omega_p);
    auto distinctive = detect_distinctive(profile);
    auto diag = diagnostics(profile);
    ComparisonReport r{reference,      compared,          std::move(pair), std::move(similarity),
                       std::move(test), std::move(profile), std::move(distinctive), std::move(diag),
                       std::string(kToolVersion), digest};

    if (std::abs(r.test.omega_p_empirical - r.similarity.omega_p) > kConsistencyTolerance ||
        std::abs(r.profile.omega_p - r.similarity.omega_p) > kConsistencyTolerance)
        throw std::logic_error("inconsistent omega_p across report sections");
    return r;
}

CriticalValueSource resolve_critical(const FrequencyTable& table, const CompareOptions& options) {
    return critical_value(options.alpha, static_cast<int>(table.categories().size()), options.policy,
                          options.mc, options.external_table);
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json interval_json(const Interval& i) {
    return Json{{"lo", i.lo}, {"hi", i.hi}, {"lo_closed", i.lo_closed}, {"hi_closed", i.hi_closed}};
}

Json area_json(const DistinctiveArea& a) {
    return Json{{"text", to_string(a)},
                {"negative", interval_json(a.negative)},
                {"positive", interval_json(a.positive)}};
}

Json critical_json(const CriticalValueSource& c) {
    Json j{{"kind", to_string(c.kind)}, {"alpha", c.alpha}, {"k", c.k}, {"value", c.value},
           {"origin", c.origin}};
    if (c.mc)
        j["monte_carlo"] = Json{{"replicates", c.mc->replicates},
                                {"seed", c.mc->seed},
                                {"null_model", c.mc->null_model},
                                {"quantile", "nearest_rank"}};
    return j;
}

Json report_json(const ComparisonReport& r) {
    const auto& p = r.profile;
    const auto& dg = r.diagnostics;

    Json categories = Json::array();
    for (std::size_t i = 0; i < p.k(); ++i) {
        categories.push_back(Json{
            {"category", p.categories[i]},
            {"share_x", r.pair.x.share(i)},
            {"share_y", r.pair.y.share(i)},
            {"min", r.similarity.per_category_min[i]},
            {"d", p.d[i]},
            {"r", p.r ? Json((*p.r)[i]) : Json(nullptr)},
            {"distinctive", static_cast<bool>(r.distinctive.flags[i])},
            {"depth", to_string(r.distinctive.depth[i])},
            {"dispersion", to_string(dg.dispersion[i])},
        });
    }

    return Json{
        {"tool", Json{{"name", kToolName}, {"version", r.tool_version}}},
        {"input_digest", "sha256:" + r.input_digest},
        {"reference", r.reference},
        {"compared", r.compared},
        {"k", p.k()},
        {"similarity",
         Json{{"omega_p", r.similarity.omega_p},
              {"bray_curtis", r.similarity.bray_curtis},
              {"transform_order", exponent(r.similarity.transform_order)},
              {"transformed_similarity", r.similarity.transformed_similarity}}},
        {"test",
         Json{{"h0", "structures are dissimilar"},
              {"h1", "structures are similar"},
              {"omega_p_empirical", r.test.omega_p_empirical},
              {"critical_value", critical_json(r.test.critical)},
              {"decision", to_string(r.test.decision)}}},
        {"differences",
         Json{{"d_min", p.d_min},
              {"d_max", p.d_max},
              {"g_p", p.g_p},
              {"abs_area", area_json(p.abs_area)},
              {"rel_area", p.rel_area ? area_json(*p.rel_area) : Json(nullptr)},
              {"tail", to_string(r.distinctive.tail)}}},
        {"diagnostics",
         Json{{"mean", dg.mean}, {"S", dg.S}, {"M3", dg.M3}, {"A", optional_number(dg.A)}}},
        {"categories", std::move(categories)},
    };
}

std::string csv_header() {
    return "reference,compared,category,share_x,share_y,d,r,depth,dispersion,distinctive\n";
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string csv_rows(const ComparisonReport& r) {
    std::string out;
    const auto& p = r.profile;
    for (std::size_t i = 0; i < p.k(); ++i) {
        out += csv_quote(r.reference) + ',' + csv_quote(r.compared) + ',' + csv_quote(p.categories[i]) +
               ',' + shortest(r.pair.x.share(i)) + ',' + shortest(r.pair.y.share(i)) + ',' +
               shortest(p.d[i]) + ',' + (p.r ? shortest((*p.r)[i]) : std::string()) + ',' +
               to_string(r.distinctive.depth[i]) + ',' + to_string(r.diagnostics.dispersion[i]) + ',' +
               (r.distinctive.flags[i] ? "true" : "false") + '\n';
    }
    return out;
}

std::string pad(const std::string& s, std::size_t width) {
    // Width counts bytes; labels are expected to be mostly ASCII.
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string lpad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string text_report(const ComparisonReport& r) {
    const auto& p = r.profile;
    const auto& dg = r.diagnostics;
    auto f2 = [](double v) { return fixed_half_away(v, 2); };

    std::size_t label_w = 8;
    for (const auto& c : p.categories) label_w = std::max(label_w, c.size() + 2);
    const std::size_t col = 9;

    std::ostringstream out;
    out << "Comparison " << r.reference << " vs " << r.compared << "  (k = " << p.k() << ")\n";
    out << "omega_p = " << f2(r.similarity.omega_p) << "   Bray-Curtis = " << f2(r.similarity.bray_curtis)
        << "\n";
    out << "Similarity test: alpha = " << shortest(r.test.critical.alpha) << ", z = "
        << shortest(r.test.critical.value) << " [" << to_string(r.test.critical.kind) << "], decision: "
        << to_string(r.test.decision) << "\n\n";

    out << lpad("i", 3) << "  " << pad("category", label_w) << lpad(r.reference, col)
        << lpad(r.compared, col) << lpad("min", col) << lpad("d", col) << lpad("r", col) << "  "
        << pad("depth", 17) << "dispersion\n";
    for (std::size_t i = 0; i < p.k(); ++i) {
        const std::string mark = r.distinctive.flags[i] ? "*" : " ";
        out << lpad(std::to_string(i + 1), 3) << "  " << pad(p.categories[i], label_w)
            << lpad(f2(r.pair.x.share(i)), col) << lpad(f2(r.pair.y.share(i)), col)
            << lpad(f2(r.similarity.per_category_min[i]), col) << lpad(f2(p.d[i]) + mark, col + 1)
            << lpad(p.r ? f2((*p.r)[i]) + mark : std::string("-") + " ", col) << "  "
            << pad(to_string(r.distinctive.depth[i]), 17) << to_string(dg.dispersion[i]) << "\n";
    }
    double sum_d = 0.0;
    for (double d : p.d) sum_d += d;
    out << lpad("", 3) << "  " << pad("SUM", label_w) << lpad(f2(1.0), col) << lpad(f2(1.0), col)
        << lpad(f2(r.similarity.omega_p), col) << lpad(f2(sum_d) + " ", col + 1) << "\n\n";

    out << "d_min = " << f2(p.d_min) << "   d_max = " << f2(p.d_max) << "   g_p = " << f2(p.g_p) << "\n";
    if (r.distinctive.any()) {
        out << "Distinctive area (absolute): " << to_string(p.abs_area) << "\n";
        if (p.rel_area) out << "Distinctive area (relative): " << to_string(*p.rel_area) << "\n";
        out << "Distinctive categories (" << to_string(r.distinctive.tail) << " side):";
        for (auto i : r.distinctive.indices()) out << " " << p.categories[i];
        out << "\n";
    } else {
        out << "No distinctive changes.\n";
    }
    out << "S = " << fixed_half_away(dg.S, 4) << "   M3 = " << fixed_half_away(dg.M3, 6)
        << "   A = " << (dg.A ? f2(*dg.A) : std::string("n/a")) << "\n";
    out << "(* marks distinctive changes)\n";
    return out.str();
}

Json plot_json(const ComparisonReport& r) {
    const auto& p = r.profile;
    const double s = r.diagnostics.S;
    Json points = Json::array();
    for (std::size_t i = 0; i < p.k(); ++i) {
        points.push_back(Json{{"category", p.categories[i]},
                              {"d", p.d[i]},
                              {"distinctive", static_cast<bool>(r.distinctive.flags[i])},
                              {"dispersion", to_string(r.diagnostics.dispersion[i])}});
    }
    return Json{{"reference", r.reference},
                {"compared", r.compared},
                {"mean", r.diagnostics.mean},
                {"S", s},
                {"bands", Json{{"typical", Json::array({-s, s})}, {"non_outlier", Json::array({-3.0 * s, 3.0 * s})}}},
                {"points", std::move(points)}};
}

}  // namespace

ComparisonReport compare_pair(const FrequencyTable& table, const std::string& reference,
                              const std::string& compared, const CompareOptions& options) {
    for (const auto* id : {&reference, &compared}) {
        if (!table.population_index(*id)) throw DataError("unknown population '" + *id + "'");
    }
    return assemble(table, reference, compared, resolve_critical(table, options), table_digest(table));
}

SeriesReport compare_series(const FrequencyTable& table, const std::string& baseline,
                            const CompareOptions& options) {
    if (!table.population_index(baseline)) throw DataError("unknown baseline '" + baseline + "'");
    if (table.populations().size() < 2)
        throw DataError("series comparison needs at least two populations");

    const auto critical = resolve_critical(table, options);
    const auto digest = table_digest(table);
    SeriesReport series;
    series.baseline = baseline;
    for (const auto& pop : table.populations()) {
        if (pop != baseline) series.comparisons.push_back(assemble(table, baseline, pop, critical, digest));
    }
    return series;
}

std::string render_report(const ComparisonReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::json: return report_json(report).dump(2) + "\n";
        case ReportFormat::csv: return csv_header() + csv_rows(report);
        case ReportFormat::text: return text_report(report);
    }
    return {};
}

std::string render_report(const SeriesReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::json: {
            Json comparisons = Json::array();
            for (const auto& c : report.comparisons) comparisons.push_back(report_json(c));
            return Json{{"baseline", report.baseline}, {"comparisons", std::move(comparisons)}}.dump(2) + "\n";
        }
        case ReportFormat::csv: {
            std::string out = csv_header();
            for (const auto& c : report.comparisons) out += csv_rows(c);
            return out;
        }
        case ReportFormat::text: {
            std::string out;
            for (std::size_t i = 0; i < report.comparisons.size(); ++i) {
                if (i) out += "\n";
                out += text_report(report.comparisons[i]);
            }
            return out;
        }
    }
    return {};
}

std::string emit_plot_data(const ComparisonReport& report) { return plot_json(report).dump(2) + "\n"; }

std::string emit_plot_data(const SeriesReport& report) {
    Json panels = Json::array();
    for (const auto& c : report.comparisons) panels.push_back(plot_json(c));
    return Json{{"baseline", report.baseline}, {"panels", std::move(panels)}}.dump(2) + "\n";
}

}  // namespace structshift
