#include "structshift/ingest.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <memory>
#include <sstream>

#include "structshift/error.hpp"
#include "structshift/number_format.hpp"

namespace structshift {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// One CSV record. Double-quoted fields may contain commas; "" is a quote.
std::vector<std::string> split_record(std::string_view line, int line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && trim(field).empty()) {
            quoted = was_quoted = true;
            field.clear();
        } else if (c == ',') {
            fields.push_back(was_quoted ? field : std::string(trim(field)));
            field.clear();
            was_quoted = false;
        } else {
            field += c;
        }
    }
    if (quoted) throw DataError("row " + std::to_string(line_no) + ": unterminated quoted field");
    fields.push_back(was_quoted ? field : std::string(trim(field)));
    return fields;
}

double parse_value(std::string_view text, int line_no, const std::string& column) {
    const auto s = trim(text);
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw DataError("row " + std::to_string(line_no) + ", column '" + column +
                        "': not a number: '" + std::string(s) + "'");
    if (v < 0.0)
        throw DataError("row " + std::to_string(line_no) + ", column '" + column +
                        "': negative value " + std::string(s));
    return v;
}

void check_shares(const std::vector<std::string>& populations,
                  const std::vector<std::vector<double>>& columns) {
    for (std::size_t p = 0; p < columns.size(); ++p) {
        double sum = 0.0;
        for (double v : columns[p]) sum += v;
        if (std::abs(sum - 1.0) > kSharesInputTolerance) {
            std::ostringstream msg;
            msg.precision(12);
            msg << "column '" << populations[p] << "': shares sum to " << sum << ", expected 1";
            throw DataError(msg.str());
        }
    }
}

FrequencyTable parse_csv(std::string_view source, ValueMode mode) {
    if (source.substr(0, 3) == "\xEF\xBB\xBF") source.remove_prefix(3);

    std::vector<std::string> populations;
    std::vector<std::string> categories;
    std::vector<std::vector<double>> columns;
    bool have_header = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= source.size()) {
        const auto nl = source.find('\n', pos);
        const auto line = source.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? source.size() + 1 : nl + 1;
        ++line_no;
        if (trim(line).empty()) continue;

        auto fields = split_record(line, line_no);
        if (!have_header) {
            if (fields.front() != "category")
                throw DataError("row " + std::to_string(line_no) +
                                ": header must start with 'category'");
            if (fields.size() < 2) throw DataError("header names no populations");
            populations.assign(fields.begin() + 1, fields.end());
            columns.resize(populations.size());
            have_header = true;
            continue;
        }
        if (fields.size() != populations.size() + 1)
            throw DataError("row " + std::to_string(line_no) + ": expected " +
                            std::to_string(populations.size() + 1) + " fields, got " +
                            std::to_string(fields.size()));
        if (fields.front().empty())
            throw DataError("row " + std::to_string(line_no) + ": empty category label");
        for (const auto& existing : categories) {
            if (existing == fields.front())
                throw DataError("row " + std::to_string(line_no) + ": duplicate category label '" +
                                fields.front() + "'");
        }
        categories.push_back(fields.front());
        for (std::size_t p = 0; p < populations.size(); ++p)
            columns[p].push_back(parse_value(fields[p + 1], line_no, populations[p]));
    }
    if (!have_header) throw DataError("empty input: no header row");
    if (categories.empty()) throw DataError("no category rows");
    if (mode == ValueMode::shares) check_shares(populations, columns);
    return FrequencyTable(std::move(categories), std::move(populations), std::move(columns));
}

FrequencyTable parse_json(std::string_view source, ValueMode mode) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw DataError("JSON input must be an object");

    if (auto it = doc.find("mode"); it != doc.end()) {
        if (!it->is_string() || (*it != "counts" && *it != "shares"))
            throw DataError("'mode' must be \"counts\" or \"shares\"");
        const auto declared = *it == "shares" ? ValueMode::shares : ValueMode::counts;
        if (declared != mode)
            throw DataError("input declares mode '" + it->get<std::string>() +
                            "', which contradicts the requested mode");
    }

    const auto cats = doc.find("categories");
    if (cats == doc.end() || !cats->is_array()) throw DataError("'categories' must be an array");
    std::vector<std::string> categories;
    for (std::size_t i = 0; i < cats->size(); ++i) {
        const auto& c = (*cats)[i];
        if (!c.is_string()) throw DataError("categories[" + std::to_string(i) + "] is not a string");
        categories.push_back(c.get<std::string>());
    }

    const auto pops = doc.find("populations");
    if (pops == doc.end() || !pops->is_array()) throw DataError("'populations' must be an array");
    std::vector<std::string> populations;
    std::vector<std::vector<double>> columns;
    for (std::size_t p = 0; p < pops->size(); ++p) {
        const auto& entry = (*pops)[p];
        const std::string where = "populations[" + std::to_string(p) + "]";
        if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string())
            throw DataError(where + ": needs a string 'id'");
        const auto id = entry["id"].get<std::string>();
        const auto values = entry.find("values");
        if (values == entry.end() || !values->is_array())
            throw DataError(where + " ('" + id + "'): 'values' must be an array");
        if (values->size() != categories.size())
            throw DataError(where + " ('" + id + "'): " + std::to_string(values->size()) +
                            " values for " + std::to_string(categories.size()) + " categories");
        std::vector<double> column;
        for (std::size_t i = 0; i < values->size(); ++i) {
            const auto& v = (*values)[i];
            if (!v.is_number())
                throw DataError(where + " ('" + id + "'), category '" + categories[i] +
                                "': not a number");
            const double x = v.get<double>();
            if (x < 0.0)
                throw DataError(where + " ('" + id + "'), category '" + categories[i] +
                                "': negative value");
            column.push_back(x);
        }
        populations.push_back(id);
        columns.push_back(std::move(column));
    }
    if (mode == ValueMode::shares) check_shares(populations, columns);
    return FrequencyTable(std::move(categories), std::move(populations), std::move(columns));
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos && trim(s) == s) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

FrequencyTable parse_table(std::string_view source, InputFormat format, ValueMode mode) {
    return format == InputFormat::json ? parse_json(source, mode) : parse_csv(source, mode);
}

std::string render_table(const FrequencyTable& table) {
    std::string out = "category";
    for (const auto& p : table.populations()) out += "," + csv_field(p);
    out += '\n';
    for (std::size_t c = 0; c < table.categories().size(); ++c) {
        out += csv_field(table.categories()[c]);
        for (std::size_t p = 0; p < table.populations().size(); ++p)
            out += "," + shortest(table.counts(p)[c]);
        out += '\n';
    }
    return out;
}

std::string table_digest(const FrequencyTable& table) {
    const auto text = render_table(table);
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), text.data(), text.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xF];
    }
    return out;
}

}  // namespace structshift
