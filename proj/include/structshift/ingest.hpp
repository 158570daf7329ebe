#pragma once

#include <string>
#include <string_view>

#include "structshift/structures.hpp"

namespace structshift {

enum class InputFormat { csv_wide, json };

/// counts: raw nonnegative values. shares: every column must already sum to
/// 1 within kSharesInputTolerance.
enum class ValueMode { counts, shares };

/// Wide CSV: header `category,<pop>,<pop>...`, one row per category.
/// JSON: {"categories": [...], "populations": [{"id": ..., "values": [...]}],
///        "mode": "counts"|"shares"}; an explicit "mode" must agree with `mode`.
/// Throws DataError naming the offending row/column.
FrequencyTable parse_table(std::string_view source, InputFormat format, ValueMode mode);

/// Wide CSV with shortest round-trip number formatting.
std::string render_table(const FrequencyTable& table);

/// Hex SHA-256 of the table's canonical wide-CSV rendering.
std::string table_digest(const FrequencyTable& table);

}  // namespace structshift
