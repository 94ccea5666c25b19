#pragma once

// CSV and JSON rendering of reports and tables.
//
// Display mode rounds averages and absolute changes to two decimals (half
// away from zero) and relative changes to whole percent. Exact mode writes
// every rational as "num/den". Relative changes are always in percent.

#include <optional>
#include <ostream>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "volatix/analytics.hpp"

namespace volatix {

enum class Format { csv, json };
enum class NumberMode { display, exact };

std::string render_average(const Rational& value, NumberMode mode);
// Ratio rendered as percent; empty string when undefined.
std::string render_percent(const std::optional<Rational>& ratio, NumberMode mode);
// Threshold as given (absolute) or as percent (relative), shortest exact decimal.
std::string render_threshold(const Rational& threshold, RankKey key, NumberMode mode);

nlohmann::json report_to_json(const VolatilityReport& r, NumberMode mode);

void write_reports(std::ostream& out, std::span<const VolatilityReport> reports, Format format, NumberMode mode);
void write_ranked(std::ostream& out, const RankedTable& table, Format format, NumberMode mode);
void write_thresholds(std::ostream& out, const ThresholdTable& table, Format format, NumberMode mode);
// scatter.csv: n_2y,delta_f,delta_f_rel
void write_scatter(std::ostream& out, std::span<const ScatterPoint> points, NumberMode mode);
void write_exclusions(std::ostream& out, std::span<const Exclusion> excluded);

}  // namespace volatix
