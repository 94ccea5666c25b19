#include "volatix/report_io.hpp"

#include "volatix/csv.hpp"

namespace volatix {

namespace {

const Rational kHundred(100);

std::string trim_decimal(std::string s) {
    if (s.find('.') == std::string::npos) return s;
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s == "-0" ? "0" : s;
}

// Display strings become JSON numbers; exact strings stay strings.
nlohmann::json json_value(const std::string& rendered, NumberMode mode) {
    if (rendered.empty()) return nullptr;
    if (mode == NumberMode::exact) return rendered;
    return nlohmann::json::parse(rendered);
}

const char* const kReportColumns[] = {"journal_id", "journal_name", "delta_f", "c_star", "delta_f_rel",
                                      "f",          "f_star",       "n_2y"};

std::vector<std::string> report_fields(const VolatilityReport& r, NumberMode mode) {
    return {r.journal_id,
            r.name,
            render_average(r.delta_f, mode),
            std::to_string(r.c_star),
            render_percent(r.delta_f_rel, mode),
            render_average(r.f, mode),
            render_average(r.f_star, mode),
            std::to_string(r.n_2y)};
}

}  // namespace

std::string render_average(const Rational& value, NumberMode mode) {
    return mode == NumberMode::exact ? value.to_string() : value.to_fixed(2);
}

std::string render_percent(const std::optional<Rational>& ratio, NumberMode mode) {
    if (!ratio) return {};
    const Rational pct = *ratio * kHundred;
    return mode == NumberMode::exact ? pct.to_string() : pct.to_fixed(0);
}

std::string render_threshold(const Rational& threshold, RankKey key, NumberMode mode) {
    const Rational v = key == RankKey::relative ? threshold * kHundred : threshold;
    return mode == NumberMode::exact ? v.to_string() : trim_decimal(v.to_fixed(6));
}

nlohmann::json report_to_json(const VolatilityReport& r, NumberMode mode) {
    return {{"journal_id", r.journal_id},
            {"name", r.name},
            {"f", json_value(render_average(r.f, mode), mode)},
            {"f_star", json_value(render_average(r.f_star, mode), mode)},
            {"c_star", r.c_star},
            {"delta_f", json_value(render_average(r.delta_f, mode), mode)},
            {"delta_f_rel", json_value(render_percent(r.delta_f_rel, mode), mode)},
            {"n_2y", r.n_2y}};
}

void write_reports(std::ostream& out, std::span<const VolatilityReport> reports, Format format, NumberMode mode) {
    if (format == Format::json) {
        auto arr = nlohmann::json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r, mode));
        out << arr.dump(2) << '\n';
        return;
    }
    std::vector<std::string> header(std::begin(kReportColumns), std::end(kReportColumns));
    csv::write_row(out, header);
    for (const auto& r : reports) csv::write_row(out, report_fields(r, mode));
}

void write_ranked(std::ostream& out, const RankedTable& table, Format format, NumberMode mode) {
    if (format == Format::json) {
        auto rows = nlohmann::json::array();
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            auto j = report_to_json(table.rows[i], mode);
            j["rank"] = i + 1;
            rows.push_back(std::move(j));
        }
        nlohmann::json doc = {{"key", to_string(table.key)}, {"k", table.k}, {"rows", std::move(rows)}};
        out << doc.dump(2) << '\n';
        return;
    }
    std::vector<std::string> header{"rank"};
    header.insert(header.end(), std::begin(kReportColumns), std::end(kReportColumns));
    csv::write_row(out, header);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        auto fields = report_fields(table.rows[i], mode);
        fields.insert(fields.begin(), std::to_string(i + 1));
        csv::write_row(out, fields);
    }
}

void write_thresholds(std::ostream& out, const ThresholdTable& table, Format format, NumberMode mode) {
    auto percent = [&](const Rational& p) { return mode == NumberMode::exact ? p.to_string() : p.to_significant(2); };
    if (format == Format::json) {
        auto rows = nlohmann::json::array();
        for (const auto& row : table.rows)
            rows.push_back({{"threshold", json_value(render_threshold(row.threshold, table.key, mode), mode)},
                            {"count", row.count},
                            {"percent", json_value(percent(row.percent), mode)}});
        nlohmann::json doc = {
            {"key", to_string(table.key)}, {"journals_ranked", table.journals_ranked}, {"rows", std::move(rows)}};
        out << doc.dump(2) << '\n';
        return;
    }
    csv::write_row(out, {"threshold", "count", "percent"});
    for (const auto& row : table.rows)
        csv::write_row(out, {render_threshold(row.threshold, table.key, mode), std::to_string(row.count),
                             percent(row.percent)});
}

void write_scatter(std::ostream& out, std::span<const ScatterPoint> points, NumberMode mode) {
    csv::write_row(out, {"n_2y", "delta_f", "delta_f_rel"});
    for (const auto& p : points)
        csv::write_row(out, {std::to_string(p.n_2y), render_average(p.delta_f, mode),
                             render_percent(p.delta_f_rel, mode)});
}

void write_exclusions(std::ostream& out, std::span<const Exclusion> excluded) {
    csv::write_row(out, {"journal_id", "reason"});
    for (const auto& e : excluded) csv::write_row(out, {e.journal_id, e.reason});
}

}  // namespace volatix
