#pragma once

// Dataset-level products built on per-journal volatility reports: top-k
// rankings, threshold frequency tables, scatter points and corpus totals.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "volatix/core_metrics.hpp"
#include "volatix/ingest.hpp"

namespace volatix {

enum class RankKey { absolute, relative };

std::string_view to_string(RankKey k);

// Reports for every journal that has one, in corpus order, plus the journals
// that could not be reported (singletons) with the reason.
struct ReportSet {
    std::vector<VolatilityReport> reports;
    std::vector<Exclusion> excluded;
};

// Pure map over the corpus; the result is identical for any thread count.
ReportSet compute_reports(const Corpus& corpus, unsigned threads = 1);

struct RankedTable {
    RankKey key = RankKey::absolute;
    std::size_t k = 0;
    std::vector<VolatilityReport> rows;
    std::vector<Exclusion> excluded;  // undefined relative change, when ranking by it
};

// Descending by key, then by delta_f, then journal_id ascending.
RankedTable rank_by_volatility(std::span<const VolatilityReport> reports, RankKey key, std::size_t k);

struct ThresholdRow {
    Rational threshold;
    std::int64_t count = 0;  // journals strictly above the threshold
    Rational percent;        // of journals_ranked
};

struct ThresholdTable {
    RankKey key = RankKey::absolute;
    std::int64_t journals_ranked = 0;
    std::vector<ThresholdRow> rows;
};

// Thresholds for the relative key are ratios (0.1 is 10%). Throws
// std::invalid_argument unless they are strictly increasing.
ThresholdTable threshold_table(std::span<const VolatilityReport> reports, RankKey key,
                               std::span<const Rational> thresholds);

// Preset cuts matching the customary absolute and relative tables.
std::vector<Rational> default_absolute_cuts();
std::vector<Rational> default_relative_cuts();

struct ScatterPoint {
    std::string journal_id;
    std::int64_t n_2y = 0;
    Rational delta_f;
    std::optional<Rational> delta_f_rel;

    friend bool operator==(const ScatterPoint&, const ScatterPoint&) = default;
};

// One point per report, sorted by n_2y then journal_id.
std::vector<ScatterPoint> scatter_data(std::span<const VolatilityReport> reports);

struct CorpusSummary {
    std::int64_t journals = 0;
    std::int64_t papers = 0;     // sum of N_2Y
    std::int64_t citations = 0;  // sum of C

    friend bool operator==(const CorpusSummary&, const CorpusSummary&) = default;
};

CorpusSummary dataset_summary(const Corpus& corpus);

}  // namespace volatix
