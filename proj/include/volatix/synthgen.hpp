#pragma once

// Synthetic journal corpora for exercising the pipeline without proprietary
// citation data. Every paper's citation count is drawn i.i.d. from one model
// whatever the journal's size, so size is the only thing that varies
// systematically between journals.

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "volatix/core_metrics.hpp"
#include "volatix/ingest.hpp"

namespace volatix {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// N_2Y = floor(exp(U)) with U uniform on [ln min, ln(max + 1)), clamped to [min, max].
struct LogUniformSize {
    std::int64_t min = 2;
    std::int64_t max = 1000;
};

struct FixedSize {
    std::int64_t n = 10;
};

// c = floor(exp(mu + sigma * Z)), Z standard normal.
struct DiscreteLognormal {
    double mu = 0.5;
    double sigma = 1.2;
};

// P(c) proportional to (c + 1)^-alpha on c = 0 .. c_max.
struct Zipf {
    double alpha = 2.0;
    std::int64_t c_max = 5000;
};

using SizeModel = std::variant<LogUniformSize, FixedSize>;
using CitationModel = std::variant<DiscreteLognormal, Zipf>;

struct SynthConfig {
    std::int64_t n_journals = 11639;
    // The default keeps roughly 90% of journals at N_2Y <= 500.
    SizeModel size_model = LogUniformSize{};
    CitationModel citation_model = DiscreteLognormal{};
    std::uint64_t seed = 42;

    // Throws ConfigError.
    void validate() const;

    static SynthConfig from_json(const nlohmann::json& j);
    [[nodiscard]] nlohmann::json to_json() const;
};

// Analytic mean and variance of the per-paper citation model.
double model_mean(const CitationModel& model);
double model_variance(const CitationModel& model);

struct SynthJournal {
    std::string journal_id;
    std::vector<std::uint32_t> citations;  // one entry per citable paper
};

struct SynthCorpus {
    SynthConfig config;
    std::vector<SynthJournal> journals;

    [[nodiscard]] std::int64_t paper_count() const;

    // Per-journal aggregates in journal order, not yet cleaned.
    [[nodiscard]] Corpus aggregate() const;

    // Writes papers.csv (schema A), one article row per paper.
    void write_papers_csv(std::ostream& out) const;
};

// Journal i is drawn from stream i of the seed, so the corpus is the same
// for any thread count.
SynthCorpus generate_corpus(const SynthConfig& config, unsigned threads = 1);

struct BinStats {
    std::int64_t size_lo = 0;  // inclusive
    std::int64_t size_hi = 0;  // exclusive
    std::int64_t journal_count = 0;
    // Empty when the bin has no journals (sd_f also when it has only one).
    std::optional<double> mean_f;
    std::optional<double> max_f;
    std::optional<double> sd_f;
    std::optional<double> max_delta_f;
};

struct BinnedStats {
    std::vector<BinStats> bins;
    std::int64_t unbinned = 0;  // reports whose n_2y lies outside every bin
};

// Bins are [edges[i], edges[i+1]). Throws std::invalid_argument unless there
// are at least two strictly increasing edges.
BinnedStats clt_binned_stats(std::span<const VolatilityReport> reports, std::span<const std::int64_t> edges);

}  // namespace volatix
