#include "volatix/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "volatix/csv.hpp"
#include "volatix/parallel.hpp"
#include "volatix/rng.hpp"

namespace volatix {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Cumulative weights of the truncated zipf, shared read-only by all workers.
std::vector<double> zipf_cdf(const Zipf& z) {
    std::vector<double> cdf(std::size_t(z.c_max) + 1);
    double acc = 0.0;
    for (std::size_t c = 0; c < cdf.size(); ++c) {
        acc += std::pow(double(c + 1), -z.alpha);
        cdf[c] = acc;
    }
    return cdf;
}

// P(X >= k) for X = exp(mu + sigma Z).
double lognormal_tail(const DiscreteLognormal& m, double k) {
    return 0.5 * std::erfc((std::log(k) - m.mu) / (m.sigma * std::numbers::sqrt2));
}

// First and second moments of floor(X), using E[c] = sum P(c >= k) and
// E[c^2] = sum (2k - 1) P(c >= k), truncated at the row cap.
std::pair<double, double> lognormal_moments(const DiscreteLognormal& m) {
    double first = 0.0, second = 0.0;
    for (std::int64_t k = 1; k <= kMaxRowCitations; ++k) {
        const double tail = lognormal_tail(m, double(k));
        first += tail;
        second += double(2 * k - 1) * tail;
        if (double(2 * k - 1) * tail < 1e-15 * std::max(1.0, second)) break;
    }
    return {first, second};
}

std::string journal_id_for(std::int64_t index) {
    std::ostringstream os;
    os << "SYN" << std::setw(6) << std::setfill('0') << index + 1;
    return os.str();
}

std::int64_t draw_size(const SizeModel& model, Rng& rng) {
    return std::visit(overloaded{
                          [](const FixedSize& f) { return f.n; },
                          [&](const LogUniformSize& s) {
                              const double lo = std::log(double(s.min));
                              const double hi = std::log(double(s.max) + 1.0);
                              const auto n = std::int64_t(std::floor(std::exp(lo + rng.uniform() * (hi - lo))));
                              return std::clamp(n, s.min, s.max);
                          },
                      },
                      model);
}

}  // namespace

void SynthConfig::validate() const {
    if (n_journals < 0) throw ConfigError("n_journals must be non-negative");
    std::visit(overloaded{
                   [](const LogUniformSize& s) {
                       if (s.min < 2) throw ConfigError("log_uniform min must be at least 2");
                       if (s.max < s.min) throw ConfigError("log_uniform max must be at least min");
                   },
                   [](const FixedSize& f) {
                       if (f.n < 2) throw ConfigError("fixed size must be at least 2");
                   },
               },
               size_model);
    std::visit(overloaded{
                   [](const DiscreteLognormal& d) {
                       if (!(d.sigma > 0) || !std::isfinite(d.sigma) || !std::isfinite(d.mu))
                           throw ConfigError("discrete_lognormal needs finite mu and sigma > 0");
                   },
                   [](const Zipf& z) {
                       if (!(z.alpha > 1) || !std::isfinite(z.alpha)) throw ConfigError("zipf alpha must exceed 1");
                       if (z.c_max < 1 || z.c_max > kMaxRowCitations)
                           throw ConfigError("zipf c_max must be in [1, 2^31 - 1]");
                   },
               },
               citation_model);
}

SynthConfig SynthConfig::from_json(const nlohmann::json& j) {
    SynthConfig cfg;
    try {
        if (j.contains("n_journals")) cfg.n_journals = j.at("n_journals").get<std::int64_t>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("size_model")) {
            const auto& s = j.at("size_model");
            const auto type = s.at("type").get<std::string>();
            if (type == "log_uniform")
                cfg.size_model = LogUniformSize{s.at("min").get<std::int64_t>(), s.at("max").get<std::int64_t>()};
            else if (type == "fixed")
                cfg.size_model = FixedSize{s.at("n").get<std::int64_t>()};
            else
                throw ConfigError("unknown size_model type '" + type + "'");
        }
        if (j.contains("citation_model")) {
            const auto& c = j.at("citation_model");
            const auto type = c.at("type").get<std::string>();
            if (type == "discrete_lognormal")
                cfg.citation_model = DiscreteLognormal{c.at("mu").get<double>(), c.at("sigma").get<double>()};
            else if (type == "zipf")
                cfg.citation_model = Zipf{c.at("alpha").get<double>(), c.at("c_max").get<std::int64_t>()};
            else
                throw ConfigError("unknown citation_model type '" + type + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed synth config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

nlohmann::json SynthConfig::to_json() const {
    nlohmann::json j;
    j["n_journals"] = n_journals;
    j["seed"] = seed;
    j["size_model"] = std::visit(overloaded{
                                     [](const LogUniformSize& s) -> nlohmann::json {
                                         return {{"type", "log_uniform"}, {"min", s.min}, {"max", s.max}};
                                     },
                                     [](const FixedSize& f) -> nlohmann::json {
                                         return {{"type", "fixed"}, {"n", f.n}};
                                     },
                                 },
                                 size_model);
    j["citation_model"] = std::visit(overloaded{
                                         [](const DiscreteLognormal& d) -> nlohmann::json {
                                             return {{"type", "discrete_lognormal"}, {"mu", d.mu}, {"sigma", d.sigma}};
                                         },
                                         [](const Zipf& z) -> nlohmann::json {
                                             return {{"type", "zipf"}, {"alpha", z.alpha}, {"c_max", z.c_max}};
                                         },
                                     },
                                     citation_model);
    return j;
}

double model_mean(const CitationModel& model) {
    return std::visit(overloaded{
                          [](const DiscreteLognormal& d) { return lognormal_moments(d).first; },
                          [](const Zipf& z) {
                              double num = 0.0, den = 0.0;
                              for (std::int64_t c = 0; c <= z.c_max; ++c) {
                                  const double w = std::pow(double(c + 1), -z.alpha);
                                  num += double(c) * w;
                                  den += w;
                              }
                              return num / den;
                          },
                      },
                      model);
}

double model_variance(const CitationModel& model) {
    return std::visit(overloaded{
                          [](const DiscreteLognormal& d) {
                              const auto [m1, m2] = lognormal_moments(d);
                              return m2 - m1 * m1;
                          },
                          [](const Zipf& z) {
                              double s1 = 0.0, s2 = 0.0, den = 0.0;
                              for (std::int64_t c = 0; c <= z.c_max; ++c) {
                                  const double w = std::pow(double(c + 1), -z.alpha);
                                  s1 += double(c) * w;
                                  s2 += double(c) * double(c) * w;
                                  den += w;
                              }
                              const double mean = s1 / den;
                              return s2 / den - mean * mean;
                          },
                      },
                      model);
}

std::int64_t SynthCorpus::paper_count() const {
    std::int64_t n = 0;
    for (const auto& j : journals) n += std::int64_t(j.citations.size());
    return n;
}

Corpus SynthCorpus::aggregate() const {
    Corpus corpus;
    corpus.provenance.schema = Schema::paper_level;
    corpus.journals.reserve(journals.size());
    for (const auto& j : journals) {
        JournalAggregate agg{j.journal_id, j.journal_id, 0, std::int64_t(j.citations.size()), 0};
        for (auto c : j.citations) {
            agg.total_citations += c;
            agg.top_cited = std::max<std::int64_t>(agg.top_cited, c);
        }
        corpus.journals.push_back(std::move(agg));
    }
    return corpus;
}

void SynthCorpus::write_papers_csv(std::ostream& out) const {
    csv::write_row(out, {kPaperHeader[0], kPaperHeader[1], kPaperHeader[2], kPaperHeader[3], kPaperHeader[4]});
    for (const auto& j : journals)
        for (std::size_t i = 0; i < j.citations.size(); ++i)
            out << j.journal_id << ',' << j.journal_id << ',' << j.journal_id << "-P" << i + 1 << ",article,"
                << j.citations[i] << '\n';
}

SynthCorpus generate_corpus(const SynthConfig& config, unsigned threads) {
    config.validate();
    SynthCorpus out;
    out.config = config;
    out.journals.resize(std::size_t(config.n_journals));

    std::vector<double> cdf;
    if (const auto* z = std::get_if<Zipf>(&config.citation_model)) cdf = zipf_cdf(*z);

    auto draw_citations = [&](Rng& rng) -> std::uint32_t {
        return std::visit(overloaded{
                              [&](const DiscreteLognormal& d) {
                                  const double x = std::floor(std::exp(d.mu + d.sigma * rng.normal()));
                                  return std::uint32_t(std::min(x, double(kMaxRowCitations)));
                              },
                              [&](const Zipf&) {
                                  const double u = rng.uniform() * cdf.back();
                                  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
                                  return std::uint32_t(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                                                std::ptrdiff_t(cdf.size()) - 1));
                              },
                          },
                          config.citation_model);
    };

    parallel_for(out.journals.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng = Rng::for_stream(config.seed, i);
            auto& journal = out.journals[i];
            journal.journal_id = journal_id_for(std::int64_t(i));
            const auto size = draw_size(config.size_model, rng);
            journal.citations.resize(std::size_t(size));
            for (auto& c : journal.citations) c = draw_citations(rng);
        }
    });
    return out;
}

BinnedStats clt_binned_stats(std::span<const VolatilityReport> reports, std::span<const std::int64_t> edges) {
    if (edges.size() < 2) throw std::invalid_argument("need at least two bin edges");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i - 1] >= edges[i]) throw std::invalid_argument("bin edges must be strictly increasing");

    struct Acc {
        // Welford running mean and sum of squared deviations.
        std::int64_t n = 0;
        double mean = 0.0, m2 = 0.0;
        double max_f = -std::numeric_limits<double>::infinity();
        double max_df = -std::numeric_limits<double>::infinity();
    };
    std::vector<Acc> acc(edges.size() - 1);

    BinnedStats out;
    for (const auto& r : reports) {
        const auto it = std::upper_bound(edges.begin(), edges.end(), r.n_2y);
        if (it == edges.begin() || it == edges.end()) {
            ++out.unbinned;
            continue;
        }
        auto& a = acc[std::size_t(it - edges.begin() - 1)];
        const double f = r.f.to_double();
        ++a.n;
        const double delta = f - a.mean;
        a.mean += delta / double(a.n);
        a.m2 += delta * (f - a.mean);
        a.max_f = std::max(a.max_f, f);
        a.max_df = std::max(a.max_df, r.delta_f.to_double());
    }

    for (std::size_t b = 0; b < acc.size(); ++b) {
        const auto& a = acc[b];
        BinStats s{edges[b], edges[b + 1], a.n, {}, {}, {}, {}};
        if (a.n > 0) {
            s.mean_f = a.mean;
            s.max_f = a.max_f;
            s.max_delta_f = a.max_df;
            if (a.n > 1) s.sd_f = std::sqrt(a.m2 / double(a.n - 1));
        }
        out.bins.push_back(s);
    }
    return out;
}

}  // namespace volatix
