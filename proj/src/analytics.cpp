#include "volatix/analytics.hpp"

#include <algorithm>
#include <stdexcept>

#include "volatix/parallel.hpp"

namespace volatix {

std::string_view to_string(RankKey k) { return k == RankKey::absolute ? "absolute" : "relative"; }

ReportSet compute_reports(const Corpus& corpus, unsigned threads) {
    const auto& journals = corpus.journals;
    std::vector<std::optional<VolatilityReport>> slots(journals.size());
    std::vector<std::string> reasons(journals.size());
    parallel_for(journals.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                slots[i] = top_paper_volatility(journals[i]);
            } catch (const MetricsError& e) {
                if (e.code() != MetricsErrc::singleton_journal) throw;
                reasons[i] = "single citable item";
            }
        }
    });

    ReportSet out;
    out.reports.reserve(journals.size());
    for (std::size_t i = 0; i < journals.size(); ++i) {
        if (slots[i])
            out.reports.push_back(std::move(*slots[i]));
        else
            out.excluded.push_back({journals[i].journal_id, std::move(reasons[i])});
    }
    return out;
}

RankedTable rank_by_volatility(std::span<const VolatilityReport> reports, RankKey key, std::size_t k) {
    RankedTable table;
    table.key = key;
    table.k = k;

    std::vector<const VolatilityReport*> pool;
    pool.reserve(reports.size());
    for (const auto& r : reports) {
        if (key == RankKey::relative && !r.delta_f_rel) {
            table.excluded.push_back({r.journal_id, "relative volatility undefined (f_star = 0)"});
            continue;
        }
        pool.push_back(&r);
    }

    auto key_of = [key](const VolatilityReport& r) -> const Rational& {
        return key == RankKey::absolute ? r.delta_f : *r.delta_f_rel;
    };
    auto before = [&](const VolatilityReport* a, const VolatilityReport* b) {
        if (auto c = key_of(*a) <=> key_of(*b); c != 0) return c > 0;
        if (auto c = a->delta_f <=> b->delta_f; c != 0) return c > 0;
        return a->journal_id < b->journal_id;
    };

    const std::size_t take = std::min(k, pool.size());
    std::partial_sort(pool.begin(), pool.begin() + std::ptrdiff_t(take), pool.end(), before);
    table.rows.reserve(take);
    for (std::size_t i = 0; i < take; ++i) table.rows.push_back(*pool[i]);
    return table;
}

ThresholdTable threshold_table(std::span<const VolatilityReport> reports, RankKey key,
                               std::span<const Rational> thresholds) {
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (!(thresholds[i - 1] < thresholds[i]))
            throw std::invalid_argument("thresholds must be strictly increasing");

    // Sorted values let each threshold be answered by one binary search.
    std::vector<Rational> values;
    values.reserve(reports.size());
    for (const auto& r : reports) {
        if (key == RankKey::absolute)
            values.push_back(r.delta_f);
        else if (r.delta_f_rel)
            values.push_back(*r.delta_f_rel);
    }
    std::sort(values.begin(), values.end());

    ThresholdTable table;
    table.key = key;
    table.journals_ranked = std::int64_t(values.size());
    for (const auto& t : thresholds) {
        const auto above = std::int64_t(values.end() - std::upper_bound(values.begin(), values.end(), t));
        const Rational percent =
            table.journals_ranked == 0 ? Rational(0) : Rational(above * 100, table.journals_ranked);
        table.rows.push_back({t, above, percent});
    }
    return table;
}

std::vector<Rational> default_absolute_cuts() {
    return {Rational(1, 10), Rational(1, 4), Rational(1, 2), Rational(3, 4), 1, Rational(3, 2), 2, 3, 4, 5, 10, 50};
}

std::vector<Rational> default_relative_cuts() {
    std::vector<Rational> cuts;
    for (std::int64_t pct : {10, 20, 25, 30, 40, 50, 60, 70, 80, 90, 100, 300}) cuts.emplace_back(pct, 100);
    return cuts;
}

std::vector<ScatterPoint> scatter_data(std::span<const VolatilityReport> reports) {
    std::vector<ScatterPoint> points;
    points.reserve(reports.size());
    for (const auto& r : reports) points.push_back({r.journal_id, r.n_2y, r.delta_f, r.delta_f_rel});
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        if (a.n_2y != b.n_2y) return a.n_2y < b.n_2y;
        return a.journal_id < b.journal_id;
    });
    return points;
}

CorpusSummary dataset_summary(const Corpus& corpus) {
    CorpusSummary s;
    s.journals = std::int64_t(corpus.journals.size());
    for (const auto& j : corpus.journals) {
        s.papers += j.n_2y;
        s.citations += j.total_citations;
    }
    return s;
}

}  // namespace volatix
