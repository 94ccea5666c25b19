#pragma once

// Exact citation-average arithmetic: the effect of one paper on a journal's
// citation average (its "volatility"), plus the top-cited-paper decomposition
// of a journal into an initial state and the paper that completed it.
//
// Counts are integers and every average is an exact Rational. Rounding only
// happens at display time (see format.hpp).

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "volatix/rational.hpp"

namespace volatix {

enum class MetricsErrc {
    invalid_size,        // biennial size of zero
    invalid_input,       // negative counts, inconsistent aggregate
    undefined_relative,  // relative change from a zero average
    singleton_journal,   // N_2Y = 1: no initial state once the top paper is removed
    empty_journal,
};

class MetricsError : public std::runtime_error {
public:
    MetricsError(MetricsErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    [[nodiscard]] MetricsErrc code() const { return code_; }

private:
    MetricsErrc code_;
};

enum class ItemType { article, review, front_matter };

std::string_view to_string(ItemType t);
std::optional<ItemType> parse_item_type(std::string_view text);

// A journal reduced to the three counts that decide its volatility.
struct JournalAggregate {
    std::string journal_id;
    std::string name;
    std::int64_t total_citations = 0;  // C: census-year citations to citable items of the prior two years
    std::int64_t n_2y = 0;             // N_2Y: citable items in the two-year window
    std::int64_t top_cited = 0;        // c*: citations of the single most cited item

    // Throws MetricsError(invalid_input) naming the broken invariant.
    void validate() const;

    friend bool operator==(const JournalAggregate&, const JournalAggregate&) = default;
};

struct PaperRecord {
    std::string journal_id;
    std::string paper_id;
    std::int64_t citations = 0;
    ItemType item_type = ItemType::article;

    // Only articles and reviews count toward C and N_2Y.
    [[nodiscard]] bool is_citable() const { return item_type != ItemType::front_matter; }
};

// Initial journal state (average f1 over n1 items) and a candidate paper cited c times.
struct VolatilityInputs {
    Rational f1;
    std::int64_t n1 = 1;
    std::int64_t c = 0;

    static VolatilityInputs from_counts(std::int64_t total_citations, std::int64_t n1, std::int64_t c);
    void validate() const;
};

struct VolatilityReport {
    std::string journal_id;
    std::string name;
    Rational f;       // with the top paper
    Rational f_star;  // without it
    std::int64_t c_star = 0;
    Rational delta_f;
    std::optional<Rational> delta_f_rel;  // empty when f_star == 0
    std::int64_t n_2y = 0;

    friend bool operator==(const VolatilityReport&, const VolatilityReport&) = default;
};

enum class PaperEffect { benefit, penalty, neutral };

std::string_view to_string(PaperEffect e);

// C / N.
Rational citation_average(std::int64_t total_citations, std::int64_t n);

// (C + c) / (N + 1): the average after one more item cited c times.
Rational updated_average(std::int64_t total_citations, std::int64_t n, std::int64_t c);

// (c - f1) / (n1 + 1). Positive iff c > f1, zero iff c == f1.
Rational volatility_exact(const VolatilityInputs& in);

// (c - f1) / (f1 (n1 + 1)). Throws undefined_relative when f1 == 0.
Rational volatility_relative_exact(const VolatilityInputs& in);

// c / C1. Close to the exact relative change only for c >> f1 and n1 >> 1.
// The gap is exactly exact * (c + C1) / (n1 (c - f1)), which stays below
// exact * (f1/c + 2/n1) once c >= f1 (1 + sqrt(n1 + 1)).
Rational volatility_relative_approx(std::int64_t c, std::int64_t total_citations);

// c / n1, the asymptotic gain from a paper far above the journal average.
Rational benefit_approx(std::int64_t c, std::int64_t n1);

// -f1 / (n1 + 1): the exact change caused by an uncited paper, which is the
// lowest value volatility_exact can take for the given journal.
Rational penalty_bound(const Rational& f1, std::int64_t n1);

// -f1 / n1, the looser large-journal form of the same bound.
Rational penalty_bound_asymptotic(const Rational& f1, std::int64_t n1);

PaperEffect classify_paper(std::int64_t c, const Rational& f1);

// Same classification with integer counts only: compares c * n1 against C1.
PaperEffect classify_paper(std::int64_t c, std::int64_t total_citations, std::int64_t n1);

// Splits a journal into its initial state (all but the top-cited item) and
// the top-cited item, and reports how much that item moved the average.
// Throws singleton_journal when n_2y == 1.
VolatilityReport top_paper_volatility(const JournalAggregate& agg);

// Aggregates one journal's raw item list (front matter ignored) and runs
// top_paper_volatility on the result.
std::pair<JournalAggregate, VolatilityReport> journal_report_from_papers(std::span<const PaperRecord> papers);

}  // namespace volatix
