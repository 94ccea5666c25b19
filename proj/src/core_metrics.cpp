#include "volatix/core_metrics.hpp"

#include <algorithm>

namespace volatix {

namespace {

[[noreturn]] void fail(MetricsErrc code, const std::string& what) { throw MetricsError(code, what); }

void require_size(std::int64_t n) {
    if (n < 1) fail(MetricsErrc::invalid_size, "journal size must be at least 1, got " + std::to_string(n));
}

void require_count(std::int64_t v, const char* what) {
    if (v < 0) fail(MetricsErrc::invalid_input, std::string(what) + " must be non-negative, got " + std::to_string(v));
}

}  // namespace

std::string_view to_string(ItemType t) {
    switch (t) {
        case ItemType::article: return "article";
        case ItemType::review: return "review";
        case ItemType::front_matter: return "front_matter";
    }
    return "unknown";
}

std::optional<ItemType> parse_item_type(std::string_view text) {
    if (text == "article") return ItemType::article;
    if (text == "review") return ItemType::review;
    if (text == "front_matter") return ItemType::front_matter;
    return std::nullopt;
}

std::string_view to_string(PaperEffect e) {
    switch (e) {
        case PaperEffect::benefit: return "benefit";
        case PaperEffect::penalty: return "penalty";
        case PaperEffect::neutral: return "neutral";
    }
    return "unknown";
}

void JournalAggregate::validate() const {
    const std::string who = "journal '" + journal_id + "': ";
    if (n_2y < 1) fail(MetricsErrc::invalid_input, who + "n_2y must be at least 1");
    if (total_citations < 0) fail(MetricsErrc::invalid_input, who + "total_citations is negative");
    if (top_cited < 0) fail(MetricsErrc::invalid_input, who + "top_cited is negative");
    if (top_cited > total_citations) fail(MetricsErrc::invalid_input, who + "top_cited exceeds total_citations");
    if (n_2y == 1 && top_cited != total_citations)
        fail(MetricsErrc::invalid_input, who + "single-item journal must have top_cited == total_citations");
}

VolatilityInputs VolatilityInputs::from_counts(std::int64_t total_citations, std::int64_t n1, std::int64_t c) {
    require_size(n1);
    require_count(total_citations, "total_citations");
    VolatilityInputs in{citation_average(total_citations, n1), n1, c};
    in.validate();
    return in;
}

void VolatilityInputs::validate() const {
    require_size(n1);
    require_count(c, "c");
    if (f1.sign() < 0) fail(MetricsErrc::invalid_input, "initial average must be non-negative");
}

Rational citation_average(std::int64_t total_citations, std::int64_t n) {
    require_size(n);
    require_count(total_citations, "total_citations");
    return Rational(total_citations, n);
}

Rational updated_average(std::int64_t total_citations, std::int64_t n, std::int64_t c) {
    require_size(n);
    require_count(total_citations, "total_citations");
    require_count(c, "c");
    return Rational(total_citations + c, n + 1);
}

Rational volatility_exact(const VolatilityInputs& in) {
    in.validate();
    return (Rational(in.c) - in.f1) / Rational(in.n1 + 1);
}

Rational volatility_relative_exact(const VolatilityInputs& in) {
    in.validate();
    if (in.f1.is_zero()) fail(MetricsErrc::undefined_relative, "relative volatility is undefined for a zero average");
    return (Rational(in.c) - in.f1) / (in.f1 * Rational(in.n1 + 1));
}

Rational volatility_relative_approx(std::int64_t c, std::int64_t total_citations) {
    require_count(c, "c");
    require_count(total_citations, "total_citations");
    if (total_citations == 0) fail(MetricsErrc::undefined_relative, "c / C1 is undefined for C1 = 0");
    return Rational(c, total_citations);
}

Rational benefit_approx(std::int64_t c, std::int64_t n1) {
    require_size(n1);
    require_count(c, "c");
    return Rational(c, n1);
}

Rational penalty_bound(const Rational& f1, std::int64_t n1) {
    require_size(n1);
    if (f1.sign() < 0) fail(MetricsErrc::invalid_input, "initial average must be non-negative");
    return -f1 / Rational(n1 + 1);
}

Rational penalty_bound_asymptotic(const Rational& f1, std::int64_t n1) {
    require_size(n1);
    if (f1.sign() < 0) fail(MetricsErrc::invalid_input, "initial average must be non-negative");
    return -f1 / Rational(n1);
}

PaperEffect classify_paper(std::int64_t c, const Rational& f1) {
    require_count(c, "c");
    const auto cmp = Rational(c) <=> f1;
    if (cmp > 0) return PaperEffect::benefit;
    if (cmp < 0) return PaperEffect::penalty;
    return PaperEffect::neutral;
}

PaperEffect classify_paper(std::int64_t c, std::int64_t total_citations, std::int64_t n1) {
    require_size(n1);
    require_count(c, "c");
    require_count(total_citations, "total_citations");
    const auto cmp = __int128(c) * n1 <=> __int128(total_citations);
    if (cmp > 0) return PaperEffect::benefit;
    if (cmp < 0) return PaperEffect::penalty;
    return PaperEffect::neutral;
}

VolatilityReport top_paper_volatility(const JournalAggregate& agg) {
    agg.validate();
    if (agg.n_2y == 1)
        fail(MetricsErrc::singleton_journal,
             "journal '" + agg.journal_id + "' has a single citable item; no initial state exists");

    VolatilityReport r;
    r.journal_id = agg.journal_id;
    r.name = agg.name;
    r.n_2y = agg.n_2y;
    r.c_star = agg.top_cited;
    r.f = citation_average(agg.total_citations, agg.n_2y);
    r.f_star = citation_average(agg.total_citations - agg.top_cited, agg.n_2y - 1);
    r.delta_f = r.f - r.f_star;
    if (!r.f_star.is_zero()) r.delta_f_rel = r.delta_f / r.f_star;
    return r;
}

std::pair<JournalAggregate, VolatilityReport> journal_report_from_papers(std::span<const PaperRecord> papers) {
    if (papers.empty()) fail(MetricsErrc::empty_journal, "no papers given");

    JournalAggregate agg;
    agg.journal_id = papers.front().journal_id;
    agg.name = agg.journal_id;
    for (const auto& p : papers) {
        if (p.journal_id != agg.journal_id)
            fail(MetricsErrc::invalid_input, "papers from more than one journal: '" + agg.journal_id + "' and '" +
                                                 p.journal_id + "'");
        require_count(p.citations, "citations");
        if (!p.is_citable()) continue;
        agg.total_citations += p.citations;
        agg.top_cited = std::max(agg.top_cited, p.citations);
        ++agg.n_2y;
    }
    if (agg.n_2y < 2)
        fail(MetricsErrc::singleton_journal, "journal '" + agg.journal_id + "' has fewer than 2 citable papers");
    auto report = top_paper_volatility(agg);
    return {std::move(agg), std::move(report)};
}

}  // namespace volatix
