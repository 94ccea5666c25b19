#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "volatix/core_metrics.hpp"
#include "volatix/csv.hpp"

namespace volatix {

// Schema A: papers.csv, one row per item.
inline constexpr const char* kPaperHeader[] = {"journal_id", "journal_name", "paper_id", "item_type", "citations"};
// Schema B: journals.csv, one row per journal.
inline constexpr const char* kAggregateHeader[] = {"journal_id", "journal_name", "total_citations", "n_2y",
                                                   "top_paper_citations"};

// Per-row citation cap; sums are accumulated in 64 bits.
inline constexpr std::int64_t kMaxRowCitations = 2147483647;

enum class Schema { paper_level, aggregate };

struct Provenance {
    Schema schema = Schema::aggregate;
    std::string sha256;  // hex digest of the bytes read
};

struct RowIssue {
    std::size_t line = 0;
    std::string journal_id;
    std::string reason;
};

// Journal-level removal (duplicate, zero citations, nothing citable).
struct Exclusion {
    std::string journal_id;
    std::string reason;
};

// Exact citation accounting across parse and clean:
// read == kept + front_matter + removed + rejected.
struct CitationLedger {
    std::int64_t read = 0;
    std::int64_t kept = 0;
    std::int64_t front_matter = 0;
    std::int64_t removed = 0;   // in journals dropped as duplicates or zero/NA
    std::int64_t rejected = 0;  // in rows rejected with a reason

    [[nodiscard]] bool balanced() const { return read == kept + front_matter + removed + rejected; }
};

struct CleaningLog {
    std::int64_t duplicates_removed = 0;
    std::int64_t zero_or_na_removed = 0;
    std::int64_t singletons_excluded = 0;
    std::int64_t rows_read = 0;
    std::int64_t journals_kept = 0;

    // Detail behind the counters; not part of the serialized form.
    std::vector<RowIssue> rejected_rows;
    std::vector<Exclusion> exclusions;
    CitationLedger citations;

    // Folds a later stage's log into this one. journals_kept and
    // singletons_excluded describe the final corpus, so they are taken from `later`.
    CleaningLog& merge(const CleaningLog& later);

    // The five counters, nothing else.
    [[nodiscard]] nlohmann::json to_json() const;
};

struct Corpus {
    std::vector<JournalAggregate> journals;
    std::optional<std::vector<PaperRecord>> papers;  // only when requested from schema A
    Provenance provenance;
};

struct Ingested {
    Corpus corpus;
    CleaningLog log;
};

struct ParseOptions {
    // Retain every paper row in Corpus::papers. Memory then grows with the
    // row count, so leave this off for large inputs.
    bool keep_papers = false;
};

// Single streaming pass over schema A. State is one accumulator per journal.
// The result is sorted by journal_id and does not depend on row order.
// Malformed input throws csv::ParseError; bad values reject only their row.
Ingested parse_paper_level(std::istream& in, const ParseOptions& options = {});

// Schema B. Rows keep file order so duplicate resolution can see it.
Ingested parse_aggregate(std::istream& in);

// Drops repeated journal_ids (first occurrence wins) and journals with zero
// citations, and sorts the survivors by journal_id.
Ingested dedupe_and_filter(Corpus raw);

// Reads the header to pick a schema, parses, then cleans. The returned log
// covers both stages.
Ingested load_corpus(std::istream& in, std::optional<Schema> schema = std::nullopt);

// Writes a corpus as schema B.
void write_aggregate_csv(std::ostream& out, const Corpus& corpus);

std::string_view to_string(Schema s);

}  // namespace volatix
