#include "volatix/ingest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <memory>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "volatix/csv.hpp"

namespace volatix {

namespace {

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
            throw std::runtime_error("sha256: init failed");
    }
    void update(std::string_view bytes) { EVP_DigestUpdate(ctx_.get(), bytes.data(), bytes.size()); }
    std::string hex() {
        unsigned char md[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        EVP_DigestFinal_ex(ctx_.get(), md, &len);
        std::ostringstream os;
        for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
        return os.str();
    }

private:
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("citation total exceeds 64-bit range");
    return out;
}

bool is_na(std::string_view s) { return s.empty() || s == "NA" || s == "N/A" || s == "na"; }

enum class CountParse { ok, na, out_of_range };

// Integer field; anything that is neither an integer nor NA is malformed.
CountParse parse_count(std::string_view s, std::int64_t& out, std::size_t line, std::size_t column,
                       std::string_view name) {
    if (is_na(s)) return CountParse::na;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc::result_out_of_range) return CountParse::out_of_range;
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw csv::ParseError(line, column, std::string(name) + " is not an integer: '" + std::string(s) + "'");
    return CountParse::ok;
}

template <std::size_t N>
bool header_matches(const std::vector<std::string>& fields, const char* const (&expected)[N]) {
    if (fields.size() != N) return false;
    for (std::size_t i = 0; i < N; ++i) {
        std::string_view f = fields[i];
        // Tolerate a UTF-8 byte order mark on the first column.
        if (i == 0 && f.starts_with("\xEF\xBB\xBF")) f.remove_prefix(3);
        if (f != expected[i]) return false;
    }
    return true;
}

void require_width(const std::vector<std::string>& fields, std::size_t width, std::size_t line) {
    if (fields.size() != width)
        throw csv::ParseError(line, std::min(fields.size(), width) + 1,
                              "expected " + std::to_string(width) + " fields, found " + std::to_string(fields.size()));
}

struct JournalAccumulator {
    std::string name;
    std::int64_t citations = 0;
    std::int64_t citable = 0;
    std::int64_t top = 0;
};

Ingested parse_paper_body(csv::Reader& reader, const ParseOptions& options) {
    Ingested out;
    auto& log = out.log;
    out.corpus.provenance.schema = Schema::paper_level;
    if (options.keep_papers) out.corpus.papers.emplace();

    std::unordered_map<std::string, JournalAccumulator> journals;
    std::vector<std::string> row;
    while (reader.next(row)) {
        const std::size_t line = reader.record_line();
        require_width(row, 5, line);
        ++log.rows_read;

        const std::string& journal_id = row[0];
        if (journal_id.empty()) throw csv::ParseError(line, 1, "empty journal_id");
        auto reject = [&](std::string reason) { log.rejected_rows.push_back({line, journal_id, std::move(reason)}); };

        std::int64_t citations = 0;
        switch (parse_count(row[4], citations, line, 5, "citations")) {
            case CountParse::na: reject("citations not available"); continue;
            case CountParse::out_of_range: reject("citations exceed the per-row cap"); continue;
            case CountParse::ok: break;
        }
        if (citations < 0) {
            reject("negative citations");
            continue;
        }
        if (citations > kMaxRowCitations) {
            reject("citations exceed the per-row cap");
            continue;
        }
        log.citations.read = checked_add(log.citations.read, citations);

        const auto type = parse_item_type(row[3]);
        if (!type) {
            reject("unknown item_type '" + row[3] + "'");
            log.citations.rejected += citations;
            continue;
        }

        auto& acc = journals[journal_id];
        if (acc.name.empty() || (!row[1].empty() && row[1] < acc.name)) acc.name = row[1];
        if (*type == ItemType::front_matter) {
            log.citations.front_matter += citations;
        } else {
            acc.citations = checked_add(acc.citations, citations);
            acc.top = std::max(acc.top, citations);
            ++acc.citable;
        }
        if (out.corpus.papers) out.corpus.papers->push_back({journal_id, row[2], citations, *type});
    }

    out.corpus.journals.reserve(journals.size());
    for (auto& [id, acc] : journals) {
        if (acc.citable == 0) {
            // Only front matter: no citable items, so no average exists.
            ++log.zero_or_na_removed;
            log.exclusions.push_back({id, "no citable items"});
            continue;
        }
        out.corpus.journals.push_back({id, acc.name.empty() ? id : acc.name, acc.citations, acc.citable, acc.top});
    }
    std::sort(out.corpus.journals.begin(), out.corpus.journals.end(),
              [](const auto& a, const auto& b) { return a.journal_id < b.journal_id; });
    std::sort(log.exclusions.begin(), log.exclusions.end(),
              [](const auto& a, const auto& b) { return a.journal_id < b.journal_id; });
    for (const auto& j : out.corpus.journals) log.citations.kept += j.total_citations;
    log.journals_kept = std::int64_t(out.corpus.journals.size());
    return out;
}

Ingested parse_aggregate_body(csv::Reader& reader) {
    Ingested out;
    auto& log = out.log;
    out.corpus.provenance.schema = Schema::aggregate;

    std::vector<std::string> row;
    while (reader.next(row)) {
        const std::size_t line = reader.record_line();
        require_width(row, 5, line);
        ++log.rows_read;

        JournalAggregate agg;
        agg.journal_id = row[0];
        agg.name = row[1].empty() ? row[0] : row[1];
        if (agg.journal_id.empty()) throw csv::ParseError(line, 1, "empty journal_id");
        auto reject = [&](std::string reason) {
            log.rejected_rows.push_back({line, agg.journal_id, std::move(reason)});
        };

        const CountParse parsed[] = {
            parse_count(row[2], agg.total_citations, line, 3, "total_citations"),
            parse_count(row[3], agg.n_2y, line, 4, "n_2y"),
            parse_count(row[4], agg.top_cited, line, 5, "top_paper_citations"),
        };
        if (std::ranges::any_of(parsed, [](CountParse p) { return p == CountParse::out_of_range; })) {
            reject("count exceeds 64-bit range");
            continue;
        }
        if (std::ranges::any_of(parsed, [](CountParse p) { return p == CountParse::na; })) {
            ++log.zero_or_na_removed;
            log.exclusions.push_back({agg.journal_id, "mandatory field not available"});
            continue;
        }
        if (agg.total_citations < 0 || agg.top_cited < 0 || agg.n_2y < 0) {
            reject("negative count");
            continue;
        }
        log.citations.read = checked_add(log.citations.read, agg.total_citations);
        try {
            agg.validate();
        } catch (const MetricsError& e) {
            reject(e.what());
            log.citations.rejected += agg.total_citations;
            continue;
        }
        out.corpus.journals.push_back(std::move(agg));
    }
    for (const auto& j : out.corpus.journals) log.citations.kept += j.total_citations;
    log.journals_kept = std::int64_t(out.corpus.journals.size());
    return out;
}

template <std::size_t N>
[[noreturn]] void bad_header(const char* const (&expected)[N]) {
    std::string want;
    for (std::size_t i = 0; i < N; ++i) want += (i ? "," : "") + std::string(expected[i]);
    throw csv::ParseError(1, 1, "header must be '" + want + "'");
}

}  // namespace

std::string_view to_string(Schema s) { return s == Schema::paper_level ? "paper_level" : "aggregate"; }

CleaningLog& CleaningLog::merge(const CleaningLog& later) {
    duplicates_removed += later.duplicates_removed;
    zero_or_na_removed += later.zero_or_na_removed;
    rows_read += later.rows_read;
    singletons_excluded = later.singletons_excluded;
    journals_kept = later.journals_kept;
    rejected_rows.insert(rejected_rows.end(), later.rejected_rows.begin(), later.rejected_rows.end());
    exclusions.insert(exclusions.end(), later.exclusions.begin(), later.exclusions.end());
    citations.read += later.citations.read;
    citations.front_matter += later.citations.front_matter;
    citations.removed += later.citations.removed;
    citations.rejected += later.citations.rejected;
    citations.kept = later.citations.kept;
    return *this;
}

nlohmann::json CleaningLog::to_json() const {
    return {{"duplicates_removed", duplicates_removed},   {"zero_or_na_removed", zero_or_na_removed},
            {"singletons_excluded", singletons_excluded}, {"rows_read", rows_read},
            {"journals_kept", journals_kept}};
}

Ingested parse_paper_level(std::istream& in, const ParseOptions& options) {
    csv::Reader reader(in);
    Sha256 digest;
    reader.on_bytes([&](std::string_view b) { digest.update(b); });
    std::vector<std::string> header;
    Ingested out;
    if (reader.next(header)) {
        if (!header_matches(header, kPaperHeader)) bad_header(kPaperHeader);
        out = parse_paper_body(reader, options);
    }
    out.corpus.provenance = {Schema::paper_level, digest.hex()};
    return out;
}

Ingested parse_aggregate(std::istream& in) {
    csv::Reader reader(in);
    Sha256 digest;
    reader.on_bytes([&](std::string_view b) { digest.update(b); });
    std::vector<std::string> header;
    Ingested out;
    if (reader.next(header)) {
        if (!header_matches(header, kAggregateHeader)) bad_header(kAggregateHeader);
        out = parse_aggregate_body(reader);
    }
    out.corpus.provenance = {Schema::aggregate, digest.hex()};
    return out;
}

Ingested dedupe_and_filter(Corpus raw) {
    Ingested out;
    auto& log = out.log;
    out.corpus.provenance = raw.provenance;
    out.corpus.papers = std::move(raw.papers);

    std::unordered_set<std::string> seen;
    for (auto& j : raw.journals) {
        if (!seen.insert(j.journal_id).second) {
            ++log.duplicates_removed;
            log.citations.removed += j.total_citations;
            log.exclusions.push_back({j.journal_id, "duplicate journal_id"});
            continue;
        }
        if (j.total_citations == 0) {
            ++log.zero_or_na_removed;
            log.exclusions.push_back({j.journal_id, "zero citations"});
            continue;
        }
        out.corpus.journals.push_back(std::move(j));
    }
    std::stable_sort(out.corpus.journals.begin(), out.corpus.journals.end(),
                     [](const auto& a, const auto& b) { return a.journal_id < b.journal_id; });

    if (out.corpus.papers) {
        std::unordered_set<std::string> kept;
        for (const auto& j : out.corpus.journals) kept.insert(j.journal_id);
        std::erase_if(*out.corpus.papers, [&](const PaperRecord& p) { return !kept.contains(p.journal_id); });
    }

    for (const auto& j : out.corpus.journals) {
        log.citations.kept += j.total_citations;
        if (j.n_2y == 1) ++log.singletons_excluded;
    }
    log.journals_kept = std::int64_t(out.corpus.journals.size());
    return out;
}

Ingested load_corpus(std::istream& in, std::optional<Schema> schema) {
    csv::Reader reader(in);
    Sha256 digest;
    reader.on_bytes([&](std::string_view b) { digest.update(b); });

    std::vector<std::string> header;
    Ingested parsed;
    if (reader.next(header)) {
        const bool is_a = header_matches(header, kPaperHeader);
        const bool is_b = header_matches(header, kAggregateHeader);
        if (!schema) {
            if (!is_a && !is_b) throw csv::ParseError(1, 1, "header matches neither papers.csv nor journals.csv schema");
            schema = is_a ? Schema::paper_level : Schema::aggregate;
        }
        if (*schema == Schema::paper_level) {
            if (!is_a) bad_header(kPaperHeader);
            parsed = parse_paper_body(reader, {});
        } else {
            if (!is_b) bad_header(kAggregateHeader);
            parsed = parse_aggregate_body(reader);
        }
    }
    parsed.corpus.provenance = {schema.value_or(Schema::aggregate), digest.hex()};

    auto cleaned = dedupe_and_filter(std::move(parsed.corpus));
    parsed.log.merge(cleaned.log);
    return {std::move(cleaned.corpus), std::move(parsed.log)};
}

void write_aggregate_csv(std::ostream& out, const Corpus& corpus) {
    csv::write_row(out, {kAggregateHeader[0], kAggregateHeader[1], kAggregateHeader[2], kAggregateHeader[3],
                         kAggregateHeader[4]});
    for (const auto& j : corpus.journals)
        csv::write_row(out, {j.journal_id, j.name, std::to_string(j.total_citations), std::to_string(j.n_2y),
                             std::to_string(j.top_cited)});
}

}  // namespace volatix
