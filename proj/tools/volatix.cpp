// volatix: impact-factor volatility reports from journal citation data.
//
//   volatix ingest papers.csv --out journals.csv
//   volatix report journals.csv
//   volatix rank journals.csv --key rel --top 10
//   volatix thresholds journals.csv --key abs
//   volatix whatif --f 16.15 --n 33 --c 209
//   volatix synth config.json --seed 7 --out papers.csv
//   volatix scatter journals.csv --out scatter.csv
//
// Data goes to stdout (or --out); diagnostics go to stderr as JSON lines.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "volatix/analytics.hpp"
#include "volatix/csv.hpp"
#include "volatix/ingest.hpp"
#include "volatix/parallel.hpp"
#include "volatix/report_io.hpp"
#include "volatix/synthgen.hpp"

using namespace volatix;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    std::string format = "csv";
    bool exact = false;
    std::string out;
    std::string exclusions;

    [[nodiscard]] Format fmt() const { return format == "json" ? Format::json : Format::csv; }
    [[nodiscard]] NumberMode mode() const { return exact ? NumberMode::exact : NumberMode::display; }
};

void add_output_flags(CLI::App* cmd, OutputOptions& o, bool with_format = true) {
    if (with_format) cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--exact", o.exact, "write rationals as num/den instead of rounded decimals");
    cmd->add_option("--out", o.out, "output file (default: stdout)");
}

void diag(const nlohmann::json& j) { std::cerr << j.dump() << '\n'; }

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    fn(out);
    if (!out.flush()) throw std::runtime_error("write to '" + path + "' failed");
}

Ingested read_corpus(const std::string& path, std::optional<Schema> schema = std::nullopt) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    return load_corpus(in, schema);
}

ReportSet reports_for(const std::string& path, const OutputOptions& o) {
    auto ingested = read_corpus(path);
    auto set = compute_reports(ingested.corpus, worker_count());
    std::vector<Exclusion> all = ingested.log.exclusions;
    all.insert(all.end(), set.excluded.begin(), set.excluded.end());
    for (const auto& e : all) diag({{"journal_id", e.journal_id}, {"excluded", e.reason}});
    for (const auto& r : ingested.log.rejected_rows)
        diag({{"line", r.line}, {"journal_id", r.journal_id}, {"rejected", r.reason}});
    if (!o.exclusions.empty()) with_output(o.exclusions, [&](std::ostream& os) { write_exclusions(os, all); });
    return set;
}

RankKey parse_key(const std::string& k) { return k == "rel" || k == "relative" ? RankKey::relative : RankKey::absolute; }

std::vector<Rational> parse_cuts(const std::vector<std::string>& raw, RankKey key) {
    std::vector<Rational> cuts;
    for (const auto& s : raw) {
        std::string text = s;
        if (!text.empty() && text.back() == '%') text.pop_back();
        Rational v;
        try {
            v = Rational::parse(text);
        } catch (const std::invalid_argument&) {
            throw UsageError("invalid cut '" + s + "'");
        }
        cuts.push_back(key == RankKey::relative ? v / Rational(100) : v);
    }
    return cuts;
}

int cmd_whatif(const std::string& f_text, const std::string& n_text, const std::string& c_text,
               const OutputOptions& o) {
    VolatilityInputs in;
    try {
        in.f1 = Rational::parse(f_text);
        in.n1 = std::stoll(n_text);
        in.c = std::stoll(c_text);
        if (std::to_string(in.n1) != n_text || std::to_string(in.c) != c_text) throw std::invalid_argument("n, c");
        in.validate();
    } catch (const std::exception&) {
        throw UsageError("whatif needs --f >= 0 (decimal or num/den), integer --n >= 1 and integer --c >= 0");
    }
    const auto mode = o.mode();
    std::optional<Rational> rel;
    if (!in.f1.is_zero()) rel = volatility_relative_exact(in);
    const std::vector<std::pair<std::string, std::string>> fields = {
        {"f1", render_average(in.f1, mode)},
        {"n1", std::to_string(in.n1)},
        {"c", std::to_string(in.c)},
        {"classification", std::string(to_string(classify_paper(in.c, in.f1)))},
        {"delta_f", render_average(volatility_exact(in), mode)},
        {"delta_f_rel", render_percent(rel, mode)},
        {"benefit_approx", render_average(benefit_approx(in.c, in.n1), mode)},
        {"penalty_floor", render_average(penalty_bound(in.f1, in.n1), mode)},
        {"penalty_floor_asymptotic", render_average(penalty_bound_asymptotic(in.f1, in.n1), mode)},
        {"break_even_c", render_average(in.f1, mode)},
    };
    with_output(o.out, [&](std::ostream& os) {
        if (o.fmt() == Format::json) {
            nlohmann::json j = nlohmann::json::object();
            for (const auto& [k, v] : fields) {
                if (k == "classification" || mode == NumberMode::exact)
                    j[k] = v;
                else
                    j[k] = v.empty() ? nlohmann::json(nullptr) : nlohmann::json::parse(v);
            }
            os << j.dump(2) << '\n';
            return;
        }
        std::vector<std::string> header, row;
        for (const auto& [k, v] : fields) {
            header.push_back(k);
            row.push_back(v);
        }
        csv::write_row(os, header);
        csv::write_row(os, row);
    });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Impact-factor volatility toolkit"};
    app.require_subcommand(1);

    std::string input, schema_flag = "auto", key = "abs", config_path;
    std::size_t top = 10;
    std::vector<std::string> cuts;
    std::string f_text, n_text, c_text;
    std::optional<std::uint64_t> seed;
    OutputOptions o;

    auto* ingest = app.add_subcommand("ingest", "parse and clean a papers.csv or journals.csv file");
    ingest->add_option("input", input, "input CSV")->required();
    ingest->add_option("--schema", schema_flag, "auto, papers or journals")
        ->check(CLI::IsMember({"auto", "papers", "journals", "a", "b"}));
    ingest->add_option("--out", o.out, "cleaned corpus as journals.csv (default: stdout)");

    auto* report = app.add_subcommand("report", "per-journal top-paper volatility");
    report->add_option("corpus", input, "papers.csv or journals.csv")->required();
    add_output_flags(report, o);
    report->add_option("--exclusions", o.exclusions, "write excluded journals to this CSV");

    auto* rank = app.add_subcommand("rank", "top-k journals by volatility");
    rank->add_option("corpus", input, "papers.csv or journals.csv")->required();
    rank->add_option("--key", key, "abs or rel")->check(CLI::IsMember({"abs", "rel", "absolute", "relative"}));
    rank->add_option("--top", top, "number of rows");
    add_output_flags(rank, o);
    rank->add_option("--exclusions", o.exclusions, "write excluded journals to this CSV");

    auto* thresholds = app.add_subcommand("thresholds", "count journals above volatility thresholds");
    thresholds->add_option("corpus", input, "papers.csv or journals.csv")->required();
    thresholds->add_option("--key", key, "abs or rel")->check(CLI::IsMember({"abs", "rel", "absolute", "relative"}));
    thresholds->add_option("--cuts", cuts, "increasing thresholds; percent for --key rel")->delimiter(',');
    add_output_flags(thresholds, o);
    thresholds->add_option("--exclusions", o.exclusions, "write excluded journals to this CSV");

    auto* whatif = app.add_subcommand("whatif", "effect of one paper on a journal's average");
    whatif->add_option("--f", f_text, "current citation average")->required();
    whatif->add_option("--n", n_text, "current number of citable items")->required();
    whatif->add_option("--c", c_text, "citations of the candidate paper")->required();
    add_output_flags(whatif, o);

    auto* synth = app.add_subcommand("synth", "generate a synthetic papers.csv");
    synth->add_option("config", config_path, "JSON generator config (default settings when omitted)");
    synth->add_option("--seed", seed, "override the config seed");
    synth->add_option("--out", o.out, "output papers.csv (default: stdout)");

    auto* scatter = app.add_subcommand("scatter", "n_2y vs volatility points");
    scatter->add_option("corpus", input, "papers.csv or journals.csv")->required();
    scatter->add_option("--out", o.out, "output scatter.csv (default: stdout)");
    scatter->add_flag("--exact", o.exact, "write rationals as num/den");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) {
            std::optional<Schema> schema;
            if (schema_flag == "papers" || schema_flag == "a") schema = Schema::paper_level;
            if (schema_flag == "journals" || schema_flag == "b") schema = Schema::aggregate;
            auto ingested = read_corpus(input, schema);
            with_output(o.out, [&](std::ostream& os) { write_aggregate_csv(os, ingested.corpus); });
            diag({{"cleaning_log", ingested.log.to_json()},
                  {"schema", to_string(ingested.corpus.provenance.schema)},
                  {"sha256", ingested.corpus.provenance.sha256}});
            for (const auto& r : ingested.log.rejected_rows)
                diag({{"line", r.line}, {"journal_id", r.journal_id}, {"rejected", r.reason}});
            for (const auto& e : ingested.log.exclusions) diag({{"journal_id", e.journal_id}, {"excluded", e.reason}});
        } else if (*report) {
            auto set = reports_for(input, o);
            with_output(o.out, [&](std::ostream& os) { write_reports(os, set.reports, o.fmt(), o.mode()); });
        } else if (*rank) {
            auto set = reports_for(input, o);
            auto table = rank_by_volatility(set.reports, parse_key(key), top);
            for (const auto& e : table.excluded) diag({{"journal_id", e.journal_id}, {"excluded", e.reason}});
            with_output(o.out, [&](std::ostream& os) { write_ranked(os, table, o.fmt(), o.mode()); });
        } else if (*thresholds) {
            const auto k = parse_key(key);
            const auto list = cuts.empty() ? (k == RankKey::absolute ? default_absolute_cuts() : default_relative_cuts())
                                           : parse_cuts(cuts, k);
            auto set = reports_for(input, o);
            ThresholdTable table;
            try {
                table = threshold_table(set.reports, k, list);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            with_output(o.out, [&](std::ostream& os) { write_thresholds(os, table, o.fmt(), o.mode()); });
        } else if (*whatif) {
            return cmd_whatif(f_text, n_text, c_text, o);
        } else if (*synth) {
            SynthConfig cfg;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw std::runtime_error("cannot read '" + config_path + "'");
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(in);
                } catch (const nlohmann::json::exception& e) {
                    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
                }
                cfg = SynthConfig::from_json(j);
            }
            if (seed) cfg.seed = *seed;
            const auto corpus = generate_corpus(cfg, worker_count());
            with_output(o.out, [&](std::ostream& os) { corpus.write_papers_csv(os); });
            diag({{"journals", corpus.journals.size()}, {"papers", corpus.paper_count()}, {"config", cfg.to_json()}});
        } else if (*scatter) {
            auto set = reports_for(input, o);
            const auto points = scatter_data(set.reports);
            with_output(o.out, [&](std::ostream& os) { write_scatter(os, points, o.mode()); });
        }
    } catch (const UsageError& e) {
        diag({{"error", e.what()}, {"kind", "usage"}});
        return 2;
    } catch (const csv::ParseError& e) {
        diag({{"error", e.what()}, {"kind", "parse"}, {"line", e.line()}, {"column", e.column()}});
        return 1;
    } catch (const std::exception& e) {
        diag({{"error", e.what()}});
        return 1;
    }
    return 0;
}
