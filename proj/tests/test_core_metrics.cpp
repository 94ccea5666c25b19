#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "volatix/core_metrics.hpp"

using namespace volatix;

namespace {

VolatilityInputs inputs(const char* f1, std::int64_t n1, std::int64_t c) { return {Rational::parse(f1), n1, c}; }

JournalAggregate agg(std::int64_t c, std::int64_t n, std::int64_t top, std::string id = "J") {
    return {id, id, c, n, top};
}

std::vector<PaperRecord> papers_of(const std::vector<std::int64_t>& cites, const std::string& id = "J") {
    std::vector<PaperRecord> out;
    for (std::size_t i = 0; i < cites.size(); ++i) out.push_back({id, "P" + std::to_string(i), cites[i], ItemType::article});
    return out;
}

}  // namespace

TEST_CASE("citation_average") {
    CHECK(citation_average(0, 10) == Rational(0));
    CHECK(citation_average(112, 6) == Rational(56, 3));
    CHECK(citation_average(112, 6).to_fixed(2) == "18.67");
    // C reconstructed as round(21.63 * 171) = 3699.
    CHECK(citation_average(3699, 171).to_fixed(2) == "21.63");

    SUBCASE("zero size is an invalid-size error") {
        try {
            citation_average(5, 0);
            FAIL("expected an error");
        } catch (const MetricsError& e) {
            CHECK(e.code() == MetricsErrc::invalid_size);
        }
    }
}

TEST_CASE("updated_average") {
    CHECK(updated_average(100, 99, 0) == Rational(1));
    CHECK(updated_average(25, 5, 87) == Rational(112, 6));
    CHECK(updated_average(25, 5, 87).to_fixed(2) == "18.67");
    CHECK(updated_average(10, 10, 1) == Rational(1));
    CHECK_THROWS_AS(updated_average(1, 1, -1), MetricsError);
}

TEST_CASE("volatility_exact") {
    CHECK(volatility_exact(inputs("5.00", 5, 87)) == Rational(82, 6));
    CHECK(volatility_exact(inputs("5.00", 5, 87)).to_fixed(2) == "13.67");
    CHECK(volatility_exact(inputs("7.70", 10, 97)) == Rational(893, 110));
    CHECK(volatility_exact(inputs("7.70", 10, 97)).to_fixed(2) == "8.12");
    CHECK(volatility_exact(inputs("3", 9, 3)) == Rational(0));
    CHECK_THROWS_AS(volatility_exact(inputs("3", 0, 3)), MetricsError);
}

TEST_CASE("volatility_relative_exact") {
    // Rounded initial averages move the result a little; 0.05 covers it.
    CHECK(std::abs(volatility_relative_exact(inputs("5.82", 170, 2708)).to_double() - 2.71) <= 0.02);
    CHECK(std::abs(volatility_relative_exact(inputs("0.22", 9, 9)).to_double() - 3.95) <= 0.05);
    CHECK(volatility_relative_exact(inputs("2", 99, 2)) == Rational(0));

    // From counts the published figures come out exactly.
    CHECK((volatility_relative_exact(VolatilityInputs::from_counts(991, 170, 2708)) * Rational(100)).to_fixed(0) == "271");
    CHECK((volatility_relative_exact(VolatilityInputs::from_counts(2, 9, 9)) * Rational(100)).to_fixed(0) == "395");

    try {
        volatility_relative_exact(inputs("0", 5, 3));
        FAIL("expected an error");
    } catch (const MetricsError& e) {
        CHECK(e.code() == MetricsErrc::undefined_relative);
    }
}

TEST_CASE("volatility_relative_approx") {
    const auto approx = volatility_relative_approx(2708, 991);
    CHECK(approx.to_fixed(3) == "2.733");
    const auto exact = volatility_relative_exact(VolatilityInputs::from_counts(991, 170, 2708));
    CHECK(exact.to_fixed(3) == "2.711");
    CHECK(approx > exact);

    CHECK(volatility_relative_approx(3790, 8935).to_fixed(3) == "0.424");
    CHECK(Rational(3790, 12725).to_fixed(3) == "0.298");
    CHECK(volatility_relative_approx(0, 100) == Rational(0));
    CHECK_THROWS_AS(volatility_relative_approx(5, 0), MetricsError);
}

TEST_CASE("benefit_approx") {
    CHECK(benefit_approx(100, 2000) == Rational(1, 20));
    CHECK(benefit_approx(1000, 20000) == Rational(1, 20));
    CHECK(benefit_approx(0, 10) == Rational(0));
}

TEST_CASE("penalty_bound") {
    CHECK(penalty_bound(Rational(10), 99) == Rational(-1, 10));
    const auto ca = penalty_bound(Rational::parse("171.83"), 52);
    CHECK(ca.to_fixed(2) == "-3.24");
    CHECK(ca == volatility_exact(inputs("171.83", 52, 0)));
    CHECK(penalty_bound(Rational(0), 5) == Rational(0));
    CHECK(penalty_bound_asymptotic(Rational(10), 100) == Rational(-1, 10));
    CHECK(penalty_bound_asymptotic(Rational(10), 99) < penalty_bound(Rational(10), 99));
}

TEST_CASE("classify_paper") {
    CHECK(classify_paper(97, Rational::parse("7.70")) == PaperEffect::benefit);
    CHECK(classify_paper(0, Rational::parse("2.5")) == PaperEffect::penalty);
    CHECK(classify_paper(3, Rational(3)) == PaperEffect::neutral);
    // Count form: c * n1 against C1.
    CHECK(classify_paper(3, 27, 9) == PaperEffect::neutral);
    CHECK(classify_paper(4, 27, 9) == PaperEffect::benefit);
    CHECK(classify_paper(2, 27, 9) == PaperEffect::penalty);
}

TEST_CASE("top_paper_volatility on published rows") {
    SUBCASE("CA-CANCER J CLIN") {
        const auto r = top_paper_volatility(agg(12725, 53, 3790));
        CHECK(r.f.to_fixed(2) == "240.09");
        CHECK(r.f_star.to_fixed(2) == "171.83");
        CHECK(r.delta_f.to_fixed(2) == "68.27");
        CHECK((*r.delta_f_rel * Rational(100)).to_fixed(0) == "40");
    }
    SUBCASE("CHINESE PHYS C") {
        const auto r = top_paper_volatility(agg(1383, 477, 1075));
        CHECK(r.f_star.to_fixed(3) == "0.647");
        CHECK(r.delta_f.to_fixed(2) == "2.25");
        CHECK(std::abs((*r.delta_f_rel * Rational(100)).to_double() - 350) <= 5);
    }
    SUBCASE("uniform journal") {
        const auto r = top_paper_volatility(agg(5, 5, 1));
        CHECK(r.delta_f == Rational(0));
        CHECK(r.delta_f_rel == Rational(0));
    }
    SUBCASE("singleton journal is rejected") {
        try {
            top_paper_volatility(agg(7, 1, 7));
            FAIL("expected an error");
        } catch (const MetricsError& e) {
            CHECK(e.code() == MetricsErrc::singleton_journal);
        }
    }
    SUBCASE("invalid aggregates") {
        CHECK_THROWS_AS(top_paper_volatility(agg(5, 5, 6)), MetricsError);
        CHECK_THROWS_AS(top_paper_volatility(agg(-1, 5, 0)), MetricsError);
        CHECK_THROWS_AS(top_paper_volatility(agg(5, 0, 0)), MetricsError);
    }
}

TEST_CASE("journal_report_from_papers") {
    SUBCASE("all citations on one paper") {
        const auto [a, r] = journal_report_from_papers(papers_of({3, 0, 0}));
        CHECK(a.total_citations == 3);
        CHECK(a.top_cited == 3);
        CHECK(r.f == Rational(1));
        CHECK(r.f_star == Rational(0));
        CHECK(r.delta_f == Rational(1));
        CHECK_FALSE(r.delta_f_rel.has_value());
    }
    SUBCASE("ETIKK PRAKSIS shape: 26 papers, C = 5, c* = 4") {
        std::vector<std::int64_t> cites(26, 0);
        cites[0] = 4;
        cites[1] = 1;
        const auto [a, r] = journal_report_from_papers(papers_of(cites));
        CHECK(a.n_2y == 26);
        CHECK(r.delta_f.to_fixed(2) == "0.15");
        CHECK((*r.delta_f_rel * Rational(100)).to_fixed(0) == "381");
    }
    SUBCASE("front matter is ignored") {
        auto papers = papers_of({4, 1, 0});
        papers.push_back({"J", "E1", 100, ItemType::front_matter});
        const auto [a, r] = journal_report_from_papers(papers);
        CHECK(a == agg(5, 3, 4));
    }
    SUBCASE("errors") {
        try {
            journal_report_from_papers({});
            FAIL("expected an error");
        } catch (const MetricsError& e) {
            CHECK(e.code() == MetricsErrc::empty_journal);
        }
        try {
            auto one = papers_of({5});
            one.push_back({"J", "E", 9, ItemType::front_matter});
            journal_report_from_papers(one);
            FAIL("expected an error");
        } catch (const MetricsError& e) {
            CHECK(e.code() == MetricsErrc::singleton_journal);
        }
        auto mixed = papers_of({1, 2});
        mixed.push_back({"K", "X", 1, ItemType::article});
        CHECK_THROWS_AS(journal_report_from_papers(mixed), MetricsError);
    }
}

TEST_CASE("property: report from papers matches brute-force removal of the top paper") {
    std::mt19937_64 gen(20240611);
    std::uniform_int_distribution<int> size(2, 50);
    std::geometric_distribution<std::int64_t> cites(0.2);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<std::int64_t> c(std::size_t(size(gen)));
        for (auto& x : c) x = cites(gen);
        const auto brute = oracle::top_paper_brute(c);
        const auto [a, r] = journal_report_from_papers(papers_of(c));
        REQUIRE(r == top_paper_volatility(a));
        REQUIRE(r.c_star == brute.c_star);
        REQUIRE(oracle::same(brute.f, r.f.num(), r.f.den()));
        REQUIRE(oracle::same(brute.f_star, r.f_star.num(), r.f_star.den()));
        REQUIRE(oracle::same(brute.delta_f, r.delta_f.num(), r.delta_f.den()));
    }
}

TEST_CASE("property: removing either of two tied top papers gives the same f*") {
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<std::int64_t> low(0, 20);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::int64_t> c(8);
        for (auto& x : c) x = low(gen);
        c[2] = c[6] = 50;
        std::vector<Rational> f_stars;
        for (std::size_t drop : {2u, 6u}) {
            std::int64_t rest = 0;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != drop) rest += c[i];
            f_stars.emplace_back(rest, std::int64_t(c.size()) - 1);
        }
        CHECK(f_stars[0] == f_stars[1]);
        CHECK(journal_report_from_papers(papers_of(c)).second.f_star == f_stars[0]);
    }
}

TEST_CASE("property: exact identities on random inputs") {
    std::mt19937_64 gen(12345);
    std::uniform_int_distribution<std::int64_t> C(0, 1'000'000), N(1, 100'000), c(0, 100'000);
    for (int i = 0; i < 20'000; ++i) {
        const auto total = C(gen), n = N(gen), paper = c(gen);
        REQUIRE(updated_average(total, n, paper) * Rational(n + 1) == Rational(total + paper));

        const auto in = VolatilityInputs::from_counts(total, n, paper);
        const auto df = volatility_exact(in);
        REQUIRE(df * Rational(n + 1) == Rational(paper) - in.f1);

        // Sign law in pure integers: c * n1 against C1.
        const __int128 lhs = __int128(paper) * n;
        REQUIRE(df.sign() == (lhs > total) - (lhs < total));

        const auto floor = penalty_bound(in.f1, n);
        REQUIRE(df >= floor);
        REQUIRE((df == floor) == (paper == 0));

        // Round trip: removing a paper then re-adding it restores the average.
        if (n >= 2 && paper <= total) {
            REQUIRE(updated_average(total - paper, n - 1, paper) == Rational(total, n));
        }
    }
}

TEST_CASE("property: strictly increasing in c, and halves when n1 + 1 doubles") {
    std::mt19937_64 gen(4);
    std::uniform_int_distribution<std::int64_t> C(0, 10'000), N(1, 5'000), c(0, 5'000);
    for (int i = 0; i < 5'000; ++i) {
        const auto total = C(gen), n = N(gen), paper = c(gen);
        const auto in = VolatilityInputs::from_counts(total, n, paper);
        auto next = in;
        next.c += 1;
        REQUIRE(volatility_exact(next) > volatility_exact(in));

        VolatilityInputs doubled{in.f1, 2 * (n + 1) - 1, paper};
        REQUIRE(volatility_exact(doubled) * Rational(2) == volatility_exact(in));
    }
}

TEST_CASE("property: c / C1 approximation error") {
    std::mt19937_64 gen(77);
    std::uniform_int_distribution<std::int64_t> C(1, 50'000), N(1, 5'000), c(0, 200'000);
    int checked_bound = 0;
    for (int i = 0; i < 20'000; ++i) {
        const auto total = C(gen), n = N(gen), paper = c(gen);
        const auto in = VolatilityInputs::from_counts(total, n, paper);
        if (!(Rational(paper) > in.f1)) continue;
        const auto exact = volatility_relative_exact(in);
        const auto approx = volatility_relative_approx(paper, total);
        const auto gap = approx - exact;
        // Exact form of the gap.
        REQUIRE(gap == exact * Rational(paper + total) / (Rational(n) * (Rational(paper) - in.f1)));
        // The f1/c + 2/n1 envelope holds once c >= f1 (1 + sqrt(n1 + 1)).
        const double f1 = in.f1.to_double();
        if (double(paper) >= f1 * (1.0 + std::sqrt(double(n + 1))) * (1 + 1e-12)) {
            ++checked_bound;
            REQUIRE(gap <= exact * (in.f1 / Rational(paper) + Rational(2, n)));
        }
    }
    CHECK(checked_bound > 1000);

    // Just above f1 the envelope does not hold: f1 = 1, n1 = 10, c = 2.
    const auto in = VolatilityInputs::from_counts(10, 10, 2);
    const auto exact = volatility_relative_exact(in);
    CHECK(volatility_relative_approx(2, 10) - exact > exact * (in.f1 / Rational(2) + Rational(2, 10)));
}
