#include "doctest.h"

#include "f2parity/search.hpp"
#include "json.hpp"
#include "oracles.hpp"

#include <sstream>

using namespace f2parity;

namespace {

SearchQuery query(int lo, int hi, Shape shape, ExponentFilter filter = ExponentFilter::all) {
    SearchQuery q;
    q.n_lo = lo;
    q.n_hi = hi;
    q.shape = shape;
    q.exponents = filter;
    return q;
}

std::vector<std::string> strings(const std::vector<BitPoly>& polys) {
    std::vector<std::string> out;
    for (const auto& p : polys) out.push_back(p.to_string());
    return out;
}

const SearchRecord* find(const std::vector<SearchRecord>& recs, const std::string& poly) {
    for (const auto& r : recs)
        if (BitPoly::from_exponents(r.exponents).to_string() == poly) return &r;
    return nullptr;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("option parsers") {
    CHECK(parse_shape("pentanomial") == Shape::pentanomial);
    CHECK(parse_shape("any-support") == Shape::any_support);
    CHECK(parse_exponent_filter("odd-only") == ExponentFilter::odd_only);
    CHECK(parse_m1_bound("below-n-over-3") == M1Bound::below_n_over_3);
    CHECK(parse_format("jsonl") == OutputFormat::jsonl);
    CHECK_THROWS(parse_shape("tetranomial"));
    CHECK_THROWS(parse_format("xml"));
}

TEST_CASE("query validation") {
    CHECK_THROWS_AS(query(9, 7, Shape::trinomial).validate(), std::invalid_argument);
    CHECK_THROWS_AS(query(0, 7, Shape::trinomial).validate(), std::invalid_argument);
    auto q = query(5, 9, Shape::trinomial);
    q.residues = {2};
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    q.residues = {1, 7};
    CHECK_NOTHROW(q.validate());
}

TEST_CASE("enumeration examples") {
    CHECK(strings(enumerate_candidates(query(7, 7, Shape::trinomial, ExponentFilter::odd_only))) ==
          std::vector<std::string>{"x^7+x^5+1", "x^7+x^3+1", "x^7+x+1"});
    CHECK(enumerate_candidates(query(5, 5, Shape::pentanomial, ExponentFilter::odd_only)).empty());
    const auto eight = enumerate_candidates(query(8, 8, Shape::trinomial));
    REQUIRE(eight.size() == 7);
    CHECK(eight.front().to_string() == "x^8+x^7+1");
    CHECK(eight.back().to_string() == "x^8+x+1");
}

TEST_CASE("enumeration counts and order") {
    const auto p9 = enumerate_candidates(query(9, 9, Shape::pentanomial));
    REQUIRE(p9.size() == 56);
    CHECK(p9.front().to_string() == "x^9+x^8+x^7+x^6+1");
    CHECK(p9.back().to_string() == "x^9+x^3+x^2+x+1");
    for (std::size_t i = 1; i < p9.size(); ++i) CHECK(p9[i - 1].exponents() > p9[i].exponents());

    CHECK(enumerate_candidates(query(5, 5, Shape::any_support)).size() == 15);
    // odd-only skips even degrees
    for (const auto& f : enumerate_candidates(query(4, 12, Shape::trinomial, ExponentFilter::odd_only)))
        CHECK(f.degree() % 2 == 1);
    auto q = query(5, 13, Shape::trinomial);
    q.residues = {3, 5};
    std::set<std::size_t> degrees;
    for (const auto& f : enumerate_candidates(q)) degrees.insert(f.degree());
    CHECK(degrees == std::set<std::size_t>{5, 11, 13});
}

TEST_CASE("m1 bound filter") {
    auto q = query(7, 7, Shape::trinomial, ExponentFilter::odd_only);
    q.m1_bound = M1Bound::below_n_over_3;
    CHECK(strings(enumerate_candidates(q)) == std::vector<std::string>{"x^7+x+1"});
    q.m1_bound = M1Bound::at_least_n_over_3;
    CHECK(strings(enumerate_candidates(q)) == std::vector<std::string>{"x^7+x^5+1", "x^7+x^3+1"});
}

TEST_CASE("scan examples") {
    const auto r21 = scan(query(21, 21, Shape::trinomial, ExponentFilter::odd_only));
    const SearchRecord* w = find(r21, "x^21+x^7+1");
    REQUIRE(w);
    CHECK(w->irreducible);
    CHECK(w->am_single_trace);
    CHECK_FALSE(w->m1_lt_n_over_3);
    CHECK_FALSE(w->predicted_parity);
    CHECK(w->exponents == std::vector<std::size_t>{21, 7, 0});

    const auto r11 = scan(query(11, 11, Shape::trinomial));
    const SearchRecord* t = find(r11, "x^11+x+1");
    REQUIRE(t);
    CHECK(t->predicted_parity == Parity::even);
    CHECK_FALSE(t->irreducible);
    CHECK_FALSE(t->observed_parity);
    const SearchRecord full = make_record(parse_poly("x^11+x+1"), true);
    CHECK(full.observed_parity == Parity::even);
    CHECK(rem(parse_poly("x^11+x+1"), parse_poly("x^2+x+1")).is_zero());

    const auto r7 = scan(query(7, 7, Shape::trinomial));
    CHECK(find(r7, "x^7+x^3+1")->irreducible);
}

TEST_CASE("scan records agree with trial division through degree 13") {
    const auto table = oracle::irreducibles(6);
    const auto recs = scan(query(3, 13, Shape::pentanomial), {2, true});
    for (const auto& r : recs) {
        oracle::Mask m = 0;
        for (auto e : r.exponents) m |= oracle::Mask{1} << e;
        const auto counts = oracle::trial_division(m, table);
        CHECK(r.irreducible == (counts.with_multiplicity == 1));
        REQUIRE(r.observed_parity);
        CHECK(*r.observed_parity == (counts.with_multiplicity % 2 ? Parity::odd : Parity::even));
    }
}

TEST_CASE("predicted parity equals observed parity for valid supports") {
    for (Shape shape : {Shape::trinomial, Shape::pentanomial}) {
        const auto recs = scan(query(5, shape == Shape::trinomial ? 61 : 27, shape), {4, true});
        std::size_t predicted = 0;
        for (const auto& r : recs) {
            if (!r.predicted_parity) continue;
            ++predicted;
            REQUIRE(r.observed_parity);
            CHECK(*r.predicted_parity == *r.observed_parity);
        }
        CHECK(predicted > 0);
    }
}

TEST_CASE("parity shortcut never hides an irreducible") {
    const auto q = query(5, 25, Shape::pentanomial, ExponentFilter::odd_only);
    const auto fast = scan(q, {2, false});
    const auto full = scan(q, {2, true});
    REQUIRE(fast.size() == full.size());
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i].irreducible == full[i].irreducible);
}

TEST_CASE("am_single_trace matches the trace spectrum for odd n <= 31") {
    std::size_t checked = 0;
    for (Shape shape : {Shape::trinomial, Shape::pentanomial}) {
        const auto recs = scan(query(3, shape == Shape::trinomial ? 31 : 23, shape, ExponentFilter::all), {4, true});
        for (const auto& r : recs) {
            if (!r.irreducible || r.n % 2 == 0) continue;
            const auto spectrum = trace_spectrum(BitPoly::from_exponents(r.exponents));
            CHECK(r.am_single_trace == (spectrum.support().size() == 1));
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("output is stable and independent of the job count") {
    const auto q = query(5, 21, Shape::pentanomial, ExponentFilter::odd_only);
    for (OutputFormat fmt : {OutputFormat::jsonl, OutputFormat::csv, OutputFormat::table}) {
        std::ostringstream a, b;
        write_records(a, scan(q, {1, false}), fmt);
        write_records(b, scan(q, {4, false}), fmt);
        CHECK(a.str() == b.str());
        CHECK_FALSE(a.str().empty());
    }
}

TEST_CASE("jsonl record fields") {
    std::ostringstream os;
    write_records(os, scan(query(7, 7, Shape::trinomial, ExponentFilter::odd_only)), OutputFormat::jsonl);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    const auto j = nlohmann::ordered_json::parse(line);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"n", "exponents", "irreducible", "am_single_trace", "m1_lt_n_over_3",
                                           "observed_parity"});
    CHECK(j["exponents"] == nlohmann::json::array({7, 5, 0}));
}

TEST_CASE("audit examples") {
    const auto report = corollary_audit(7, 13);
    REQUIRE(report.rows.size() == 4);
    const AuditRow& r7 = report.rows[0];
    CHECK(r7.n == 7);
    CHECK_FALSE(r7.asserted);
    CHECK(r7.candidates == 1);
    CHECK(r7.irreducible == 1);
    for (std::size_t k : {2u, 3u}) {
        const AuditRow& row = report.rows[k];
        CHECK(row.asserted);
        CHECK(row.candidates == 3);
        CHECK(row.irreducible == 0);
    }
    CHECK(report.violations() == 0);
    CHECK_THROWS_AS(corollary_audit(9, 7), std::invalid_argument);
}

TEST_CASE("audit counts agree with trial division through degree 13") {
    const auto table = oracle::irreducibles(6);
    for (const auto& row : corollary_audit(5, 13).rows) {
        std::size_t candidates = 0, irreducible = 0;
        std::vector<int> odd;
        for (int i = 1; 3 * i < row.n; i += 2) odd.push_back(i);
        for (unsigned mask = 1; mask < (1u << odd.size()); ++mask) {
            oracle::Mask f = (oracle::Mask{1} << row.n) | 1;
            for (std::size_t b = 0; b < odd.size(); ++b)
                if ((mask >> b) & 1) f |= oracle::Mask{1} << odd[b];
            ++candidates;
            if (oracle::trial_division(f, table).with_multiplicity == 1) ++irreducible;
        }
        CHECK(row.candidates == candidates);
        CHECK(row.irreducible == irreducible);
    }
}

TEST_CASE("audit output") {
    const auto report = corollary_audit(5, 15, 2);
    std::ostringstream table, jsonl;
    write_audit(table, report, OutputFormat::table);
    CHECK(table.str().find("violations=0\n") != std::string::npos);
    write_audit(jsonl, report, OutputFormat::jsonl);
    const std::string text = jsonl.str();
    const auto last = text.rfind('\n', text.size() - 2);
    const auto summary = nlohmann::json::parse(text.substr(last + 1));
    CHECK(summary["summary"]["violations"] == 0);
    CHECK(summary["summary"]["degrees"] == 6);
}

}  // TEST_SUITE
