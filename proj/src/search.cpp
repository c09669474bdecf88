#include "f2parity/search.hpp"

#include "f2parity/parallel.hpp"

#include "json.hpp"

#include <iomanip>
#include <sstream>

namespace f2parity {

Shape parse_shape(std::string_view text) {
    if (text == "trinomial") return Shape::trinomial;
    if (text == "pentanomial") return Shape::pentanomial;
    if (text == "any-support" || text == "any") return Shape::any_support;
    throw ParseError("unknown shape '" + std::string(text) + "' (trinomial|pentanomial|any-support)");
}

ExponentFilter parse_exponent_filter(std::string_view text) {
    if (text == "all") return ExponentFilter::all;
    if (text == "odd-only" || text == "odd") return ExponentFilter::odd_only;
    throw ParseError("unknown exponent filter '" + std::string(text) + "' (all|odd-only)");
}

M1Bound parse_m1_bound(std::string_view text) {
    if (text == "none") return M1Bound::none;
    if (text == "below-n-over-3" || text == "below") return M1Bound::below_n_over_3;
    if (text == "at-least-n-over-3" || text == "at-least") return M1Bound::at_least_n_over_3;
    throw ParseError("unknown m1 bound '" + std::string(text) + "' (none|below-n-over-3|at-least-n-over-3)");
}

OutputFormat parse_format(std::string_view text) {
    if (text == "jsonl") return OutputFormat::jsonl;
    if (text == "table") return OutputFormat::table;
    if (text == "csv") return OutputFormat::csv;
    throw ParseError("unknown format '" + std::string(text) + "' (jsonl|table|csv)");
}

void SearchQuery::validate() const {
    if (n_lo < 1) throw std::invalid_argument("search: n_lo must be at least 1");
    if (n_lo > n_hi) throw std::invalid_argument("search: empty degree range");
    for (int r : residues)
        if (r != 1 && r != 3 && r != 5 && r != 7)
            throw std::invalid_argument("search: residue filter must be a subset of {1,3,5,7}");
}

namespace {

bool degree_selected(const SearchQuery& q, int n) {
    if (q.exponents == ExponentFilter::odd_only && n % 2 == 0) return false;
    if (!q.residues.empty() && (n % 2 == 0 || !q.residues.count(n % 8))) return false;
    return true;
}

// Middle exponents eligible at degree n, descending.
std::vector<std::size_t> middle_choices(const SearchQuery& q, int n) {
    std::vector<std::size_t> out;
    for (int i = n - 1; i >= 1; --i) {
        if (q.exponents == ExponentFilter::odd_only && i % 2 == 0) continue;
        if (q.m1_bound == M1Bound::below_n_over_3 && 3 * i >= n) continue;
        out.push_back(static_cast<std::size_t>(i));
    }
    return out;
}

struct Enumerator {
    const SearchQuery& q;
    int n;
    const std::vector<std::size_t>& choices;
    const std::function<void(const BitPoly&)>& sink;
    std::vector<std::size_t> picked;

    void emit() const {
        BitPoly f = BitPoly::monomial(static_cast<std::size_t>(n)) + BitPoly::one();
        for (auto e : picked) f.flip(e);
        sink(f);
    }

    bool top_allowed(std::size_t e) const {
        return q.m1_bound != M1Bound::at_least_n_over_3 || 3 * e >= static_cast<std::size_t>(n);
    }

    // Exactly `want` more exponents taken from choices[from..].
    void fixed(std::size_t from, std::size_t want) {
        if (want == 0) {
            emit();
            return;
        }
        for (std::size_t k = from; k + want <= choices.size(); ++k) {
            if (picked.empty() && !top_allowed(choices[k])) continue;
            picked.push_back(choices[k]);
            fixed(k + 1, want - 1);
            picked.pop_back();
        }
    }

    // Any nonempty extension; a list is emitted after all its extensions.
    void any(std::size_t from) {
        for (std::size_t k = from; k < choices.size(); ++k) {
            if (picked.empty() && !top_allowed(choices[k])) continue;
            picked.push_back(choices[k]);
            any(k + 1);
            emit();
            picked.pop_back();
        }
    }
};

}  // namespace

void for_each_candidate(const SearchQuery& q, const std::function<void(const BitPoly&)>& sink) {
    q.validate();
    for (int n = q.n_lo; n <= q.n_hi; ++n) {
        if (!degree_selected(q, n)) continue;
        const auto choices = middle_choices(q, n);
        Enumerator e{q, n, choices, sink, {}};
        switch (q.shape) {
            case Shape::trinomial: e.fixed(0, 1); break;
            case Shape::pentanomial: e.fixed(0, 3); break;
            case Shape::any_support:
                if (choices.size() > kMaxAnySupportChoices)
                    throw std::invalid_argument("search: any-support at n=" + std::to_string(n) + " has " +
                                                std::to_string(choices.size()) + " free exponents (limit " +
                                                std::to_string(kMaxAnySupportChoices) + ")");
                e.any(0);
                break;
        }
    }
}

std::vector<BitPoly> enumerate_candidates(const SearchQuery& q) {
    std::vector<BitPoly> out;
    for_each_candidate(q, [&](const BitPoly& f) { out.push_back(f); });
    return out;
}

SearchRecord make_record(const BitPoly& f, bool full_check) {
    SearchRecord rec;
    const std::size_t deg = f.degree();
    rec.n = static_cast<int>(deg);
    rec.exponents = f.exponents();

    std::set<int> middle;
    for (auto e : rec.exponents)
        if (e != deg && e != 0) middle.insert(static_cast<int>(e));
    rec.m1_lt_n_over_3 = !middle.empty() && 3 * static_cast<std::size_t>(*middle.rbegin()) < deg;
    rec.am_single_trace = deg % 2 == 1 && f.coeff(0) && am_condition(f);

    const bool theorem_applies = deg % 2 == 1 && deg >= 5 && f.coeff(0) && validate_support(rec.n, middle);
    if (theorem_applies) rec.predicted_parity = theorem_parity(rec.n, middle);

    if (rec.predicted_parity == Parity::even && !full_check) {
        rec.irreducible = false;
        return rec;
    }
    rec.observed_parity = parity_of(count_factors_with_multiplicity(f));
    rec.irreducible = is_irreducible(f);
    return rec;
}

std::vector<SearchRecord> scan(const SearchQuery& q, const ScanOptions& options) {
    const auto candidates = enumerate_candidates(q);
    return parallel_map(candidates.size(), options.jobs,
                        [&](std::size_t i) { return make_record(candidates[i], options.full_check); });
}

std::size_t AuditReport::violations() const {
    std::size_t v = 0;
    for (const auto& row : rows)
        if (row.asserted) v += row.witnesses.size();
    return v;
}

AuditReport corollary_audit(int n_lo, int n_hi, std::size_t jobs) {
    if (n_lo > n_hi) throw std::invalid_argument("audit: empty degree range");
    std::vector<int> degrees;
    for (int n = std::max(n_lo, 3); n <= n_hi; ++n)
        if (n % 2 == 1) degrees.push_back(n);

    AuditReport report;
    report.rows = parallel_map(degrees.size(), jobs, [&](std::size_t idx) {
        AuditRow row;
        row.n = degrees[idx];
        row.residue = row.n % 8;
        row.asserted = row.residue == 3 || row.residue == 5;
        std::vector<std::size_t> odd_small;
        for (int i = 1; 3 * i < row.n; i += 2) odd_small.push_back(static_cast<std::size_t>(i));
        if (odd_small.size() > 30) throw std::invalid_argument("audit: n=" + std::to_string(row.n) + " too large");

        const BitPoly base = BitPoly::monomial(static_cast<std::size_t>(row.n)) + BitPoly::one();
        const std::uint64_t subsets = std::uint64_t{1} << odd_small.size();
        for (std::uint64_t mask = 1; mask < subsets; ++mask) {
            BitPoly f = base;
            for (std::size_t b = 0; b < odd_small.size(); ++b)
                if ((mask >> b) & 1u) f.flip(odd_small[b]);
            ++row.candidates;
            if (is_irreducible(f)) {
                ++row.irreducible;
                if (row.asserted) row.witnesses.push_back(f);
            }
        }
        return row;
    });
    return report;
}

namespace {

std::string parity_or_dash(const std::optional<Parity>& p) { return p ? to_string(*p) : "-"; }

std::string exponent_list(const std::vector<std::size_t>& exps) {
    std::string out;
    for (auto e : exps) {
        if (!out.empty()) out += ',';
        out += std::to_string(e);
    }
    return out;
}

}  // namespace

void write_records(std::ostream& os, const std::vector<SearchRecord>& records, OutputFormat format) {
    switch (format) {
        case OutputFormat::jsonl:
            for (const auto& r : records) {
                nlohmann::ordered_json j;
                j["n"] = r.n;
                j["exponents"] = r.exponents;
                j["irreducible"] = r.irreducible;
                j["am_single_trace"] = r.am_single_trace;
                j["m1_lt_n_over_3"] = r.m1_lt_n_over_3;
                if (r.predicted_parity) j["predicted_parity"] = to_string(*r.predicted_parity);
                if (r.observed_parity) j["observed_parity"] = to_string(*r.observed_parity);
                os << j.dump() << '\n';
            }
            break;
        case OutputFormat::csv:
            os << "n,exponents,irreducible,am_single_trace,m1_lt_n_over_3,predicted_parity,observed_parity\n";
            for (const auto& r : records) {
                os << r.n << ",\"" << exponent_list(r.exponents) << "\"," << r.irreducible << ','
                   << r.am_single_trace << ',' << r.m1_lt_n_over_3 << ','
                   << (r.predicted_parity ? to_string(*r.predicted_parity) : "") << ','
                   << (r.observed_parity ? to_string(*r.observed_parity) : "") << '\n';
            }
            break;
        case OutputFormat::table: {
            std::size_t width = 4;
            for (const auto& r : records) width = std::max(width, BitPoly::from_exponents(r.exponents).to_string().size());
            os << std::left << std::setw(5) << "n" << std::setw(static_cast<int>(width) + 2) << "poly"
               << std::setw(12) << "irreducible" << std::setw(10) << "am_trace" << std::setw(10) << "m1<n/3"
               << std::setw(11) << "predicted" << "observed\n";
            for (const auto& r : records) {
                os << std::left << std::setw(5) << r.n << std::setw(static_cast<int>(width) + 2)
                   << BitPoly::from_exponents(r.exponents).to_string() << std::setw(12)
                   << (r.irreducible ? "yes" : "no") << std::setw(10) << (r.am_single_trace ? "yes" : "no")
                   << std::setw(10) << (r.m1_lt_n_over_3 ? "yes" : "no") << std::setw(11)
                   << parity_or_dash(r.predicted_parity) << parity_or_dash(r.observed_parity) << '\n';
            }
            break;
        }
    }
}

void write_audit(std::ostream& os, const AuditReport& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::jsonl: {
            for (const auto& row : report.rows) {
                nlohmann::ordered_json j;
                j["n"] = row.n;
                j["residue"] = row.residue;
                j["asserted"] = row.asserted;
                j["candidates"] = row.candidates;
                j["irreducible"] = row.irreducible;
                std::vector<std::string> w;
                for (const auto& f : row.witnesses) w.push_back(f.to_string());
                j["witnesses"] = w;
                os << j.dump() << '\n';
            }
            nlohmann::ordered_json summary;
            summary["summary"] = {{"degrees", report.rows.size()}, {"violations", report.violations()}};
            os << summary.dump() << '\n';
            break;
        }
        case OutputFormat::csv:
            os << "n,residue,asserted,candidates,irreducible,witnesses\n";
            for (const auto& row : report.rows) {
                os << row.n << ',' << row.residue << ',' << row.asserted << ',' << row.candidates << ','
                   << row.irreducible << ",\"";
                for (std::size_t i = 0; i < row.witnesses.size(); ++i)
                    os << (i ? ";" : "") << row.witnesses[i].to_string();
                os << "\"\n";
            }
            break;
        case OutputFormat::table:
            os << std::left << std::setw(5) << "n" << std::setw(9) << "n mod 8" << std::setw(10) << "asserted"
               << std::setw(12) << "candidates" << "irreducible\n";
            for (const auto& row : report.rows) {
                os << std::left << std::setw(5) << row.n << std::setw(9) << row.residue << std::setw(10)
                   << (row.asserted ? "yes" : "no") << std::setw(12) << row.candidates << row.irreducible << '\n';
                for (const auto& f : row.witnesses) os << "  VIOLATION " << f.to_string() << '\n';
            }
            os << "violations=" << report.violations() << '\n';
            break;
    }
}

}  // namespace f2parity
