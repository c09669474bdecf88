// Candidate enumeration for sparse polynomials over F2, irreducibility
// screening, and the audit of odd-exponent irreducibles with a small
// second-highest exponent.

#ifndef F2PARITY_SEARCH_HPP
#define F2PARITY_SEARCH_HPP

#include "f2parity/gf2poly.hpp"
#include "f2parity/swan.hpp"

#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace f2parity {

enum class Shape { trinomial, pentanomial, any_support };
enum class ExponentFilter { all, odd_only };
enum class M1Bound { none, below_n_over_3, at_least_n_over_3 };

Shape parse_shape(std::string_view text);
ExponentFilter parse_exponent_filter(std::string_view text);
M1Bound parse_m1_bound(std::string_view text);

struct SearchQuery {
    int n_lo = 0;
    int n_hi = 0;
    Shape shape = Shape::trinomial;
    ExponentFilter exponents = ExponentFilter::all;
    M1Bound m1_bound = M1Bound::none;
    /// Allowed values of n mod 8; empty means no filter. Restricting the
    /// residues excludes even n.
    std::set<int> residues;

    /// Throws std::invalid_argument describing the first problem.
    void validate() const;
};

struct SearchRecord {
    int n = 0;
    std::vector<std::size_t> exponents;  // descending, first = n, last = 0
    bool irreducible = false;
    bool am_single_trace = false;
    bool m1_lt_n_over_3 = false;
    std::optional<Parity> predicted_parity;
    /// Absent when the irreducibility test was skipped because the
    /// predicted parity was even.
    std::optional<Parity> observed_parity;
};

/// Largest support size accepted for the any-support shape.
inline constexpr std::size_t kMaxAnySupportChoices = 24;

/// Calls sink once per candidate, ascending n, then lexicographically
/// descending exponent lists.
void for_each_candidate(const SearchQuery& q, const std::function<void(const BitPoly&)>& sink);
std::vector<BitPoly> enumerate_candidates(const SearchQuery& q);

struct ScanOptions {
    std::size_t jobs = 1;
    /// Run the factor count even where the parity rule already rules out irreducibility.
    bool full_check = false;
};

SearchRecord make_record(const BitPoly& f, bool full_check);
std::vector<SearchRecord> scan(const SearchQuery& q, const ScanOptions& options = {});

struct AuditRow {
    int n = 0;
    int residue = 0;       // n mod 8
    bool asserted = false; // n = +-3 mod 8: irreducibles would be violations
    std::size_t candidates = 0;
    std::size_t irreducible = 0;
    std::vector<BitPoly> witnesses;
};

struct AuditReport {
    std::vector<AuditRow> rows;
    std::size_t violations() const;
};

/// For each odd n in range, tests every x^n + sum x^i + 1 with nonempty S of
/// odd i, 3i < n, for irreducibility with the full factor count.
AuditReport corollary_audit(int n_lo, int n_hi, std::size_t jobs = 1);

enum class OutputFormat { jsonl, table, csv };
OutputFormat parse_format(std::string_view text);

void write_records(std::ostream& os, const std::vector<SearchRecord>& records, OutputFormat format);
void write_audit(std::ostream& os, const AuditReport& report, OutputFormat format);

}  // namespace f2parity

#endif  // F2PARITY_SEARCH_HPP
