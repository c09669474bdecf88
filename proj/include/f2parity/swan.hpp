// Lifting F2 polynomials to Z, discriminant parity prediction, and the
// (n mod 8) factor-count parity rule for admissible supports.

#ifndef F2PARITY_SWAN_HPP
#define F2PARITY_SWAN_HPP

#include "f2parity/gf2poly.hpp"
#include "f2parity/intres.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace f2parity {

enum class Parity { odd, even };

inline Parity parity_of(std::size_t t) { return t % 2 ? Parity::odd : Parity::even; }
inline Parity flip(Parity p) { return p == Parity::odd ? Parity::even : Parity::odd; }
const char* to_string(Parity p);

/// Raised when a support falls outside the admissible exponent set
/// {i odd, 3i < n} u {i = n mod 4, 0 < i < n}.
class InvalidSupport : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Degree n and middle exponents S of f = x^n + sum_{i in S} x^i + 1.
class SupportSpec {
public:
    /// Throws std::invalid_argument for even n, n < 5, or i outside (0, n).
    SupportSpec(int n, std::set<int> support);

    /// "n=13;S=1,9" (S may be empty: "n=13;S=").
    static SupportSpec parse(std::string_view text);

    int n() const { return n_; }
    const std::set<int>& support() const { return support_; }
    bool valid() const { return valid_; }

    /// Empty when valid; otherwise names every offending exponent.
    std::string violation() const;

    BitPoly poly() const;
    std::string to_string() const;

    friend bool operator==(const SupportSpec& a, const SupportSpec& b) {
        return a.n_ == b.n_ && a.support_ == b.support_;
    }
    friend bool operator<(const SupportSpec& a, const SupportSpec& b) {
        return a.n_ != b.n_ ? a.n_ < b.n_ : a.support_ < b.support_;
    }

private:
    int n_;
    std::set<int> support_;
    bool valid_;
};

/// Membership of one exponent in the admissible set.
bool admissible_exponent(int n, int i);

/// Throws std::invalid_argument for even n.
bool validate_support(int n, const std::set<int>& support);

/// Odd iff n = +-1 mod 8. Throws InvalidSupport outside the admissible set.
Parity theorem_parity(int n, const std::set<int>& support);

/// Coefficient i is 1 iff x^i occurs in f.
IntPoly lift_01(const BitPoly& f);

/// Parity of the number of irreducible factors of a squarefree f, read off
/// disc(lift) mod 8. Throws std::domain_error for non-squarefree f and
/// std::logic_error if the residue is not 1 or 5.
Parity stickelberger_parity(const BitPoly& f, ResidueMethod method = ResidueMethod::exact);

/// n (n F - x F') for F monic of degree n with 0/1 coefficients.
IntPoly build_G(int n, const IntPoly& F);

struct GDecomposition {
    IntPoly g2;
    IntPoly g4;
};

/// Splits G = 4 G4 + 2 G2 + 1 (mod 8). Throws std::domain_error if the
/// congruence or the bounds 3 deg G2 < n, deg G4 < n fail.
GDecomposition decompose_G(const IntPoly& G, int n);

struct ParityReport {
    ParityReport(SupportSpec s, BitPoly f) : spec(std::move(s)), poly(std::move(f)) {}

    SupportSpec spec;
    BitPoly poly;
    bool squarefree = false;
    std::size_t t_distinct = 0;
    std::size_t t_multiplicity = 0;
    Residue8 disc_mod8;
    Parity predicted_parity = Parity::odd;
    Parity observed_parity = Parity::odd;
    bool agree = false;

    // Diagnostics, not part of the serialized record unless non-empty.
    Residue8 r_fg_mod8;
    std::vector<std::string> failures;
};

struct VerifyOptions {
    ResidueMethod method = ResidueMethod::exact;
    /// Also compare R(F, G) for padded and natural-degree G.
    bool check_padding = false;
};

/// Builds f, F, G, computes both sides of every identity in the parity
/// argument and the brute-force factor counts.
ParityReport verify_theorem_instance(const SupportSpec& spec, const VerifyOptions& options = {});

/// One JSON object, no trailing newline.
std::string to_json_line(const ParityReport& report);

}  // namespace f2parity

#endif  // F2PARITY_SWAN_HPP
