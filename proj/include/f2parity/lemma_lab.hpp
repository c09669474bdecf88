// Random instance generators and conclusion checkers for the mod-8
// determinant lemmas behind R(F, G) = 1 (mod 8).
//
// Every generator's output is re-checked against its lemma's hypotheses
// before the conclusion is tested; a hypothesis failure is reported as
// HypothesisViolation, never as a counterexample.

#ifndef F2PARITY_LEMMA_LAB_HPP
#define F2PARITY_LEMMA_LAB_HPP

#include "f2parity/intres.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace f2parity {

enum class LemmaId { d, l1a, l1b, l2, general };

const char* to_string(LemmaId id);
/// Accepts "D"/"d", "L1a"/"l1a", "L1b"/"l1b", "L2"/"l2", "GENERAL"/"general".
LemmaId parse_lemma_id(std::string_view text);

class HypothesisViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Square or rectangular matrix over Z/8Z, row-major.
class Mod8Matrix {
public:
    Mod8Matrix() = default;
    Mod8Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, 0) {}
    static Mod8Matrix from_int(const IntMatrix& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, unsigned v) { entries_[r * cols_ + c] = static_cast<std::uint8_t>(v & 7u); }
    const std::vector<std::uint8_t>& entries() const { return entries_; }

    IntMatrix to_int() const;

    friend bool operator==(const Mod8Matrix&, const Mod8Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> entries_;
};

struct LemmaParams {
    std::size_t size = 0;  // D
    std::size_t n = 0;     // L1, L2, GENERAL
    std::size_t m = 0;     // L2, GENERAL (derived n - 4)
    std::size_t s = 0;     // L1, GENERAL (derived floor((n-1)/3))

    friend bool operator==(const LemmaParams&, const LemmaParams&) = default;
};

/// Polynomials of a resultant instance: f = x^n + 4 F0 + 2 F1 + F2 and
/// g = 2H + 1 (variant a), or f = x^n + 2 F0 + F1 and g = 4H + 1 (variant b).
struct ResultantPair {
    IntPoly h, f0, f1, f2;
    IntPoly f, g;
};

struct LemmaInstance {
    LemmaId lemma = LemmaId::d;
    LemmaParams params;
    std::uint64_t seed = 0;
    Mod8Matrix matrix;                  // D, L2, GENERAL
    std::optional<ResultantPair> pair;  // L1a, L1b
};

/// Empty when the instance satisfies its lemma's hypotheses, otherwise the
/// first violated condition.
std::optional<std::string> hypothesis_violation(const LemmaInstance& inst);

/// Hypotheses of the general lemma (H1-H5) for an (m + n) square matrix with
/// m = n - 4, indices as in the lemma (1-based rows of X then Y).
std::optional<std::string> general_violation(const Mod8Matrix& m, std::size_t n);

LemmaInstance gen_d_instance(std::uint64_t seed, std::size_t size);
LemmaInstance gen_l1_instance(std::uint64_t seed, char variant, std::size_t n, std::size_t s);
LemmaInstance gen_l2_matrix(std::uint64_t seed, std::size_t m, std::size_t n);
LemmaInstance gen_general_matrix(std::uint64_t seed, std::size_t n);

/// Re-checks hypotheses (throwing HypothesisViolation), then tests the conclusion.
bool check_d(const LemmaInstance& inst);
bool check_l1(const LemmaInstance& inst);
bool check_l2(const LemmaInstance& inst);
bool check_general(const LemmaInstance& inst);
bool check_instance(const LemmaInstance& inst);

std::string to_replay_json(const LemmaInstance& inst);
/// Throws ParseError on malformed input.
LemmaInstance from_replay_json(std::string_view text);

struct CampaignConfig {
    LemmaId lemma = LemmaId::d;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    /// Parameter sets cycled over trials; defaults per lemma when empty.
    std::vector<LemmaParams> params;
};

struct CampaignResult {
    std::size_t trials = 0;  // evaluated; a counterexample ends the run
    std::size_t passed = 0;
    std::size_t rejected = 0;  // generator output failing its own re-check
    std::optional<LemmaInstance> counterexample;
    std::optional<LemmaInstance> first_rejected;

    bool ok() const { return !counterexample && rejected == 0 && passed == trials; }
};

std::vector<LemmaParams> default_params(LemmaId lemma);

/// Per-instance seed for trial `index` of a campaign.
std::uint64_t instance_seed(std::uint64_t campaign_seed, std::size_t index);

LemmaInstance generate(LemmaId lemma, const LemmaParams& params, std::uint64_t seed);

CampaignResult run_campaign(const CampaignConfig& config);

}  // namespace f2parity

#endif  // F2PARITY_LEMMA_LAB_HPP
