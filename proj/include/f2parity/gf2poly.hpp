// Polynomials over F2, packed into 64-bit words (bit i = coefficient of x^i).

#ifndef F2PARITY_GF2POLY_HPP
#define F2PARITY_GF2POLY_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace f2parity {

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Element of F2[x]. The word vector never carries trailing zero words, so
/// the zero polynomial is the empty vector and equality is word equality.
class BitPoly {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitPoly() = default;
    BitPoly(std::initializer_list<std::size_t> exponents);

    static BitPoly zero() { return {}; }
    static BitPoly one() { return monomial(0); }
    static BitPoly monomial(std::size_t exponent);
    static BitPoly from_exponents(const std::vector<std::size_t>& exponents);
    static BitPoly from_words(std::vector<Word> words);

    bool is_zero() const { return words_.empty(); }
    bool is_one() const { return words_.size() == 1 && words_[0] == 1; }

    /// Throws std::domain_error for the zero polynomial.
    std::size_t degree() const;

    bool coeff(std::size_t i) const;
    void set_coeff(std::size_t i, bool value);
    void flip(std::size_t i);

    /// Exponents present, descending.
    std::vector<std::size_t> exponents() const;
    std::size_t term_count() const;

    const std::vector<Word>& words() const { return words_; }

    BitPoly& operator+=(const BitPoly& other);
    /// XOR `other * x^shift` into *this.
    void add_shifted(const BitPoly& other, std::size_t shift);

    friend bool operator==(const BitPoly&, const BitPoly&) = default;

    /// Canonical symbolic form, e.g. "x^21+x^7+1"; "0" for zero.
    std::string to_string() const;
    std::string to_hex() const;

private:
    void trim();

    std::vector<Word> words_;
};

BitPoly operator+(BitPoly f, const BitPoly& g);
BitPoly mul(const BitPoly& f, const BitPoly& g);
inline BitPoly operator*(const BitPoly& f, const BitPoly& g) { return mul(f, g); }

/// Quotient and remainder; throws std::domain_error when g is zero.
std::pair<BitPoly, BitPoly> divmod(const BitPoly& f, const BitPoly& g);
BitPoly rem(const BitPoly& f, const BitPoly& g);
BitPoly quot(const BitPoly& f, const BitPoly& g);

/// Throws std::domain_error when both inputs are zero.
BitPoly gcd(BitPoly f, BitPoly g);

BitPoly derivative_f2(const BitPoly& f);

/// Square root of a perfect square (all odd coefficients zero): halves every
/// exponent. Throws std::domain_error otherwise.
BitPoly sqrt_f2(const BitPoly& f);

/// Accepts "x^21+x^7+1", "21,7,0" (strictly descending) and "0x200081".
BitPoly parse_poly(std::string_view text);

bool is_squarefree(const BitPoly& f);

/// Kernel dimension of Q - I for the Frobenius matrix Q of F2[x]/f; this is
/// the number of distinct irreducible factors of f.
std::size_t count_distinct_irreducible_factors(const BitPoly& f);

struct SquarefreePart {
    BitPoly factor;
    std::size_t multiplicity;

    friend bool operator==(const SquarefreePart&, const SquarefreePart&) = default;
};

/// Pairwise coprime squarefree parts, sorted by multiplicity.
std::vector<SquarefreePart> squarefree_decomposition(const BitPoly& f);

std::size_t count_factors_with_multiplicity(const BitPoly& f);

bool is_irreducible(const BitPoly& f);

struct TraceSpectrum {
    std::size_t n = 0;
    std::vector<std::uint8_t> bits;  // bits[i] = Tr(alpha^i)

    /// I = {i : Tr(alpha^i) = 1}.
    std::vector<std::size_t> support() const;
};

/// Traces of 1, alpha, ..., alpha^{n-1} via Newton's power-sum recurrence.
/// Refuses reducible input.
TraceSpectrum trace_spectrum(const BitPoly& f);

/// Odd degree, and every exponent other than the degree and 0 is odd.
/// Throws std::domain_error on even degree.
bool am_condition(const BitPoly& f);

}  // namespace f2parity

#endif  // F2PARITY_GF2POLY_HPP
