// Integer polynomials, Sylvester matrices, exact determinants and resultants.

#ifndef F2PARITY_INTRES_HPP
#define F2PARITY_INTRES_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace f2parity {

/// Value in Z/8Z.
class Residue8 {
public:
    constexpr Residue8() = default;
    constexpr explicit Residue8(unsigned v) : value_(static_cast<std::uint8_t>(v & 7u)) {}

    static Residue8 of(const mpz_class& v);
    static constexpr Residue8 of(long long v) {
        return Residue8(static_cast<unsigned>(((v % 8) + 8) % 8));
    }

    constexpr unsigned value() const { return value_; }

    friend constexpr bool operator==(Residue8, Residue8) = default;
    friend constexpr Residue8 operator*(Residue8 a, Residue8 b) { return Residue8(a.value_ * b.value_); }
    friend constexpr Residue8 operator+(Residue8 a, Residue8 b) { return Residue8(a.value_ + b.value_); }

private:
    std::uint8_t value_ = 0;
};

/// Dense integer polynomial, coeffs[i] = coefficient of x^i. Leading zeros are
/// stripped except for an explicit declared degree, which pads the polynomial
/// for Sylvester-matrix purposes.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly monomial(std::size_t exponent, const mpz_class& c = 1);
    /// "21:1,7:1,0:1"; throws ParseError.
    static IntPoly parse(std::string_view text);

    bool is_zero() const { return coeffs_.empty(); }
    /// Actual degree; throws std::domain_error for zero.
    std::size_t degree() const;
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    mpz_class coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }
    mpz_class leading() const;

    const std::optional<std::size_t>& declared_degree() const { return declared_; }
    /// Degree used to size the Sylvester matrix: declared if present, else actual (0 for zero).
    std::size_t sylvester_degree() const;
    /// Throws std::invalid_argument if d is below the actual degree.
    IntPoly padded_to(std::size_t d) const;
    IntPoly unpadded() const;

    mpz_class eval(const mpz_class& x) const;

    /// Coefficient-mod-8 image with entries in 0..7.
    IntPoly mod8() const;

    /// Value equality; declared degree ignored.
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string() const;

private:
    void trim();

    std::vector<mpz_class> coeffs_;
    std::optional<std::size_t> declared_;
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const mpz_class& c, const IntPoly& a);
IntPoly derivative(const IntPoly& f);
/// x * f
IntPoly shift_up(const IntPoly& f, std::size_t k = 1);
/// f = q*g + r for monic g.
std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& f, const IntPoly& g);

class IntMatrix {
public:
    IntMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    mpz_class& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const mpz_class& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    const std::vector<mpz_class>& entries() const { return entries_; }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<mpz_class> entries_;
};

/// m rows of f-coefficients then n rows of g-coefficients, highest degree
/// first, each row shifted one column right of the previous.
IntMatrix sylvester(const IntPoly& f, const IntPoly& g);

/// Fraction-free (Bareiss) elimination over Z.
mpz_class det_exact(const IntMatrix& m);

/// Determinant mod 2^bits (1 <= bits <= 32) by elimination over Z/2^bits
/// with minimal-2-adic-valuation pivots. Every step is a unimodular integer
/// row or column operation, so the result equals det_exact mod 2^bits.
std::uint32_t det_mod_pow2(const IntMatrix& m, unsigned bits);

/// Selects how mod-8 residues of resultants are obtained.
enum class ResidueMethod { exact, two_adic };

mpz_class resultant(const IntPoly& f, const IntPoly& g);
Residue8 resultant_mod8(const IntPoly& f, const IntPoly& g, ResidueMethod method = ResidueMethod::exact);

/// (-1)^{n(n-1)/2} R(f, f'); f monic of degree >= 2.
mpz_class discriminant_int(const IntPoly& f);
Residue8 discriminant_mod8(const IntPoly& f, ResidueMethod method = ResidueMethod::exact);

}  // namespace f2parity

#endif  // F2PARITY_INTRES_HPP
