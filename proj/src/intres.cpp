#include "f2parity/intres.hpp"

#include "f2parity/gf2poly.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <stdexcept>

namespace f2parity {

Residue8 Residue8::of(const mpz_class& v) {
    return Residue8(static_cast<unsigned>(mpz_fdiv_ui(v.get_mpz_t(), 8)));
}

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
}

IntPoly IntPoly::monomial(std::size_t exponent, const mpz_class& c) {
    std::vector<mpz_class> v(exponent + 1);
    v[exponent] = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::size_t IntPoly::degree() const {
    if (coeffs_.empty()) throw std::domain_error("degree of the zero integer polynomial");
    return coeffs_.size() - 1;
}

mpz_class IntPoly::leading() const { return coeffs_.empty() ? mpz_class(0) : coeffs_.back(); }

std::size_t IntPoly::sylvester_degree() const {
    if (declared_) return *declared_;
    return coeffs_.empty() ? 0 : coeffs_.size() - 1;
}

IntPoly IntPoly::padded_to(std::size_t d) const {
    if (!coeffs_.empty() && d < coeffs_.size() - 1)
        throw std::invalid_argument("declared degree " + std::to_string(d) + " below actual degree " +
                                    std::to_string(coeffs_.size() - 1));
    IntPoly out = *this;
    out.declared_ = d;
    return out;
}

IntPoly IntPoly::unpadded() const {
    IntPoly out = *this;
    out.declared_.reset();
    return out;
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPoly IntPoly::mod8() const {
    std::vector<mpz_class> v(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = Residue8::of(coeffs_[i]).value();
    IntPoly out(std::move(v));
    out.declared_ = declared_;
    return out;
}

std::string IntPoly::to_string() const {
    if (coeffs_.empty()) return "0:0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == 0) continue;
        if (!out.empty()) out += ',';
        out += std::to_string(i) + ':' + coeffs_[i].get_str();
    }
    return out;
}

IntPoly IntPoly::parse(std::string_view raw) {
    std::string text;
    for (char c : raw)
        if (c != ' ' && c != '\t') text += c;
    if (text.empty()) throw ParseError("empty integer polynomial text");
    std::map<std::size_t, mpz_class> terms;
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        const std::string token = text.substr(start, comma == std::string::npos ? comma : comma - start);
        const auto colon = token.find(':');
        if (colon == std::string::npos) throw ParseError("term '" + token + "' lacks 'degree:coefficient'");
        const std::string deg_text = token.substr(0, colon);
        const std::string coef_text = token.substr(colon + 1);
        std::size_t deg = 0;
        const auto [ptr, ec] = std::from_chars(deg_text.data(), deg_text.data() + deg_text.size(), deg);
        if (deg_text.empty() || ec != std::errc{} || ptr != deg_text.data() + deg_text.size())
            throw ParseError("malformed degree in term '" + token + "'");
        if (deg > (1u << 20)) throw ParseError("degree too large in term '" + token + "'");
        mpz_class c;
        if (coef_text.empty() || c.set_str(coef_text, 10) != 0)
            throw ParseError("malformed coefficient in term '" + token + "'");
        if (!terms.emplace(deg, c).second) throw ParseError("duplicate degree in term '" + token + "'");
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    std::vector<mpz_class> v(terms.rbegin()->first + 1);
    for (auto& [d, c] : terms) v[d] = c;
    return IntPoly(std::move(v));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> v(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
    return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a) {
    std::vector<mpz_class> v(a.coeffs());
    for (auto& c : v) c = -c;
    return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> v(a.coeffs().size() + b.coeffs().size() - 1);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) v[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return IntPoly(std::move(v));
}

IntPoly operator*(const mpz_class& c, const IntPoly& a) {
    std::vector<mpz_class> v(a.coeffs());
    for (auto& x : v) x *= c;
    return IntPoly(std::move(v));
}

IntPoly derivative(const IntPoly& f) {
    if (f.coeffs().size() <= 1) return {};
    std::vector<mpz_class> v(f.coeffs().size() - 1);
    for (std::size_t i = 1; i < f.coeffs().size(); ++i) v[i - 1] = f.coeffs()[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(v));
}

IntPoly shift_up(const IntPoly& f, std::size_t k) {
    if (f.is_zero()) return {};
    std::vector<mpz_class> v(k);
    v.insert(v.end(), f.coeffs().begin(), f.coeffs().end());
    return IntPoly(std::move(v));
}

std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& f, const IntPoly& g) {
    if (g.is_zero() || g.leading() != 1) throw std::domain_error("divmod_monic: divisor is not monic");
    const std::size_t dg = g.degree();
    std::vector<mpz_class> r(f.coeffs());
    if (r.size() <= dg) return {IntPoly{}, f.unpadded()};
    std::vector<mpz_class> q(r.size() - dg);
    for (std::size_t i = r.size(); i-- > dg;) {
        const mpz_class c = r[i];
        if (c == 0) continue;
        q[i - dg] = c;
        for (std::size_t j = 0; j <= dg; ++j) r[i - dg + j] -= c * g.coeffs()[j];
    }
    return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("IntMatrix dimensions must be positive");
}

IntMatrix sylvester(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero()) throw std::domain_error("sylvester: zero first polynomial");
    if (f.declared_degree() && *f.declared_degree() != f.degree())
        throw std::invalid_argument("sylvester: first polynomial must not carry leading zeros");
    const std::size_t n = f.degree();
    const std::size_t m = g.sylvester_degree();
    const bool padded = g.is_zero() ? m > 0 : m > g.degree();
    if (padded && f.leading() != 1)
        throw std::invalid_argument("sylvester: padding the second polynomial requires a monic first polynomial");
    if (n + m == 0) throw std::domain_error("sylvester: both polynomials constant");

    IntMatrix s(n + m, n + m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t t = 0; t <= n; ++t) s(r, r + t) = f.coeff(n - t);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t t = 0; t <= m; ++t) s(m + r, r + t) = g.coeff(m - t);
    return s;
}

mpz_class det_exact(const IntMatrix& input) {
    if (input.rows() != input.cols()) throw std::invalid_argument("det_exact: non-square matrix");
    const std::size_t n = input.rows();
    std::vector<mpz_class> a(input.entries());
    auto at = [&](std::size_t r, std::size_t c) -> mpz_class& { return a[r * n + c]; };

    int sign = 1;
    mpz_class prev = 1;
    mpz_class tmp;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && at(pivot, k) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            for (std::size_t c = k; c < n; ++c) std::swap(at(k, c), at(pivot, c));
            sign = -sign;
        }
        const mpz_class& akk = at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const mpz_class& aik = at(i, k);
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class& aij = at(i, j);
                // aij = (aij * akk - aik * akj) / prev
                mpz_mul(tmp.get_mpz_t(), aij.get_mpz_t(), akk.get_mpz_t());
                if (aik != 0) mpz_submul(tmp.get_mpz_t(), aik.get_mpz_t(), at(k, j).get_mpz_t());
                mpz_divexact(aij.get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            at(i, k) = 0;
        }
        prev = akk;
    }
    mpz_class det = at(n - 1, n - 1);
    if (sign < 0) det = -det;
    return det;
}

namespace {

// Inverse of an odd number mod 2^32 by Newton iteration.
std::uint32_t odd_inverse(std::uint32_t u) {
    std::uint32_t x = u;  // correct to 3 bits
    for (int i = 0; i < 4; ++i) x *= 2u - u * x;
    return x;
}

}  // namespace

std::uint32_t det_mod_pow2(const IntMatrix& input, unsigned bits) {
    if (input.rows() != input.cols()) throw std::invalid_argument("det_mod_pow2: non-square matrix");
    if (bits == 0 || bits > 32) throw std::invalid_argument("det_mod_pow2: bits must be in 1..32");
    const std::size_t n = input.rows();
    const std::uint64_t mask = bits == 32 ? 0xffffffffull : ((1ull << bits) - 1);
    std::vector<std::uint64_t> a(n * n);
    mpz_class low;
    for (std::size_t i = 0; i < n * n; ++i) {
        mpz_fdiv_r_2exp(low.get_mpz_t(), input.entries()[i].get_mpz_t(), bits);
        a[i] = low.get_ui() & mask;
    }
    auto at = [&](std::size_t r, std::size_t c) -> std::uint64_t& { return a[r * n + c]; };

    bool negate = false;
    std::uint64_t det = 1;
    unsigned det_valuation = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = n, pc = n;
        unsigned best = bits;
        for (std::size_t r = k; r < n && best > 0; ++r) {
            for (std::size_t c = k; c < n; ++c) {
                const std::uint64_t v = at(r, c);
                if (v == 0) continue;
                const auto val = static_cast<unsigned>(std::countr_zero(v));
                if (val < best) {
                    best = val;
                    pr = r;
                    pc = c;
                    if (val == 0) break;
                }
            }
        }
        if (pr == n) return 0;
        det_valuation += best;
        if (det_valuation >= bits) return 0;
        if (pr != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(pr, c));
            negate = !negate;
        }
        if (pc != k) {
            for (std::size_t r = 0; r < n; ++r) std::swap(at(r, k), at(r, pc));
            negate = !negate;
        }
        const std::uint64_t pivot = at(k, k);
        const std::uint64_t unit_inv = odd_inverse(static_cast<std::uint32_t>(pivot >> best));
        det = (det * pivot) & mask;
        for (std::size_t i = k + 1; i < n; ++i) {
            const std::uint64_t e = at(i, k);
            if (e == 0) continue;
            const std::uint64_t c = ((e >> best) * unit_inv) & mask;
            for (std::size_t j = k; j < n; ++j) at(i, j) = (at(i, j) - c * at(k, j)) & mask;
        }
    }
    if (negate) det = (0 - det) & mask;
    return static_cast<std::uint32_t>(det);
}

mpz_class resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero()) throw std::domain_error("resultant: zero first polynomial");
    if (f.degree() == 0 && g.sylvester_degree() == 0) return 1;
    return det_exact(sylvester(f, g));
}

Residue8 resultant_mod8(const IntPoly& f, const IntPoly& g, ResidueMethod method) {
    if (method == ResidueMethod::exact) return Residue8::of(resultant(f, g));
    if (f.is_zero()) throw std::domain_error("resultant: zero first polynomial");
    if (f.degree() == 0 && g.sylvester_degree() == 0) return Residue8(1);
    return Residue8(det_mod_pow2(sylvester(f, g), 3));
}

namespace {

void require_disc_degree(const IntPoly& f) {
    if (f.is_zero() || f.degree() < 2)
        throw std::domain_error("discriminant: degree must be at least 2");
}

bool disc_sign_negative(std::size_t n) { return (n * (n - 1) / 2) % 2 == 1; }

}  // namespace

mpz_class discriminant_int(const IntPoly& f) {
    require_disc_degree(f);
    const IntPoly g = f.unpadded();
    mpz_class r = resultant(g, derivative(g));
    if (g.leading() != 1) mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), g.leading().get_mpz_t());
    return disc_sign_negative(g.degree()) ? mpz_class(-r) : r;
}

Residue8 discriminant_mod8(const IntPoly& f, ResidueMethod method) {
    if (method == ResidueMethod::exact) return Residue8::of(discriminant_int(f));
    require_disc_degree(f);
    const IntPoly g = f.unpadded();
    if (g.leading() != 1) return Residue8::of(discriminant_int(g));
    const Residue8 r = resultant_mod8(g, derivative(g), ResidueMethod::two_adic);
    return disc_sign_negative(g.degree()) ? Residue8(8 - r.value()) : r;
}

}  // namespace f2parity
