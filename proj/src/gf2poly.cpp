#include "f2parity/gf2poly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace f2parity {

namespace {

constexpr std::size_t kMaxParsedExponent = 1u << 20;

std::size_t words_for_degree(std::size_t degree) { return degree / BitPoly::kWordBits + 1; }

}  // namespace

BitPoly::BitPoly(std::initializer_list<std::size_t> exponents)
    : BitPoly(from_exponents(std::vector<std::size_t>(exponents))) {}

BitPoly BitPoly::monomial(std::size_t exponent) {
    BitPoly p;
    p.words_.assign(words_for_degree(exponent), 0);
    p.words_.back() = Word{1} << (exponent % kWordBits);
    return p;
}

BitPoly BitPoly::from_exponents(const std::vector<std::size_t>& exponents) {
    BitPoly p;
    for (auto e : exponents) p.flip(e);
    return p;
}

BitPoly BitPoly::from_words(std::vector<Word> words) {
    BitPoly p;
    p.words_ = std::move(words);
    p.trim();
    return p;
}

void BitPoly::trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

std::size_t BitPoly::degree() const {
    if (is_zero()) throw std::domain_error("degree of the zero polynomial");
    return (words_.size() - 1) * kWordBits + (kWordBits - 1 - std::countl_zero(words_.back()));
}

bool BitPoly::coeff(std::size_t i) const {
    const auto w = i / kWordBits;
    return w < words_.size() && ((words_[w] >> (i % kWordBits)) & 1u);
}

void BitPoly::set_coeff(std::size_t i, bool value) {
    if (coeff(i) != value) flip(i);
}

void BitPoly::flip(std::size_t i) {
    const auto w = i / kWordBits;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] ^= Word{1} << (i % kWordBits);
    trim();
}

std::vector<std::size_t> BitPoly::exponents() const {
    std::vector<std::size_t> out;
    for (std::size_t w = words_.size(); w-- > 0;) {
        Word bits = words_[w];
        while (bits) {
            const int top = static_cast<int>(kWordBits) - 1 - std::countl_zero(bits);
            out.push_back(w * kWordBits + static_cast<std::size_t>(top));
            bits &= ~(Word{1} << top);
        }
    }
    return out;
}

std::size_t BitPoly::term_count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

BitPoly& BitPoly::operator+=(const BitPoly& other) {
    if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
    for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] ^= other.words_[i];
    trim();
    return *this;
}

void BitPoly::add_shifted(const BitPoly& other, std::size_t shift) {
    if (other.is_zero()) return;
    const std::size_t word_shift = shift / kWordBits;
    const unsigned bit_shift = shift % kWordBits;
    const std::size_t need = other.words_.size() + word_shift + (bit_shift ? 1 : 0);
    if (words_.size() < need) words_.resize(need, 0);
    for (std::size_t i = 0; i < other.words_.size(); ++i) {
        const Word w = other.words_[i];
        words_[i + word_shift] ^= w << bit_shift;
        if (bit_shift) words_[i + word_shift + 1] ^= w >> (kWordBits - bit_shift);
    }
    trim();
}

std::string BitPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (auto e : exponents()) {
        if (!out.empty()) out += '+';
        if (e == 0) {
            out += '1';
        } else if (e == 1) {
            out += 'x';
        } else {
            out += "x^" + std::to_string(e);
        }
    }
    return out;
}

std::string BitPoly::to_hex() const {
    if (is_zero()) return "0x0";
    std::ostringstream os;
    os << "0x" << std::hex << words_.back();
    for (std::size_t w = words_.size() - 1; w-- > 0;) {
        os.width(16);
        os.fill('0');
        os << words_[w];
    }
    return os.str();
}

BitPoly operator+(BitPoly f, const BitPoly& g) {
    f += g;
    return f;
}

BitPoly mul(const BitPoly& f, const BitPoly& g) {
    const BitPoly& small = f.term_count() <= g.term_count() ? f : g;
    const BitPoly& big = &small == &f ? g : f;
    BitPoly out;
    for (auto e : small.exponents()) out.add_shifted(big, e);
    return out;
}

std::pair<BitPoly, BitPoly> divmod(const BitPoly& f, const BitPoly& g) {
    if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
    const std::size_t dg = g.degree();
    BitPoly q;
    BitPoly r = f;
    while (!r.is_zero() && r.degree() >= dg) {
        const std::size_t shift = r.degree() - dg;
        q.flip(shift);
        r.add_shifted(g, shift);
    }
    return {std::move(q), std::move(r)};
}

BitPoly rem(const BitPoly& f, const BitPoly& g) { return divmod(f, g).second; }

BitPoly quot(const BitPoly& f, const BitPoly& g) { return divmod(f, g).first; }

BitPoly gcd(BitPoly f, BitPoly g) {
    if (f.is_zero() && g.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
    while (!g.is_zero()) {
        f = rem(f, g);
        std::swap(f, g);
    }
    return f;
}

BitPoly derivative_f2(const BitPoly& f) {
    BitPoly out;
    for (auto e : f.exponents())
        if (e % 2 == 1) out.flip(e - 1);
    return out;
}

BitPoly sqrt_f2(const BitPoly& f) {
    BitPoly out;
    for (auto e : f.exponents()) {
        if (e % 2 == 1) throw std::domain_error("sqrt_f2: not a perfect square: " + f.to_string());
        out.flip(e / 2);
    }
    return out;
}

namespace {

std::size_t parse_exponent(std::string_view token, std::string_view whole) {
    if (token.empty()) throw ParseError("empty exponent in '" + std::string(whole) + "'");
    if (token.front() == '-')
        throw ParseError("negative exponent '" + std::string(token) + "'");
    std::size_t value = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ParseError("malformed exponent '" + std::string(token) + "'");
    if (value > kMaxParsedExponent)
        throw ParseError("exponent too large '" + std::string(token) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

BitPoly parse_hex(std::string_view digits, std::string_view whole) {
    if (digits.empty()) throw ParseError("no hex digits in '" + std::string(whole) + "'");
    BitPoly out;
    std::size_t bit = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it, bit += 4) {
        int v = 0;
        const char c = *it;
        if (c >= '0' && c <= '9') {
            v = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            v = c - 'a' + 10;
        } else if (c >= 'A' && c <= 'F') {
            v = c - 'A' + 10;
        } else {
            throw ParseError(std::string("malformed hex digit '") + c + "'");
        }
        for (int b = 0; b < 4; ++b)
            if ((v >> b) & 1) out.flip(bit + static_cast<std::size_t>(b));
    }
    return out;
}

BitPoly parse_exponent_list(std::string_view text) {
    std::vector<std::size_t> exps;
    for (auto token : split(text, ',')) {
        const auto e = parse_exponent(token, text);
        if (!exps.empty()) {
            if (e == exps.back()) throw ParseError("duplicate exponent '" + std::string(token) + "'");
            if (e > exps.back())
                throw ParseError("exponent list not strictly descending at '" + std::string(token) + "'");
        }
        exps.push_back(e);
    }
    return BitPoly::from_exponents(exps);
}

BitPoly parse_symbolic(std::string_view text) {
    std::set<std::size_t> seen;
    for (auto term : split(text, '+')) {
        std::size_t e = 0;
        if (term == "1") {
            e = 0;
        } else if (term == "x") {
            e = 1;
        } else if (term.size() > 2 && term[0] == 'x' && term[1] == '^') {
            e = parse_exponent(term.substr(2), text);
        } else {
            throw ParseError("malformed term '" + std::string(term) + "'");
        }
        if (!seen.insert(e).second) throw ParseError("duplicate exponent in term '" + std::string(term) + "'");
    }
    return BitPoly::from_exponents({seen.begin(), seen.end()});
}

}  // namespace

BitPoly parse_poly(std::string_view raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    if (text.empty()) throw ParseError("empty polynomial text");
    if (text == "0") return BitPoly::zero();
    if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
        return parse_hex(std::string_view(text).substr(2), text);
    if (text.find(',') != std::string::npos) return parse_exponent_list(text);
    return parse_symbolic(text);
}

bool is_squarefree(const BitPoly& f) {
    if (f.is_zero()) throw std::domain_error("is_squarefree: zero polynomial");
    if (f.degree() == 0) return true;
    const BitPoly df = derivative_f2(f);
    return !df.is_zero() && gcd(f, df).is_one();
}

namespace {

void require_nonconstant(const BitPoly& f, const char* what) {
    if (f.is_zero() || f.degree() == 0) throw std::domain_error(std::string(what) + ": constant input");
}

// Rank over F2 of rows packed as word vectors of equal length.
std::size_t rank_f2(std::vector<std::vector<BitPoly::Word>> rows, std::size_t ncols) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        const std::size_t w = col / BitPoly::kWordBits;
        const BitPoly::Word mask = BitPoly::Word{1} << (col % BitPoly::kWordBits);
        std::size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot][w] & mask)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && (rows[r][w] & mask)) {
                for (std::size_t k = w; k < rows[r].size(); ++k) rows[r][k] ^= rows[rank][k];
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::size_t count_distinct_irreducible_factors(const BitPoly& f) {
    require_nonconstant(f, "count_distinct_irreducible_factors");
    const std::size_t d = f.degree();
    const std::size_t nwords = (d + BitPoly::kWordBits - 1) / BitPoly::kWordBits;

    // Row i holds x^{2i} mod f, minus the identity.
    std::vector<std::vector<BitPoly::Word>> rows;
    rows.reserve(d);
    BitPoly power = BitPoly::one();
    for (std::size_t i = 0; i < d; ++i) {
        if (i > 0) {
            BitPoly shifted;
            shifted.add_shifted(power, 2);
            power = rem(shifted, f);
        }
        std::vector<BitPoly::Word> row(power.words());
        row.resize(nwords, 0);
        row[i / BitPoly::kWordBits] ^= BitPoly::Word{1} << (i % BitPoly::kWordBits);
        rows.push_back(std::move(row));
    }
    return d - rank_f2(std::move(rows), d);
}

std::vector<SquarefreePart> squarefree_decomposition(const BitPoly& f) {
    require_nonconstant(f, "squarefree_decomposition");
    std::vector<SquarefreePart> parts;

    const BitPoly df = derivative_f2(f);
    BitPoly c = df.is_zero() ? f : gcd(f, df);
    BitPoly w = quot(f, c);
    for (std::size_t i = 1; !w.is_one(); ++i) {
        const BitPoly y = gcd(w, c);
        const BitPoly z = quot(w, y);
        if (!z.is_one()) parts.push_back({z, i});
        w = y;
        c = quot(c, y);
    }
    // What remains has only even multiplicities.
    if (!c.is_one()) {
        for (auto& part : squarefree_decomposition(sqrt_f2(c)))
            parts.push_back({std::move(part.factor), 2 * part.multiplicity});
    }
    std::sort(parts.begin(), parts.end(),
              [](const SquarefreePart& a, const SquarefreePart& b) { return a.multiplicity < b.multiplicity; });
    return parts;
}

std::size_t count_factors_with_multiplicity(const BitPoly& f) {
    std::size_t total = 0;
    for (const auto& part : squarefree_decomposition(f))
        total += part.multiplicity * count_distinct_irreducible_factors(part.factor);
    return total;
}

bool is_irreducible(const BitPoly& f) {
    require_nonconstant(f, "is_irreducible");
    return is_squarefree(f) && count_distinct_irreducible_factors(f) == 1;
}

std::vector<std::size_t> TraceSpectrum::support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) out.push_back(i);
    return out;
}

TraceSpectrum trace_spectrum(const BitPoly& f) {
    require_nonconstant(f, "trace_spectrum");
    if (!is_irreducible(f)) throw std::domain_error("trace_spectrum: reducible input " + f.to_string());
    const std::size_t n = f.degree();
    // c[j] is the coefficient of x^{n-j}; signs vanish mod 2.
    std::vector<std::uint8_t> c(n + 1);
    for (std::size_t j = 0; j <= n; ++j) c[j] = f.coeff(n - j);

    TraceSpectrum spec;
    spec.n = n;
    spec.bits.assign(n, 0);
    spec.bits[0] = static_cast<std::uint8_t>(n % 2);
    for (std::size_t k = 1; k < n; ++k) {
        std::uint8_t p = (k % 2 == 1) ? c[k] : 0;
        for (std::size_t j = 1; j < k; ++j) p ^= c[j] & spec.bits[k - j];
        spec.bits[k] = p;
    }
    return spec;
}

bool am_condition(const BitPoly& f) {
    if (f.is_zero()) throw std::domain_error("am_condition: zero polynomial");
    const std::size_t n = f.degree();
    if (n % 2 == 0) throw std::domain_error("am_condition: even degree " + std::to_string(n));
    for (auto e : f.exponents())
        if (e != n && e != 0 && e % 2 == 0) return false;
    return true;
}

}  // namespace f2parity
