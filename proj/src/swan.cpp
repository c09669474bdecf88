#include "f2parity/swan.hpp"

#include "json.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace f2parity {

const char* to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

bool plus_minus_one_mod8(int n) {
    const int r = mod(n, 8);
    return r == 1 || r == 7;
}

int parse_int(std::string_view token, std::string_view whole) {
    int value = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (token.empty() || ec != std::errc{} || ptr != end)
        throw ParseError("malformed integer '" + std::string(token) + "' in '" + std::string(whole) + "'");
    return value;
}

}  // namespace

bool admissible_exponent(int n, int i) {
    if (i <= 0 || i >= n) return false;
    const bool small_odd = (i % 2 == 1) && 3 * i < n;
    const bool same_class_mod4 = mod(i, 4) == mod(n, 4);
    return small_odd || same_class_mod4;
}

bool validate_support(int n, const std::set<int>& support) {
    if (n % 2 == 0) throw std::invalid_argument("validate_support: n must be odd, got " + std::to_string(n));
    for (int i : support)
        if (!admissible_exponent(n, i)) return false;
    return true;
}

SupportSpec::SupportSpec(int n, std::set<int> support) : n_(n), support_(std::move(support)) {
    if (n % 2 == 0 || n < 5) throw std::invalid_argument("support spec needs odd n >= 5, got n=" + std::to_string(n));
    for (int i : support_)
        if (i <= 0 || i >= n)
            throw std::invalid_argument("support exponent " + std::to_string(i) + " outside (0, " +
                                        std::to_string(n) + ")");
    valid_ = validate_support(n_, support_);
}

SupportSpec SupportSpec::parse(std::string_view raw) {
    std::string text;
    for (char c : raw)
        if (c != ' ') text += c;
    const auto semi = text.find(';');
    if (semi == std::string::npos || text.rfind("n=", 0) != 0 || text.compare(semi + 1, 2, "S=") != 0)
        throw ParseError("support spec must look like 'n=13;S=1,9', got '" + text + "'");
    const std::string_view sv(text);
    const int n = parse_int(sv.substr(2, semi - 2), sv);
    std::set<int> support;
    std::string_view rest = sv.substr(semi + 3);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const int i = parse_int(rest.substr(0, comma), sv);
        if (!support.insert(i).second) throw ParseError("duplicate exponent " + std::to_string(i) + " in '" + text + "'");
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
        if (rest.empty()) throw ParseError("trailing comma in '" + text + "'");
    }
    try {
        return SupportSpec(n, std::move(support));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string SupportSpec::violation() const {
    std::string out;
    for (int i : support_) {
        if (admissible_exponent(n_, i)) continue;
        if (!out.empty()) out += "; ";
        out += "i=" + std::to_string(i) + " fails ";
        out += (i % 2 == 1) ? "3i<n" : "i odd";
        out += " and i≡n mod 4";
    }
    return out;
}

BitPoly SupportSpec::poly() const {
    BitPoly f = BitPoly::monomial(static_cast<std::size_t>(n_)) + BitPoly::one();
    for (int i : support_) f.flip(static_cast<std::size_t>(i));
    return f;
}

std::string SupportSpec::to_string() const {
    std::string out = "n=" + std::to_string(n_) + ";S=";
    bool first = true;
    for (int i : support_) {
        if (!first) out += ',';
        out += std::to_string(i);
        first = false;
    }
    return out;
}

Parity theorem_parity(int n, const std::set<int>& support) {
    if (!validate_support(n, support)) {
        throw InvalidSupport("support violates the admissible-exponent condition: " +
                             SupportSpec(n, support).violation());
    }
    return plus_minus_one_mod8(n) ? Parity::odd : Parity::even;
}

IntPoly lift_01(const BitPoly& f) {
    if (f.is_zero()) return {};
    std::vector<mpz_class> coeffs(f.degree() + 1);
    for (auto e : f.exponents()) coeffs[e] = 1;
    return IntPoly(std::move(coeffs));
}

Parity stickelberger_parity(const BitPoly& f, ResidueMethod method) {
    if (!is_squarefree(f)) throw std::domain_error("stickelberger_parity: not squarefree: " + f.to_string());
    const std::size_t deg = f.degree();
    if (deg == 0) throw std::domain_error("stickelberger_parity: constant input");
    // Degree-one polynomials are irreducible; their discriminant is the empty product.
    if (deg == 1) return Parity::odd;
    const Residue8 d = discriminant_mod8(lift_01(f), method);
    if (d.value() == 1) return parity_of(deg);
    if (d.value() == 5) return flip(parity_of(deg));
    throw std::logic_error("stickelberger_parity: discriminant of squarefree " + f.to_string() +
                           " is " + std::to_string(d.value()) + " mod 8");
}

IntPoly build_G(int n, const IntPoly& F) {
    if (n <= 0 || F.is_zero() || F.degree() != static_cast<std::size_t>(n))
        throw std::domain_error("build_G: F must have degree n=" + std::to_string(n));
    if (F.leading() != 1) throw std::domain_error("build_G: F must be monic");
    for (const auto& c : F.coeffs())
        if (c != 0 && c != 1) throw std::domain_error("build_G: F must have 0/1 coefficients");
    const mpz_class nn = n;
    return nn * (nn * F - shift_up(derivative(F)));
}

GDecomposition decompose_G(const IntPoly& G, int n) {
    std::vector<mpz_class> g2, g4;
    const auto& c = G.coeffs();
    for (std::size_t i = 1; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        const int gap = n - static_cast<int>(i);
        if (mod(gap, 4) == 2) {
            if (g2.size() <= i) g2.resize(i + 1);
            mpz_divexact_ui(g2[i].get_mpz_t(), c[i].get_mpz_t(), 2);
        } else if (mod(gap, 8) == 4) {
            if (g4.size() <= i) g4.resize(i + 1);
            mpz_divexact_ui(g4[i].get_mpz_t(), c[i].get_mpz_t(), 4);
        }
    }
    GDecomposition out{IntPoly(std::move(g2)), IntPoly(std::move(g4))};

    const IntPoly rebuilt = mpz_class(4) * out.g4 + mpz_class(2) * out.g2 + IntPoly{1};
    const std::size_t len = std::max(G.coeffs().size(), rebuilt.coeffs().size());
    for (std::size_t i = 0; i < len; ++i) {
        if (Residue8::of(G.coeff(i)) != Residue8::of(rebuilt.coeff(i)))
            throw std::domain_error("decompose_G: G != 4 G4 + 2 G2 + 1 (mod 8) at x^" + std::to_string(i));
    }
    if (!out.g2.is_zero() && 3 * out.g2.degree() >= static_cast<std::size_t>(n))
        throw std::domain_error("decompose_G: deg G2 = " + std::to_string(out.g2.degree()) + " is not below n/3");
    if (!out.g4.is_zero() && out.g4.degree() >= static_cast<std::size_t>(n))
        throw std::domain_error("decompose_G: deg G4 is not below n");
    return out;
}

ParityReport verify_theorem_instance(const SupportSpec& spec, const VerifyOptions& options) {
    const int n = spec.n();
    ParityReport report{spec, spec.poly()};
    report.predicted_parity = theorem_parity(n, spec.support());

    const BitPoly& f = report.poly;
    report.squarefree = is_squarefree(f);
    report.t_distinct = count_distinct_irreducible_factors(f);
    report.t_multiplicity = count_factors_with_multiplicity(f);
    report.observed_parity = parity_of(report.squarefree ? report.t_distinct : report.t_multiplicity);
    if (!report.squarefree) report.failures.push_back("f has a repeated factor");

    const IntPoly F = lift_01(f);
    const IntPoly G = build_G(n, F);
    try {
        decompose_G(G, n);
    } catch (const std::domain_error& e) {
        report.failures.emplace_back(e.what());
    }
    const IntPoly G_padded = G.padded_to(static_cast<std::size_t>(n - 4));

    const bool sign_negative = (static_cast<long>(n) * (n - 1) / 2) % 2 == 1;
    const Residue8 sign = Residue8::of(sign_negative ? -1LL : 1LL);
    const Residue8 n_mod8 = Residue8::of(static_cast<long long>(n));  // n^n = n (mod 8) for odd n

    if (options.method == ResidueMethod::exact) {
        const mpz_class r = resultant(F, G_padded);
        const mpz_class disc = discriminant_int(F);
        report.r_fg_mod8 = Residue8::of(r);
        report.disc_mod8 = Residue8::of(disc);
        mpz_class n_pow;
        mpz_ui_pow_ui(n_pow.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n));
        if (n_pow * disc != (sign_negative ? mpz_class(-r) : r))
            report.failures.push_back("n^n disc(F) != (-1)^{n(n-1)/2} R(F,G) over Z");
    } else {
        report.r_fg_mod8 = resultant_mod8(F, G_padded, options.method);
        report.disc_mod8 = discriminant_mod8(F, options.method);
    }

    if (options.check_padding && resultant_mod8(F, G, options.method) != report.r_fg_mod8)
        report.failures.push_back("R(F,G) depends on the declared degree of G");
    if (report.r_fg_mod8 != Residue8(1))
        report.failures.push_back("R(F,G) = " + std::to_string(report.r_fg_mod8.value()) + " (mod 8), expected 1");
    if (n_mod8 * report.disc_mod8 != sign * report.r_fg_mod8)
        report.failures.push_back("n^n disc(F) != (-1)^{n(n-1)/2} R(F,G) (mod 8)");
    const Residue8 expected_disc(plus_minus_one_mod8(n) ? 1u : 5u);
    if (report.disc_mod8 != expected_disc)
        report.failures.push_back("disc(F) = " + std::to_string(report.disc_mod8.value()) + " (mod 8), expected " +
                                  std::to_string(expected_disc.value()));
    if (report.squarefree) {
        const Parity from_disc = report.disc_mod8 == Residue8(1) ? parity_of(f.degree()) : flip(parity_of(f.degree()));
        if (from_disc != report.observed_parity)
            report.failures.push_back("discriminant parity disagrees with the factor count");
    }

    report.agree = report.predicted_parity == report.observed_parity && report.failures.empty();
    return report;
}

std::string to_json_line(const ParityReport& report) {
    nlohmann::ordered_json j;
    j["spec"] = {{"n", report.spec.n()}, {"S", std::vector<int>(report.spec.support().begin(), report.spec.support().end())}};
    j["poly"] = report.poly.to_string();
    j["squarefree"] = report.squarefree;
    j["t_distinct"] = report.t_distinct;
    j["t_multiplicity"] = report.t_multiplicity;
    j["disc_mod8"] = report.disc_mod8.value();
    j["predicted_parity"] = to_string(report.predicted_parity);
    j["observed_parity"] = to_string(report.observed_parity);
    j["agree"] = report.agree;
    if (!report.failures.empty()) j["failures"] = report.failures;
    return j.dump();
}

}  // namespace f2parity
