// Independent reference implementations used only by the tests. None of
// these share code paths with the library: polynomials over F2 are raw
// 64-bit masks, determinants come from cofactor expansion, traces from
// companion-matrix powers.

#ifndef F2PARITY_TESTS_ORACLES_HPP
#define F2PARITY_TESTS_ORACLES_HPP

#include <gmpxx.h>

#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Mask = std::uint64_t;

inline int degree(Mask f) { return f ? 63 - std::countl_zero(f) : -1; }

/// Convolution of coefficient sequences mod 2; deg f + deg g < 64.
inline Mask mul(Mask f, Mask g) {
    Mask out = 0;
    for (int i = 0; i < 64; ++i) {
        int acc = 0;
        for (int j = 0; j <= i; ++j) acc ^= static_cast<int>(((f >> j) & 1) & ((g >> (i - j)) & 1));
        out |= static_cast<Mask>(acc) << i;
    }
    return out;
}

inline Mask mod(Mask f, Mask g) {
    const int dg = degree(g);
    while (degree(f) >= dg) f ^= g << (degree(f) - dg);
    return f;
}

/// All irreducible polynomials of degree 1..max_degree, by exhausting divisors.
inline std::vector<Mask> irreducibles(int max_degree) {
    std::vector<Mask> out;
    for (Mask f = 2; degree(f) <= max_degree; ++f) {
        bool irreducible = true;
        for (Mask d : out) {
            if (2 * degree(d) > degree(f)) break;
            if (mod(f, d) == 0) {
                irreducible = false;
                break;
            }
        }
        if (irreducible) out.push_back(f);
    }
    return out;
}

struct TrialCounts {
    int distinct = 0;
    int with_multiplicity = 0;
};

/// Factor counts by trial division with irreducibles of degree <= 6; exact for
/// deg f <= 13.
inline TrialCounts trial_division(Mask f, const std::vector<Mask>& table) {
    TrialCounts out;
    for (Mask p : table) {
        if (degree(p) > 6 || 2 * degree(p) > degree(f)) break;
        bool seen = false;
        while (degree(f) >= degree(p) && mod(f, p) == 0) {
            Mask q = 0, r = f;
            const int dp = degree(p);
            while (degree(r) >= dp) {
                const int s = degree(r) - dp;
                q |= Mask{1} << s;
                r ^= p << s;
            }
            f = q;
            ++out.with_multiplicity;
            seen = true;
        }
        if (seen) ++out.distinct;
    }
    if (degree(f) >= 1) {
        ++out.distinct;
        ++out.with_multiplicity;
    }
    return out;
}

/// Tr(x^i) in F2[x]/f as the trace of the multiplication-by-x^i matrix.
inline std::vector<int> companion_trace(Mask f) {
    const int n = degree(f);
    std::vector<int> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int tr = 0;
        for (int j = 0; j < n; ++j) {
            // column j of the matrix is x^{i+j} mod f; its diagonal entry is coefficient j
            Mask p = 1;
            for (int k = 0; k < i + j; ++k) p = mod(p << 1, f);
            tr ^= static_cast<int>((p >> j) & 1);
        }
        out[static_cast<std::size_t>(i)] = tr;
    }
    return out;
}

/// Laplace expansion along the first row.
inline mpz_class cofactor_det(const std::vector<std::vector<mpz_class>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    mpz_class total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0) continue;
        std::vector<std::vector<mpz_class>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<mpz_class> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(std::move(row));
        }
        const mpz_class term = m[0][c] * cofactor_det(minor);
        total += (c % 2 == 0) ? term : mpz_class(-term);
    }
    return total;
}

/// Discriminant of x^n + a x^k + b via the closed trinomial formula
/// (-1)^{n(n-1)/2} b^{k-1} [n^N b^{N-K} - (-1)^N (n-k)^{N-K} k^K a^N]^d,
/// d = gcd(n, k), N = n/d, K = k/d.
inline mpz_class trinomial_disc(long n, long k, long a, long b) {
    const long d = std::gcd(n, k), N = n / d, K = k / d;
    auto pw = [](long base, long e) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), mpz_class(base).get_mpz_t(), static_cast<unsigned long>(e));
        return r;
    };
    mpz_class inner = pw(n, N) * pw(b, N - K) - ((N % 2) ? -1 : 1) * pw(n - k, N - K) * pw(k, K) * pw(a, N);
    mpz_class out = pw(b, k - 1) * [&] {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), inner.get_mpz_t(), static_cast<unsigned long>(d));
        return r;
    }();
    if ((n * (n - 1) / 2) % 2) out = -out;
    return out;
}

}  // namespace oracle

#endif  // F2PARITY_TESTS_ORACLES_HPP
