#include "doctest.h"

#include "f2parity/gf2poly.hpp"
#include "oracles.hpp"

#include <random>

using namespace f2parity;

namespace {

BitPoly from_mask(oracle::Mask m) { return BitPoly::from_words({m}); }

oracle::Mask to_mask(const BitPoly& p) {
    REQUIRE(p.words().size() <= 1);
    return p.is_zero() ? 0 : p.words()[0];
}

BitPoly random_poly(std::mt19937_64& rng, std::size_t max_degree) {
    const std::size_t deg = rng() % (max_degree + 1);
    BitPoly p;
    for (std::size_t i = 0; i <= deg; ++i)
        if (rng() & 1) p.flip(i);
    return p;
}

}  // namespace

TEST_SUITE("gf2poly") {

TEST_CASE("parse_poly accepts the three text formats") {
    const BitPoly f = parse_poly("x^21+x^7+1");
    CHECK(f.exponents() == std::vector<std::size_t>{21, 7, 0});
    CHECK(parse_poly("21,7,0") == f);
    CHECK(parse_poly("0x200081") == f);
    CHECK(parse_poly("0").is_zero());
    CHECK(parse_poly("1") == BitPoly::one());
    CHECK(parse_poly(" x^2 + x + 1 ").to_string() == "x^2+x+1");
    CHECK(parse_poly("1+x^3+x").to_string() == "x^3+x+1");
    CHECK(f.to_string() == "x^21+x^7+1");
    CHECK(f.to_hex() == "0x200081");
}

TEST_CASE("parse_poly errors name the offending token") {
    auto message = [](const char* text) {
        try {
            parse_poly(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("x^3+x^3+1").find("x^3") != std::string::npos);
    CHECK(message("x^-2+1").find("negative") != std::string::npos);
    CHECK(message("7,7,0").find("duplicate") != std::string::npos);
    CHECK(message("3,7,0").find("descending") != std::string::npos);
    CHECK(message("x^2+y").find("'y'") != std::string::npos);
    CHECK(message("0x12g").find("g") != std::string::npos);
    CHECK(message("").find("empty") != std::string::npos);
    CHECK(message("5,-1").find("negative") != std::string::npos);
}

TEST_CASE("mul") {
    CHECK(mul(parse_poly("x+1"), parse_poly("x+1")) == parse_poly("x^2+1"));
    CHECK(mul(parse_poly("x^2+x+1"), parse_poly("x^3+x+1")) == parse_poly("x^5+x^4+1"));
    const BitPoly f = parse_poly("x^130+x^64+x^3+1");
    CHECK(mul(f, BitPoly::one()) == f);
    CHECK(mul(f, BitPoly::zero()).is_zero());
    CHECK(mul(f, f).degree() == 260);
}

TEST_CASE("mul agrees with exhaustive convolution") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const oracle::Mask a = rng() & 0xffffffffu, b = rng() & 0x7fffffffu;
        CHECK(to_mask(mul(from_mask(a), from_mask(b))) == oracle::mul(a, b));
    }
}

TEST_CASE("rem and divmod") {
    CHECK(rem(parse_poly("x^3"), parse_poly("x^2+x+1")) == BitPoly::one());
    CHECK(rem(parse_poly("x^3+1"), parse_poly("x+1")).is_zero());
    const BitPoly f = parse_poly("x^21+x^7+1");
    CHECK(rem(f, f).is_zero());
    CHECK_THROWS_AS(rem(f, BitPoly::zero()), std::domain_error);
}

TEST_CASE("gcd") {
    CHECK(gcd(parse_poly("x^2+1"), parse_poly("x+1")) == parse_poly("x+1"));
    CHECK(gcd(parse_poly("x^2+x+1"), parse_poly("x^2+1")) == BitPoly::one());
    const BitPoly f = parse_poly("x^5+x^4+1");
    CHECK(gcd(f, BitPoly::zero()) == f);
    CHECK(gcd(BitPoly::zero(), f) == f);
    CHECK_THROWS_AS(gcd(BitPoly::zero(), BitPoly::zero()), std::domain_error);
}

TEST_CASE("derivative_f2") {
    CHECK(derivative_f2(parse_poly("x^21+x^7+1")) == parse_poly("x^20+x^6"));
    CHECK(derivative_f2(parse_poly("x^4+x^2+1")).is_zero());
    CHECK(derivative_f2(parse_poly("x")) == BitPoly::one());
}

TEST_CASE("degree of zero is an error") {
    CHECK_THROWS_AS(BitPoly::zero().degree(), std::domain_error);
    CHECK(BitPoly::one().degree() == 0);
}

TEST_CASE("is_squarefree") {
    CHECK_FALSE(is_squarefree(parse_poly("x^2+1")));
    CHECK(is_squarefree(parse_poly("x^2+x+1")));
    CHECK(is_squarefree(parse_poly("x^21+x^7+1")));
    CHECK(is_squarefree(BitPoly::one()));
    CHECK_THROWS_AS(is_squarefree(BitPoly::zero()), std::domain_error);
    // gcd(f, f') oracle on the sharpness witness
    const BitPoly f = parse_poly("x^21+x^7+1");
    CHECK(gcd(f, derivative_f2(f)).is_one());
}

TEST_CASE("count_distinct_irreducible_factors") {
    CHECK(count_distinct_irreducible_factors(parse_poly("x^2+x+1")) == 1);
    CHECK(count_distinct_irreducible_factors(parse_poly("x^5+x^4+1")) == 2);
    CHECK(count_distinct_irreducible_factors(parse_poly("x^21+x^7+1")) == 1);
    CHECK(count_distinct_irreducible_factors(parse_poly("x^4+x^2+1")) == 1);
    CHECK_THROWS_AS(count_distinct_irreducible_factors(BitPoly::one()), std::domain_error);
}

TEST_CASE("x^5+x^4+1 factors as (x^2+x+1)(x^3+x+1)") {
    const auto table = oracle::irreducibles(2);
    const auto counts = oracle::trial_division(0b110001, table);
    CHECK(counts.distinct == 2);
    CHECK(mul(parse_poly("x^2+x+1"), parse_poly("x^3+x+1")) == parse_poly("x^5+x^4+1"));
}

TEST_CASE("squarefree_decomposition") {
    using V = std::vector<SquarefreePart>;
    CHECK(squarefree_decomposition(parse_poly("x^2+1")) == V{{parse_poly("x+1"), 2}});
    CHECK(squarefree_decomposition(parse_poly("x^4+x^2+1")) == V{{parse_poly("x^2+x+1"), 2}});
    CHECK(squarefree_decomposition(parse_poly("x^5+x^4+1")) == V{{parse_poly("x^5+x^4+1"), 1}});
    // (x+1)^3 x^2 (x^2+x+1)^4
    const BitPoly f = mul(mul(mul(parse_poly("x+1"), parse_poly("x^2+1")), parse_poly("x^2")),
                          mul(parse_poly("x^4+x^2+1"), parse_poly("x^4+x^2+1")));
    CHECK(squarefree_decomposition(f) ==
          V{{parse_poly("x"), 2}, {parse_poly("x+1"), 3}, {parse_poly("x^2+x+1"), 4}});
    CHECK_THROWS_AS(squarefree_decomposition(BitPoly::one()), std::domain_error);
}

TEST_CASE("count_factors_with_multiplicity") {
    CHECK(count_factors_with_multiplicity(parse_poly("x^2+1")) == 2);
    CHECK(count_factors_with_multiplicity(parse_poly("x^4+x^2+1")) == 2);
    const auto table = oracle::irreducibles(6);
    const auto oracle_count = oracle::trial_division(0b100000011, table).with_multiplicity;
    CHECK(oracle_count % 2 == 0);
    CHECK(count_factors_with_multiplicity(parse_poly("x^8+x+1")) == static_cast<std::size_t>(oracle_count));
}

TEST_CASE("is_irreducible") {
    CHECK(is_irreducible(parse_poly("x^21+x^7+1")));
    CHECK_FALSE(is_irreducible(parse_poly("x^4+x^2+1")));
    CHECK(is_irreducible(parse_poly("x^3+x+1")));
    CHECK(is_irreducible(parse_poly("x")));
    CHECK_THROWS_AS(is_irreducible(BitPoly::one()), std::domain_error);
}

TEST_CASE("trace_spectrum") {
    CHECK(trace_spectrum(parse_poly("x^3+x+1")).bits == std::vector<std::uint8_t>{1, 0, 0});
    CHECK(trace_spectrum(parse_poly("x^2+x+1")).bits == std::vector<std::uint8_t>{0, 1});
    const auto spec = trace_spectrum(parse_poly("x^7+x^3+1"));
    CHECK(spec.support() == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(trace_spectrum(parse_poly("x^2+1")), std::domain_error);
    CHECK_THROWS_AS(trace_spectrum(parse_poly("x^5+x^4+1")), std::domain_error);

    CHECK(oracle::companion_trace(0b1011) == std::vector<int>{1, 0, 0});
    CHECK(oracle::companion_trace(0b111) == std::vector<int>{0, 1});
}

TEST_CASE("am_condition") {
    CHECK(am_condition(parse_poly("x^7+x^3+1")));
    CHECK_FALSE(am_condition(parse_poly("x^7+x^2+1")));
    CHECK(am_condition(parse_poly("x^21+x^7+1")));
    CHECK_THROWS_AS(am_condition(parse_poly("x^8+x+1")), std::domain_error);
}

TEST_CASE("ring axioms on random polynomials up to degree 64") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const BitPoly a = random_poly(rng, 64), b = random_poly(rng, 64), c = random_poly(rng, 64);
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        CHECK(mul(a, b) == mul(b, a));
        CHECK(mul(a, b + c) == mul(a, b) + mul(a, c));
        CHECK((a + b) + b == a);
    }
}

TEST_CASE("division identity f = q g + r with deg r < deg g") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const BitPoly f = random_poly(rng, 150);
        BitPoly g = random_poly(rng, 70);
        if (g.is_zero()) g = BitPoly::one();
        const auto [q, r] = divmod(f, g);
        CHECK(mul(q, g) + r == f);
        CHECK((r.is_zero() || r.degree() < g.degree()));
    }
}

TEST_CASE("parse/format round trip and squarefree/decomposition consistency") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const BitPoly f = random_poly(rng, 90);
        CHECK(parse_poly(f.to_string()) == f);
        CHECK(parse_poly(f.to_hex()) == f);
        if (f.is_zero() || f.degree() == 0) continue;
        const auto parts = squarefree_decomposition(f);
        bool all_one = true;
        BitPoly product = BitPoly::one();
        for (const auto& part : parts) {
            all_one = all_one && part.multiplicity == 1;
            for (std::size_t e = 0; e < part.multiplicity; ++e) product = mul(product, part.factor);
        }
        CHECK(product == f);
        CHECK(is_squarefree(f) == all_one);
        const auto distinct = count_distinct_irreducible_factors(f);
        const auto with_mult = count_factors_with_multiplicity(f);
        CHECK(with_mult >= distinct);
        CHECK((with_mult == distinct) == is_squarefree(f));
    }
}

TEST_CASE("Berlekamp count matches trial division for every f of degree <= 12") {
    const auto table = oracle::irreducibles(6);
    std::size_t checked = 0;
    for (oracle::Mask m = 2; m < (oracle::Mask{1} << 13); ++m) {
        const BitPoly f = from_mask(m);
        const auto expected = oracle::trial_division(m, table);
        REQUIRE(count_distinct_irreducible_factors(f) == static_cast<std::size_t>(expected.distinct));
        REQUIRE(count_factors_with_multiplicity(f) == static_cast<std::size_t>(expected.with_multiplicity));
        ++checked;
    }
    CHECK(checked == 8190);
}

TEST_CASE("Newton trace spectrum equals companion-matrix traces up to degree 12") {
    for (oracle::Mask m = 2; m < (oracle::Mask{1} << 13); ++m) {
        const BitPoly f = from_mask(m);
        if (!is_irreducible(f)) continue;
        const auto spec = trace_spectrum(f);
        const auto expected = oracle::companion_trace(m);
        REQUIRE(spec.bits.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) REQUIRE(spec.bits[i] == expected[i]);
    }
}

TEST_CASE("single-trace basis iff all middle exponents odd, odd n <= 15") {
    for (std::size_t n = 3; n <= 15; n += 2) {
        for (oracle::Mask middle = 0; middle < (oracle::Mask{1} << (n - 1)); ++middle) {
            const BitPoly f = from_mask((oracle::Mask{1} << n) | (middle << 1) | 1u);
            if (!is_irreducible(f)) continue;
            REQUIRE((trace_spectrum(f).support().size() == 1) == am_condition(f));
        }
    }
}

}  // TEST_SUITE
