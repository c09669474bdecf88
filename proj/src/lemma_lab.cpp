#include "f2parity/lemma_lab.hpp"

#include "f2parity/gf2poly.hpp"
#include "f2parity/parallel.hpp"

#include "json.hpp"

#include <atomic>
#include <random>

namespace f2parity {

const char* to_string(LemmaId id) {
    switch (id) {
        case LemmaId::d: return "D";
        case LemmaId::l1a: return "L1a";
        case LemmaId::l1b: return "L1b";
        case LemmaId::l2: return "L2";
        case LemmaId::general: return "GENERAL";
    }
    return "?";
}

LemmaId parse_lemma_id(std::string_view text) {
    std::string t(text);
    for (auto& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "d") return LemmaId::d;
    if (t == "l1a") return LemmaId::l1a;
    if (t == "l1b") return LemmaId::l1b;
    if (t == "l2") return LemmaId::l2;
    if (t == "general") return LemmaId::general;
    throw ParseError("unknown lemma id '" + std::string(text) + "'");
}

Mod8Matrix Mod8Matrix::from_int(const IntMatrix& m) {
    Mod8Matrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out.set(r, c, Residue8::of(m(r, c)).value());
    return out;
}

IntMatrix Mod8Matrix::to_int() const {
    IntMatrix out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = at(r, c);
    return out;
}

namespace {

// Admissible residue classes for one matrix slot.
enum class Slot { zero, one, mult4, even, any };

bool admits(Slot slot, unsigned v) {
    switch (slot) {
        case Slot::zero: return v == 0;
        case Slot::one: return v == 1;
        case Slot::mult4: return v % 4 == 0;
        case Slot::even: return v % 2 == 0;
        case Slot::any: return true;
    }
    return false;
}

const char* describe(Slot slot) {
    switch (slot) {
        case Slot::zero: return "0";
        case Slot::one: return "1";
        case Slot::mult4: return "0 mod 4";
        case Slot::even: return "even";
        case Slot::any: return "any";
    }
    return "?";
}

class Drawer {
public:
    explicit Drawer(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t below(std::uint64_t k) { return rng_() % k; }

    // Zero with probability 1/2, otherwise uniform over the nonzero admissible residues.
    unsigned draw(Slot slot) {
        switch (slot) {
            case Slot::zero: return 0;
            case Slot::one: return 1;
            case Slot::mult4: return below(2) ? 4u : 0u;
            case Slot::even: return below(2) ? 2u * static_cast<unsigned>(1 + below(3)) : 0u;
            case Slot::any: return below(2) ? static_cast<unsigned>(1 + below(7)) : 0u;
        }
        return 0;
    }

    long coefficient() { return below(2) ? static_cast<long>(below(8)) - 4 : 0; }

private:
    std::mt19937_64 rng_;
};

using SlotFn = Slot (*)(std::size_t r, std::size_t c, const LemmaParams& p);

std::optional<std::string> check_slots(const Mod8Matrix& mat, const LemmaParams& p, SlotFn slot_of,
                                       const char* lemma) {
    for (std::size_t r = 0; r < mat.rows(); ++r) {
        for (std::size_t c = 0; c < mat.cols(); ++c) {
            const Slot slot = slot_of(r, c, p);
            if (!admits(slot, mat.at(r, c))) {
                return std::string(lemma) + ": entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                       ") = " + std::to_string(mat.at(r, c)) + " must be " + describe(slot);
            }
        }
    }
    return std::nullopt;
}

Mod8Matrix fill(std::size_t size, const LemmaParams& p, SlotFn slot_of, Drawer& drawer) {
    Mod8Matrix mat(size, size);
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c) mat.set(r, c, drawer.draw(slot_of(r, c, p)));
    return mat;
}

// Block layout [[A, B], [C; 0, D]] with A, C m x m and D n x n; 1-based indices.
Slot l2_slot(std::size_t r0, std::size_t c0, const LemmaParams& p) {
    const std::size_t m = p.m;
    const std::size_t row = r0 + 1, col = c0 + 1;
    if (row <= m) {
        if (col <= m) {  // A
            if (row == col) return Slot::one;
            if (row > col) return Slot::zero;
            return (row + col) % 2 == 1 ? Slot::even : Slot::any;
        }
        const std::size_t rb = col - m;  // B
        return (rb <= row && (row + rb) % 2 == 0) ? Slot::even : Slot::any;
    }
    const std::size_t k = row - m;
    if (col <= m) {
        if (k > m) return Slot::zero;  // below C
        if (k > col || (k + col) % 2 == 1) return Slot::zero;
        return Slot::mult4;
    }
    return (col - m == k) ? Slot::one : Slot::mult4;  // D
}

// General lemma, M = (X over Y), m = n - 4, s = floor((n-1)/3); 1-based indices.
Slot general_slot(std::size_t r0, std::size_t c0, const LemmaParams& p) {
    const long n = static_cast<long>(p.n), m = static_cast<long>(p.m), s = static_cast<long>(p.s);
    const long row = static_cast<long>(r0) + 1, col = static_cast<long>(c0) + 1;
    if (row <= m) {  // X, H1 and H2
        const long d = col - row;
        if (d == 0) return Slot::one;
        const bool allowed = (d > 0 && d < n - s && d % 4 == 0) || (d >= n - s && d < n && d % 2 == 0) || d == n;
        return allowed ? Slot::any : Slot::zero;
    }
    const long i = row - m;  // Y row index
    const long k = col - i;
    if (k < 0) return Slot::zero;      // H3
    if (k == m) return Slot::one;      // H1
    if (k < m - s) return k % 4 == 0 ? Slot::mult4 : Slot::zero;  // H4
    if (k < m + n - 2 * s) {           // H5
        if (k % 4 == 2) return Slot::even;
        if (k % 4 == 0) return Slot::mult4;
        return i + k > m ? Slot::mult4 : Slot::zero;
    }
    return Slot::even;  // H3 only
}

std::optional<std::string> d_violation(const Mod8Matrix& mat) {
    if (mat.rows() != mat.cols() || mat.rows() == 0) return "D: matrix must be square and non-empty";
    for (std::size_t i = 0; i < mat.rows(); ++i) {
        for (std::size_t j = i + 1; j < mat.cols(); ++j) {
            const unsigned a = mat.at(i, j), b = mat.at(j, i);
            if (a % 2 || b % 2)
                return "D: off-diagonal pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") not even";
            if ((a * b) % 8 != 0)
                return "D: product of entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                       ") and its transpose is " + std::to_string((a * b) % 8) + " mod 8";
        }
    }
    return std::nullopt;
}

bool below_degree(const IntPoly& p, long bound) {
    return p.is_zero() || static_cast<long>(p.degree()) < bound;
}

ResultantPair assemble_pair(char variant, std::size_t n, IntPoly h, IntPoly f0, IntPoly f1, IntPoly f2) {
    ResultantPair pair{std::move(h), std::move(f0), std::move(f1), std::move(f2), {}, {}};
    const IntPoly xn = IntPoly::monomial(n);
    if (variant == 'a') {
        pair.f = xn + mpz_class(4) * pair.f0 + mpz_class(2) * pair.f1 + pair.f2;
        pair.g = mpz_class(2) * pair.h + IntPoly{1};
    } else {
        pair.f = xn + mpz_class(2) * pair.f0 + pair.f1;
        pair.g = mpz_class(4) * pair.h + IntPoly{1};
    }
    return pair;
}

std::optional<std::string> l1_violation(const LemmaInstance& inst) {
    if (!inst.pair) return "L1: instance carries no polynomial pair";
    const auto& p = *inst.pair;
    const long n = static_cast<long>(inst.params.n), s = static_cast<long>(inst.params.s);
    const char variant = inst.lemma == LemmaId::l1a ? 'a' : 'b';
    if (n <= 1) return "L1: n must exceed 1";
    if (p.h.is_zero() || static_cast<long>(p.h.degree()) != s) return "L1: deg H must equal s";
    if (p.h.coeff(0) != 0) return "L1: x must divide H";
    if (!below_degree(p.f0, n)) return "L1: deg F0 must be below n";
    if (!below_degree(p.f1, n - s)) return "L1: deg F1 must be below n - s";
    if (variant == 'a' && !below_degree(p.f2, n - 2 * s)) return "L1: deg F2 must be below n - 2s";
    if (variant == 'b' && !p.f2.is_zero()) return "L1: variant b has no F2 term";
    const ResultantPair rebuilt = assemble_pair(variant, inst.params.n, p.h, p.f0, p.f1, p.f2);
    if (!(rebuilt.f == p.f) || !(rebuilt.g == p.g)) return "L1: f, g do not match their components";
    return std::nullopt;
}

void require_hypotheses(const LemmaInstance& inst) {
    if (auto why = hypothesis_violation(inst)) throw HypothesisViolation(*why);
}

Residue8 det_mod8(const Mod8Matrix& m) { return Residue8::of(det_exact(m.to_int())); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

std::optional<std::string> general_violation(const Mod8Matrix& mat, std::size_t n) {
    if (n < 5 || n % 2 == 0) return "GENERAL: n must be odd and at least 5";
    LemmaParams p;
    p.n = n;
    p.m = n - 4;
    p.s = (n - 1) / 3;
    if (mat.rows() != p.m + n || mat.cols() != p.m + n) return "GENERAL: matrix must be (2n-4) x (2n-4)";
    return check_slots(mat, p, general_slot, "GENERAL");
}

std::optional<std::string> hypothesis_violation(const LemmaInstance& inst) {
    switch (inst.lemma) {
        case LemmaId::d: return d_violation(inst.matrix);
        case LemmaId::l1a:
        case LemmaId::l1b: return l1_violation(inst);
        case LemmaId::l2: {
            const auto& p = inst.params;
            if (p.m >= p.n) return "L2: requires m < n";
            if (inst.matrix.rows() != p.m + p.n || inst.matrix.cols() != p.m + p.n)
                return "L2: matrix must be (m+n) x (m+n)";
            return check_slots(inst.matrix, p, l2_slot, "L2");
        }
        case LemmaId::general: return general_violation(inst.matrix, inst.params.n);
    }
    return "unknown lemma";
}

LemmaInstance gen_d_instance(std::uint64_t seed, std::size_t size) {
    if (size == 0) throw std::invalid_argument("gen_d_instance: size must be positive");
    Drawer drawer(seed);
    LemmaInstance inst;
    inst.lemma = LemmaId::d;
    inst.params.size = size;
    inst.seed = seed;
    inst.matrix = Mod8Matrix(size, size);
    for (std::size_t i = 0; i < size; ++i) {
        inst.matrix.set(i, i, static_cast<unsigned>(drawer.below(8)));
        for (std::size_t j = i + 1; j < size; ++j) {
            // One of each transposed pair is a multiple of 4, the other merely even.
            const bool upper_small = drawer.below(2);
            const unsigned a = drawer.draw(Slot::mult4), b = drawer.draw(Slot::even);
            inst.matrix.set(i, j, upper_small ? a : b);
            inst.matrix.set(j, i, upper_small ? b : a);
        }
    }
    return inst;
}

LemmaInstance gen_l1_instance(std::uint64_t seed, char variant, std::size_t n, std::size_t s) {
    if (variant != 'a' && variant != 'b') throw std::invalid_argument("gen_l1_instance: variant must be 'a' or 'b'");
    const std::size_t terms = variant == 'a' ? 2 : 1;
    if (n <= 1 || s == 0 || n <= terms * s)
        throw std::invalid_argument("gen_l1_instance: unsatisfiable degree bounds for n=" + std::to_string(n) +
                                    ", s=" + std::to_string(s));
    Drawer drawer(seed);
    auto random_poly = [&](std::size_t len) {
        std::vector<mpz_class> c(len);
        for (auto& x : c) x = drawer.coefficient();
        return IntPoly(std::move(c));
    };
    std::vector<mpz_class> hc(s + 1);
    for (std::size_t i = 1; i < s; ++i) hc[i] = drawer.coefficient();
    long lead = 0;
    while (lead == 0) lead = static_cast<long>(drawer.below(8)) - 4;
    hc[s] = lead;

    IntPoly f0 = random_poly(n);
    IntPoly f1 = random_poly(n - s);
    IntPoly f2 = variant == 'a' ? random_poly(n - 2 * s) : IntPoly{};

    LemmaInstance inst;
    inst.lemma = variant == 'a' ? LemmaId::l1a : LemmaId::l1b;
    inst.params.n = n;
    inst.params.s = s;
    inst.seed = seed;
    inst.pair = assemble_pair(variant, n, IntPoly(std::move(hc)), std::move(f0), std::move(f1), std::move(f2));
    return inst;
}

LemmaInstance gen_l2_matrix(std::uint64_t seed, std::size_t m, std::size_t n) {
    if (m >= n) throw std::invalid_argument("gen_l2_matrix: requires m < n");
    Drawer drawer(seed);
    LemmaInstance inst;
    inst.lemma = LemmaId::l2;
    inst.params.m = m;
    inst.params.n = n;
    inst.seed = seed;
    inst.matrix = fill(m + n, inst.params, l2_slot, drawer);
    return inst;
}

LemmaInstance gen_general_matrix(std::uint64_t seed, std::size_t n) {
    if (n < 5 || n % 2 == 0) throw std::invalid_argument("gen_general_matrix: n must be odd and at least 5");
    Drawer drawer(seed);
    LemmaInstance inst;
    inst.lemma = LemmaId::general;
    inst.params.n = n;
    inst.params.m = n - 4;
    inst.params.s = (n - 1) / 3;
    inst.seed = seed;
    inst.matrix = fill(inst.params.m + n, inst.params, general_slot, drawer);
    return inst;
}

bool check_d(const LemmaInstance& inst) {
    require_hypotheses(inst);
    Residue8 diag(1);
    for (std::size_t i = 0; i < inst.matrix.rows(); ++i) diag = diag * Residue8(inst.matrix.at(i, i));
    return det_mod8(inst.matrix) == diag;
}

bool check_l1(const LemmaInstance& inst) {
    require_hypotheses(inst);
    return resultant_mod8(inst.pair->f, inst.pair->g) == Residue8(1);
}

bool check_l2(const LemmaInstance& inst) {
    require_hypotheses(inst);
    return det_mod8(inst.matrix) == Residue8(1);
}

bool check_general(const LemmaInstance& inst) {
    require_hypotheses(inst);
    return det_mod8(inst.matrix) == Residue8(1);
}

bool check_instance(const LemmaInstance& inst) {
    switch (inst.lemma) {
        case LemmaId::d: return check_d(inst);
        case LemmaId::l1a:
        case LemmaId::l1b: return check_l1(inst);
        case LemmaId::l2: return check_l2(inst);
        case LemmaId::general: return check_general(inst);
    }
    return false;
}

std::string to_replay_json(const LemmaInstance& inst) {
    nlohmann::ordered_json j;
    j["lemma_id"] = to_string(inst.lemma);
    j["parameters"] = {{"size", inst.params.size}, {"n", inst.params.n}, {"m", inst.params.m}, {"s", inst.params.s}};
    j["seed"] = inst.seed;
    if (inst.pair) {
        const auto& p = *inst.pair;
        j["polys"] = {{"H", p.h.to_string()},   {"F0", p.f0.to_string()}, {"F1", p.f1.to_string()},
                      {"F2", p.f2.to_string()}, {"f", p.f.to_string()},   {"g", p.g.to_string()}};
        const IntMatrix s = sylvester(p.f, p.g);
        std::vector<std::string> entries;
        for (const auto& e : s.entries()) entries.push_back(e.get_str());
        j["rows"] = s.rows();
        j["cols"] = s.cols();
        j["entries"] = entries;
    } else {
        j["rows"] = inst.matrix.rows();
        j["cols"] = inst.matrix.cols();
        j["entries"] = inst.matrix.entries();
    }
    if (inst.lemma == LemmaId::general)
        j["notes"] = "column offset k = m (the diagonal of D) is constrained only by M_ii = 1";
    return j.dump(2);
}

LemmaInstance from_replay_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        LemmaInstance inst;
        inst.lemma = parse_lemma_id(j.at("lemma_id").get<std::string>());
        const auto& p = j.at("parameters");
        inst.params.size = p.value("size", std::size_t{0});
        inst.params.n = p.value("n", std::size_t{0});
        inst.params.m = p.value("m", std::size_t{0});
        inst.params.s = p.value("s", std::size_t{0});
        inst.seed = j.at("seed").get<std::uint64_t>();
        if (inst.lemma == LemmaId::l1a || inst.lemma == LemmaId::l1b) {
            const auto& polys = j.at("polys");
            auto read = [&](const char* key) { return IntPoly::parse(polys.at(key).get<std::string>()); };
            inst.pair = ResultantPair{read("H"), read("F0"), read("F1"), read("F2"), read("f"), read("g")};
        } else {
            const auto rows = j.at("rows").get<std::size_t>(), cols = j.at("cols").get<std::size_t>();
            const auto entries = j.at("entries").get<std::vector<unsigned>>();
            if (entries.size() != rows * cols) throw ParseError("replay: entry count does not match rows*cols");
            inst.matrix = Mod8Matrix(rows, cols);
            for (std::size_t i = 0; i < entries.size(); ++i) {
                if (entries[i] > 7) throw ParseError("replay: entry outside 0..7");
                inst.matrix.set(i / cols, i % cols, entries[i]);
            }
        }
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("replay: ") + e.what());
    }
}

std::vector<LemmaParams> default_params(LemmaId lemma) {
    std::vector<LemmaParams> out;
    switch (lemma) {
        case LemmaId::d:
            for (std::size_t size = 2; size <= 8; ++size) out.push_back({size, 0, 0, 0});
            break;
        case LemmaId::l1a:
        case LemmaId::l1b:
            for (auto [n, s] : {std::pair{5, 1}, {8, 2}, {12, 3}, {16, 3}})
                out.push_back({0, static_cast<std::size_t>(n), 0, static_cast<std::size_t>(s)});
            break;
        case LemmaId::l2:
            for (std::size_t n = 1; n <= 12; ++n)
                for (std::size_t m = 0; m < n && m + n <= 12; ++m) out.push_back({0, n, m, 0});
            break;
        case LemmaId::general:
            for (std::size_t n : {5, 7, 9, 11}) out.push_back({0, n, n - 4, (n - 1) / 3});
            break;
    }
    return out;
}

std::uint64_t instance_seed(std::uint64_t campaign_seed, std::size_t index) {
    return splitmix64(splitmix64(campaign_seed) ^ static_cast<std::uint64_t>(index));
}

LemmaInstance generate(LemmaId lemma, const LemmaParams& p, std::uint64_t seed) {
    switch (lemma) {
        case LemmaId::d: return gen_d_instance(seed, p.size);
        case LemmaId::l1a: return gen_l1_instance(seed, 'a', p.n, p.s);
        case LemmaId::l1b: return gen_l1_instance(seed, 'b', p.n, p.s);
        case LemmaId::l2: return gen_l2_matrix(seed, p.m, p.n);
        case LemmaId::general: return gen_general_matrix(seed, p.n);
    }
    throw std::invalid_argument("generate: unknown lemma");
}

CampaignResult run_campaign(const CampaignConfig& config) {
    const auto params = config.params.empty() ? default_params(config.lemma) : config.params;
    enum class Outcome { pass, fail, rejected, skipped };
    auto make = [&](std::size_t i) {
        return generate(config.lemma, params[i % params.size()], instance_seed(config.seed, i));
    };

    // Lowest failing index seen so far; later trials are skipped. Every index
    // below the final minimum still runs, so the result is deterministic.
    std::atomic<std::size_t> first_fail{config.trials};
    const auto outcomes = parallel_map(config.trials, config.jobs, [&](std::size_t i) {
        if (i > first_fail.load(std::memory_order_relaxed)) return Outcome::skipped;
        const auto inst = make(i);
        if (hypothesis_violation(inst)) return Outcome::rejected;
        if (check_instance(inst)) return Outcome::pass;
        std::size_t cur = first_fail.load();
        while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {
        }
        return Outcome::fail;
    });

    const std::size_t stop = first_fail.load();
    CampaignResult result;
    result.trials = stop < config.trials ? stop + 1 : config.trials;
    for (std::size_t i = 0; i < result.trials; ++i) {
        switch (outcomes[i]) {
            case Outcome::pass: ++result.passed; break;
            case Outcome::rejected:
                ++result.rejected;
                if (!result.first_rejected) result.first_rejected = make(i);
                break;
            case Outcome::fail: result.counterexample = make(i); break;
            case Outcome::skipped: break;
        }
    }
    return result;
}

}  // namespace f2parity
