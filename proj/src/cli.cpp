#include "f2parity/cli.hpp"

#include "f2parity/gf2poly.hpp"
#include "f2parity/intres.hpp"
#include "f2parity/lemma_lab.hpp"
#include "f2parity/search.hpp"
#include "f2parity/swan.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace f2parity::cli {

namespace {

ResidueMethod parse_method(const std::string& text) {
    if (text == "exact") return ResidueMethod::exact;
    if (text == "two-adic") return ResidueMethod::two_adic;
    throw ParseError("unknown method '" + text + "' (exact|two-adic)");
}

std::set<int> parse_residues(const std::string& text) {
    std::set<int> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            out.insert(v);
        } catch (const std::exception&) {
            throw ParseError("malformed residue '" + token + "'");
        }
    }
    return out;
}

std::string join(const std::vector<std::size_t>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
    return out;
}

int cmd_parity(const std::string& text, const std::string& method, std::ostream& out) {
    const BitPoly f = parse_poly(text);
    if (f.is_zero() || f.degree() == 0) throw std::domain_error("parity: polynomial must be non-constant");
    out << "f=" << f.to_string() << '\n';
    if (!is_squarefree(f)) {
        const auto t = count_factors_with_multiplicity(f);
        out << "predicted=none observed=" << to_string(parity_of(t)) << " t=" << t << " (not squarefree)\n";
        return kExitOk;
    }
    const Parity predicted = stickelberger_parity(f, parse_method(method));
    const auto t = count_distinct_irreducible_factors(f);
    out << "predicted=" << to_string(predicted) << " observed=" << to_string(parity_of(t)) << " t=" << t << '\n';
    return predicted == parity_of(t) ? kExitOk : kExitViolation;
}

int cmd_factors(const std::string& text, std::ostream& out) {
    const BitPoly f = parse_poly(text);
    if (f.is_zero() || f.degree() == 0) throw std::domain_error("factors: polynomial must be non-constant");
    out << "f=" << f.to_string() << '\n';
    out << "distinct=" << count_distinct_irreducible_factors(f)
        << " multiplicity=" << count_factors_with_multiplicity(f)
        << " squarefree=" << (is_squarefree(f) ? "true" : "false") << '\n';
    for (const auto& part : squarefree_decomposition(f))
        out << "part=" << part.factor.to_string() << " exponent=" << part.multiplicity << '\n';
    return kExitOk;
}

int cmd_disc(const std::string& text, std::ostream& out) {
    const BitPoly f = parse_poly(text);
    const IntPoly F = lift_01(f);
    const mpz_class d = discriminant_int(F);
    out << "f=" << f.to_string() << '\n';
    out << "disc=" << d.get_str() << " mod8=" << Residue8::of(d).value() << '\n';
    return kExitOk;
}

int cmd_predict(const std::string& spec_text, std::ostream& out, std::ostream& err) {
    const SupportSpec spec = SupportSpec::parse(spec_text);
    if (!spec.valid()) {
        err << "support violates the admissible-exponent condition: " << spec.violation() << '\n';
        return kExitUsage;
    }
    out << spec.to_string() << " parity=" << to_string(theorem_parity(spec.n(), spec.support())) << '\n';
    return kExitOk;
}

int cmd_verify(const std::string& spec_text, const std::string& method, std::ostream& out, std::ostream& err) {
    const SupportSpec spec = SupportSpec::parse(spec_text);
    if (!spec.valid()) {
        err << "support violates the admissible-exponent condition: " << spec.violation() << '\n';
        return kExitUsage;
    }
    VerifyOptions options;
    options.method = parse_method(method);
    options.check_padding = true;
    const ParityReport report = verify_theorem_instance(spec, options);
    out << to_json_line(report) << '\n';
    return report.agree ? kExitOk : kExitViolation;
}

int cmd_trace(const std::string& text, std::ostream& out) {
    const BitPoly f = parse_poly(text);
    const TraceSpectrum spec = trace_spectrum(f);
    std::vector<std::size_t> bits(spec.bits.begin(), spec.bits.end());
    out << "f=" << f.to_string() << '\n';
    out << "spectrum=" << join(bits, ",") << '\n';
    out << "I={" << join(spec.support(), ",") << "}\n";
    return kExitOk;
}

int cmd_fuzz(const std::string& lemma_text, std::size_t trials, std::uint64_t seed, std::size_t jobs,
             const LemmaParams& override_params, bool has_override, std::string dump, std::ostream& out,
             std::ostream& err) {
    CampaignConfig config;
    config.lemma = parse_lemma_id(lemma_text);
    config.trials = trials;
    config.seed = seed;
    config.jobs = jobs;
    if (has_override) config.params = {override_params};
    const CampaignResult result = run_campaign(config);
    out << "lemma=" << to_string(config.lemma) << " seed=" << seed << " trials=" << result.trials
        << " passed=" << result.passed << " rejected=" << result.rejected
        << " counterexamples=" << (result.counterexample ? 1 : 0) << '\n';
    if (dump.empty()) dump = std::string("lemma-") + to_string(config.lemma) + "-replay.json";
    auto write_replay = [&](const LemmaInstance& inst) {
        std::ofstream file(dump);
        file << to_replay_json(inst) << '\n';
        err << "replay written to " << dump << '\n';
    };
    if (result.counterexample) {
        write_replay(*result.counterexample);
        return kExitViolation;
    }
    if (result.first_rejected) {
        err << "generator produced an instance outside its hypotheses: "
            << hypothesis_violation(*result.first_rejected).value_or("?") << '\n';
        write_replay(*result.first_rejected);
        return kExitUsage;
    }
    return kExitOk;
}

int cmd_replay(const std::string& path, std::ostream& out, std::ostream& err) {
    std::ifstream file(path);
    if (!file) throw std::invalid_argument("cannot open replay file '" + path + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    const LemmaInstance inst = from_replay_json(buffer.str());
    if (auto why = hypothesis_violation(inst)) {
        err << "replay: hypothesis violation: " << *why << '\n';
        return kExitUsage;
    }
    const bool ok = check_instance(inst);
    out << "lemma=" << to_string(inst.lemma) << " seed=" << inst.seed << " result=" << (ok ? "pass" : "fail") << '\n';
    return ok ? kExitOk : kExitViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Factor-count parity toolkit for polynomials over F2", "f2parity"};
    app.require_subcommand(1, 1);

    std::string poly_text, spec_text, method = "exact", format = "table";
    std::size_t jobs = 1;

    auto* parity = app.add_subcommand("parity", "discriminant-based parity prediction vs. factor count");
    parity->add_option("poly", poly_text, "polynomial over F2")->required();
    parity->add_option("--method", method, "exact|two-adic");

    auto* factors = app.add_subcommand("factors", "distinct and multiplicity factor counts");
    factors->add_option("poly", poly_text)->required();

    auto* disc = app.add_subcommand("disc", "exact discriminant of the 0/1 lift and its residue mod 8");
    disc->add_option("poly", poly_text)->required();

    auto* predict = app.add_subcommand("predict", "factor-count parity from n mod 8 for an admissible support");
    predict->add_option("--spec", spec_text, "e.g. \"n=13;S=1,9\"")->required();

    auto* verify = app.add_subcommand("verify", "check every identity for one support and print the report");
    verify->add_option("--spec", spec_text)->required();
    verify->add_option("--method", method, "exact|two-adic");

    auto* trace = app.add_subcommand("trace", "trace spectrum Tr(alpha^i) of an irreducible polynomial");
    trace->add_option("poly", poly_text)->required();

    SearchQuery query;
    std::string shape = "trinomial", exps = "all", m1 = "none", residues;
    bool full_check = false;
    auto* search = app.add_subcommand("search", "enumerate and screen sparse candidates");
    search->add_option("--n-lo", query.n_lo)->required();
    search->add_option("--n-hi", query.n_hi)->required();
    search->add_option("--shape", shape, "trinomial|pentanomial|any-support");
    search->add_option("--exponents", exps, "all|odd-only");
    search->add_option("--m1-bound", m1, "none|below-n-over-3|at-least-n-over-3");
    search->add_option("--residues", residues, "allowed n mod 8, e.g. 3,5");
    search->add_option("--format", format, "jsonl|table|csv");
    search->add_option("--jobs", jobs);
    search->add_flag("--full-check", full_check, "never skip the factor count");

    int audit_lo = 5, audit_hi = 99;
    auto* audit = app.add_subcommand("audit", "exhaustive check of small odd-exponent supports");
    audit->add_option("--n-lo", audit_lo);
    audit->add_option("--n-hi", audit_hi);
    audit->add_option("--format", format, "jsonl|table|csv");
    audit->add_option("--jobs", jobs);

    std::string lemma, dump, replay;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    LemmaParams override_params;
    auto* fuzz = app.add_subcommand("lemma-fuzz", "randomized check of the mod-8 determinant lemmas");
    auto* lemma_opt = fuzz->add_option("--lemma", lemma, "d|l1a|l1b|l2|general");
    fuzz->add_option("--trials", trials);
    auto* seed_opt = fuzz->add_option("--seed", seed);
    fuzz->add_option("--jobs", jobs);
    auto* size_opt = fuzz->add_option("--size", override_params.size, "matrix size (d)");
    auto* n_opt = fuzz->add_option("--n", override_params.n, "n (l1a, l1b, l2, general)");
    auto* m_opt = fuzz->add_option("--m", override_params.m, "m (l2)");
    auto* s_opt = fuzz->add_option("--s", override_params.s, "s (l1a, l1b)");
    fuzz->add_option("--dump", dump, "replay file written on failure");
    auto* replay_opt = fuzz->add_option("--replay", replay, "re-check a replay file");
    lemma_opt->excludes(replay_opt);
    seed_opt->excludes(replay_opt);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*parity) return cmd_parity(poly_text, method, out);
        if (*factors) return cmd_factors(poly_text, out);
        if (*disc) return cmd_disc(poly_text, out);
        if (*predict) return cmd_predict(spec_text, out, err);
        if (*verify) return cmd_verify(spec_text, method, out, err);
        if (*trace) return cmd_trace(poly_text, out);
        if (*search) {
            query.shape = parse_shape(shape);
            query.exponents = parse_exponent_filter(exps);
            query.m1_bound = parse_m1_bound(m1);
            query.residues = parse_residues(residues);
            const auto fmt = parse_format(format);
            const auto records = scan(query, {jobs, full_check});
            write_records(out, records, fmt);
            err << records.size() << " records\n";
            return kExitOk;
        }
        if (*audit) {
            const auto fmt = parse_format(format);
            const auto report = corollary_audit(audit_lo, audit_hi, jobs);
            write_audit(out, report, fmt);
            err << report.rows.size() << " degrees\n";
            return report.violations() == 0 ? kExitOk : kExitViolation;
        }
        if (*fuzz) {
            if (!replay.empty()) return cmd_replay(replay, out, err);
            if (lemma.empty() || seed_opt->count() == 0) {
                err << "usage error: lemma-fuzz needs --lemma and --seed (or --replay)\n";
                return kExitUsage;
            }
            const bool has_override = size_opt->count() + n_opt->count() + m_opt->count() + s_opt->count() > 0;
            if (has_override && parse_lemma_id(lemma) == LemmaId::general && override_params.n >= 4) {
                override_params.m = override_params.n - 4;
                override_params.s = (override_params.n - 1) / 3;
            }
            return cmd_fuzz(lemma, trials, seed, jobs, override_params, has_override, dump, out, err);
        }
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace f2parity::cli
