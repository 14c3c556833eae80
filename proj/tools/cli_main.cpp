// Command-line front end over the library: decide whether a language has a
// symmetric fractional polymorphism, lift one to a higher arity, solve the
// linear relaxation of an instance, convert a conservative operation pair to
// a submodular one, and re-verify any emitted distribution.
//
// Exit codes: 0 success or positive verdict, 1 negative verdict, 2 input
// error (bad flags, malformed files, caps exceeded).
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vcsplp/blp.hpp"
#include "vcsplp/io.hpp"
#include "vcsplp/lift.hpp"
#include "vcsplp/stp.hpp"

namespace {

using namespace vcsp;

std::string format_vector(const Vector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += rational_to_string(v[i]);
    }
    return out;
}

std::string format_labeling(const Labeling& x) {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(x[i]);
    }
    return out;
}

void emit(const std::string& out_path, const std::string& text) {
    std::cout << text;
    if (!out_path.empty()) write_text_file(out_path, text);
}

int run_check_language(const std::string& lang_path, int arity,
                       long long cap_states, const std::string& out_path) {
    const Language lang = parse_language(read_text_file(lang_path));
    const SymmetricSearch search = find_symmetric_fpoly(lang, arity, cap_states);
    if (search.fpoly) {
        const bool ok = admits(lang, *search.fpoly);
        std::cout << "FEASIBLE\n"
                  << "arity: " << arity << "\n"
                  << "admits: " << (ok ? "true" : "false") << "\n";
        if (!ok)
            throw std::logic_error("feasible distribution failed re-verification");
        emit(out_path, serialize_fpoly(*search.fpoly));
        return 0;
    }
    const bool certified =
        verify_outcome(search.lp, LpOutcome(*search.certificate));
    std::cout << "INFEASIBLE\n"
              << "farkas: " << format_vector(search.certificate->y) << "\n"
              << "certificate: " << (certified ? "verified" : "REJECTED") << "\n";
    if (!certified)
        throw std::logic_error("infeasibility certificate failed re-verification");
    return 1;
}

int run_lift(const std::string& lang_path, const std::string& fpoly_path,
             int to, long long cap, const std::string& out_path) {
    const Language lang = parse_language(read_text_file(lang_path));
    FractionalPolymorphism seed = parse_fpoly(read_text_file(fpoly_path));
    if (seed.arity_out > 1) seed = collapse(seed);
    if (!has_symmetric_support(seed))
        throw InputError(
            "seed distribution must have fully symmetric support; a support "
            "operation that depends on its argument order (a projection, for "
            "instance) does not carry enough structure to reach every arity");
    if (!admits(lang, seed))
        throw InputError("seed distribution is not admitted by the language");

    const FractionalPolymorphism lifted = lift_to(lang, seed, to, cap);
    const bool ok = admits(lang, lifted);
    std::cout << "lifted arity: " << to << "\n"
              << "admits: " << (ok ? "true" : "false") << "\n";
    if (!ok) throw std::logic_error("lifted distribution failed re-verification");
    emit(out_path, serialize_fpoly(lifted));
    return 0;
}

int run_solve(const std::string& inst_path, const std::string& lang_path,
              bool compare, long long cap) {
    const Language lang = parse_language(read_text_file(lang_path));
    const Instance inst = parse_instance(lang, read_text_file(inst_path));
    if (!compare) {
        const BlpSolution sol = solve_blp(lang, inst, cap);
        std::cout << "blp optimum: " << rational_to_string(sol.value) << "\n";
        return 0;
    }
    const TightnessReport report = check_tightness(lang, inst, cap);
    std::cout << "blp optimum: " << rational_to_string(report.blp_value) << "\n"
              << "integral optimum: "
              << rational_to_string(report.integral_value) << "\n"
              << "gap: " << rational_to_string(report.gap) << "\n"
              << "verdict: " << (report.tight ? "TIGHT" : "GAP") << "\n";
    return report.tight ? 0 : 1;
}

int run_stp(const std::string& lang_path, const std::string& pair_path,
            const std::string& out_path) {
    const Language lang = parse_language(read_text_file(lang_path));
    const MultimorphismPair pair = parse_pair(read_text_file(pair_path));
    if (!is_stp(pair))
        throw InputError("pair is not commutative and conservative");
    MultimorphismWitness w;
    if (!admits_multimorphism(lang, pair, &w)) {
        std::cout << "admits: false\n"
                  << "violated by: " << lang.names[w.function] << " at x=("
                  << format_labeling(w.x) << ") y=(" << format_labeling(w.y)
                  << ")\n";
        return 1;
    }
    const StpConversion conv = stp_to_submodular(lang, pair);
    std::cout << "flips: " << conv.flips.size() << "\n";
    for (const Flip& flip : conv.flips)
        std::cout << "flip: " << flip.from << "->" << flip.to << " witness "
                  << flip.witness << "\n";
    std::cout << "order:";
    for (Label v : conv.order) std::cout << ' ' << v;
    std::cout << "\n";
    emit(out_path, serialize_pair(conv.pair));
    return 0;
}

int run_verify(const std::string& fpoly_path, const std::string& lang_path) {
    const Language lang = parse_language(read_text_file(lang_path));
    const FractionalPolymorphism rho = parse_fpoly(read_text_file(fpoly_path));
    AdmitsWitness w;
    if (admits(lang, rho, &w)) {
        std::cout << "admits: true\n";
        return 0;
    }
    std::cout << "admits: false\n"
              << "violated by: " << lang.names[w.function] << "\n";
    for (const Labeling& x : w.labelings)
        std::cout << "  labeling: " << format_labeling(x) << "\n";
    return 1;
}

int run_gen_instance(const std::string& lang_path, int nodes, int terms,
                     std::uint64_t seed, const std::string& out_path) {
    const Language lang = parse_language(read_text_file(lang_path));
    const Instance inst = random_instance(lang, nodes, terms, seed);
    emit(out_path, serialize_instance(lang, inst));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "exact toolkit for valued constraint languages: symmetric fractional "
        "polymorphisms, constructive arity lifting, the basic LP relaxation, "
        "and tournament-pair conversion"};
    app.require_subcommand(1);

    std::string lang_path, aux_path, out_path;
    int arity = 2;
    int to = 3;
    int nodes = 4, terms = 4;
    std::uint64_t seed = 1;
    long long cap_states = kDefaultSymmetricOpCap;
    long long mapping_cap = kDefaultMappingCap;
    long long blp_cap = kDefaultBlpVariableCap;
    bool compare = false;

    CLI::App* check = app.add_subcommand(
        "check-language",
        "decide whether the language has a symmetric fractional polymorphism");
    check->add_option("language", lang_path, "language file")->required();
    check->add_option("--arity", arity, "arity of the distribution searched for");
    check->add_option("--cap-states", cap_states,
                      "cap on the number of enumerated symmetric operations");
    check->add_option("--out", out_path, "write the distribution here");

    CLI::App* lift = app.add_subcommand(
        "lift", "lift a symmetric distribution to another arity");
    lift->add_option("language", lang_path, "language file")->required();
    lift->add_option("fpoly", aux_path, "seed distribution file")->required();
    lift->add_option("--to", to, "target arity")->required();
    lift->add_option("--cap-states", mapping_cap,
                     "cap on the number of generated mappings");
    lift->add_option("--out", out_path, "write the lifted distribution here");

    CLI::App* solve = app.add_subcommand(
        "solve", "solve the linear relaxation of an instance");
    solve->add_option("instance", aux_path, "instance file")->required();
    solve->add_option("language", lang_path, "language file")->required();
    solve->add_flag("--compare-brute-force", compare,
                    "also compute the exhaustive minimum and the gap");
    solve->add_option("--cap-states", blp_cap,
                      "cap on the relaxation's variable count");

    CLI::App* stp = app.add_subcommand(
        "stp-to-submodular",
        "turn an admitted conservative commutative pair into min/max under a "
        "total order");
    stp->add_option("language", lang_path, "language file")->required();
    stp->add_option("pair", aux_path, "operation pair file")->required();
    stp->add_option("--out", out_path, "write the submodular pair here");

    CLI::App* verify = app.add_subcommand(
        "verify", "re-check a distribution file against a language file");
    verify->add_option("fpoly", aux_path, "distribution file")->required();
    verify->add_option("language", lang_path, "language file")->required();

    CLI::App* gen = app.add_subcommand(
        "gen-instance", "sample a reproducible random instance");
    gen->add_option("language", lang_path, "language file")->required();
    gen->add_option("--nodes", nodes, "node count");
    gen->add_option("--terms", terms, "term count");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--out", out_path, "write the instance here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed())
            return run_check_language(lang_path, arity, cap_states, out_path);
        if (lift->parsed())
            return run_lift(lang_path, aux_path, to, mapping_cap, out_path);
        if (solve->parsed())
            return run_solve(aux_path, lang_path, compare, blp_cap);
        if (stp->parsed()) return run_stp(lang_path, aux_path, out_path);
        if (verify->parsed()) return run_verify(aux_path, lang_path);
        if (gen->parsed())
            return run_gen_instance(lang_path, nodes, terms, seed, out_path);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
