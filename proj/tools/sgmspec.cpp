#include <CLI11.hpp>

#include <iostream>

#include "sgm/report_json.hpp"
#include "sgm/spectrum.hpp"

namespace {

// exit codes: 0 success, 1 usage/parse error, 2 semantic error, 3 internal inconsistency
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSemantic = 2;
constexpr int kExitInternal = 3;

sgm::CoefficientSpec parse_coeff(const std::string& text) {
    if (text == "Z") return sgm::CoefficientSpec::integers();
    if (text == "Q") return sgm::CoefficientSpec::rationals();
    if (text == "Z2") return sgm::CoefficientSpec::prime_field(2);
    if (text.rfind("Zp:", 0) == 0) {
        try {
            return sgm::CoefficientSpec::prime_field(mpz_class(text.substr(3)));
        } catch (const std::invalid_argument&) {
            throw sgm::Error(sgm::errc::invalid_argument, "malformed prime in '" + text + "'");
        }
    }
    throw sgm::Error(sgm::errc::invalid_argument,
                     "unknown coefficient ring '" + text + "' (expected Z, Q, Z2 or Zp:<p>)");
}

void print_span_error(const std::string& kind, const std::string& text, size_t begin, size_t end,
                      const std::string& msg) {
    std::cerr << kind << ": " << msg << "\n  " << text << "\n  ";
    for (size_t i = 0; i < begin; ++i) std::cerr << ' ';
    for (size_t i = begin; i < std::max(end, begin + 1); ++i) std::cerr << '^';
    std::cerr << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"special generic map spectrum calculator: per target dimension n, decide whether "
                 "a manifold built from spheres, tori and projective spaces is obstructed by a "
                 "cup product (with a witness) or provably admits a map (with a derivation)"};
    app.name("sgmspec");

    std::string expression;
    std::string coeff_text = "Q";
    bool json_output = false;
    bool show_witnesses = false;
    bool no_admissibility = false;
    bool deterministic = false;
    int max_dim = 16;

    app.add_option("expression", expression,
                   "manifold expression, e.g. \"S(2)xS(4) # S(2)xS(4)\" or \"RP(7)\"")
        ->required();
    app.add_option("--coeff", coeff_text, "coefficient ring: Z, Q, Z2 or Zp:<p>")
        ->capture_default_str();
    app.add_flag("--json", json_output, "emit the canonical JSON report");
    app.add_flag("--witness", show_witnesses, "expand witnesses and derivations in the text report");
    app.add_flag("--no-admissibility", no_admissibility, "obstruction check only");
    app.add_flag("--deterministic", deterministic, "suppress timing metadata");
    app.add_option("--max-dim", max_dim, "refuse expressions above this dimension")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        sgm::CoefficientSpec coeff = parse_coeff(coeff_text);
        sgm::SpectrumOptions options;
        options.admissibility = !no_admissibility;
        options.deterministic = deterministic;
        options.max_dim = max_dim;

        sgm::SpectrumReport report = sgm::run_spectrum(expression, coeff, options);
        if (json_output)
            std::cout << sgm::emit_json(report);
        else
            std::cout << sgm::format_text_report(report, show_witnesses);
        return kExitOk;
    } catch (const sgm::SyntaxError& e) {
        print_span_error("syntax error", expression, e.span().begin, e.span().end, e.what());
        return kExitUsage;
    } catch (const sgm::SemanticError& e) {
        print_span_error("semantic error", expression, e.span().begin, e.span().end, e.what());
        return kExitSemantic;
    } catch (const sgm::Error& e) {
        std::cerr << sgm::errc_name(e.code()) << ": " << e.what() << "\n";
        switch (e.code()) {
            case sgm::errc::invalid_argument:
                return kExitUsage;  // malformed flag values
            case sgm::errc::internal_inconsistency:
            case sgm::errc::degree_mismatch:
            case sgm::errc::ring_mismatch:
            case sgm::errc::empty_sequence:
                return kExitInternal;
            default:
                return kExitSemantic;  // builder/semantic refusals
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}
