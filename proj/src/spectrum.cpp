#include "sgm/spectrum.hpp"

#include <chrono>
#include <sstream>

#include "sgm/builders.hpp"

namespace sgm {

const char* entry_status_name(EntryStatus s) {
    switch (s) {
        case EntryStatus::Obstructed: return "obstructed";
        case EntryStatus::Admits: return "admits";
        case EntryStatus::Unknown: return "unknown";
    }
    return "?";
}

SpectrumReport run_spectrum(const std::string& text, const CoefficientSpec& coeff,
                            const SpectrumOptions& options) {
    auto start = std::chrono::steady_clock::now();

    Expression expr = parse_expression(text);
    RecipePtr recipe = to_recipe(expr);
    long long dim = recipe_dimension(*recipe);
    if (dim > options.max_dim)
        throw Error(errc::invalid_dimension,
                    "dimension " + std::to_string(dim) + " exceeds the search guard (--max-dim=" +
                        std::to_string(options.max_dim) + ")");

    ManifoldModel model = build(recipe, coeff);
    const int m = model.dimension;

    SpectrumReport report;
    report.expression = recipe_text(*recipe);
    report.dimension = m;
    report.coeff = coeff;
    report.meta.tool = kToolName;
    report.meta.version = kToolVersion;
    report.meta.admissibility = options.admissibility;

    const int n_max = m >= 2 ? obstructed_max(model) : 0;

    std::shared_ptr<const SpDerivation> derivation;
    if (options.admissibility)
        if (auto d = derive_sp(recipe, coeff))
            derivation = std::make_shared<const SpDerivation>(std::move(*d));

    // The central consistency requirement: a derived certificate below or at
    // the obstructed range means the implementation is wrong somewhere.
    if (derivation && derivation->n0 <= n_max)
        throw Error(errc::internal_inconsistency,
                    "admissibility threshold " + std::to_string(derivation->n0) +
                        " overlaps the obstructed range 1.." + std::to_string(n_max));

    for (int n = 1; n <= m - 1; ++n) {
        SpectrumEntry entry;
        entry.n = n;
        if (n <= n_max) {
            auto w = cohp_check(model, n);
            if (!w)
                throw Error(errc::internal_inconsistency,
                            "CohP monotonicity violated at level " + std::to_string(n));
            entry.status = EntryStatus::Obstructed;
            entry.witness = std::move(*w);
        } else if (derivation && n >= derivation->n0) {
            entry.status = EntryStatus::Admits;
            entry.derivation = derivation;
        } else {
            entry.status = EntryStatus::Unknown;
        }
        report.entries.push_back(std::move(entry));
    }

    if (n_max >= 1)
        report.notes.push_back(
            "an obstructed n rules out special generic maps into every connected non-closed "
            "n-manifold without boundary, Euclidean space included");
    if (derivation && derivation_has_mixed_sphere_sum(*derivation))
        report.notes.push_back(
            "mixed sphere-product sum: the certificate threshold is max over summands of the "
            "smaller factor dimension plus one, because every summand's small factor must stay "
            "below the target dimension");

    if (!options.deterministic) {
        auto elapsed = std::chrono::steady_clock::now() - start;
        report.meta.timing_ms =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed).count();
    }
    return report;
}

int report_obstructed_max(const SpectrumReport& report) {
    int n_max = 0;
    for (const auto& e : report.entries)
        if (e.status == EntryStatus::Obstructed) n_max = std::max(n_max, e.n);
    return n_max;
}

namespace {

std::string witness_summary(const CohomologyRing& ring, const ObstructionWitness& w) {
    std::ostringstream out;
    for (size_t i = 0; i < w.classes.size(); ++i) {
        if (i) out << " . ";
        out << ring.basis().label(w.classes[i]);
    }
    out << "  (degrees";
    for (ClassRef c : w.classes) out << " " << c.degree;
    out << ", sum " << w.total_degree << ")";
    return out.str();
}

void print_derivation(const SpDerivation& d, std::ostringstream& out, int indent) {
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    out << pad << rule_name(d.rule) << "  n0=" << d.n0;
    if (d.subject) out << "  [" << recipe_text(*d.subject) << "]";
    out << "\n";
    if (const auto* r2 = std::get_if<R2Side>(&d.side)) {
        out << pad << "  small factors:";
        for (int k : r2->canonical_ks) out << " " << k;
        out << "\n";
    } else if (const auto* r3 = std::get_if<R3Side>(&d.side)) {
        out << pad << "  CohP level " << r3->cohp_left.target_n0 << " holds on both summands\n";
    } else if (const auto* r4 = std::get_if<R4Side>(&d.side)) {
        out << pad << "  base level " << r4->base_level << ", factor dim " << r4->factor_dim
            << ", degree bound " << r4->factor_degree_bound << ", immersion min "
            << r4->immersion_min << "\n";
    }
    for (const auto& p : d.premises) print_derivation(p, out, indent + 1);
}

}  // namespace

std::string format_text_report(const SpectrumReport& report, bool include_witnesses) {
    std::ostringstream out;
    out << "expression:   " << report.expression << "\n";
    out << "dimension:    " << report.dimension << "\n";
    out << "coefficients: " << report.coeff.name() << "\n";

    // Ring needed to label witness classes: rebuild once for display.
    ManifoldModel model;
    bool have_model = false;
    if (include_witnesses) {
        Expression expr = parse_expression(report.expression);
        model = build(to_recipe(expr), report.coeff);
        have_model = true;
    }

    if (report.entries.empty()) {
        out << "no target dimensions (m - 1 < 1)\n";
    } else {
        out << "spectrum (n = 1.." << report.dimension - 1 << "):\n";
    }
    for (const auto& e : report.entries) {
        const char* glyph = e.status == EntryStatus::Obstructed ? "✗"
                            : e.status == EntryStatus::Admits   ? "✓"
                                                                : "?";
        out << "  n=" << e.n << "  " << glyph << " " << entry_status_name(e.status);
        if (e.status == EntryStatus::Obstructed && e.witness) {
            out << "  l=" << e.witness->classes.size() << ", degree sum " << e.witness->total_degree;
            if (have_model) {
                out << ": " << witness_summary(*model.ring, *e.witness);
                RingElement p = e.witness->product;
                p.ring = model.ring;
                out << ", product = " << element_to_string(p);
            }
        } else if (e.status == EntryStatus::Admits && e.derivation) {
            out << "  via " << rule_name(e.derivation->rule) << " (n0=" << e.derivation->n0 << ")";
        }
        out << "\n";
    }

    if (include_witnesses) {
        for (const auto& e : report.entries) {
            if (e.status == EntryStatus::Admits && e.derivation) {
                out << "derivation:\n";
                print_derivation(*e.derivation, out, 1);
                break;  // the suffix shares one derivation
            }
        }
    }

    if (!report.notes.empty()) {
        out << "notes:\n";
        for (const auto& n : report.notes) out << "  - " << n << "\n";
    }
    if (report.meta.timing_ms) out << "elapsed: " << *report.meta.timing_ms << " ms\n";
    return out.str();
}

}  // namespace sgm
