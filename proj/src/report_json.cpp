#include "sgm/report_json.hpp"

#include <json.hpp>

#include "sgm/builders.hpp"

namespace sgm {

namespace {

using nlohmann::json;  // the default json object keeps keys sorted

json witness_json(const CohomologyRing& ring, const ObstructionWitness& w) {
    json classes = json::array();
    json degrees = json::array();
    for (ClassRef c : w.classes) {
        classes.push_back({{"degree", c.degree},
                           {"index", c.index},
                           {"label", ring.basis().label(c)}});
        degrees.push_back(c.degree);
    }
    json coords = json::array();
    for (size_t i = 0; i < w.product.coeffs.size(); ++i) {
        if (scalar_is_zero(w.product.coeffs[i])) continue;
        coords.push_back({{"index", static_cast<int>(i)},
                          {"label", ring.basis().label({w.product.degree, static_cast<int>(i)})},
                          {"value", ring.coeff().to_string(w.product.coeffs[i])}});
    }
    return {{"classes", classes},
            {"degrees", degrees},
            {"target_n0", w.target_n0},
            {"total_degree", w.total_degree},
            {"product", {{"degree", w.product.degree}, {"coordinates", coords}}}};
}

json derivation_json(const SpDerivation& d, const CoefficientSpec& coeff);

json side_json(const SpDerivation& d, const CoefficientSpec& coeff) {
    if (const auto* r1 = std::get_if<R1Side>(&d.side)) return {{"sphere_dimension", r1->sphere_dim}};
    if (const auto* r2 = std::get_if<R2Side>(&d.side))
        return {{"dimension", r2->dimension}, {"summand_small_factors", r2->canonical_ks}};
    if (const auto* r3 = std::get_if<R3Side>(&d.side)) {
        ManifoldModel left = build(d.subject->left, coeff);
        ManifoldModel right = build(d.subject->right, coeff);
        return {{"dimension", r3->dimension},
                {"cohp_left", witness_json(*left.ring, r3->cohp_left)},
                {"cohp_right", witness_json(*right.ring, r3->cohp_right)}};
    }
    const auto& r4 = std::get<R4Side>(d.side);
    RecipePtr base_r = d.subject->left, factor_r = d.subject->right;
    if (!recipe_equal(*d.premises[0].subject, *base_r)) std::swap(base_r, factor_r);
    ManifoldModel base = build(base_r, coeff);
    ManifoldModel factor = build(factor_r, coeff);
    ManifoldModel product = kunneth_product(base, factor);
    return {{"base_dimension", r4.base_dim},
            {"base_level", r4.base_level},
            {"factor_dimension", r4.factor_dim},
            {"factor_degree_bound", r4.factor_degree_bound},
            {"base_cohp", witness_json(*base.ring, r4.base_cohp)},
            {"factor_product", witness_json(*factor.ring, r4.factor_exact)},
            {"product_cohp", witness_json(*product.ring, r4.product_cohp)},
            {"immersion_min", r4.immersion_min},
            {"base_free", r4.base_free},
            {"factor_free", r4.factor_free}};
}

json derivation_json(const SpDerivation& d, const CoefficientSpec& coeff) {
    json premises = json::array();
    for (const auto& p : d.premises) premises.push_back(derivation_json(p, coeff));
    return {{"rule", rule_name(d.rule)},
            {"n0", d.n0},
            {"subject", d.subject ? recipe_text(*d.subject) : ""},
            {"premises", premises},
            {"side_conditions", side_json(d, coeff)}};
}

}  // namespace

std::string emit_json(const SpectrumReport& report) {
    // Witness labels come from the ring; rebuild the model once.
    Expression expr = parse_expression(report.expression);
    ManifoldModel model = build(to_recipe(expr), report.coeff);

    json entries = json::array();
    for (const auto& e : report.entries) {
        json entry = {{"n", e.n}, {"status", entry_status_name(e.status)}};
        if (e.witness) entry["witness"] = witness_json(*model.ring, *e.witness);
        if (e.derivation) entry["derivation"] = derivation_json(*e.derivation, report.coeff);
        entries.push_back(std::move(entry));
    }

    json meta = {{"tool", report.meta.tool},
                 {"version", report.meta.version},
                 {"admissibility", report.meta.admissibility}};
    if (report.meta.timing_ms) meta["timing_ms"] = *report.meta.timing_ms;

    json doc = {{"expression", report.expression},
                {"dimension", report.dimension},
                {"coefficients", report.coeff.name()},
                {"entries", entries},
                {"notes", report.notes},
                {"meta", meta}};
    return doc.dump(2) + "\n";
}

}  // namespace sgm
