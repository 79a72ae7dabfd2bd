#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sgm/admissibility.hpp"
#include "sgm/parser.hpp"

namespace sgm {

inline constexpr const char* kToolName = "sgmspec";
inline constexpr const char* kToolVersion = "1.0.0";

enum class EntryStatus { Obstructed, Admits, Unknown };

const char* entry_status_name(EntryStatus s);

/// Verdict for one target dimension n: obstructed (with a cup-product
/// witness), admits (with a derivation), or unknown.
struct SpectrumEntry {
    int n = 0;
    EntryStatus status = EntryStatus::Unknown;
    std::optional<ObstructionWitness> witness;            // when obstructed
    std::shared_ptr<const SpDerivation> derivation;       // when admitting; shared across the suffix
};

struct ReportMeta {
    std::string tool;
    std::string version;
    std::optional<double> timing_ms;  // absent under --deterministic
    bool admissibility = true;
};

/// Verdicts for every n in 1..m-1. Obstructed entries form a prefix
/// {1..n_max}; admitting entries form a suffix; the two never overlap.
struct SpectrumReport {
    std::string expression;  // canonical text
    int dimension = 0;
    CoefficientSpec coeff;
    std::vector<SpectrumEntry> entries;
    std::vector<std::string> notes;
    ReportMeta meta;
};

struct SpectrumOptions {
    bool admissibility = true;   // off: report obstruction only
    bool deterministic = false;  // suppress timing metadata
    int max_dim = 16;            // refuse oversized searches
};

/// Parses, builds, decides every target dimension, and asserts consistency
/// (an overlap of obstructed and admitting verdicts is a fatal internal
/// inconsistency).
SpectrumReport run_spectrum(const std::string& text, const CoefficientSpec& coeff,
                            const SpectrumOptions& options = {});

int report_obstructed_max(const SpectrumReport& report);

/// One line per n with a status glyph, witness summary and rule name;
/// include_witnesses expands full class lists and derivation trees.
std::string format_text_report(const SpectrumReport& report, bool include_witnesses);

}  // namespace sgm
