#pragma once

#include <string>

#include "sgm/spectrum.hpp"

namespace sgm {

/// Canonical JSON bytes for a spectrum report: keys sorted, UTF-8, two-space
/// indent, newline-terminated. Scalar values are serialized as exact strings.
/// Byte-identical across runs of the same query except for meta.timing_ms,
/// which the deterministic option suppresses.
std::string emit_json(const SpectrumReport& report);

}  // namespace sgm
