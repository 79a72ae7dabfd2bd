#pragma once

#include <stdexcept>
#include <string>

namespace sgm {

enum class errc {
    degree_mismatch,
    ring_mismatch,
    empty_sequence,
    invalid_dimension,
    unsupported_coefficients,
    coefficient_mismatch,
    torsion_unsupported,
    dimension_mismatch,
    orientability_violation,
    unsupported_ring,
    internal_inconsistency,
    invalid_argument,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

}  // namespace sgm
