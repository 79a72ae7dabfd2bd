#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "sgm/errors.hpp"

namespace sgm {

/// Exact element of the coefficient ring. All arithmetic is arbitrary
/// precision; prime-field values are kept as canonical residues in [0, p)
/// with denominator 1. Arithmetic goes through CoefficientSpec so values
/// stay canonical.
using Scalar = mpq_class;

enum class CoeffKind { Integers, Rationals, PrimeField };

/// The coefficient ring A: the integers, the rationals, or the integers
/// mod a prime. Every supported choice is a principal ideal domain with
/// identity.
class CoefficientSpec {
public:
    CoefficientSpec() : kind_(CoeffKind::Rationals), prime_(0) {}

    static CoefficientSpec integers() { return CoefficientSpec(CoeffKind::Integers, 0); }
    static CoefficientSpec rationals() { return CoefficientSpec(CoeffKind::Rationals, 0); }
    static CoefficientSpec prime_field(const mpz_class& p);  // throws invalid_argument unless p is prime

    CoeffKind kind() const { return kind_; }
    const mpz_class& prime() const { return prime_; }
    bool is_field() const { return kind_ != CoeffKind::Integers; }
    mpz_class characteristic() const { return kind_ == CoeffKind::PrimeField ? prime_ : 0; }

    bool operator==(const CoefficientSpec& o) const {
        return kind_ == o.kind_ && (kind_ != CoeffKind::PrimeField || prime_ == o.prime_);
    }
    bool operator!=(const CoefficientSpec& o) const { return !(*this == o); }

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }
    Scalar from_int(long v) const;

    /// Canonical form of an arbitrary exact value in this ring. Over a prime
    /// field this reduces num/den to a residue (the denominator must be
    /// invertible mod p); over the integers the denominator must be 1.
    Scalar normalize(const Scalar& s) const;
    bool is_canonical(const Scalar& s) const;

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;

    /// Multiplicative inverse; nullopt when none exists (zero, or a
    /// non-unit integer).
    std::optional<Scalar> inverse(const Scalar& a) const;

    std::string name() const;  // "Z", "Q", "Z/2", ...
    std::string to_string(const Scalar& s) const;

private:
    CoefficientSpec(CoeffKind k, mpz_class p) : kind_(k), prime_(std::move(p)) {}

    CoeffKind kind_;
    mpz_class prime_;
};

inline bool scalar_is_zero(const Scalar& s) { return sgn(s) == 0; }

}  // namespace sgm
