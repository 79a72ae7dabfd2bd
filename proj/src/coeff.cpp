#include "sgm/coeff.hpp"

namespace sgm {

const char* errc_name(errc code) {
    switch (code) {
        case errc::degree_mismatch: return "DegreeMismatch";
        case errc::ring_mismatch: return "RingMismatch";
        case errc::empty_sequence: return "EmptySequence";
        case errc::invalid_dimension: return "InvalidDimension";
        case errc::unsupported_coefficients: return "UnsupportedCoefficients";
        case errc::coefficient_mismatch: return "CoefficientMismatch";
        case errc::torsion_unsupported: return "TorsionUnsupported";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::orientability_violation: return "OrientabilityViolation";
        case errc::unsupported_ring: return "UnsupportedRing";
        case errc::internal_inconsistency: return "InternalInconsistency";
        case errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

CoefficientSpec CoefficientSpec::prime_field(const mpz_class& p) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw Error(errc::invalid_argument, "coefficient modulus " + p.get_str() + " is not prime");
    return CoefficientSpec(CoeffKind::PrimeField, p);
}

namespace {

mpz_class mod_reduce(const mpz_class& v, const mpz_class& p) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());  // floor division: r in [0, p)
    return r;
}

}  // namespace

Scalar CoefficientSpec::from_int(long v) const {
    Scalar s(v);
    return kind_ == CoeffKind::PrimeField ? normalize(s) : s;
}

Scalar CoefficientSpec::normalize(const Scalar& s) const {
    switch (kind_) {
        case CoeffKind::Rationals:
            return s;  // mpq_class arithmetic keeps fractions reduced
        case CoeffKind::Integers:
            if (s.get_den() != 1)
                throw Error(errc::invalid_argument, "value " + s.get_str() + " is not an integer");
            return s;
        case CoeffKind::PrimeField: {
            mpz_class num = mod_reduce(s.get_num(), prime_);
            if (s.get_den() != 1) {
                mpz_class den = mod_reduce(s.get_den(), prime_);
                mpz_class inv;
                if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), prime_.get_mpz_t()) == 0)
                    throw Error(errc::invalid_argument,
                                "denominator " + s.get_den().get_str() + " is not invertible mod " + prime_.get_str());
                num = mod_reduce(num * inv, prime_);
            }
            return Scalar(num);
        }
    }
    return s;
}

bool CoefficientSpec::is_canonical(const Scalar& s) const {
    switch (kind_) {
        case CoeffKind::Rationals: return true;
        case CoeffKind::Integers: return s.get_den() == 1;
        case CoeffKind::PrimeField: return s.get_den() == 1 && s.get_num() >= 0 && s.get_num() < prime_;
    }
    return false;
}

Scalar CoefficientSpec::add(const Scalar& a, const Scalar& b) const {
    Scalar r = a + b;
    return kind_ == CoeffKind::PrimeField ? Scalar(mod_reduce(r.get_num(), prime_)) : r;
}

Scalar CoefficientSpec::sub(const Scalar& a, const Scalar& b) const {
    Scalar r = a - b;
    return kind_ == CoeffKind::PrimeField ? Scalar(mod_reduce(r.get_num(), prime_)) : r;
}

Scalar CoefficientSpec::mul(const Scalar& a, const Scalar& b) const {
    Scalar r = a * b;
    return kind_ == CoeffKind::PrimeField ? Scalar(mod_reduce(r.get_num(), prime_)) : r;
}

Scalar CoefficientSpec::neg(const Scalar& a) const {
    Scalar r = -a;
    return kind_ == CoeffKind::PrimeField ? Scalar(mod_reduce(r.get_num(), prime_)) : r;
}

std::optional<Scalar> CoefficientSpec::inverse(const Scalar& a) const {
    if (scalar_is_zero(a)) return std::nullopt;
    switch (kind_) {
        case CoeffKind::Rationals:
            return Scalar(1) / a;
        case CoeffKind::Integers:
            if (a == 1 || a == -1) return a;
            return std::nullopt;
        case CoeffKind::PrimeField: {
            mpz_class inv;
            if (mpz_invert(inv.get_mpz_t(), a.get_num().get_mpz_t(), prime_.get_mpz_t()) == 0)
                return std::nullopt;
            return Scalar(inv);
        }
    }
    return std::nullopt;
}

std::string CoefficientSpec::name() const {
    switch (kind_) {
        case CoeffKind::Integers: return "Z";
        case CoeffKind::Rationals: return "Q";
        case CoeffKind::PrimeField: return "Z/" + prime_.get_str();
    }
    return "?";
}

std::string CoefficientSpec::to_string(const Scalar& s) const {
    return s.get_den() == 1 ? s.get_num().get_str() : s.get_str();
}

}  // namespace sgm
