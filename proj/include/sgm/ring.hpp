#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgm/coeff.hpp"

namespace sgm {

/// Address of a basis class: (degree, index within that degree).
struct ClassRef {
    int degree = 0;
    int index = 0;
    auto operator<=>(const ClassRef&) const = default;
};

/// Graded basis of a finitely generated graded module: one list of labelled
/// classes per degree 0..top_degree. Degree 0 always has exactly one class
/// (the unit) for the rings built here; that is checked by validate_ring,
/// not enforced structurally.
class GradedBasis {
public:
    GradedBasis() = default;
    explicit GradedBasis(int top_degree) : labels_(static_cast<size_t>(top_degree) + 1) {}

    int top_degree() const { return static_cast<int>(labels_.size()) - 1; }
    int rank(int d) const {
        return (d >= 0 && d <= top_degree()) ? static_cast<int>(labels_[d].size()) : 0;
    }
    int total_rank() const;

    /// Appends a class in degree d and returns its index.
    int add_class(int d, std::string label);

    const std::string& label(ClassRef c) const { return labels_.at(c.degree).at(c.index); }
    void set_label(ClassRef c, std::string label) { labels_.at(c.degree).at(c.index) = std::move(label); }

private:
    std::vector<std::vector<std::string>> labels_;
};

/// Cup products on basis pairs, stored sparsely: table(x, y) is a sorted
/// list of (basis index, coefficient) pairs in degree deg x + deg y.
/// Pairs whose total degree exceeds the top degree are implicitly zero and
/// cannot be stored. General products expand from these entries by
/// bilinearity.
class CupTable {
public:
    using Sparse = std::vector<std::pair<int, Scalar>>;

    CupTable() = default;
    explicit CupTable(const GradedBasis& basis);

    void set(int d1, int i1, int d2, int i2, Sparse value);
    const Sparse& get(int d1, int i1, int d2, int i2) const;

    int top_degree() const { return top_; }

private:
    size_t block_key(int d1, int d2) const { return static_cast<size_t>(d1) * (top_ + 1) + d2; }

    int top_ = -1;
    std::vector<int> ranks_;
    std::vector<std::vector<Sparse>> blocks_;  // per (d1,d2), row-major rank(d1) x rank(d2); allocated lazily
};

/// The algebraic model of H*(M; A): a graded basis with cup-product
/// structure constants over an exact coefficient ring. Immutable after
/// construction; safe to share across threads.
class CohomologyRing {
public:
    CohomologyRing(CoefficientSpec coeff, GradedBasis basis, CupTable cup,
                   std::optional<ClassRef> fundamental_class)
        : coeff_(std::move(coeff)),
          basis_(std::move(basis)),
          cup_(std::move(cup)),
          fundamental_(fundamental_class) {}

    const CoefficientSpec& coeff() const { return coeff_; }
    const GradedBasis& basis() const { return basis_; }
    const CupTable& cup_table() const { return cup_; }
    const std::optional<ClassRef>& fundamental_class() const { return fundamental_; }

    int top_degree() const { return basis_.top_degree(); }
    int rank(int d) const { return basis_.rank(d); }

private:
    CoefficientSpec coeff_;
    GradedBasis basis_;
    CupTable cup_;
    std::optional<ClassRef> fundamental_;
};

using RingPtr = std::shared_ptr<const CohomologyRing>;

/// A homogeneous element: a degree and one exact coefficient per basis
/// class of that degree. Degrees outside [0, top] have rank 0, so their
/// only element is the canonical zero (an empty coefficient vector); this
/// is how products past the top degree are clamped.
struct RingElement {
    RingPtr ring;
    int degree = 0;
    std::vector<Scalar> coeffs;
};

RingElement zero_element(const RingPtr& ring, int degree);
RingElement basis_element(const RingPtr& ring, ClassRef c);
RingElement make_element(const RingPtr& ring, int degree, std::vector<Scalar> coeffs);

bool is_zero(const RingElement& x);
bool operator==(const RingElement& x, const RingElement& y);

RingElement add(const RingElement& x, const RingElement& y);
RingElement scale(const Scalar& s, const RingElement& x);
RingElement cup(const RingElement& x, const RingElement& y);
RingElement product_of_sequence(const std::vector<RingElement>& classes);

std::string element_to_string(const RingElement& x);

/// One violated structural invariant. Violations are data, not errors:
/// validate_ring reports them all instead of throwing.
struct Violation {
    enum class Kind {
        BasisShape,
        EntryShape,
        UnitLaw,
        GradedCommutativity,
        Associativity,
        FundamentalClass,
        DualityDegenerate,
    };
    Kind kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every ring invariant: basis shape, entry shape, unit law, graded
/// commutativity on all basis pairs, associativity on all basis triples,
/// and (for field coefficients with a fundamental class) nondegeneracy of
/// the Poincare pairing in every degree.
ValidationReport validate_ring(const CohomologyRing& ring);

const char* violation_kind_name(Violation::Kind kind);

}  // namespace sgm
