#include "sgm/ring.hpp"

#include <algorithm>
#include <sstream>

namespace sgm {

/******** GradedBasis ********/

int GradedBasis::total_rank() const {
    int n = 0;
    for (const auto& per_degree : labels_) n += static_cast<int>(per_degree.size());
    return n;
}

int GradedBasis::add_class(int d, std::string label) {
    if (d < 0 || d > top_degree())
        throw Error(errc::invalid_argument, "basis class degree " + std::to_string(d) + " out of range");
    labels_[d].push_back(std::move(label));
    return static_cast<int>(labels_[d].size()) - 1;
}

/******** CupTable ********/

CupTable::CupTable(const GradedBasis& basis) : top_(basis.top_degree()) {
    ranks_.resize(top_ + 1);
    for (int d = 0; d <= top_; ++d) ranks_[d] = basis.rank(d);
    blocks_.resize(static_cast<size_t>(top_ + 1) * (top_ + 1));
}

void CupTable::set(int d1, int i1, int d2, int i2, Sparse value) {
    if (d1 < 0 || d2 < 0 || d1 > top_ || d2 > top_ || d1 + d2 > top_)
        throw Error(errc::invalid_argument, "cup table entry out of degree range");
    if (i1 < 0 || i1 >= ranks_[d1] || i2 < 0 || i2 >= ranks_[d2])
        throw Error(errc::invalid_argument, "cup table entry index out of range");
    value.erase(std::remove_if(value.begin(), value.end(),
                               [](const auto& p) { return scalar_is_zero(p.second); }),
                value.end());
    std::sort(value.begin(), value.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    auto& block = blocks_[block_key(d1, d2)];
    if (block.empty()) block.resize(static_cast<size_t>(ranks_[d1]) * ranks_[d2]);
    block[static_cast<size_t>(i1) * ranks_[d2] + i2] = std::move(value);
}

const CupTable::Sparse& CupTable::get(int d1, int i1, int d2, int i2) const {
    static const Sparse empty;
    if (d1 < 0 || d2 < 0 || d1 > top_ || d2 > top_ || d1 + d2 > top_) return empty;
    if (i1 < 0 || i1 >= ranks_[d1] || i2 < 0 || i2 >= ranks_[d2]) return empty;
    const auto& block = blocks_[block_key(d1, d2)];
    if (block.empty()) return empty;
    return block[static_cast<size_t>(i1) * ranks_[d2] + i2];
}

/******** Elements ********/

RingElement zero_element(const RingPtr& ring, int degree) {
    RingElement x;
    x.ring = ring;
    x.degree = degree;
    x.coeffs.assign(ring->rank(degree), ring->coeff().zero());
    return x;
}

RingElement basis_element(const RingPtr& ring, ClassRef c) {
    if (c.degree < 0 || c.degree > ring->top_degree() || c.index < 0 || c.index >= ring->rank(c.degree))
        throw Error(errc::invalid_argument, "basis class address out of range");
    RingElement x = zero_element(ring, c.degree);
    x.coeffs[c.index] = ring->coeff().one();
    return x;
}

RingElement make_element(const RingPtr& ring, int degree, std::vector<Scalar> coeffs) {
    if (static_cast<int>(coeffs.size()) != ring->rank(degree))
        throw Error(errc::invalid_argument, "coefficient vector length does not match rank");
    RingElement x;
    x.ring = ring;
    x.degree = degree;
    x.coeffs = std::move(coeffs);
    for (auto& c : x.coeffs) c = ring->coeff().normalize(c);
    return x;
}

bool is_zero(const RingElement& x) {
    return std::all_of(x.coeffs.begin(), x.coeffs.end(), [](const Scalar& c) { return scalar_is_zero(c); });
}

bool operator==(const RingElement& x, const RingElement& y) {
    return x.ring == y.ring && x.degree == y.degree && x.coeffs == y.coeffs;
}

RingElement add(const RingElement& x, const RingElement& y) {
    if (x.ring != y.ring) throw Error(errc::ring_mismatch, "cannot add elements of different rings");
    if (x.degree != y.degree)
        throw Error(errc::degree_mismatch, "cannot add degree " + std::to_string(x.degree) +
                                               " to degree " + std::to_string(y.degree));
    RingElement r = x;
    const auto& A = x.ring->coeff();
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = A.add(r.coeffs[i], y.coeffs[i]);
    return r;
}

RingElement scale(const Scalar& s, const RingElement& x) {
    RingElement r = x;
    const auto& A = x.ring->coeff();
    Scalar n = A.normalize(s);
    for (auto& c : r.coeffs) c = A.mul(n, c);
    return r;
}

RingElement cup(const RingElement& x, const RingElement& y) {
    if (x.ring != y.ring) throw Error(errc::ring_mismatch, "cannot multiply elements of different rings");
    const auto& A = x.ring->coeff();
    const auto& table = x.ring->cup_table();
    RingElement r = zero_element(x.ring, x.degree + y.degree);
    if (x.degree + y.degree > x.ring->top_degree()) return r;  // clamped to the canonical zero
    for (size_t i = 0; i < x.coeffs.size(); ++i) {
        if (scalar_is_zero(x.coeffs[i])) continue;
        for (size_t j = 0; j < y.coeffs.size(); ++j) {
            if (scalar_is_zero(y.coeffs[j])) continue;
            const auto& entry = table.get(x.degree, static_cast<int>(i), y.degree, static_cast<int>(j));
            if (entry.empty()) continue;
            Scalar xy = A.mul(x.coeffs[i], y.coeffs[j]);
            for (const auto& [k, c] : entry) r.coeffs[k] = A.add(r.coeffs[k], A.mul(xy, c));
        }
    }
    return r;
}

RingElement product_of_sequence(const std::vector<RingElement>& classes) {
    if (classes.empty()) throw Error(errc::empty_sequence, "product of an empty sequence");
    RingElement r = classes.front();
    for (size_t i = 1; i < classes.size(); ++i) r = cup(r, classes[i]);
    return r;
}

std::string element_to_string(const RingElement& x) {
    const auto& A = x.ring->coeff();
    const auto& basis = x.ring->basis();
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < x.coeffs.size(); ++i) {
        if (scalar_is_zero(x.coeffs[i])) continue;
        if (!first) out << " + ";
        first = false;
        std::string c = A.to_string(x.coeffs[i]);
        if (c != "1") out << c << "*";
        out << basis.label({x.degree, static_cast<int>(i)});
    }
    if (first) out << "0 (deg " << x.degree << ")";
    return out.str();
}

/******** Validation ********/

namespace {

using Sparse = CupTable::Sparse;

std::string class_name(const GradedBasis& basis, int d, int i) {
    std::ostringstream out;
    out << basis.label({d, i}) << " (deg " << d << ", #" << i << ")";
    return out.str();
}

// Dense accumulation of s * entry into acc.
void accumulate(const CoefficientSpec& A, std::vector<Scalar>& acc, const Scalar& s, const Sparse& entry) {
    for (const auto& [k, c] : entry) {
        if (k < 0 || k >= static_cast<int>(acc.size())) continue;  // shape violations reported separately
        acc[k] = A.add(acc[k], A.mul(s, c));
    }
}

// Exact rank of a matrix over a field, by Gaussian elimination.
int field_matrix_rank(std::vector<std::vector<Scalar>> mat, const CoefficientSpec& A) {
    int rows = static_cast<int>(mat.size());
    int cols = rows ? static_cast<int>(mat[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (!scalar_is_zero(mat[i][c])) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(mat[r], mat[pivot]);
        Scalar inv = *A.inverse(mat[r][c]);
        for (int j = c; j < cols; ++j) mat[r][j] = A.mul(inv, mat[r][j]);
        for (int i = r + 1; i < rows; ++i) {
            if (scalar_is_zero(mat[i][c])) continue;
            Scalar f = mat[i][c];
            for (int j = c; j < cols; ++j) mat[i][j] = A.sub(mat[i][j], A.mul(f, mat[r][j]));
        }
        ++r;
    }
    return r;
}

}  // namespace

const char* violation_kind_name(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::BasisShape: return "basis-shape";
        case Violation::Kind::EntryShape: return "entry-shape";
        case Violation::Kind::UnitLaw: return "unit-law";
        case Violation::Kind::GradedCommutativity: return "graded-commutativity";
        case Violation::Kind::Associativity: return "associativity";
        case Violation::Kind::FundamentalClass: return "fundamental-class";
        case Violation::Kind::DualityDegenerate: return "duality";
    }
    return "unknown";
}

ValidationReport validate_ring(const CohomologyRing& ring) {
    ValidationReport report;
    auto flag = [&](Violation::Kind kind, std::string detail) {
        report.violations.push_back({kind, std::move(detail)});
    };

    const auto& A = ring.coeff();
    const auto& basis = ring.basis();
    const auto& table = ring.cup_table();
    const int m = ring.top_degree();

    if (m < 0) {
        flag(Violation::Kind::BasisShape, "empty basis");
        return report;
    }
    if (basis.rank(0) != 1)
        flag(Violation::Kind::BasisShape,
             "degree 0 has rank " + std::to_string(basis.rank(0)) + ", expected 1 (connected)");

    // Entry shape: indices sorted, in range, coefficients canonical.
    for (int d1 = 0; d1 <= m; ++d1)
        for (int d2 = 0; d1 + d2 <= m; ++d2)
            for (int i1 = 0; i1 < basis.rank(d1); ++i1)
                for (int i2 = 0; i2 < basis.rank(d2); ++i2) {
                    const auto& entry = table.get(d1, i1, d2, i2);
                    int prev = -1;
                    for (const auto& [k, c] : entry) {
                        if (k <= prev || k >= basis.rank(d1 + d2)) {
                            flag(Violation::Kind::EntryShape,
                                 "entry " + class_name(basis, d1, i1) + " * " + class_name(basis, d2, i2) +
                                     " has an out-of-range or unsorted component index");
                            break;
                        }
                        prev = k;
                        if (!A.is_canonical(c))
                            flag(Violation::Kind::EntryShape,
                                 "entry " + class_name(basis, d1, i1) + " * " + class_name(basis, d2, i2) +
                                     " carries a non-canonical coefficient " + c.get_str());
                    }
                }

    // Unit law on every basis class (both sides).
    if (basis.rank(0) >= 1) {
        for (int d = 0; d <= m; ++d)
            for (int i = 0; i < basis.rank(d); ++i) {
                auto is_identity = [&](const Sparse& e) {
                    return e.size() == 1 && e[0].first == i && A.sub(e[0].second, A.one()) == 0;
                };
                if (!is_identity(table.get(0, 0, d, i)))
                    flag(Violation::Kind::UnitLaw, "1 * " + class_name(basis, d, i) + " is not the class itself");
                if (!is_identity(table.get(d, i, 0, 0)))
                    flag(Violation::Kind::UnitLaw, class_name(basis, d, i) + " * 1 is not the class itself");
            }
    }

    // Graded commutativity on all basis pairs: yx = (-1)^{d1 d2} xy.
    for (int d1 = 0; d1 <= m; ++d1)
        for (int d2 = d1; d1 + d2 <= m; ++d2)
            for (int i1 = 0; i1 < basis.rank(d1); ++i1)
                for (int i2 = 0; i2 < basis.rank(d2); ++i2) {
                    if (d1 == d2 && i2 < i1) continue;
                    const auto& fwd = table.get(d1, i1, d2, i2);
                    const auto& bwd = table.get(d2, i2, d1, i1);
                    bool flip = (d1 % 2 == 1) && (d2 % 2 == 1);
                    int rank_out = basis.rank(d1 + d2);
                    std::vector<Scalar> lhs(rank_out, A.zero()), rhs(rank_out, A.zero());
                    accumulate(A, lhs, A.one(), bwd);
                    accumulate(A, rhs, flip ? A.neg(A.one()) : A.one(), fwd);
                    if (lhs != rhs)
                        flag(Violation::Kind::GradedCommutativity,
                             class_name(basis, d2, i2) + " * " + class_name(basis, d1, i1) +
                                 " != (-1)^(d1*d2) * " + class_name(basis, d1, i1) + " * " +
                                 class_name(basis, d2, i2));
                }

    // Associativity on all basis triples with total degree inside the ring;
    // products past the top degree vanish on both sides by clamping.
    for (int d1 = 0; d1 <= m; ++d1)
        for (int d2 = 0; d1 + d2 <= m; ++d2)
            for (int d3 = 0; d1 + d2 + d3 <= m; ++d3) {
                int d = d1 + d2 + d3;
                int rank_out = basis.rank(d);
                for (int i1 = 0; i1 < basis.rank(d1); ++i1)
                    for (int i2 = 0; i2 < basis.rank(d2); ++i2) {
                        const auto& xy = table.get(d1, i1, d2, i2);
                        for (int i3 = 0; i3 < basis.rank(d3); ++i3) {
                            std::vector<Scalar> lhs(rank_out, A.zero()), rhs(rank_out, A.zero());
                            for (const auto& [k, c] : xy)
                                accumulate(A, lhs, c, table.get(d1 + d2, k, d3, i3));
                            const auto& yz = table.get(d2, i2, d3, i3);
                            for (const auto& [k, c] : yz)
                                accumulate(A, rhs, c, table.get(d1, i1, d2 + d3, k));
                            if (lhs != rhs)
                                flag(Violation::Kind::Associativity,
                                     "(" + class_name(basis, d1, i1) + " * " + class_name(basis, d2, i2) +
                                         ") * " + class_name(basis, d3, i3) + " differs from the right-bracketed product");
                        }
                    }
            }

    // Fundamental class shape, then Poincare duality over fields: the
    // pairing H^j x H^(m-j) -> H^m must be square and nondegenerate.
    if (ring.fundamental_class()) {
        ClassRef f = *ring.fundamental_class();
        if (f.degree != m || basis.rank(m) != 1 || f.index != 0) {
            flag(Violation::Kind::FundamentalClass,
                 "fundamental class must be the unique top-degree class");
        } else if (A.is_field()) {
            for (int j = 0; 2 * j <= m; ++j) {
                int rj = basis.rank(j), rk = basis.rank(m - j);
                if (rj != rk) {
                    flag(Violation::Kind::DualityDegenerate,
                         "rank mismatch between degrees " + std::to_string(j) + " and " + std::to_string(m - j));
                    continue;
                }
                if (rj == 0) continue;
                std::vector<std::vector<Scalar>> pairing(rj, std::vector<Scalar>(rk, A.zero()));
                for (int a = 0; a < rj; ++a)
                    for (int b = 0; b < rk; ++b)
                        for (const auto& [k, c] : table.get(j, a, m - j, b))
                            if (k == f.index) pairing[a][b] = c;
                if (field_matrix_rank(pairing, A) != rj)
                    flag(Violation::Kind::DualityDegenerate,
                         "pairing between degrees " + std::to_string(j) + " and " + std::to_string(m - j) +
                             " is degenerate");
            }
        }
    }

    return report;
}

}  // namespace sgm
