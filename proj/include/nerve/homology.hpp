#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nerve/complex.hpp"

namespace nerve {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntegerMatrix operator*(const IntegerMatrix& other) const;
    bool is_zero() const;

    bool operator==(const IntegerMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

struct SmithForm {
    /// Nonzero invariant factors d1 | d2 | ... | dr, all positive.
    std::vector<BigInt> diagonal;
    std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntegerMatrix& m);

/// Simplicial boundary C_k -> C_{k-1}. Rows index (k-1)-faces and columns
/// k-faces in the complex's canonical order; deleting the i-th vertex of a
/// face contributes sign (-1)^i. k = 0 yields the 1 x n augmentation row.
/// Throws PreconditionError unless 0 <= k <= dim K.
IntegerMatrix boundary_matrix(const SimplicialComplex& K, int k);

struct HomologyGroup {
    std::size_t betti = 0;
    std::vector<BigInt> torsion;  // coefficients > 1

    bool is_zero() const noexcept { return betti == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup&) const = default;
};

/// Reduced integral homology in dimensions -1 .. dim K.
class HomologyProfile {
public:
    HomologyProfile() = default;
    explicit HomologyProfile(std::vector<HomologyGroup> groups) : groups_(std::move(groups)) {}

    /// Dimensions outside the stored range are zero groups.
    const HomologyGroup& at(int k) const;
    int top_dimension() const noexcept { return static_cast<int>(groups_.size()) - 2; }
    bool is_acyclic() const;
    /// Reduced homology of the n-sphere: Z in dimension n, zero elsewhere.
    bool is_sphere(int n) const;

    bool operator==(const HomologyProfile&) const = default;

private:
    std::vector<HomologyGroup> groups_;  // groups_[k + 1] holds dimension k
};

HomologyProfile reduced_homology(const SimplicialComplex& K);

/// H^k(K; Z) != 0 via universal coefficients: free rank in dimension k or
/// torsion in dimension k - 1.
bool reduced_cohomology_nonzero(const HomologyProfile& profile, int k);
bool reduced_cohomology_nonzero(const SimplicialComplex& K, int k);

/// Largest k >= floor with nonzero reduced cohomology, scanning from the top
/// dimension down and stopping at the first hit.
std::optional<int> highest_nonzero_cohomology(const SimplicialComplex& K, int floor);

/// Virtual cohomological dimension of the right-angled Coxeter group with
/// nerve L: the largest k such that H^{k-1}(L) or H^{k-1}(L \ sigma) is
/// nonzero for some simplex sigma, where L \ sigma is the full subcomplex on
/// the vertices outside sigma. Returns 0 when no k >= 1 qualifies.
/// Throws PreconditionError when L is not flag. `threads == 0` picks the
/// hardware concurrency.
int vcd(const SimplicialComplex& L, unsigned threads = 0);

/// Dimension of the visual boundary, vcd(L) - 1; -1 means empty boundary.
int boundary_dimension(const SimplicialComplex& L, unsigned threads = 0);

} // namespace nerve
