#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nerve/certifier.hpp"
#include "nerve/complex.hpp"

namespace nerve {

using Rational = boost::multiprecision::cpp_rational;

/// a + b*phi with rational a, b and phi^2 = phi + 1.
class GoldenRational {
public:
    GoldenRational() = default;
    GoldenRational(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}

    static GoldenRational phi() { return GoldenRational(0, 1); }

    const Rational& a() const noexcept { return a_; }
    const Rational& b() const noexcept { return b_; }

    GoldenRational operator+(const GoldenRational& o) const { return {a_ + o.a_, b_ + o.b_}; }
    GoldenRational operator-(const GoldenRational& o) const { return {a_ - o.a_, b_ - o.b_}; }
    GoldenRational operator-() const { return {-a_, -b_}; }
    GoldenRational operator*(const GoldenRational& o) const;
    /// Throws PreconditionError on division by zero.
    GoldenRational operator/(const GoldenRational& o) const;
    /// Galois conjugate: phi -> 1 - phi.
    GoldenRational conjugate() const { return {a_ + b_, -b_}; }
    /// x * conjugate(x), a rational.
    Rational norm() const { return a_ * a_ + a_ * b_ - b_ * b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool operator==(const GoldenRational& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator<(const GoldenRational& o) const;  // as real numbers

    std::string to_string() const;

private:
    Rational a_;
    Rational b_;
};

struct Vertex4D {
    std::array<GoldenRational, 4> x;

    GoldenRational dot(const Vertex4D& o) const;
    bool operator==(const Vertex4D&) const = default;
};

/// The 120 unit icosians: 8 points (+-1, 0, 0, 0) and permutations, 16
/// points (+-1/2, +-1/2, +-1/2, +-1/2), and 96 even permutations of
/// (+-phi/2, +-1/2, +-1/(2 phi), 0), in that order.
std::vector<Vertex4D> unit_icosians();

/// Name of the i-th 600-cell vertex: "v000" ... "v119".
std::string cell600_vertex_name(std::size_t i);

/// Boundary complex of the 600-cell: edges join icosians with inner
/// product phi/2, higher faces are the cliques. Throws ConstructionError
/// unless the f-vector is (120, 720, 1200, 600).
SimplicialComplex build_600_cell();

struct Disk {
    SimplicialComplex complex;
    VertexSubset boundary;
};

/// The 600-cell with the open star of `deleted` removed (default "v000");
/// the boundary is the link of the deleted vertex.
Disk build_580_disk(const std::optional<std::string>& deleted = std::nullopt);

/// Boundary of the d-simplex on vertices "v0" ... "vd".
SimplicialComplex simplex_boundary(int d);

/// Punctures the triangulated sphere N at the listed top simplices (open
/// simplices removed, boundaries kept), takes the barycentric subdivision,
/// subdivides again relative to the hole boundaries, and cones each hole
/// boundary off with an apex "hole<i>". The pair (cone, punctured complex)
/// is returned. Throws PreconditionError for holes that are not pairwise
/// disjoint top simplices, or when N fails sphere recognition.
AmbientPair punctured_sphere(const SimplicialComplex& N, const std::vector<std::vector<std::string>>& holes);

} // namespace nerve
