#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nerve/complex.hpp"

namespace nerve {

/// Contents of a complex file.
///
///   # comment
///   vertex <name>
///   simplex <v1> <v2> ...
///   sub <name>: <v1> <v2> ...
///   cube <v1> <v2> ...
///
/// Simplex lines may be maximal or not; the complex is their closure plus
/// the declared vertices. A sub line names the full subcomplex spanned by
/// its vertices. Cube lines carry cubical-complex exports verbatim.
struct ComplexFile {
    SimplicialComplex complex;
    std::map<std::string, VertexSubset> subsets;
    std::vector<std::vector<std::string>> cubes;
};

/// `source` only labels error messages. Throws ParseError with the line
/// number on syntax errors, unknown vertices, or duplicate subset names.
ComplexFile parse_complex(std::istream& in, const std::string& source = "<input>");
ComplexFile parse_complex_string(const std::string& text, const std::string& source = "<input>");
/// Throws ParseError when the file cannot be opened.
ComplexFile read_complex_file(const std::string& path);

/// Canonical text: vertex lines in byte order, then one simplex line per
/// maximal face with at least two vertices (sorted by vertex sequence),
/// then sub lines sorted by name, then cube lines in stored order. LF line
/// endings, single spaces.
std::string serialize(const ComplexFile& file);
std::string serialize(const SimplicialComplex& K);

} // namespace nerve
