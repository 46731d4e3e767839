#pragma once

#include "cvxset/approximation.hpp"
#include "cvxset/sets.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace cvxset::io {

inline constexpr int kFormatVersion = 1;

/// Failure to read a document: malformed JSON, a missing field or a ragged array.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A set with an optional name, as stored on disk.
///
///     {"format_version": 1, "type": "polytope", "name": "P1", "dim": 2,
///      "V": [[...]], "A": [[...]], "b": [...], "Ae": [[...]], "be": [...]}
///     {"type": "czonotope", "G": [[...]], "c": [...], "Ae": [[...]], "be": [...]}
///     {"type": "ellipsoid", "Q": [[...]], "G": [[...]], "c": [...]}
///
/// Empty sets carry "empty": true. Numbers are written as the shortest decimal that
/// reads back to the same double, so parse(emit(x)) reproduces every entry exactly.
struct SetDocument {
  AnySet set;
  std::string name;
};

std::string emit_set(const AnySet& set, const std::string& name = "");
SetDocument parse_set(std::string_view text, const Tolerance& tol = {});

SetDocument read_set_file(const std::filesystem::path& path, const Tolerance& tol = {});
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

std::string emit_directions(const DirectionSet& dirs);
DirectionSet parse_directions(std::string_view text);

/// Exact element-wise comparison of the stored data of two sets.
bool bit_equal(const AnySet& a, const AnySet& b);

}  // namespace cvxset::io
