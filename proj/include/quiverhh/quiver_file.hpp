#pragma once

// Text format for quivers with an optional rotation system. See
// docs/quiver-format.md for the grammar.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quiverhh/embedding.hpp"
#include "quiverhh/quiver.hpp"

namespace quiverhh {

struct QuiverFile {
  QuiverPtr quiver;
  /// Dart order per vertex as written; empty when the file has no
  /// rotation lines.
  std::optional<std::vector<std::vector<Dart>>> rotation_order;
  std::optional<std::size_t> outer;

  /// The declared rotation system. When none is declared and every vertex
  /// has at most two darts the rotation is unique and is returned instead.
  /// Throws InvalidRotation.
  std::optional<RotationSystem> rotation() const;
};

/// Throws ParseError (with line and column) for syntax errors and unknown
/// names, InvalidQuiver for duplicate declarations.
QuiverFile parse_quiver_file(std::string_view text);
QuiverFile load_quiver_file(const std::string& path);

std::string serialize_quiver_file(const QuiverFile& file);

}  // namespace quiverhh
