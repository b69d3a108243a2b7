#pragma once

#include <iosfwd>
#include <string>

#include "hyperkan/training.hpp"

namespace hyperkan {

// Plain-text dataset layout:
//
//   N M d C                 header
//   v v v ...               M hyperedge lines (vertex indices)
//   x_1 ... x_d             N feature lines
//   y                       N label lines, each in [0, C)
//
// Blank lines are ignored.

/// Throws ParseError (with line/column), HeaderMismatch or LabelOutOfRange.
Dataset parse_dataset(std::istream& in);
/// As above; IoError when the file cannot be opened.
Dataset parse_dataset_file(const std::string& path);

/// Writes the layout above. Reals use the shortest round-trip representation.
void serialize_dataset(const Dataset& data, std::ostream& out);
void write_dataset_file(const Dataset& data, const std::string& path);

}  // namespace hyperkan
