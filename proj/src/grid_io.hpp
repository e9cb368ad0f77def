#pragma once

// Shared pieces of the binary grid formats (header fields, cell payloads).

#include <istream>
#include <ostream>
#include <vector>

#include "scopekit/grid.hpp"

namespace scopekit::detail {

GridSpec read_spec_fields(std::istream& in);
void write_spec_fields(std::ostream& out, const GridSpec& spec);

// Reads and validates `count` f32 probabilities.
std::vector<float> read_cells(std::istream& in, std::size_t count);

}  // namespace scopekit::detail
