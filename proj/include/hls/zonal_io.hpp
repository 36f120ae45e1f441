#pragma once

// JSON interchange for zonal functions:
//   { "dim": N, "nodes": [...], "values": [...], "coeffs": [...] }
// "coeffs" is optional on input and ignored; it is recomputed from the values.

#include "hls/zonal.hpp"

#include <iosfwd>
#include <string>

namespace hls {

std::string zonal_to_json(const ZonalFn& f, bool with_coeffs = true);

/// Nodes must be the canonical Gauss rule of that size (to 1e-13).
ZonalFn zonal_from_json(const std::string& text);

ZonalFn read_zonal_file(const std::string& path);
void write_zonal_file(const std::string& path, const ZonalFn& f, bool with_coeffs = true);

} // namespace hls
