#pragma once

// Map files: JSON with dimensions, one coefficient-record array per
// numerator component, one for the denominator, and optional metadata.
// Coefficients are [re, im] pairs; exponents are integer arrays of length n.

#include <string>

#include <json.hpp>

#include "ballmap/ball_map.hpp"

namespace ballmap {

struct MapFileData {
  RationalBallMap map;
  std::string name;
  std::string notes;
};

// throws std::invalid_argument on malformed files
MapFileData read_map_file(const std::string& path);

MapFileData map_from_json(const nlohmann::json& j);

nlohmann::json map_to_json(const RationalBallMap& f, const std::string& name = "",
                           const std::string& notes = "");

void write_map_file(const std::string& path, const RationalBallMap& f,
                    const std::string& name = "", const std::string& notes = "");

}  // namespace ballmap
