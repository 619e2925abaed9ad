#pragma once

#include <string>

#include "conelab/cone_net.hpp"

namespace conelab::net {

// Canonical JSON cone format, version 1:
//   { "version": 1, "dimension": n, "eta0": x,
//     "vertices": [{"id": "...", "kind": "V0"|"V1", "coords": [...]}, ...],
//     "arcs": [{"id": "...", "ends": ["...", "..."]}, ...] }
// parse(serialize(net)) reproduces every coordinate bit-exactly.
std::string to_json(const ConeNet& net);
ConeNet from_json(const std::string& text);

std::string load_file(const std::string& path);
void save_file(const std::string& path, const std::string& content);

// Cone over the net, triangulated as fans from the origin out to `radius`.
// Only available for nets in R^3.
std::string to_obj(const ConeNet& net, double radius, int segments_per_arc = 32);

}  // namespace conelab::net
