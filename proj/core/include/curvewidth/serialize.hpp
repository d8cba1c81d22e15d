#pragma once

#include <string>

#include "curvewidth/bodies.hpp"

namespace curvewidth {

// JSON form: {space, dim, variant, points/centers, radius, bounding} with
// shortest-round-trip floats, so decode(encode(b)) reproduces coordinates
// exactly. Oracle bodies carry only their bounding data and cannot be
// serialized.
std::string body_to_json(const Body& body);
Body body_from_json(const std::string& text);

}  // namespace curvewidth
