#pragma once

#include <string>

#include "selfaffine/dissection.hpp"

namespace selfaffine {

/// Serializes a dissection to its JSON wire form. Round-trip is bit-exact
/// (numbers carry 17 significant digits).
std::string dissection_to_json(const Dissection& d);

/// Parses the JSON wire form. Throws ParseError on malformed input.
Dissection dissection_from_json(const std::string& json);

}  // namespace selfaffine
