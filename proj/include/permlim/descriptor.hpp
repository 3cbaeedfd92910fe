#pragma once

#include <string>
#include <variant>

#include "permlim/graphon.hpp"

namespace permlim {

// A measure limit object named on a command line: either kind, as the
// descriptor decides.
using LimitObject = std::variant<Permuton, Graphon>;

// Parses an object descriptor.  Two surfaces are accepted:
//
//   inline shorthand   "uniform" | "monotone:A" | "square:A"        (permutons)
//                      "constant:R" | "cliqueblocks:A"
//                      | "planted:rho=R,alpha=A" | "induced:<permuton>"
//                                                                   (graphons)
//   file path          a JSON object with a "form" tag; the full schema is
//                      documented in docs/schema.md
//
// The typed entry points reject descriptors of the other kind.  All failures
// throw std::invalid_argument with a message pointing at the schema doc.
Permuton parse_permuton(const std::string& descriptor);
Graphon parse_graphon(const std::string& descriptor);
LimitObject parse_limit_object(const std::string& descriptor);

// Canonical single-line JSON in the same "form"-tagged schema the file
// parser accepts; round-trips through the parsers above.
std::string permuton_json(const Permuton& mu);
std::string graphon_json(const Graphon& w);
std::string limit_object_json(const LimitObject& object);

}  // namespace permlim
