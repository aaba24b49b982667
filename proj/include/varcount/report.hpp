#pragma once

#include <string>

#include "varcount/counting.hpp"

namespace varcount {

// Canonical JSON for a CountReport: fixed key order, all counts as decimal
// strings (they routinely exceed 64 bits). Serializing a report read back from
// JSON reproduces the bytes exactly. The unimodular transforms are not part of
// the wire format; only the invariant factors are canonical.
std::string report_to_json(const CountReport& rep);
CountReport report_from_json(const std::string& text);

// Human-readable rendering used by the CLI.
std::string report_to_text(const CountReport& rep);

}  // namespace varcount
