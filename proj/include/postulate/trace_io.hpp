#pragma once

#include <string>

#include <json.hpp>

#include "postulate/horace.hpp"

namespace postulate::horace {

// One line per step:
//   t=<t> alpha=<a> z=<z> beta=<b> efg=(e,f,g) type=<I|II> checks=<passed>/<total>[ failed=<names>]
// preceded by a "# trace ..." header and followed by "global ..." and "status ..." lines.
std::string to_text(const InductionTrace& trace);

nlohmann::json to_json(const InductionTrace& trace);

}  // namespace postulate::horace
