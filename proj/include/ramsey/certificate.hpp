#pragma once

#include <string>

#include "ramsey/engine.hpp"

namespace ramsey {

/// Serialize a derivation as a self-contained certificate document.
///
/// The document is JSON with fields "version" (= 1), "root" (key string) and
/// "nodes" (map from key string to node object).  Emission is canonical:
/// object keys sorted, fixed two-space indentation, premises in canonical
/// key order.  The verifier accepts any field order.
std::string emit_certificate(const Derivation& d);

} // namespace ramsey
