#pragma once

#include <string>
#include <vector>

#include "ramsey/facts.hpp"

namespace ramsey {

/// One failed condition, naming the node it occurred at ("-" for
/// document-level problems).
struct Violation {
    std::string node;
    std::string message;
};

/// Re-verify a certificate document with arithmetic independent of the
/// engine: every node's P-bound is recomputed from its premises, parity and
/// mod-3 conditions are re-checked from the recorded values alone, Fact
/// nodes are matched against the supplied facts database and Base nodes
/// against the base-case conventions.  Hostile input is tolerated: anything
/// structurally wrong becomes a violation.
///
/// Returns the empty vector iff the certificate is accepted.
/// Throws ParseError only when the document is not valid JSON at all.
std::vector<Violation> verify_certificate(const std::string& document,
                                          const FactsDb& facts);

} // namespace ramsey
