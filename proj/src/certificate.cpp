#include "ramsey/certificate.hpp"

#include <json.hpp>

namespace ramsey {

using nlohmann::json;

std::string emit_certificate(const Derivation& d) {
    json nodes = json::object();
    for (const auto& [key, node] : d.nodes) {
        json n;
        n["rule"] = rule_name(node.rule);
        n["value"] = node.value;
        if (node.h)
            n["h"] = *node.h;
        if (!node.premises.empty()) {
            json prem = json::array();
            for (const auto& [child, hi] : node.premises)
                prem.push_back(json::array({child.str(), hi}));
            n["premises"] = prem;
        }
        if (node.evidence) {
            const Mod3Evidence& ev = *node.evidence;
            n["evidence"] = json{{"i0", ev.i0},
                                 {"h", ev.h},
                                 {"hi_red", ev.hi_red},
                                 {"hi_dred", ev.hi_dred},
                                 {"tight_sum", ev.tight_sum},
                                 {"m", ev.m}};
        }
        if (node.rule == Rule::Fact)
            n["source"] = node.source;
        nodes[key.str()] = std::move(n);
    }
    json doc{{"version", 1}, {"root", d.root.str()}, {"nodes", std::move(nodes)}};
    return doc.dump(2) + "\n";
}

} // namespace ramsey
