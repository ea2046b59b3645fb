#include "ramsey/facts.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

using nlohmann::json;

Value require_positive_int(const json& j, const std::string& field, size_t index) {
    if (!j.is_number_integer())
        throw ParseError("facts entry " + std::to_string(index) + ": \"" + field +
                         "\" must be an integer");
    Value v = j.get<Value>();
    if (v < 1)
        throw ParseError("facts entry " + std::to_string(index) + ": \"" + field +
                         "\" must be positive");
    return v;
}

} // namespace

void FactsDb::add(const ColorKey& key, std::optional<Value> lower,
                  std::optional<Value> upper, const std::string& source) {
    auto [it, inserted] = entries_.try_emplace(key);
    BoundInterval& iv = it->second;
    if (lower && *lower > iv.lower) {
        iv.lower = *lower;
        iv.lower_source = source;
    }
    if (upper && (!iv.upper || *upper < *iv.upper)) {
        iv.upper = *upper;
        iv.upper_source = source;
    }
    if (iv.upper && iv.lower > *iv.upper)
        throw InconsistentFactsError(
            "facts for " + key.str() + " have empty intersection: lower " +
            std::to_string(iv.lower) + " (" + iv.lower_source + ") > upper " +
            std::to_string(*iv.upper) + " (" + iv.upper_source + ")");
}

FactsDb FactsDb::load(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("facts file: ") + e.what());
    }
    if (!doc.is_array())
        throw ParseError("facts file must be a JSON array of fact objects");

    FactsDb db;
    size_t index = 0;
    for (const json& entry : doc) {
        if (!entry.is_object())
            throw ParseError("facts entry " + std::to_string(index) +
                             " is not an object");
        for (const auto& [field, _] : entry.items()) {
            if (field != "key" && field != "lower" && field != "upper" &&
                field != "source")
                throw ParseError("facts entry " + std::to_string(index) +
                                 ": unknown field \"" + field + "\"");
        }
        if (!entry.contains("key") || !entry["key"].is_array())
            throw ParseError("facts entry " + std::to_string(index) +
                             ": missing \"key\" array");
        std::vector<int> raw;
        for (const json& k : entry["key"]) {
            if (!k.is_number_integer())
                throw ParseError("facts entry " + std::to_string(index) +
                                 ": key entries must be integers");
            long long v = k.get<long long>();
            if (v < 2)
                throw ParseError("facts entry " + std::to_string(index) +
                                 ": key entries must be >= 2");
            if (v > 1'000'000)
                throw ParseError("facts entry " + std::to_string(index) +
                                 ": key entry implausibly large");
            raw.push_back(static_cast<int>(v));
        }
        if (!entry.contains("source") || !entry["source"].is_string())
            throw ParseError("facts entry " + std::to_string(index) +
                             ": missing \"source\" string");
        std::string source = entry["source"].get<std::string>();

        std::optional<Value> lower, upper;
        if (entry.contains("lower"))
            lower = require_positive_int(entry["lower"], "lower", index);
        if (entry.contains("upper"))
            upper = require_positive_int(entry["upper"], "upper", index);
        if (!lower && !upper)
            throw ParseError("facts entry " + std::to_string(index) +
                             ": needs at least one of \"lower\"/\"upper\"");
        if (lower && upper && *lower > *upper)
            throw ParseError("facts entry " + std::to_string(index) +
                             ": lower > upper");

        db.add(ColorKey::canonicalize(raw), lower, upper, source);
        ++index;
    }
    return db;
}

FactsDb FactsDb::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open facts file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load(buf.str());
}

std::string FactsDb::serialize() const {
    json arr = json::array();
    for (const auto& [key, iv] : entries_) {
        json raw = json::array();
        for (int k : key.entries())
            raw.push_back(k);
        bool has_lower = iv.lower > 1;
        if (!has_lower && !iv.upper)
            continue; // vacuous entry (e.g. an explicit lower of 1)
        // Bounds contributed by different sources are emitted as separate
        // entries so provenance survives the round trip.
        if (has_lower && iv.upper && iv.lower_source != iv.upper_source) {
            json lo{{"key", raw}, {"lower", iv.lower}, {"source", iv.lower_source}};
            json hi{{"key", raw}, {"upper", *iv.upper}, {"source", iv.upper_source}};
            arr.push_back(lo);
            arr.push_back(hi);
            continue;
        }
        json entry;
        entry["key"] = raw;
        if (has_lower)
            entry["lower"] = iv.lower;
        if (iv.upper)
            entry["upper"] = *iv.upper;
        entry["source"] = has_lower ? iv.lower_source : iv.upper_source;
        arr.push_back(entry);
    }
    return arr.dump(2) + "\n";
}

std::optional<Value> FactsDb::upper_at(const ColorKey& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end())
        return std::nullopt;
    return it->second.upper;
}

std::optional<Value> FactsDb::lower_at(const ColorKey& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end() || it->second.lower <= 1)
        return std::nullopt;
    return it->second.lower;
}

const BoundInterval* FactsDb::find(const ColorKey& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

FactsDb FactsDb::without(const ColorKey& key) const {
    FactsDb copy = *this;
    copy.entries_.erase(key);
    return copy;
}

} // namespace ramsey
