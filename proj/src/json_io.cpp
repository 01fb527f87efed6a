#include "latkit/json_io.hpp"

#include <fstream>
#include <sstream>

namespace latkit {

json to_json(const FinitePoset& p, const std::string& name) {
    json j;
    if (!name.empty()) j["name"] = name;
    j["elements"] = p.labels();
    json covers = json::array();
    for (auto [a, b] : p.covers()) covers.push_back({a, b});
    j["covers"] = std::move(covers);
    return j;
}

json to_json(const FiniteLattice& l) { return to_json(l.poset(), l.name()); }

FinitePoset poset_from_json(const json& j) {
    if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array()) {
        throw FormatError("lattice JSON needs an \"elements\" array");
    }
    std::vector<std::string> labels;
    for (const auto& e : j["elements"]) {
        if (e.is_string()) {
            labels.push_back(e.get<std::string>());
        } else if (e.is_number_integer()) {
            labels.push_back(std::to_string(e.get<long long>()));
        } else {
            throw FormatError("element labels must be strings");
        }
    }
    std::vector<std::pair<Id, Id>> covers;
    if (j.contains("covers")) {
        if (!j["covers"].is_array()) throw FormatError("\"covers\" must be an array");
        for (const auto& c : j["covers"]) {
            if (!c.is_array() || c.size() != 2 || !c[0].is_number_unsigned() || !c[1].is_number_unsigned()) {
                throw FormatError("each cover must be a pair of element indices");
            }
            const auto a = c[0].get<std::size_t>(), b = c[1].get<std::size_t>();
            if (a >= labels.size() || b >= labels.size()) throw FormatError("cover index out of range");
            covers.emplace_back(static_cast<Id>(a), static_cast<Id>(b));
        }
    }
    return FinitePoset::from_covers(std::move(labels), covers);
}

FiniteLattice lattice_from_json(const json& j) {
    std::string name;
    if (j.is_object() && j.contains("name") && j["name"].is_string()) name = j["name"].get<std::string>();
    return FiniteLattice::from_poset(poset_from_json(j), std::move(name));
}

json read_json(const std::string& path, std::istream& in) {
    try {
        if (path == "-") return json::parse(in);
        std::ifstream f(path);
        if (!f) throw FormatError("cannot open " + path);
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw FormatError("invalid JSON in " + (path == "-" ? std::string("standard input") : path) + ": " +
                          e.what());
    }
}

json bi_ideal_to_json(const PairGrid& g, const Bits& members) {
    json pairs = json::array();
    for_each_bit(members, [&](Id i) {
        if (!g.bottom().test(i)) pairs.push_back({g.first(i), g.second(i)});
    });
    return {{"pairs", std::move(pairs)}};
}

Bits bi_ideal_from_json(const PairGrid& g, const json& j) {
    if (!j.is_object() || !j.contains("pairs") || !j["pairs"].is_array()) {
        throw FormatError("bi-ideal JSON needs a \"pairs\" array");
    }
    Bits s = g.bottom();
    for (const auto& p : j["pairs"]) {
        if (!p.is_array() || p.size() != 2) throw FormatError("each pair must have two entries");
        const auto x = p[0].get<std::size_t>(), y = p[1].get<std::size_t>();
        if (x >= g.a().size() || y >= g.b().size()) throw FormatError("pair index out of range");
        s.set(g.index(static_cast<Id>(x), static_cast<Id>(y)));
    }
    return s;
}

json to_json(const Congruence& c) { return {{"blocks", c.blocks()}}; }

Congruence congruence_from_json(std::size_t n, const json& j) {
    if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array()) {
        throw FormatError("congruence JSON needs a \"blocks\" array");
    }
    return Congruence::from_blocks(n, j["blocks"].get<std::vector<std::vector<Id>>>());
}

json to_json(const PairGrid& g, const BoxElement& e) {
    json witness = json::array(), extent = json::array();
    for (auto [a, b] : e.witness) witness.push_back({a, b});
    for_each_bit(e.extent, [&](Id i) { extent.push_back({g.first(i), g.second(i)}); });
    return {{"witness", std::move(witness)}, {"extent", std::move(extent)}};
}

json verdict_json(bool verdict) { return {{"verdict", verdict}}; }

json verdict_json(bool verdict, json witness) {
    json j{{"verdict", verdict}};
    if (!witness.is_null()) j["witness"] = std::move(witness);
    return j;
}

}  // namespace latkit
