#include "vcsplp/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace vcsp {

namespace {

using json = nlohmann::ordered_json;

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("not valid JSON: ") + e.what());
    }
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string("missing field '") + key + "'");
    return j[key];
}

int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer())
        throw InputError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

std::string string_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_string())
        throw InputError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

const json& array_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_array())
        throw InputError(std::string("field '") + key + "' must be an array");
    return v;
}

Rational rational_entry(const json& v, const char* what) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number())
        throw InputError(std::string(what) +
                         " must be exact: write \"1/2\", not 0.5");
    throw InputError(std::string(what) + " must be a rational string");
}

std::vector<Label> label_array(const json& v, const char* what) {
    if (!v.is_array())
        throw InputError(std::string(what) + " must be an array of labels");
    std::vector<Label> out;
    out.reserve(v.size());
    for (const json& e : v) {
        if (!e.is_number_integer())
            throw InputError(std::string(what) + " must contain integer labels");
        out.push_back(e.get<Label>());
    }
    return out;
}

// Recovers d from a table of d^arity entries; fails when no integer fits.
int domain_from_table(std::size_t size, int arity, const char* what) {
    const auto len = static_cast<long long>(size);
    for (int d = 1; d <= len; ++d) {
        long long p = 1;
        for (int i = 0; i < arity && p <= len; ++i) p *= d;
        if (p == len) return d;
        if (p > len) break;
    }
    throw InputError(std::string(what) + " has " + std::to_string(size) +
                     " entries, not a domain size raised to " +
                     std::to_string(arity));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string serialize_language(const Language& lang) {
    validate_language(lang);
    json j;
    j["domain"] = lang.domain.size;
    json fns = json::array();
    for (std::size_t i = 0; i < lang.functions.size(); ++i) {
        const CostFunction& f = lang.functions[i];
        json entry;
        entry["name"] = lang.names[i];
        entry["arity"] = f.arity();
        json table = json::array();
        for (const Rational& r : f.table()) table.push_back(rational_to_string(r));
        entry["table"] = std::move(table);
        fns.push_back(std::move(entry));
    }
    j["functions"] = std::move(fns);
    return dump(j);
}

Language parse_language(const std::string& text) {
    const json j = parse_text(text);
    Language lang;
    lang.domain.size = int_field(j, "domain");
    if (lang.domain.size < 1) throw InputError("domain size must be >= 1");
    for (const json& entry : array_field(j, "functions")) {
        const std::string name = string_field(entry, "name");
        const int arity = int_field(entry, "arity");
        std::vector<Rational> table;
        for (const json& v : array_field(entry, "table"))
            table.push_back(rational_entry(v, "cost value"));
        lang.add(name, CostFunction(lang.domain.size, arity, std::move(table)));
    }
    validate_language(lang);
    return lang;
}

std::string serialize_instance(const Language& lang, const Instance& inst) {
    validate_instance(lang, inst);
    json j;
    j["nodes"] = inst.node_count;
    json terms = json::array();
    for (const Term& t : inst.terms) {
        json entry;
        entry["function"] = lang.names[t.function];
        entry["scope"] = t.scope;
        terms.push_back(std::move(entry));
    }
    j["terms"] = std::move(terms);
    return dump(j);
}

Instance parse_instance(const Language& lang, const std::string& text) {
    const json j = parse_text(text);
    Instance inst;
    inst.node_count = int_field(j, "nodes");
    for (const json& entry : array_field(j, "terms")) {
        Term t;
        const std::string name = string_field(entry, "function");
        t.function = lang.find(name);
        if (t.function < 0)
            throw InputError("term references unknown function '" + name + "'");
        for (const json& v : array_field(entry, "scope")) {
            if (!v.is_number_integer())
                throw InputError("scope entries must be integers");
            t.scope.push_back(v.get<int>());
        }
        inst.terms.push_back(std::move(t));
    }
    validate_instance(lang, inst);
    return inst;
}

std::string serialize_fpoly(const FractionalPolymorphism& rho) {
    validate_fpoly(rho);
    json j;
    j["arity_in"] = rho.arity_in;
    j["arity_out"] = rho.arity_out;
    json support = json::array();
    for (const auto& [g, w] : rho.support) {
        json entry;
        entry["weight"] = rational_to_string(w);
        json maps = json::array();
        for (const Operation& op : g.ops) maps.push_back(op.table());
        entry["maps"] = std::move(maps);
        support.push_back(std::move(entry));
    }
    j["support"] = std::move(support);
    return dump(j);
}

FractionalPolymorphism parse_fpoly(const std::string& text) {
    const json j = parse_text(text);
    const int m = int_field(j, "arity_in");
    const int k = int_field(j, "arity_out");
    if (m < 1 || k < 1) throw InputError("arities must be >= 1");

    std::vector<std::pair<Mapping, Rational>> support;
    for (const json& entry : array_field(j, "support")) {
        const json& weight = field(entry, "weight");
        const Rational w = rational_entry(weight, "support weight");
        Mapping g;
        for (const json& table : array_field(entry, "maps")) {
            std::vector<Label> labels = label_array(table, "operation table");
            const int d = domain_from_table(labels.size(), m, "operation table");
            g.ops.emplace_back(d, m, std::move(labels));
        }
        if (static_cast<int>(g.ops.size()) != k)
            throw InputError("support entry has " + std::to_string(g.ops.size()) +
                             " maps, expected " + std::to_string(k));
        support.emplace_back(std::move(g), w);
    }
    return make_fpoly(m, k, std::move(support));
}

std::string serialize_pair(const MultimorphismPair& pair) {
    if (pair.meet.arity() != 2 || pair.join.arity() != 2)
        throw InputError("multimorphism pair operations must be binary");
    json j;
    j["meet"] = pair.meet.table();
    j["join"] = pair.join.table();
    return dump(j);
}

MultimorphismPair parse_pair(const std::string& text) {
    const json j = parse_text(text);
    std::vector<Label> meet = label_array(field(j, "meet"), "meet table");
    std::vector<Label> join = label_array(field(j, "join"), "join table");
    const int d = domain_from_table(meet.size(), 2, "meet table");
    if (join.size() != meet.size())
        throw InputError("meet and join tables differ in length");
    return MultimorphismPair{Operation(d, 2, std::move(meet)),
                             Operation(d, 2, std::move(join))};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (!in.good() && !in.eof())
        throw InputError("error while reading '" + path + "'");
    return std::move(buffer).str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write file '" + path + "'");
    out << text;
    if (!out.good()) throw InputError("error while writing '" + path + "'");
}

}  // namespace vcsp
