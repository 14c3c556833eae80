#ifndef VCSPLP_IO_HPP
#define VCSPLP_IO_HPP

#include <string>

#include "vcsplp/fpoly.hpp"
#include "vcsplp/stp.hpp"

namespace vcsp {

// UTF-8 JSON with object keys in a fixed order and rationals as "p" or "p/q"
// strings, so serialization is byte-deterministic and exact. Every parser
// validates what it reads and throws InputError on malformed input.
//
// Language  {"domain": d, "functions": [{"name", "arity", "table"}]}
// Instance  {"nodes": n, "terms": [{"function": name, "scope": [nodes]}]}
// Fpoly     {"arity_in": m, "arity_out": k,
//            "support": [{"weight": "p/q", "maps": [[table], ...]}]}
// Pair      {"meet": [table], "join": [table]}
//
// Cost and operation tables are in tuple index order (first argument most
// significant). Fpoly and Pair files carry no domain field; the domain size
// is recovered from the table lengths.

std::string serialize_language(const Language& lang);
Language parse_language(const std::string& text);

std::string serialize_instance(const Language& lang, const Instance& inst);
Instance parse_instance(const Language& lang, const std::string& text);

std::string serialize_fpoly(const FractionalPolymorphism& rho);
FractionalPolymorphism parse_fpoly(const std::string& text);

std::string serialize_pair(const MultimorphismPair& pair);
MultimorphismPair parse_pair(const std::string& text);

// Whole-file helpers; errors (missing file, short write) become InputError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace vcsp

#endif
