#pragma once

// Canonical JSON documents (format 1) for systems, chains, normal forms and reductions.
// Every number is written as a string holding an exact rational or field element.

#include <map>
#include <nlohmann/json.hpp>
#include <string>

#include "turrittin/reduce_complex.hpp"

namespace turrittin {

using Json = nlohmann::ordered_json;
using Metadata = std::map<std::string, std::string>;

// {"format": 1, "kind": "system", "field", "n", "truncation_order", "entries", "metadata"}.
// truncation_order is relative to the valuation of the whole matrix, or "exact".
Json system_to_json(const System& a, const Metadata& meta = {});
System system_from_json(const Json& j, Metadata* meta = nullptr);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, int n);

Json chain_to_json(const Chain& c, int n);
Chain chain_from_json(const Json& j);

Json normal_form_to_json(const NormalForm& nf);

// Parses document text; malformed JSON raises ParseError with line and column.
Json parse_document(const std::string& text);
System parse_system(const std::string& text, Metadata* meta = nullptr);
std::string render_system(const System& a, const Metadata& meta = {});
Chain parse_chain(const std::string& text);
std::string render_json(const Json& j);

// Entry text without the order suffix.
std::string exact_text(const Jet& j);

}  // namespace turrittin
