#ifndef FARFIELD_DOCUMENT_HPP
#define FARFIELD_DOCUMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "farfield/expansion.hpp"

namespace farfield {

// Line-delimited JSON document for expansions. Scalar documents carry a
// "terms" array; vector documents carry "components" (one term array per
// component). Unknown fields are rejected; floats are emitted with 17
// significant digits so documents round-trip losslessly and byte-stably.
struct ExpansionDocument {
  int schema_version = 1;
  int d = 2;
  SpaceSignature signature;
  std::vector<AsymExpansion> components;  // size 1 (scalar) or d (vector)
  std::optional<std::string> compact_part;  // reference to a grid file

  bool is_vector() const { return components.size() > 1; }
  const AsymExpansion& scalar() const { return components.front(); }
  VectorExpansion vector() const { return VectorExpansion(components); }
};

ExpansionDocument make_document(const AsymExpansion& u, const SpaceSignature& sig);
ExpansionDocument make_document(const VectorExpansion& u, const SpaceSignature& sig);

// Single line, newline-terminated.
std::string serialize_document(const ExpansionDocument& doc);
// Throws DocumentError on malformed input or unknown fields.
ExpansionDocument parse_document(const std::string& text);

std::string format_double(double v);  // %.17g
SpaceVariant variant_from_string(const std::string& s);

}  // namespace farfield

#endif
