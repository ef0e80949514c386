#include "farfield/document.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "farfield/errors.hpp"

namespace farfield {

namespace {

using nlohmann::json;

void require_keys(const json& obj, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional,
                  const char* where) {
  for (const char* k : required)
    if (!obj.contains(k))
      throw DocumentError(std::string(where) + ": missing field '" + k + "'");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : required)
      if (it.key() == k) known = true;
    for (const char* k : optional)
      if (it.key() == k) known = true;
    if (!known)
      throw DocumentError(std::string(where) + ": unknown field '" + it.key() +
                          "'");
  }
}

void append_terms(std::string& out, const AsymExpansion& u) {
  out += "[";
  bool first_term = true;
  for (const auto& [g, a] : u.terms()) {
    if (!first_term) out += ",";
    first_term = false;
    out += "{\"k\":" + std::to_string(g.k) + ",\"j\":" + std::to_string(g.j) +
           ",\"basis\":[";
    bool first_b = true;
    for (int l = 0; l <= a.band_limit(); ++l) {
      const int off = SphereFn::block_offset(a.dim(), l);
      for (int i = 0; i < SphereFn::block_size(a.dim(), l); ++i) {
        const double c = a.raw(off + i);
        if (c == 0.0) continue;
        int m;
        if (a.dim() == 2)
          m = l == 0 ? 0 : (i == 0 ? 1 : -1);
        else
          m = i - l;
        if (!first_b) out += ",";
        first_b = false;
        out += "{\"l\":" + std::to_string(l) + ",\"m\":" + std::to_string(m) +
               ",\"coeff\":" + format_double(c) + "}";
      }
    }
    out += "]}";
  }
  out += "]";
}

AsymExpansion parse_terms(const json& arr, int d, const char* where) {
  if (!arr.is_array()) throw DocumentError(std::string(where) + ": expected array");
  AsymExpansion u(d);
  for (const json& t : arr) {
    if (!t.is_object()) throw DocumentError("term must be an object");
    require_keys(t, {"k", "j", "basis"}, {}, "term");
    const int k = t.at("k").get<int>();
    const int j = t.at("j").get<int>();
    if (k < 0 || j < 0) throw DocumentError("term grades must be nonnegative");
    int L = 0;
    for (const json& b : t.at("basis")) {
      require_keys(b, {"l", "m", "coeff"}, {}, "basis entry");
      L = std::max(L, b.at("l").get<int>());
    }
    SphereFn a(d, L);
    for (const json& b : t.at("basis")) {
      const int l = b.at("l").get<int>();
      const int m = b.at("m").get<int>();
      const double c = b.at("coeff").get<double>();
      if (l < 0) throw DocumentError("basis degree must be nonnegative");
      try {
        a.set_coeff(l, m, c);
      } catch (const Error& e) {
        throw DocumentError(std::string("bad basis index: ") + e.what());
      }
    }
    u.add_term(Grade{k, j}, a);
  }
  return u;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SpaceVariant variant_from_string(const std::string& s) {
  if (s == "plain") return SpaceVariant::plain;
  if (s == "hat") return SpaceVariant::hat;
  if (s == "tilde") return SpaceVariant::tilde;
  if (s == "star") return SpaceVariant::star;
  throw DocumentError("unknown space variant '" + s + "'");
}

ExpansionDocument make_document(const AsymExpansion& u, const SpaceSignature& sig) {
  ExpansionDocument doc;
  doc.d = u.dim();
  doc.signature = sig;
  doc.components = {u};
  return doc;
}

ExpansionDocument make_document(const VectorExpansion& u, const SpaceSignature& sig) {
  ExpansionDocument doc;
  doc.d = u.dim();
  doc.signature = sig;
  doc.components = u.components();
  return doc;
}

std::string serialize_document(const ExpansionDocument& doc) {
  std::string out = "{\"schema_version\":" + std::to_string(doc.schema_version) +
                    ",\"d\":" + std::to_string(doc.d) + ",\"signature\":{";
  out += "\"n\":" + std::to_string(doc.signature.n) +
         ",\"N\":" + std::to_string(doc.signature.N) +
         ",\"ell\":" + std::to_string(doc.signature.ell) + ",\"variant\":\"" +
         to_string(doc.signature.variant) + "\"}";
  if (doc.components.size() == 1) {
    out += ",\"terms\":";
    append_terms(out, doc.components.front());
  } else {
    out += ",\"components\":[";
    for (size_t i = 0; i < doc.components.size(); ++i) {
      if (i) out += ",";
      append_terms(out, doc.components[i]);
    }
    out += "]";
  }
  if (doc.compact_part) out += ",\"compact_part\":\"" + *doc.compact_part + "\"";
  out += "}\n";
  return out;
}

ExpansionDocument parse_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw DocumentError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw DocumentError("document must be a JSON object");
  require_keys(root, {"schema_version", "d", "signature"},
               {"terms", "components", "compact_part"}, "document");
  ExpansionDocument doc;
  doc.schema_version = root.at("schema_version").get<int>();
  if (doc.schema_version != 1)
    throw DocumentError("unsupported schema_version " +
                        std::to_string(doc.schema_version));
  doc.d = root.at("d").get<int>();
  if (doc.d != 2 && doc.d != 3) throw DocumentError("d must be 2 or 3");

  const json& sig = root.at("signature");
  require_keys(sig, {"n", "N", "ell", "variant"}, {}, "signature");
  doc.signature.n = sig.at("n").get<int>();
  doc.signature.N = sig.at("N").get<int>();
  doc.signature.ell = sig.at("ell").get<int>();
  doc.signature.variant = variant_from_string(sig.at("variant").get<std::string>());
  doc.signature.d = doc.d;

  const bool has_terms = root.contains("terms");
  const bool has_components = root.contains("components");
  if (has_terms == has_components)
    throw DocumentError("document needs exactly one of 'terms' or 'components'");
  if (has_terms) {
    doc.components.push_back(parse_terms(root.at("terms"), doc.d, "terms"));
  } else {
    const json& comps = root.at("components");
    if (!comps.is_array() || static_cast<int>(comps.size()) != doc.d)
      throw DocumentError("'components' must hold d term arrays");
    for (const json& c : comps)
      doc.components.push_back(parse_terms(c, doc.d, "components"));
  }
  if (root.contains("compact_part")) {
    if (!root.at("compact_part").is_string())
      throw DocumentError("'compact_part' must be a string reference");
    doc.compact_part = root.at("compact_part").get<std::string>();
  }
  return doc;
}

}  // namespace farfield
