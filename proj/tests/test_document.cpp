#include <doctest.h>

#include <random>

#include "farfield/document.hpp"
#include "test_helpers.hpp"

using namespace farfield;
using namespace farfield::testing;

TEST_CASE("document round trip is lossless and byte-stable") {
  std::mt19937_64 rng(808);
  const AsymExpansion u = random_expansion(rng, 2, 4, 3);
  const ExpansionDocument doc =
      make_document(u, SpaceSignature::plain_space(2, 0, 4, 0));
  const std::string text = serialize_document(doc);
  CHECK(text.back() == '\n');
  CHECK(text.find('\n') == text.size() - 1);  // single line

  const ExpansionDocument parsed = parse_document(text);
  CHECK(parsed.d == 2);
  CHECK(parsed.components.size() == 1);
  CHECK(add(parsed.scalar(), scale(u, -1.0)).norm() == 0.0);
  CHECK(serialize_document(parsed) == text);  // byte-stable
}

TEST_CASE("vector documents round trip") {
  std::mt19937_64 rng(809);
  VectorExpansion u(3);
  for (int i = 0; i < 3; ++i) u[i] = random_expansion(rng, 3, 3, 2);
  const ExpansionDocument doc =
      make_document(u, SpaceSignature::plain_space(3, 0, 3, 0));
  const ExpansionDocument parsed = parse_document(serialize_document(doc));
  REQUIRE(parsed.is_vector());
  const VectorExpansion v = parsed.vector();
  for (int i = 0; i < 3; ++i) CHECK(add(v[i], scale(u[i], -1.0)).norm() == 0.0);
}

TEST_CASE("unknown fields and malformed documents are rejected") {
  CHECK_THROWS_AS((void)parse_document("not json"), DocumentError);
  CHECK_THROWS_AS((void)parse_document("{\"schema_version\":1}"), DocumentError);
  CHECK_THROWS_AS(
      (void)parse_document(
          R"({"schema_version":1,"d":2,"signature":{"n":0,"N":2,"ell":0,"variant":"plain"},"terms":[],"extra":3})"),
      DocumentError);
  CHECK_THROWS_AS(
      (void)parse_document(
          R"({"schema_version":1,"d":2,"signature":{"n":0,"N":2,"ell":0,"variant":"plain"},"terms":[{"k":0,"j":0,"basis":[{"l":0,"m":0,"coeff":1.0,"x":2}]}]})"),
      DocumentError);
  CHECK_THROWS_AS(
      (void)parse_document(
          R"({"schema_version":2,"d":2,"signature":{"n":0,"N":2,"ell":0,"variant":"plain"},"terms":[]})"),
      DocumentError);
  // both terms and components present
  CHECK_THROWS_AS(
      (void)parse_document(
          R"({"schema_version":1,"d":2,"signature":{"n":0,"N":2,"ell":0,"variant":"plain"},"terms":[],"components":[[],[]]})"),
      DocumentError);
}

TEST_CASE("compact part reference is carried through") {
  ExpansionDocument doc = make_document(single_term(2, 1, 0, cos_fn(1)),
                                        SpaceSignature::plain_space(2, 1, 4, 0));
  doc.compact_part = "grid.bin";
  const ExpansionDocument parsed = parse_document(serialize_document(doc));
  REQUIRE(parsed.compact_part.has_value());
  CHECK(*parsed.compact_part == "grid.bin");
}

TEST_CASE("bad basis indices are document errors") {
  CHECK_THROWS_AS(
      (void)parse_document(
          R"({"schema_version":1,"d":2,"signature":{"n":0,"N":2,"ell":0,"variant":"plain"},"terms":[{"k":1,"j":0,"basis":[{"l":1,"m":2,"coeff":1.0}]}]})"),
      DocumentError);
  CHECK_THROWS_AS(
      (void)parse_document(
          R"({"schema_version":1,"d":3,"signature":{"n":0,"N":2,"ell":0,"variant":"plain"},"terms":[{"k":1,"j":0,"basis":[{"l":1,"m":-2,"coeff":1.0}]}]})"),
      DocumentError);
  CHECK_THROWS_AS(
      (void)parse_document(
          R"({"schema_version":1,"d":2,"signature":{"n":0,"N":2,"ell":0,"variant":"bogus"},"terms":[]})"),
      DocumentError);
}

TEST_CASE("17-digit floats round trip exactly") {
  const double v = 0.1234567890123456789;
  const std::string s = format_double(v);
  CHECK(std::stod(s) == v);
}
