#include <doctest.h>

#include <sstream>

#include "agekit/dataset.hpp"
#include "agekit/errors.hpp"
#include "agekit/rng.hpp"

using namespace agekit;

TEST_CASE("csv write/read is exact") {
  Dataset data;
  data.names = {"a", "b"};
  data.kind = ObservationKind::Stroke;
  Rng rng(6);
  for (int i = 0; i < 50; ++i)
    data.add_row(std::vector<double>{rng.normal(0, 1e3), rng.uniform01() * 1e-7},
                 rng.bernoulli(0.5) ? Label::Child : Label::Adult,
                 "session" + std::to_string(i % 5));
  data.add_row(std::vector<double>{0.1, 1.0 / 3.0}, Label::Child, "s");

  std::ostringstream out;
  write_csv(data, out);
  std::istringstream in(out.str());
  const Dataset back = read_csv(in);
  CHECK(back.names == data.names);
  CHECK(back.values == data.values);  // bit-exact via shortest round-trip
  CHECK(back.labels == data.labels);
  CHECK(back.groups == data.groups);
}

TEST_CASE("csv reader skips comment lines and validates structure") {
  std::istringstream in(
      "# {\"command\":\"extract\"}\n"
      "f1,f2,label,group\n"
      "1.5,2.5,child,s1\n"
      "3,4,adult,s2\n");
  const Dataset data = read_csv(in);
  REQUIRE(data.size() == 2);
  CHECK(data.n_features() == 2);
  CHECK(data.row(1)[1] == 4.0);
  CHECK(data.labels[0] == Label::Child);
  CHECK(data.groups[1] == "s2");

  std::istringstream bad_header("f1,f2\n1,2\n");
  CHECK_THROWS_AS(read_csv(bad_header), ParseError);
  std::istringstream bad_row("f1,label,group\nnot_a_number,child,s\n");
  CHECK_THROWS_AS(read_csv(bad_row), ParseError);
  std::istringstream bad_label("f1,label,group\n1,toddler,s\n");
  CHECK_THROWS_AS(read_csv(bad_label), ParseError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), Error);
}

TEST_CASE("add_row enforces the schema width") {
  Dataset data;
  data.names = {"a", "b"};
  CHECK_THROWS_AS(data.add_row(std::vector<double>{1.0}, Label::Child, "s"),
                  DimensionMismatch);
}

TEST_CASE("select_rows keeps schema and metadata") {
  Dataset data;
  data.names = {"a"};
  for (int i = 0; i < 6; ++i)
    data.add_row(std::vector<double>{static_cast<double>(i)},
                 i % 2 ? Label::Child : Label::Adult, "g" + std::to_string(i));
  const std::vector<std::size_t> pick = {5, 0, 3};
  const Dataset out = data.select_rows(pick);
  REQUIRE(out.size() == 3);
  CHECK(out.row(0)[0] == 5.0);
  CHECK(out.row(2)[0] == 3.0);
  CHECK(out.groups[1] == "g0");
}

TEST_CASE("row_content_hash is order-independent and content-sensitive") {
  Dataset a;
  a.names = {"x"};
  a.add_row(std::vector<double>{1.0}, Label::Child, "g1");
  a.add_row(std::vector<double>{2.0}, Label::Adult, "g2");

  Dataset b;
  b.names = {"x"};
  b.add_row(std::vector<double>{2.0}, Label::Adult, "g2");
  b.add_row(std::vector<double>{1.0}, Label::Child, "g1");

  CHECK(row_content_hash(a) == row_content_hash(b));

  Dataset c = a;
  c.values[0] = 1.0000001;
  CHECK(row_content_hash(a) != row_content_hash(c));
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.6789, -0.0, 2.5e17}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}
