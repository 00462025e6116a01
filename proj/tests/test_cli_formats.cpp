#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "screenlab/json_io.hpp"
#include "screenlab/reference_table.hpp"

using namespace screenlab;
using nlohmann::json;

TEST_CASE("braiding matrix json round trip") {
  const json j = json::parse(R"({"rank": 2, "m": [["0", "1/2"], ["1/2", "-1/3"]]})");
  const BraidingMatrix q = json_io::braiding_from_json(j);
  CHECK(q.rank() == 2);
  CHECK(q.exponent(0, 1) == Rational(1, 2));
  CHECK(q.exponent(1, 1) == Rational(5, 3));  // stored mod 2
  const json back = json_io::braiding_to_json(q);
  CHECK(json_io::braiding_from_json(back).exponent(1, 1) == Rational(5, 3));
  CHECK_THROWS_AS(
      json_io::braiding_from_json(json::parse(R"({"rank": 2, "m": [["0"]]})")),
      PreconditionError);
}

TEST_CASE("lattice json round trip") {
  const json j = json::parse(R"({"rank": 2, "gram": [["2", "-1"], ["-1", "2"]]})");
  const voa::Lattice lattice = json_io::lattice_from_json(j);
  CHECK(lattice.rank() == 2);
  CHECK(lattice.gram(0, 1) == Rational(-1));
  CHECK(lattice.common_denominator() == 1);
  const json back = json_io::lattice_to_json(lattice);
  CHECK(json_io::lattice_from_json(back).gram(1, 1) == Rational(2));

  // fractional entries set the common denominator
  const json jf = json::parse(R"({"rank": 1, "gram": [["2/5"]]})");
  CHECK(json_io::lattice_from_json(jf).common_denominator() == 5);

  // asymmetric Gram matrices are rejected
  CHECK_THROWS_AS(json_io::lattice_from_json(
                      json::parse(R"({"rank": 2, "gram": [["2","1"],["0","2"]]})")),
                  PreconditionError);
}

TEST_CASE("voa element json round trip") {
  voa::VoaElement<Complex> v(2, 6);
  v.add(voa::DiffMonomial::generator(0, 2).times(voa::DiffMonomial::generator(1, 1)),
        {Rational(1), Rational(-1, 2)}, Complex(0.5, -1.25));
  v.add(voa::DiffMonomial::one(), {Rational(0), Rational(3)}, Complex(2, 0));
  const json j = json_io::element_to_json(v);
  const auto w = json_io::element_from_json(j, 2, 6);
  CHECK(w == v);
  // integer coordinates serialize as plain integers
  bool saw_plain_int = false;
  for (const auto& term : j)
    for (const auto& c : term.at("lattice"))
      if (c.is_number_integer()) saw_plain_int = true;
  CHECK(saw_plain_int);
}

TEST_CASE("rationals accept integers and strings") {
  CHECK(json_io::rational_from_json(json(3)) == Rational(3));
  CHECK(json_io::rational_from_json(json("3/9")) == Rational(1, 3));
  CHECK_THROWS_AS(json_io::rational_from_json(json(1.5)), PreconditionError);
}

TEST_CASE("reference table layout") {
  int fmono = 0, ftilde = 0;
  for (const auto& row : reference::rows()) {
    if (row.quantity == "fmono") ++fmono;
    if (row.quantity == "ftilde") ++ftilde;
  }
  CHECK(fmono == 7);   // seven F- rows
  CHECK(ftilde == 8);  // eight listed component values
}
