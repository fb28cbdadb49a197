#include <doctest.h>

#include <sstream>

#include "lqdg/textio.hpp"

using namespace lqdg;

TEST_CASE("fixed 12-significant-digit formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(-1.0) == "-1");
  CHECK(format_number(1.1547005383792515) == "1.15470053838");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  // Scientific below 1e-4 and from 1e6 up.
  CHECK(format_number(1e-4) == "0.0001");
  CHECK(format_number(9.9e-5) == "9.90000000000e-05");
  CHECK(format_number(999999.5) == "999999.5");
  CHECK(format_number(1e6) == "1.00000000000e+06");
  CHECK(format_number(-3.25e-7) == "-3.25000000000e-07");
}

TEST_CASE("formatting is reproducible") {
  const double value = 0.8606629658238704;
  CHECK(format_number(value) == format_number(value));
  CHECK(format_number(value) == "0.860662965824");
}

TEST_CASE("dataset CSV layout") {
  Dataset d;
  d.columns = {"n", "value"};
  d.rows = {{1.0, 0.5}, {2.0, 2e-6}};
  std::ostringstream os;
  write_csv(os, d);
  CHECK(os.str() == "n,value\n1,0.5\n2,2.00000000000e-06\n");
}
