#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "vdf/cli.hpp"

#include <sstream>

using namespace vdf;
using namespace vdf::testing;

namespace {

struct Run {
  int code;
  std::string text;
  Json doc;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  Run r{code, out.str(), Json()};
  if (!r.text.empty()) r.doc = Json::parse(r.text);
  return r;
}

const auto Q = make_context<RationalField>(GroupAut::identity(1));

}  // namespace

TEST_CASE("series commands") {
  const auto r = run({"series", "eval", "--expr", "(1+t)*(1-t)", "--prec", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.doc["schema"] == "1");
  CHECK(r.doc["command"] == "series eval");
  CHECK(r.doc["text"] == "1 - t^(2) + O(t^(3))");
  CHECK(series_from_json(r.doc, Q) == series(Q, "1 - t^2 + O(t^(3))"));

  const auto inv = run({"series", "invert", "--expr", "1 - t", "--prec", "4"});
  CHECK(series_from_json(inv.doc, Q) == series(Q, "1 + t + t^2 + t^3 + O(t^(4))"));

  const auto sig = run({"--gamma-sigma", "2", "series", "sigma", "--expr", "t + t^3", "--power", "1"});
  CHECK(sig.code == kExitOk);
  CHECK(sig.doc["text"] == "t^(2) + t^(6)");

  const auto rs = run({"--residue", "ratshift", "series", "sigma", "--expr", "s*t"});
  CHECK(rs.doc["text"] == series(make_context<RatShiftField>(GroupAut::identity(1)), "(s+1)*t").str());
}

TEST_CASE("tropical commands") {
  const auto z = run({"trop", "zeros", "--poly", "y^2 - y + t"});
  REQUIRE(z.code == kExitOk);
  REQUIRE(z.doc["zeros"].size() == 2);
  CHECK(z.doc["zeros"][0]["gamma"] == Json::array({0}));
  CHECK(z.doc["zeros"][1]["gamma"] == Json::array({1}));

  const auto e = run({"trop", "eval", "--poly", "y^2 - y + t", "--gamma", "1"});
  CHECK(e.code == kExitOk);
  CHECK(e.text.find("\"minimizers\"") != std::string::npos);

  const auto reg = run({"trop", "regular", "--poly", "y^2 - y + t", "--point", "t"});
  CHECK(reg.code == kExitOk);

  const auto mk = run({"trop", "make-regular", "--poly", "y^2 - y + t", "--gamma", "1"});
  CHECK(mk.code == kExitOk);
}

TEST_CASE("hensel and kapranov commands") {
  const auto h = run({"hensel", "solve", "--poly", "x^2 - (1+t)", "--start", "1", "--prec", "5"});
  REQUIRE(h.code == kExitOk);
  CHECK(h.doc["outcome"] == "root-found");
  const auto& last = h.doc["iterates"].back()["a"];
  CHECK(series_from_json(last, Q) == series(Q, "1 + 1/2*t - 1/8*t^2 + 1/16*t^3 - 5/128*t^4 + O(t^(5))"));

  const auto rs = run({"--residue", "ratshift", "hensel", "solve", "--poly", "s1(x) - x - 1", "--start", "0"});
  CHECK(rs.doc["iterates"].back()["a"]["text"] == "s");
  CHECK(rs.doc["exact_root"] == true);

  const auto c = run({"hensel", "config", "--poly", "x^2 - (1+t)", "--start", "1"});
  CHECK(c.code == kExitOk);
  CHECK(c.text.find("\"gamma\":[1]") != std::string::npos);

  const auto lift = run({"--prec", "5", "kapranov", "lift", "--poly", "y^2 - y + t", "--gamma", "1"});
  REQUIRE(lift.code == kExitOk);
  CHECK(lift.text.find("5*t^(4)") != std::string::npos);

  const auto roots = run({"--prec", "4", "kapranov", "roots", "--poly", "y^2 - t^2"});
  CHECK(roots.code == kExitOk);
}

TEST_CASE("transseries summation command") {
  const auto r = run({"transum", "--op", "e^D - 1", "--rhs", "x^(-2)", "--order", "6"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.doc["solution"]["text"] == "-x^(-1) - 1/2*x^(-2) - 1/6*x^(-3) + 1/30*x^(-5) + O(x^(-7))");
  CHECK(r.doc["residual"]["terms"].empty());
  CHECK(r.doc["operator"] == Json::array({"-1", "1"}));
}

TEST_CASE("exit codes and error documents") {
  {
    const auto r = run({"series", "eval", "--expr", "1 + * t"});
    CHECK(r.code == kExitUsage);
    CHECK(r.doc["error"]["kind"] == "parse");
    CHECK(r.doc["error"]["location"]["line"] == 1);
    CHECK(r.doc["error"]["location"]["column"] == 5);
  }
  {
    const auto r = run({"--prec", "4", "kapranov", "roots", "--poly", "y^2 + 1"});
    CHECK(r.code == kExitDomain);
    CHECK(r.doc["error"]["kind"] == "unsupported");
  }
  {
    const auto r = run({"hensel", "solve", "--poly", "x^2 - 4", "--start", "2"});
    CHECK(r.code == kExitDomain);
    CHECK(r.doc["error"]["kind"] == "domain-error");
  }
  {
    const auto r = run({"kapranov", "roots", "--poly", "y^2 - t"});
    CHECK(r.code == kExitUsage);
    CHECK(r.doc["error"]["kind"] == "usage");
  }
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"--residue", "nope", "series", "eval", "--expr", "1"}).code == kExitUsage);
  CHECK(run({"--prec", "4", "kapranov", "lift", "--poly", "y^2 - t", "--gamma", "1"}).doc["error"]["kind"] ==
        "not-tropical-zero");
  std::ostringstream out, err;
  CHECK(run_cli({"--help"}, out, err) == kExitOk);
  CHECK(err.str().find("transum") != std::string::npos);
}

TEST_CASE("property: output is deterministic and round-trips") {
  Rng rng(kSeed);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = rand_series(rng, Q, rand_gamma(rng, 1, 3, 2), static_cast<std::size_t>(uniform(rng, 1, 4)));
    const std::string text = a.str();
    const std::vector<std::string> args{"series", "eval", "--expr", text};
    const auto r1 = run(args);
    const auto r2 = run(args);
    REQUIRE(r1.code == kExitOk);
    CHECK(r1.text == r2.text);
    CHECK(series_from_json(r1.doc, Q) == a);
  }
}
