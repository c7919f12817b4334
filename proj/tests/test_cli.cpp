#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "iwasawa/errors.hpp"
#include "iwasawa/poly_parser.hpp"
#include "iwasawa/sampling.hpp"
#include "iwasawa/serialization.hpp"

using namespace iwasawa;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "iwasawa");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = std::string(P_tmpdir) + "/iwasawa_test_" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("polynomial parser") {
  const RingParams R(5, 2);
  CHECK(parse_poly(R, "1 + 2*X - X^3") == poly_from_ints(R, {1, 2, 0, -1}));
  CHECK(parse_poly(R, "X^2 + X^2") == poly_from_ints(R, {0, 0, 2}));
  CHECK(parse_poly(R, "-X") == poly_from_ints(R, {0, -1}));
  CHECK(parse_poly(R, "0").empty());
  CHECK(parse_poly(R, "25").empty());
  CHECK(parse_poly(R, " 3 * X ^ 2 ") == poly_from_ints(R, {0, 0, 3}));
  for (const char* bad : {"", "1 +", "X^", "2**X", "Y", "X^-1", "1 2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_poly(R, bad, "--plus"), InputError);
  }
  try {
    parse_poly(R, "oops", "--minus");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("--minus") != std::string::npos);
  }
  SplitMix64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const Poly f = random_poly(R, 6, rng);
    CHECK(parse_poly(R, format_poly(f)) == f);
  }
  CHECK(format_poly({}) == "0");
}

TEST_CASE("serialization round trips") {
  SplitMix64 rng(8);
  for (int ext : {1, 2}) {
    const RingParams R(3, 2, ext);
    for (int t = 0; t < 10; ++t) {
      const auto s = random_scalar(R, rng);
      CHECK(scalar_from_json(R, scalar_to_json(R, s), "x") == s);
      const auto f = random_series(R, omega_poly(R, 2), rng);
      CHECK(series_from_json(to_json(f)) == f);
      const TruncatedSeries g(R, random_poly(R, 5, rng));
      CHECK(series_from_json(to_json(g)) == g);
      const TruncatedSeries h(R, random_poly(R, 5, rng), poly_from_ints(R, {1, 0, 1}));
      CHECK(series_from_json(to_json(h)) == h);
      const auto x = random_group_element(R, 2, rng);
      CHECK(group_element_from_json(to_json(x)) == x);
    }
  }
  const RingParams R(5, 1);
  const auto fam = pm_synthesize(TruncatedSeries(R, random_poly(R, 30, rng)), TruncatedSeries(R, random_poly(R, 30, rng)), R, 3);
  const auto fam2 = family_from_json(Json::parse(to_json(fam).dump()));
  CHECK(fam2.ap == fam.ap);
  CHECK(fam2.depth == fam.depth);
  CHECK(fam2.levels == fam.levels);

  const auto pair = pm_extract(fam);
  const auto pair2 = signed_pair_from_json(to_json(pair));
  CHECK(pair2.first == pair.first);
  CHECK(pair2.second == pair.second);

  const auto sf = sprung_decompose(sprung_synthesize(TruncatedSeries(R, poly_from_ints(R, {1, 2})), TruncatedSeries(R, {}), R, 1, 2), 2);
  const auto sf2 = signed_pair_from_json(to_json(sf));
  CHECK(sf2.mode == SignedMode::SharpFlat);
  CHECK(sf2.first == sf.first);
  CHECK(sf2.kernel_basis == sf.kernel_basis);

  const auto sys = generate_system(RingParams(5, 1, 2), 2, 2, 9);
  const auto sys2 = local_system_from_json(to_json(sys));
  CHECK(to_json(sys2) == to_json(sys));

  const auto curve = curve_from_json(Json::parse(R"({"a":[0,0,1,-1,0],"conductor":37,"conductor_factors":[[37,1]]})"));
  CHECK(curve.conductor == 37);
  CHECK(curve_from_json(to_json(curve)).conductor == 37);

  const auto bip = construct_bipartite(R, 1, 2, {2, 13}, 4);
  const auto bip2 = bipartite_from_json(to_json(bip));
  CHECK(to_json(bip2) == to_json(bip));
  CHECK(verify_bipartite(bip2).passed);

  const QuadraticScalar x(2, 5, Rational(3, 7), Rational(-1));
  CHECK(to_json(quadratic_from_json(to_json(x))) == to_json(x));
}

TEST_CASE("malformed input names the field") {
  CHECK_THROWS_AS(family_from_json(Json::parse(R"({"p":5})")), InputError);
  try {
    family_from_json(Json::parse(R"({"p":5,"n":1,"ap":"0","M":1,"r":1})"));
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("levels") != std::string::npos);
  }
  CHECK_THROWS_AS(curve_from_json(Json::parse(R"({"a":[1,2]})")), InputError);
  CHECK_THROWS_AS(params_from_json(Json::parse(R"({"p":"five","n":1})")), InputError);
}

TEST_CASE("command line exit codes") {
  CHECK(run({"omega", "--p", "3", "--n", "2", "--m", "2"}).code == 0);
  CHECK(run({"omega", "--p", "4", "--m", "1"}).code == 2);
  CHECK(run({"omega"}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"theta", "synth", "--plus", "1 +"}).code == 2);
  CHECK(run({"theta", "decompose", "--family", "/nonexistent/file.json"}).code == 2);
  CHECK(run({"identity", "--ap", "0", "--p", "5"}).code == 0);
  CHECK(run({"identity", "--ap", "5", "--p", "5"}).code == 2);
  CHECK(run({"identity", "--ap", "5", "--p", "5", "--beyond-weil"}).code == 0);
  const auto bad = temp_file("bad.json", "{ not json");
  const auto r = run({"fitting", "--matrix", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("--matrix") != std::string::npos);
}

TEST_CASE("synth and decompose round trip through the command line") {
  const auto synth = run({"theta", "synth", "--p", "5", "--n", "1", "--M", "3", "--plus", "1 + 2*X", "--minus", "3*X^2"});
  REQUIRE(synth.code == 0);
  const auto path = temp_file("family.json", synth.out);
  const auto dec = run({"theta", "decompose", "--family", path});
  REQUIRE(dec.code == 0);
  const auto pair = signed_pair_from_json(Json::parse(dec.out));
  const RingParams R(5, 1);
  REQUIRE(pair.rank() == 1);
  CHECK(coset_contains(pair, 0, TruncatedSeries(R, poly_from_ints(R, {1, 2})), TruncatedSeries(R, poly_from_ints(R, {0, 0, 3}))));

  const auto sf = run({"theta", "synth", "--mode", "sharpflat", "--p", "5", "--n", "1", "--M", "2", "--ap", "2", "--sharp", "1", "--flat", "X"});
  REQUIRE(sf.code == 0);
  const auto sfpath = temp_file("sf.json", sf.out);
  const auto sfdec = run({"theta", "decompose", "--family", sfpath});
  REQUIRE(sfdec.code == 0);
  const auto sfpair = signed_pair_from_json(Json::parse(sfdec.out));
  CHECK(sfpair.mode == SignedMode::SharpFlat);
  CHECK(coset_contains(sfpair, 0, TruncatedSeries(R, poly_from_ints(R, {1})), TruncatedSeries(R, poly_from_ints(R, {0, 1}))));
}

TEST_CASE("harness and fitting through the command line") {
  const auto sys = run({"harness", "construct", "--p", "5", "--n", "1", "--M", "1", "--rank", "2", "--primes", "2,13", "--seed", "3"});
  REQUIRE(sys.code == 0);
  auto j = Json::parse(sys.out);
  CHECK(run({"harness", "verify", "--system", temp_file("sys.json", sys.out)}).code == 0);
  for (auto& v : j["vertices"]) {
    if (v["parity"] == "DEFINITE") {
      auto& c = v["lambda"];
      if (c.empty())
        c.push_back("1");
      else
        c[0] = std::to_string((std::stoi(c[0].get<std::string>()) + 1) % 5);
      break;
    }
  }
  CHECK(run({"harness", "verify", "--system", temp_file("sys_bad.json", j.dump())}).code == 1);

  const auto fit = run({"fitting", "--matrix",
                        temp_file("mat.json", R"({"p":3,"n":3,"ext":1,"M":2,"entries":[[["3"],["0","1"]],[["0"],["3"]]]})")});
  REQUIRE(fit.code == 0);
  CHECK(fit.out.find("\"9\"") != std::string::npos);
}

TEST_CASE("selftest certificate is independent of the job count") {
  const auto a = run({"selftest-all", "--seed", "42", "--jobs", "1"});
  const auto b = run({"selftest-all", "--seed", "42", "--jobs", "4"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
