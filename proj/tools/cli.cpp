#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/poly_parser.hpp"
#include "iwasawa/selftest.hpp"
#include "iwasawa/serialization.hpp"

namespace iwasawa::cli {

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Config {
  int p = 3;
  int n = 1;
  int ext = 1;
  int M = 2;
  int m = 1;
  int jobs = 1;
  u64 seed = 0;
  i64 ap = 0;
  int rank = 2;
  int trials = 100;
  std::string out;
  std::string csv;
  std::string input;

  std::string mode = "pm";
  std::string plus = "0", minus = "0";
  std::string root = "alpha";
  std::string variant = "both";
  bool beyond_weil = false;
  std::vector<i64> curve;
  std::string curve_file;
  i64 disc = -3;
  i64 bound = 10000;
  std::vector<i64> primes;
};

Json read_json(const std::string& path, const std::string& option) {
  if (path.empty()) throw InputError("option '" + option + "' is required");
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("option '" + option + "': cannot open " + path);
    buf << in.rdbuf();
  }
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw InputError("option '" + option + "': malformed JSON: " + e.what());
  }
}

void emit(const Json& j, const Config& c, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw InputError("option '--out': cannot write " + c.out);
  f << text;
}

void check_ring(const Config& c) {
  if (c.p < 3 || !is_prime(c.p)) throw InputError("option '--p' must be an odd prime");
  if (c.n < 1) throw InputError("option '--n' must be >= 1");
  if (c.ext != 1 && c.ext != 2) throw InputError("option '--ext' must be 1 or 2");
  if (c.jobs < 1) throw InputError("option '--jobs' must be >= 1");
}

void check_depth(int M, const std::string& name) {
  if (M < 0 || M > 6) throw InputError("option '" + name + "' must be in [0, 6]");
}

int cmd_omega(const Config& c, std::ostream& out) {
  check_ring(c);
  check_depth(c.m, "--m");
  emit(to_json(omega_factors(RingParams(c.p, c.n, c.ext), c.m)), c, out);
  return kOk;
}

int cmd_theta_synth(const Config& c, std::ostream& out) {
  check_ring(c);
  check_depth(c.M, "--M");
  const RingParams R(c.p, c.n);
  const TruncatedSeries a(R, parse_poly(R, c.plus, "--plus"));
  const TruncatedSeries b(R, parse_poly(R, c.minus, "--minus"));
  ThetaFamily fam;
  if (c.mode == "pm") {
    if (mod_reduce(c.ap, R.modulus()) != 0) throw InputError("option '--ap' must be 0 in pm mode");
    fam = pm_synthesize(a, b, R, c.M);
  } else if (c.mode == "sharpflat") {
    fam = sprung_synthesize(a, b, R, c.ap, c.M);
  } else {
    throw InputError("option '--mode' must be pm or sharpflat");
  }
  emit(to_json(fam), c, out);
  return kOk;
}

int cmd_theta_decompose(const Config& c, std::ostream& out) {
  const ThetaFamily fam = family_from_json(read_json(c.input, "--family"));
  std::string mode = c.mode;
  if (mode == "auto") mode = mod_reduce(fam.ap, fam.params.modulus()) == 0 ? "pm" : "sharpflat";
  SignedPair pair;
  if (mode == "pm")
    pair = pm_extract(fam);
  else if (mode == "sharpflat")
    pair = sprung_decompose(fam, fam.depth);
  else
    throw InputError("option '--mode' must be auto, pm or sharpflat");
  emit(to_json(pair), c, out);
  return kOk;
}

HeckeQuadField field_for(i64 ap, int p, bool beyond_weil) {
  try {
    return quad_field(ap, p, !beyond_weil);
  } catch (const PreconditionError& e) {
    throw InputError(std::string("options '--ap'/'--p': ") + e.what());
  }
}

Root parse_root(const std::string& s) {
  if (s == "alpha") return Root::Alpha;
  if (s == "beta") return Root::Beta;
  throw InputError("option '--root' must be alpha or beta");
}

int cmd_stabilize(const Config& c, std::ostream& out) {
  const ThetaFamily fam = family_from_json(read_json(c.input, "--family"));
  const HeckeQuadField F = field_for(fam.ap, fam.params.p(), c.beyond_weil);
  const Root root = parse_root(c.root);
  if (c.m < 0 || c.m > fam.depth) throw InputError("option '--m' must be in [0, M]");
  if (c.m == 0 && fam.depth < 1) throw InputError("option '--m': level 0 needs M >= 1");
  Json j = {{"root", root_name(root)}, {"m", c.m}};
  Json comps = Json::array();
  for (int k = 0; k < fam.rank; ++k) comps.push_back(to_json(stabilize(fam, F, root, c.m, k)));
  j["components"] = comps;
  bool passed = true;
  if (fam.depth >= 1) {
    const auto rep = check_projection_compat(fam, F, root, fam.depth - 1);
    j["projection"] = to_json(rep);
    passed = rep.passed;
  }
  j["passed"] = passed;
  emit(j, c, out);
  return passed ? kOk : kCheckFailed;
}

int cmd_identity(const Config& c, std::ostream& out) {
  if (c.p < 3 || !is_prime(c.p)) throw InputError("option '--p' must be an odd prime");
  const HeckeQuadField F = field_for(c.ap, c.p, c.beyond_weil);
  Json reports = Json::array();
  bool passed = true;
  if (c.variant != "inert" && c.variant != "split" && c.variant != "both")
    throw InputError("option '--variant' must be inert, split or both");
  if (c.variant != "split") {
    const auto r = leading_identity_inert(F);
    passed = passed && r.passed;
    reports.push_back(to_json(r));
  }
  if (c.variant != "inert") {
    const auto r = leading_identity_split(F);
    passed = passed && r.passed;
    reports.push_back(to_json(r));
  }
  emit({{"passed", passed}, {"reports", reports}}, c, out);
  return passed ? kOk : kCheckFailed;
}

int cmd_local_selftest(const Config& c, std::ostream& out) {
  check_ring(c);
  check_depth(c.M, "--M");
  if (c.rank < 2) throw InputError("option '--rank' must be >= 2");
  if (c.trials < 1) throw InputError("option '--trials' must be >= 1");
  const Json cert = local_selftest(RingParams(c.p, c.n, 2), c.M, c.rank, c.seed, c.trials);
  emit(cert, c, out);
  return cert["passed"].get<bool>() ? kOk : kCheckFailed;
}

int cmd_admissible_scan(const Config& c, std::ostream& out) {
  if (c.jobs < 1) throw InputError("option '--jobs' must be >= 1");
  CurveData E;
  if (!c.curve_file.empty()) {
    E = curve_from_json(read_json(c.curve_file, "--curve-file"));
  } else {
    if (c.curve.size() != 5) throw InputError("option '--curve' needs five coefficients a1,a2,a3,a4,a6");
    try {
      E = CurveData::make({c.curve[0], c.curve[1], c.curve[2], c.curve[3], c.curve[4]});
    } catch (const PreconditionError& e) {
      throw InputError(std::string("option '--curve': ") + e.what());
    }
  }
  if (c.p < 5 || !is_prime(c.p)) throw InputError("option '--p' must be a prime >= 5");
  if (c.n < 1) throw InputError("option '--n' must be >= 1");
  if (c.bound < 2 || c.bound > kPointCountCap) throw InputError("option '--max' must be in [2, 2^24]");
  QuadFieldData K;
  try {
    K = QuadFieldData::make(c.disc, E);
  } catch (const PreconditionError& e) {
    throw InputError(std::string("option '--disc': ") + e.what());
  }
  const auto primes = scan_admissible(E, K, c.p, c.n, c.bound, c.jobs);
  if (!c.csv.empty()) {
    std::ofstream f(c.csv, std::ios::binary);
    if (!f) throw InputError("option '--csv': cannot write " + c.csv);
    f << to_csv(primes);
  }
  emit(to_json(primes), c, out);
  return kOk;
}

int cmd_fitting(const Config& c, std::ostream& out) {
  if (c.jobs < 1) throw InputError("option '--jobs' must be >= 1");
  const Json j = read_json(c.input, "--matrix");
  const PresentationMatrix P = presentation_from_json(j);
  const FiniteIdeal I = fitting_ideal(P, c.jobs);
  emit({{"rows", P.rows}, {"cols", P.cols}, {"ideal", to_json(I)}}, c, out);
  return kOk;
}

int cmd_harness_verify(const Config& c, std::ostream& out) {
  const BipartiteSystem sys = bipartite_from_json(read_json(c.input, "--system"));
  const auto rep = verify_bipartite(sys);
  emit(to_json(rep), c, out);
  return rep.passed ? kOk : kCheckFailed;
}

int cmd_harness_construct(const Config& c, std::ostream& out) {
  check_ring(c);
  check_depth(c.M, "--M");
  if (c.rank < 1) throw InputError("option '--rank' must be >= 1");
  for (i64 q : c.primes)
    if (!is_prime(q)) throw InputError("option '--primes' must list primes");
  emit(to_json(construct_bipartite(RingParams(c.p, c.n), c.M, c.rank, c.primes, c.seed)), c, out);
  return kOk;
}

int cmd_selftest_all(const Config& c, std::ostream& out) {
  if (c.jobs < 1) throw InputError("option '--jobs' must be >= 1");
  const Json j = run_selftests(c.seed, c.jobs);
  emit(j, c, out);
  return j["passed"].get<bool>() ? kOk : kCheckFailed;
}

void add_ring(CLI::App* app, Config& c, bool with_ext = false) {
  app->add_option("--p", c.p, "Odd prime p")->envname("IWASAWA_P");
  app->add_option("--n", c.n, "Coefficients modulo p^n")->envname("IWASAWA_N");
  if (with_ext) app->add_option("--ext", c.ext, "1 for Z_p, 2 for the unramified quadratic extension");
}

void add_common(CLI::App* app, Config& c) {
  app->add_option("--out", c.out, "Write JSON to this file instead of stdout");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Finite-level Iwasawa algebra toolkit"};
  app.require_subcommand(1);
  std::function<int()> action;
  auto bind = [&](CLI::App* sub, int (*fn)(const Config&, std::ostream&)) {
    sub->callback([&, fn] { action = [&, fn] { return fn(c, out); }; });
  };

  auto* omega = app.add_subcommand("omega", "Cyclotomic factors at level m");
  add_ring(omega, c, true);
  omega->add_option("--m", c.m, "Level")->required();
  add_common(omega, c);
  bind(omega, cmd_omega);

  auto* theta = app.add_subcommand("theta", "Theta families");
  theta->require_subcommand(1);
  auto* synth = theta->add_subcommand("synth", "Build a family from signed components");
  add_ring(synth, c);
  synth->add_option("--M", c.M, "Depth")->envname("IWASAWA_M");
  synth->add_option("--mode", c.mode, "pm or sharpflat");
  synth->add_option("--ap", c.ap, "a_p (sharpflat mode)");
  synth->add_option("--plus,--sharp", c.plus, "First signed component, e.g. \"1 + 2*X\"");
  synth->add_option("--minus,--flat", c.minus, "Second signed component");
  add_common(synth, c);
  bind(synth, cmd_theta_synth);
  auto* decompose = theta->add_subcommand("decompose", "Signed components of a family");
  decompose->add_option("--family,family", c.input, "Family JSON file (- for stdin)")->required();
  decompose->add_option("--mode", c.mode, "auto, pm or sharpflat")->default_str("auto");
  add_common(decompose, c);
  decompose->callback([&] {
    if (decompose->count("--mode") == 0) c.mode = "auto";
    action = [&] { return cmd_theta_decompose(c, out); };
  });

  auto* stab = app.add_subcommand("stabilize", "Stabilized element at a root");
  stab->add_option("--family,family", c.input, "Family JSON file (- for stdin)")->required();
  stab->add_option("--root", c.root, "alpha or beta");
  stab->add_option("--m", c.m, "Level");
  stab->add_flag("--beyond-weil", c.beyond_weil, "Accept a_p^2 >= 4p when p | a_p");
  add_common(stab, c);
  bind(stab, cmd_stabilize);

  auto* ident = app.add_subcommand("identity", "Leading-term identities as formal polynomial checks");
  ident->add_option("--ap", c.ap, "a_p")->required();
  ident->add_option("--p", c.p, "Prime p")->required()->envname("IWASAWA_P");
  ident->add_option("--variant", c.variant, "inert, split or both");
  ident->add_flag("--beyond-weil", c.beyond_weil, "Accept a_p^2 >= 4p when p | a_p");
  add_common(ident, c);
  bind(ident, cmd_identity);

  auto* local = app.add_subcommand("local", "Local point systems");
  local->require_subcommand(1);
  auto* lst = local->add_subcommand("selftest", "Generate a system and run every check");
  add_ring(lst, c);
  lst->add_option("--M", c.M, "Depth")->envname("IWASAWA_M");
  lst->add_option("--rank", c.rank, "Module rank");
  lst->add_option("--trials", c.trials, "Random inputs per (m, sign)");
  lst->add_option("--seed", c.seed, "Root seed")->envname("IWASAWA_SEED");
  add_common(lst, c);
  bind(lst, cmd_local_selftest);

  auto* adm = app.add_subcommand("admissible", "Admissible primes");
  adm->require_subcommand(1);
  auto* scan = adm->add_subcommand("scan", "n-admissible primes below a bound");
  scan->add_option("--curve", c.curve, "a1,a2,a3,a4,a6")->delimiter(',');
  scan->add_option("--curve-file", c.curve_file, "Curve JSON with conductor factorisation");
  scan->add_option("--disc", c.disc, "Fundamental discriminant D < 0")->required();
  scan->add_option("--p", c.p, "Prime p >= 5")->required()->envname("IWASAWA_P");
  scan->add_option("--n", c.n, "n")->envname("IWASAWA_N");
  scan->add_option("--max", c.bound, "Scan primes below this bound");
  scan->add_option("--jobs", c.jobs, "Worker threads")->envname("IWASAWA_JOBS");
  scan->add_option("--csv", c.csv, "Also write the table as CSV");
  add_common(scan, c);
  bind(scan, cmd_admissible_scan);

  auto* fit = app.add_subcommand("fitting", "Zeroth Fitting ideal of a presentation");
  fit->add_option("--matrix,matrix", c.input, "Presentation JSON file (- for stdin)")->required();
  fit->add_option("--jobs", c.jobs, "Worker threads")->envname("IWASAWA_JOBS");
  add_common(fit, c);
  bind(fit, cmd_fitting);

  auto* harness = app.add_subcommand("harness", "Bipartite system checks");
  harness->require_subcommand(1);
  auto* verify = harness->add_subcommand("verify", "Check every edge of a system");
  verify->add_option("--system,system", c.input, "System JSON file (- for stdin)")->required();
  add_common(verify, c);
  bind(verify, cmd_harness_verify);
  auto* construct = harness->add_subcommand("construct", "Build a consistent random system");
  add_ring(construct, c);
  construct->add_option("--M", c.M, "Depth")->envname("IWASAWA_M");
  construct->add_option("--rank", c.rank, "Class rank");
  construct->add_option("--primes", c.primes, "Comma-separated primes")->delimiter(',');
  construct->add_option("--seed", c.seed, "Root seed")->envname("IWASAWA_SEED");
  add_common(construct, c);
  bind(construct, cmd_harness_construct);

  auto* all = app.add_subcommand("selftest-all", "Property suites of every module");
  all->add_option("--seed", c.seed, "Root seed")->envname("IWASAWA_SEED");
  all->add_option("--jobs", c.jobs, "Worker threads")->envname("IWASAWA_JOBS");
  add_common(all, c);
  bind(all, cmd_selftest_all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  if (!action) return kUsage;
  try {
    return action();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParameterMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}

}  // namespace iwasawa::cli
