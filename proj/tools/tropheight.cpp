// tropheight: command-line front end.
//
// Exit codes: 0 ok, 2 input error, 3 precondition not met (additive place,
// non-principal data, too few terms or digits), 4 verification failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "tropheight/io/json_io.hpp"
#include "tropheight/tropical/riemann.hpp"
#include "verify_suites.hpp"

using namespace tropheight;
using io::Json;

namespace {

enum Exit { kOk = 0, kInput = 2, kPrecondition = 3, kVerification = 4 };

struct Options {
  int precision = 128;
  int nmax = 10;
  double tolerance = 1e-6;
  std::string format = "json";
  std::uint64_t seed = 1;
};

class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) { return io::parse_text(read_file(path), path); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

RationalVector parse_vector(const std::string& s) {
  RationalVector v;
  for (const auto& part : split(s, ',')) v.push_back(Rational::parse(part));
  if (v.empty()) throw InputError("empty point '" + s + "'");
  return v;
}

// Curve file: a bare curve object, or {"curve": {...}, "point": {...}}.
WeierstrassCurve curve_of(const Json& j) {
  return io::curve_from_json(j.contains("curve") ? j["curve"] : j);
}

CurvePoint point_of(const Json& j, const std::string& cli_point) {
  if (!cli_point.empty()) {
    RationalVector v = parse_vector(cli_point);
    if (v.size() != 2) throw InputError("--point needs x,y");
    return {v[0], v[1], false};
  }
  if (!j.contains("point")) throw InputError("no point given (use --point x,y or a \"point\" field)");
  return io::point_from_json(j["point"]);
}

// Strings bare, arrays of strings as (a, b, ...), anything else as JSON.
std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_string(); })) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x.get<std::string>();
    return "(" + s + ")";
  }
  return v.dump();
}

// Aligned two-column table of a flat JSON object; nested values are dumped.
void print_table(const Json& j, std::ostream& os) {
  std::size_t w = 0;
  for (auto it = j.begin(); it != j.end(); ++it) w = std::max(w, it.key().size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    os << std::left << std::setw(static_cast<int>(w) + 2) << it.key();
    os << cell(*it) << "\n";
  }
}

void print_csv_object(const Json& j, std::ostream& os) {
  std::string head, row;
  for (auto it = j.begin(); it != j.end(); ++it) {
    head += (head.empty() ? "" : ",") + it.key();
    std::string v = cell(*it);
    if (v.find(',') != std::string::npos || v.find('"') != std::string::npos) {
      std::string q = "\"";
      for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      v = q + "\"";
    }
    row += (row.empty() ? "" : ",") + v;
  }
  os << head << "\n" << row << "\n";
}

void emit(const Json& j, const Options& o) {
  if (o.format == "json")
    std::cout << j.dump(2) << "\n";
  else if (o.format == "table")
    print_table(j, std::cout);
  else
    print_csv_object(j, std::cout);
}

Json flat_report(const LocalHeightReport& r) { return io::to_json(r); }

// Subcommands.

int cmd_trop_eval(const std::string& file, const std::vector<std::string>& points,
                  const std::string& points_file, const Options& o) {
  TropicalTheta t = io::theta_from_json(read_json(file));
  std::vector<RationalVector> pts;
  for (const auto& p : points) pts.push_back(parse_vector(p));
  if (!points_file.empty()) {
    Json arr = read_json(points_file);
    if (!arr.is_array()) throw InputError(points_file + ": expected an array of points");
    for (std::size_t i = 0; i < arr.size(); ++i)
      pts.push_back(arr[i].is_array() ? io::rational_vector_from(arr[i], "point " + std::to_string(i))
                                      : RationalVector{io::rational_from(arr[i], "point")});
  }
  Json rows = Json::array();
  for (const auto& nu : pts) {
    if (nu.size() != t.data().rank())
      throw InputError("point " + vector_str(nu) + " does not have rank " +
                       std::to_string(t.data().rank()));
    Rational f, n;
    try {
      f = t.eval_f_trop(nu);
      n = t.eval_norm(nu);
    } catch (const InsufficientTerms& e) {
      throw InsufficientTerms(std::string(e.what()) + " (requested point " + vector_str(nu) + ")");
    }
    rows.push_back({{"nu", io::to_json(nu)}, {"f_trop", f.str()}, {"norm_f_trop", n.str()}});
  }
  auto nu_text = [](const Json& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x.get<std::string>();
    return s;
  };
  if (o.format == "json") {
    std::cout << rows.dump(2) << "\n";
  } else if (o.format == "table") {
    std::cout << std::left << std::setw(24) << "nu" << std::setw(20) << "f_trop" << "norm_f_trop\n";
    for (const auto& r : rows)
      std::cout << std::setw(24) << nu_text(r["nu"]) << std::setw(20) << r["f_trop"].get<std::string>()
                << r["norm_f_trop"].get<std::string>() << "\n";
  } else {
    std::cout << "nu,f_trop,norm_f_trop\n";
    for (const auto& r : rows)
      std::cout << nu_text(r["nu"]) << "," << r["f_trop"].get<std::string>() << ","
                << r["norm_f_trop"].get<std::string>() << "\n";
  }
  return kOk;
}

int cmd_theta_char(const std::string& file, const Options& o) {
  TropicalTheta t = io::theta_from_json(read_json(file));
  ThetaCharacteristic c = theta_characteristic(t);
  Json j = io::to_json(c);
  // Decomposition r = -[k,k]/2 + r' is asserted inside theta_characteristic.
  j["minus_half_kk"] = (-t.data().inner(c.k, c.k) / Rational(2)).str();
  emit(j, o);
  return kOk;
}

int cmd_cvp(const std::string& file, const std::vector<std::string>& points, const Options& o) {
  Json in = read_json(file);
  DegenerationData d = io::degeneration_from_json(in.contains("degeneration") ? in["degeneration"] : in);
  TropicalRiemannTheta psi(d);
  Json rows = Json::array();
  for (const auto& p : points) {
    RationalVector nu = parse_vector(p);
    if (nu.size() != d.rank()) throw InputError("point " + p + " has the wrong rank");
    auto ev = psi.norm_with_witness(nu);
    rows.push_back({{"nu", io::to_json(nu)},
                    {"norm_psi", ev.value.str()},
                    {"psi", psi.psi(nu).str()},
                    {"closest_shift", io::to_json(ev.shift)}});
  }
  if (o.format == "json") {
    std::cout << rows.dump(2) << "\n";
  } else {
    if (o.format == "csv") std::cout << "nu,norm_psi,psi\n";
    for (const auto& r : rows) {
      std::string nu;
      for (const auto& x : r["nu"]) nu += (nu.empty() ? "" : " ") + x.get<std::string>();
      std::string sep = o.format == "csv" ? "," : "  ";
      std::cout << nu << sep << r["norm_psi"].get<std::string>() << sep << r["psi"].get<std::string>()
                << "\n";
    }
  }
  return kOk;
}

int cmd_local_height(const std::string& file, const std::string& point, const std::string& prime,
                     const Options& o) {
  Json in = read_json(file);
  WeierstrassCurve e = curve_of(in);
  CurvePoint pt = point_of(in, point);
  if (!e.contains(pt)) throw InputError("point " + pt.str() + " is not on the curve");
  Json j;
  if (prime == "inf" || prime == "infinity") {
    ArchHeight h = local_height_arch(e, pt, o.precision);
    j = {{"place", "infinity"},
         {"lambda_prime", h.value},
         {"error_estimate", h.error_estimate},
         {"precision_bits", h.bits}};
  } else {
    Integer p = io::integer_from(Json(prime), "--prime");
    if (p < 2 || !is_probable_prime(p)) throw InputError("--prime " + prime + " is not prime");
    j = flat_report(local_height(e, p, pt));
  }
  emit(j, o);
  return kOk;
}

int cmd_global_height(const std::string& file, const std::string& point, const Options& o) {
  Json in = read_json(file);
  WeierstrassCurve e = curve_of(in);
  CurvePoint pt = point_of(in, point);
  RunConfig cfg{o.precision, o.nmax, o.tolerance, o.seed};
  GlobalHeightReport r = global_height(e, pt, cfg);
  Json j = io::to_json(r);
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else if (o.format == "table") {
    std::cout << "curve  " << e.str() << "\npoint  " << pt.str() << "\n\n";
    std::cout << std::left << std::setw(10) << "place" << std::setw(26) << "reduction" << std::setw(12)
              << "lambda'(v)" << "lambda' log p\n";
    char buf[64];
    for (const auto& lh : r.finite) {
      std::snprintf(buf, sizeof buf, "%.15f", lh.real_value());
      std::cout << std::setw(10) << lh.p.get_str() << std::setw(26) << lh.reduction.name()
                << std::setw(12) << lh.lambda_prime.str() << buf << "\n";
    }
    std::snprintf(buf, sizeof buf, "%.15f", r.arch.value);
    std::cout << std::setw(10) << "inf" << std::setw(26) << "archimedean" << std::setw(12) << "-" << buf
              << "\n\n";
    std::printf("global_sum     %.15f\noracle (h_x/2) %.15f\ndiscrepancy    %.3e (tolerance %.1e)\n",
                r.global_sum, r.oracle_value, r.discrepancy, r.tolerance);
  } else {
    std::cout << "place,reduction,lambda_prime_v_units,lambda_prime\n";
    for (const auto& lh : r.finite)
      std::cout << lh.p.get_str() << "," << lh.reduction.name() << "," << lh.lambda_prime.str() << ","
                << Json(lh.real_value()).dump() << "\n";
    std::cout << "inf,archimedean,," << Json(r.arch.value).dump() << "\n";
    std::cout << "global_sum,,," << Json(r.global_sum).dump() << "\n";
    std::cout << "oracle,,," << Json(r.oracle_value).dump() << "\n";
  }
  if (!r.passed())
    throw VerificationFailed("global sum and doubling oracle differ by " + std::to_string(r.discrepancy) +
                             " > tolerance " + std::to_string(r.tolerance));
  return kOk;
}

int cmd_verify(const std::string& suite, const Options& o) {
  const auto& all = verify::suites();
  std::vector<std::string> names;
  if (suite == "all") {
    for (const auto& [n, fn] : all) names.push_back(n);
  } else {
    if (!all.count(suite)) {
      std::string known;
      for (const auto& [n, fn] : all) known += " " + n;
      throw InputError("unknown suite '" + suite + "'; known:" + known + " all");
    }
    names.push_back(suite);
  }
  Json out = Json::array();
  bool ok = true;
  for (const auto& n : names) {
    verify::SuiteResult r = all.at(n)(o.seed);
    ok = ok && r.passed();
    Json fails = Json::array();
    for (const auto& f : r.failures) fails.push_back(f);
    out.push_back({{"suite", r.name},
                   {"cases", r.cases},
                   {"failed", r.failures.size()},
                   {"passed", r.passed()},
                   {"seed", o.seed},
                   {"detail", r.detail},
                   {"counterexamples", fails}});
  }
  if (o.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    if (o.format == "csv") std::cout << "suite,cases,failed,passed\n";
    for (const auto& r : out) {
      std::string sep = o.format == "csv" ? "," : "  ";
      std::cout << r["suite"].get<std::string>() << sep << r["cases"] << sep << r["failed"] << sep
                << (r["passed"].get<bool>() ? "pass" : "FAIL") << "\n";
      for (const auto& c : r["counterexamples"]) std::cerr << "  " << c.get<std::string>() << "\n";
    }
  }
  return ok ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical theta functions and normalized local heights of elliptic curves"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--precision", o.precision, "Archimedean working precision in bits (24..512)")
      ->check(CLI::Range(24, 512));
  app.add_option("--nmax", o.nmax, "Doublings in the canonical height oracle")->check(CLI::Range(1, 30));
  app.add_option("--tolerance", o.tolerance, "Tolerance for global_sum vs the oracle")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table", "csv"}));
  app.add_option("--seed", o.seed, "Seed for random checks and verify suites");

  std::string file, point, points_file, prime, suite;
  std::vector<std::string> points;

  auto* trop = app.add_subcommand("trop-eval", "Evaluate f_trop and ||f_trop|| of a tropical theta file");
  trop->add_option("theta", file, "TropicalTheta JSON file")->required();
  trop->add_option("--point", points, "Point of X*_Q as comma-separated rationals (repeatable)");
  trop->add_option("--points-file", points_file, "JSON array of points");

  auto* tc = app.add_subcommand("theta-char", "Theta characteristic k, kappa and the constant r");
  tc->add_option("theta", file, "TropicalTheta JSON file")->required();

  auto* cv = app.add_subcommand("cvp", "Tropical Riemann theta via closest vectors");
  cv->add_option("data", file, "Degeneration or TropicalTheta JSON file")->required();
  cv->add_option("--point", points, "Point of X*_Q as comma-separated rationals (repeatable)");

  auto* lh = app.add_subcommand("local-height", "Normalized local height at one place");
  lh->add_option("curve", file, "Curve JSON file")->required();
  lh->add_option("--point", point, "Point as x,y (default: the file's \"point\")");
  lh->add_option("--prime", prime, "A prime, or inf for the real place")->required();

  auto* gh = app.add_subcommand("global-height", "Sum of local heights vs the doubling oracle");
  gh->add_option("curve", file, "Curve JSON file")->required();
  gh->add_option("--point", point, "Point as x,y (default: the file's \"point\")");

  auto* ver = app.add_subcommand("verify", "Run a property suite");
  ver->add_option("suite", suite, "Suite name or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }
  if (trop->parsed() && !app.get_option("--format")->count()) o.format = "csv";

  try {
    if (trop->parsed()) return cmd_trop_eval(file, points, points_file, o);
    if (tc->parsed()) return cmd_theta_char(file, o);
    if (cv->parsed()) return cmd_cvp(file, points, o);
    if (lh->parsed()) return cmd_local_height(file, point, prime, o);
    if (gh->parsed()) return cmd_global_height(file, point, o);
    if (ver->parsed()) return cmd_verify(suite, o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const InsufficientTerms& e) {
    std::cerr << "insufficient terms: " << e.what() << "\n";
    return kPrecondition;
  } catch (const PrecisionError& e) {
    std::cerr << "precision: " << e.what() << "\n";
    return kPrecondition;
  } catch (const OnDivisor& e) {
    std::cerr << "on divisor: " << e.what() << "\n";
    return kPrecondition;
  } catch (const NotPrincipallyPolarizedData& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const VerificationFailed& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const TheoremViolation& e) {
    std::cerr << "theorem violation: " << e.what() << "\n";
    return kVerification;
  }
  return kOk;
}
