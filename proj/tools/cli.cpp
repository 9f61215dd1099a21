#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "rlo/balance.hpp"
#include "rlo/binom.hpp"
#include "rlo/core.hpp"
#include "rlo/enumerate.hpp"
#include "rlo/structured.hpp"

namespace rlo::cli {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json probability_json(const ExactProbability& p) {
  return {{"count", p.count.str()},
          {"n", p.exponent},
          {"value", p.value()},
          {"fraction", p.fraction()}};
}

void emit(std::ostream& out, json j) {
  j["schema"] = 1;
  out << j.dump() << '\n';
}

std::int64_t get_int(const json& p, const char* key) {
  if (!p.contains(key) || !p[key].is_number_integer())
    throw UsageError(std::string("params need integer '") + key + "'");
  return p[key].get<std::int64_t>();
}

IntVec get_ints(const json& p, const char* key) {
  if (!p.contains(key) || !p[key].is_array())
    throw UsageError(std::string("params need integer array '") + key + "'");
  IntVec v;
  for (const auto& e : p[key]) {
    if (!e.is_number_integer()) throw UsageError(std::string("'") + key + "' must hold integers");
    v.push_back(e.get<std::int64_t>());
  }
  return v;
}

std::optional<double> get_beta(const json& p) {
  if (!p.contains("beta")) return std::nullopt;
  if (!p["beta"].is_number()) throw UsageError("'beta' must be a number");
  return p["beta"].get<double>();
}

// A parsed structured configuration with its natural ball radius.
struct Structured {
  json descriptor;
  std::int64_t natural_r2 = 0;
  UnitVectorConfig vectors;
  std::function<ExactProbability(std::int64_t r2)> probability;
  std::string method;
};

Structured make_structured(const std::string& type, const json& p) {
  Structured s;
  if (type == "ortho" || type == "orthogonal") {
    OrthogonalConfig c = p.contains("m")
                             ? OrthogonalConfig(get_ints(p, "m"))
                             : make_orthogonal(get_int(p, "d"), get_int(p, "n"),
                                               p.contains("t") ? std::optional<std::size_t>(
                                                                     get_int(p, "t"))
                                                               : std::nullopt);
    s.descriptor = to_json(c);
    s.natural_r2 = static_cast<std::int64_t>(c.d());
    s.vectors = materialize(c);
    s.probability = [c](std::int64_t r2) { return prob_orthogonal_exact(c, r2); };
    s.method = "orthogonal";
  } else if (type == "simplex" || type == "simplicial") {
    SimplicialConfig c;
    if (p.contains("m")) {
      c = SimplicialConfig(get_ints(p, "m"));
    } else {
      if (p.contains("d") && get_int(p, "d") != 2)
        throw UsageError("simplex params with n support d = 2 only; pass m instead");
      c = make_triangle(get_int(p, "n"));
    }
    s.descriptor = to_json(c);
    s.natural_r2 = static_cast<std::int64_t>(c.d());
    s.vectors = materialize(c);
    s.probability = [c](std::int64_t r2) {
      return c.d() <= 4 ? prob_simplicial_exact(c, r2) : prob_simplicial_dp(c, r2);
    };
    s.method = "simplicial";
  } else if (type == "mixed") {
    MixedConfig c;
    if (p.contains("a")) {
      IntVec a = get_ints(p, "a");
      if (a.size() != 3) throw UsageError("'a' must hold three multiplicities");
      c = MixedConfig({a[0], a[1], a[2]}, get_ints(p, "b"));
    } else {
      c = make_mixed(get_int(p, "d"), get_int(p, "n"));
    }
    s.descriptor = to_json(c);
    s.natural_r2 = static_cast<std::int64_t>(c.d());
    s.vectors = materialize(c);
    s.probability = [c](std::int64_t r2) {
      if (r2 != static_cast<std::int64_t>(c.d()))
        throw DomainError("mixed probability is defined for r2 = d only");
      return prob_mixed_exact(c);
    };
    s.method = "mixed";
  } else if (type == "perturbed") {
    PerturbedConfig c = p.contains("k")
                            ? PerturbedConfig(get_int(p, "k1_plus"), get_int(p, "k1_minus"),
                                              get_ints(p, "k"), get_beta(p))
                            : make_counterexample(get_int(p, "d"), get_int(p, "n"), get_beta(p));
    s.descriptor = to_json(c);
    s.natural_r2 = static_cast<std::int64_t>(c.d()) - 1;
    s.vectors = materialize(c);
    s.probability = [c](std::int64_t r2) {
      if (r2 != static_cast<std::int64_t>(c.d()) - 1)
        throw DomainError("perturbed probability is defined for r2 = d - 1 only");
      return prob_perturbed_exact(c);
    };
    s.method = "perturbed";
  } else {
    throw UsageError("unknown structured type '" + type + "'");
  }
  return s;
}

std::int64_t integral_r2(double r2) {
  if (!(r2 >= 0) || std::floor(r2) != r2) throw DomainError("structured r2 must be an integer");
  return static_cast<std::int64_t>(r2);
}

void read_scan_file(const std::string& path, std::map<std::int64_t, std::pair<std::string, double>>& rows) {
  std::ifstream in(path);
  if (!in) return;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      if (line != "n,count,scaled") throw ParseError("scan file has an unexpected header");
      continue;
    }
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string n, count, scaled;
    if (!std::getline(ss, n, ',') || !std::getline(ss, count, ',') || !std::getline(ss, scaled))
      throw ParseError("scan file has a malformed row");
    rows[std::stoll(n)] = {count, std::stod(scaled)};
  }
}

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact small-ball probabilities of signed unit-vector sums"};
  app.require_subcommand(1);

  std::string vectors_path, out_path, method = "auto", type, params = "{}", kind, range, family;
  double r2 = 1, tol = BallQuery::kDefaultBoundaryTol;
  std::optional<double> r2_opt;
  std::int64_t d = 2, n = 0, t = -1, m = 0, q = 0, max_d = 30, t_max = 168;
  std::uint64_t samples = 100000, seed = 0;
  std::size_t restarts = 4;
  bool resume = false;

  auto* enum_cmd = app.add_subcommand("enum", "Exact probability by enumeration");
  enum_cmd->add_option("--vectors", vectors_path, "CSV of unit vectors")->required();
  enum_cmd->add_option("--r2", r2, "Squared radius")->required();
  enum_cmd->add_option("--tol", tol, "Boundary tolerance");
  enum_cmd->add_option("--method", method, "auto, naive or mitm")
      ->check(CLI::IsMember({"auto", "naive", "mitm"}));

  auto* structured_cmd = app.add_subcommand("structured", "Exact probability of a structured family");
  structured_cmd->add_option("--type", type, "ortho, simplex, mixed or perturbed")->required();
  structured_cmd->add_option("--params", params, "JSON parameters");
  structured_cmd->add_option("--r2", r2_opt, "Squared radius (defaults to the family's own)");

  auto* construct_cmd = app.add_subcommand("construct", "Build an extremal configuration");
  construct_cmd->add_option("--kind", kind, "counterexample, triangle, orthogonal or mixed")
      ->required()
      ->check(CLI::IsMember({"counterexample", "triangle", "orthogonal", "mixed"}));
  construct_cmd->add_option("--d", d, "Dimension");
  construct_cmd->add_option("--n", n, "Number of vectors")->required();
  construct_cmd->add_option("--t", t, "Even coordinates for orthogonal");
  construct_cmd->add_option("--emit", out_path, "Write the vectors as CSV");

  auto* scan_cmd = app.add_subcommand("scan", "Scaled probabilities of a family over n");
  scan_cmd->add_option("--family", family, "Family")->required()->check(
      CLI::IsMember({"counterexample"}));
  scan_cmd->add_option("--d", d, "Dimension");
  scan_cmd->add_option("--n-odd", range, "Range a:b, stepping by 2")->required();
  scan_cmd->add_option("--out", out_path, "CSV output")->required();
  scan_cmd->add_flag("--resume", resume, "Continue an existing output file");

  auto* certify_cmd = app.add_subcommand("certify", "Signing certificate for planar vectors");
  certify_cmd->add_option("--vectors", vectors_path, "CSV of unit vectors")->required();
  certify_cmd->add_option("--out", out_path, "Write the certificate JSON");

  auto* balance_cmd = app.add_subcommand("balance", "Signs with sum in the unit disc");
  balance_cmd->add_option("--vectors", vectors_path, "CSV of unit vectors")->required();

  auto* tables_cmd = app.add_subcommand("appendix-b", "Lattice-count tables and range checks");
  tables_cmd->add_option("--max-d", max_d, "Largest dimension")->check(CLI::Range(1, 200));
  tables_cmd->add_option("--t-max", t_max, "Largest t for the F range check")
      ->check(CLI::Range(8, 2000));

  auto* franel_cmd = app.add_subcommand("franel", "Franel sums against their asymptotic");
  franel_cmd->add_option("--m", m, "m")->required()->check(CLI::Range(1, 100000));
  franel_cmd->add_option("--q", q, "q")->required()->check(CLI::Range(1, 64));

  auto* rayleigh_cmd = app.add_subcommand("rayleigh", "Monte Carlo over random planar vectors");
  rayleigh_cmd->add_option("--n", n, "Number of vectors")->required()->check(CLI::Range(2, 30));
  rayleigh_cmd->add_option("--samples", samples, "Samples");
  rayleigh_cmd->add_option("--seed", seed, "Seed");

  auto* minimize_cmd = app.add_subcommand("minimize", "Local search for small probability");
  minimize_cmd->add_option("--n", n, "Number of vectors")->required()->check(CLI::Range(1, 48));
  minimize_cmd->add_option("--d", d, "Dimension")->check(CLI::Range(2, 16));
  minimize_cmd->add_option("--r2", r2, "Squared radius")->required();
  minimize_cmd->add_option("--restarts", restarts, "Restarts");
  minimize_cmd->add_option("--seed", seed, "Seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }

  try {
    if (enum_cmd->parsed()) {
      auto config = read_csv_file(vectors_path);
      BallQuery query(r2, tol);
      EnumResult res;
      if (method == "naive")
        res = {prob_ball_naive(config, query), "naive"};
      else if (method == "mitm")
        res = {prob_ball_mitm(config, query), "mitm"};
      else
        res = prob_ball(config, query);
      json j = probability_json(res.probability);
      j["method"] = res.method;
      j["r2"] = r2;
      j["d"] = config.dim();
      emit(out, j);
    } else if (structured_cmd->parsed()) {
      json p;
      try {
        p = json::parse(params);
      } catch (const json::exception& e) {
        throw UsageError(std::string("--params is not valid JSON: ") + e.what());
      }
      if (!p.is_object()) throw UsageError("--params must be a JSON object");
      Structured s = make_structured(type, p);
      const std::int64_t radius = r2_opt ? integral_r2(*r2_opt) : s.natural_r2;
      json j = probability_json(s.probability(radius));
      j["config"] = s.descriptor;
      j["r2"] = radius;
      j["method"] = s.method;
      emit(out, j);
    } else if (construct_cmd->parsed()) {
      json p = {{"d", d}, {"n", n}};
      std::string st = kind == "counterexample" ? "perturbed"
                       : kind == "triangle"     ? "simplex"
                       : kind == "orthogonal"   ? "ortho"
                                                : "mixed";
      if (kind == "orthogonal" && t >= 0) p["t"] = t;
      if (kind == "triangle") p.erase("d");
      Structured s = make_structured(st, p);
      if (!out_path.empty()) write_csv_file(out_path, s.vectors);
      json j = probability_json(s.probability(s.natural_r2));
      j["config"] = s.descriptor;
      j["r2"] = s.natural_r2;
      emit(out, j);
    } else if (scan_cmd->parsed()) {
      const auto colon = range.find(':');
      if (colon == std::string::npos) throw UsageError("--n-odd expects a:b");
      std::int64_t lo = 0, hi = 0;
      try {
        lo = std::stoll(range.substr(0, colon));
        hi = std::stoll(range.substr(colon + 1));
      } catch (const std::exception&) {
        throw UsageError("--n-odd expects integers a:b");
      }
      if (lo > hi) throw UsageError("--n-odd range is empty");
      std::map<std::int64_t, std::pair<std::string, double>> rows;
      if (resume) read_scan_file(out_path, rows);
      std::ofstream file;
      if (resume && !rows.empty()) {
        file.open(out_path, std::ios::app);
      } else {
        rows.clear();
        file.open(out_path, std::ios::trunc);
        file << "n,count,scaled\n";
      }
      if (!file) throw ResourceError("cannot write " + out_path);
      const double exponent = (static_cast<double>(d) + 1) / 2;
      std::size_t written = 0;
      for (std::int64_t k = lo; k <= hi; k += 2) {
        if (rows.count(k)) continue;
        auto prob = prob_perturbed_exact(make_counterexample(d, k));
        const double scaled =
            std::exp2(exponent * std::log2(static_cast<double>(k)) + prob.log2_value());
        rows[k] = {prob.count.str(), scaled};
        file << k << ',' << prob.count.str() << ',' << format_real(scaled) << '\n';
        file.flush();
        ++written;
      }
      double best = -1, last = 0;
      std::int64_t argmax = 0, last_n = 0;
      for (const auto& [k, row] : rows) {
        if (k < lo || k > hi) continue;
        if (row.second > best) {
          best = row.second;
          argmax = k;
        }
        last = row.second;
        last_n = k;
      }
      emit(out, {{"family", family},
                 {"d", d},
                 {"rows_written", written},
                 {"max_scaled", best},
                 {"argmax_n", argmax},
                 {"last_n", last_n},
                 {"last_scaled", last}});
    } else if (certify_cmd->parsed()) {
      auto config = read_csv_file(vectors_path);
      json j = to_json(certificate(config));
      j["schema"] = 1;
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw ResourceError("cannot write " + out_path);
        f << j.dump(2) << '\n';
      }
      emit(out, j);
    } else if (balance_cmd->parsed()) {
      auto config = read_csv_file(vectors_path);
      Signing s = swanepoel_signs(config);
      emit(out, {{"signs", s.values()}, {"norm", std::sqrt(norm_sq(config, s))}});
    } else if (tables_cmd->parsed()) {
      json rows = json::array(), table = json::array();
      bool all_match = true;
      for (std::int64_t dd = 1; dd <= max_d; ++dd) {
        const auto du = static_cast<std::size_t>(dd);
        BigInt a = f0(du), b = f1(du), ac = f0_closed_form(du), bc = f1_closed_form(du);
        const bool ok = a == ac && b == bc;
        all_match = all_match && ok;
        rows.push_back({{"d", dd},
                        {"f0", a.str()},
                        {"f1", b.str()},
                        {"f0_closed", ac.str()},
                        {"f1_closed", bc.str()},
                        {"match", ok}});
        for (std::size_t tt = 0; tt <= du; ++tt)
          table.push_back({{"t", tt}, {"d", dd}, {"f", f_td(tt, du).str()}});
      }
      auto range_rep = check_F_range(8, static_cast<std::size_t>(t_max));
      json frows = json::array();
      for (const auto& r : range_rep.rows)
        frows.push_back({{"t", r.t}, {"F", r.F.str()}, {"f", r.f.str()}, {"holds", r.holds}});
      emit(out, {{"rows", rows},
                 {"f_table", table},
                 {"F_check", {{"all_hold", range_rep.all_hold}, {"rows", frows}}},
                 {"all_match", all_match}});
      if (!all_match || !range_rep.all_hold) {
        err << json{{"error", "validation"}, {"message", "closed forms or F range check failed"}}.dump()
            << '\n';
        return 1;
      }
    } else if (franel_cmd->parsed()) {
      const auto mu = static_cast<unsigned>(m), qu = static_cast<unsigned>(q);
      BigInt exact = franel_sum_exact(mu, qu);
      const double asym = franel_asymptotic_log2(mu, qu);
      emit(out, {{"m", m},
                 {"q", q},
                 {"exact", exact.str()},
                 {"exact_log2", log2_big(exact)},
                 {"asymptotic_log2", asym},
                 {"ratio", std::exp2(log2_big(exact) - asym)}});
    } else if (rayleigh_cmd->parsed()) {
      auto est = rayleigh_mc(static_cast<std::size_t>(n), samples, seed);
      const double expected = 1.0 / (static_cast<double>(n) + 1);
      emit(out, {{"n", n},
                 {"samples", samples},
                 {"seed", seed},
                 {"mean", est.mean},
                 {"std_error", est.std_error},
                 {"expected", expected},
                 {"z", est.std_error > 0 ? (est.mean - expected) / est.std_error : 0.0}});
    } else if (minimize_cmd->parsed()) {
      MinimizeOptions opt;
      opt.restarts = restarts;
      auto res = local_search_minimize(static_cast<std::size_t>(n), static_cast<std::size_t>(d),
                                       r2, seed, opt);
      json vecs = json::array();
      for (std::size_t i = 0; i < res.config.size(); ++i) {
        auto v = res.config.vector(i);
        vecs.push_back(std::vector<double>(v.begin(), v.end()));
      }
      json j = probability_json(res.probability);
      j["vectors"] = vecs;
      j["r2"] = r2;
      emit(out, j);
    }
  } catch (const UsageError& e) {
    err << json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const InternalError& e) {
    err << json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << json{{"error", "validation"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace rlo::cli
