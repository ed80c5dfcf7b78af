#include <CLI11.hpp>

#include <clocale>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "entlab/invariants.hpp"
#include "entlab/metrics.hpp"
#include "entlab/nets.hpp"
#include "entlab/verify.hpp"

namespace fs = std::filesystem;
using namespace entlab;

namespace {

// exit codes: 0 ok, 1 verify-suite failure, 2 malformed/missing input,
// 3 unsupported invariant, 4 invalid parameters, 5 numeric failure
int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::IoFailure: return 2;
    case ErrorCode::UnsupportedInvariant: return 3;
    case ErrorCode::InvalidParameter:
    case ErrorCode::TooLarge:
    case ErrorCode::InvalidSubgroup: return 4;
    default: return 5;
  }
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CommonOptions {
  std::string space_arg;
  std::string p_arg = "inf";
  std::vector<double> eps;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string format = "json,csv";
  int budget_greedy = 5000;
  int budget_kappa = 64;
  int budget_mc = 2000;
  int budget_restarts = 64;
  int trials = 1000;
  double alpha = 1.0 / 3.0;
  bool dump_elements = false;
  std::string pairs_file;
  std::vector<std::string> suites;

  bool want(const std::string& fmt) const {
    return format.find(fmt) != std::string::npos;
  }
};

void validate_eps(const std::vector<double>& eps) {
  for (std::size_t i = 0; i < eps.size(); ++i) {
    require(eps[i] > 0.0, ErrorCode::InvalidParameter,
            "epsilon values must be positive");
    require(i == 0 || eps[i] >= eps[i - 1], ErrorCode::InvalidParameter,
            "epsilon values must be sorted ascending");
  }
}

NormSpec parse_p(const std::string& s) {
  if (s == "inf" || s == "op") return NormSpec::op();
  try {
    return NormSpec::schatten(std::stod(s));
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::InvalidParameter, "cannot parse Schatten index: " + s);
  }
}

/// --space takes inline JSON or a filename holding the space JSON.
SpaceSpec parse_space(const std::string& arg) {
  require(!arg.empty(), ErrorCode::InvalidParameter, "--space is required");
  std::string text = arg;
  if (arg.front() != '{') {
    std::ifstream in(arg);
    require(in.good(), ErrorCode::IoFailure, "cannot open space file " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::IoFailure, std::string("space JSON parse error: ") + e.what());
  }
  return SpaceSpec::from_json(j);
}

void write_atomic(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), ErrorCode::IoFailure, "cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

Json config_json(const CommonOptions& o, const std::string& command) {
  Json c;
  c["command"] = command;
  if (!o.space_arg.empty()) c["space"] = o.space_arg;
  c["p"] = o.p_arg;
  if (!o.eps.empty()) c["eps"] = o.eps;
  c["seed"] = o.seed;
  c["format"] = o.format;
  c["budget_greedy"] = o.budget_greedy;
  c["budget_kappa"] = o.budget_kappa;
  c["budget_mc"] = o.budget_mc;
  c["budget_restarts"] = o.budget_restarts;
  c["trials"] = o.trials;
  return c;
}

void emit(const CommonOptions& o, const std::string& stem, const Json& body,
          const std::string& csv) {
  if (o.want("json")) {
    write_atomic(fs::path(o.out_dir) / (stem + ".json"), body.dump(2) + "\n");
  }
  if (o.want("csv") && !csv.empty()) {
    write_atomic(fs::path(o.out_dir) / (stem + ".csv"), csv);
  }
}

int cmd_dist(const CommonOptions& o) {
  SpaceSpec space = parse_space(o.space_arg);
  NormSpec p = parse_p(o.p_arg);
  std::ifstream in(o.pairs_file);
  require(in.good(), ErrorCode::IoFailure,
          "cannot open pairs file " + o.pairs_file);
  Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    fail(ErrorCode::IoFailure, std::string("pairs JSON parse error: ") + e.what());
  }
  require(doc.contains("pairs") && doc.at("pairs").is_array(),
          ErrorCode::IoFailure, "pairs file needs a 'pairs' array");

  QuotientOptions qopts;
  qopts.seed = o.seed;
  qopts.restarts = o.budget_restarts;
  qopts.cross_check = true;

  std::ostringstream csv;
  csv << "index,p,extrinsic,intrinsic,quotient,certificate_flags\n";
  Json rows = Json::array();
  int index = 0;
  for (const Json& pair : doc.at("pairs")) {
    require(pair.is_array() && pair.size() == 2, ErrorCode::IoFailure,
            "each pair must be a two-element array of matrices");
    GroupElement u = GroupElement::make(matrix_from_json(pair.at(0)),
                                        space.group());
    GroupElement v = GroupElement::make(matrix_from_json(pair.at(1)),
                                        space.group());
    double ext = extrinsic_dist(u, v, p);
    double intr = intrinsic_dist(u, v, p);
    QuotientResult q = quotient_dist_full(space, u, v, p, qopts);
    csv << index << "," << p.label() << "," << fmt17(ext) << "," << fmt17(intr)
        << "," << fmt17(q.value) << "," << q.flags() << "\n";
    Json row;
    row["index"] = index;
    row["p"] = p.label();
    row["extrinsic"] = ext;
    row["intrinsic"] = intr;
    row["quotient"] = q.value;
    row["flags"] = q.flags();
    rows.push_back(std::move(row));
    ++index;
  }
  Json body;
  body["config"] = config_json(o, "dist");
  body["space"] = space.to_json();
  body["rows"] = std::move(rows);
  emit(o, "dist", body, csv.str());
  return 0;
}

int cmd_invariants(const CommonOptions& o) {
  SpaceSpec space = parse_space(o.space_arg);
  InvariantReport rep =
      invariant_report(space, o.budget_kappa, o.budget_mc / 16 + 8, o.seed);
  CoveringCaseReport cls = classify_covering_case(space, o.alpha);
  Json body;
  body["config"] = config_json(o, "invariants");
  body["space"] = space.to_json();
  body["invariants"] = rep.to_json();
  Json cj;
  cj["alpha"] = o.alpha;
  cj["case"] = cls.case_name();
  cj["witness"] = cls.witness;
  cj["hypothesis_ok"] = cls.hypothesis_ok;
  cj["diagnostics"] = cls.diagnostics;
  body["case_classification"] = std::move(cj);
  emit(o, "invariants", body, "");
  return 0;
}

int cmd_net(const CommonOptions& o) {
  SpaceSpec space = parse_space(o.space_arg);
  NormSpec p = parse_p(o.p_arg);
  require(!o.eps.empty(), ErrorCode::InvalidParameter, "--eps is required");
  NetOptions nopts;
  nopts.audit_seed = o.seed;
  Json arr = Json::array();
  std::ostringstream csv;
  csv << "space,epsilon,p,cardinality,achieved_C,audit\n";
  bool all_pass = true;
  for (double eps : o.eps) {
    NetReport rep = build_net(space, eps, p, nopts);
    arr.push_back(rep.to_json(o.dump_elements));
    csv << rep.csv_row() << "\n";
    all_pass = all_pass && rep.audit.pass;
  }
  Json body;
  body["config"] = config_json(o, "net");
  body["reports"] = std::move(arr);
  emit(o, "net", body, csv.str());
  return all_pass ? 0 : 1;
}

int cmd_pack(const CommonOptions& o) {
  SpaceSpec space = parse_space(o.space_arg);
  NormSpec p = parse_p(o.p_arg);
  require(!o.eps.empty(), ErrorCode::InvalidParameter, "--eps is required");
  Json arr = Json::array();
  std::ostringstream csv;
  csv << "space,epsilon,p,cardinality,achieved_c,status\n";
  RandomStream root(o.seed);
  for (std::size_t i = 0; i < o.eps.size(); ++i) {
    PackReport rep = greedy_pack(space, o.eps[i], p, o.budget_greedy,
                                 root.child(static_cast<std::uint64_t>(i)).key());
    arr.push_back(rep.to_json(o.dump_elements));
    csv << rep.csv_row() << "\n";
  }
  Json body;
  body["config"] = config_json(o, "pack");
  body["reports"] = std::move(arr);
  emit(o, "pack", body, csv.str());
  return 0;
}

int cmd_profile(const CommonOptions& o) {
  SpaceSpec space = parse_space(o.space_arg);
  NormSpec p = parse_p(o.p_arg);
  ProfileReport rep =
      entropy_profile(space, o.eps, p, o.budget_greedy, o.seed);
  Json body;
  body["config"] = config_json(o, "profile");
  body["report"] = rep.to_json();
  std::ostringstream csv;
  csv << "space,epsilon,p,cardinality,achieved_c,status\n" << rep.csv_rows();
  emit(o, "profile", body, csv.str());
  return 0;
}

int cmd_volume(const CommonOptions& o) {
  SpaceSpec space = parse_space(o.space_arg);
  require(o.eps.size() == 1, ErrorCode::InvalidParameter,
          "--eps takes exactly one value for volume");
  VolumeReport rep = ball_volume_mc(space, o.eps[0], o.budget_mc, o.seed);
  Json body;
  body["config"] = config_json(o, "volume");
  body["report"] = rep.to_json();
  emit(o, "volume", body, rep.csv_row() + "\n");
  return 0;
}

int cmd_verify(const CommonOptions& o) {
  std::vector<std::string> suites =
      o.suites.empty() ? suite_names() : o.suites;
  bool all_pass = true;
  for (const std::string& name : suites) {
    SuiteResult res = run_suite(name, o.trials, o.seed);
    Json body;
    body["config"] = config_json(o, "verify");
    body["result"] = res.to_json();
    if (o.want("json"))
      write_atomic(fs::path(o.out_dir) / ("verify_" + name + ".json"),
                   body.dump(2) + "\n");
    std::cout << (res.pass ? "[PASS] " : "[FAIL] ") << name << "\n";
    all_pass = all_pass && res.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_NUMERIC, "C");
  CLI::App app{
      "entlab: covering/packing experiments and property suites for U(n), "
      "SO(n) and their homogeneous spaces"};
  app.fallthrough();
  app.set_config("--config", "", "key=value config file merged under flags");

  CommonOptions o;
  app.add_option("--space", o.space_arg, "space spec JSON (inline or filename)");
  app.add_option("--p", o.p_arg, "Schatten index: 1, 2, inf or a float");
  app.add_option("--eps", o.eps, "epsilon values, ascending")->delimiter(',');
  auto* seed_opt =
      app.add_option("--seed", o.seed, "64-bit seed; no wall-clock default");
  app.add_option("--out", o.out_dir, "output directory");
  app.add_option("--format", o.format, "output formats: json,csv");
  app.add_option("--budget-greedy", o.budget_greedy,
                 "candidate stream size for greedy packing");
  app.add_option("--budget-kappa", o.budget_kappa, "kappa ascent restarts");
  app.add_option("--budget-mc", o.budget_mc, "Monte Carlo sample count");
  app.add_option("--budget-restarts", o.budget_restarts,
                 "quotient minimizer restarts");
  app.add_option("--trials", o.trials, "trials per verify check");
  app.add_option("--alpha", o.alpha, "alpha for the case classifier");
  app.add_flag("--dump-elements", o.dump_elements,
               "include net/pack elements in the JSON report");

  CLI::App* dist = app.add_subcommand("dist", "distance batch job to CSV");
  dist->add_option("--pairs", o.pairs_file, "JSON file with element pairs")
      ->required();
  CLI::App* invariants =
      app.add_subcommand("invariants", "kappa/theta/diam/dim report");
  CLI::App* net = app.add_subcommand("net", "constructive covering net");
  CLI::App* pack = app.add_subcommand("pack", "greedy packing");
  CLI::App* profile = app.add_subcommand("profile", "entropy slope profile");
  CLI::App* volume = app.add_subcommand("volume", "Haar ball volume");
  CLI::App* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("--suite", o.suites, "suite subset (default: all)")
      ->delimiter(',');
  app.require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    // reproducibility is opt-in randomness: every subcommand needs a seed
    require(seed_opt->count() > 0, ErrorCode::InvalidParameter,
            "--seed is required; there is no wall-clock default");
    validate_eps(o.eps);
    if (dist->parsed()) return cmd_dist(o);
    if (invariants->parsed()) return cmd_invariants(o);
    if (net->parsed()) return cmd_net(o);
    if (pack->parsed()) return cmd_pack(o);
    if (profile->parsed()) return cmd_profile(o);
    if (volume->parsed()) return cmd_volume(o);
    if (verify->parsed()) return cmd_verify(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
  return 0;
}
