#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyclo/critgroup.hpp"
#include "cyclo/galois_ring.hpp"
#include "cyclo/graph.hpp"
#include "cyclo/json_io.hpp"

namespace cyclo {

struct RunConfig {
  std::string subcommand;
  std::uint64_t p = 0, ell = 3, t = 0;
  std::string method = "formula";
  std::optional<std::uint64_t> precision;
  std::uint64_t max_q = default_bruteforce_bound();
  std::uint64_t max_k = kDefaultEnumerationBound;
  std::string format = "json";
  std::uint64_t seed = 1;
  std::uint64_t samples = 20000;
  unsigned threads = default_threads();
  std::string which = "all";
  std::string export_laplacian;
  std::vector<std::uint64_t> p_list;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::vector<std::string> details;
};

namespace detail {

inline void emit(std::ostream& out, const RunConfig& cfg, const Json& j, const std::string& text) {
  if (cfg.format == "json")
    out << j.dump(2) << '\n';
  else
    out << text;
}

inline SuiteResult run_srg(const FieldTable& field) {
  const SrgReport rep = verify_srg(field);
  SuiteResult s{"srg", rep.passed(), {}};
  s.details.push_back("parameters (" + std::to_string(rep.v) + ", " + std::to_string(rep.k) + ", " +
                      std::to_string(rep.lambda) + ", " + std::to_string(rep.mu) + ")");
  if (!rep.symmetric) s.details.push_back("adjacency matrix is not symmetric");
  if (rep.violation)
    s.details.push_back(rep.violation->identity + " fails at (" + std::to_string(rep.violation->row) + ", " +
                        std::to_string(rep.violation->col) + "): expected " +
                        std::to_string(rep.violation->expected) + ", got " + std::to_string(rep.violation->actual));
  return s;
}

inline SuiteResult run_stickelberger(const GaloisRing& ring, const RunConfig& cfg) {
  const auto rep = stickelberger_check(ring, 256, cfg.samples, cfg.seed);
  SuiteResult s{"stickelberger", rep.passed(), {}};
  s.details.push_back(std::to_string(rep.pairs_checked) + " pairs, " + (rep.exhaustive ? "exhaustive" : "sampled") +
                      ", N = " + std::to_string(ring.precision()));
  if (rep.failure) s.details.push_back(*rep.failure);
  return s;
}

inline SuiteResult run_blocks(const GaloisRing& ring, const RunConfig& cfg) {
  const Params& prm = ring.field().params();
  SuiteResult s{"blocks", true, {}};
  const std::uint64_t k = to_u64(prm.k());
  for (std::uint64_t i = 1; i < std::min<std::uint64_t>(k, 4); ++i)
    if (!laplacian_action_check(ring, i)) {
      s.passed = false;
      s.details.push_back("ell L f_" + std::to_string(i) + " differs from its block row");
      return s;
    }
  const auto reports = block_snf_check(ring, cfg.threads);
  for (const auto& r : reports)
    if (!r.passed()) {
      s.passed = false;
      std::string got, want;
      for (const auto& v : r.valuations) got += " " + to_string(v);
      for (const auto& v : r.expected) want += " " + to_string(v);
      s.details.push_back("block " + std::to_string(r.index) + ": valuations" + got + " expected" + want);
      return s;
    }
  s.details.push_back(std::to_string(reports.size()) + " blocks match the min-profile pattern");
  const PMultiplicities from_blocks = block_p_multiplicities(reports);
  CriticalGroupOptions opt;
  opt.enumeration_bound = cfg.max_k;
  opt.threads = cfg.threads;
  std::ostringstream os;
  os << from_blocks;
  if (!(from_blocks == formula_p_part(prm, opt))) {
    s.passed = false;
    s.details.push_back("block multiplicities " + os.str() + " differ from the closed form");
  } else {
    s.details.push_back("block multiplicities " + os.str() + " equal the closed form");
  }
  return s;
}

inline SuiteResult run_walks(const Params& prm) {
  SuiteResult s{"walks", true, {}};
  if (prm.ell() != 3) throw Error(ErrorCode::InvalidArgument, "the walks suite needs ell = 3");
  if (prm.p() > 50) throw Error(ErrorCode::BoundExceeded, "the walk oracle is limited to p <= 50");
  const auto tm = transfer_matrix_check(prm.p());
  s.details.push_back(std::string("transfer matrix from digraph: ") + (tm.matches_digraph ? "match" : "MISMATCH"));
  s.details.push_back(std::string("det(zI - M) = z^6 - P z^4 + Q z^2 - R: ") + (tm.charpoly_matches ? "yes" : "NO"));
  s.details.push_back(std::string("det M = -p^2 x^3 y^3: ") + (tm.det_matches ? "yes" : "NO"));
  s.passed = tm.passed();
  const auto g = build_digraph(prm.p());
  const auto cs = c_sequence(prm.p(), prm.t());
  for (std::uint64_t n = 1; n <= prm.t() && s.passed; ++n) {
    const bool ok = walk_oracle(g, 2 * n) == cs[n - 1];
    s.details.push_back("closed walks of length " + std::to_string(2 * n) + " equal C(" + std::to_string(2 * n) +
                        "): " + (ok ? "yes" : "NO"));
    s.passed = ok;
  }
  return s;
}

inline int cmd_compute(const RunConfig& cfg, std::ostream& out) {
  const Params prm = Params::validate(cfg.p, cfg.ell, cfg.t);
  CriticalGroupOptions opt;
  opt.bruteforce.max_q = cfg.max_q;
  opt.enumeration_bound = cfg.max_k;
  opt.threads = cfg.threads;
  if (!cfg.export_laplacian.empty()) {
    const FieldTable field(prm, cfg.max_q);
    std::ofstream f(cfg.export_laplacian);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + cfg.export_laplacian);
    write_rows(f, laplacian<std::int64_t>(field));
  }
  const auto res = critical_group(prm, parse_method(cfg.method), opt);
  emit(out, cfg, to_json(res), to_text(res));
  return 0;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Params prm = Params::validate(cfg.p, cfg.ell, cfg.t);
  const std::vector<std::string> suites =
      cfg.which == "all" ? (prm.ell() == 3 ? std::vector<std::string>{"srg", "stickelberger", "blocks", "walks"}
                                           : std::vector<std::string>{"srg", "stickelberger", "blocks"})
                         : std::vector<std::string>{cfg.which};
  std::optional<FieldTable> field;
  std::optional<GaloisRing> ring;
  auto need_ring = [&]() -> const GaloisRing& {
    if (!field) field.emplace(prm);
    if (!ring) ring.emplace(*field, cfg.precision.value_or(GaloisRing::default_precision(prm)));
    return *ring;
  };
  std::vector<SuiteResult> results;
  for (const auto& name : suites) {
    if (name == "srg") {
      if (!field) field.emplace(prm);
      results.push_back(run_srg(*field));
    } else if (name == "stickelberger") {
      results.push_back(run_stickelberger(need_ring(), cfg));
    } else if (name == "blocks") {
      results.push_back(run_blocks(need_ring(), cfg));
    } else if (name == "walks") {
      results.push_back(run_walks(prm));
    }
    if (!results.back().passed) break;
  }
  Json j;
  j["schema"] = kJsonSchema;
  j["params"] = params_to_json(prm);
  j["suites"] = Json::array();
  std::string text;
  bool all = true;
  for (const auto& r : results) {
    j["suites"].push_back({{"name", r.name}, {"passed", r.passed}, {"details", r.details}});
    text += r.name + ": " + (r.passed ? "pass" : "FAIL") + '\n';
    for (const auto& d : r.details) text += "  " + d + '\n';
    all = all && r.passed;
  }
  j["passed"] = all;
  emit(out, cfg, j, text);
  return all ? 0 : 2;
}

inline int cmd_table(const RunConfig& cfg, std::ostream& out) {
  if (cfg.p_list.empty()) throw Error(ErrorCode::InvalidArgument, "--p-list is empty");
  if (cfg.ell != 3) throw Error(ErrorCode::InvalidArgument, "table is only available for ell = 3");
  Json j;
  j["schema"] = kJsonSchema;
  j["ell"] = 3;
  j["t"] = cfg.t;
  j["rows"] = Json::array();
  std::string text;
  int status = 0;
  for (auto p : cfg.p_list) {
    Json row;
    row["p"] = p;
    try {
      const PMultiplicities e = theorem_e3(p, cfg.t);
      row["e"] = multiplicities_to_json(e);
      std::ostringstream os;
      os << "p=" << p << ' ' << e << '\n';
      text += os.str();
    } catch (const Error& e) {
      row["error"] = e.what();
      text += "p=" + std::to_string(p) + " error " + e.what() + '\n';
      status = is_mismatch(e.code()) ? 2 : std::max(status, 1);
    }
    j["rows"].push_back(row);
  }
  emit(out, cfg, j, text);
  return status;
}

}  // namespace detail

/// Parses arguments and runs one subcommand. Exit codes: 0 success,
/// 1 usage or bound errors, 2 mathematical mismatch.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig cfg;
  CLI::App app{"Critical groups of the cyclotomic strongly regular graphs G(p, ell, t)"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for sampled checks");

  auto add_triple = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "Prime p")->required();
    sub->add_option("--ell", cfg.ell, "Odd prime ell")->required();
    sub->add_option("--t", cfg.t, "Positive integer t")->required();
  };

  CLI::App* compute = app.add_subcommand("compute", "Critical group of G(p, ell, t)");
  add_triple(compute);
  compute->add_option("--method", cfg.method, "formula, bruteforce or both")
      ->check(CLI::IsMember({"formula", "bruteforce", "both"}));
  compute->add_option("--max-q", cfg.max_q, "Largest q for brute force");
  compute->add_option("--max-k", cfg.max_k, "Largest k for carry enumeration");
  compute->add_option("--export-laplacian", cfg.export_laplacian, "Write the Laplacian, one row per line");

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  add_triple(verify);
  verify->add_option("--which", cfg.which, "stickelberger, blocks, srg, walks or all")
      ->check(CLI::IsMember({"stickelberger", "blocks", "srg", "walks", "all"}));
  verify->add_option("--precision", cfg.precision, "Galois ring precision N");
  verify->add_option("--samples", cfg.samples, "Sampled pairs when q > 256");
  verify->add_option("--max-k", cfg.max_k, "Largest k for carry enumeration");

  CLI::App* table = app.add_subcommand("table", "Multiplicities of G(p, 3, t) for several p");
  table->add_option("--t", cfg.t, "Positive integer t")->required();
  std::string p_list;
  table->add_option("--p-list", p_list, "Comma-separated primes")->required();
  table->add_option("--ell", cfg.ell, "Must be 3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*compute) return detail::cmd_compute(cfg, out);
    if (*verify) return detail::cmd_verify(cfg, out);
    if (*table) {
      std::stringstream ss(p_list);
      for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const unsigned long long v = std::stoull(item, &used);
        if (used != item.size()) throw Error(ErrorCode::InvalidArgument, "bad entry '" + item + "' in --p-list");
        cfg.p_list.push_back(v);
      }
      return detail::cmd_table(cfg, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_mismatch(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  std::vector<const char*> argv{"cyclo"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cyclo
