// guedge: tabulation, comparison and verification tool for GUE largest-
// eigenvalue statistics. Emits plot-ready CSV or JSON; all output is a pure
// function of the flags (no timestamps), so identical configs give
// byte-identical files.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "guedge/airy_ops.hpp"
#include "guedge/checks.hpp"
#include "guedge/edgeworth.hpp"
#include "guedge/errors.hpp"
#include "guedge/gue_mc.hpp"
#include "guedge/hermite_n.hpp"
#include "guedge/painleve2.hpp"

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.14e", v);
  return buf;
}

std::string num(int v) { return std::to_string(v); }

struct Table {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // provenance header
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> summary;  // trailing block
};

void write_csv(const Table& t, std::ostream& os) {
  os << "# guedge " << t.command << "\n";
  for (const auto& [k, v] : t.config) os << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
  for (const auto& row : t.rows)
    for (std::size_t i = 0; i < row.size(); ++i)
      os << row[i] << (i + 1 < row.size() ? "," : "\n");
  for (const auto& [k, v] : t.summary) os << "# " << k << "=" << v << "\n";
}

void write_json(const Table& t, std::ostream& os) {
  os << "{\n  \"command\": \"" << t.command << "\",\n  \"config\": {";
  for (std::size_t i = 0; i < t.config.size(); ++i)
    os << (i ? ", " : "") << "\"" << t.config[i].first << "\": \""
       << t.config[i].second << "\"";
  os << "},\n  \"columns\": [";
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? ", " : "") << "\"" << t.columns[i] << "\"";
  os << "],\n  \"rows\": [\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << "    [";
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
      const std::string& cell = t.rows[r][i];
      const bool numeric = !cell.empty() && (std::isdigit((unsigned char)cell[0]) ||
                                             cell[0] == '-' || cell[0] == '+');
      os << (i ? ", " : "");
      if (numeric)
        os << cell;
      else
        os << '"' << cell << '"';
    }
    os << "]" << (r + 1 < t.rows.size() ? "," : "") << "\n";
  }
  os << "  ]";
  if (!t.summary.empty()) {
    os << ",\n  \"summary\": {";
    for (std::size_t i = 0; i < t.summary.size(); ++i)
      os << (i ? ", " : "") << "\"" << t.summary[i].first << "\": \""
         << t.summary[i].second << "\"";
    os << "}";
  }
  os << "\n}\n";
}

int emit(const Table& t, const std::string& format, const std::string& path) {
  std::ostringstream buf;
  if (format == "json")
    write_json(t, buf);
  else
    write_csv(t, buf);
  if (path.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      std::cerr << "guedge: cannot open output file '" << path << "'\n";
      return kExitUsage;
    }
    f << buf.str();
  }
  return 0;
}

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

// Strict comma-list parsing: every token must be a full number, and an empty
// list is a usage error reported by the command handlers.
template <class T>
bool parse_list(const std::string& text, std::vector<T>& out, std::string& bad) {
  out.clear();
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      if constexpr (std::is_same_v<T, int>) {
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        out.push_back(v);
      } else {
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        out.push_back(v);
      }
    } catch (const std::exception&) {
      bad = tok;
      return false;
    }
  }
  return true;
}

struct CommonOpts {
  std::string format = "csv";
  std::string output;
  int m = guedge::kAiryDefaultM;
  double T = guedge::kAiryDefaultT;
  double c = 0.0;
  std::uint64_t seed = 42;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--format", o.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("-o,--output", o.output, "Output file (default: stdout)");
}

std::vector<std::pair<std::string, std::string>> provenance(const CommonOpts& o) {
  return {{"m", std::to_string(o.m)},
          {"T", num(o.T)},
          {"c", num(o.c)},
          {"seed", std::to_string(o.seed)}};
}

// ---- tw-table -------------------------------------------------------------

int run_tw_table(const CommonOpts& o, const std::vector<double>& s_grid) {
  if (s_grid.empty()) {
    std::cerr << "guedge tw-table: empty s grid\n";
    return kExitUsage;
  }
  for (double s : s_grid) {
    if (s < guedge::kF2RegimeMin) {
      std::cerr << "guedge tw-table: s=" << s << " below the validity regime (s >= "
                << guedge::kF2RegimeMin << ")\n";
      return kExitUsage;
    }
  }
  Table t;
  t.command = "tw-table";
  t.config = provenance(o);
  t.columns = {"s", "F2_det", "F2_qint", "q", "u0", "v0"};
  for (double s : s_grid) {
    const double det = guedge::f2_cdf(s, guedge::F2Method::determinant, o.m, o.T);
    const double qint = guedge::f2_cdf(s, guedge::F2Method::q_integral, o.m, o.T);
    const guedge::AiryFunctionals f = guedge::functionals(s, o.m, o.T);
    t.rows.push_back({num(s), num(det), num(qint), num(f.q[0]), num(f.u[0]),
                      num(f.v[0])});
  }
  return emit(t, o.format, o.output);
}

// ---- edgeworth ------------------------------------------------------------

int run_edgeworth(const CommonOpts& o, const std::vector<int>& n_list,
                  const std::vector<double>& s_grid) {
  if (n_list.empty() || s_grid.empty()) {
    std::cerr << "guedge edgeworth: need at least one n and one s\n";
    return kExitUsage;
  }
  for (int n : n_list)
    if (n < 1) {
      std::cerr << "guedge edgeworth: n=" << n << " must be >= 1\n";
      return kExitUsage;
    }
  for (double s : s_grid)
    if (s < guedge::kF2RegimeMin) {
      std::cerr << "guedge edgeworth: s=" << s << " below the validity regime\n";
      return kExitUsage;
    }
  Table t;
  t.command = "edgeworth";
  t.config = provenance(o);
  t.columns = {"n",        "c",      "s",      "F_exact", "F_order0",
               "F_order1", "F_order2", "resid0", "resid1",  "resid2"};
  for (double s : s_grid) {
    const guedge::EdgeworthTerms terms = guedge::edgeworth_terms(s, o.c);
    for (int n : n_list) {
      const guedge::ScalingMap map{n, o.c};
      const double exact = guedge::cdf_fredholm(n, map.tau(s));
      double f[3], r[3];
      for (int ord = 0; ord < 3; ++ord) {
        f[ord] = terms.assembled(n, ord);
        r[ord] = std::abs(exact - f[ord]);
      }
      t.rows.push_back({num(n), num(o.c), num(s), num(exact), num(f[0]), num(f[1]),
                        num(f[2]), num(r[0]), num(r[1]), num(r[2])});
    }
    if (n_list.size() >= 4) {
      const guedge::OrderEstimate est = guedge::order_estimate(o.c, s, n_list);
      for (int ord = 0; ord < 3; ++ord) {
        std::ostringstream key;
        key << "slope_order" << ord << "_s=" << num(s);
        t.summary.emplace_back(key.str(), num(est.slopes[ord]));
      }
    }
  }
  return emit(t, o.format, o.output);
}

// ---- verify ---------------------------------------------------------------

int run_verify(const CommonOpts& o, const std::string& check, double tol_scale) {
  std::vector<guedge::CheckResult> results;
  if (!check.empty()) {
    const auto names = guedge::check_names();
    if (std::find(names.begin(), names.end(), check) == names.end()) {
      std::cerr << "guedge verify: unknown check '" << check << "'. Known checks:\n";
      for (const auto& n : names) std::cerr << "  " << n << "\n";
      return kExitUsage;
    }
    results.push_back(guedge::run_check(check, tol_scale));
  } else {
    results = guedge::run_all_checks(tol_scale);
  }
  Table t;
  t.command = "verify";
  t.config = provenance(o);
  t.config.emplace_back("tol_scale", num(tol_scale));
  // no timing column: output must be byte-identical across identical runs
  t.columns = {"check", "criterion", "pass", "measured", "tolerance", "detail"};
  int failures = 0;
  for (const auto& r : results) {
    if (!r.pass) ++failures;
    t.rows.push_back({r.name, num(r.criterion), r.pass ? "1" : "0", num(r.measured),
                      num(r.tolerance), sanitize(r.detail)});
  }
  t.summary.emplace_back("checks", std::to_string(results.size()));
  t.summary.emplace_back("failures", std::to_string(failures));
  const int rc = emit(t, o.format, o.output);
  if (rc != 0) return rc;
  return failures == 0 ? 0 : kExitVerifyFailure;
}

// ---- mc -------------------------------------------------------------------

int run_mc(const CommonOpts& o, int n, long num_samples,
           const std::vector<double>& t_grid, const std::string& scaling) {
  if (n < 1) {
    std::cerr << "guedge mc: n=" << n << " must be >= 1\n";
    return kExitUsage;
  }
  if (num_samples < 100) {
    std::cerr << "guedge mc: num_samples=" << num_samples
              << " (need >= 100 for the CDF estimate)\n";
    return kExitUsage;
  }
  if (t_grid.empty()) {
    std::cerr << "guedge mc: empty t grid\n";
    return kExitUsage;
  }
  guedge::SamplerConfig cfg;
  cfg.n = n;
  cfg.num_samples = num_samples;
  cfg.seed = o.seed;
  cfg.c = o.c;
  cfg.scaling = scaling == "centered" ? guedge::SamplerConfig::Scaling::centered
                                      : guedge::SamplerConfig::Scaling::raw;
  const std::vector<double> draws = guedge::sample_lambda_max(cfg);

  Table t;
  t.command = "mc";
  t.config = provenance(o);
  t.config.emplace_back("n", std::to_string(n));
  t.config.emplace_back("num_samples", std::to_string(num_samples));
  t.config.emplace_back("scaling", scaling);
  t.columns = {"t", "empirical", "halfwidth", "fredholm", "inside_CI"};
  const guedge::ScalingMap map{n, o.c};
  for (double tv : t_grid) {
    const auto [p, hw] = guedge::empirical_cdf(draws, tv);
    const double t_raw =
        cfg.scaling == guedge::SamplerConfig::Scaling::centered ? map.tau(tv) : tv;
    const double fred = guedge::cdf_fredholm(n, t_raw);
    t.rows.push_back({num(tv), num(p), num(hw), num(fred),
                      std::abs(p - fred) <= hw ? "1" : "0"});
  }
  return emit(t, o.format, o.output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GUE largest-eigenvalue statistics: finite-n laws, the Tracy-Widom "
               "limit, finite-size correction terms, and their cross-checks"};
  app.require_subcommand(1);

  CommonOpts tw_opts, ed_opts, ve_opts, mc_opts;
  std::string s_grid_text, t_grid_text, n_list_text;
  std::string check_name, scaling = "raw";
  double tol_scale = 1.0;
  int mc_n = 2;
  long num_samples = 10000;

  CLI::App* tw = app.add_subcommand("tw-table",
                                    "Tabulate the Tracy-Widom distribution by both "
                                    "routes with the limit functionals");
  tw->add_option("--s-grid", s_grid_text, "Evaluation points (comma separated)")
      ->required();
  tw->add_option("--m", tw_opts.m, "Quadrature nodes per operator")
      ->check(CLI::Range(1, 2000));
  tw->add_option("--T", tw_opts.T, "Domain truncation length")
      ->check(CLI::PositiveNumber);
  add_common(tw, tw_opts);

  CLI::App* ed = app.add_subcommand("edgeworth",
                                    "Finite-n distribution vs its expansion "
                                    "through orders n^{-1/3} and n^{-2/3}");
  ed->add_option("--n-list", n_list_text, "Matrix sizes (comma separated)")
      ->required();
  ed->add_option("--s-grid", s_grid_text, "Scaled thresholds (comma separated)")
      ->required();
  ed->add_option("--c", ed_opts.c, "Fine-tuning constant in the centering");
  add_common(ed, ed_opts);

  CLI::App* ve = app.add_subcommand("verify",
                                    "Run the verification suite (identities, "
                                    "cross-routes, convergence orders)");
  ve->add_option("--check", check_name, "Run exactly one named check");
  ve->add_option("--tol-scale", tol_scale,
                 "Multiply every pinned tolerance by this factor")
      ->check(CLI::PositiveNumber);
  add_common(ve, ve_opts);

  CLI::App* mc = app.add_subcommand("mc",
                                    "Monte Carlo sampling of the largest "
                                    "eigenvalue vs the determinant CDF");
  mc->add_option("--n", mc_n, "Matrix size")->required();
  mc->add_option("--num-samples", num_samples, "Number of draws");
  mc->add_option("--seed", mc_opts.seed, "Master seed");
  mc->add_option("--t-grid", t_grid_text, "CDF evaluation points (comma separated)")
      ->required();
  mc->add_option("--c", mc_opts.c, "Centering constant for --scaling centered");
  mc->add_option("--scaling", scaling, "raw or centered")
      ->check(CLI::IsMember({"raw", "centered"}));
  add_common(mc, mc_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  std::vector<double> s_grid, t_grid;
  std::vector<int> n_list;
  std::string bad;
  if (!parse_list(s_grid_text, s_grid, bad) || !parse_list(t_grid_text, t_grid, bad) ||
      !parse_list(n_list_text, n_list, bad)) {
    std::cerr << "guedge: cannot parse list element '" << bad << "'\n";
    return kExitUsage;
  }

  try {
    if (tw->parsed()) return run_tw_table(tw_opts, s_grid);
    if (ed->parsed()) return run_edgeworth(ed_opts, n_list, s_grid);
    if (ve->parsed()) return run_verify(ve_opts, check_name, tol_scale);
    if (mc->parsed()) return run_mc(mc_opts, mc_n, num_samples, t_grid, scaling);
  } catch (const guedge::RegimeError& e) {
    std::cerr << "guedge: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "guedge: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "guedge: " << e.what() << "\n";
    return kExitVerifyFailure;
  }
  return kExitUsage;
}
