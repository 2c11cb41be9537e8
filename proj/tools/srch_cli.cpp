// Copyright 2026 The srchol Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// srch: factor kernel matrices, run GP prediction, verify bounds and
// benchmark the pivoted Cholesky drivers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "srchol/gp.hpp"
#include "srchol/kernels.hpp"
#include "srchol/linalg.hpp"
#include "srchol/matrix_io.hpp"
#include "srchol/pivoted_cholesky.hpp"
#include "srchol/srch.hpp"
#include "srchol/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace srchol;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotConverged = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------- sources

struct SourceOptions {
  std::string input;
  bool has_target = false;
  bool standardize = false;
  std::string kernel = "rbf";
  double sigma = 1.0;
  std::vector<double> kahan;          // n, c
  std::vector<double> synthetic;      // n, rank, decay
  std::vector<double> rbf_synthetic;  // n, dim, sigma
  Index identity = 0;
  std::uint64_t matrix_seed = 1;
};

void add_source_options(CLI::App& cmd, SourceOptions& s) {
  cmd.add_option("--input", s.input, "CSV of feature rows; the RBF Gram matrix is factored");
  cmd.add_flag("--has-target", s.has_target, "Last CSV column is a target and is dropped");
  cmd.add_flag("--standardize", s.standardize, "Standardize CSV features before the kernel");
  cmd.add_option("--kernel", s.kernel, "Kernel for --input")->check(CLI::IsMember({"rbf"}));
  cmd.add_option("--sigma", s.sigma, "RBF bandwidth for --input");
  cmd.add_option("--kahan", s.kahan, "Kahan Gram matrix: n,c")->delimiter(',')->expected(2);
  cmd.add_option("--synthetic", s.synthetic, "Random SPD matrix: n,rank,decay")
      ->delimiter(',')
      ->expected(3);
  cmd.add_option("--rbf-synthetic", s.rbf_synthetic,
                 "RBF Gram matrix of a Gaussian point cloud: n,dim,sigma")
      ->delimiter(',')
      ->expected(3);
  cmd.add_option("--identity", s.identity, "Identity matrix of the given size");
  cmd.add_option("--matrix-seed", s.matrix_seed, "Seed for synthetic matrices");
}

Index as_count(double v, const char* what) {
  if (!(v >= 1.0) || v != std::floor(v)) throw UsageError(std::string(what) + " must be a positive integer");
  return static_cast<Index>(v);
}

struct Materialized {
  DenseMatrix a;
  json description;
  double seconds = 0.0;
};

Materialized materialize(const SourceOptions& s) {
  const int given = static_cast<int>(!s.input.empty()) + static_cast<int>(!s.kahan.empty()) +
                    static_cast<int>(!s.synthetic.empty()) +
                    static_cast<int>(!s.rbf_synthetic.empty()) + static_cast<int>(s.identity > 0);
  if (given != 1) {
    throw UsageError(
        "give exactly one of --input, --kahan, --synthetic, --rbf-synthetic, --identity");
  }
  Materialized m;
  const auto t0 = Clock::now();
  if (!s.input.empty()) {
    Dataset data = load_csv(s.input, s.has_target);
    if (s.standardize) apply_standardization(data, fit_standardization(data));
    m.a = rbf_gram(data, KernelSpec{s.sigma});
    m.description = {{"source", "csv"},
                     {"path", s.input},
                     {"kernel", s.kernel},
                     {"sigma", s.sigma},
                     {"standardize", s.standardize}};
  } else if (!s.kahan.empty()) {
    const Index n = as_count(s.kahan[0], "Kahan n");
    m.a = kahan_gram(n, s.kahan[1]);
    m.description = {{"source", "kahan"}, {"n", n}, {"c", s.kahan[1]}};
  } else if (!s.synthetic.empty()) {
    const Index n = as_count(s.synthetic[0], "synthetic n");
    const Index rank = as_count(s.synthetic[1], "synthetic rank");
    RngStream rng(s.matrix_seed);
    m.a = random_spd(n, rank, s.synthetic[2], rng);
    m.description = {{"source", "synthetic"}, {"n", n},        {"rank", rank},
                     {"decay", s.synthetic[2]}, {"matrix_seed", s.matrix_seed}};
  } else if (!s.rbf_synthetic.empty()) {
    const Index n = as_count(s.rbf_synthetic[0], "rbf-synthetic n");
    const Index dim = as_count(s.rbf_synthetic[1], "rbf-synthetic dim");
    RngStream rng(s.matrix_seed);
    m.a = rbf_gram(gaussian_cloud(n, dim, rng), KernelSpec{s.rbf_synthetic[2]});
    m.description = {{"source", "rbf-synthetic"}, {"n", n},
                     {"dim", dim},                {"sigma", s.rbf_synthetic[2]},
                     {"matrix_seed", s.matrix_seed}};
  } else {
    m.a = DenseMatrix::identity(s.identity);
    m.description = {{"source", "identity"}, {"n", s.identity}};
  }
  m.seconds = seconds_since(t0);
  return m;
}

// ---------------------------------------------------------------- drivers

struct FactorOptions {
  std::string method = "srch";
  Index k = 0;
  Index b = 20;
  Index p = 30;
  double g = 1.5;
  Index d = 20;
  std::uint64_t seed = 0;
  Index max_swaps = 0;
  Index k_hat = 0;
  Index diag_block = 64;
  bool redraw = false;
  double tol = -1.0;
};

void add_factor_options(CLI::App& cmd, FactorOptions& f, bool need_k) {
  cmd.add_option("--method", f.method, "Driver")->check(CLI::IsMember({"diag", "rand", "srch"}));
  auto* k = cmd.add_option("--k", f.k, "Target rank");
  if (need_k) k->required();
  cmd.add_option("--b", f.b, "Block size of the randomized driver");
  cmd.add_option("--p", f.p, "Oversampling (rows of the sketch), p >= b");
  cmd.add_option("--g", f.g, "Spectrum-revealing slack g > 1");
  cmd.add_option("--d", f.d, "Rows of the condition estimator's random matrix");
  cmd.add_option("--seed", f.seed, "Seed for the randomized drivers");
  cmd.add_option("--max-swaps", f.max_swaps, "Swap limit (0 selects n)");
  cmd.add_option("--k-hat", f.k_hat, "Run srch at this rank and SVD-truncate to k");
  cmd.add_option("--diag-block", f.diag_block, "Panel width of the diagonal-pivoting baseline");
  cmd.add_flag("--redraw-estimator", f.redraw, "Fresh estimator matrix after every swap");
  cmd.add_option("--tol", f.tol, "Rank threshold relative to max diag(A); < 0 selects n*eps");
}

SrchConfig srch_config(const FactorOptions& f) {
  SrchConfig c;
  c.b = f.b;
  c.p = f.p;
  c.k = f.k;
  c.g = f.g;
  c.d = f.d;
  c.seed = f.seed;
  c.max_swaps = f.max_swaps;
  c.redraw_estimator = f.redraw;
  c.tol = f.tol;
  return c;
}

json params_json(const FactorOptions& f) {
  json j = {{"method", f.method}, {"k", f.k}, {"b", f.b},       {"p", f.p},
            {"g", f.g},           {"d", f.d}, {"seed", f.seed}, {"tol", f.tol}};
  if (f.method == "srch") {
    j["max_swaps"] = f.max_swaps;
    j["redraw_estimator"] = f.redraw;
    if (f.k_hat > 0) j["k_hat"] = f.k_hat;
  }
  if (f.method == "diag") j["diag_block"] = f.diag_block;
  return j;
}

struct FactorRun {
  Permutation perm;
  DenseMatrix L;
  json diagnostics;
  json timings;
  bool converged = true;
  std::optional<SrchDiagnostics> srch;
};

FactorRun run_factor(const DenseMatrix& a, const FactorOptions& f) {
  const Index n = a.rows();
  if (f.k < 1 || f.k > n) throw UsageError("--k must be in [1, n]");
  FactorRun run;
  const auto t0 = Clock::now();
  if (f.method == "diag") {
    auto r = diag_pivoted_cholesky(a, f.k, f.diag_block, f.tol);
    run.timings = {{"factorization", seconds_since(t0)}};
    run.perm = std::move(r.perm);
    run.L = std::move(r.L);
    run.diagnostics = {{"early_stop", r.early_stop}};
  } else if (f.method == "rand") {
    RngStream rng(f.seed);
    auto rc = randomized_blocked_cholesky(a, RandomizedOptions{f.b, f.p, f.k, f.tol}, rng);
    run.timings = {{"projection", rc.projection_seconds}, {"factorization", seconds_since(t0)}};
    auto r = rc.result();
    run.perm = std::move(r.perm);
    run.L = std::move(r.L);
    run.diagnostics = {{"early_stop", r.early_stop}};
  } else {
    const SrchConfig cfg = srch_config(f);
    SrchResult r = f.k_hat > 0 ? srch_truncated(a, cfg, f.k_hat) : srch(a, cfg);
    const auto& d = r.diagnostics;
    run.timings = {{"projection", d.projection_seconds},
                   {"factorization", d.init_seconds},
                   {"swaps", d.swap_seconds},
                   {"total", seconds_since(t0)}};
    run.converged = d.converged;
    run.diagnostics = {{"alpha", d.alpha},
                       {"estimator", d.estimator},
                       {"condition_holds", d.alpha > 0.0 && 1.0 / std::sqrt(d.alpha) >= d.estimator},
                       {"swaps", d.swaps},
                       {"tau_bound", d.tau_bound},
                       {"residual_trace", d.residual_trace},
                       {"converged", d.converged},
                       {"rank_deficient", d.rank_deficient},
                       {"degenerate", d.degenerate},
                       {"max_swaps_reached", d.max_swaps_reached}};
    run.srch = d;
    run.perm = std::move(r.perm);
    run.L = std::move(r.L);
  }
  run.diagnostics["rank"] = run.L.cols();
  run.diagnostics["trace_error"] = trace_error(a, run.L);
  return run;
}

json manifest(const std::string& command, const json& inputs, const json& params,
              const json& timings) {
  return {{"command", command},
          {"inputs", inputs},
          {"params", params},
          {"version", SRCHOL_VERSION},
          {"timings", timings}};
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

std::string format_ratio(double r) {
  char buf[32];
  if (std::isnan(r)) return "nan";
  std::snprintf(buf, sizeof buf, std::abs(r) >= 1e-3 ? "%.4f" : "%.4E", r);
  return buf;
}

// ---------------------------------------------------------------- commands

struct FactorCommand {
  SourceOptions source;
  FactorOptions factor;
  std::string format = "csv";
  std::string out_dir = ".";

  int run() const {
    const Materialized m = materialize(source);
    FactorRun r = run_factor(m.a, factor);
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    if (format == "bin") {
      write_matrix_binary(dir / "L.bin", r.L);
    } else {
      write_matrix_csv(dir / "L.csv", r.L);
    }
    write_permutation_csv(dir / "perm.csv", r.perm);
    r.timings["gram_build"] = m.seconds;
    json diag = r.diagnostics;
    diag["manifest"] = manifest("factor", m.description, params_json(factor), r.timings);
    write_json(dir / "diagnostics.json", diag);
    std::cout << diag.dump(2) << '\n';
    return r.converged ? kExitOk : kExitNotConverged;
  }
};

struct GpCommand {
  std::string train;
  std::string test;
  double lambda = 5e-5;
  double sigma = 2.0;
  bool standardize = false;
  bool exact = false;
  FactorOptions factor;
  std::string out_dir = ".";

  int run() const {
    Dataset tr = load_csv(train, true);
    Dataset te = load_csv(test, true);
    if (standardize) {
      const auto scaling = fit_standardization(tr);
      apply_standardization(tr, scaling);
      apply_standardization(te, scaling);
    }
    GpConfig cfg;
    cfg.lambda = lambda;
    cfg.kernel = KernelSpec{sigma};
    cfg.k = factor.k;
    cfg.method = factor.method == "diag"   ? FactorMethod::diag_pivoted
                 : factor.method == "rand" ? FactorMethod::randomized
                                           : FactorMethod::srch;
    cfg.srch = srch_config(factor);

    const GpPrediction low = gp_predict_lowrank(tr, te, cfg);
    json metrics = {{"mse", mse(*te.target, low.mean)},
                    {"rank", low.rank},
                    {"reduced_rank", low.reduced_rank}};
    json timings = {{"factorization", low.factor_seconds}, {"solve", low.solve_seconds}};
    std::optional<GpPrediction> ex;
    if (exact) {
      ex = gp_predict_exact(tr, te, cfg);
      metrics["mse_exact"] = mse(*te.target, ex->mean);
      timings["exact_factorization"] = ex->factor_seconds;
      timings["exact_solve"] = ex->solve_seconds;
    }

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    {
      std::ofstream out(dir / "predictions.csv");
      if (!out) throw Error("cannot write predictions.csv");
      out.precision(17);
      out << (exact ? "y_true,y_pred,y_exact\n" : "y_true,y_pred\n");
      for (std::size_t i = 0; i < low.mean.size(); ++i) {
        out << (*te.target)[i] << ',' << low.mean[i];
        if (ex) out << ',' << ex->mean[i];
        out << '\n';
      }
    }
    json params = params_json(factor);
    params["lambda"] = lambda;
    params["sigma"] = sigma;
    params["standardize"] = standardize;
    metrics["manifest"] =
        manifest("gp", {{"train", train}, {"test", test}}, params, timings);
    write_json(dir / "metrics.json", metrics);
    std::cout << metrics.dump(2) << '\n';
    return kExitOk;
  }
};

struct BenchCommand {
  SourceOptions source;
  FactorOptions factor;
  std::vector<Index> ks;
  std::vector<std::string> methods{"diag", "rand", "srch"};
  int repeats = 3;
  std::string out;

  int run() const {
    if (ks.empty()) throw UsageError("--ks needs at least one rank");
    if (repeats < 1) throw UsageError("--repeats must be positive");
    const Materialized m = materialize(source);
    std::cerr << "matrix built in " << m.seconds << " s\n";

    std::ofstream file;
    if (!out.empty()) {
      file.open(out);
      if (!file) throw Error("cannot open " + out + " for writing");
    }
    std::ostream& os = out.empty() ? std::cout : file;
    os.precision(9);
    os << "method,k,wall_time,trace_error\n";
    for (const auto& method : methods) {
      for (Index k : ks) {
        FactorOptions f = factor;
        f.method = method;
        f.k = k;
        std::vector<double> times;
        double err = 0.0;
        for (int r = 0; r < repeats; ++r) {
          const auto t0 = Clock::now();
          FactorRun run = run_factor(m.a, f);
          times.push_back(seconds_since(t0));
          err = run.diagnostics["trace_error"].get<double>();
        }
        std::nth_element(times.begin(), times.begin() + repeats / 2, times.end());
        os << method << ',' << k << ',' << times[static_cast<std::size_t>(repeats / 2)] << ','
           << err << '\n';
      }
    }
    return kExitOk;
  }
};

struct VerifyCommand {
  SourceOptions source;
  FactorOptions factor;
  bool table = false;
  std::string out;

  int run() const {
    const Materialized m = materialize(source);
    FactorRun r = run_factor(m.a, factor);
    const BoundReport rep = factor.method == "srch" && factor.k_hat > 0
                                ? check_truncated_bounds(m.a, r.perm, r.L, factor.g, factor.k_hat)
                                : check_theorem1(m.a, r.perm, r.L, factor.g);
    json j = rep;
    j["method"] = factor.method;
    j["factor"] = r.diagnostics;
    j["manifest"] = manifest("verify", m.description, params_json(factor), r.timings);
    if (out.empty()) {
      std::cout << j.dump(2) << '\n';
    } else {
      write_json(out, j);
    }
    if (table) {
      const auto ratios = singular_value_ratios(rep.lambda_list, r.L);
      std::cout << "index  sigma_j^2(L)/lambda_j(A)\n";
      for (std::size_t j = ratios.size() >= 5 ? ratios.size() - 5 : 0; j < ratios.size(); ++j) {
        std::cout << std::string(5 - std::min<std::size_t>(5, std::to_string(j + 1).size()), ' ')
                  << j + 1 << "  " << format_ratio(ratios[j]) << '\n';
      }
    }
    if (std::any_of(r.L.values().begin(), r.L.values().end(), [](double v) { return std::isnan(v); })) {
      std::cerr << "warning: factor contains NaN\n";
    }
    // Only srch certifies the upper and floor bounds; other drivers are held
    // to interlacing.
    const bool ok = factor.method == "srch" ? rep.all_ok() : rep.interlace_ok;
    return ok ? kExitOk : kExitNotConverged;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrum-revealing pivoted Cholesky for kernel matrices"};
  app.set_version_flag("--version", std::string(SRCHOL_VERSION));
  app.require_subcommand(1);

  FactorCommand factor;
  auto* factor_cmd = app.add_subcommand("factor", "Factor a matrix and write L, perm and diagnostics");
  add_source_options(*factor_cmd, factor.source);
  add_factor_options(*factor_cmd, factor.factor, true);
  factor_cmd->add_option("--format", factor.format, "Output format for L")
      ->check(CLI::IsMember({"csv", "bin"}));
  factor_cmd->add_option("--out", factor.out_dir, "Output directory");

  GpCommand gp;
  auto* gp_cmd = app.add_subcommand("gp", "Gaussian-process prediction with a low-rank kernel");
  gp_cmd->add_option("--train", gp.train, "Training CSV, target in the last column")->required();
  gp_cmd->add_option("--test", gp.test, "Test CSV, target in the last column")->required();
  gp_cmd->add_option("--lambda", gp.lambda, "Regularizer lambda > 0");
  gp_cmd->add_option("--sigma", gp.sigma, "RBF bandwidth");
  gp_cmd->add_flag("--standardize", gp.standardize, "Standardize features with training statistics");
  gp_cmd->add_flag("--exact", gp.exact, "Also run the dense exact solve");
  gp_cmd->add_option("--out", gp.out_dir, "Output directory");
  add_factor_options(*gp_cmd, gp.factor, true);

  BenchCommand bench;
  auto* bench_cmd = app.add_subcommand("bench", "Median factorization time over a sweep of ranks");
  add_source_options(*bench_cmd, bench.source);
  add_factor_options(*bench_cmd, bench.factor, false);
  bench_cmd->add_option("--ks", bench.ks, "Comma-separated ranks")->delimiter(',')->required();
  bench_cmd->add_option("--methods", bench.methods, "Comma-separated drivers")
      ->delimiter(',')
      ->check(CLI::IsMember({"diag", "rand", "srch"}));
  bench_cmd->add_option("--repeats", bench.repeats, "Timed repeats per cell");
  bench_cmd->add_option("--out", bench.out, "CSV path (default stdout)");

  VerifyCommand verify;
  auto* verify_cmd = app.add_subcommand("verify", "Factor, then check the spectrum-revealing bounds");
  add_source_options(*verify_cmd, verify.source);
  add_factor_options(*verify_cmd, verify.factor, true);
  verify_cmd->add_flag("--table", verify.table, "Print the trailing singular value ratios");
  verify_cmd->add_option("--out", verify.out, "JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*factor_cmd) return factor.run();
    if (*gp_cmd) return gp.run();
    if (*bench_cmd) return bench.run();
    if (*verify_cmd) return verify.run();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
