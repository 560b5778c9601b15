#include "nctorus/experiments.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <sstream>
#include <vector>

#include "nctorus/connection_space.hpp"
#include "nctorus/functional.hpp"

namespace nct {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Json certificates_json(const std::vector<SpectralCertificate>& certs) {
  Json arr = Json::array();
  for (const auto& c : certs) {
    arr.push_back(Json{{"lambda_min", c.lambda_min},
                       {"lambda_max", c.lambda_max},
                       {"p", c.p},
                       {"q", c.q},
                       {"exact", c.exact}});
  }
  return arr;
}

struct ExperimentContext {
  double theta;
  double tol;
  int oracle_q;
  std::uint64_t seed;
  int max_n;
};

std::vector<int> radii_for(const Json& exp, const ExperimentContext& ctx) {
  std::vector<int> radii;
  if (exp.contains("radii")) {
    radii = exp.at("radii").get<std::vector<int>>();
  } else if (exp.contains("radius")) {
    radii.push_back(exp.at("radius").get<int>());
  } else {
    radii.push_back(20);
  }
  if (ctx.max_n > 0) {
    for (int& r : radii) r = std::min(r, ctx.max_n);
  }
  if (radii.empty()) throw ConfigError("experiment: empty radii list");
  return radii;
}

GbResult run_gb_once(const Json& metric_spec, const ExperimentContext& ctx,
                     double tol, TruncationPolicy& policy) {
  Metric metric =
      parse_metric_spec(metric_spec, ctx.theta, tol, policy, ctx.oracle_q);
  switch (metric.kind) {
    case MetricKind::flat:
      return gauss_bonnet_diagonal(TorusElement::unit(ctx.theta),
                                   TorusElement::unit(ctx.theta), tol, policy,
                                   ctx.oracle_q);
    case MetricKind::diagonal:
      return gauss_bonnet_diagonal(metric.g.at(0, 0), metric.g.at(1, 1), tol,
                                   policy, ctx.oracle_q);
    case MetricKind::conformal:
      return gauss_bonnet_conformal(*metric.conformal_h, tol, policy,
                                    ctx.oracle_q);
    case MetricKind::general:
      throw ConfigError(
          "gauss_bonnet: general metrics are not supported; use diagonal or "
          "conformal");
  }
  throw ConfigError("gauss_bonnet: unknown metric kind");
}

Json run_gauss_bonnet(const Json& exp, const ExperimentContext& ctx) {
  const double tol = exp.value("tol", ctx.tol);
  const std::vector<int> radii = radii_for(exp, ctx);
  Json values = Json::array();
  GbResult last;
  double tail = 0.0;
  for (int radius : radii) {
    TruncationPolicy policy{radius, 0.0};
    last = run_gb_once(exp.at("metric"), ctx, tol, policy);
    tail = policy.tail_mass;
    values.push_back(Json{{"radius", radius},
                          {"value_re", std::real(last.value)},
                          {"value_im", std::imag(last.value)},
                          {"abs", std::abs(last.value)},
                          {"tail_mass", policy.tail_mass},
                          {"max_residual", last.max_residual}});
  }
  Json out{{"values", values},
           {"tail_mass", tail},
           {"max_residual", last.max_residual},
           {"certificates", certificates_json(last.certificates)}};
  bool pass = true;
  if (exp.contains("assert_abs")) {
    pass = std::abs(last.value) <= exp.at("assert_abs").get<double>();
  }
  out["status"] = pass ? "pass" : "fail";
  return out;
}

MuMap mu_from_spec(const Json& entries, const Metric& metric, double tol,
                   TruncationPolicy& policy, const ExperimentContext& ctx) {
  MuMap mu;
  for (const Json& e : entries) {
    InnerDerivation d = normalize_inner(parse_element_expr(
        e.at("derivation"), ctx.theta, tol, policy, ctx.oracle_q));
    AlgebraMatrix value(ctx.theta);
    const Json& v = e.at("value");
    if (v.contains("poly")) {
      value = make_commutant_mu(v.at("poly").get<std::vector<double>>(),
                                metric, policy);
    } else if (v.contains("scalar")) {
      const auto& s = v.at("scalar");
      value = AlgebraMatrix::identity(
          ctx.theta, Complex(s[0].get<double>(), s[1].get<double>()));
    } else if (v.contains("zero")) {
      // zero endomorphism
    } else {
      throw ConfigError("mu value: expected poly, scalar or zero");
    }
    mu.add(std::move(d), std::move(value));
  }
  return mu;
}

Json run_proposition1(const Json& exp, const ExperimentContext& ctx) {
  const double tol = exp.value("tol", ctx.tol);
  const int radius = radii_for(exp, ctx).back();
  TruncationPolicy policy{radius, 0.0};
  Metric metric = parse_metric_spec(exp.at("metric"), ctx.theta, tol, policy,
                                    ctx.oracle_q);
  certify_metric(metric, ctx.oracle_q);

  std::vector<InnerDerivation> probes;
  if (exp.contains("derivations")) {
    for (const Json& d : exp.at("derivations")) {
      probes.push_back(normalize_inner(
          parse_element_expr(d, ctx.theta, tol, policy, ctx.oracle_q)));
    }
  } else {
    // default probe family: u1 - u1*, u2 - u2*
    for (int j = 1; j <= 2; ++j) {
      TorusElement u = TorusElement::monomial(ctx.theta, j == 1 ? 1 : 0,
                                              j == 1 ? 0 : 1);
      probes.push_back(normalize_inner(sub(u, star(u))));
    }
  }

  double max_kernel = 0.0, max_compat = 0.0;
  Json per_poly = Json::array();
  for (const Json& poly : exp.at("mu_polys")) {
    AlgebraMatrix nu = make_commutant_mu(poly.get<std::vector<double>>(),
                                         metric, policy);
    KernelCheck kc = mu_kernel_check(nu, metric, tol, policy, ctx.oracle_q);
    max_kernel = std::max(max_kernel, kc.residual);
    MuMap mu;
    for (const auto& p : probes) mu.add(p, nu);
    double compat = 0.0;
    for (const auto& d : probes) {
      for (int xk = 1; xk <= 2; ++xk) {
        for (int yk = 1; yk <= 2; ++yk) {
          compat = std::max(
              compat, perturbed_compatibility_check(
                          metric, mu, d, basis_vector(ctx.theta, xk),
                          basis_vector(ctx.theta, yk), policy));
        }
      }
    }
    max_compat = std::max(max_compat, compat);
    per_poly.push_back(Json{{"kernel_residual", kc.residual},
                            {"compatibility_residual", compat}});
  }

  bool pass = true;
  if (exp.contains("assert_kernel")) {
    pass = pass && max_kernel <= exp.at("assert_kernel").get<double>();
  }
  if (exp.contains("assert_compat")) {
    pass = pass && max_compat <= exp.at("assert_compat").get<double>();
  }
  return Json{{"per_mu", per_poly},
              {"max_kernel_residual", max_kernel},
              {"max_compatibility_residual", max_compat},
              {"tail_mass", policy.tail_mass},
              {"max_residual", std::max(max_kernel, max_compat)},
              {"status", pass ? "pass" : "fail"}};
}

Json run_proposition2(const Json& exp, const ExperimentContext& ctx) {
  const double tol = exp.value("tol", ctx.tol);
  const int radius = radii_for(exp, ctx).back();
  TruncationPolicy policy{radius, 0.0};
  Metric metric = parse_metric_spec(exp.at("metric"), ctx.theta, tol, policy,
                                    ctx.oracle_q);
  certify_metric(metric, ctx.oracle_q);
  MuMap mu = mu_from_spec(exp.at("mu"), metric, tol, policy, ctx);

  Json pairs_out = Json::array();
  double max_norm = 0.0, max_cross_gap = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (exp.contains("pairs")) {
    for (const Json& p : exp.at("pairs")) {
      pairs.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>());
    }
  } else {
    for (std::size_t i = 0; i < mu.size(); ++i)
      for (std::size_t j = i + 1; j < mu.size(); ++j) pairs.emplace_back(i, j);
  }
  for (auto [i, j] : pairs) {
    const InnerDerivation& a = mu.basis(i);
    const InnerDerivation& b = mu.basis(j);
    AlgebraMatrix k = inner_curvature(metric, mu, a, b);
    double nrm = norm_l1(k);
    AlgebraMatrix k_op = inner_curvature_operational(metric, mu, a, b, policy);
    double gap = norm_l1(sub(k, k_op));
    max_norm = std::max(max_norm, nrm);
    max_cross_gap = std::max(max_cross_gap, gap);
    pairs_out.push_back(Json{{"pair", Json::array({i, j})},
                             {"curvature_norm", nrm},
                             {"cross_path_gap", gap}});
  }

  bool pass = max_cross_gap <= 1e-10;
  if (exp.contains("assert_zero")) {
    pass = pass && max_norm <= exp.at("assert_zero").get<double>();
  }
  if (exp.contains("assert_nonzero")) {
    pass = pass && max_norm >= exp.at("assert_nonzero").get<double>();
  }
  return Json{{"pairs", pairs_out},
              {"max_curvature_norm", max_norm},
              {"max_cross_path_gap", max_cross_gap},
              {"tail_mass", policy.tail_mass},
              {"max_residual", max_cross_gap},
              {"status", pass ? "pass" : "fail"}};
}

Json run_one(const Json& exp, const ExperimentContext& ctx) {
  auto t0 = Clock::now();
  Json out;
  try {
    const std::string type = exp.at("type").get<std::string>();
    if (type == "gauss_bonnet") {
      out = run_gauss_bonnet(exp, ctx);
    } else if (type == "proposition1") {
      out = run_proposition1(exp, ctx);
    } else if (type == "proposition2") {
      out = run_proposition2(exp, ctx);
    } else {
      throw ConfigError("unknown experiment type '" + type + "'");
    }
  } catch (const ConfigError&) {
    throw;  // config problems abort the whole run
  } catch (const std::exception& e) {
    out = Json{{"status", "failed"}, {"error", e.what()}};
  }
  out["name"] = exp.value("name", std::string("unnamed"));
  out["type"] = exp.value("type", std::string());
  out["inputs"] = exp;
  out["seconds"] = seconds_since(t0);
  return out;
}

ExperimentContext context_from(const Json& config, const RunOptions& options) {
  if (!config.contains("version")) {
    throw ConfigError("config: missing \"version\"");
  }
  if (config.at("version").get<int>() != 1) {
    throw ConfigError("config: unsupported version");
  }
  if (!config.contains("theta")) throw ConfigError("config: missing \"theta\"");
  return {config.at("theta").get<double>(),
          config.value("default_tol", kDefaultFcTol), options.oracle_q,
          options.seed, options.max_n};
}

}  // namespace

Json run_experiments(const Json& config, const RunOptions& options) {
  ExperimentContext ctx = context_from(config, options);
  if (!config.contains("experiments") || !config.at("experiments").is_array()) {
    throw ConfigError("config: missing \"experiments\" array");
  }
  const Json& exps = config.at("experiments");

  std::vector<Json> results(exps.size());
  if (options.threads > 1) {
    std::vector<std::future<Json>> futures;
    futures.reserve(exps.size());
    // bounded fan-out: batches of `threads` experiments
    for (std::size_t base = 0; base < exps.size();
         base += static_cast<std::size_t>(options.threads)) {
      std::size_t end = std::min(
          exps.size(), base + static_cast<std::size_t>(options.threads));
      std::vector<std::future<Json>> batch;
      for (std::size_t i = base; i < end; ++i) {
        batch.push_back(std::async(std::launch::async, [&, i] {
          return run_one(exps[i], ctx);
        }));
      }
      for (std::size_t i = base; i < end; ++i) {
        results[i] = batch[i - base].get();
      }
    }
  } else {
    for (std::size_t i = 0; i < exps.size(); ++i) {
      results[i] = run_one(exps[i], ctx);
      if (options.fail_fast && results[i].at("status") != "pass") break;
    }
  }

  bool all_pass = true;
  Json out_exps = Json::array();
  for (const Json& r : results) {
    if (r.is_null()) continue;  // fail-fast skipped
    if (r.at("status") != "pass") all_pass = false;
    out_exps.push_back(r);
  }
  return Json{{"report_version", 1},
              {"seed", options.seed},
              {"oracle_q", options.oracle_q},
              {"theta", ctx.theta},
              {"status", all_pass ? "pass" : "fail"},
              {"experiments", out_exps}};
}

std::string sweep_csv(const Json& config, const std::string& parameter,
                      const RunOptions& options) {
  ExperimentContext ctx = context_from(config, options);
  std::ostringstream csv;
  csv.precision(17);
  csv << "param,gb_value_re,gb_value_im,tail_mass,max_residual,seconds\n";

  auto emit = [&](double param, const Json& metric_spec, double tol,
                  int radius, double theta) {
    auto t0 = Clock::now();
    ExperimentContext local = ctx;
    local.theta = theta;
    TruncationPolicy policy{radius, 0.0};
    GbResult gb = run_gb_once(metric_spec, local, tol, policy);
    csv << param << ',' << std::real(gb.value) << ',' << std::imag(gb.value)
        << ',' << policy.tail_mass << ',' << gb.max_residual << ','
        << seconds_since(t0) << '\n';
  };

  for (const Json& exp : config.at("experiments")) {
    if (exp.value("type", std::string()) != "gauss_bonnet") continue;
    const double tol = exp.value("tol", ctx.tol);
    const std::vector<int> radii = radii_for(exp, ctx);
    if (parameter == "N") {
      for (int r : radii) emit(r, exp.at("metric"), tol, r, ctx.theta);
    } else if (parameter == "theta") {
      if (!config.contains("theta_values")) {
        throw ConfigError("sweep theta: config needs \"theta_values\"");
      }
      for (double th : config.at("theta_values").get<std::vector<double>>()) {
        emit(th, exp.at("metric"), tol, radii.back(), th);
      }
    } else if (parameter == "tol") {
      if (!config.contains("tol_values")) {
        throw ConfigError("sweep tol: config needs \"tol_values\"");
      }
      for (double tv : config.at("tol_values").get<std::vector<double>>()) {
        emit(tv, exp.at("metric"), tv, radii.back(), ctx.theta);
      }
    } else {
      throw ConfigError("sweep: parameter must be one of N, theta, tol");
    }
  }
  return csv.str();
}

bool report_passed(const Json& report) {
  return report.at("status") == "pass";
}

}  // namespace nct
